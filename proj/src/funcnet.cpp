#include "fnv/funcnet.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fnv {

std::optional<Stereotype> stereotype_from_letter(char c) {
  switch (c) {
    case 'M': return Stereotype::Mechanical;
    case 'E': return Stereotype::Electrical;
    case 'H': return Stereotype::Hydraulic;
  }
  return std::nullopt;
}

std::string QualifiedName::str() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += '.';
    out += segments[i];
  }
  return out;
}

QualifiedName QualifiedName::child(const std::string& seg) const {
  QualifiedName q = *this;
  q.segments.push_back(seg);
  return q;
}

bool QualifiedName::strict_prefix_of(const QualifiedName& other) const {
  if (segments.size() >= other.segments.size()) return false;
  return std::equal(segments.begin(), segments.end(), other.segments.begin());
}

std::string Path::str() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += '.';
    out += segments[i];
  }
  return out;
}

const BlockTemplate* FunctionNetDef::find_template(const std::string& tname) const {
  for (const auto& t : templates)
    if (t.name == tname) return &t;
  return nullptr;
}

std::string qualify_local_name(const std::string& name,
                               const std::vector<std::string>& instance_path) {
  if (instance_path.empty()) return name;
  std::string out;
  for (const auto& seg : instance_path) {
    out += seg;
    out += '.';
  }
  out += name;
  return out;
}

namespace {

// Detects cycles in the template reference graph before any expansion.
class TemplateCycleScan {
 public:
  explicit TemplateCycleScan(const FunctionNetDef& net) : net_(net) {}

  void run() {
    for (const auto& t : net_.templates) visit(t.name, t);
  }

 private:
  enum class Mark { None, InProgress, Done };

  void visit(const std::string& name, const BlockTemplate& body) {
    Mark& m = marks_[name];
    if (m == Mark::Done) return;
    if (m == Mark::InProgress)
      throw Error("recursive template instantiation involving '" + name + "'");
    m = Mark::InProgress;
    scan_children(body.children);
    m = Mark::Done;
  }

  void scan_children(const std::vector<NetChild>& children) {
    for (const auto& c : children) {
      if (c.kind == NetChild::Kind::Instance) {
        const BlockTemplate* t = net_.find_template(c.template_ref);
        if (!t)
          throw Error("unknown template '" + c.template_ref + "' referenced by instance '" +
                      c.instance_name + "'");
        visit(t->name, *t);
      } else {
        scan_children(c.block->children);
      }
    }
  }

  const FunctionNetDef& net_;
  std::map<std::string, Mark> marks_;
};

struct PendingConnector {
  ConnectorDecl decl;
  QualifiedName scope;  // qname of the body the connector was declared in
  std::vector<std::string> instance_path;
};

class Elaborator {
 public:
  Elaborator(const FunctionNetDef& net, std::vector<Diagnostic>* endpoint_diags)
      : net_(net), diags_(endpoint_diags) {}

  InstanceTree run() {
    TemplateCycleScan(net_).run();
    InstanceTree tree;
    tree.net_name = net_.name;
    tree.boundary_in = net_.body.in_ports;
    tree.boundary_out = net_.body.out_ports;
    expand_body(net_.body, QualifiedName{}, {}, tree.roots);
    resolve_connectors(tree);
    return tree;
  }

 private:
  void expand_body(const BlockTemplate& body, const QualifiedName& prefix,
                   const std::vector<std::string>& instance_path,
                   std::vector<InstanceNode>& out) {
    std::set<std::string> sibling_names;
    for (const auto& child : body.children) {
      const std::string& child_name = child.kind == NetChild::Kind::Owned
                                          ? child.block->name
                                          : child.instance_name;
      if (!sibling_names.insert(child_name).second)
        throw Error("duplicate sibling name '" + child_name + "' under '" +
                    (prefix.empty() ? net_.name : prefix.str()) + "'");
      InstanceNode node;
      node.name = child_name;
      node.qname = prefix.child(child_name);
      if (child.kind == NetChild::Kind::Owned) {
        node.instance_path = instance_path;
        node.in_ports = child.block->in_ports;
        node.out_ports = child.block->out_ports;
        expand_body(*child.block, node.qname, instance_path, node.children);
      } else {
        const BlockTemplate* tmpl = net_.find_template(child.template_ref);
        if (!tmpl)
          throw Error("unknown template '" + child.template_ref +
                      "' referenced by instance '" + child.instance_name + "'");
        auto inner_path = instance_path;
        inner_path.push_back(child.instance_name);
        node.instance_path = inner_path;
        node.in_ports = tmpl->in_ports;
        node.out_ports = tmpl->out_ports;
        expand_body(*tmpl, node.qname, inner_path, node.children);
      }
      out.push_back(std::move(node));
    }
    for (const auto& conn : body.connectors)
      pending_.push_back({conn, prefix, instance_path});
  }

  // Resolves a connector path declared in the body at `scope`, navigating
  // child names downward. A single-segment path equal to the net name (and
  // not shadowed by a child of the scope) denotes the net boundary.
  std::optional<Endpoint> resolve_path(const InstanceTree& tree, const Path& p,
                                       const QualifiedName& scope) {
    const std::vector<InstanceNode>* level = &tree.roots;
    if (!scope.empty()) {
      const InstanceNode* s = tree.find(scope);
      level = &s->children;
    }
    QualifiedName q = scope;
    const InstanceNode* node = nullptr;
    for (std::size_t i = 0; i < p.segments.size(); ++i) {
      node = nullptr;
      for (const auto& n : *level)
        if (n.name == p.segments[i]) { node = &n; break; }
      if (!node) {
        if (i == 0 && p.segments.size() == 1 && p.segments[0] == net_.name)
          return Endpoint::boundary();
        return std::nullopt;
      }
      q = q.child(p.segments[i]);
      level = &node->children;
    }
    return Endpoint::node(q);
  }

  void resolve_connectors(InstanceTree& tree) {
    // Build a lookup index first; resolve_path navigates via find().
    for (const auto& pc : pending_) {
      ElabConnector ec;
      ec.signal = pc.decl.signal
                      ? std::optional<std::string>(
                            qualify_local_name(*pc.decl.signal, pc.instance_path))
                      : std::nullopt;
      ec.stereotype = pc.decl.stereotype;
      ec.loc = pc.decl.loc;
      auto src = resolve_path(tree, pc.decl.source, pc.scope);
      if (!src) {
        report_unresolved(pc.decl.source, pc.scope);
        continue;
      }
      ec.source = *src;
      for (const auto& t : pc.decl.targets) {
        auto tgt = resolve_path(tree, t, pc.scope);
        if (!tgt) {
          report_unresolved(t, pc.scope);
          continue;
        }
        ec.targets.push_back(*tgt);
      }
      if (ec.targets.empty()) continue;  // nothing left to connect
      tree.connectors.push_back(std::move(ec));
    }
  }

  void report_unresolved(const Path& p, const QualifiedName& scope) {
    std::string where = scope.empty() ? net_.name : scope.str();
    std::string msg = "connector endpoint '" + p.str() + "' does not resolve to a block or the net boundary (declared in '" +
                      where + "')";
    if (!diags_) throw Error(msg);
    diags_->push_back({"N2", Severity::Error, p.str(), msg, p.loc});
  }

  const FunctionNetDef& net_;
  std::vector<Diagnostic>* diags_;
  std::vector<PendingConnector> pending_;
};

const InstanceNode* find_in(const std::vector<InstanceNode>& nodes,
                            const std::vector<std::string>& segs, std::size_t i) {
  for (const auto& n : nodes) {
    if (n.name != segs[i]) continue;
    if (i + 1 == segs.size()) return &n;
    return find_in(n.children, segs, i + 1);
  }
  return nullptr;
}

void walk(const std::vector<InstanceNode>& nodes,
          const std::function<void(const InstanceNode&)>& fn) {
  for (const auto& n : nodes) {
    fn(n);
    walk(n.children, fn);
  }
}

const InstanceNode& resolve_or_throw(const InstanceTree& tree, const QualifiedName& q) {
  const InstanceNode* n = tree.find(q);
  if (!n) throw Error("name '" + q.str() + "' does not resolve in net '" + tree.net_name + "'");
  return *n;
}

bool in_subtree(const QualifiedName& root, const QualifiedName& q) {
  return root == q || root.strict_prefix_of(q);
}

}  // namespace

const InstanceNode* InstanceTree::find(const QualifiedName& q) const {
  if (q.empty()) return nullptr;
  return find_in(roots, q.segments, 0);
}

void InstanceTree::for_each_node(const std::function<void(const InstanceNode&)>& fn) const {
  walk(roots, fn);
}

std::size_t InstanceTree::node_count() const {
  std::size_t n = 0;
  for_each_node([&](const InstanceNode&) { ++n; });
  return n;
}

InstanceTree elaborate(const FunctionNetDef& net, std::vector<Diagnostic>* endpoint_diags) {
  return Elaborator(net, endpoint_diags).run();
}

bool is_descendant(const InstanceTree& tree, const QualifiedName& a,
                   const QualifiedName& b) {
  resolve_or_throw(tree, a);
  resolve_or_throw(tree, b);
  return a.strict_prefix_of(b);
}

std::set<std::string> signals_between(const InstanceTree& tree, const QualifiedName& a,
                                      const QualifiedName& b) {
  resolve_or_throw(tree, a);
  resolve_or_throw(tree, b);
  std::set<std::string> out;
  for (const auto& c : tree.connectors) {
    if (!c.signal) continue;
    if (c.source.is_boundary || !in_subtree(a, c.source.qname)) continue;
    for (const auto& t : c.targets) {
      if (!t.is_boundary && in_subtree(b, t.qname)) {
        out.insert(*c.signal);
        break;
      }
    }
  }
  return out;
}

std::set<std::string> signals_from_boundary(const InstanceTree& tree,
                                            const QualifiedName& b) {
  resolve_or_throw(tree, b);
  std::set<std::string> out;
  for (const auto& c : tree.connectors) {
    if (!c.signal || !c.source.is_boundary) continue;
    for (const auto& t : c.targets)
      if (!t.is_boundary && in_subtree(b, t.qname)) {
        out.insert(*c.signal);
        break;
      }
  }
  return out;
}

std::set<std::string> signals_to_boundary(const InstanceTree& tree,
                                          const QualifiedName& a) {
  resolve_or_throw(tree, a);
  std::set<std::string> out;
  for (const auto& c : tree.connectors) {
    if (!c.signal) continue;
    if (c.source.is_boundary || !in_subtree(a, c.source.qname)) continue;
    for (const auto& t : c.targets)
      if (t.is_boundary) {
        out.insert(*c.signal);
        break;
      }
  }
  return out;
}

}  // namespace fnv
