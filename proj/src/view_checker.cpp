#include "fnv/view_checker.hpp"

#include <algorithm>

#include "fnv/net_checker.hpp"

namespace fnv {

namespace {

bool trailing_match(const QualifiedName& q, const std::vector<std::string>& segs) {
  if (q.segments.size() < segs.size()) return false;
  return std::equal(segs.rbegin(), segs.rend(), q.segments.rbegin());
}

struct PathMatches {
  std::vector<QualifiedName> matches;
};

void collect_matches(const std::vector<InstanceNode>& nodes,
                     const std::vector<std::string>& segs, PathMatches& out) {
  for (const auto& n : nodes) {
    if (trailing_match(n.qname, segs)) out.matches.push_back(n.qname);
    collect_matches(n.children, segs, out);
  }
}

// Trailing-segment search below `scope` (or the whole tree). When a scoped
// search finds nothing, the search widens to the whole tree so that a block
// nested under an unrelated parent still resolves and can be flagged by R2.
PathMatches search_path(const InstanceTree& tree,
                        const std::optional<QualifiedName>& scope, const Path& p) {
  PathMatches out;
  if (scope) {
    const InstanceNode* s = tree.find(*scope);
    if (s) collect_matches(s->children, p.segments, out);
    if (!out.matches.empty()) return out;
  }
  collect_matches(tree.roots, p.segments, out);
  return out;
}

std::string ambiguity_text(const Path& p, const PathMatches& m) {
  std::string msg = "path '" + p.str() + "' is ambiguous; matches";
  for (const auto& q : m.matches) msg += " '" + q.str() + "'";
  return msg + " (use a longer dotted path)";
}

struct ResolveContext {
  const InstanceTree& tree;
  std::vector<Diagnostic>* diags;
  Resolution resolution;
  std::map<QualifiedName, const ViewElement*> by_target;  // injectivity

  void emit(const std::string& code, const std::string& subject,
            const std::string& message, SourceLocation loc) {
    if (diags) diags->push_back({code, Severity::Error, subject, message, loc});
  }

  void resolve_elements(const std::vector<ViewElement>& elements,
                        const std::optional<QualifiedName>& scope) {
    for (const auto& el : elements) {
      PathMatches m = search_path(tree, scope, el.path);
      if (m.matches.empty()) {
        emit("R1", el.path.str(),
             "block '" + el.path.str() + "' is not part of the complete function net",
             el.loc);
        continue;  // children are not reported to avoid cascades
      }
      if (m.matches.size() > 1) {
        emit("R1", el.path.str(), ambiguity_text(el.path, m), el.loc);
        continue;
      }
      const QualifiedName& q = m.matches.front();
      auto [it, inserted] = by_target.emplace(q, &el);
      if (!inserted) {
        emit("R1", el.path.str(),
             "block '" + el.path.str() + "' resolves to '" + q.str() +
                 "', already shown as '" + it->second->path.str() + "'",
             el.loc);
        continue;
      }
      resolution.blocks[&el] = q;
      if (el.kind == ViewElement::Kind::Shown)
        resolve_elements(el.children, q);
    }
  }
};

// Signals flowing from endpoint a to endpoint b in the complete net, where
// an endpoint covers its whole subtree (any enclosing block is accepted
// for an omitted exact source or target).
std::set<std::string> communications(const InstanceTree& tree, const ViewEndpoint& a,
                                     const ViewEndpoint& b) {
  std::set<std::string> out;
  for (const auto& c : tree.connectors) {
    if (!c.signal) continue;
    bool src_ok = a.kind == ViewEndpoint::Kind::Boundary
                      ? c.source.is_boundary
                      : (!c.source.is_boundary &&
                         (a.qname == c.source.qname ||
                          a.qname.strict_prefix_of(c.source.qname)));
    if (!src_ok) continue;
    for (const auto& t : c.targets) {
      bool tgt_ok = b.kind == ViewEndpoint::Kind::Boundary
                        ? t.is_boundary
                        : (!t.is_boundary &&
                           (b.qname == t.qname || b.qname.strict_prefix_of(t.qname)));
      if (tgt_ok) {
        out.insert(*c.signal);
        break;
      }
    }
  }
  return out;
}

// A view may reference an instance-local signal by its template-local name.
bool signal_matches(const std::string& written, const std::string& net_signal) {
  if (written == net_signal) return true;
  return net_signal.size() > written.size() &&
         net_signal.compare(net_signal.size() - written.size(), written.size(), written) == 0 &&
         net_signal[net_signal.size() - written.size() - 1] == '.';
}

bool any_signal_matches(const std::string& written, const std::set<std::string>& sigs) {
  for (const auto& s : sigs)
    if (signal_matches(written, s)) return true;
  return false;
}

class ViewAnalysis {
 public:
  ViewAnalysis(const ViewDef& view, const InstanceTree& tree)
      : view_(view), tree_(tree) {
    env_names_ = view.all_env_names();
  }

  Resolution resolve(std::vector<Diagnostic>* diags) {
    ResolveContext ctx{tree_, diags, {}, {}};
    ctx.resolve_elements(view_.elements, std::nullopt);
    return std::move(ctx.resolution);
  }

  bool is_env_name(const std::string& name) const {
    return std::find(env_names_.begin(), env_names_.end(), name) != env_names_.end();
  }

  std::optional<ViewEndpoint> resolve_endpoint(const Path& p,
                                               const std::optional<QualifiedName>& scope,
                                               std::string* why) const {
    if (p.segments.size() == 1 && is_env_name(p.segments.front()))
      return ViewEndpoint::env(p.segments.front());
    PathMatches m = search_path(tree_, scope, p);
    if (m.matches.empty()) {
      if (p.segments.size() == 1 && p.segments.front() == tree_.net_name)
        return ViewEndpoint::boundary();
      if (why) *why = "endpoint '" + p.str() + "' does not resolve in the complete function net";
      return std::nullopt;
    }
    if (m.matches.size() > 1) {
      if (why) *why = ambiguity_text(p, m);
      return std::nullopt;
    }
    return ViewEndpoint::node(m.matches.front());
  }

  // Walks every connector with the resolution of its enclosing block as
  // scope. Connectors inside unresolved blocks are skipped.
  template <typename Fn>
  void for_each_connector(const Resolution& res, Fn&& fn) const {
    walk_connectors(view_.elements, view_.connectors, std::nullopt, res, fn);
  }

 private:
  template <typename Fn>
  void walk_connectors(const std::vector<ViewElement>& elements,
                       const std::vector<ConnectorDecl>& connectors,
                       const std::optional<QualifiedName>& scope, const Resolution& res,
                       Fn&& fn) const {
    for (const auto& c : connectors) fn(c, scope);
    for (const auto& el : elements) {
      const QualifiedName* q = res.find(&el);
      if (!q) continue;
      walk_connectors(el.children, el.connectors, *q, res, fn);
    }
  }

  const ViewDef& view_;
  const InstanceTree& tree_;
  std::vector<std::string> env_names_;
};

void check_r2(const ViewDef& view, const Resolution& res, std::vector<Diagnostic>& out) {
  struct Walker {
    const Resolution& res;
    std::vector<Diagnostic>& out;
    void visit(const ViewElement& parent, const QualifiedName& pq) {
      for (const auto& child : parent.children) {
        const QualifiedName* cq = res.find(&child);
        if (!cq) continue;
        if (!pq.strict_prefix_of(*cq))
          out.push_back({"R2", Severity::Error, child.path.str(),
                         "block '" + child.path.str() + "' (" + cq->str() +
                             ") is nested under '" + parent.path.str() + "' (" + pq.str() +
                             ") but is not a part of it in the complete function net",
                         child.loc});
        visit(child, cq ? *cq : pq);
      }
    }
  };
  Walker w{res, out};
  for (const auto& el : view.elements) {
    const QualifiedName* q = res.find(&el);
    if (q) w.visit(el, *q);
  }
}

void check_r3(const ViewDef& view, const Resolution& res, std::vector<Diagnostic>& out) {
  // Collect resolved elements with their view-tree ancestor chains.
  struct Entry {
    const ViewElement* el;
    QualifiedName q;
    std::set<const ViewElement*> ancestors;
  };
  std::vector<Entry> entries;
  struct Collector {
    const Resolution& res;
    std::vector<Entry>& entries;
    void visit(const std::vector<ViewElement>& els, std::set<const ViewElement*> chain) {
      for (const auto& el : els) {
        const QualifiedName* q = res.find(&el);
        if (q) entries.push_back({&el, *q, chain});
        auto inner = chain;
        inner.insert(&el);
        visit(el.children, inner);
      }
    }
  };
  Collector{res, entries}.visit(view.elements, {});

  for (const auto& a : entries)
    for (const auto& b : entries) {
      if (a.el == b.el) continue;
      if (!a.q.strict_prefix_of(b.q)) continue;
      if (!b.ancestors.count(a.el))
        out.push_back({"R3", Severity::Error, b.el->path.str(),
                       "'" + a.el->path.str() + "' (" + a.q.str() + ") is a whole of '" +
                           b.el->path.str() + "' (" + b.q.str() +
                           ") in the complete function net but not in the view",
                       b.el->loc});
    }
}

NormalizedConnector make_pair_tuple(const ViewEndpoint& src, const ViewEndpoint& tgt,
                                    const ConnectorDecl& c) {
  return NormalizedConnector{src, tgt, c.signal, c.stereotype};
}

}  // namespace

QualifiedName resolve_view_block(const ViewDef& view, const InstanceTree& tree,
                                 const Path& path) {
  // Locate the declared element whose written path equals `path`.
  struct Finder {
    const Path& wanted;
    const ViewElement* found = nullptr;
    const ViewElement* enclosing = nullptr;
    void visit(const std::vector<ViewElement>& els, const ViewElement* parent) {
      for (const auto& el : els) {
        if (!found && el.path == wanted) {
          found = &el;
          enclosing = parent;
          return;
        }
        visit(el.children, &el);
        if (found) return;
      }
    }
  };
  Finder f{path};
  f.visit(view.elements, nullptr);
  if (!f.found) throw Error("view '" + view.name + "' has no block '" + path.str() + "'");

  Resolution res = resolve_view(view, tree, nullptr);
  const QualifiedName* q = res.find(f.found);
  if (q) return *q;

  // Re-run the single lookup to produce a precise error.
  std::optional<QualifiedName> scope;
  if (f.enclosing) {
    const QualifiedName* eq = res.find(f.enclosing);
    if (!eq) throw Error("enclosing block of '" + path.str() + "' does not resolve");
    scope = *eq;
  }
  PathMatches m = search_path(tree, scope, path);
  if (m.matches.empty())
    throw Error("block '" + path.str() + "' is not part of the complete function net");
  throw Error(ambiguity_text(path, m));
}

Resolution resolve_view(const ViewDef& view, const InstanceTree& tree,
                        std::vector<Diagnostic>* diags) {
  return ViewAnalysis(view, tree).resolve(diags);
}

NormalizedView normalize_view(const ViewDef& view, const InstanceTree& tree) {
  ViewAnalysis analysis(view, tree);
  Resolution res = analysis.resolve(nullptr);
  NormalizedView out;
  for (const auto& [el, q] : res.blocks) out.blocks.insert(q);
  for (const auto& e : view.all_env_names()) out.env_names.insert(e);
  analysis.for_each_connector(res, [&](const ConnectorDecl& c,
                                       const std::optional<QualifiedName>& scope) {
    auto src = analysis.resolve_endpoint(c.source, scope, nullptr);
    if (!src) return;
    for (const auto& t : c.targets) {
      auto tgt = analysis.resolve_endpoint(t, scope, nullptr);
      if (tgt) out.connectors.insert(make_pair_tuple(*src, *tgt, c));
    }
  });
  return out;
}

const FunctionNetDef* base_net_of(const Model& model, const ViewDef& view,
                                  std::vector<Diagnostic>* diags) {
  std::set<std::string> visited = {view.name};
  const ViewDef* v = &view;
  while (v->base_is_view) {
    const ViewDef* base = model.find_view(v->base_name);
    if (!base) throw Error("unknown base view '" + v->base_name + "'");
    if (!visited.insert(base->name).second) {
      if (diags)
        diags->push_back({"R6", Severity::Error, view.name,
                          "base chain of view '" + view.name +
                              "' is cyclic; no complete function net is reachable",
                          view.loc});
      return nullptr;
    }
    v = base;
  }
  const FunctionNetDef* net = model.find_funcnet(v->base_name);
  if (!net) throw Error("unknown base funcnet '" + v->base_name + "'");
  return net;
}

std::vector<Diagnostic> check_view(const Model& model, const std::string& view_name) {
  const ViewDef* view = model.find_view(view_name);
  if (!view) throw Error("unknown view '" + view_name + "'");

  std::vector<Diagnostic> out;
  const FunctionNetDef* net = base_net_of(model, *view, &out);
  if (!net) return out;  // cyclic base chain

  std::vector<Diagnostic> net_diags = check_net(model, net->name);
  if (has_errors(net_diags)) return net_diags;

  InstanceTree tree = elaborate(*net);

  ViewAnalysis analysis(*view, tree);
  Resolution res = analysis.resolve(&out);

  check_r2(*view, res, out);
  check_r3(*view, res, out);

  analysis.for_each_connector(res, [&](const ConnectorDecl& c,
                                       const std::optional<QualifiedName>& scope) {
    if (c.stereotype) return;  // non-digital stimulation is not checked
    std::string why;
    auto src = analysis.resolve_endpoint(c.source, scope, &why);
    if (!src) {
      out.push_back({"R4", Severity::Error, c.source.str(), why, c.loc});
      return;
    }
    for (const auto& tpath : c.targets) {
      auto tgt = analysis.resolve_endpoint(tpath, scope, &why);
      if (!tgt) {
        out.push_back({"R4", Severity::Error, tpath.str(), why, c.loc});
        continue;
      }
      if (src->kind == ViewEndpoint::Kind::Env || tgt->kind == ViewEndpoint::Kind::Env)
        continue;  // environment communication is exempt
      std::set<std::string> sigs = communications(tree, *src, *tgt);
      std::string subj = c.source.str() + " -> " + tpath.str();
      if (c.signal) {
        if (!any_signal_matches(*c.signal, sigs))
          out.push_back({"R4", Severity::Error, subj,
                         "signal '" + *c.signal + "' is not sent from '" +
                             src->str(tree.net_name) + "' to '" + tgt->str(tree.net_name) +
                             "' in the complete function net",
                         c.loc});
      } else if (sigs.empty()) {
        out.push_back({"R4", Severity::Error, subj,
                       "no signal communication exists from '" + src->str(tree.net_name) +
                           "' to '" + tgt->str(tree.net_name) +
                           "' in the complete function net",
                       c.loc});
      }
    }
  });

  if (view->base_is_view) {
    const ViewDef* base = model.find_view(view->base_name);
    std::vector<Diagnostic> base_diags = check_view(model, base->name);
    if (has_errors(base_diags)) {
      out.push_back({"R6", Severity::Error, view->name,
                     "base view '" + base->name + "' is itself inconsistent",
                     view->loc});
    } else {
      NormalizedView self = normalize_view(*view, tree);
      NormalizedView based = normalize_view(*base, tree);
      for (const auto& q : self.blocks)
        if (!based.blocks.count(q))
          out.push_back({"R6", Severity::Error, q.str(),
                         "block '" + q.str() + "' is not shown by base view '" +
                             base->name + "'",
                         view->loc});
      for (const auto& c : self.connectors) {
        if (!c.is_digital()) continue;  // env / non-digital additions are the allowed exception
        bool found = false;
        for (const auto& bc : based.connectors) {
          if (!bc.is_digital()) continue;
          if (!(bc.source == c.source) || !(bc.target == c.target)) continue;
          if (!c.signal || !bc.signal || *bc.signal == *c.signal) { found = true; break; }
        }
        if (!found)
          out.push_back({"R6", Severity::Error,
                         c.source.str(tree.net_name) + " -> " + c.target.str(tree.net_name),
                         "connector from '" + c.source.str(tree.net_name) + "' to '" +
                             c.target.str(tree.net_name) + "'" +
                             (c.signal ? " with signal '" + *c.signal + "'" : "") +
                             " is not shown by base view '" + base->name + "'",
                         view->loc});
      }
    }
  }

  std::sort(out.begin(), out.end(), diagnostic_order);
  return out;
}

}  // namespace fnv
