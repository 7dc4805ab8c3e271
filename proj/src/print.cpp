#include "fnv/print.hpp"

#include <sstream>

namespace fnv {

namespace {

class Writer {
 public:
  void line(const std::string& s) {
    for (int i = 0; i < indent_; ++i) out_ << "  ";
    out_ << s << '\n';
  }
  void open(const std::string& s) {
    line(s + " {");
    ++indent_;
  }
  void close(const std::string& suffix = "") {
    --indent_;
    line("}" + suffix);
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  int indent_ = 0;
};

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

std::string connector_text(const ConnectorDecl& c) {
  std::string s = "connect " + c.source.str();
  if (c.stereotype)
    s += std::string(" -[") + stereotype_letter(*c.stereotype) + "]-> ";
  else
    s += " -> ";
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    if (i) s += ", ";
    s += c.targets[i].str();
  }
  if (c.signal) s += " : " + *c.signal;
  return s + ";";
}

void write_ports(Writer& w, const BlockTemplate& body) {
  if (!body.in_ports.empty()) w.line("in " + join(body.in_ports) + ";");
  if (!body.out_ports.empty()) w.line("out " + join(body.out_ports) + ";");
}

void write_net_body(Writer& w, const BlockTemplate& body);

void write_net_child(Writer& w, const NetChild& child) {
  if (child.kind == NetChild::Kind::Instance) {
    w.line("inst " + child.template_ref + " " + child.instance_name + ";");
  } else if (child.block->children.empty() && child.block->connectors.empty() &&
             child.block->in_ports.empty() && child.block->out_ports.empty()) {
    w.line("block " + child.block->name + ";");
  } else {
    w.open("block " + child.block->name);
    write_net_body(w, *child.block);
    w.close();
  }
}

void write_net_body(Writer& w, const BlockTemplate& body) {
  write_ports(w, body);
  for (const auto& child : body.children) write_net_child(w, child);
  for (const auto& c : body.connectors) w.line(connector_text(c));
}

void write_funcnet(Writer& w, const FunctionNetDef& net) {
  w.open("funcnet " + net.name);
  write_ports(w, net.body);
  for (const auto& t : net.templates) {
    w.open("def " + t.name);
    write_net_body(w, t);
    w.close();
  }
  for (const auto& child : net.body.children) write_net_child(w, child);
  for (const auto& c : net.body.connectors) w.line(connector_text(c));
  w.close();
}

void write_view_body(Writer& w, const std::vector<ViewElement>& elements,
                     const std::vector<std::string>& env_names,
                     const std::vector<ConnectorDecl>& connectors) {
  for (const auto& el : elements) {
    if (el.kind == ViewElement::Kind::Ext) {
      w.line("ext " + el.path.str() + ";");
    } else if (el.children.empty() && el.env_children.empty() && el.connectors.empty()) {
      w.line("block " + el.path.str() + ";");
    } else {
      w.open("block " + el.path.str());
      write_view_body(w, el.children, el.env_children, el.connectors);
      w.close();
    }
  }
  for (const auto& e : env_names) w.line("env " + e + ";");
  for (const auto& c : connectors) w.line(connector_text(c));
}

void write_view(Writer& w, const ViewDef& v) {
  w.open("view " + v.name + " of " + (v.base_is_view ? "view " : "") + v.base_name);
  write_view_body(w, v.elements, v.env_blocks, v.connectors);
  w.close();
}

void write_feature(Writer& w, const FeatureNode& node, const std::string& prefix) {
  if (node.items.empty()) {
    w.line(prefix + "feature " + node.name + ";");
    return;
  }
  w.open(prefix + "feature " + node.name);
  for (const auto& item : node.items) {
    if (item.kind == FeatureItem::Kind::ModChild) {
      const char* mod = item.modality == Modality::Mandatory ? "mandatory " : "optional ";
      write_feature(w, item.members.front(), mod);
    } else {
      w.open(item.group_kind == GroupKind::Alternative ? "alternative" : "or");
      for (const auto& m : item.members) write_feature(w, m, "");
      w.close();
    }
  }
  w.close();
}

void write_root_feature(Writer& w, const FeatureNode& node) {
  if (node.items.empty()) {
    w.line("feature " + node.name);
    return;
  }
  w.open("feature " + node.name);
  for (const auto& item : node.items) {
    if (item.kind == FeatureItem::Kind::ModChild) {
      const char* mod = item.modality == Modality::Mandatory ? "mandatory " : "optional ";
      write_feature(w, item.members.front(), mod);
    } else {
      w.open(item.group_kind == GroupKind::Alternative ? "alternative" : "or");
      for (const auto& m : item.members) write_feature(w, m, "");
      w.close();
    }
  }
  w.close();
}

void write_feature_diagram(Writer& w, const FeatureDiagram& fd) {
  w.open("features " + fd.name);
  write_root_feature(w, fd.root);
  w.close();
}

void write_binding(Writer& w, const Binding& b) {
  w.open("binding " + b.diagram + " -> " + b.net);
  for (const auto& e : b.entries) w.line(e.feature + " : view " + e.view + ";");
  w.close();
}

}  // namespace

std::string print(const Model& model) {
  Writer w;
  bool first = true;
  auto gap = [&] {
    if (!first) w.line("");
    first = false;
  };
  for (const auto& n : model.funcnets) { gap(); write_funcnet(w, n); }
  for (const auto& v : model.views) { gap(); write_view(w, v); }
  for (const auto& fd : model.feature_diagrams) { gap(); write_feature_diagram(w, fd); }
  for (const auto& b : model.bindings) { gap(); write_binding(w, b); }
  return w.str();
}

std::string print_funcnet(const FunctionNetDef& net) {
  Writer w;
  write_funcnet(w, net);
  return w.str();
}

std::string print_view(const ViewDef& view) {
  Writer w;
  write_view(w, view);
  return w.str();
}

std::string print_feature_diagram(const FeatureDiagram& fd) {
  Writer w;
  write_feature_diagram(w, fd);
  return w.str();
}

std::string print_binding(const Binding& binding) {
  Writer w;
  write_binding(w, binding);
  return w.str();
}

}  // namespace fnv
