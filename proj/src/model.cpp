#include "fnv/model.hpp"

namespace fnv {

namespace {

void collect_env(const std::vector<ViewElement>& elements,
                 std::vector<std::string>& out) {
  for (const auto& el : elements) {
    for (const auto& e : el.env_children) out.push_back(e);
    collect_env(el.children, out);
  }
}

}  // namespace

std::vector<std::string> ViewDef::all_env_names() const {
  std::vector<std::string> out = env_blocks;
  collect_env(elements, out);
  return out;
}

const BindingEntry* Binding::find_entry(const std::string& feature) const {
  for (const auto& e : entries)
    if (e.feature == feature) return &e;
  return nullptr;
}

const FunctionNetDef* Model::find_funcnet(const std::string& name) const {
  for (const auto& n : funcnets)
    if (n.name == name) return &n;
  return nullptr;
}

const ViewDef* Model::find_view(const std::string& name) const {
  for (const auto& v : views)
    if (v.name == name) return &v;
  return nullptr;
}

const FeatureDiagram* Model::find_diagram(const std::string& name) const {
  for (const auto& d : feature_diagrams)
    if (d.name == name) return &d;
  return nullptr;
}

const Binding* Model::find_binding(const std::string& name) const {
  for (const auto& b : bindings)
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace fnv
