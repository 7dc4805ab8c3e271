#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnv/feature_model.hpp"
#include "fnv/funcnet.hpp"
#include "fnv/view.hpp"

namespace fnv {

// `binding FD -> Net { feature : view V; ... }` — maps features of a
// diagram to feature views over one net. A binding is named by its diagram.
struct BindingEntry {
  std::string feature;
  std::string view;
  SourceLocation loc;
};

struct Binding {
  std::string name;  // == diagram name
  SourceLocation loc;
  std::string diagram;
  std::string net;
  std::vector<BindingEntry> entries;

  const BindingEntry* find_entry(const std::string& feature) const;
};

// Everything parsed from one .fnv file, in declaration order.
struct Model {
  std::vector<FunctionNetDef> funcnets;
  std::vector<ViewDef> views;
  std::vector<FeatureDiagram> feature_diagrams;
  std::vector<Binding> bindings;

  const FunctionNetDef* find_funcnet(const std::string& name) const;
  const ViewDef* find_view(const std::string& name) const;
  const FeatureDiagram* find_diagram(const std::string& name) const;
  const Binding* find_binding(const std::string& name) const;
};

}  // namespace fnv
