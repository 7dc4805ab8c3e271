#pragma once

#include <string>

#include "fnv/model.hpp"

namespace fnv {

// Canonical text form: 2-space indentation, one declaration per line,
// children in declaration order. Deterministic; parse(print(m)) is
// structurally equal to m.
std::string print(const Model& model);

std::string print_funcnet(const FunctionNetDef& net);
std::string print_view(const ViewDef& view);
std::string print_feature_diagram(const FeatureDiagram& fd);
std::string print_binding(const Binding& binding);

}  // namespace fnv
