#pragma once

#include <set>
#include <string>
#include <vector>

#include "fnv/model.hpp"
#include "fnv/view_checker.hpp"

namespace fnv {

// The view induced by one configuration: the union of the selected
// features' views, in complete-net terms.
struct VariantView {
  Configuration config;
  std::set<QualifiedName> blocks;
  std::set<std::string> env_blocks;
  std::set<NormalizedConnector> connectors;
};

// Checks a binding:
//
//   B1 error   a bound view is missing, is based on a different net, or is
//              itself inconsistent (check_view reports errors)
//   B2 error   a bound feature's view is not a subset of its nearest bound
//              ancestor feature's view
//   B3 warning a leaf feature has no binding entry and can contribute
//              nothing to variants
//
// Throws fnv::Error when binding_name is unknown.
std::vector<Diagnostic> validate_binding(const Model& model,
                                         const std::string& binding_name);

// Derives the variant view of one valid configuration as the union of the
// bound selected features' views. Throws fnv::Error on an invalid
// configuration or a binding that does not validate cleanly.
VariantView derive_variant(const Model& model, const Binding& binding,
                           const Configuration& config);

// One variant per valid configuration, in enumeration order.
std::vector<VariantView> derive_all(const Model& model, const Binding& binding);

// Renders a variant as an ordinary view declaration over the complete net,
// named by its variant id, with nesting derived from complete-net ancestry
// among the variant's own blocks.
ViewDef render_variant_view(const VariantView& variant, const InstanceTree& tree);

// F3: childless features of bound diagrams that no binding maps to a view.
std::vector<Diagnostic> check_unbound_features(const Model& model);

}  // namespace fnv
