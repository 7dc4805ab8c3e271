#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fnv/diagnostic.hpp"

namespace fnv {

enum class Modality { Mandatory, Optional };
enum class GroupKind { Alternative, Or };

struct FeatureNode;

// One structuring construct under a feature: a single mandatory/optional
// child, or an alternative/or group.
struct FeatureItem {
  enum class Kind { ModChild, Group };
  Kind kind = Kind::ModChild;
  Modality modality = Modality::Mandatory;  // ModChild
  GroupKind group_kind = GroupKind::Alternative;  // Group
  std::vector<FeatureNode> members;  // size 1 for ModChild
  SourceLocation loc;
};

struct FeatureNode {
  std::string name;
  SourceLocation loc;
  std::vector<FeatureItem> items;

  bool is_leaf() const { return items.empty(); }
};

// Tree of features with mandatory/optional edges and alternative/or groups.
struct FeatureDiagram {
  std::string name;
  SourceLocation loc;
  FeatureNode root;

  // Depth-first preorder over all features.
  void for_each_feature(const std::function<void(const FeatureNode&)>& fn) const;
  const FeatureNode* find_feature(const std::string& fname) const;
  std::vector<std::string> feature_names() const;  // depth-first order
};

// A selection of features satisfying the diagram semantics.
struct Configuration {
  std::set<std::string> selected;
  std::string variant_id;  // "v" + selected non-root leaf names, diagram order

  bool operator==(const Configuration& o) const { return selected == o.selected; }
};

// Builds the variant id for a selection without validating it.
std::string make_variant_id(const FeatureDiagram& fd,
                            const std::set<std::string>& selected);

// Structural validity: F1 duplicate feature name, F2 group with fewer than
// two members.
std::vector<Diagnostic> validate_diagram(const FeatureDiagram& fd);

// True iff `selected` is a valid configuration: the root is selected; for
// every selected feature each mandatory child is selected, each alternative
// group has exactly one selected member and each or-group at least one; and
// no feature is selected under an unselected parent. Throws fnv::Error on
// names that are not in the diagram.
bool is_valid_configuration(const FeatureDiagram& fd,
                            const std::set<std::string>& selected);

// All valid configurations, each exactly once, ordered lexicographically by
// their sorted name sets.
std::vector<Configuration> enumerate_configurations(const FeatureDiagram& fd);

// Analytic count of valid configurations; equals the enumeration length.
std::uint64_t count_configurations(const FeatureDiagram& fd);

}  // namespace fnv
