#include "fnv/feature_model.hpp"

#include <algorithm>
#include <map>

namespace fnv {

namespace {

void walk(const FeatureNode& node, const std::function<void(const FeatureNode&)>& fn) {
  fn(node);
  for (const auto& item : node.items)
    for (const auto& m : item.members) walk(m, fn);
}

}  // namespace

void FeatureDiagram::for_each_feature(
    const std::function<void(const FeatureNode&)>& fn) const {
  walk(root, fn);
}

const FeatureNode* FeatureDiagram::find_feature(const std::string& fname) const {
  const FeatureNode* found = nullptr;
  for_each_feature([&](const FeatureNode& n) {
    if (!found && n.name == fname) found = &n;
  });
  return found;
}

std::vector<std::string> FeatureDiagram::feature_names() const {
  std::vector<std::string> out;
  for_each_feature([&](const FeatureNode& n) { out.push_back(n.name); });
  return out;
}

std::string make_variant_id(const FeatureDiagram& fd,
                            const std::set<std::string>& selected) {
  std::string id = "v";
  fd.for_each_feature([&](const FeatureNode& n) {
    if (n.is_leaf() && n.name != fd.root.name && selected.count(n.name)) id += n.name;
  });
  return id;
}

std::vector<Diagnostic> validate_diagram(const FeatureDiagram& fd) {
  std::vector<Diagnostic> out;
  std::map<std::string, int> seen;
  fd.for_each_feature([&](const FeatureNode& n) {
    if (++seen[n.name] == 2)
      out.push_back({"F1", Severity::Error, n.name,
                     "duplicate feature name '" + n.name + "'", n.loc});
    for (const auto& item : n.items) {
      if (item.kind == FeatureItem::Kind::Group && item.members.size() < 2) {
        const char* kind = item.group_kind == GroupKind::Alternative ? "alternative" : "or";
        out.push_back({"F2", Severity::Error, n.name,
                       std::string(kind) + " group under '" + n.name +
                           "' has fewer than 2 members", item.loc});
      }
    }
  });
  std::sort(out.begin(), out.end(), diagnostic_order);
  return out;
}

bool is_valid_configuration(const FeatureDiagram& fd,
                            const std::set<std::string>& selected) {
  for (const auto& name : selected)
    if (!fd.find_feature(name))
      throw Error("unknown feature name '" + name + "' for diagram '" + fd.name + "'");

  if (!selected.count(fd.root.name)) return false;

  bool ok = true;
  fd.for_each_feature([&](const FeatureNode& n) {
    bool n_selected = selected.count(n.name) > 0;
    for (const auto& item : n.items) {
      if (item.kind == FeatureItem::Kind::ModChild) {
        const FeatureNode& child = item.members.front();
        bool c_selected = selected.count(child.name) > 0;
        if (!n_selected && c_selected) ok = false;
        if (n_selected && item.modality == Modality::Mandatory && !c_selected) ok = false;
      } else {
        std::size_t chosen = 0;
        for (const auto& m : item.members) {
          if (selected.count(m.name)) {
            ++chosen;
            if (!n_selected) ok = false;
          }
        }
        if (n_selected) {
          if (item.group_kind == GroupKind::Alternative && chosen != 1) ok = false;
          if (item.group_kind == GroupKind::Or && chosen == 0) ok = false;
        }
      }
    }
  });
  return ok;
}

namespace {

using NameSet = std::set<std::string>;

std::vector<NameSet> cross(const std::vector<NameSet>& lhs,
                           const std::vector<NameSet>& rhs) {
  std::vector<NameSet> out;
  out.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs)
    for (const auto& b : rhs) {
      NameSet u = a;
      u.insert(b.begin(), b.end());
      out.push_back(std::move(u));
    }
  return out;
}

// All selections of the subtree rooted at `node`, given that `node` itself
// is selected.
std::vector<NameSet> subtree_selections(const FeatureNode& node) {
  std::vector<NameSet> acc = {{node.name}};
  for (const auto& item : node.items) {
    if (item.kind == FeatureItem::Kind::ModChild) {
      const FeatureNode& child = item.members.front();
      std::vector<NameSet> options = subtree_selections(child);
      if (item.modality == Modality::Optional) options.push_back({});
      acc = cross(acc, options);
    } else if (item.group_kind == GroupKind::Alternative) {
      std::vector<NameSet> options;
      for (const auto& m : item.members) {
        auto sub = subtree_selections(m);
        options.insert(options.end(), sub.begin(), sub.end());
      }
      acc = cross(acc, options);
    } else {  // or-group: every nonempty combination of members
      std::vector<NameSet> combos = {{}};
      for (const auto& m : item.members) {
        std::vector<NameSet> options = subtree_selections(m);
        options.push_back({});
        combos = cross(combos, options);
      }
      combos.erase(std::remove_if(combos.begin(), combos.end(),
                                  [](const NameSet& s) { return s.empty(); }),
                   combos.end());
      acc = cross(acc, combos);
    }
  }
  return acc;
}

}  // namespace

std::vector<Configuration> enumerate_configurations(const FeatureDiagram& fd) {
  std::vector<NameSet> sets = subtree_selections(fd.root);
  std::sort(sets.begin(), sets.end());
  std::vector<Configuration> out;
  out.reserve(sets.size());
  for (auto& s : sets) {
    Configuration c;
    c.variant_id = make_variant_id(fd, s);
    c.selected = std::move(s);
    out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t count_configurations(const FeatureDiagram& fd) {
  struct Counter {
    static std::uint64_t count(const FeatureNode& node) {
      std::uint64_t n = 1;
      for (const auto& item : node.items) {
        if (item.kind == FeatureItem::Kind::ModChild) {
          std::uint64_t c = count(item.members.front());
          n *= item.modality == Modality::Mandatory ? c : 1 + c;
        } else if (item.group_kind == GroupKind::Alternative) {
          std::uint64_t sum = 0;
          for (const auto& m : item.members) sum += count(m);
          n *= sum;
        } else {
          std::uint64_t prod = 1;
          for (const auto& m : item.members) prod *= 1 + count(m);
          n *= prod - 1;
        }
      }
      return n;
    }
  };
  return Counter::count(fd.root);
}

}  // namespace fnv
