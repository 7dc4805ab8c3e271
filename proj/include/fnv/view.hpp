#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnv/funcnet.hpp"

namespace fnv {

// A block drawn in a view. Shown blocks may nest further view items; ext
// blocks are leaf context markers.
struct ViewElement {
  enum class Kind { Shown, Ext };
  Kind kind = Kind::Shown;
  Path path;
  SourceLocation loc;
  std::vector<ViewElement> children;       // Shown only
  std::vector<std::string> env_children;   // env names declared in this body
  std::vector<ConnectorDecl> connectors;   // connectors declared in this body
};

// A `view` declaration: an abstraction of a funcnet or of another view.
struct ViewDef {
  std::string name;
  SourceLocation loc;
  std::string base_name;
  bool base_is_view = false;
  std::vector<ViewElement> elements;      // top-level shown/ext blocks
  std::vector<std::string> env_blocks;    // top-level env names
  std::vector<ConnectorDecl> connectors;  // top-level connectors

  // All env names of the view, including those declared inside blocks.
  std::vector<std::string> all_env_names() const;
};

}  // namespace fnv
