#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnv/diagnostic.hpp"
#include "fnv/model.hpp"

namespace fnv {

// Result of parsing one .fnv text. On failure `model` is empty and
// `diagnostics` holds one or more P0 findings; no partial model is returned.
struct ParseResult {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

ParseResult parse(std::string_view text);

}  // namespace fnv
