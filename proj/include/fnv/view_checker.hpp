#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fnv/model.hpp"

namespace fnv {

// Maps every non-env view element to its block in the complete function
// net. Total over shown and ext blocks when rule R1 passes; injective.
struct Resolution {
  std::map<const ViewElement*, QualifiedName> blocks;

  const QualifiedName* find(const ViewElement* el) const {
    auto it = blocks.find(el);
    return it == blocks.end() ? nullptr : &it->second;
  }
};

// Endpoint of a view connector after resolution: a net block, the net
// boundary, or an environmental block.
struct ViewEndpoint {
  enum class Kind { Node, Boundary, Env };
  Kind kind = Kind::Node;
  QualifiedName qname;   // Node
  std::string env_name;  // Env

  static ViewEndpoint node(QualifiedName q) { return {Kind::Node, std::move(q), {}}; }
  static ViewEndpoint boundary() { return {Kind::Boundary, {}, {}}; }
  static ViewEndpoint env(std::string name) { return {Kind::Env, {}, std::move(name)}; }

  bool operator==(const ViewEndpoint& o) const {
    return kind == o.kind && qname == o.qname && env_name == o.env_name;
  }
  bool operator<(const ViewEndpoint& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (!(qname == o.qname)) return qname < o.qname;
    return env_name < o.env_name;
  }
  std::string str(const std::string& net_name) const {
    switch (kind) {
      case Kind::Boundary: return net_name;
      case Kind::Env: return env_name;
      default: return qname.str();
    }
  }
};

struct NormalizedConnector {
  ViewEndpoint source;
  ViewEndpoint target;
  std::optional<std::string> signal;  // as written
  std::optional<Stereotype> stereotype;

  bool is_digital() const {
    return !stereotype && source.kind != ViewEndpoint::Kind::Env &&
           target.kind != ViewEndpoint::Kind::Env;
  }
  bool operator<(const NormalizedConnector& o) const {
    if (!(source == o.source)) return source < o.source;
    if (!(target == o.target)) return target < o.target;
    if (signal != o.signal) return signal < o.signal;
    return stereotype < o.stereotype;
  }
  bool operator==(const NormalizedConnector& o) const {
    return source == o.source && target == o.target && signal == o.signal &&
           stereotype == o.stereotype;
  }
};

// A view reduced to complete-net terms: block names, env names, and
// single-target connector tuples.
struct NormalizedView {
  std::set<QualifiedName> blocks;
  std::set<std::string> env_names;
  std::set<NormalizedConnector> connectors;
};

// Resolves the dotted path of one view block of `view` against the tree.
// Searches the subtree of the resolved enclosing view block (the whole tree
// for top-level blocks) for a node whose trailing name segments equal the
// path; exactly one match is required. Throws fnv::Error when the path is
// not a block of the view, does not match, or matches ambiguously.
QualifiedName resolve_view_block(const ViewDef& view, const InstanceTree& tree,
                                 const Path& path);

// Resolves all shown and ext blocks of the view. R1 findings (unresolved,
// ambiguous, duplicate resolution) are appended to `diags` when given;
// children of unresolved blocks are skipped.
Resolution resolve_view(const ViewDef& view, const InstanceTree& tree,
                        std::vector<Diagnostic>* diags = nullptr);

// Normalizes a view to complete-net terms. Unresolvable pieces are dropped.
NormalizedView normalize_view(const ViewDef& view, const InstanceTree& tree);

// Checks the consistency of a view against its base:
//
//   R1 error  a shown or ext block does not resolve in the complete net
//             (env blocks are exempt; ambiguous and duplicate resolutions
//             are R1 findings as well)
//   R2 error  a view nesting edge whose resolutions are not in strict
//             whole-part relation (skipping intermediate layers is legal)
//   R3 error  two shown blocks related in the net but not nested in the view
//   R4 error  an unstereotyped, non-env connector whose signal (or, when
//             omitted, any communication) is absent between the resolved
//             endpoints; any enclosing block of the exact sender or
//             receiver is accepted as an endpoint
//   R6 error  the base is a view and some block or digital connector of
//             this view is not shown by the base view, or the base chain
//             is cyclic or itself inconsistent
//
// When the base-most net fails check_net, its findings are returned and no
// view rule runs. Throws fnv::Error when view_name is unknown.
std::vector<Diagnostic> check_view(const Model& model, const std::string& view_name);

// Walks the base chain of a view down to its complete function net.
// Returns nullptr and records one R6 diagnostic when the chain is cyclic.
const FunctionNetDef* base_net_of(const Model& model, const ViewDef& view,
                                  std::vector<Diagnostic>* diags = nullptr);

}  // namespace fnv
