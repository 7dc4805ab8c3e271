#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fnv/diagnostic.hpp"

namespace fnv {

// Non-digital stimulation markers carried by view connectors.
enum class Stereotype { Mechanical, Electrical, Hydraulic };

inline char stereotype_letter(Stereotype s) {
  switch (s) {
    case Stereotype::Mechanical: return 'M';
    case Stereotype::Electrical: return 'E';
    case Stereotype::Hydraulic: return 'H';
  }
  return '?';
}

std::optional<Stereotype> stereotype_from_letter(char c);

// Dot-joined hierarchical name, e.g. CLS.door_fl.DoorContact.
struct QualifiedName {
  std::vector<std::string> segments;

  QualifiedName() = default;
  explicit QualifiedName(std::vector<std::string> segs) : segments(std::move(segs)) {}
  static QualifiedName single(std::string seg) { return QualifiedName({std::move(seg)}); }

  bool empty() const { return segments.empty(); }
  std::string str() const;
  QualifiedName child(const std::string& seg) const;

  // True iff this is a strict prefix of other.
  bool strict_prefix_of(const QualifiedName& other) const;

  bool operator==(const QualifiedName& o) const { return segments == o.segments; }
  bool operator!=(const QualifiedName& o) const { return !(*this == o); }
  bool operator<(const QualifiedName& o) const { return segments < o.segments; }
};

// Relative path as written in the source, plus where it was written.
struct Path {
  std::vector<std::string> segments;
  SourceLocation loc;

  std::string str() const;
  bool operator==(const Path& o) const { return segments == o.segments; }
  bool operator<(const Path& o) const { return segments < o.segments; }
};

// One `connect` declaration. In a complete function net the signal is
// mandatory and the stereotype forbidden (rule N4); in views both are
// optional.
struct ConnectorDecl {
  Path source;
  std::vector<Path> targets;
  std::optional<std::string> signal;
  std::optional<Stereotype> stereotype;
  SourceLocation loc;
};

struct BlockTemplate;

// A child of a block body: either a block defined in place or an
// instantiation of a named template.
struct NetChild {
  enum class Kind { Owned, Instance };
  Kind kind = Kind::Owned;
  BlockTemplate* owned() { return block.get(); }
  const BlockTemplate* owned() const { return block.get(); }

  std::shared_ptr<BlockTemplate> block;  // Kind::Owned
  std::string template_ref;              // Kind::Instance
  std::string instance_name;             // Kind::Instance
  SourceLocation loc;
};

// Reusable block structure: ports, nested children, local connectors.
struct BlockTemplate {
  std::string name;
  SourceLocation loc;
  std::vector<std::string> in_ports;
  std::vector<std::string> out_ports;
  std::vector<NetChild> children;
  std::vector<ConnectorDecl> connectors;
};

// A `funcnet` declaration: boundary ports, template definitions, and the
// net's own structure.
struct FunctionNetDef {
  std::string name;
  SourceLocation loc;
  std::vector<BlockTemplate> templates;
  BlockTemplate body;  // body.name == name

  const BlockTemplate* find_template(const std::string& tname) const;
};

// Endpoint of an elaborated connector: a block of the instance tree or the
// net boundary.
struct Endpoint {
  QualifiedName qname;  // empty when boundary
  bool is_boundary = false;

  static Endpoint boundary() { return Endpoint{{}, true}; }
  static Endpoint node(QualifiedName q) { return Endpoint{std::move(q), false}; }

  std::string str(const std::string& net_name) const {
    return is_boundary ? net_name : qname.str();
  }
  bool operator==(const Endpoint& o) const {
    return is_boundary == o.is_boundary && qname == o.qname;
  }
  bool operator<(const Endpoint& o) const {
    if (is_boundary != o.is_boundary) return is_boundary < o.is_boundary;
    return qname < o.qname;
  }
};

struct ElabConnector {
  Endpoint source;
  std::vector<Endpoint> targets;
  std::optional<std::string> signal;  // instance-qualified where applicable
  std::optional<Stereotype> stereotype;
  SourceLocation loc;
};

struct InstanceNode {
  std::string name;
  QualifiedName qname;
  // Names of the enclosing instantiation sites, outermost first. Connector
  // signals and ports declared at this node are qualified by this path.
  std::vector<std::string> instance_path;
  std::vector<std::string> in_ports;   // as declared, unqualified
  std::vector<std::string> out_ports;
  std::vector<InstanceNode> children;

  bool is_leaf() const { return children.empty(); }
};

// The fully instantiated net: every template reference expanded, all
// connector endpoints absolute.
class InstanceTree {
 public:
  std::string net_name;
  std::vector<InstanceNode> roots;
  std::vector<ElabConnector> connectors;
  std::vector<std::string> boundary_in;
  std::vector<std::string> boundary_out;

  const InstanceNode* find(const QualifiedName& q) const;
  void for_each_node(const std::function<void(const InstanceNode&)>& fn) const;
  std::size_t node_count() const;
};

// Expands a function net into its instance tree.
//
// Every InstanceRef is replaced by a copy of its template's structure under
// the instance name; qualified names are assigned by path from the net root.
// Connector signals and ports declared inside a template are local to each
// instance: they are qualified with the dot-joined names of the enclosing
// instantiation sites (ContactState declared inside a Door template becomes
// door_fl.ContactState in the door_fl instance).
//
// Throws fnv::Error on unknown template names, recursive instantiation, or
// duplicate sibling names. Connector endpoints that do not resolve throw as
// well unless `endpoint_diags` is given, in which case the offending targets
// (or the whole connector, when the source is bad or no target is left) are
// dropped and one N2 diagnostic is recorded per bad endpoint.
InstanceTree elaborate(const FunctionNetDef& net,
                       std::vector<Diagnostic>* endpoint_diags = nullptr);

// True iff a is a strict ancestor of b in the tree (transitive whole-part
// relation). Throws fnv::Error when either name does not resolve.
bool is_descendant(const InstanceTree& tree, const QualifiedName& a,
                   const QualifiedName& b);

// All signals with their sender inside subtree(a) (inclusive) and at least
// one receiver inside subtree(b) (inclusive). Throws on unresolved names.
std::set<std::string> signals_between(const InstanceTree& tree,
                                      const QualifiedName& a,
                                      const QualifiedName& b);

// Variants of signals_between for boundary-attached communication.
std::set<std::string> signals_from_boundary(const InstanceTree& tree,
                                            const QualifiedName& b);
std::set<std::string> signals_to_boundary(const InstanceTree& tree,
                                          const QualifiedName& a);

// Qualifies a template-local name by an instance path: ("S", [x, y]) gives
// "x.y.S"; an empty path leaves the name untouched.
std::string qualify_local_name(const std::string& name,
                               const std::vector<std::string>& instance_path);

}  // namespace fnv
