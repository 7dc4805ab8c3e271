#include "fnv/net_checker.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fnv {

namespace {

// Sending endpoints per signal: connector sources, plus the net boundary
// for every declared boundary in-port (the environment produces those).
std::map<std::string, std::set<Endpoint>> sender_sets(const InstanceTree& tree) {
  std::map<std::string, std::set<Endpoint>> senders;
  for (const auto& c : tree.connectors)
    if (c.signal) senders[*c.signal].insert(c.source);
  for (const auto& s : tree.boundary_in) senders[s].insert(Endpoint::boundary());
  return senders;
}

bool subtree_contains(const QualifiedName& root, const QualifiedName& q) {
  return root == q || root.strict_prefix_of(q);
}

void check_port_usage(const InstanceTree& tree, std::vector<Diagnostic>& out) {
  // A block port matches a connector either under its declared name or under
  // its instance-qualified name, on the side the direction calls for.
  auto report = [&](const std::string& owner, const char* dir, const std::string& sig) {
    out.push_back({"N6", Severity::Warning, owner,
                   std::string("declared ") + dir + " port signal '" + sig + "' of '" +
                       owner + "' never appears on any connector",
                   {}});
  };

  for (const auto& sig : tree.boundary_in) {
    bool used = false;
    for (const auto& c : tree.connectors)
      if (c.signal && *c.signal == sig && c.source.is_boundary) { used = true; break; }
    if (!used) report(tree.net_name, "in", sig);
  }
  for (const auto& sig : tree.boundary_out) {
    bool used = false;
    for (const auto& c : tree.connectors) {
      if (!c.signal || *c.signal != sig) continue;
      for (const auto& t : c.targets)
        if (t.is_boundary) { used = true; break; }
      if (used) break;
    }
    if (!used) report(tree.net_name, "out", sig);
  }

  tree.for_each_node([&](const InstanceNode& node) {
    for (int dir = 0; dir < 2; ++dir) {
      const auto& ports = dir == 0 ? node.in_ports : node.out_ports;
      for (const auto& sig : ports) {
        std::set<std::string> candidates = {sig, qualify_local_name(sig, node.instance_path)};
        bool used = false;
        for (const auto& c : tree.connectors) {
          if (!c.signal || !candidates.count(*c.signal)) continue;
          if (dir == 0) {
            for (const auto& t : c.targets)
              if (!t.is_boundary && subtree_contains(node.qname, t.qname)) { used = true; break; }
          } else {
            if (!c.source.is_boundary && subtree_contains(node.qname, c.source.qname))
              used = true;
          }
          if (used) break;
        }
        if (!used) report(node.qname.str(), dir == 0 ? "in" : "out", sig);
      }
    }
  });

  // A signal routed only to the boundary must be declared as a boundary out
  // port; one sourced at the boundary must be a declared in port.
  std::set<std::string> b_in(tree.boundary_in.begin(), tree.boundary_in.end());
  std::set<std::string> b_out(tree.boundary_out.begin(), tree.boundary_out.end());
  std::set<std::string> flagged;
  for (const auto& c : tree.connectors) {
    if (!c.signal) continue;
    if (c.source.is_boundary && !b_in.count(*c.signal) && flagged.insert("i" + *c.signal).second)
      out.push_back({"N6", Severity::Warning, tree.net_name,
                     "signal '" + *c.signal +
                         "' is sent from the net boundary but not declared as an in port",
                     c.loc});
    bool to_boundary = false;
    for (const auto& t : c.targets)
      if (t.is_boundary) to_boundary = true;
    if (to_boundary && !b_out.count(*c.signal) && flagged.insert("o" + *c.signal).second)
      out.push_back({"N6", Severity::Warning, tree.net_name,
                     "signal '" + *c.signal +
                         "' is routed to the net boundary but not declared as an out port",
                     c.loc});
  }
}

}  // namespace

std::vector<Diagnostic> check_net(const Model& model, const std::string& net_name) {
  const FunctionNetDef* net = model.find_funcnet(net_name);
  if (!net) throw Error("unknown funcnet '" + net_name + "'");

  std::vector<Diagnostic> out;
  InstanceTree tree;
  try {
    tree = elaborate(*net, &out);  // collects N2 per bad endpoint
  } catch (const Error& e) {
    // Structural failures: recursion, duplicate siblings, unknown template.
    out.push_back({"N5", Severity::Error, net_name, e.what(), net->loc});
    std::sort(out.begin(), out.end(), diagnostic_order);
    return out;
  }

  // N1: exactly one sender per signal.
  for (const auto& [signal, senders] : sender_sets(tree)) {
    if (senders.size() < 2) continue;
    std::string list;
    for (const auto& e : senders) {
      if (!list.empty()) list += ", ";
      list += e.str(tree.net_name);
    }
    out.push_back({"N1", Severity::Error, signal,
                   "signal '" + signal + "' has " + std::to_string(senders.size()) +
                       " sending endpoints: " + list,
                   {}});
  }

  for (const auto& c : tree.connectors) {
    // N3: degenerate self-connection.
    for (const auto& t : c.targets)
      if (t == c.source)
        out.push_back({"N3", Severity::Error, c.source.str(tree.net_name),
                       "connector source '" + c.source.str(tree.net_name) +
                           "' equals a target",
                       c.loc});
    // N4: complete-net connectors are digital and carry a signal.
    if (!c.signal)
      out.push_back({"N4", Severity::Error, c.source.str(tree.net_name),
                     "funcnet connector from '" + c.source.str(tree.net_name) +
                         "' carries no signal",
                     c.loc});
    if (c.stereotype)
      out.push_back({"N4", Severity::Error, c.source.str(tree.net_name),
                     std::string("funcnet connector from '") + c.source.str(tree.net_name) +
                         "' carries stereotype «" + stereotype_letter(*c.stereotype) + "»",
                     c.loc});
  }

  check_port_usage(tree, out);

  std::sort(out.begin(), out.end(), diagnostic_order);
  return out;
}

}  // namespace fnv
