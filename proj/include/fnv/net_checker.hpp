#pragma once

#include <string>
#include <vector>

#include "fnv/model.hpp"

namespace fnv {

// Validates a complete function net. Returns all findings ordered by
// (code, subject); an empty list means the net is well formed.
//
//   N1 error   a signal has two or more sending endpoints
//   N2 error   a connector endpoint does not resolve
//   N3 error   a connector source equals one of its targets
//   N4 error   a connector lacks a signal or carries an M/E/H stereotype
//   N5 error   recursive template instantiation or duplicate sibling names
//   N6 warning a declared port signal never appears on a matching connector
//
// Throws fnv::Error when net_name is not a funcnet of the model.
std::vector<Diagnostic> check_net(const Model& model, const std::string& net_name);

}  // namespace fnv
