#pragma once

#include <string>
#include <vector>

namespace fnv {

// 1-based position in a .fnv source file; line == 0 means "no location".
struct SourceLocation {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
};

enum class Severity { Error, Warning };

inline const char* to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

// One finding of a rule from the fixed catalog:
//   P0         parse failure
//   N1..N6     function-net well-formedness
//   R1..R6     view consistency
//   F1..F3     feature-diagram validity
//   B1..B3     binding validity
struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  std::string subject;  // qualified name, path, or "line:col" for parse findings
  std::string message;
  SourceLocation loc;
};

inline bool diagnostic_order(const Diagnostic& a, const Diagnostic& b) {
  if (a.code != b.code) return a.code < b.code;
  if (a.subject != b.subject) return a.subject < b.subject;
  return a.message < b.message;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

inline int count_severity(const std::vector<Diagnostic>& ds, Severity s) {
  int n = 0;
  for (const auto& d : ds)
    if (d.severity == s) ++n;
  return n;
}

// Thrown for contract violations that are not model findings: unknown
// element names passed to an operation, deriving from an invalid
// configuration, and similar caller mistakes.
class Error : public std::exception {
 public:
  explicit Error(std::string what) : what_(std::move(what)) {}
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  std::string what_;
};

}  // namespace fnv
