#ifndef TLDFORGE_DIAGNOSTICS_HPP
#define TLDFORGE_DIAGNOSTICS_HPP

#include <span>
#include <string>
#include <vector>

namespace tldf {

enum class Severity { Error, Warning };

// Rendered as `file:line:col: severity[code]: message`.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string file;
  int line = 1;
  int column = 1;

  std::string format() const;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(std::span<const Diagnostic> diags);
std::string format_all(std::span<const Diagnostic> diags);

}  // namespace tldf

#endif  // TLDFORGE_DIAGNOSTICS_HPP
