#include "tldforge/diagnostics.hpp"

#include <algorithm>

namespace tldf {

std::string Diagnostic::format() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  out += ':' + std::to_string(line) + ':' + std::to_string(column) + ": ";
  out += severity == Severity::Error ? "error" : "warning";
  out += '[' + code + "]: " + message;
  return out;
}

bool has_errors(std::span<const Diagnostic> diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

std::string format_all(std::span<const Diagnostic> diags) {
  std::string out;
  for (const auto& d : diags) {
    out += d.format();
    out += '\n';
  }
  return out;
}

}  // namespace tldf
