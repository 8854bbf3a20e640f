#include "topos/errors.hpp"

#include <sstream>

namespace topos {

std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << v.kind << ": " << v.message;
    if (!v.witnesses.empty()) {
      out << " [";
      for (std::size_t i = 0; i < v.witnesses.size(); ++i) out << (i ? ", " : "") << v.witnesses[i];
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error("validation failed:\n" + format_violations(violations)), violations_(std::move(violations)) {}

SizeLimit::SizeLimit(const std::string& what, std::size_t limit)
    : Error("size limit exceeded: " + what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}

}  // namespace topos
