#include "forge/report.hpp"

namespace forge {

std::string ValidationReport::summary() const {
  if (passed()) return "pass";
  std::string out = "fail (" + std::to_string(violations.size()) + " violations)";
  for (const auto& v : violations) out += "\n  " + v.invariant + " at " + v.location;
  return out;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Yes:
      return "yes";
    case Decision::No:
      return "no";
    case Decision::Unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace forge
