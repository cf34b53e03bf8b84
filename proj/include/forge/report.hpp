#pragma once

#include <string>
#include <vector>

namespace forge {

struct Violation {
  std::string invariant;  // short name of the violated invariant
  std::string location;   // offending vertex / edge / level / element tuple
};

// Verdict is pass exactly when the violation list is empty.
struct ValidationReport {
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  void add(std::string invariant, std::string location) {
    violations.push_back({std::move(invariant), std::move(location)});
  }
  bool mentions(const std::string& invariant) const {
    for (const auto& v : violations)
      if (v.invariant == invariant) return true;
    return false;
  }
  std::string summary() const;
};

enum class Decision { Yes, No, Unknown };

// Tri-state answer for questions that are only semi-decidable at a horizon.
// A No always carries the justification that makes it final.
struct Verdict {
  Decision decision = Decision::Unknown;
  std::string justification;

  static Verdict yes(std::string why) { return {Decision::Yes, std::move(why)}; }
  static Verdict no(std::string why) { return {Decision::No, std::move(why)}; }
  static Verdict unknown(std::string why) { return {Decision::Unknown, std::move(why)}; }

  bool is_yes() const { return decision == Decision::Yes; }
  bool is_no() const { return decision == Decision::No; }
  bool is_unknown() const { return decision == Decision::Unknown; }
};

const char* to_string(Decision d);

}  // namespace forge
