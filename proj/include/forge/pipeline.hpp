#pragma once

// Realization planners: from an AF diagram or rank-2 data to the groupoid
// data G^inf_alpha x K_N restricted to a corner, with every combinatorial
// certificate attached. Analytic steps are listed as cited, not computed.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/dimension_groups.hpp"
#include "forge/json_io.hpp"
#include "forge/rank2.hpp"
#include "forge/twisted_product.hpp"

namespace forge {

inline constexpr const char* kReportSchema = "forge-realization/1";

struct CornerPiece {
  std::string vertex;  // Z(vertex)
  std::int64_t copies; // x {1, ..., copies}
};

struct CornerSpec {
  std::size_t level = 0;
  std::vector<std::int64_t> a;
  std::vector<CornerPiece> pieces;
  DimGroupElement k0_class;

  std::string set_description() const;  // V = Z(v) x {1,2} u ...
  std::string unit_space() const;        // W = H_inf units x V
  std::string restriction() const;       // {g : r(g), s(g) in W}
};

// Throws PreconditionError for negative entries, a wrong length or a = 0.
CornerSpec unit_corner_spec(const BratteliDiagram& d, std::size_t level, const std::vector<std::int64_t>& a);
// a(j) copies of Z(v_j), v_j the first vertex of red cycle j at the level.
CornerSpec unit_corner_spec(const Rank2Diagram& d, const Rank2Data& data, std::size_t level,
                            const std::vector<std::int64_t>& a);

struct CitedHypothesis {
  std::string name;
  std::string source;
  std::string status = "NOT COMPUTED";
};

// Always the same five entries.
std::vector<CitedHypothesis> analytic_hypotheses();

struct StabilizationSpec {
  std::size_t N = 1;
  std::string rule;
  std::string description;
};

struct UnitClass {
  std::size_t level = 0;
  std::vector<std::int64_t> a;
};

struct RealizationOptions {
  std::size_t depth = 5;
  std::int64_t lbound = 50;
  std::optional<UnitClass> unit;
  std::optional<std::size_t> stabilization;  // overrides the default N
  std::size_t lc_paths = 2;                  // lc basis: cylinders of paths up to this length from level 0
};

struct RealizationReport {
  std::string kind;  // "af" or "rank2"
  Json input;
  Json options;
  Json telescoping;
  Verdict telescoping_verdict;
  std::string automorphism;
  Json automorphism_data;
  WfcCertificate wfc;
  LcWitness lc;
  Verdict minimality;
  StabilizationSpec stabilization;
  std::optional<CornerSpec> corner;
  Json ktheory;
  std::vector<CitedHypothesis> hypotheses = analytic_hypotheses();
  std::vector<std::string> notes;

  // Telescoping, wfc, lc and (for rank-2) order growth all succeeded.
  bool certificates_ok() const;
};

// Validation failures throw ValidationError and no report is made. Running
// out of data gives a report with Unknown verdicts and the partial trace.
RealizationReport plan_af_realization(const BratteliDiagram& d, const RealizationOptions& opt = {});
RealizationReport plan_rank2_realization(const Rank2Data& data, const RealizationOptions& opt = {});

Json to_json(const RealizationReport& r);
Json to_json(const CornerSpec& c);

// Rebuilds everything from the report's input echo and options and checks
// every embedded certificate against the owning module's checker.
ValidationReport reverify_report(const Json& report);

// "level:v0,v1,..." as used on the command line.
UnitClass parse_unit_class(const std::string& s);

}  // namespace forge
