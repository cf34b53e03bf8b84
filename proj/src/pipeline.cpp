#include "forge/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "forge/error.hpp"
#include "forge/graph_groupoid.hpp"

namespace forge {

namespace {

constexpr std::size_t kMaxBasis = 64;

void check_corner_vector(std::size_t size, const std::vector<std::int64_t>& a) {
  if (a.size() != size)
    throw PreconditionError("corner vector of length " + std::to_string(a.size()) + " at a level of size " +
                            std::to_string(size));
  for (auto x : a)
    if (x < 0) throw PreconditionError("corner vector has a negative entry");
  if (std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; }))
    throw PreconditionError("corner must be nonzero");
}

std::vector<std::int64_t> to_vec(const IntVector& v) { return to_std(v); }

std::size_t default_n(const std::optional<CornerSpec>& c) {
  if (!c) return 1;
  return static_cast<std::size_t>(std::max<std::int64_t>(1, *std::max_element(c->a.begin(), c->a.end())));
}

StabilizationSpec make_stabilization(const RealizationOptions& opt, const std::optional<CornerSpec>& corner) {
  StabilizationSpec s;
  s.N = opt.stabilization.value_or(default_n(corner));
  s.rule = opt.stabilization ? "set by flag" : corner ? "largest entry of the corner vector" : "no corner: N = 1";
  s.description = "G^inf_alpha x K_" + std::to_string(s.N) +
                  ", K_N the full relation on {-N, ..., N}, automorphism alpha x id";
  return s;
}

Json options_json(const RealizationOptions& opt) {
  Json o{{"depth", opt.depth}, {"lbound", opt.lbound}, {"lc_paths", opt.lc_paths}};
  o["unit"] = opt.unit ? Json{{"level", opt.unit->level}, {"a", opt.unit->a}} : Json();
  o["stabilization"] = opt.stabilization ? Json(*opt.stabilization) : Json();
  return o;
}

RealizationOptions options_from_json(const Json& o) {
  RealizationOptions opt;
  opt.depth = o.at("depth").get<std::size_t>();
  opt.lbound = o.at("lbound").get<std::int64_t>();
  opt.lc_paths = o.at("lc_paths").get<std::size_t>();
  if (!o.at("unit").is_null())
    opt.unit = UnitClass{o.at("unit").at("level").get<std::size_t>(), o.at("unit").at("a").get<std::vector<std::int64_t>>()};
  if (!o.at("stabilization").is_null()) opt.stabilization = o.at("stabilization").get<std::size_t>();
  return opt;
}

// Vertex cylinders at level 0 and the cylinders of paths of length 1..len
// starting there, at most kMaxBasis of them.
template <class VertexFn>
std::vector<PathWord> lc_basis(const Graph& g, std::size_t vertices, VertexFn vertex, std::size_t len) {
  std::vector<PathWord> out;
  for (std::size_t k = 0; k <= len && out.size() < kMaxBasis; ++k)
    for (std::size_t v = 0; v < vertices && out.size() < kMaxBasis; ++v) {
      if (k == 0) {
        out.push_back(PathWord::vertex(vertex(v)));
        continue;
      }
      for (auto& p : enumerate_paths(g, vertex(v), k)) {
        if (out.size() >= kMaxBasis) break;
        out.push_back(std::move(p));
      }
    }
  return out;
}

std::vector<PathWord> af_basis(const BratteliDiagram& t, std::size_t len) {
  return lc_basis(t, t.size(0), [&](std::size_t v) { return t.vertex(0, v); }, len);
}

std::vector<PathWord> rank2_basis(const Rank2Diagram& d, std::size_t len) {
  // blue paths only: vertex cylinders are not fixed by a rotating alpha
  auto all = lc_basis(d, d.cycles(0), [&](std::size_t j) { return d.vertex(0, j, 0); }, len);
  all.erase(std::remove_if(all.begin(), all.end(), [](const PathWord& p) { return p.is_vertex(); }), all.end());
  return all;
}

Verdict rank2_cofinality(const Rank2Data& t, std::size_t D) {
  for (std::size_t n = 0; n < D; ++n) {
    bool found = false;
    for (std::size_t m = n + 1; m <= D && !found; ++m) found = min_entry(a_product(t, m, n)) > 0;
    if (!found)
      return Verdict::unknown("no level m <= " + std::to_string(D) + " with A_{m," + std::to_string(n) +
                              "} entrywise positive");
  }
  return Verdict::yes("bounded: from every level n < " + std::to_string(D) +
                      " some later product of the A's is entrywise positive, and red cycles are connected");
}

Json class_json(const DimensionGroupSpec& s, const std::string& name, const DimGroupElement& a, std::size_t D) {
  return {{"class", name}, {"element", to_json(a)}, {"positive", to_json(dg_is_positive(s, a, D))}};
}

Json rank2_trace(const Rank2TelescopeResult& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back({{"n", e.n}, {"min_entry", e.min_entry}, {"bound", e.bound}});
  return {{"lprime", t.lprime}, {"l", t.l}, {"M", t.M}, {"entries", entries}, {"data", to_json(t.data)},
          {"note", t.note}};
}

Rank2TelescopeResult rank2_trace_from_json(const Json& j) {
  Rank2TelescopeResult t;
  t.lprime = j.at("lprime").get<std::vector<std::size_t>>();
  t.l = j.at("l").get<std::vector<std::size_t>>();
  t.M = j.at("M").get<std::vector<std::int64_t>>();
  for (const auto& e : j.at("entries"))
    t.entries.push_back({e.at("n").get<std::size_t>(), e.at("min_entry").get<std::int64_t>(),
                         e.at("bound").get<std::int64_t>()});
  t.data = rank2_from_json(j.at("data")).data;
  t.note = j.at("note").get<std::string>();
  t.verdict = Decision::Yes;
  return t;
}

Json orders_json(const Rank2Diagram& d, const OrderData& o) {
  Json growth = Json::array();
  for (const auto& g : order_growth(d, o))
    growth.push_back({{"level", g.level}, {"min_order", g.min_order}, {"bound", g.bound}, {"holds", g.holds()}});
  return {{"O", o.O}, {"m", o.m}, {"order_growth", growth}};
}

void compare_lc(ValidationReport& rep, const LcWitness& fresh, const Json& stored) {
  const auto old = lc_from_json(stored);
  if (old.entries.size() != fresh.entries.size()) {
    rep.add("lc table matches the recomputed basis", "size");
    return;
  }
  for (std::size_t i = 0; i < old.entries.size(); ++i) {
    const auto& a = old.entries[i];
    const auto& b = fresh.entries[i];
    if (a.basis_element != b.basis_element || a.l != b.l || a.verified != b.verified || !b.verified)
      rep.add("lc entry re-verifies", a.basis_element);
  }
}

void check_hypotheses(ValidationReport& rep, const Json& j) {
  const auto want = analytic_hypotheses();
  if (!j.is_array() || j.size() != want.size()) {
    rep.add("exactly five cited hypotheses", "analytic_hypotheses");
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i)
    if (j[i].at("name") != want[i].name || j[i].at("status") != "NOT COMPUTED")
      rep.add("cited hypothesis flagged NOT COMPUTED", want[i].name);
}

}  // namespace

// ---------------------------------------------------------------- corners

std::string CornerSpec::set_description() const {
  std::string out;
  for (const auto& p : pieces) {
    if (!out.empty()) out += " ∪ ";
    out += "Z(" + p.vertex + ") × {";
    for (std::int64_t j = 1; j <= p.copies; ++j) out += (j > 1 ? "," : "") + std::to_string(j);
    out += "}";
  }
  return "V = " + out;
}

std::string CornerSpec::unit_space() const { return "W = H_inf^(0) × V"; }

std::string CornerSpec::restriction() const { return "G|_W = {g : r(g), s(g) in W}"; }

CornerSpec unit_corner_spec(const BratteliDiagram& d, std::size_t level, const std::vector<std::int64_t>& a) {
  if (!d.has_level(level)) throw PreconditionError("no level " + std::to_string(level));
  check_corner_vector(d.size(level), a);
  CornerSpec c;
  c.level = level;
  c.a = a;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] > 0) c.pieces.push_back({d.vertex_name(d.vertex(level, v)), a[v]});
  c.k0_class = corner_class(d, level, a);
  return c;
}

CornerSpec unit_corner_spec(const Rank2Diagram& d, const Rank2Data& data, std::size_t level,
                            const std::vector<std::int64_t>& a) {
  if (level > d.horizon()) throw PreconditionError("no level " + std::to_string(level));
  check_corner_vector(d.cycles(level), a);
  CornerSpec c;
  c.level = level;
  c.a = a;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > 0) c.pieces.push_back({d.vertex_name(d.vertex(level, j, 0)), a[j]});
  c.k0_class = dg_element(DimensionGroupSpec::k0_of(data), level, a);
  return c;
}

std::vector<CitedHypothesis> analytic_hypotheses() {
  return {
      {"amenability", "G^inf_alpha is amenable (twisted product of amenable groupoids)"},
      {"simplicity via minimal + principal", "Renault; Brown-Clark-Farthing-Sims"},
      {"pure infiniteness", "Anantharaman-Delaroche: locally contracting"},
      {"KK/K-theory transfer", "C*(G^inf_alpha) is KK-equivalent to C*(G)"},
      {"classification", "Kirchberg-Phillips"},
  };
}

bool RealizationReport::certificates_ok() const {
  if (!telescoping_verdict.is_yes() || wfc.verdict != Decision::Yes || lc.entries.empty() || !lc.all_verified())
    return false;
  if (automorphism_data.contains("verified") && !automorphism_data.at("verified").get<bool>()) return false;
  if (automorphism_data.contains("order_growth"))
    for (const auto& g : automorphism_data.at("order_growth"))
      if (!g.at("holds").get<bool>()) return false;
  return true;
}

// ---------------------------------------------------------------- AF input

RealizationReport plan_af_realization(const BratteliDiagram& d, const RealizationOptions& opt) {
  if (opt.depth < 1 || opt.lbound < 1) throw PreconditionError("depth and lbound must be positive");
  const auto check = validate_bratteli(d);
  if (!check.passed()) throw ValidationError("diagram rejected: " + check.summary());

  RealizationReport r;
  r.kind = "af";
  r.input = to_json(d);
  r.options = options_json(opt);
  std::optional<CornerSpec> original_corner;
  if (opt.unit) original_corner = unit_corner_spec(d, opt.unit->level, opt.unit->a);

  // A growth witness for l needs multiplicities above l, which the telescoped
  // diagram has from level l on.
  const std::size_t levels = std::max<std::size_t>(opt.depth, static_cast<std::size_t>(opt.lbound) + 1);
  std::optional<GrowthTelescope> g;
  try {
    g = telescope_for_growth(d, levels);
  } catch (const HorizonError& e) {
    r.telescoping_verdict = Verdict::unknown(e.what());
  } catch (const OverflowError& e) {
    r.telescoping_verdict = Verdict::unknown(std::string("int64 overflow: ") + e.what());
  }
  if (!g) {
    r.telescoping = {{"levels", levels}, {"verdict", to_json(r.telescoping_verdict)}};
    r.wfc.note = "not attempted: telescoping incomplete";
    r.notes.push_back("horizon insufficient for k_vw > n at " + std::to_string(levels) + " levels");
    r.stabilization = make_stabilization(opt, original_corner);
    r.corner = original_corner;
    return r;
  }
  const auto& t = g->diagram;
  r.telescoping_verdict = Verdict::yes("k_vw > n at telescoped levels 0.." + std::to_string(levels - 1));
  r.telescoping = {{"levels", levels},
                   {"subsequence", g->subsequence},
                   {"min_multiplicity", g->min_multiplicity},
                   {"verdict", to_json(r.telescoping_verdict)}};
  if (levels > opt.depth)
    r.notes.push_back("wfc depth raised from " + std::to_string(opt.depth) + " to " + std::to_string(levels) +
                      " so that every l <= " + std::to_string(opt.lbound) + " has a growth witness");

  const auto alpha = edge_cycle_automorphism(t);
  const auto av = verify_graph_automorphism(t, alpha, edges_up_to(t, opt.depth));
  r.automorphism = "edge cycling (vw)_i -> (vw)_{i+1 mod k_vw} on the telescoped diagram, vertices fixed";
  r.automorphism_data = {{"checked_levels", opt.depth}, {"verified", av.passed()}};

  r.wfc = check_wfc(t, levels, opt.lbound);
  r.lc = check_lc(t, lift_graph_automorphism(alpha), af_basis(t, opt.lc_paths));
  try {
    r.minimality = minimality_verdict(t, levels);
  } catch (const Error& e) {
    r.minimality = Verdict::unknown(e.what());
  }

  const auto spec = DimensionGroupSpec::from_bratteli(d);
  Json classes = Json::array();
  for (std::size_t v = 0; v < d.size(0); ++v)
    classes.push_back(class_json(spec, d.vertex_name(d.vertex(0, v)), k0_vertex_class(d, 0, v), opt.depth));
  r.ktheory = {{"group", "K0 = lim (Z^{V_n}, transposed multiplicity matrices)"},
               {"simple_not_z", to_json(simple_not_z(spec))},
               {"vertex_classes", classes}};

  if (original_corner) {
    // the corner lives on the telescoped diagram
    const auto moved = dg_to_telescoped(spec, g->subsequence, original_corner->k0_class);
    r.corner = unit_corner_spec(t, moved.level, to_vec(moved.v));
    const auto back = dg_from_telescoped(g->subsequence, moved);
    const std::size_t h = g->subsequence.back();
    r.ktheory["unit"] = class_json(spec, "[1_V]", original_corner->k0_class, opt.depth);
    r.ktheory["unit"]["telescoped"] = to_json(moved);
    r.ktheory["unit"]["equal_after_telescoping"] = to_json(dg_equal(spec, original_corner->k0_class, back, h));
  }
  r.stabilization = make_stabilization(opt, r.corner);
  return r;
}

// ---------------------------------------------------------------- rank-2 input

RealizationReport plan_rank2_realization(const Rank2Data& data, const RealizationOptions& opt) {
  if (opt.depth < 1 || opt.lbound < 1) throw PreconditionError("depth and lbound must be positive");
  const auto check = validate_rank2_data(data);
  if (!check.passed()) throw ValidationError("rank-2 data rejected: " + check.summary());
  const auto k0 = DimensionGroupSpec::k0_of(data);
  const auto k1 = DimensionGroupSpec::k1_of(data);
  std::optional<DimGroupElement> unit;
  if (opt.unit) {
    if (!data.horizon() || opt.unit->level <= *data.horizon()) check_corner_vector(data.cycles(opt.unit->level), opt.unit->a);
    unit = dg_element(k0, opt.unit->level, opt.unit->a);
  }

  RealizationReport r;
  r.kind = "rank2";
  r.input = to_json(data);
  r.options = options_json(opt);
  r.stabilization = make_stabilization(opt, std::nullopt);
  r.automorphism = "alpha = F^{m_n} on blue edges of level n, vertices rotated m_n steps along their red cycle";

  // orders of the input itself, as far as it goes
  const std::size_t prefix = data.horizon() ? std::min(*data.horizon(), opt.depth) : opt.depth;
  if (prefix > 0) try {
      const auto d0 = build_rank2(data, prefix);
      r.automorphism_data["input_orders"] = orders_json(d0, compute_orders(d0));
    } catch (const Error& e) {
      r.notes.push_back(std::string("input orders not computed: ") + e.what());
    }

  r.ktheory = {{"K0", "lim (Z^{c_n}, A_n)"},
               {"K1", "lim (Z^{c_n}, B_n)"},
               {"simple_not_z", to_json(simple_not_z(k0))},
               {"simplicity", "user-asserted"}};
  Json classes = Json::array();
  for (std::size_t j = 0; j < data.cycles(0); ++j) {
    std::vector<std::int64_t> e(data.cycles(0), 0);
    e[j] = 1;
    classes.push_back(class_json(k0, "cycle " + std::to_string(j) + " at level 0", dg_element(k0, 0, e), opt.depth));
  }
  r.ktheory["vertex_classes"] = classes;

  const std::size_t H = opt.depth + 1;
  Rank2TelescopeResult tr;
  try {
    tr = telescope_rank2(data, H);
  } catch (const OverflowError& e) {
    tr.verdict = Decision::Unknown;
    tr.note = std::string("int64 overflow: ") + e.what();
  }
  r.telescoping = rank2_trace(tr);
  if (tr.verdict != Decision::Yes) {
    r.telescoping_verdict = Verdict::unknown(tr.note);
    r.telescoping["verdict"] = to_json(r.telescoping_verdict);
    r.wfc.note = "not attempted: telescoping incomplete";
    r.notes.push_back("telescoping stopped: " + tr.note);
    return r;
  }
  r.telescoping_verdict = Verdict::yes("entries of A_{l(n+2),l(n+1)} exceed (n+1) M_{n+1} for n < " +
                                       std::to_string(tr.entries.size()));
  r.telescoping["verdict"] = to_json(r.telescoping_verdict);

  std::optional<Rank2Diagram> built;
  try {
    built = build_rank2(tr.data, H);
  } catch (const Error& e) {
    r.telescoping_verdict = Verdict::unknown(std::string("telescoped diagram not built: ") + e.what());
    r.telescoping["verdict"] = to_json(r.telescoping_verdict);
    r.wfc.note = "not attempted: diagram too large";
    return r;
  }
  const auto& d = *built;
  const auto orders = compute_orders(d);
  const auto alpha = rank2_automorphism(d, orders);
  const auto av = verify_rank2_automorphism(d, alpha);
  Json od = orders_json(d, orders);
  od["verified"] = av.passed();
  for (auto& [k, v] : od.items()) r.automorphism_data[k] = v;

  r.wfc = check_wfc(d, orders, opt.depth, opt.lbound);
  r.lc = check_lc(d, orders, rank2_basis(d, opt.lc_paths));
  r.minimality = rank2_cofinality(tr.data, opt.depth);

  if (unit) {
    const auto moved = dg_to_telescoped(k0, tr.l, *unit);
    r.corner = unit_corner_spec(d, tr.data, moved.level, to_vec(moved.v));
    r.ktheory["unit"] = class_json(k0, "[1_V]", *unit, opt.depth);
    r.ktheory["unit"]["telescoped"] = to_json(moved);
  }
  r.stabilization = make_stabilization(opt, r.corner);
  return r;
}

// ---------------------------------------------------------------- JSON

Json to_json(const CornerSpec& c) {
  Json pieces = Json::array();
  for (const auto& p : c.pieces) pieces.push_back({{"cylinder", p.vertex}, {"copies", p.copies}});
  return {{"level", c.level},      {"a", c.a},
          {"pieces", pieces},      {"V", c.set_description()},
          {"W", c.unit_space()},   {"restriction", c.restriction()},
          {"k0_class", to_json(c.k0_class)}};
}

Json to_json(const RealizationReport& r) {
  Json hyp = Json::array();
  for (const auto& h : r.hypotheses) hyp.push_back({{"name", h.name}, {"source", h.source}, {"status", h.status}});
  Json autom = {{"description", r.automorphism}};
  for (const auto& [k, v] : r.automorphism_data.items()) autom[k] = v;
  return {{"schema", kReportSchema},
          {"kind", r.kind},
          {"input", r.input},
          {"options", r.options},
          {"telescoping", r.telescoping},
          {"automorphism", autom},
          {"wfc", to_json(r.wfc)},
          {"lc", to_json(r.lc)},
          {"minimality", to_json(r.minimality)},
          {"stabilization", {{"N", r.stabilization.N}, {"rule", r.stabilization.rule},
                             {"description", r.stabilization.description}}},
          {"corner", r.corner ? to_json(*r.corner) : Json()},
          {"ktheory", r.ktheory},
          {"analytic_hypotheses", hyp},
          {"notes", r.notes},
          {"certificates_ok", r.certificates_ok()}};
}

ValidationReport reverify_report(const Json& j) {
  ValidationReport rep;
  if (!j.is_object() || j.value("schema", "") != kReportSchema) {
    rep.add("schema version", j.is_object() ? j.value("schema", "missing") : "not an object");
    return rep;
  }
  check_hypotheses(rep, j.at("analytic_hypotheses"));
  const auto opt = options_from_json(j.at("options"));
  const auto kind = j.at("kind").get<std::string>();
  const bool ok = j.at("certificates_ok").get<bool>();
  const auto& tel = j.at("telescoping");
  const bool telescoped = tel.at("verdict").at("decision") == "yes";
  if (ok && !telescoped) rep.add("certificates_ok needs a finished telescoping", kind);

  if (kind == "af") {
    const auto d = bratteli_from_json(j.at("input"));
    if (!telescoped) return rep;
    const auto subseq = tel.at("subsequence").get<std::vector<std::size_t>>();
    if (subseq.empty() || subseq.front() != 0) rep.add("subsequence starts at 0", "telescoping");
    for (std::size_t k = 1; k < subseq.size(); ++k)
      if (subseq[k] <= subseq[k - 1]) rep.add("subsequence increases", "index " + std::to_string(k));
    if (!rep.passed()) return rep;
    const auto t = telescope(d, subseq);
    for (std::size_t n = 0; n < t.horizon(); ++n)
      if (min_entry(t.multiplicity(n)) <= static_cast<std::int64_t>(n)) rep.add("k_vw > n", "level " + std::to_string(n));
    const auto cert = wfc_from_json(j.at("wfc"));
    if (ok && cert.verdict != Decision::Yes) rep.add("certificates_ok needs wfc yes", "wfc");
    for (const auto& v : reverify(t, cert).violations) rep.add(v.invariant, v.location);
    const auto alpha = edge_cycle_automorphism(t);
    compare_lc(rep, check_lc(t, lift_graph_automorphism(alpha), af_basis(t, opt.lc_paths)), j.at("lc"));
    if (!j.at("corner").is_null()) {
      const auto orig = unit_corner_spec(d, opt.unit->level, opt.unit->a);
      const auto moved = dg_to_telescoped(DimensionGroupSpec::from_bratteli(d), subseq, orig.k0_class);
      if (to_json(unit_corner_spec(t, moved.level, to_vec(moved.v))) != j.at("corner"))
        rep.add("corner recomputes", "corner");
    }
  } else if (kind == "rank2") {
    const auto data = rank2_from_json(j.at("input")).data;
    if (!telescoped) return rep;
    const auto tr = rank2_trace_from_json(tel);
    for (const auto& v : reverify(data, tr).violations) rep.add(v.invariant, v.location);
    if (!rep.passed()) return rep;
    const auto d = build_rank2(tr.data, opt.depth + 1);
    const auto orders = compute_orders(d);
    auto od = orders_json(d, orders);
    const auto& stored = j.at("automorphism");
    if (stored.at("O") != od.at("O") || stored.at("m") != od.at("m")) rep.add("orders recompute", "O, m");
    for (const auto& g : od.at("order_growth"))
      if (!g.at("holds").get<bool>()) rep.add("o(e) > n m_n", "level " + g.at("level").dump());
    for (const auto& v : verify_rank2_automorphism(d, rank2_automorphism(d, orders)).violations)
      rep.add(v.invariant, v.location);
    const auto cert = wfc_from_json(j.at("wfc"));
    if (ok && cert.verdict != Decision::Yes) rep.add("certificates_ok needs wfc yes", "wfc");
    for (const auto& v : reverify(d, orders, cert).violations) rep.add(v.invariant, v.location);
    compare_lc(rep, check_lc(d, orders, rank2_basis(d, opt.lc_paths)), j.at("lc"));
    if (!j.at("corner").is_null()) {
      const auto unit = dg_element(DimensionGroupSpec::k0_of(data), opt.unit->level, opt.unit->a);
      const auto moved = dg_to_telescoped(DimensionGroupSpec::k0_of(data), tr.l, unit);
      if (to_json(unit_corner_spec(d, tr.data, moved.level, to_vec(moved.v))) != j.at("corner"))
        rep.add("corner recomputes", "corner");
    }
  } else {
    rep.add("kind is af or rank2", kind);
  }

  const auto& st = j.at("stabilization");
  std::size_t want = opt.stabilization.value_or(1);
  if (!opt.stabilization && !j.at("corner").is_null()) {
    want = 1;
    for (const auto& x : j.at("corner").at("a")) want = std::max(want, x.get<std::size_t>());
  }
  if (st.at("N").get<std::size_t>() != want) rep.add("stabilization N", st.at("N").dump());
  return rep;
}

UnitClass parse_unit_class(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw StructuralError("unit class must look like level:a0,a1,...");
  UnitClass u;
  try {
    u.level = std::stoul(s.substr(0, colon));
    std::stringstream in(s.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ',')) u.a.push_back(std::stoll(item));
  } catch (const std::exception&) {
    throw StructuralError("unit class must look like level:a0,a1,...");
  }
  if (u.a.empty()) throw StructuralError("unit class has an empty vector");
  return u;
}

}  // namespace forge
