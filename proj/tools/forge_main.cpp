// forge: command-line front end. Exit status 0 on success, 1 when a check
// fails or stays undecided, 2 on bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "forge/convolution.hpp"
#include "forge/error.hpp"
#include "forge/json_io.hpp"
#include "forge/pipeline.hpp"

using namespace forge;

namespace {

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw StructuralError("not an integer list: " + s);
    }
  }
  return out;
}

GroupoidAutomorphism parse_alpha(const std::string& spec, const FiniteGroupoid& G) {
  if (spec == "id") return GroupoidAutomorphism::identity(G.size());
  std::vector<ElementId> map;
  for (auto x : parse_list(spec)) {
    if (x < 0) throw StructuralError("alpha entries must be element ids");
    map.push_back(static_cast<ElementId>(x));
  }
  if (map.size() != G.size()) throw StructuralError("alpha must list one image per element of G");
  GroupoidAutomorphism a(map);
  const auto r = verify_automorphism(G, a);
  if (!r.passed()) throw ValidationError("alpha is not an automorphism: " + r.summary());
  return a;
}

int print_report(const ValidationReport& r) {
  std::cout << (r.passed() ? "pass" : r.summary()) << "\n";
  return r.passed() ? 0 : 1;
}

int exit_for(Decision d) { return d == Decision::Yes ? 0 : 1; }

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& file) {
  const auto j = read_json_file(file);
  if (j.contains("levels")) {
    const auto d = bratteli_from_json(j);
    std::cout << "bratteli diagram, horizon " << d.horizon() << (d.is_infinite() ? " (repeating)" : "") << ": ";
    return print_report(validate_bratteli(d));
  }
  if (j.contains("A")) {
    const auto in = rank2_from_json(j);
    std::cout << "rank-2 data: ";
    return print_report(validate_rank2_data(in.data));
  }
  if (j.contains("elements")) {
    std::cout << "finite groupoid: ";
    return print_report(verify_groupoid_axioms(groupoid_from_json(j)));
  }
  throw StructuralError("unrecognized input: expected \"levels\", \"A\" or \"elements\"");
}

int cmd_telescope(const std::string& file, const std::string& subsequence, std::size_t growth) {
  const auto d = bratteli_from_json(read_json_file(file));
  if (!subsequence.empty()) {
    std::vector<std::size_t> s;
    for (auto x : parse_list(subsequence)) s.push_back(static_cast<std::size_t>(x));
    print_json(to_json(telescope(d, s)));
    return 0;
  }
  const auto g = telescope_for_growth(d, growth);
  print_json({{"subsequence", g.subsequence}, {"min_multiplicity", g.min_multiplicity}, {"diagram", to_json(g.diagram)}});
  return 0;
}

int cmd_check_groupoid(const std::string& file) {
  const auto G = groupoid_from_json(read_json_file(file));
  const auto r = verify_groupoid_axioms(G);
  Json out{{"elements", G.size()}, {"units", G.units()}, {"axioms", r.passed() ? "pass" : r.summary()}};
  if (r.passed()) {
    out["principal"] = is_principal(G);
    out["minimal"] = is_minimal(G);
    out["orbits"] = orbits(G);
  }
  print_json(out);
  return r.passed() ? 0 : 1;
}

int cmd_twist(const std::string& hfile, const std::string& gfile, const std::string& alpha_spec,
              const std::string& cocycle, std::int64_t modulus, std::int64_t L) {
  const auto G = groupoid_from_json(read_json_file(gfile));
  const auto alpha = parse_alpha(alpha_spec, G);
  if (hfile == "hinf") {
    const auto w = check_wfc(G, alpha, L);
    std::vector<std::vector<ElementId>> basis;
    for (auto u : G.units()) basis.push_back({u});
    basis.push_back(G.units());
    print_json({{"groupoid", "G^inf_alpha = H_inf x_{c,alpha} G"},
                {"G_principal", is_principal(G)},
                {"wfc", to_json(w)},
                {"lc", to_json(check_lc(G, alpha, basis))},
                {"minimality", to_json(minimality_verdict(G, alpha))}});
    return exit_for(w.verdict);
  }
  const auto H = groupoid_from_json(read_json_file(hfile));
  Cocycle c{std::vector<std::int64_t>(H.size(), 0), modulus};
  if (!cocycle.empty()) c.values = parse_list(cocycle);
  const TwistedProduct t(H, c, G, alpha);
  const auto axioms = verify_groupoid_axioms(t.groupoid());
  const auto p = analyze_principality(t);
  Json out{{"elements", t.groupoid().size()},
           {"axioms", axioms.passed() ? "pass" : axioms.summary()},
           {"principal", is_principal(t.groupoid())},
           {"criterion_predicts_principal", p.predicts_principal()},
           {"isotropy_degrees", p.isotropy_degrees}};
  if (p.collision) out["collision"] = {{"unit", p.collision->first}, {"l", p.collision->second}};
  print_json(out);
  return axioms.passed() && p.predicts_principal() == is_principal(t.groupoid()) ? 0 : 1;
}

int cmd_certify(const std::string& what, const std::string& file, std::size_t D, std::int64_t L,
                const std::string& alpha_spec) {
  const auto j = read_json_file(file);
  if (j.contains("elements")) {
    const auto G = groupoid_from_json(j);
    const auto alpha = parse_alpha(alpha_spec, G);
    if (what == "wfc") {
      const auto w = check_wfc(G, alpha, L);
      print_json(to_json(w));
      return exit_for(w.verdict);
    }
    std::vector<std::vector<ElementId>> basis;
    for (auto u : G.units()) basis.push_back({u});
    basis.push_back(G.units());
    const auto lc = check_lc(G, alpha, basis);
    if (what == "lc") {
      print_json(to_json(lc));
      return lc.all_verified() ? 0 : 1;
    }
    const FiniteGBackend b(G, alpha);
    const auto w = contracting_bisection_witness(b, make_cylinder(hinf_graph(), hinf_vertex()), G.units(),
                                                 lc.entries.back().l);
    const auto r = verify(b, w);
    print_json({{"B", to_string(b, w.B)}, {"r(B)", to_string(b, w.range)}, {"s(B)", to_string(b, w.source)},
                {"verified", r.passed() ? "pass" : r.summary()}});
    return r.passed() ? 0 : 1;
  }
  const auto d = bratteli_from_json(j);
  if (what == "wfc") {
    const auto w = check_wfc(d, D, L);
    print_json(to_json(w));
    return exit_for(w.verdict);
  }
  const auto alpha = lift_graph_automorphism(edge_cycle_automorphism(d));
  std::vector<PathWord> basis;
  for (std::size_t v = 0; v < d.size(0); ++v)
    for (auto& p : enumerate_paths(d, d.vertex(0, v), std::min<std::size_t>(D, 2))) basis.push_back(p);
  const auto lc = check_lc(d, alpha, basis);
  if (what == "lc") {
    print_json(to_json(lc));
    return lc.all_verified() ? 0 : 1;
  }
  const GraphGBackend b(d, alpha);
  Json out = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < basis.size() && i < 4; ++i) {
    const BisectionSum v{{unit_bisection(make_cylinder(d, basis[i]))}};
    const auto w = contracting_bisection_witness(b, make_cylinder(hinf_graph(), hinf_vertex()), v, lc.entries[i].l);
    const auto r = verify(b, w);
    ok = ok && r.passed();
    out.push_back({{"V_G", to_string(d, basis[i])}, {"l", w.l}, {"B", to_string(b, w.B)},
                   {"verified", r.passed() ? "pass" : r.summary()}});
  }
  print_json(out);
  return ok ? 0 : 1;
}

int cmd_convolve_demo(const std::string& identity) {
  const BlockGroupoid z3({{1, cyclic_group(3)}});
  const GinfAlgebra A(z3.groupoid(), z3.automorphism({{0}, {{0}}, {{0, 2, 1}}, {{0}}}));
  const auto& G = A.G();
  const auto& alpha = A.alpha();
  std::cout << "G = Z/3, alpha = negation\n";
  bool all = true;
  auto show = [&](const std::string& what, const SymbolicConv& lhs, const SymbolicConv& rhs) {
    const bool ok = equal(lhs, rhs);
    all = all && ok;
    std::cout << what << "\n  lhs: " << to_string(lhs) << "\n  rhs: " << to_string(rhs) << "\n  "
              << (ok ? "equal" : "DIFFERENT") << "\n";
  };
  const auto f = FiniteConv::delta(G, 1), f2 = FiniteConv::delta(G, 2);
  for (EdgeId i = 1; i <= 2; ++i) {
    if (identity == "comp") {
      for (EdgeId k = 1; k <= 2; ++k) {
        const auto fa = compose_automorphism(f, alpha, -1), f2a = compose_automorphism(f2, alpha, -1);
        show("(x_" + std::to_string(i) + " f)* (x_" + std::to_string(k) + " f')",
             convolve(involution(generator(A, i, f)), generator(A, k, f2)),
             i == k ? iota(A, convolve(involution(fa), f2a)) : SymbolicConv(A));
      }
    } else if (identity == "comp2") {
      show("iota(f') (x_" + std::to_string(i) + " f)", convolve(iota(A, f2), generator(A, i, f)),
           generator(A, i, convolve(f2, f)));
    } else if (identity == "right-action") {
      show("(x_" + std::to_string(i) + " f) iota(f')", convolve(generator(A, i, f), iota(A, f2)),
           generator(A, i, convolve(f, compose_automorphism(f2, alpha, 1))));
    } else {
      throw StructuralError("unknown identity " + identity);
    }
  }
  std::cout << (all ? "verdict: holds" : "verdict: fails") << "\n";
  return all ? 0 : 1;
}

DimGroupElement parse_element(const DimensionGroupSpec& s, const std::string& text) {
  const auto u = parse_unit_class(text);
  return dg_element(s, u.level, u.a);
}

int cmd_ktheory(const std::string& file, const std::string& cls, const std::string& corner, const std::string& op,
                const std::string& with, std::size_t horizon) {
  const auto d = bratteli_from_json(read_json_file(file));
  const auto s = DimensionGroupSpec::from_bratteli(d);
  DimGroupElement a;
  if (!cls.empty()) {
    const auto u = parse_unit_class(cls);
    if (u.a.size() != 1 || u.a[0] < 0) throw StructuralError("--class takes level:index");
    a = k0_vertex_class(d, u.level, static_cast<std::size_t>(u.a[0]));
  } else if (!corner.empty()) {
    const auto u = parse_unit_class(corner);
    a = corner_class(d, u.level, u.a);
  } else {
    throw StructuralError("give --class or --corner");
  }
  Verdict v;
  if (op == "positive") {
    v = dg_is_positive(s, a, horizon);
  } else if (op == "equal") {
    if (with.empty()) throw StructuralError("--op equal needs --with level:vector");
    v = dg_equal(s, a, parse_element(s, with), horizon);
  } else {
    throw StructuralError("unknown op " + op);
  }
  print_json({{"element", to_json(a)}, {"op", op}, {"verdict", to_json(v)}});
  return exit_for(v.decision);
}

int cmd_rank2(const std::string& action, const std::string& file, std::size_t levels) {
  const auto in = rank2_from_json(read_json_file(file));
  const std::size_t H = in.horizon.value_or(in.data.horizon().value_or(levels));
  if (action == "telescope") {
    const auto t = telescope_rank2(in.data, levels);
    Json entries = Json::array();
    for (const auto& e : t.entries) entries.push_back({{"n", e.n}, {"min_entry", e.min_entry}, {"bound", e.bound}});
    print_json({{"lprime", t.lprime}, {"l", t.l}, {"M", t.M}, {"entries", entries}, {"data", to_json(t.data)},
                {"verdict", to_string(t.verdict)}, {"note", t.note}});
    return exit_for(t.verdict);
  }
  const auto d = build_rank2(in.data, H);
  if (action == "build") {
    Json lv = Json::array();
    for (std::size_t n = 0; n <= d.horizon(); ++n) {
      Json cyc = Json::array();
      for (std::size_t j = 0; j < d.cycles(n); ++j) cyc.push_back(d.cycle_length(n, j));
      lv.push_back({{"level", n}, {"cycle_lengths", cyc},
                    {"blue_edges", n < d.horizon() ? Json(d.level_edges(n).size()) : Json()}});
    }
    const auto r = validate_rank2(d);
    print_json({{"levels", lv}, {"validation", r.passed() ? "pass" : r.summary()}});
    return r.passed() ? 0 : 1;
  }
  const auto o = compute_orders(d);
  if (action == "orders") {
    Json growth = Json::array();
    bool ok = true;
    for (const auto& g : order_growth(d, o)) {
      ok = ok && g.holds();
      growth.push_back({{"level", g.level}, {"min_order", g.min_order}, {"bound", g.bound}, {"holds", g.holds()}});
    }
    print_json({{"O", o.O}, {"m", o.m}, {"order_growth", growth}});
    return ok ? 0 : 1;
  }
  if (action == "automorphism") {
    const auto alpha = rank2_automorphism(d, o);
    const auto r = verify_rank2_automorphism(d, alpha);
    Json sample = Json::array();
    for (std::size_t n = 0; n < d.horizon(); ++n) {
      const auto e = d.level_edges(n).front();
      sample.push_back({{"edge", d.edge_name(e)}, {"image", d.edge_name(alpha.edge(e))}});
    }
    print_json({{"description", alpha.description()}, {"m", o.m}, {"sample", sample},
                {"verified", r.passed() ? "pass" : r.summary()}});
    return r.passed() ? 0 : 1;
  }
  throw StructuralError("unknown rank2 action " + action);
}

int cmd_realize(const std::string& kind, const std::string& file, const RealizationOptions& opt,
                const std::string& out) {
  const auto j = read_json_file(file);
  const auto report = kind == "af" ? plan_af_realization(bratteli_from_json(j), opt)
                                   : plan_rank2_realization(rank2_from_json(j).data, opt);
  const auto rj = to_json(report);
  std::ofstream os(out);
  if (!os) throw StructuralError("cannot write " + out);
  os << rj.dump(2) << "\n";
  std::cout << "telescoping: " << to_string(report.telescoping_verdict.decision) << "\n"
            << "wfc: " << to_string(report.wfc.verdict) << " (" << report.wfc.witnesses.size() << " witnesses)\n"
            << "lc: " << (report.lc.all_verified() && !report.lc.entries.empty() ? "verified" : "not verified") << "\n"
            << "minimality: " << to_string(report.minimality.decision) << "\n"
            << "stabilization N = " << report.stabilization.N << "\n";
  if (report.corner) std::cout << report.corner->set_description() << "\n";
  for (const auto& n : report.notes) std::cout << "note: " << n << "\n";
  std::cout << "report written to " << out << "\n";
  return report.certificates_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: groupoid models from Bratteli data"};
  app.require_subcommand(1);
  int status = 0;

  std::string file, subsequence, hfile, gfile, alpha = "id", cocycle, what, cls, corner, op = "positive", with,
                                                  action, kind, unit, out = "report.json";
  std::size_t growth = 5, depth = 5, horizon = 8, levels = 5, stab = 0;
  std::int64_t lbound = 50, modulus = 0;

  auto* validate = app.add_subcommand("validate", "validate a diagram, rank-2 data or groupoid file");
  validate->add_option("file", file)->required()->check(CLI::ExistingFile);
  validate->callback([&] { status = cmd_validate(file); });

  auto* tel = app.add_subcommand("telescope", "telescope a Bratteli diagram");
  tel->add_option("file", file)->required()->check(CLI::ExistingFile);
  tel->add_option("--subsequence", subsequence, "levels to keep, e.g. 0,2,5");
  tel->add_option("--growth", growth, "levels for the k_vw > n telescoping");
  tel->callback([&] { status = cmd_telescope(file, subsequence, growth); });

  auto* cg = app.add_subcommand("check-groupoid", "check the groupoid axioms of a dump");
  cg->add_option("file", file)->required()->check(CLI::ExistingFile);
  cg->callback([&] { status = cmd_check_groupoid(file); });

  auto* tw = app.add_subcommand("twist", "twisted product H x_{c,alpha} G");
  tw->add_option("--H", hfile, "groupoid file or 'hinf'")->required();
  tw->add_option("--G", gfile)->required()->check(CLI::ExistingFile);
  tw->add_option("--alpha", alpha, "'id' or images of the elements, e.g. 1,0,2");
  tw->add_option("--cocycle", cocycle, "values on the elements of H (default 0)");
  tw->add_option("--modulus", modulus, "cocycle values in Z/modulus");
  tw->add_option("--lbound", lbound);
  tw->callback([&] { status = cmd_twist(hfile, gfile, alpha, cocycle, modulus, lbound); });

  auto* cert = app.add_subcommand("certify", "wfc, lc or contracting-bisection certificates");
  cert->add_option("what", what)->required()->check(CLI::IsMember({"wfc", "lc", "contract"}));
  cert->add_option("file", file)->required()->check(CLI::ExistingFile);
  cert->add_option("--depth", depth);
  cert->add_option("--lbound", lbound);
  cert->add_option("--alpha", alpha, "automorphism of a groupoid file");
  cert->callback([&] { status = cmd_certify(what, file, depth, lbound, alpha); });

  auto* conv = app.add_subcommand("convolve-demo", "print both sides of a convolution identity");
  conv->add_option("--identity", what)->required()->check(CLI::IsMember({"comp", "comp2", "right-action"}));
  conv->callback([&] { status = cmd_convolve_demo(what); });

  auto* kt = app.add_subcommand("ktheory", "dimension-group queries");
  kt->add_option("diagram", file)->required()->check(CLI::ExistingFile);
  kt->add_option("--class", cls, "vertex class level:index");
  kt->add_option("--corner", corner, "corner class level:a0,a1,...");
  kt->add_option("--op", op)->check(CLI::IsMember({"equal", "positive"}));
  kt->add_option("--with", with, "second element for --op equal, level:vector");
  kt->add_option("--horizon", horizon);
  kt->callback([&] { status = cmd_ktheory(file, cls, corner, op, with, horizon); });

  auto* r2 = app.add_subcommand("rank2", "rank-2 Bratteli diagrams");
  r2->add_option("action", action)->required()->check(CLI::IsMember({"build", "orders", "telescope", "automorphism"}));
  r2->add_option("file", file)->required()->check(CLI::ExistingFile);
  r2->add_option("--levels", levels, "levels for telescope, or horizon of periodic data");
  r2->callback([&] { status = cmd_rank2(action, file, levels); });

  auto* real = app.add_subcommand("realize", "plan a realization and write report.json");
  real->add_option("kind", kind)->required()->check(CLI::IsMember({"af", "rank2"}));
  real->add_option("file", file)->required()->check(CLI::ExistingFile);
  real->add_option("--unit", unit, "unit class level:a0,a1,...");
  real->add_option("--depth", depth);
  real->add_option("--lbound", lbound);
  real->add_option("--stabilize", stab, "override the truncation N");
  real->add_option("--out", out);
  real->callback([&] {
    RealizationOptions opt;
    opt.depth = depth;
    opt.lbound = lbound;
    if (!unit.empty()) opt.unit = parse_unit_class(unit);
    if (stab > 0) opt.stabilization = stab;
    status = cmd_realize(kind, file, opt, out);
  });

  auto* rv = app.add_subcommand("reverify", "re-check every certificate in a report");
  rv->add_option("report", file)->required()->check(CLI::ExistingFile);
  rv->callback([&] { status = print_report(reverify_report(read_json_file(file))); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const StructuralError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
