#include "forge/json_io.hpp"

#include <fstream>

#include "forge/error.hpp"

namespace forge {

namespace {

template <class T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(where + ": bad \"" + key + "\": " + e.what());
  }
}

std::size_t index_field(const Json& j, const char* key, const std::string& where) {
  const auto v = field<std::int64_t>(j, key, where);
  if (v < 0) throw StructuralError(where + ": \"" + key + "\" is negative");
  return static_cast<std::size_t>(v);
}

bool is_matrix(const Json& j) {
  return j.is_array() && !j.empty() && j.front().is_array() && (j.front().empty() || j.front().front().is_number());
}

std::vector<IntMatrix> matrix_list(const Json& j, const char* key) {
  if (!j.contains(key)) throw StructuralError(std::string("rank-2 data: missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (is_matrix(v)) return {matrix_from_json(v)};
  if (!v.is_array()) throw StructuralError(std::string("rank-2 data: \"") + key + "\" must be a matrix or a list");
  std::vector<IntMatrix> out;
  for (const auto& m : v) out.push_back(matrix_from_json(m));
  return out;
}

const char* kind_name(WfcWitnessKind k) {
  switch (k) {
    case WfcWitnessKind::Exhaustive: return "exhaustive";
    case WfcWitnessKind::Growth: return "growth";
    case WfcWitnessKind::Periodic: return "periodic";
    case WfcWitnessKind::OrderBound: return "order-bound";
  }
  return "?";
}

WfcWitnessKind kind_from(const std::string& s) {
  for (auto k : {WfcWitnessKind::Exhaustive, WfcWitnessKind::Growth, WfcWitnessKind::Periodic,
                 WfcWitnessKind::OrderBound})
    if (s == kind_name(k)) return k;
  throw StructuralError("unknown witness kind " + s);
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(row);
  }
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw StructuralError("matrix must be a nonempty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw StructuralError("matrix rows must be nonempty arrays");
  IntMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw StructuralError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number_integer()) throw StructuralError("matrix entries must be integers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<std::int64_t>();
    }
  }
  return m;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

BratteliDiagram bratteli_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("diagram must be a JSON object");
  if (!j.contains("levels") || !j.at("levels").is_array() || j.at("levels").empty())
    throw StructuralError("diagram: \"levels\" must be a nonempty array");
  std::vector<std::size_t> sizes;
  for (const auto& l : j.at("levels")) sizes.push_back(index_field(l, "size", "level"));
  std::vector<BratteliDiagram::EdgeDeclaration> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw StructuralError("diagram: \"edges\" must be an array");
    for (const auto& e : j.at("edges")) {
      BratteliDiagram::EdgeDeclaration d{index_field(e, "level", "edge"), index_field(e, "range", "edge"),
                                         index_field(e, "source", "edge"), field<std::int64_t>(e, "mult", "edge"),
                                         std::nullopt};
      if (e.contains("source_level")) d.source_level = index_field(e, "source_level", "edge");
      edges.push_back(d);
    }
  }
  std::optional<std::size_t> repeat;
  if (j.contains("repeat_from") && !j.at("repeat_from").is_null()) repeat = index_field(j, "repeat_from", "diagram");
  return BratteliDiagram::from_declarations(sizes, edges, repeat);
}

Json to_json(const BratteliDiagram& d) {
  Json levels = Json::array(), edges = Json::array();
  for (std::size_t n = 0; n <= d.horizon(); ++n) levels.push_back({{"size", d.size(n)}});
  for (std::size_t n = 0; n < d.horizon(); ++n) {
    const auto& k = d.multiplicity(n);
    for (Eigen::Index v = 0; v < k.rows(); ++v)
      for (Eigen::Index w = 0; w < k.cols(); ++w)
        if (k(v, w) != 0) edges.push_back({{"level", n}, {"range", v}, {"source", w}, {"mult", k(v, w)}});
  }
  Json out{{"levels", levels}, {"edges", edges}};
  if (d.repeat_from()) out["repeat_from"] = *d.repeat_from();
  return out;
}

Rank2Input rank2_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("rank-2 data must be a JSON object");
  Rank2Input in;
  auto& d = in.data;
  const bool constant = j.contains("A") && is_matrix(j.at("A"));
  d.A = matrix_list(j, "A");
  d.B = matrix_list(j, "B");
  d.T = matrix_list(j, "T");
  // a single T is used at every level
  if (j.contains("T") && is_matrix(j.at("T"))) d.T.assign(d.A.size() + 1, d.T.front());
  d.periodic = constant || (j.contains("periodic") && j.at("periodic").get<bool>());
  if (j.contains("orientation")) {
    const auto& o = j.at("orientation");
    const std::string s = o.is_string() ? o.get<std::string>() : std::to_string(o.get<std::int64_t>());
    if (s == "+1" || s == "1")
      d.orientation = 1;
    else if (s == "-1")
      d.orientation = -1;
    else
      throw StructuralError("orientation must be \"+1\" or \"-1\"");
  }
  if (j.contains("horizon")) in.horizon = index_field(j, "horizon", "rank-2 data");
  return in;
}

Json to_json(const Rank2Data& d) {
  Json A = Json::array(), B = Json::array(), T = Json::array();
  for (const auto& m : d.A) A.push_back(to_json(m));
  for (const auto& m : d.B) B.push_back(to_json(m));
  for (const auto& m : d.T) T.push_back(to_json(m));
  return {{"A", A}, {"B", B}, {"T", T}, {"periodic", d.periodic}, {"orientation", d.orientation > 0 ? "+1" : "-1"}};
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  const std::size_t n = index_field(j, "elements", "groupoid");
  if (n == 0) throw StructuralError("groupoid: no elements");
  const auto units = field<std::vector<std::size_t>>(j, "units", "groupoid");
  std::vector<std::int64_t> table(n * n, -1);
  for (const auto& t : field<std::vector<std::vector<std::int64_t>>>(j, "compositions", "groupoid")) {
    if (t.size() != 3) throw StructuralError("groupoid: composition entries are [g, h, gh]");
    for (auto x : t)
      if (x < 0 || static_cast<std::size_t>(x) >= n) throw StructuralError("groupoid: element out of range");
    auto& slot = table[static_cast<std::size_t>(t[0]) * n + static_cast<std::size_t>(t[1])];
    if (slot >= 0 && slot != t[2]) throw StructuralError("groupoid: two values for one product");
    slot = t[2];
  }
  for (auto u : units)
    if (u >= n) throw StructuralError("groupoid: unit out of range");
  std::vector<ElementId> range(n, n), source(n, n), inverse(n, n);
  for (ElementId g = 0; g < n; ++g) {
    for (auto u : units) {
      if (table[u * n + g] == static_cast<std::int64_t>(g)) range[g] = u;
      if (table[g * n + u] == static_cast<std::int64_t>(g)) source[g] = u;
    }
    if (range[g] == n || source[g] == n)
      throw StructuralError("groupoid: element " + std::to_string(g) + " has no range or source unit");
  }
  for (ElementId g = 0; g < n; ++g) {
    for (ElementId h = 0; h < n; ++h)
      if (table[g * n + h] == static_cast<std::int64_t>(range[g]) &&
          table[h * n + g] == static_cast<std::int64_t>(source[g]))
        inverse[g] = h;
    if (inverse[g] == n) throw StructuralError("groupoid: element " + std::to_string(g) + " has no inverse");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return FiniteGroupoid(range, source, inverse, table, units, labels);
}

Json to_json(const FiniteGroupoid& g) {
  Json triples = Json::array(), labels = Json::array();
  for (ElementId a = 0; a < g.size(); ++a) {
    labels.push_back(g.label(a));
    for (ElementId b = 0; b < g.size(); ++b)
      if (auto c = g.try_compose(a, b)) triples.push_back({a, b, *c});
  }
  return {{"elements", g.size()}, {"labels", labels}, {"units", g.units()}, {"compositions", triples}};
}

Json to_json(const Verdict& v) { return {{"decision", to_string(v.decision)}, {"justification", v.justification}}; }

Decision decision_from_string(const std::string& s) {
  if (s == "yes") return Decision::Yes;
  if (s == "no") return Decision::No;
  if (s == "unknown") return Decision::Unknown;
  throw StructuralError("unknown decision " + s);
}

Verdict verdict_from_json(const Json& j) {
  return {decision_from_string(field<std::string>(j, "decision", "verdict")),
          field<std::string>(j, "justification", "verdict")};
}

Json to_json(const WfcCertificate& c) {
  Json w = Json::array();
  for (const auto& x : c.witnesses)
    w.push_back({{"l", x.l}, {"kind", kind_name(x.kind)}, {"level", x.level}, {"reason", x.reason}});
  Json out{{"depth", c.depth}, {"lbound", c.lbound}, {"verdict", to_string(c.verdict)}, {"note", c.note},
           {"witnesses", w}};
  if (c.counterexample) {
    const auto& ce = *c.counterexample;
    Json cj{{"l", ce.l}, {"description", ce.description}, {"period", ce.period}};
    if (ce.unit) cj["unit"] = *ce.unit;
    if (ce.arrow) cj["arrow"] = *ce.arrow;
    out["counterexample"] = cj;
  }
  return out;
}

WfcCertificate wfc_from_json(const Json& j) {
  WfcCertificate c;
  c.depth = index_field(j, "depth", "wfc");
  c.lbound = field<std::int64_t>(j, "lbound", "wfc");
  c.verdict = decision_from_string(field<std::string>(j, "verdict", "wfc"));
  c.note = field<std::string>(j, "note", "wfc");
  for (const auto& w : field<Json>(j, "witnesses", "wfc"))
    c.witnesses.push_back({field<std::int64_t>(w, "l", "witness"), kind_from(field<std::string>(w, "kind", "witness")),
                           index_field(w, "level", "witness"), field<std::string>(w, "reason", "witness")});
  if (j.contains("counterexample")) {
    const auto& cj = j.at("counterexample");
    WfcCounterexample ce;
    ce.l = field<std::int64_t>(cj, "l", "counterexample");
    ce.description = field<std::string>(cj, "description", "counterexample");
    ce.period = field<std::vector<EdgeId>>(cj, "period", "counterexample");
    if (cj.contains("unit")) ce.unit = cj.at("unit").get<ElementId>();
    if (cj.contains("arrow")) ce.arrow = cj.at("arrow").get<ElementId>();
    c.counterexample = ce;
  }
  return c;
}

Json to_json(const LcWitness& w) {
  Json out = Json::array();
  for (const auto& e : w.entries) out.push_back({{"basis", e.basis_element}, {"l", e.l}, {"verified", e.verified}});
  return out;
}

LcWitness lc_from_json(const Json& j) {
  LcWitness w;
  for (const auto& e : j)
    w.entries.push_back({field<std::string>(e, "basis", "lc"), field<std::int64_t>(e, "l", "lc"),
                         field<bool>(e, "verified", "lc")});
  return w;
}

Json to_json(const DimGroupElement& a) { return {{"level", a.level}, {"vector", to_json(a.v)}}; }

DimGroupElement dg_element_from_json(const Json& j) {
  const auto v = field<std::vector<std::int64_t>>(j, "vector", "class");
  IntVector x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  return {index_field(j, "level", "class"), x};
}

}  // namespace forge
