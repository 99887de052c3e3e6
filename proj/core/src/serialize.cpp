#include "pet/serialize.hpp"

#include <cstdio>

namespace pet {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const LamplighterElement& g) {
  Json lamps = Json::array();
  for (const auto& [p, v] : g.lamps()) lamps.push_back(Json::array({p, v}));
  return Json{{"group", "lamplighter"}, {"lamps", lamps}, {"shift", g.shift()}};
}

LamplighterElement lamplighter_from_json(const Json& j) {
  if (field(j, "group") != "lamplighter") bad("expected a lamplighter element");
  std::vector<LamplighterElement::Lamp> lamps;
  for (const Json& l : field(j, "lamps")) {
    if (!l.is_array() || l.size() != 2) bad("lamp entries must be [pos, val]");
    lamps.emplace_back(l[0].get<std::int64_t>(), l[1].get<std::int64_t>());
  }
  return LamplighterElement(std::move(lamps), field(j, "shift").get<std::int64_t>());
}

Json to_json(const FiniteWreathElement& g) {
  return Json{{"group", "finite_wreath"},
              {"m", g.modulus()},
              {"n", g.positions()},
              {"lamps", g.lamps()},
              {"shift", g.shift()}};
}

FiniteWreathElement finite_wreath_from_json(const Json& j) {
  if (field(j, "group") != "finite_wreath") bad("expected a finite wreath element");
  return FiniteWreathElement(field(j, "m").get<int>(), field(j, "n").get<int>(),
                             field(j, "lamps").get<std::vector<int>>(),
                             field(j, "shift").get<int>());
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrix must be an array of rows");
  Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) bad("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) bad("vector must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

Json to_json(const SignedMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& [p, w] : mu.atoms()) atoms.push_back(Json::array({p, w}));
  return Json{{"atoms", atoms}};
}

SignedMeasure measure_from_json(const Json& j) {
  std::vector<SignedMeasure::Atom> atoms;
  for (const Json& a : field(j, "atoms")) {
    if (!a.is_array() || a.size() != 2) bad("measure atoms must be [point, weight]");
    atoms.emplace_back(a[0].get<std::int64_t>(), a[1].get<double>());
  }
  return SignedMeasure(std::move(atoms));
}

Json to_json(const MetastabilityCertificate& cert) {
  return Json{{"eps", cert.eps},         {"sampling", cert.sampling},
              {"found", cert.found},     {"witness", cert.witness},
              {"spread", cert.spread},   {"exactness", cert.partial ? "partial" : "full"},
              {"search_bound", cert.search_hi}};
}

bool spec_uses_lamplighter(const Json& spec) {
  const std::string kind = field(spec, "kind").get<std::string>();
  auto is_lamp = [](const Json& e) {
    return e.is_object() && e.contains("group") && e["group"] == "lamplighter";
  };
  if (kind == "constant") return is_lamp(field(spec, "g"));
  if (kind == "linear") return is_lamp(field(spec, "a"));
  if (kind == "quadratic_recurrence") return is_lamp(field(spec, "a"));
  if (kind == "abelian_binomial") {
    const Json& gens = field(spec, "gens");
    return !gens.empty() && is_lamp(gens[0]);
  }
  if (kind == "power_poly") return false;
  if (kind == "explicit_table") {
    const Json& vals = field(spec, "values");
    return !vals.empty() && is_lamp(vals[0]);
  }
  bad("unknown sequence kind '" + kind + "'");
}

GroupSequence<LamplighterElement> lamplighter_sequence_from_json(const Json& spec) {
  const std::string kind = field(spec, "kind").get<std::string>();
  using Seq = GroupSequence<LamplighterElement>;
  if (kind == "constant") return Seq::constant(lamplighter_from_json(field(spec, "g")));
  if (kind == "linear")
    return Seq::linear(lamplighter_from_json(field(spec, "a")),
                       lamplighter_from_json(field(spec, "b")));
  if (kind == "quadratic_recurrence")
    return Seq::quadratic_recurrence(lamplighter_from_json(field(spec, "a")),
                                     lamplighter_from_json(field(spec, "b")),
                                     lamplighter_from_json(field(spec, "c")));
  if (kind == "abelian_binomial") {
    std::vector<LamplighterElement> gens;
    for (const Json& g : field(spec, "gens")) gens.push_back(lamplighter_from_json(g));
    return Seq::abelian_binomial(std::move(gens));
  }
  if (kind == "explicit_table") {
    std::vector<LamplighterElement> vals;
    for (const Json& g : field(spec, "values")) vals.push_back(lamplighter_from_json(g));
    return Seq::table(field(spec, "lo").get<std::int64_t>(), std::move(vals));
  }
  bad("sequence kind '" + kind + "' does not produce lamplighter elements");
}

GroupSequence<OrthogonalOperator> orthogonal_sequence_from_json(const Json& spec) {
  const std::string kind = field(spec, "kind").get<std::string>();
  using Seq = GroupSequence<OrthogonalOperator>;
  auto op = [](const Json& j) { return OrthogonalOperator(matrix_from_json(j)); };
  if (kind == "constant") return Seq::constant(op(field(spec, "g")));
  if (kind == "linear") return Seq::linear(op(field(spec, "a")), op(field(spec, "b")));
  if (kind == "quadratic_recurrence")
    return Seq::quadratic_recurrence(op(field(spec, "a")), op(field(spec, "b")),
                                     op(field(spec, "c")));
  if (kind == "abelian_binomial") {
    std::vector<OrthogonalOperator> gens;
    for (const Json& g : field(spec, "gens")) gens.push_back(op(g));
    return Seq::abelian_binomial(std::move(gens));
  }
  if (kind == "power_poly")
    return Seq::power_poly(op(field(spec, "base")),
                           field(spec, "poly").get<std::vector<std::int64_t>>());
  if (kind == "explicit_table") {
    std::vector<OrthogonalOperator> vals;
    for (const Json& g : field(spec, "values")) vals.push_back(op(g));
    return Seq::table(field(spec, "lo").get<std::int64_t>(), std::move(vals));
  }
  bad("sequence kind '" + kind + "' does not produce orthogonal operators");
}

UnitaryAction action_from_json(const Json& spec, std::optional<WreathParams> rep) {
  if (spec_uses_lamplighter(spec)) {
    WreathParams p = rep.value_or(WreathParams{});
    return UnitaryAction::from_lamplighter(lamplighter_sequence_from_json(spec), p.m, p.n);
  }
  return UnitaryAction(orthogonal_sequence_from_json(spec),
                       field(spec, "kind").get<std::string>());
}

std::string spec_hash(const Json& spec) {
  std::string dump = spec.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pet
