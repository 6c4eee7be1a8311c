#include "qsym/io.hpp"

#include "qsym/errors.hpp"

#include <limits>

namespace qsym::io {

namespace {

Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return z.convert_to<std::int64_t>();
  return z.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw ConfigError("expected an integer, got " + j.dump());
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

Json matrix_json(const MatQ& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
  return out;
}

MatQ matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols)
    throw ConfigError("expected " + std::to_string(rows * cols) + " matrix entries");
  MatQ m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[k++]);
  return m;
}

}  // namespace

Json to_json(const Rational& q) { return Json::array({integer_json(numerator(q)), integer_json(denominator(q))}); }

Json to_json(const Integer& z) { return integer_json(z); }

Rational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) {
    const Integer den = integer_from_json(j[1]);
    if (den == 0) throw ConfigError("zero denominator");
    return Rational(integer_from_json(j[0]), den);
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw ConfigError("expected [num, den], got " + j.dump());
}

Json to_json(const SetPartition& p) {
  return {{"upper", p.upper()}, {"lower", p.lower()}, {"blocks", p.blocks()}};
}

SetPartition partition_from_json(const Json& j) {
  try {
    return SetPartition(field<int>(j, "upper"), field<int>(j, "lower"),
                        field<std::vector<std::vector<int>>>(j, "blocks"));
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

Json to_json(const TensorOperator& t) {
  return {{"source_legs", t.source_legs}, {"target_legs", t.target_legs}, {"N", t.N}, {"entries", matrix_json(t.matrix)}};
}

TensorOperator operator_from_json(const Json& j) {
  TensorOperator t;
  t.N = field<int>(j, "N");
  t.source_legs = field<int>(j, "source_legs");
  t.target_legs = field<int>(j, "target_legs");
  if (t.N < 1 || t.source_legs < 0 || t.target_legs < 0) throw ConfigError("operator: bad shape");
  const auto rows = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(t.N), t.target_legs));
  const auto cols = static_cast<Eigen::Index>(ipow(static_cast<std::uint64_t>(t.N), t.source_legs));
  t.matrix = matrix_from_json(j.at("entries"), rows, cols);
  return t;
}

Json to_json(const FusionLabel& l) {
  const std::string ring(to_string(l.ring));
  switch (l.ring) {
    case FusionRing::SnPlus:
    case FusionRing::OnPlus:
      return {{"ring", ring}, {"int", l.n}};
    case FusionRing::HnPlus:
      return {{"ring", ring}, {"word", l.word}};
    case FusionRing::BSharp:
      return {{"ring", ring}, {"letters", l.letters}};
  }
  return {};
}

FusionLabel label_from_json(const Json& j) {
  try {
    const FusionRing ring = ring_from_string(field<std::string>(j, "ring"));
    switch (ring) {
      case FusionRing::SnPlus:
        return FusionLabel::sn(field<int>(j, "int"));
      case FusionRing::OnPlus:
        return FusionLabel::on(field<int>(j, "int"));
      case FusionRing::HnPlus:
        return FusionLabel::hn(field<std::string>(j, "word"));
      case FusionRing::BSharp:
        return FusionLabel::bsharp(field<std::vector<BLetter>>(j, "letters"));
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown ring");
}

Json to_json(const Decomposition& d) {
  Json out = Json::array();
  for (const auto& [label, mult] : d) out.push_back({{"label", to_json(label)}, {"multiplicity", mult}});
  return out;
}

Json to_json(const MatrixModel<Rational>& m) {
  Json entries = Json::array();
  for (const auto& e : m.entries) entries.push_back(matrix_json(e));
  return {{"N", m.N}, {"d", m.d}, {"entries", entries}};
}

MatrixModel<Rational> model_from_json(const Json& j) {
  const int N = field<int>(j, "N"), d = field<int>(j, "d");
  if (N < 1 || d < 1) throw ConfigError("model: N and d must be positive");
  const Json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(N * N))
    throw ConfigError("model: expected N*N entries");
  MatrixModel<Rational> m(N, d);
  for (std::size_t k = 0; k < entries.size(); ++k) m.entries[k] = matrix_from_json(entries[k], d, d);
  return m;
}

Json to_json(const CheckResult& c) {
  return {{"check", c.check}, {"status", c.pass ? "PASS" : "FAIL"}, {"max_dev", c.max_dev}, {"witness", c.witness}};
}

Json to_json(const Report& r) {
  Json out = Json::array();
  for (const auto& c : r.checks) out.push_back(to_json(c));
  return out;
}

Json to_json(const FiniteAction& a) {
  Json points = Json::array();
  for (int p = 0; p < a.size; ++p)
    points.push_back(static_cast<std::size_t>(p) < a.names.size() ? Json(a.names[static_cast<std::size_t>(p)]) : Json(p));
  return {{"points", points},
          {"group", to_string(a.group)},
          {"N", a.N},
          {"generators", {{"transpositions", a.transpositions}, {"signs", a.signs}}},
          {"quantum_model_ref", a.has_quantum() ? Json("standard") : Json(nullptr)}};
}

FiniteAction action_from_json(const Json& j) {
  FiniteAction a;
  try {
    a.group = group_from_string(field<std::string>(j, "group"));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  a.N = field<int>(j, "N");
  const Json& points = j.at("points");
  if (!points.is_array()) throw ConfigError("action: points must be an array");
  a.size = static_cast<int>(points.size());
  for (const auto& p : points) a.names.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  const Json& gens = j.at("generators");
  a.transpositions = field<std::vector<std::vector<int>>>(gens, "transpositions");
  if (gens.contains("signs")) a.signs = field<std::vector<std::vector<int>>>(gens, "signs");
  try {
    validate_action(a);
  } catch (const Error& e) {
    throw ConfigError(std::string("action: ") + e.what());
  }
  return a;
}

Json to_json(const HuangModel& m) {
  Json Y = Json::array();
  for (int y = 0; y < m.y_size; ++y) Y.push_back(y);
  return {{"Y", Y}, {"Z", m.Z}, {"N", m.N}};
}

HuangModel huang_model_from_json(const Json& j) {
  HuangModel m;
  m.y_size = static_cast<int>(j.at("Y").size());
  m.Z = field<std::vector<int>>(j, "Z");
  m.N = field<int>(j, "N");
  return m;
}

Json to_json(const HnHuangModel& m) {
  Json Y = Json::array();
  for (int y = 0; y < m.y_size; ++y) Y.push_back(y);
  return {{"Y", Y}, {"Z0", m.Z0}, {"Z1", m.Z1}, {"N", m.N}};
}

HnHuangModel hn_model_from_json(const Json& j) {
  HnHuangModel m;
  m.y_size = static_cast<int>(j.at("Y").size());
  m.Z0 = field<std::vector<int>>(j, "Z0");
  m.Z1 = field<std::vector<int>>(j, "Z1");
  m.N = field<int>(j, "N");
  return m;
}

Json census_json(int N, std::optional<long> index) {
  Json subgroups = Json::array();
  for (const auto& s : subgroup_census(N, index)) {
    Json gens = Json::array();
    for (const auto& g : s.generators) gens.push_back(cycle_string(g));
    subgroups.push_back({{"order", s.order},
                         {"index", s.index},
                         {"transitive", s.transitive},
                         {"stabilized_point", s.stabilized_point ? Json(*s.stabilized_point) : Json(nullptr)},
                         {"conjugacy_class", s.conjugacy_class},
                         {"generators", gens}});
  }
  return {{"N", N}, {"index", index ? Json(*index) : Json(nullptr)}, {"subgroups", subgroups}};
}

}  // namespace qsym::io
