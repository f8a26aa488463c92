#include "corrkit/io.hpp"

#include <fstream>
#include <sstream>

namespace corrkit::io {
namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad field '") + key + "': " + e.what());
  }
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidArgument("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InvalidArgument("expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InvalidArgument("unknown field '" + key + "'");
  }
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw InvalidArgument("matrix must be a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw InvalidArgument("matrix rows have unequal lengths");
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const DensityOperator& rho) {
  Json j;
  j["dims"] = rho.factorization().dims();
  j["matrix"] = to_json(rho.matrix());
  return j;
}

Json to_json(const PureState& psi) { return to_json(DensityOperator(psi)); }

DensityOperator density_from_json(const Json& j) {
  check_keys(j, {"dims", "matrix", "vector"});
  HilbertFactorization f(get_field<std::vector<int>>(j, "dims"));
  if (j.contains("matrix")) return DensityOperator(std::move(f), matrix_from_json(j.at("matrix")));
  if (j.contains("vector")) {
    const Json& v = j.at("vector");
    if (!v.is_array()) throw InvalidArgument("vector must be an array");
    Vector amps(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) amps(static_cast<Eigen::Index>(i)) = complex_from_json(v[i]);
    return DensityOperator(PureState(std::move(f), std::move(amps)));
  }
  throw InvalidArgument("state needs a 'matrix' or 'vector' field");
}

Json to_json(const LocalChannel& ch) {
  Json j;
  j["site"] = ch.site();
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(to_json(k));
  j["kraus"] = std::move(kraus);
  return j;
}

LocalChannel channel_from_json(const Json& j) {
  check_keys(j, {"site", "kraus"});
  std::vector<Matrix> kraus;
  const Json& list = j.at("kraus");
  if (!list.is_array()) throw InvalidArgument("kraus must be an array");
  for (const auto& k : list) kraus.push_back(matrix_from_json(k));
  return LocalChannel(get_field<int>(j, "site"), std::move(kraus));
}

Json to_json(const LocalMeasurement& m) {
  Json j;
  j["site"] = m.site();
  Json outcomes = Json::array();
  for (const auto& group : m.outcomes()) {
    Json g = Json::array();
    for (const auto& k : group) g.push_back(to_json(k));
    outcomes.push_back(std::move(g));
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

LocalMeasurement measurement_from_json(const Json& j) {
  check_keys(j, {"site", "outcomes"});
  std::vector<std::vector<Matrix>> outcomes;
  const Json& list = j.at("outcomes");
  if (!list.is_array()) throw InvalidArgument("outcomes must be an array");
  for (const auto& group : list) {
    if (!group.is_array()) throw InvalidArgument("each outcome must be an array of matrices");
    std::vector<Matrix> g;
    for (const auto& k : group) g.push_back(matrix_from_json(k));
    outcomes.push_back(std::move(g));
  }
  return LocalMeasurement(get_field<int>(j, "site"), std::move(outcomes));
}

Json to_json(const BellFunctional& f) {
  Json j;
  j["name"] = f.name();
  j["X"] = f.settings_a();
  j["Y"] = f.settings_b();
  j["S"] = f.outcomes_a();
  j["T"] = f.outcomes_b();
  j["beta"] = f.beta();
  if (f.local_bound()) j["local_bound"] = *f.local_bound();
  return j;
}

BellFunctional bell_functional_from_json(const Json& j) {
  check_keys(j, {"name", "X", "Y", "S", "T", "beta", "local_bound"});
  std::optional<double> bound;
  if (j.contains("local_bound") && !j.at("local_bound").is_null()) bound = get_field<double>(j, "local_bound");
  std::string name = j.contains("name") ? get_field<std::string>(j, "name") : "custom";
  return BellFunctional(get_field<int>(j, "X"), get_field<int>(j, "Y"), get_field<int>(j, "S"),
                        get_field<int>(j, "T"), get_field<std::vector<double>>(j, "beta"), bound,
                        std::move(name));
}

Json to_json(const MpsSpec& spec) {
  Json j;
  j["d1"] = spec.d1;
  j["d2"] = spec.d2;
  j["Q"] = spec.blocks;
  j["p"] = spec.p;
  return j;
}

MpsSpec mps_spec_from_json(const Json& j) {
  check_keys(j, {"d1", "d2", "Q", "p"});
  MpsSpec spec{get_field<int>(j, "d1"), get_field<int>(j, "d2"), get_field<int>(j, "Q"),
               get_field<std::vector<double>>(j, "p")};
  spec.validate();
  return spec;
}

Json to_json(const SchmidtVector& v) { return Json(v.coeffs()); }

SchmidtVector schmidt_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("Schmidt vector must be a JSON array");
  return SchmidtVector(j.get<std::vector<double>>());
}

Json to_json(const ReductionReport& r) {
  Json j;
  j["total_dim"] = r.total_dim;
  Json subsets = Json::array();
  for (const auto& s : r.subsets) {
    Json e;
    e["sites"] = s.sites;
    e["dim"] = s.dim;
    e["deviation"] = s.deviation;
    e["pass"] = s.pass;
    subsets.push_back(std::move(e));
  }
  j["subsets"] = std::move(subsets);
  j["max_subset_dim"] = r.max_subset_dim;
  j["purity_forced"] = r.purity_forced;
  j["is_pure"] = r.is_pure;
  j["satisfied"] = r.satisfied;
  j["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
  j["failure_reason"] = r.failure_reason;
  return j;
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace corrkit::io
