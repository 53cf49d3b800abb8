#include "tradeoff/harness/io.hpp"

#include <fstream>
#include <sstream>

#include "tradeoff/errors.hpp"

namespace tradeoff::harness {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  raise(ErrorCode::SchemaError, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(path, std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer() || v.get<long long>() < 1) schema(path + "." + key, "expected a positive integer");
  return v.get<int>();
}

std::string label_of(const Json& j, const std::string& path, std::size_t index) {
  const auto it = j.find("label");
  if (it == j.end()) return std::to_string(index);
  if (!it->is_string()) schema(path + ".label", "expected a string");
  return it->get<std::string>();
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema(path, "expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

bool is_complex_scalar(const Json& j) { return j.is_array() && !j.empty() && j[0].is_number(); }

// Rethrows library validation failures with the location of the offending object.
template <typename F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema(path, e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of complex numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty() || is_complex_scalar(j[r])) schema(rp, "expected a row of complex numbers");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) schema(rp, "rows have different lengths");
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

QuantumInstrument instrument_from_json(const Json& j, const std::string& path) {
  const int in_dim = int_field(j, "in_dim", path);
  const int out_dim = int_field(j, "out_dim", path);
  const Json& outcomes = field(j, "outcomes", path);
  if (!outcomes.is_array() || outcomes.empty()) schema(path + ".outcomes", "expected a nonempty array");
  std::vector<OutcomeBranch> branches;
  for (std::size_t m = 0; m < outcomes.size(); ++m) {
    const std::string op = path + ".outcomes[" + std::to_string(m) + "]";
    const Json& kraus = field(outcomes[m], "kraus", op);
    if (!kraus.is_array() || kraus.empty()) schema(op + ".kraus", "expected a nonempty array of matrices");
    OutcomeBranch b{label_of(outcomes[m], op, m), {}};
    for (std::size_t k = 0; k < kraus.size(); ++k) {
      const std::string kp = op + ".kraus[" + std::to_string(k) + "]";
      Matrix e = matrix_from_json(kraus[k], kp);
      if (e.rows() != out_dim || e.cols() != in_dim)
        schema(kp, "expected an out_dim x in_dim matrix (" + std::to_string(out_dim) + "x" + std::to_string(in_dim) + ")");
      b.kraus.push_back(std::move(e));
    }
    branches.push_back(std::move(b));
  }
  return at_path(path, [&] { return QuantumInstrument::from_branches(std::move(branches)); });
}

Json instrument_to_json(const QuantumInstrument& instr) {
  Json out;
  out["in_dim"] = instr.in_dim();
  out["out_dim"] = instr.out_dim();
  out["outcomes"] = Json::array();
  for (const auto& b : instr.outcomes()) {
    Json o;
    o["label"] = b.label;
    o["kraus"] = Json::array();
    for (const auto& e : b.kraus) o["kraus"].push_back(matrix_to_json(e));
    out["outcomes"].push_back(std::move(o));
  }
  return out;
}

namespace {

Ensemble ensemble_from_sources(const std::vector<StateSource>& states, const std::string& path) {
  std::vector<EnsembleEntry> entries;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string ep = path + ".entries[" + std::to_string(i) + "].state";
    const auto& s = states[i];
    DensityOperator rho = at_path(ep, [&] {
      return s.is_vector ? DensityOperator::from_pure(s.vector) : DensityOperator::from_matrix(s.matrix);
    });
    entries.push_back({s.label, s.probability, std::move(rho)});
  }
  return at_path(path, [&] { return Ensemble::from_entries(std::move(entries)); });
}

}  // namespace

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) schema("$", "expected an object");
  const Json& format = field(j, "format", "$");
  if (!format.is_string() || format.get<std::string>() != kFormat)
    schema("$.format", std::string("expected \"") + kFormat + "\"");
  std::string name = "instance";
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) schema("$.name", "expected a string");
    name = it->get<std::string>();
  }
  const std::string ep = "$.ensemble";
  const Json& ens = field(j, "ensemble", "$");
  const int dim = int_field(ens, "dim", ep);
  const Json& entries = field(ens, "entries", ep);
  if (!entries.is_array() || entries.empty()) schema(ep + ".entries", "expected a nonempty array");
  std::vector<StateSource> states;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = ep + ".entries[" + std::to_string(i) + "]";
    StateSource s;
    s.label = label_of(entries[i], p, i);
    const Json& prob = field(entries[i], "p", p);
    if (!prob.is_number()) schema(p + ".p", "expected a number");
    s.probability = prob.get<double>();
    const Json& state = field(entries[i], "state", p);
    if (!state.is_array() || state.empty()) schema(p + ".state", "expected a vector or a matrix");
    s.is_vector = is_complex_scalar(state[0]);
    if (s.is_vector) {
      s.vector = vector_from_json(state, p + ".state");
      if (s.vector.size() != dim) schema(p + ".state", "vector length differs from dim");
    } else {
      s.matrix = matrix_from_json(state, p + ".state");
      if (s.matrix.rows() != dim || s.matrix.cols() != dim) schema(p + ".state", "matrix shape differs from dim");
    }
    states.push_back(std::move(s));
  }
  Ensemble ensemble = ensemble_from_sources(states, ep);
  QuantumInstrument instrument = instrument_from_json(field(j, "instrument", "$"));
  if (instrument.in_dim() != dim) schema("$.instrument.in_dim", "differs from the ensemble dimension");
  return {std::move(name), std::move(states), std::move(ensemble), std::move(instrument)};
}

Json instance_to_json(const Instance& inst) {
  Json out;
  out["format"] = kFormat;
  out["name"] = inst.name;
  Json ens;
  ens["dim"] = inst.ensemble.dim();
  ens["entries"] = Json::array();
  for (const auto& s : inst.states) {
    Json e;
    e["label"] = s.label;
    e["p"] = s.probability;
    e["state"] = s.is_vector ? vector_to_json(s.vector) : matrix_to_json(s.matrix);
    ens["entries"].push_back(std::move(e));
  }
  out["ensemble"] = std::move(ens);
  out["instrument"] = instrument_to_json(inst.instrument);
  return out;
}

Instance load_instance(const std::string& file) {
  std::ifstream in(file);
  if (!in) raise(ErrorCode::SchemaError, "$: cannot open '" + file + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorCode::SchemaError, std::string("$: invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance make_instance(std::string name, const Ensemble& s, const QuantumInstrument& instr) {
  std::vector<StateSource> states;
  for (const auto& e : s.entries()) {
    StateSource src;
    src.label = e.label;
    src.probability = e.probability;
    src.is_vector = e.state.is_pure(1e-12);
    if (src.is_vector)
      src.vector = e.state.dominant_vector();
    else
      src.matrix = e.state.matrix();
    states.push_back(std::move(src));
  }
  return {std::move(name), std::move(states), s, instr};
}

}  // namespace tradeoff::harness
