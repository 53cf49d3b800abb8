#pragma once

// JSON instance format "tradeoff-lab/1". Complex numbers are [re, im] pairs,
// matrices are arrays of rows. Schema violations raise SchemaError with a JSON path.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tradeoff/ensemble.hpp"
#include "tradeoff/instrument.hpp"

namespace tradeoff::harness {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "tradeoff-lab/1";

/// Ensemble entry as written in the file: a state vector or a density matrix.
struct StateSource {
  std::string label;
  double probability = 0.0;
  bool is_vector = false;
  Vector vector;
  Matrix matrix;
};

struct Instance {
  std::string name;
  std::vector<StateSource> states;
  Ensemble ensemble;
  QuantumInstrument instrument;
};

Json complex_to_json(Complex z);
Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);

Vector vector_from_json(const Json& j, const std::string& path);
Matrix matrix_from_json(const Json& j, const std::string& path);

QuantumInstrument instrument_from_json(const Json& j, const std::string& path = "$.instrument");
Json instrument_to_json(const QuantumInstrument& instr);

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);
Instance load_instance(const std::string& file);

/// Builds an instance whose states are written as vectors (pure) or matrices (mixed).
Instance make_instance(std::string name, const Ensemble& s, const QuantumInstrument& instr);

/// Shortest representation that round-trips exactly.
std::string format_double(double x);

}  // namespace tradeoff::harness
