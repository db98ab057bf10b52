#pragma once

#include <string>

#include <json.hpp>

#include "ulab/cocycle.hpp"
#include "ulab/functions.hpp"
#include "ulab/gowers.hpp"
#include "ulab/nilpotent.hpp"

namespace ulab {

using json = nlohmann::json;

/// Function files:
///   {"N": int, "values": [[re, im], ...]}        interval function
///   {"modulus": int, "values": [[re, im], ...]}  cyclic function
json to_json(const IntervalFunction& f);
json to_json(const CyclicFunction& f);
IntervalFunction interval_from_json(const json& j);
CyclicFunction cyclic_from_json(const json& j);

json to_json(const NormResult& r);
NormResult norm_result_from_json(const json& j);

json to_json(const WitnessReport& w);
json to_json(const QuadrupleStats& s);

/// Group elements serialize as coordinate arrays: [t1, t2, t12] and
/// [t, [t1, t2, t12], [a, c]].
json to_json(const H3Element& x);
json to_json(const TildeElement& x);
H3Element h3_from_json(const json& j);
TildeElement tilde_from_json(const json& j);

/// Either kind of function file, wrapped as a cyclic function: interval
/// inputs are reported with is_interval = true so norms can renormalize.
struct LoadedFunction {
  bool is_interval = false;
  IntervalFunction interval{1, {cplx{0.0, 0.0}}};
  CyclicFunction cyclic{1, {cplx{0.0, 0.0}}};
};
LoadedFunction load_function_file(const std::string& path);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace ulab
