#include "ulab/io.hpp"

#include <fstream>

#include "ulab/errors.hpp"

namespace ulab {

namespace {

json values_to_json(const std::vector<cplx>& values) {
  json arr = json::array();
  for (const cplx& z : values) arr.push_back(json::array({z.real(), z.imag()}));
  return arr;
}

std::vector<cplx> values_from_json(const json& arr) {
  if (!arr.is_array()) throw InputError("function file: 'values' must be an array");
  std::vector<cplx> values;
  values.reserve(arr.size());
  for (const json& item : arr) {
    if (!item.is_array() || item.size() != 2)
      throw InputError("function file: each value must be a [re, im] pair");
    values.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return values;
}

}  // namespace

json to_json(const IntervalFunction& f) {
  return json{{"N", f.size()}, {"values", values_to_json(f.values())}};
}

json to_json(const CyclicFunction& f) {
  return json{{"modulus", f.modulus()}, {"values", values_to_json(f.values())}};
}

IntervalFunction interval_from_json(const json& j) {
  if (!j.contains("N")) throw InputError("interval function file: missing 'N'");
  return IntervalFunction(j.at("N").get<std::int64_t>(), values_from_json(j.at("values")));
}

CyclicFunction cyclic_from_json(const json& j) {
  if (!j.contains("modulus")) throw InputError("cyclic function file: missing 'modulus'");
  return CyclicFunction(j.at("modulus").get<std::int64_t>(), values_from_json(j.at("values")));
}

json to_json(const NormResult& r) {
  json j{{"value", r.value},
         {"power_value", r.power_value},
         {"d", r.d},
         {"method", to_string(r.method)}};
  if (r.stderr_value) j["stderr"] = *r.stderr_value;
  return j;
}

NormResult norm_result_from_json(const json& j) {
  NormResult r;
  r.value = j.at("value").get<double>();
  r.power_value = j.at("power_value").get<double>();
  r.d = j.at("d").get<int>();
  r.method = norm_method_from_string(j.at("method").get<std::string>());
  if (j.contains("stderr")) r.stderr_value = j.at("stderr").get<double>();
  return r;
}

json to_json(const WitnessReport& w) {
  return json{{"frequency", w.frequency},
              {"coefficient", json::array({w.coefficient.real(), w.coefficient.imag()})},
              {"lower_bound", w.lower_bound}};
}

json to_json(const QuadrupleStats& s) {
  json j{{"total", s.total},
         {"passing", s.passing},
         {"skipped", s.skipped},
         {"threshold", s.threshold},
         {"sampled", s.sampled},
         {"pass_fraction", s.pass_fraction()}};
  if (s.stderr_value) j["stderr"] = *s.stderr_value;
  return j;
}

json to_json(const H3Element& x) { return json::array({x.t1, x.t2, x.t12}); }

json to_json(const TildeElement& x) {
  return json::array({x.t, to_json(x.g), json::array({x.g1.a, x.g1.c})});
}

H3Element h3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("H3 element: expected [t1, t2, t12]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

TildeElement tilde_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw InputError("semidirect element: expected [t, [t1, t2, t12], [a, c]]");
  TildeElement x;
  x.t = j[0].get<double>();
  x.g = h3_from_json(j[1]);
  if (!j[2].is_array() || j[2].size() != 2)
    throw InputError("semidirect element: petal part must be [a, c]");
  x.g1 = {j[2][0].get<double>(), j[2][1].get<double>()};
  return x;
}

LoadedFunction load_function_file(const std::string& path) {
  json j = read_json_file(path);
  LoadedFunction out;
  if (j.contains("N")) {
    out.is_interval = true;
    out.interval = interval_from_json(j);
  } else if (j.contains("modulus")) {
    out.is_interval = false;
    out.cyclic = cyclic_from_json(j);
  } else {
    throw InputError(path + ": function file needs either 'N' or 'modulus'");
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ulab
