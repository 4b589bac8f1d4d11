#include "pwk/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwk/algebra/limits.hpp"

namespace pwk::cli {

using json = nlohmann::json;
using algebra::ExactScalar;
using algebra::Poly2;

namespace {

ExactScalar scalar(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return ExactScalar::parse(j.get<std::string>());
    if (j.is_number_integer()) return ExactScalar(j.get<long>());
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": exact scalars must be strings like \"p/q\" or integers");
}

// [[i, j, "c"], ...] -> sum c x^i y^j.
Poly2 poly(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected a list of [i, j, coefficient] terms");
  Poly2 out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer()) {
      throw ConfigError(where + ": each term is [i, j, coefficient]");
    }
    const int a = t[0].get<int>();
    const int b = t[1].get<int>();
    if (a < 0 || b < 0 || a > 32 || b > 32) throw ConfigError(where + ": exponents must lie in 0..32");
    out.add_term(a, b, scalar(t[2], where));
  }
  return out;
}

field::PolyVectorField zone(const json& z, const std::string& where) {
  try {
    if (z.contains("f") || z.contains("g")) {
      if (!z.contains("f") || !z.contains("g")) throw ConfigError(where + ": Kolmogorov zones need both f and g");
      return field::PolyVectorField::kolmogorov(poly(z["f"], where + ".f"), poly(z["g"], where + ".g"));
    }
    if (!z.contains("P") || !z.contains("Q")) throw ConfigError(where + ": a zone needs P and Q (or f and g)");
    return field::PolyVectorField(poly(z["P"], where + ".P"), poly(z["Q"], where + ".Q"),
                                  z.value("kolmogorov", false));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

template <std::size_t N>
std::array<double, N> numbers(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) throw ConfigError(where + ": expected " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_number()) throw ConfigError(where + ": expected numbers");
    out[i] = j[i].get<double>();
  }
  return out;
}

field::Scenario inline_system(const json& s) {
  field::Scenario sc;
  sc.name = s.value("name", std::string("inline"));
  sc.description = "system defined in the config file";
  if (!s.contains("zones") || !s["zones"].is_array() || s["zones"].empty() || s["zones"].size() > 2) {
    throw ConfigError("system.zones must list one or two zones");
  }
  ExactScalar sigma = s.contains("sigma_x") ? scalar(s["sigma_x"], "system.sigma_x") : ExactScalar(1);
  auto z1 = zone(s["zones"][0], "system.zones[0]");
  auto z2 = s["zones"].size() == 2 ? zone(s["zones"][1], "system.zones[1]") : z1;
  try {
    sc.system = field::PiecewiseKolmogorovSystem(z1, z2, sigma);
  } catch (const Error& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  sc.smooth = sc.system.is_smooth();
  if (s.contains("focus")) {
    const auto& f = s["focus"];
    if (!f.is_array() || f.size() != 2) throw ConfigError("system.focus must be [x, y]");
    sc.focus = field::Point{scalar(f[0], "system.focus"), scalar(f[1], "system.focus")};
  }
  if (s.contains("bbox")) {
    auto b = numbers<4>(s["bbox"], "system.bbox");
    sc.bbox = b;
  }
  if (s.contains("seeds")) {
    for (const auto& p : s["seeds"]) sc.seeds.push_back(numbers<2>(p, "system.seeds"));
  }
  if (s.contains("time")) sc.portrait_time = s["time"].get<double>();
  return sc;
}

template <typename T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) {
    try {
      dst = j[key].get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

void take_scalar_text(const json& j, const char* key, std::string& dst) {
  if (!j.contains(key)) return;
  if (j[key].is_string()) {
    dst = j[key].get<std::string>();
  } else if (j[key].is_number_integer()) {
    dst = std::to_string(j[key].get<long>());
  } else {
    throw ConfigError(std::string("config key '") + key + "' must be an exact scalar string");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  take(j, "scenario", c.scenario);
  take(j, "order", c.order);
  if (j.contains("d")) {
    long d = 0;
    take(j, "d", d);
    c.radicand = d;
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    take(t, "int", c.int_tol);
    take(t, "loc", c.loc_tol);
    take(t, "cycle", c.cycle_tol);
  }
  if (j.contains("experiment")) {
    const auto& e = j["experiment"];
    take(e, "unfold", c.unfold);
    take_scalar_text(e, "eps1", c.eps1);
    take_scalar_text(e, "eps2", c.eps2);
    take_scalar_text(e, "eps3", c.eps3);
    take(e, "max_retries", c.max_retries);
    if (e.contains("eps3_sign")) {
      int s = 0;
      take(e, "eps3_sign", s);
      c.eps3_sign = s;
    }
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    take(g, "n", c.grid_n);
    take(g, "r_min", c.r_min);
    take(g, "r_max", c.r_max);
  }
  take(j, "output", c.out_dir);
  if (j.contains("bbox")) c.bbox = numbers<4>(j["bbox"], "bbox");
  if (j.contains("simulate")) {
    const auto& s = j["simulate"];
    if (s.contains("start")) c.start = numbers<2>(s["start"], "simulate.start");
    if (s.contains("time")) {
      double t = 0.0;
      take(s, "time", t);
      c.time = t;
    }
  }
  if (j.contains("seeds")) {
    for (const auto& p : j["seeds"]) c.seeds.push_back(numbers<2>(p, "seeds"));
  }
  take(j, "corrupt", c.corrupt);
  if (j.contains("system")) c.inline_system = inline_system(j["system"]);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c) {
  if (!(c.int_tol > 0.0) || !(c.loc_tol > 0.0) || !(c.cycle_tol > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (c.order < 2 || c.order > algebra::kMaxOrder) {
    throw ConfigError("order K must lie in 2.." + std::to_string(algebra::kMaxOrder));
  }
  if (c.unfold < 0 || c.unfold > 3) throw ConfigError("--unfold takes 0..3 stages");
  if (c.grid_n < 2 || !(c.r_min > 0.0) || !(c.r_max > c.r_min)) throw ConfigError("cycle grid is empty");
  if (c.max_retries < 0) throw ConfigError("max_retries must be non-negative");
  if (c.bbox) {
    const auto& b = *c.bbox;
    if (!(b[1] > b[0]) || !(b[3] > b[2])) throw ConfigError("bbox needs x0 < x1 and y0 < y1");
  }
  if (c.time && !std::isfinite(*c.time)) throw ConfigError("time must be finite");
  for (const char* e : {c.eps1.c_str(), c.eps2.c_str(), c.eps3.c_str()}) {
    try {
      ExactScalar v = ExactScalar::parse(e);
      if (v.sign() <= 0) throw ConfigError(std::string("eps magnitudes must be positive: ") + e);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& err) {
      throw ConfigError(std::string("bad eps value '") + e + "': " + err.what());
    }
  }
  if (c.scenario.empty() && !c.inline_system) throw ConfigError("no scenario given (use --scenario or a config)");
}

field::Scenario resolve_scenario(const RunConfig& c) {
  field::Scenario sc;
  if (c.inline_system) {
    sc = *c.inline_system;
  } else {
    try {
      sc = field::make_scenario(c.scenario);
    } catch (const InvalidArgument& e) {
      std::string names;
      for (const auto& n : field::scenario_names()) names += " " + n;
      throw ConfigError(std::string(e.what()) + "; known:" + names);
    }
  }
  if (c.radicand) {
    long d = 0;
    try {
      d = sc.system.radicand();
    } catch (const FieldMismatch& e) {
      throw ConfigError(std::string("field-extension mismatch: ") + e.what());
    }
    if (d != 0 && d != *c.radicand) {
      throw ConfigError("field-extension mismatch: system lives in Q(sqrt(" + std::to_string(d) +
                        ")) but the config declares d = " + std::to_string(*c.radicand));
    }
  }
  if (c.bbox) sc.bbox = *c.bbox;
  if (!c.seeds.empty()) sc.seeds = c.seeds;
  return sc;
}

std::array<double, 4> parse_bbox(const std::string& text) {
  std::array<double, 4> b{};
  std::istringstream in(text);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i >= 4) throw ConfigError("bbox takes four numbers x0,x1,y0,y1");
    try {
      std::size_t pos = 0;
      b[static_cast<std::size_t>(i)] = std::stod(part, &pos);
      if (pos != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError("bad bbox component '" + part + "'");
    }
    ++i;
  }
  if (i != 4) throw ConfigError("bbox takes four numbers x0,x1,y0,y1");
  return b;
}

}  // namespace pwk::cli
