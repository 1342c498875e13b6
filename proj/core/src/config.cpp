#include "nematic/config.hpp"

#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nematic {

using json = nlohmann::json;

SimParams RunConfig::to_sim_params() const {
  SimParams p;
  p.nu = nu;
  p.lambda = lambda;
  p.gamma = gamma;
  p.eps = eps;
  p.k = k;
  p.T = T;
  p.S = S;
  p.lin_tol = lin_tol;
  p.delta1 = delta1;
  p.delta2 = delta2;
  p.delta3 = delta3;
  p.h4_mode = (h4_mode == "fail") ? H4Mode::Fail : H4Mode::Warn;
  return p;
}

void RunConfig::validate() const {
  if (!(x1 > x0)) throw std::invalid_argument("config: x1 must exceed x0");
  if (!(y1 > y0)) throw std::invalid_argument("config: y1 must exceed y0");
  if (nx < 1) throw std::invalid_argument("config: nx must be at least 1");
  if (ny < 1) throw std::invalid_argument("config: ny must be at least 1");
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("config: ") + name +
                                  " must be positive");
  };
  positive(nu, "nu");
  positive(lambda, "lambda");
  positive(gamma, "gamma");
  positive(eps, "eps");
  positive(k, "k");
  positive(T, "T");
  positive(S, "S");
  positive(lin_tol, "lin_tol");
  positive(delta1, "delta1");
  positive(delta2, "delta2");
  positive(delta3, "delta3");
  if (k > T) throw std::invalid_argument("config: k must not exceed T");
  if (h4_mode != "warn" && h4_mode != "fail")
    throw std::invalid_argument("config: h4_mode must be \"warn\" or \"fail\"");
  if (experiment != "annihilation" && experiment != "convergence" &&
      experiment != "stability")
    throw std::invalid_argument("config: unknown experiment \"" + experiment + "\"");
  if (output_dir.empty())
    throw std::invalid_argument("config: output_dir must be nonempty");
  for (double t : snapshot_times)
    if (!(t >= 0.0))
      throw std::invalid_argument("config: snapshot_times must be nonnegative");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: root must be an object");

  static const std::set<std::string> known = {
      "x0", "x1", "y0", "y1", "nx", "ny", "nu", "lambda", "gamma",
      "eps", "k", "T", "S", "lin_tol", "delta1", "delta2", "delta3",
      "h4_mode", "experiment", "output_dir", "snapshot_times", "seed"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("config: unknown key \"" + it.key() + "\"");

  RunConfig c;
  auto num = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number())
      throw std::invalid_argument(std::string("config: \"") + key +
                                  "\" must be a number");
    out = j[key].get<double>();
  };
  auto integer = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer())
      throw std::invalid_argument(std::string("config: \"") + key +
                                  "\" must be an integer");
    out = j[key].get<int>();
  };
  auto str = [&](const char* key, std::string& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_string())
      throw std::invalid_argument(std::string("config: \"") + key +
                                  "\" must be a string");
    out = j[key].get<std::string>();
  };

  num("x0", c.x0);
  num("x1", c.x1);
  num("y0", c.y0);
  num("y1", c.y1);
  integer("nx", c.nx);
  integer("ny", c.ny);
  num("nu", c.nu);
  num("lambda", c.lambda);
  num("gamma", c.gamma);
  num("eps", c.eps);
  num("k", c.k);
  num("T", c.T);
  num("S", c.S);
  num("lin_tol", c.lin_tol);
  num("delta1", c.delta1);
  num("delta2", c.delta2);
  num("delta3", c.delta3);
  str("h4_mode", c.h4_mode);
  str("experiment", c.experiment);
  str("output_dir", c.output_dir);
  if (j.contains("snapshot_times")) {
    if (!j["snapshot_times"].is_array())
      throw std::invalid_argument("config: \"snapshot_times\" must be an array");
    c.snapshot_times.clear();
    for (const auto& v : j["snapshot_times"]) {
      if (!v.is_number())
        throw std::invalid_argument(
            "config: \"snapshot_times\" entries must be numbers");
      c.snapshot_times.push_back(v.get<double>());
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw std::invalid_argument("config: \"seed\" must be a nonnegative integer");
    c.seed = j["seed"].get<unsigned>();
  }

  c.validate();
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["x0"] = c.x0;
  j["x1"] = c.x1;
  j["y0"] = c.y0;
  j["y1"] = c.y1;
  j["nx"] = c.nx;
  j["ny"] = c.ny;
  j["nu"] = c.nu;
  j["lambda"] = c.lambda;
  j["gamma"] = c.gamma;
  j["eps"] = c.eps;
  j["k"] = c.k;
  j["T"] = c.T;
  j["S"] = c.S;
  j["lin_tol"] = c.lin_tol;
  j["delta1"] = c.delta1;
  j["delta2"] = c.delta2;
  j["delta3"] = c.delta3;
  j["h4_mode"] = c.h4_mode;
  j["experiment"] = c.experiment;
  j["output_dir"] = c.output_dir;
  j["snapshot_times"] = c.snapshot_times;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

RunConfig default_convergence_config() {
  RunConfig c;
  c.x0 = 0.0;
  c.x1 = 1.0;
  c.y0 = -0.5;
  c.y1 = 0.5;
  c.nx = 20;
  c.ny = 20;
  c.k = 1e-3;
  c.T = 0.016;
  c.experiment = "convergence";
  c.snapshot_times = {};
  return c;
}

RunConfig default_stability_config() {
  RunConfig c;
  c.experiment = "stability";
  c.snapshot_times = {};
  return c;
}

}  // namespace nematic
