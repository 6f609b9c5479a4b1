// SPDX-License-Identifier: MIT
#include "gpband/bench/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gpband::bench {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad_key(const std::string& context, const std::string& key,
                          const std::string& why) {
  throw std::invalid_argument("config error at \"" + context + "." + key + "\": " + why);
}

void check_keys(const json& j, const std::string& context, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw std::invalid_argument("config error: \"" + context + "\" must be an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) bad_key(context, item.key(), "unknown key");
}

template <typename T>
T get_field(const json& j, const std::string& context, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_key(context, key, e.what());
  }
}

template <typename T>
T get_required(const json& j, const std::string& context, const std::string& key) {
  if (!j.contains(key)) bad_key(context, key, "missing required key");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_key(context, key, e.what());
  }
}

KernelSpec parse_kernel(const json& j, const std::string& context) {
  check_keys(j, context,
             {"family", "dims", "lengthscale", "variance", "c1", "c2", "offset", "parts"});
  KernelSpec k;
  k.family = get_required<std::string>(j, context, "family");
  static const std::set<std::string> families{"se",       "matern12", "matern32", "matern52",
                                              "rq",       "triangle", "product",  "sum"};
  if (!families.count(k.family))
    bad_key(context, "family", "unknown family \"" + k.family + "\"");
  k.dims = get_field<std::size_t>(j, context, "dims", 1);
  k.lengthscale = get_field<double>(j, context, "lengthscale", 1.0);
  k.variance = get_field<double>(j, context, "variance", 1.0);
  k.c1 = get_field<double>(j, context, "c1", 1.0);
  k.c2 = get_field<double>(j, context, "c2", 1.0);
  k.offset = get_field<std::size_t>(j, context, "offset", 0);
  if (j.contains("parts")) {
    if (!j.at("parts").is_array()) bad_key(context, "parts", "must be an array");
    std::size_t i = 0;
    for (const auto& part : j.at("parts"))
      k.parts.push_back(parse_kernel(part, context + ".parts[" + std::to_string(i++) + "]"));
  }
  return k;
}

json kernel_to_json(const KernelSpec& k) {
  json j;
  j["family"] = k.family;
  j["dims"] = k.dims;
  j["lengthscale"] = k.lengthscale;
  j["variance"] = k.variance;
  j["c1"] = k.c1;
  j["c2"] = k.c2;
  j["offset"] = k.offset;
  if (!k.parts.empty()) {
    j["parts"] = json::array();
    for (const auto& p : k.parts) j["parts"].push_back(kernel_to_json(p));
  }
  return j;
}

EnvSpec parse_env(const json& j) {
  check_keys(j, "environment",
             {"kind", "kernel", "lower", "upper", "sigma", "grid_res", "delta", "toy_budget",
              "context_dims"});
  EnvSpec e;
  e.kind = get_required<std::string>(j, "environment", "kind");
  if (e.kind != "grid_gp" && e.kind != "contextual_gp" && e.kind != "toy1" && e.kind != "toy2")
    bad_key("environment", "kind", "must be grid_gp, contextual_gp, toy1 or toy2");
  if (j.contains("kernel")) e.kernel = parse_kernel(j.at("kernel"), "environment.kernel");
  else if (e.kind == "grid_gp" || e.kind == "contextual_gp")
    bad_key("environment", "kernel", "missing required key");
  e.lower = get_field<std::vector<double>>(j, "environment", "lower", {0.0});
  e.upper = get_field<std::vector<double>>(j, "environment", "upper", {1.0});
  if (e.lower.size() != e.upper.size()) bad_key("environment", "upper", "length mismatch with lower");
  e.sigma = get_field<double>(j, "environment", "sigma", 0.1);
  e.grid_res = get_field<std::size_t>(j, "environment", "grid_res", 256);
  e.delta = get_field<double>(j, "environment", "delta", 0.05);
  e.toy_budget = get_field<std::size_t>(j, "environment", "toy_budget", 10);
  e.context_dims = get_field<std::size_t>(j, "environment", "context_dims", 0);
  if (e.kind == "contextual_gp" &&
      (e.context_dims == 0 || e.context_dims >= e.lower.size()))
    bad_key("environment", "context_dims",
            "must split the domain into nonempty context and action axes");
  return e;
}

json env_to_json(const EnvSpec& e) {
  json j;
  j["kind"] = e.kind;
  j["kernel"] = kernel_to_json(e.kernel);
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["sigma"] = e.sigma;
  j["grid_res"] = e.grid_res;
  j["delta"] = e.delta;
  j["toy_budget"] = e.toy_budget;
  j["context_dims"] = e.context_dims;
  return j;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config error: not valid JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"algorithm", "budget", "n0", "seeds", "u", "theory_scale", "n_split",
              "baseline_grid_res", "environment", "output"});
  ExperimentConfig c;
  c.algorithm = get_required<std::string>(j, "config", "algorithm");
  static const std::set<std::string> algos{"tree", "zoom", "contextual",
                                           "gp_ucb", "random", "toy2_oracle"};
  if (!algos.count(c.algorithm))
    bad_key("config", "algorithm",
            "must be tree, zoom, contextual, gp_ucb, random or toy2_oracle");
  c.budget = get_required<std::size_t>(j, "config", "budget");
  c.n0 = get_field<std::size_t>(j, "config", "n0", 0);
  c.seeds = get_field<std::vector<std::uint64_t>>(j, "config", "seeds", {1});
  if (c.seeds.empty()) bad_key("config", "seeds", "must list at least one seed");
  c.u = get_field<double>(j, "config", "u", 2.0);
  c.theory_scale = get_field<double>(j, "config", "theory_scale", 1.0);
  c.n_split = get_field<unsigned>(j, "config", "n_split", 3);
  c.baseline_grid_res = get_field<std::size_t>(j, "config", "baseline_grid_res", 256);
  if (!j.contains("environment")) bad_key("config", "environment", "missing required key");
  c.env = parse_env(j.at("environment"));
  c.output = get_field<std::string>(j, "config", "output", "out");
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config error: cannot open file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& c) {
  // nlohmann::json (non-ordered) sorts object keys, giving a canonical form.
  nlohmann::json j;
  j["algorithm"] = c.algorithm;
  j["budget"] = c.budget;
  j["n0"] = c.n0;
  j["seeds"] = c.seeds;
  j["u"] = c.u;
  j["theory_scale"] = c.theory_scale;
  j["n_split"] = c.n_split;
  j["baseline_grid_res"] = c.baseline_grid_res;
  j["environment"] = nlohmann::json::parse(env_to_json(c.env).dump());
  j["output"] = c.output;
  return j.dump(2);
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string s = dump_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

Kernel build_kernel(const KernelSpec& k) {
  if (k.family == "product" || k.family == "sum") {
    if (k.parts.size() < 2)
      throw std::invalid_argument("config error: composite kernels need at least two parts");
    Kernel acc = build_kernel(k.parts[0]);
    for (std::size_t i = 1; i < k.parts.size(); ++i) {
      Kernel next = build_kernel(k.parts[i]);
      acc = k.family == "product" ? Kernel::product(acc, next) : Kernel::sum(acc, next);
    }
    return acc;
  }
  if (k.family == "se") return Kernel::squared_exp(k.dims, k.lengthscale, k.variance, k.offset);
  if (k.family == "matern12") return Kernel::matern12(k.dims, k.lengthscale, k.variance, k.offset);
  if (k.family == "matern32") return Kernel::matern32(k.dims, k.lengthscale, k.variance, k.offset);
  if (k.family == "matern52") return Kernel::matern52(k.dims, k.lengthscale, k.variance, k.offset);
  if (k.family == "rq")
    return Kernel::rational_quadratic(k.dims, k.lengthscale, k.variance, k.c1, k.c2, k.offset);
  if (k.family == "triangle") return Kernel::triangle(k.dims, k.lengthscale, k.variance, k.offset);
  throw std::invalid_argument("config error at \"kernel.family\": unknown family \"" + k.family +
                              "\"");
}

}  // namespace gpband::bench
