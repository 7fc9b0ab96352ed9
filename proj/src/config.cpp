#include "cdsxva/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cdsxva/clean_cds.hpp"
#include "cdsxva/errors.hpp"

namespace cdsxva {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path, message);
}

std::string join(const std::string& base, const char* key) {
  return base.empty() ? key : base + "." + key;
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& known) {
  for (const auto& item : obj.items()) {
    if (!known.contains(item.key())) {
      fail(join(path, item.key().c_str()), "unknown key");
    }
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_or(const json& obj, const char* key, const std::string& base,
                 double dflt) {
  const auto it = obj.find(key);
  return it == obj.end() ? dflt : as_number(*it, join(base, key));
}

int integer_or(const json& obj, const char* key, const std::string& base,
               int dflt) {
  const auto it = obj.find(key);
  if (it == obj.end()) return dflt;
  const std::string path = join(base, key);
  if (!it->is_number_integer()) fail(path, "expected an integer");
  return it->get<int>();
}

// Threshold value: a number or the token "unbounded".
double threshold_value(const json& j, const std::string& path, double unbounded) {
  if (j.is_string()) {
    if (j.get<std::string>() == "unbounded") return unbounded;
    fail(path, "expected a number or \"unbounded\"");
  }
  return as_number(j, path);
}

CirParams parse_factor(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "low") return regime_params(FactorRegime::kLow);
    if (name == "medium") return regime_params(FactorRegime::kMedium);
    if (name == "high") return regime_params(FactorRegime::kHigh);
    fail(path, "expected \"low\", \"medium\", \"high\" or a parameter object");
  }
  require_object(j, path);
  reject_unknown_keys(j, path, {"zeta", "mu", "sigma", "x0"});
  CirParams p;
  p.zeta = number_or(j, "zeta", path, 0.0);
  p.mu = number_or(j, "mu", path, 0.0);
  p.sigma = number_or(j, "sigma", path, 0.0);
  p.x0 = number_or(j, "x0", path, 0.0);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return p;
}

template <std::size_t N>
std::array<double, N> parse_fixed_array(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != N) {
    fail(path, "expected an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = as_number(j[i], path);
  return out;
}

}  // namespace

std::vector<CaseRow> default_case_table() {
  const double inf = std::numeric_limits<double>::infinity();
  return {
      {"A", inf, -inf},
      {"B", 1.5e-3, -0.4e-3},
      {"C", 1.0e-3, -0.2e-3},
      {"D", 0.5e-3, -0.1e-3},
      {"E", 0.25e-3, -0.05e-3},
      {"F", 0.0, 0.0},
  };
}

RunConfig parse_run_config(const std::string& json_text,
                           const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "");
  reject_unknown_keys(root, "",
                      {"seed", "paths", "grid_step", "quad_step", "bucket_width",
                       "contract", "factors", "shocks", "margin", "forward_cva",
                       "cases"});

  RunConfig cfg;
  EngineConfig& eng = cfg.engine;

  // Seed: mandatory, possibly supplied by an override.
  if (overrides.seed) {
    eng.seed = *overrides.seed;
  } else if (const auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    eng.seed = it->get<std::uint64_t>();
  } else {
    fail("seed", "required: every reported number must be reproducible");
  }

  eng.n_paths = overrides.paths ? *overrides.paths
                                : integer_or(root, "paths", "", 10000);
  if (eng.n_paths < 1) fail("paths", "must be >= 1");

  const double grid_step =
      overrides.grid_step ? *overrides.grid_step
                          : number_or(root, "grid_step", "", 1.0 / 250.0);
  if (!(grid_step > 0.0)) fail("grid_step", "must be > 0");
  eng.quad_step = number_or(root, "quad_step", "", kDefaultQuadStep);
  if (!(eng.quad_step > 0.0)) fail("quad_step", "must be > 0");
  eng.bucket_width = number_or(root, "bucket_width", "", 1.0 / 12.0);
  if (!(eng.bucket_width > 0.0)) fail("bucket_width", "must be > 0");

  // Contract.
  bool spread_is_fair = true;
  {
    json empty = json::object();
    const json& c = root.contains("contract")
                        ? require_object(root["contract"], "contract")
                        : empty;
    reject_unknown_keys(c, "contract",
                        {"maturity", "spread", "lgd", "recovery_cpty",
                         "recovery_inv", "rate"});
    eng.contract.maturity = number_or(c, "maturity", "contract", 5.0);
    eng.contract.lgd = number_or(c, "lgd", "contract", 0.6);
    eng.contract.recovery_cpty = number_or(c, "recovery_cpty", "contract", 0.4);
    eng.contract.recovery_inv = number_or(c, "recovery_inv", "contract", 0.4);
    eng.contract.rate = number_or(c, "rate", "contract", 0.0);
    if (const auto it = c.find("spread"); it != c.end()) {
      if (it->is_string()) {
        if (it->get<std::string>() != "fair") {
          fail("contract.spread", "expected a number or \"fair\"");
        }
      } else {
        eng.contract.spread = as_number(*it, "contract.spread");
        spread_is_fair = false;
      }
    }
    eng.contract.spread = spread_is_fair ? 0.0 : eng.contract.spread;
    try {
      eng.contract.validate();
    } catch (const std::invalid_argument& e) {
      fail("contract", e.what());
    }
  }

  // Factors.
  {
    json empty = json::object();
    const json& f = root.contains("factors")
                        ? require_object(root["factors"], "factors")
                        : empty;
    reject_unknown_keys(f, "factors", {"reference", "counterparty", "investor"});
    const char* names[3] = {"reference", "counterparty", "investor"};
    for (int i = 0; i < 3; ++i) {
      const auto it = f.find(names[i]);
      eng.factors[i] = it == f.end()
                           ? regime_params(FactorRegime::kHigh)
                           : parse_factor(*it, join("factors", names[i]));
    }
  }

  // Shock structure.
  {
    json empty = json::object();
    const json& s = root.contains("shocks")
                        ? require_object(root["shocks"], "shocks")
                        : empty;
    reject_unknown_keys(s, "shocks", {"a", "c"});
    if (const auto it = s.find("a"); it != s.end()) {
      eng.shocks.a = parse_fixed_array<3>(*it, "shocks.a");
    }
    if (const auto it = s.find("c"); it != s.end()) {
      eng.shocks.c = parse_fixed_array<4>(*it, "shocks.c");
    }
    eng.shocks.validate();  // throws ConfigError with its own path
  }

  eng.grid = TimeGrid::with_step(0.0, eng.contract.maturity, grid_step);

  // Margin agreement.
  {
    json empty = json::object();
    const json& m = root.contains("margin")
                        ? require_object(root["margin"], "margin")
                        : empty;
    reject_unknown_keys(m, "margin",
                        {"gamma_cpty", "gamma_inv", "mta", "margin_period",
                         "haircut", "call_schedule"});
    const double inf = std::numeric_limits<double>::infinity();
    eng.margin.gamma_cpty =
        m.contains("gamma_cpty")
            ? threshold_value(m["gamma_cpty"], "margin.gamma_cpty", inf)
            : inf;
    eng.margin.gamma_inv =
        m.contains("gamma_inv")
            ? threshold_value(m["gamma_inv"], "margin.gamma_inv", -inf)
            : -inf;
    eng.margin.mta = number_or(m, "mta", "margin", 0.0);
    eng.margin.delta = number_or(m, "margin_period", "margin", 0.0);
    eng.margin.haircut = number_or(m, "haircut", "margin", 0.0);

    // Call schedule: "grid" puts a call on every interior grid node; a number
    // is a call spacing in years, snapped to grid nodes.
    int stride = 1;
    if (const auto it = m.find("call_schedule"); it != m.end()) {
      if (it->is_string()) {
        if (it->get<std::string>() != "grid") {
          fail("margin.call_schedule", "expected \"grid\" or a spacing in years");
        }
      } else {
        const double spacing = as_number(*it, "margin.call_schedule");
        if (!(spacing > 0.0)) fail("margin.call_schedule", "must be > 0");
        stride = std::max(
            1, static_cast<int>(std::llround(spacing / eng.grid.step())));
      }
    }
    eng.margin.call_times.clear();
    for (int k = stride; k < eng.grid.n_steps(); k += stride) {
      eng.margin.call_times.push_back(eng.grid.node(k));
    }
    eng.margin.validate(eng.contract.maturity);
  }

  // Forward CVA parameters.
  {
    json empty = json::object();
    const json& f = root.contains("forward_cva")
                        ? require_object(root["forward_cva"], "forward_cva")
                        : empty;
    reject_unknown_keys(f, "forward_cva",
                        {"outer_paths", "inner_paths", "observation_step"});
    eng.forward.outer_paths = integer_or(f, "outer_paths", "forward_cva", 2000);
    eng.forward.inner_paths = integer_or(f, "inner_paths", "forward_cva", 500);
    eng.forward.observation_step =
        number_or(f, "observation_step", "forward_cva", 0.25);
    if (eng.forward.outer_paths < 1) fail("forward_cva.outer_paths", "must be >= 1");
    if (eng.forward.inner_paths < 1) fail("forward_cva.inner_paths", "must be >= 1");
    if (!(eng.forward.observation_step > 0.0)) {
      fail("forward_cva.observation_step", "must be > 0");
    }
  }

  // Collateralization cases.
  if (const auto it = root.find("cases"); it != root.end()) {
    if (!it->is_array() || it->empty()) fail("cases", "expected a nonempty array");
    cfg.cases.clear();
    int index = 0;
    for (const json& row : *it) {
      const std::string path = "cases[" + std::to_string(index++) + "]";
      require_object(row, path);
      reject_unknown_keys(row, path, {"label", "gamma_cpty", "gamma_inv"});
      CaseRow out;
      const auto label = row.find("label");
      if (label == row.end() || !label->is_string()) {
        fail(join(path, "label"), "expected a string");
      }
      out.label = label->get<std::string>();
      if (!row.contains("gamma_cpty") || !row.contains("gamma_inv")) {
        fail(path, "needs gamma_cpty and gamma_inv");
      }
      out.gamma_cpty =
          threshold_value(row["gamma_cpty"], join(path, "gamma_cpty"),
                          std::numeric_limits<double>::infinity());
      out.gamma_inv =
          threshold_value(row["gamma_inv"], join(path, "gamma_inv"),
                          -std::numeric_limits<double>::infinity());
      if (!(out.gamma_cpty >= 0.0)) fail(join(path, "gamma_cpty"), "must be >= 0");
      if (!(out.gamma_inv <= 0.0)) fail(join(path, "gamma_inv"), "must be <= 0");
      cfg.cases.push_back(std::move(out));
    }
  }

  // Resolve the fair spread once everything else is known.
  if (spread_is_fair) {
    const CleanCurve curve(eng.factors[0], eng.shocks.a[0], 0.0,
                           eng.factors[0].x0, eng.contract.maturity,
                           eng.contract.rate, eng.quad_step);
    eng.contract.spread = fair_spread(curve, eng.contract);
  }
  cfg.spread_is_fair = spread_is_fair;
  return cfg;
}

RunConfig load_run_config(const std::string& file_path,
                          const ConfigOverrides& overrides) {
  std::ifstream in(file_path);
  if (!in) fail("", "cannot open config file: " + file_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), overrides);
}

}  // namespace cdsxva
