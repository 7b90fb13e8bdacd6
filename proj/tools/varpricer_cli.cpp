/*
   Copyright 2026 The varpricer Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// varpricer command-line tool: prices, maturity sweeps, limit tables and
// validation reports. Talks to the library through the C interface only.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "varpricer/varpricer.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Raised for configuration problems; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for a failing library call; carries the status.
struct LibraryError : std::runtime_error {
  vp_status status;
  LibraryError(vp_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(vp_status s) {
  if (s != VP_OK) throw LibraryError(s, std::string(vp_status_string(s)) + ": " + vp_last_error());
}

int exit_code_for(vp_status s) {
  switch (s) {
    case VP_CONVERGENCE_ERROR: return kExitNumerical;
    case VP_INVALID_ARGUMENT:
    case VP_DOMAIN_ERROR:
    case VP_UNSUPPORTED: return kExitConfig;
    default: return kExitFailure;
  }
}

struct ModelDeleter {
  void operator()(vp_model* m) const { vp_model_free(m); }
};
using ModelPtr = std::unique_ptr<vp_model, ModelDeleter>;

std::string owned(char* s) {
  std::string out(s);
  vp_string_free(s);
  return out;
}

// --model accepts inline JSON or a path to a JSON file.
ModelPtr load_model(const std::string& spec) {
  std::string text = spec;
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ConfigError("empty --model");
  if (spec[first] != '{') {
    std::ifstream in(spec);
    if (!in) throw ConfigError("cannot read model file " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  vp_model* m = nullptr;
  const vp_status s = vp_model_from_json(text.c_str(), &m);
  if (s != VP_OK) throw ConfigError(std::string("model config: ") + vp_last_error());
  return ModelPtr(m);
}

vp_side parse_side(const std::string& s) {
  if (s == "put") return VP_PUT;
  if (s == "call") return VP_CALL;
  throw ConfigError("--side must be put or call");
}

vp_contour parse_contour(const std::string& text) {
  vp_contour c{0.0, 0.0, 0.0, 0};
  if (text.empty()) return c;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("--contour: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("--contour must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (!v.is_number()) throw ConfigError("--contour field " + key + " must be a number");
    if (key == "damping") c.damping = v.get<double>();
    else if (key == "v_max") c.v_max = v.get<double>();
    else if (key == "panel_tol") c.panel_tol = v.get<double>();
    else if (key == "max_panels") c.max_panels = v.get<int>();
    else throw ConfigError("unknown --contour field " + key);
  }
  return c;
}

int sampling_n(const std::string& n_spec, double days) {
  if (n_spec == "daily") return std::max(1, static_cast<int>(std::lround(days)));
  try {
    std::size_t pos = 0;
    const int n = std::stoi(n_spec, &pos);
    if (pos != n_spec.size() || n < 1) throw std::invalid_argument("n");
    return n;
  } catch (const std::exception&) {
    throw ConfigError("--n must be a positive integer or \"daily\"");
  }
}

std::vector<int> parse_days(const std::string& s) {
  std::vector<int> out;
  try {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
      const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
      for (int d = a; d <= b; ++d) out.push_back(d);
    } else {
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    }
  } catch (const std::exception&) {
    throw ConfigError("--days must look like 1..50 or 1,5,10");
  }
  if (out.empty()) throw ConfigError("--days range is empty");
  for (int d : out)
    if (d < 1) throw ConfigError("--days entries must be >= 1");
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      if constexpr (std::is_same_v<T, int>) out.push_back(std::stoi(item));
      else out.push_back(std::stod(item));
    }
  } catch (const std::exception&) {
    throw ConfigError(std::string(flag) + " must be a comma-separated list of numbers");
  }
  if (out.empty()) throw ConfigError(std::string(flag) + " is empty");
  return out;
}

std::vector<std::string> parse_list_strings(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int worker_count() {
  if (const char* env = std::getenv("VARPRICER_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Evaluates body(i) for i in [0, count) on a small pool; results are kept
// by index so output order never depends on scheduling.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto workers = std::min<std::size_t>(worker_count(), count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

struct Common {
  std::string model;
  double year_days = 252.0;
};

struct PriceArgs {
  std::string side = "call";
  double k = 1.0;
  double days = 0.0;
  std::string n = "daily";
  std::string method = "exact";
  std::string contour;
  long paths = 100000;
  std::uint64_t seed = 0;
  std::string out = "json";
};

int cmd_price(const Common& c, const PriceArgs& a) {
  if (a.out != "json") throw ConfigError("price supports --out json only");
  const ModelPtr model = load_model(c.model);
  const vp_side side = parse_side(a.side);
  if (!(a.days > 0.0)) throw ConfigError("--T must be a positive number of days");
  const int n = sampling_n(a.n, a.days);
  vp_method method;
  if (a.method == "exact") method = VP_METHOD_EXACT_RV;
  else if (a.method == "qv") method = VP_METHOD_QV;
  else if (a.method == "corrected") method = VP_METHOD_CORRECTED;
  else if (a.method == "closed-bs") method = VP_METHOD_CLOSED_BS;
  else if (a.method == "mc") method = VP_METHOD_MC;
  else throw ConfigError("--method must be exact, qv, corrected, closed-bs or mc");
  const vp_contour contour = parse_contour(a.contour);
  const vp_mc mc{a.paths, a.seed, 0.0, 0};
  char* json = nullptr;
  check(vp_price_json(model.get(), method, side, a.days / c.year_days, n, a.k, &contour, &mc, &json));
  std::cout << owned(json) << "\n";
  return 0;
}

struct SweepArgs {
  double k = 1.0;
  std::string side = "call";
  std::string days = "1..50";
  std::string sampling = "daily";
  std::string methods = "all";
  std::string mc = "off";
  std::uint64_t seed = 0;
  std::string out = "csv";
};

int cmd_sweep(const Common& c, const SweepArgs& a) {
  if (a.out != "csv") throw ConfigError("sweep supports --out csv only");
  const ModelPtr model = load_model(c.model);
  const vp_side side = parse_side(a.side);
  const std::vector<int> days = parse_days(a.days);
  bool want_exact = false, want_qv = false, want_corr = false, want_limits = false;
  for (const auto& m : parse_list_strings(a.methods)) {
    if (m == "all") want_exact = want_qv = want_corr = want_limits = true;
    else if (m == "exact") want_exact = true;
    else if (m == "qv") want_qv = true;
    else if (m == "corrected") want_corr = true;
    else if (m == "limits") want_limits = true;
    else throw ConfigError("--methods entries must be all, exact, qv, corrected or limits");
  }
  long mc_paths = 0;
  if (a.mc != "off") {
    try {
      mc_paths = std::stol(a.mc);
    } catch (const std::exception&) {
      throw ConfigError("--mc must be off or a path count");
    }
    if (mc_paths < 1) throw ConfigError("--mc path count must be >= 1");
  }

  struct Row {
    std::vector<std::string> cells;
    std::string error;
  };
  std::vector<Row> rows(days.size());
  parallel_for(days.size(), [&](std::size_t i) {
    const int d = days[i];
    const double T = d / c.year_days;
    Row& row = rows[i];
    auto note = [&](const char* what) {
      if (!row.error.empty()) row.error += "; ";
      row.error += std::string(what) + ": " + vp_last_error();
    };
    int n = 1;
    try {
      n = sampling_n(a.sampling, d);
    } catch (const ConfigError& e) {
      row.error = e.what();
    }
    auto price = [&](bool want, vp_method method, const char* label, const vp_mc* mc,
                     double* se) -> std::string {
      if (!want) return "";
      vp_price_result r{};
      if (vp_price(model.get(), method, side, T, n, a.k, nullptr, mc, &r) != VP_OK) {
        note(label);
        return "nan";
      }
      if (se) *se = r.est_error;
      return fmt(r.price);
    };
    auto limit = [&](vp_underlying u, const char* label) -> std::string {
      if (!want_limits) return "";
      double v = 0.0;
      if (vp_limit(model.get(), u, side, a.k, n, &v) != VP_OK) {
        note(label);
        return "nan";
      }
      return fmt(v);
    };
    row.cells.push_back(std::to_string(d));
    row.cells.push_back(std::to_string(n));
    row.cells.push_back(fmt(a.k));
    row.cells.push_back(price(want_exact, VP_METHOD_EXACT_RV, "exact_rv", nullptr, nullptr));
    row.cells.push_back(price(want_qv, VP_METHOD_QV, "qv", nullptr, nullptr));
    row.cells.push_back(price(want_corr, VP_METHOD_CORRECTED, "corrected", nullptr, nullptr));
    row.cells.push_back(limit(VP_UNDERLYING_RV, "limit_rv"));
    row.cells.push_back(limit(VP_UNDERLYING_QV, "limit_qv"));
    if (mc_paths > 0) {
      // One worker per row already; keep each simulation single threaded.
      const vp_mc mc{mc_paths, a.seed, 0.0, 1};
      double se = std::nan("");
      row.cells.push_back(price(true, VP_METHOD_MC, "mc", &mc, &se));
      row.cells.push_back(fmt(se));
    } else {
      row.cells.push_back("");
      row.cells.push_back("");
    }
  });

  std::cout << "# varpricer-sweep v1\n"
            << "maturity_days,n,k,price_exact_rv,price_qv,price_corrected,limit_rv,limit_qv,"
               "mc_price,mc_se,error\n";
  bool any_error = false;
  for (const auto& row : rows) {
    for (const auto& cell : row.cells) std::cout << cell << ",";
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    if (!err.empty()) {
      any_error = true;
      std::cout << '"' << err << '"';
    }
    std::cout << "\n";
  }
  return any_error ? kExitNumerical : 0;
}

struct LimitsArgs {
  std::string k_grid = "0.8,0.9,1,1.1,1.2";
  std::string n_grid = "1,2,5,10,21,63,252";
  std::string side = "call";
  std::string out = "csv";
};

int cmd_limits(const Common& c, const LimitsArgs& a) {
  if (a.out != "csv") throw ConfigError("limits supports --out csv only");
  const ModelPtr model = load_model(c.model);
  const auto ks = parse_list<double>(a.k_grid, "--k-grid");
  const auto ns = parse_list<int>(a.n_grid, "--n-grid");
  double s2 = 0.0, v2 = 0.0;
  check(vp_model_moments(model.get(), &s2, &v2, nullptr));
  const double r = s2 > 0.0 ? v2 / s2 : INFINITY;
  std::cout << "# varpricer-limits v1\n"
            << "k,n,limit_put_qv,limit_call_qv,limit_put_rv,limit_call_rv,q,r,gap\n";
  for (double k : ks) {
    for (int n : ns) {
      double pq, cq, pr, cr, q, rr, gap;
      check(vp_limit(model.get(), VP_UNDERLYING_QV, VP_PUT, k, n, &pq));
      check(vp_limit(model.get(), VP_UNDERLYING_QV, VP_CALL, k, n, &cq));
      check(vp_limit(model.get(), VP_UNDERLYING_RV, VP_PUT, k, n, &pr));
      check(vp_limit(model.get(), VP_UNDERLYING_RV, VP_CALL, k, n, &cr));
      check(vp_q_fn(k, n, r, &q));
      check(vp_r_fn(k, n, r, &rr));
      check(vp_discretization_gap(model.get(), k, n, &gap));
      std::cout << fmt(k) << "," << n << "," << fmt(pq) << "," << fmt(cq) << "," << fmt(pr) << ","
                << fmt(cr) << "," << fmt(q) << "," << fmt(rr) << "," << fmt(gap) << "\n";
    }
  }
  return 0;
}

struct ValidateArgs {
  std::string suite = "all";
  long paths = 100000;
  std::uint64_t seed = 0;
};

int cmd_validate(const Common& c, const ValidateArgs& a) {
  const ModelPtr model = load_model(c.model);
  vp_suite suite;
  if (a.suite == "transforms") suite = VP_SUITE_TRANSFORMS;
  else if (a.suite == "prices") suite = VP_SUITE_PRICES;
  else if (a.suite == "limits") suite = VP_SUITE_LIMITS;
  else if (a.suite == "all") suite = VP_SUITE_ALL;
  else throw ConfigError("--suite must be transforms, prices, limits or all");
  if (a.paths < 0) throw ConfigError("--paths must be >= 0");
  int passed = 0;
  char* report = nullptr;
  check(vp_validate(model.get(), suite, a.paths, a.seed, &passed, &report));
  std::cout << owned(report) << "\n";
  return passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prices options on realized variance and quadratic variation under Levy models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vp_version()));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", common.model, "Model config: inline JSON or a JSON file")->required();
    sub->add_option("--year-days", common.year_days, "Trading days per year")
        ->check(CLI::PositiveNumber);
  };

  PriceArgs pa;
  auto* price = app.add_subcommand("price", "Price one option and print a JSON result");
  add_common(price);
  price->add_option("--side", pa.side, "put or call");
  price->add_option("--k", pa.k, "Strike relative to the swap rate");
  price->add_option("--T", pa.days, "Maturity in days")->required();
  price->add_option("--n", pa.n, "Sampling dates, or daily");
  price->add_option("--method", pa.method, "exact, qv, corrected, closed-bs or mc");
  price->add_option("--contour", pa.contour, "JSON overrides: damping, v_max, panel_tol, max_panels");
  price->add_option("--paths", pa.paths, "Monte Carlo paths for --method mc");
  price->add_option("--seed", pa.seed, "Monte Carlo seed");
  price->add_option("--out", pa.out, "Output format (json)");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Price a maturity sweep and print CSV");
  add_common(sweep);
  sweep->add_option("--k", sa.k, "Strike relative to the swap rate");
  sweep->add_option("--side", sa.side, "put or call");
  sweep->add_option("--days", sa.days, "Maturities in days, e.g. 1..50 or 1,5,10");
  sweep->add_option("--sampling", sa.sampling, "daily or a fixed number of sampling dates");
  sweep->add_option("--methods", sa.methods, "all, or a list of exact,qv,corrected,limits");
  sweep->add_option("--mc", sa.mc, "off, or Monte Carlo paths per maturity");
  sweep->add_option("--seed", sa.seed, "Monte Carlo seed");
  sweep->add_option("--out", sa.out, "Output format (csv)");

  LimitsArgs la;
  auto* limits = app.add_subcommand("limits", "Tabulate small-maturity limits and gaps as CSV");
  add_common(limits);
  limits->add_option("--k-grid", la.k_grid, "Relative strikes, comma separated");
  limits->add_option("--n-grid", la.n_grid, "Sampling counts, comma separated");
  limits->add_option("--out", la.out, "Output format (csv)");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Run property checks and print a JSON report");
  add_common(validate);
  validate->add_option("--suite", va.suite, "transforms, prices, limits or all");
  validate->add_option("--paths", va.paths, "Monte Carlo paths (0 skips Monte Carlo checks)");
  validate->add_option("--seed", va.seed, "Monte Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*price) return cmd_price(common, pa);
    if (*sweep) return cmd_sweep(common, sa);
    if (*limits) return cmd_limits(common, la);
    if (*validate) return cmd_validate(common, va);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
