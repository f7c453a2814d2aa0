// Command-line front end; talks to the library exclusively through its C API.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hazmon.h"

namespace {

constexpr int kExitError = 2;

[[noreturn]] void fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitError);
}

void check(hazmon_status status) {
  if (status != HAZMON_OK) fail(hazmon_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  out << content;
}

// One observation per line; '#' starts a comment.
std::vector<double> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        values.push_back(v);
      } catch (const std::exception&) {
        fail(path + ":" + std::to_string(lineno) + ": not a number: " + token);
      }
    }
  }
  if (values.size() < 2) fail("need at least 2 observations");
  return values;
}

// %.5f with trailing zeros trimmed, keeping at least one decimal digit.
std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", v);
  std::string s = buf;
  const auto dot = s.find('.');
  auto last = s.find_last_not_of('0');
  if (last == dot) ++last;
  return s.substr(0, last + 1);
}

std::string config_key(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  const auto eq = body.find('=');
  if (eq == std::string::npos) return "";
  const auto a = body.find_first_not_of(" \t");
  const auto b = body.find_last_not_of(" \t", eq - 1);
  if (a == std::string::npos || a > b) return "";
  return body.substr(a, b - a + 1);
}

// Drops lines whose key is overridden, then appends the overrides.
std::string apply_overrides(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string key = config_key(line);
    bool drop = false;
    for (const auto& [k, v] : overrides) drop = drop || key == k;
    if (!drop) out << line << "\n";
  }
  for (const auto& [k, v] : overrides) out << k << " = " << v << "\n";
  return out.str();
}

int run_self_check();

struct TestOptions {
  std::string data_path;
  double a = 0.0;
  double b = -1.0;
  double quantile = -1.0;
  std::string method = "tn_smoothed";
  hazmon_test_config cfg;
  bool desk = false;
};

int cmd_test(const TestOptions& opt) {
  const std::vector<double> data = read_observations(opt.data_path);
  if (opt.a != 0.0)
    fail("the bootstrap calibration anchors the interval at 0; --a must be 0");
  if (opt.b > 0.0 && opt.quantile > 0.0)
    fail("give either --b or --quantile, not both");

  double hi = opt.b;
  if (hi <= 0.0) {
    const double q = opt.quantile > 0.0 ? opt.quantile : 0.95;
    check(hazmon_empirical_quantile(data.data(), data.size(), q, &hi));
  }

  hazmon_test_config cfg = opt.cfg;
  if (opt.desk && cfg.bootstrap_b == 2000) cfg.bootstrap_b = 500;
  if (opt.method == "tn_smoothed")
    cfg.method = HAZMON_METHOD_TN_SMOOTHED;
  else if (opt.method == "tn_naive")
    cfg.method = HAZMON_METHOD_TN_NAIVE;
  else if (opt.method == "durot_sup")
    cfg.method = HAZMON_METHOD_DUROT_SUP;
  else if (opt.method == "durot_tn")
    cfg.method = HAZMON_METHOD_DUROT_TN;
  else
    fail("unknown method: " + opt.method);

  hazmon_outcome* outcome = nullptr;
  check(hazmon_run_test(data.data(), data.size(), hi, &cfg, &outcome));
  const int32_t ties = hazmon_outcome_tie_adjustments(outcome);
  if (ties > 0)
    std::cerr << "warning: " << ties
              << " tied observation(s) perturbed deterministically\n";
  char* json = nullptr;
  check(hazmon_outcome_json(outcome, &json));
  std::cout << json << "\n";
  hazmon_free_string(json);
  const int exit_code = hazmon_outcome_reject(outcome) ? 1 : 0;
  hazmon_outcome_free(outcome);
  return exit_code;
}

struct SimulateOptions {
  std::string config_path;
  std::string out_prefix = "study";
  bool paper_scale = false;
  int threads = -1;
  std::uint64_t seed = 0;
  bool have_seed = false;
};

int cmd_simulate(const SimulateOptions& opt) {
  std::string text = read_file(opt.config_path);

  std::string reference_file;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (config_key(line) == "reference_file") {
        const auto eq = line.find('=');
        std::string v = line.substr(eq + 1, line.find('#') - eq - 1);
        const auto a = v.find_first_not_of(" \t\r");
        const auto b = v.find_last_not_of(" \t\r");
        if (a != std::string::npos) reference_file = v.substr(a, b - a + 1);
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  overrides.emplace_back("progress", "1");
  if (opt.paper_scale) {
    overrides.emplace_back("replicates", "2000");
    overrides.emplace_back("bootstrap", "2000");
  }
  if (opt.threads >= 0)
    overrides.emplace_back("threads", std::to_string(opt.threads));
  if (opt.have_seed)
    overrides.emplace_back("seed", std::to_string(opt.seed));
  text = apply_overrides(text, overrides);

  hazmon_table* table = nullptr;
  check(hazmon_study_run(text.c_str(), &table));

  char* csv = nullptr;
  char* json = nullptr;
  char* plot = nullptr;
  check(hazmon_table_csv(table, &csv));
  check(hazmon_table_json(table, &json));
  check(hazmon_table_plot_csv(table, &plot));
  write_file(opt.out_prefix + ".csv", csv);
  write_file(opt.out_prefix + ".json", json);
  write_file(opt.out_prefix + "_plot.csv", plot);
  hazmon_free_string(csv);
  hazmon_free_string(json);
  hazmon_free_string(plot);
  hazmon_table_free(table);

  if (!reference_file.empty())
    write_file(opt.out_prefix + "_reference.csv", read_file(reference_file));

  std::cerr << "wrote " << opt.out_prefix << ".csv, " << opt.out_prefix
            << ".json, " << opt.out_prefix << "_plot.csv"
            << (reference_file.empty()
                    ? std::string()
                    : ", " + opt.out_prefix + "_reference.csv")
            << "\n";
  return 0;
}

struct FamilyOptions {
  std::string name;
  double d = 0.0;
  bool have_d = false;
  double beta = 0.0, gamma = 0.0, mu = 1.0, sigma = 0.1;
  std::vector<double> quantiles;
  std::vector<double> hazard_at;
  std::vector<double> cdf_at;
  std::vector<double> cumhaz_at;
  bool stationary = false;
};

int cmd_family(const FamilyOptions& opt) {
  hazmon_model* model = nullptr;
  if (opt.name == "d") {
    if (!opt.have_d) fail("the d family needs --d");
    check(hazmon_model_d_family(opt.d, &model));
    if (std::fabs(opt.d) > 1.0)
      std::cerr << "warning: |d| > 1 is outside the validated range\n";
  } else if (opt.name == "bump") {
    check(hazmon_model_bump_family(opt.beta, opt.gamma, opt.mu, opt.sigma,
                                   &model));
  } else {
    fail("unknown family: " + opt.name);
  }

  bool printed = false;
  const auto print_row = [&](const std::vector<double>& xs, auto&& eval) {
    if (xs.empty()) return;
    std::string row;
    for (double x : xs) {
      double v = 0.0;
      check(eval(x, &v));
      if (!row.empty()) row += ",";
      row += format_value(v);
    }
    std::cout << row << "\n";
    printed = true;
  };

  print_row(opt.quantiles,
            [&](double q, double* v) { return hazmon_model_quantile(model, q, v); });
  print_row(opt.hazard_at,
            [&](double x, double* v) { return hazmon_model_hazard(model, x, v); });
  print_row(opt.cdf_at,
            [&](double x, double* v) { return hazmon_model_cdf(model, x, v); });
  print_row(opt.cumhaz_at,
            [&](double x, double* v) { return hazmon_model_cumhaz(model, x, v); });

  if (opt.stationary) {
    if (opt.name != "d") fail("--stationary applies to the d family only");
    double lo = 0.0, hi = 0.0;
    int32_t exists = 0;
    check(hazmon_model_stationary_interval(model, &lo, &hi, &exists));
    if (exists)
      std::cout << format_value(lo) << "," << format_value(hi) << "\n";
    else
      std::cout << "none\n";
    printed = true;
  }

  hazmon_model_free(model);
  if (!printed) fail("no query given (try --quantile, --hazard-at, ...)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local monotonicity test for hazard rates"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", hazmon_version());

  bool self_check = false;
  app.add_flag("--self-check", self_check)->group("");

  TestOptions test_opt;
  hazmon_test_config_init(&test_opt.cfg);
  CLI::App* test = app.add_subcommand(
      "test", "Test for a nondecreasing hazard on [0, b]");
  test->add_option("data", test_opt.data_path,
                   "file with one observation per line ('#' comments)")
      ->required();
  test->add_option("--a", test_opt.a, "interval left endpoint (must be 0)");
  test->add_option("--b", test_opt.b, "interval right endpoint");
  test->add_option("--quantile", test_opt.quantile,
                   "resolve b as this empirical quantile (default 0.95)");
  test->add_option("--method", test_opt.method,
                   "tn_smoothed | tn_naive | durot_sup | durot_tn");
  test->add_option("--bootstrap", test_opt.cfg.bootstrap_b,
                   "bootstrap replicates (default 2000)");
  test->add_option("--alpha", test_opt.cfg.alpha, "level (default 0.1)");
  test->add_option("--bandwidth", test_opt.cfg.bandwidth,
                   "smoothing bandwidth (default n^(-1/4))");
  test->add_option("--penalty", test_opt.cfg.penalty,
                   "cusum penalty (default 2n^(-2/3))");
  test->add_option("--p", test_opt.cfg.power_p,
                   "power of the integral statistic (default 1; inf = max)");
  test->add_option("--seed", test_opt.cfg.seed, "random seed");
  test->add_option("--threads", test_opt.cfg.threads,
                   "worker threads (0 = HAZMON_THREADS or hardware)");
  bool reflect = false;
  test->add_flag("--reflect", reflect, "reflect the step hazard at 0");
  test->add_flag("--desk", test_opt.desk, "desk scale: lower B to 500");

  SimulateOptions sim_opt;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a power/size study from a config");
  simulate->add_option("config", sim_opt.config_path, "key = value study file")
      ->required();
  simulate->add_option("--out", sim_opt.out_prefix,
                       "output prefix (default 'study')");
  simulate->add_flag("--paper-scale", sim_opt.paper_scale,
                     "R = B = 2000 (slow)");
  simulate->add_option("--threads", sim_opt.threads, "worker threads");
  simulate
      ->add_option("--seed", sim_opt.seed, "override the configured seed")
      ->each([&](const std::string&) { sim_opt.have_seed = true; });

  FamilyOptions fam_opt;
  CLI::App* family =
      app.add_subcommand("family", "Query a hazard family (d | bump)");
  family->add_option("name", fam_opt.name, "family name: d | bump")
      ->required();
  family->add_option("--d", fam_opt.d, "d-family parameter")
      ->each([&](const std::string&) { fam_opt.have_d = true; });
  family->add_option("--beta", fam_opt.beta, "bump amplitude");
  family->add_option("--gamma", fam_opt.gamma, "power-law exponent (> -1)");
  family->add_option("--mu", fam_opt.mu, "bump location");
  family->add_option("--sigma", fam_opt.sigma, "bump width (> 0)");
  family->add_option("--quantile", fam_opt.quantiles, "print quantile(s)");
  family->add_option("--hazard-at", fam_opt.hazard_at, "print hazard value(s)");
  family->add_option("--cdf-at", fam_opt.cdf_at, "print cdf value(s)");
  family->add_option("--cumhaz-at", fam_opt.cumhaz_at,
                     "print cumulative hazard value(s)");
  family->add_flag("--stationary", fam_opt.stationary,
                   "print the decreasing-hazard interval");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitError;
  }

  if (self_check) return run_self_check();
  test_opt.cfg.reflect_boundary = reflect ? 1 : 0;

  if (test->parsed()) return cmd_test(test_opt);
  if (simulate->parsed()) return cmd_simulate(sim_opt);
  if (family->parsed()) return cmd_family(fam_opt);
  std::cout << app.help();
  return kExitError;
}

namespace {

// Frozen hand-computed fixtures run through the C API; used for field
// debugging of numerical discrepancies.
int run_self_check() {
  int failures = 0;
  const auto expect = [&](const char* name, double got, double want,
                          double tol) {
    const bool ok = std::fabs(got - want) <= tol;
    std::printf("%-44s %s (got %.10g, want %.10g)\n", name,
                ok ? "ok" : "FAIL", got, want);
    if (!ok) ++failures;
  };

  {
    const double data[] = {1.0, 2.0};
    double v = -1.0;
    check(hazmon_statistic_tn(data, 2, 0.0, 2.5, 1.0, &v));
    expect("tn convex two-point sample", v, 0.0, 1e-12);
    check(hazmon_statistic_durot(data, 2, 2.5, &v));
    expect("durot two-point sample", v, 0.5, 1e-12);
  }
  {
    const double data[] = {1.0, 1.2, 3.0};
    double v = -1.0;
    check(hazmon_statistic_tn(data, 3, 0.0, 2.9, 1.0, &v));
    expect("tn three-point sample", v, 0.07470871926090966, 1e-12);
  }
  {
    hazmon_model* m = nullptr;
    check(hazmon_model_d_family(-1.0, &m));
    double v = 0.0;
    check(hazmon_model_quantile(m, 0.95, &v));
    expect("d=-1 quantile(0.95)", v, 2.3116517439918063, 1e-9);
    double lo = 0.0, hi = 0.0;
    int32_t exists = 0;
    check(hazmon_model_stationary_interval(m, &lo, &hi, &exists));
    expect("d=-1 decreasing stretch exists", exists, 1, 0);
    expect("d=-1 decreasing stretch left", lo, 5.0 / 12.0, 1e-12);
    expect("d=-1 decreasing stretch right", hi, 1.35, 1e-12);
    check(hazmon_model_cdf(m, 0.0, &v));
    expect("d=-1 cdf at 0", v, 0.0, 0.0);
    hazmon_model_free(m);
  }
  {
    hazmon_model* m = nullptr;
    check(hazmon_model_d_family(1.0, &m));
    double v = 0.0;
    check(hazmon_model_quantile(m, 0.95, &v));
    expect("d=1 quantile(0.95)", v, 1.3977806435255893, 1e-9);
    hazmon_model_free(m);
  }
  {
    hazmon_model* m = nullptr;
    check(hazmon_model_bump_family(0.0, 0.0, 1.0, 0.1, &m));
    double v = 0.0;
    check(hazmon_model_hazard(m, 3.7, &v));
    expect("flat bump hazard at 3.7", v, 1.0, 1e-12);
    check(hazmon_model_cumhaz(m, 2.0, &v));
    expect("flat bump cumhaz at 2", v, 2.0, 1e-9);
    hazmon_model_free(m);
  }
  {
    const double data[] = {0.5, 1.5, 2.5, 3.5};
    double v = 0.0;
    check(hazmon_empirical_quantile(data, 4, 0.5, &v));
    expect("empirical quantile 0.5 of 4 points", v, 1.5, 0.0);
  }

  std::printf("%s\n", failures == 0 ? "self-check passed" : "self-check FAILED");
  return failures == 0 ? 0 : kExitError;
}

}  // namespace
