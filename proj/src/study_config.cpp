#include "hazmon/study_config.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hazmon/errors.hpp"

namespace hazmon {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "infinity")
    return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw config_error("value of '" + key + "' is not a number: " + value,
                       {key});
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw config_error("value of '" + key + "' is not an integer: " + value,
                       {key});
  return v;
}

Method parse_method(const std::string& name) {
  if (name == "tn_smoothed") return Method::tn_smoothed;
  if (name == "tn_naive") return Method::tn_naive;
  if (name == "durot_sup") return Method::durot_sup;
  if (name == "durot_tn") return Method::durot_tn;
  throw config_error("unknown method '" + name + "'", {"methods"});
}

}  // namespace

StudySpec parse_study_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) +
                         " is not of the form key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("line " + std::to_string(lineno) +
                         " has an empty key or value");
    if (kv.count(key))
      throw config_error("key '" + key + "' given more than once", {key});
    kv[key] = value;
  }

  static const char* known[] = {
      "family", "d",       "gamma",   "beta",       "mu",
      "sigma",  "n",       "replicates", "bootstrap", "alpha",
      "quantile", "interval", "methods", "p",        "penalty",
      "bandwidth", "seed",  "kind",    "threads",    "reference_file",
      "progress"};
  std::vector<std::string> unknown;
  for (const auto& [key, value] : kv) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown configuration keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw config_error(msg, unknown);
  }

  StudySpec spec;
  const auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::string();
    return it->second;
  };

  const std::string family = take("family");
  if (family == "d" || family.empty()) {
    spec.family.kind = FamilyGrid::Kind::d_family;
  } else if (family == "bump") {
    spec.family.kind = FamilyGrid::Kind::bump_family;
  } else {
    throw config_error("family must be 'd' or 'bump', got '" + family + "'",
                       {"family"});
  }

  const bool is_bump = spec.family.kind == FamilyGrid::Kind::bump_family;
  if (is_bump) {
    if (kv.count("d"))
      throw config_error("'d' applies to the d family only", {"d"});
    const std::string gammas = take("gamma");
    if (gammas.empty())
      throw config_error("bump family needs a 'gamma' list", {"gamma"});
    for (const auto& g : split_list(gammas))
      spec.family.parameters.push_back(parse_double("gamma", g));
    if (kv.count("beta")) spec.family.beta = parse_double("beta", kv["beta"]);
    if (kv.count("mu")) spec.family.mu = parse_double("mu", kv["mu"]);
    if (kv.count("sigma"))
      spec.family.sigma = parse_double("sigma", kv["sigma"]);
  } else {
    for (const char* key : {"gamma", "beta", "mu", "sigma"})
      if (kv.count(key))
        throw config_error(std::string("'") + key +
                               "' applies to the bump family only",
                           {key});
    const std::string ds = take("d");
    if (ds.empty())
      throw config_error("d family needs a 'd' list", {"d"});
    for (const auto& d : split_list(ds))
      spec.family.parameters.push_back(parse_double("d", d));
  }
  if (spec.family.parameters.empty())
    throw config_error("parameter list is empty");

  const std::string methods = take("methods");
  if (methods.empty())
    throw config_error("a 'methods' list is required", {"methods"});
  for (const auto& name : split_list(methods))
    spec.methods.push_back(parse_method(name));

  if (kv.count("n")) {
    const long long n = parse_int("n", kv["n"]);
    if (n < 2) throw config_error("n must be >= 2", {"n"});
    spec.n = static_cast<std::size_t>(n);
  }
  if (kv.count("replicates")) {
    const long long r = parse_int("replicates", kv["replicates"]);
    if (r < 1) throw config_error("replicates must be >= 1", {"replicates"});
    spec.replicates = static_cast<int>(r);
  }
  if (kv.count("bootstrap")) {
    const long long b = parse_int("bootstrap", kv["bootstrap"]);
    if (b < 1) throw config_error("bootstrap must be >= 1", {"bootstrap"});
    spec.bootstrap.bootstrap_b = static_cast<int>(b);
  }
  if (kv.count("alpha")) {
    spec.bootstrap.alpha = parse_double("alpha", kv["alpha"]);
    if (!(spec.bootstrap.alpha > 0.0 && spec.bootstrap.alpha < 1.0))
      throw config_error("alpha must lie in (0, 1)", {"alpha"});
  }
  if (kv.count("quantile")) {
    spec.interval_q = parse_double("quantile", kv["quantile"]);
    if (!(spec.interval_q > 0.0 && spec.interval_q < 1.0))
      throw config_error("quantile must lie in (0, 1)", {"quantile"});
  }
  if (kv.count("interval")) {
    const std::string& rule = kv["interval"];
    if (rule == "fixed")
      spec.interval_rule = StudySpec::IntervalRule::fixed_true_quantile;
    else if (rule == "empirical")
      spec.interval_rule = StudySpec::IntervalRule::empirical_quantile;
    else
      throw config_error(
          "interval must be 'fixed' or 'empirical', got '" + rule + "'",
          {"interval"});
  }
  if (kv.count("p")) {
    spec.bootstrap.p = parse_double("p", kv["p"]);
    if (std::isnan(spec.bootstrap.p) || spec.bootstrap.p < 1.0)
      throw config_error("p must be >= 1", {"p"});
  }
  if (kv.count("penalty"))
    spec.bootstrap.penalty = parse_double("penalty", kv["penalty"]);
  if (kv.count("bandwidth"))
    spec.bootstrap.bandwidth = parse_double("bandwidth", kv["bandwidth"]);
  if (kv.count("seed")) {
    const long long s = parse_int("seed", kv["seed"]);
    if (s < 0) throw config_error("seed must be nonnegative", {"seed"});
    spec.bootstrap.seed = static_cast<std::uint64_t>(s);
  }
  if (kv.count("threads")) {
    const long long t = parse_int("threads", kv["threads"]);
    if (t < 0) throw config_error("threads must be >= 0", {"threads"});
    spec.threads = static_cast<int>(t);
  }
  if (kv.count("progress"))
    spec.progress = parse_int("progress", kv["progress"]) != 0;
  if (kv.count("kind")) {
    const std::string& kind = kv["kind"];
    if (kind == "size")
      spec.size_study = true;
    else if (kind != "power")
      throw config_error("kind must be 'power' or 'size', got '" + kind + "'",
                         {"kind"});
  }
  spec.reference_file = take("reference_file");
  return spec;
}

}  // namespace hazmon
