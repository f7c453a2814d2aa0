#include "hazmon.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "hazmon/bootstrap.hpp"
#include "hazmon/errors.hpp"
#include "hazmon/families.hpp"
#include "hazmon/simulation.hpp"
#include "hazmon/statistics.hpp"
#include "hazmon/study_config.hpp"

struct hazmon_outcome {
  hazmon::TestOutcome value;
};

struct hazmon_model {
  std::shared_ptr<const hazmon::HazardModel> value;
};

struct hazmon_table {
  hazmon::PowerTable value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs a callable, translating exceptions into status codes and recording
// the message for hazmon_last_error().
template <typename Fn>
hazmon_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HAZMON_OK;
  } catch (const hazmon::degenerate_interval_error& e) {
    set_error(e.what());
    return HAZMON_ERR_DEGENERATE_INTERVAL;
  } catch (const hazmon::degenerate_fit_error& e) {
    set_error(e.what());
    return HAZMON_ERR_DEGENERATE_FIT;
  } catch (const hazmon::config_error& e) {
    set_error(e.what());
    return HAZMON_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return HAZMON_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return HAZMON_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return HAZMON_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HAZMON_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return HAZMON_ERR_INTERNAL;
  }
}

hazmon_status require(bool ok, const char* message) {
  if (ok) return HAZMON_OK;
  set_error(message);
  return HAZMON_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hazmon::Sample make_sample(const double* data, size_t n) {
  if (data == nullptr) throw std::invalid_argument("data pointer is null");
  return hazmon::Sample::from_data(std::vector<double>(data, data + n),
                                   hazmon::TieBreak::perturb);
}

nlohmann::json outcome_json(const hazmon::TestOutcome& o) {
  nlohmann::json doc{
      {"schema_version", 1},
      {"method", hazmon::method_name(o.method)},
      {"statistic", o.statistic},
      {"critical_value", o.critical_value},
      {"p_value", o.p_value},
      {"reject", o.reject},
      {"interval", {0.0, o.interval_hi}},
      {"n", o.n},
      {"p", std::isinf(o.p) ? nlohmann::json("inf") : nlohmann::json(o.p)},
      {"alpha", o.alpha},
      {"bootstrap_b", o.bootstrap_values.size()},
      {"seed", o.seed},
      {"tie_adjustments", o.tie_adjustments},
  };
  if (std::isnan(o.bandwidth_used)) {
    doc["bandwidth"] = nullptr;
    doc["penalty"] = nullptr;
  } else {
    doc["bandwidth"] = o.bandwidth_used;
    doc["penalty"] = o.penalty_used;
    doc["bandwidth_ratio"] = o.bandwidth_check.ratio;
    doc["bandwidth_too_small"] = o.bandwidth_check.too_small;
  }
  return doc;
}

}  // namespace

extern "C" {

const char* hazmon_version(void) { return "1.0.0"; }

const char* hazmon_last_error(void) { return g_last_error.c_str(); }

void hazmon_free_string(char* s) { delete[] s; }

void hazmon_test_config_init(hazmon_test_config* cfg) {
  if (cfg == nullptr) return;
  cfg->method = HAZMON_METHOD_TN_SMOOTHED;
  cfg->bootstrap_b = 2000;
  cfg->alpha = 0.1;
  cfg->bandwidth = -1.0;
  cfg->penalty = -1.0;
  cfg->power_p = 1.0;
  cfg->seed = hazmon::kDefaultSeed;
  cfg->threads = 0;
  cfg->reflect_boundary = 0;
}

hazmon_status hazmon_run_test(const double* data, size_t n,
                              double interval_hi,
                              const hazmon_test_config* cfg,
                              hazmon_outcome** out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  if (hazmon_status s = require(cfg != nullptr, "config pointer is null"))
    return s;
  if (hazmon_status s =
          require(cfg->method >= HAZMON_METHOD_TN_SMOOTHED &&
                      cfg->method <= HAZMON_METHOD_DUROT_TN,
                  "unknown method"))
    return s;
  *out = nullptr;
  return guarded([&] {
    hazmon::BootstrapConfig bc;
    bc.bootstrap_b = cfg->bootstrap_b;
    bc.alpha = cfg->alpha;
    bc.bandwidth = cfg->bandwidth;
    bc.penalty = cfg->penalty;
    bc.p = cfg->power_p;
    bc.seed = cfg->seed;
    bc.threads = cfg->threads;
    bc.reflect_boundary = cfg->reflect_boundary != 0;
    const hazmon::Sample sample = make_sample(data, n);
    auto result = std::make_unique<hazmon_outcome>();
    result->value = hazmon::run_test(
        sample, interval_hi, static_cast<hazmon::Method>(cfg->method), bc);
    *out = result.release();
  });
}

double hazmon_outcome_statistic(const hazmon_outcome* o) {
  return o ? o->value.statistic : NAN;
}

double hazmon_outcome_critical_value(const hazmon_outcome* o) {
  return o ? o->value.critical_value : NAN;
}

double hazmon_outcome_p_value(const hazmon_outcome* o) {
  return o ? o->value.p_value : NAN;
}

int32_t hazmon_outcome_reject(const hazmon_outcome* o) {
  return (o && o->value.reject) ? 1 : 0;
}

int32_t hazmon_outcome_tie_adjustments(const hazmon_outcome* o) {
  return o ? o->value.tie_adjustments : 0;
}

size_t hazmon_outcome_replicate_count(const hazmon_outcome* o) {
  return o ? o->value.bootstrap_values.size() : 0;
}

hazmon_status hazmon_outcome_replicates(const hazmon_outcome* o, double* buf,
                                        size_t len) {
  if (hazmon_status s = require(o != nullptr, "outcome pointer is null"))
    return s;
  if (hazmon_status s = require(buf != nullptr, "buffer pointer is null"))
    return s;
  if (hazmon_status s = require(len >= o->value.bootstrap_values.size(),
                                "buffer too small"))
    return s;
  std::memcpy(buf, o->value.bootstrap_values.data(),
              o->value.bootstrap_values.size() * sizeof(double));
  return HAZMON_OK;
}

hazmon_status hazmon_outcome_json(const hazmon_outcome* o, char** out) {
  if (hazmon_status s = require(o != nullptr, "outcome pointer is null"))
    return s;
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] { *out = copy_string(outcome_json(o->value).dump(2)); });
}

void hazmon_outcome_free(hazmon_outcome* o) { delete o; }

hazmon_status hazmon_statistic_tn(const double* data, size_t n, double lo,
                                  double hi, double p, double* out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] {
    *out = hazmon::t_n(make_sample(data, n), hazmon::Interval{lo, hi}, p);
  });
}

hazmon_status hazmon_statistic_durot(const double* data, size_t n, double hi,
                                     double* out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] {
    *out = hazmon::durot_stat(make_sample(data, n), hazmon::Interval{0.0, hi});
  });
}

hazmon_status hazmon_empirical_quantile(const double* data, size_t n, double q,
                                        double* out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] { *out = make_sample(data, n).empirical_quantile(q); });
}

hazmon_status hazmon_model_d_family(double d, hazmon_model** out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] {
    *out = new hazmon_model{std::make_shared<hazmon::DFamily>(d)};
  });
}

hazmon_status hazmon_model_bump_family(double beta, double gamma, double mu,
                                       double sigma, hazmon_model** out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] {
    *out = new hazmon_model{
        std::make_shared<hazmon::BumpFamily>(beta, gamma, mu, sigma)};
  });
}

hazmon_status hazmon_model_constant(double level, hazmon_model** out) {
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  return guarded([&] {
    *out = new hazmon_model{std::make_shared<hazmon::ConstantHazard>(level)};
  });
}

hazmon_status hazmon_model_hazard(const hazmon_model* m, double x,
                                  double* out) {
  if (hazmon_status s = require(m != nullptr && out != nullptr,
                                "model or output pointer is null"))
    return s;
  return guarded([&] { *out = m->value->hazard(x); });
}

hazmon_status hazmon_model_hazard_deriv(const hazmon_model* m, double x,
                                        double* out) {
  if (hazmon_status s = require(m != nullptr && out != nullptr,
                                "model or output pointer is null"))
    return s;
  return guarded([&] { *out = m->value->hazard_deriv(x); });
}

hazmon_status hazmon_model_cumhaz(const hazmon_model* m, double x,
                                  double* out) {
  if (hazmon_status s = require(m != nullptr && out != nullptr,
                                "model or output pointer is null"))
    return s;
  return guarded([&] { *out = m->value->cumhaz(x); });
}

hazmon_status hazmon_model_cdf(const hazmon_model* m, double x, double* out) {
  if (hazmon_status s = require(m != nullptr && out != nullptr,
                                "model or output pointer is null"))
    return s;
  return guarded([&] { *out = m->value->cdf(x); });
}

hazmon_status hazmon_model_quantile(const hazmon_model* m, double q,
                                    double* out) {
  if (hazmon_status s = require(m != nullptr && out != nullptr,
                                "model or output pointer is null"))
    return s;
  return guarded([&] { *out = m->value->quantile(q); });
}

hazmon_status hazmon_model_stationary_interval(const hazmon_model* m,
                                               double* lo, double* hi,
                                               int32_t* exists) {
  if (hazmon_status s =
          require(m != nullptr && lo != nullptr && hi != nullptr &&
                      exists != nullptr,
                  "model or output pointer is null"))
    return s;
  return guarded([&] {
    *exists = 0;
    *lo = NAN;
    *hi = NAN;
    if (const auto* d = dynamic_cast<const hazmon::DFamily*>(m->value.get())) {
      if (const auto iv = d->stationary_interval()) {
        *lo = iv->first;
        *hi = iv->second;
        *exists = 1;
      }
    }
  });
}

hazmon_status hazmon_model_sample(const hazmon_model* m, size_t n,
                                  uint64_t seed, double* out) {
  if (hazmon_status s = require(m != nullptr && out != nullptr,
                                "model or output pointer is null"))
    return s;
  return guarded([&] {
    hazmon::RngStream rng(seed, 0, 0, 0);
    const hazmon::Sample sample = m->value->sample(n, rng);
    std::memcpy(out, sample.values().data(), n * sizeof(double));
  });
}

void hazmon_model_free(hazmon_model* m) { delete m; }

hazmon_status hazmon_study_run(const char* config_text, hazmon_table** out) {
  if (hazmon_status s = require(config_text != nullptr, "config text is null"))
    return s;
  if (hazmon_status s = require(out != nullptr, "output pointer is null"))
    return s;
  *out = nullptr;
  return guarded([&] {
    const hazmon::StudySpec spec = hazmon::parse_study_config(config_text);
    auto table = std::make_unique<hazmon_table>();
    table->value = spec.size_study ? hazmon::run_null_level_study(spec)
                                   : hazmon::run_power_study(spec);
    *out = table.release();
  });
}

hazmon_status hazmon_table_csv(const hazmon_table* t, char** out) {
  if (hazmon_status s = require(t != nullptr && out != nullptr,
                                "table or output pointer is null"))
    return s;
  return guarded([&] { *out = copy_string(t->value.to_csv()); });
}

hazmon_status hazmon_table_json(const hazmon_table* t, char** out) {
  if (hazmon_status s = require(t != nullptr && out != nullptr,
                                "table or output pointer is null"))
    return s;
  return guarded([&] { *out = copy_string(t->value.to_json()); });
}

hazmon_status hazmon_table_plot_csv(const hazmon_table* t, char** out) {
  if (hazmon_status s = require(t != nullptr && out != nullptr,
                                "table or output pointer is null"))
    return s;
  return guarded([&] { *out = copy_string(t->value.to_plot_csv()); });
}

void hazmon_table_free(hazmon_table* t) { delete t; }

}  // extern "C"
