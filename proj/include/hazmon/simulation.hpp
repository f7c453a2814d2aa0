#ifndef HAZMON_SIMULATION_HPP
#define HAZMON_SIMULATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "hazmon/bootstrap.hpp"
#include "hazmon/families.hpp"

namespace hazmon {

// Family grid for a power study: either the d-family over a list of d
// values, or the bump family over a list of gamma values with beta, mu,
// sigma fixed.
struct FamilyGrid {
  enum class Kind { d_family, bump_family };
  Kind kind = Kind::d_family;
  std::vector<double> parameters;  // d values, or gamma values
  double beta = 0.0;
  double mu = 1.0;
  double sigma = 0.1;
};

struct StudySpec {
  FamilyGrid family;
  std::vector<Method> methods;
  std::size_t n = 50;
  int replicates = 500;
  BootstrapConfig bootstrap = {.bootstrap_b = 500};
  // Interval rule: [0, F^{-1}(q)] of the true family (fixed) or of each
  // replicate's empirical distribution.
  enum class IntervalRule { fixed_true_quantile, empirical_quantile };
  IntervalRule interval_rule = IntervalRule::fixed_true_quantile;
  double interval_q = 0.95;
  bool size_study = false;  // null-region validation + "size" label
  int threads = 0;
  bool progress = false;  // per-grid-point summary lines on stderr
  // Optional path to published reference values; the library ignores it,
  // the command-line tool copies the file next to its outputs.
  std::string reference_file;
};

struct PowerCell {
  std::string method;
  double parameter;
  std::size_t n;
  int replicates;
  int bootstrap_b;
  double alpha;
  double interval_q;
  double reject_freq;  // over non-excluded replicates
  double mc_se;        // sqrt(p(1-p)/R_used)
  int excluded;        // replicates that failed for this method
  double runtime_seconds;  // not serialized; reporting only
};

struct PowerTable {
  std::vector<PowerCell> cells;
  std::string kind;  // "power" or "size"
  std::string to_csv() const;
  std::string to_json() const;
  std::string to_plot_csv() const;  // method,parameter,power per row
};

// R replicates per grid point: draw a dataset from the family, run every
// requested method at level alpha on [0, a], record rejection frequencies.
// Datasets are shared across methods at a grid point; bootstrap draws are
// not.  Failed replicates are counted and excluded per method.  Output is a
// pure function of the spec (thread count does not affect it).
PowerTable run_power_study(const StudySpec& spec);

// Same machinery restricted to parameters in the null region (d >= 0, or
// bump with beta == 0 and gamma >= 0); the table is labeled "size".
PowerTable run_null_level_study(const StudySpec& spec);

// Pathwise comparison of the statistic under a model and under its chord
// linearization on [iv.lo, iv.hi], using shared exponential draws:
// Y_i = phi(X_i), so t_n(Y) >= t_n(X) whenever the model's cumulative hazard
// is convex on the interval.
struct CouplingReport {
  int replicates;
  int violations;      // t_n(X) > t_n(Y) + 1e-12
  double min_gap;      // gap = t_n(Y) - t_n(X)
  double mean_gap;
  double max_gap;
};

CouplingReport run_coupling_experiment(const HazardModel& model,
                                       const Interval& iv, std::size_t n,
                                       int replicates, double p,
                                       std::uint64_t seed);

// Construct the model for one grid point of a family grid.
std::shared_ptr<const HazardModel> make_grid_model(const FamilyGrid& grid,
                                                   double parameter);

}  // namespace hazmon

#endif
