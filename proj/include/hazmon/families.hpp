#ifndef HAZMON_FAMILIES_HPP
#define HAZMON_FAMILIES_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hazmon/rng.hpp"
#include "hazmon/sample.hpp"

namespace hazmon {

// A distribution on (0, inf) described through its hazard rate.  cdf and
// quantile have consistent defaults via the cumulative hazard; sampling is
// inversion of standard exponentials, X_i = H^{-1}(E_i).
class HazardModel {
 public:
  virtual ~HazardModel() = default;

  virtual double hazard(double x) const = 0;
  virtual double hazard_deriv(double x) const = 0;
  virtual double cumhaz(double x) const = 0;

  virtual double cdf(double x) const;
  virtual double quantile(double q) const;  // q in (0,1)

  // Monotone inverse of cumhaz; bisection with expanding upper bracket,
  // absolute tolerance 1e-12 in x.
  virtual double cumhaz_inverse(double e) const;

  Sample sample(std::size_t n, RngStream& rng) const;
};

// Constant hazard `level` (exponential distribution scaled by 1/level).
class ConstantHazard : public HazardModel {
 public:
  explicit ConstantHazard(double level);
  double hazard(double) const override { return level_; }
  double hazard_deriv(double) const override { return 0.0; }
  double cumhaz(double x) const override;
  double cumhaz_inverse(double e) const override;

 private:
  double level_;
};

// One-parameter family with hazard
//   h_d(x) = 1/2 + 5/2*((x - 3/4)^3 + (3/4)^3) + d*x^2 .
// For d >= 0 the hazard is nondecreasing; for d < 0 it has a strict local
// maximum and minimum (a decreasing stretch).  |d| <= 1 is the validated
// range; values outside are accepted with a warning flag.
class DFamily : public HazardModel {
 public:
  explicit DFamily(double d);

  double hazard(double x) const override;
  double hazard_deriv(double x) const override;
  double cumhaz(double x) const override;

  double d() const { return d_; }
  bool outside_validated_range() const { return outside_range_; }

  // Endpoints of the interval where the hazard decreases:
  //   3/4 - (2/15)d -+ (2/15)sqrt(d^2 - (45/4)d).
  // For d = 0 this degenerates to the single stationary point 3/4, and for
  // d > 0 there is none (strictly increasing hazard).
  std::optional<std::pair<double, double>> stationary_interval() const;

 private:
  double d_;
  bool outside_range_;
};

// Hazard x^gamma * exp(beta * normal_density(x; mu, sigma)) with a Gaussian
// bump.  gamma in (-1, 0) gives an integrable singularity at 0, handled by a
// power-law substitution; gamma <= -1 is rejected.  The cumulative hazard is
// computed by adaptive quadrature (absolute tolerance 1e-10) and cached on a
// refinement-adaptive grid built eagerly at construction.
class BumpFamily : public HazardModel {
 public:
  BumpFamily(double beta, double gamma, double mu, double sigma);

  double hazard(double x) const override;
  double hazard_deriv(double x) const override;
  double cumhaz(double x) const override;
  double cumhaz_inverse(double e) const override;

  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

 private:
  double bump_factor(double x) const;     // exp(beta * N(x; mu, sigma) pdf)
  double hazard_positive(double x) const; // hazard for x > 0
  double exact_cumhaz_panel(double lo, double hi) const;
  double beta_, gamma_, mu_, sigma_;
  std::vector<double> grid_x_;
  std::vector<double> grid_h_;   // cumulative hazard at grid_x_
  std::vector<double> grid_d_;   // hazard (derivative) at grid_x_
};

// Model whose cumulative hazard is replaced by its chord on [a, b) and left
// untouched elsewhere.  Samples from it are coupled to samples from the base
// model through the convex map phi = H_chord^{-1} o H.
class LinearizedModel : public HazardModel {
 public:
  LinearizedModel(std::shared_ptr<const HazardModel> base, double a, double b);

  double hazard(double x) const override;
  double hazard_deriv(double x) const override;
  double cumhaz(double x) const override;
  double cumhaz_inverse(double e) const override;

  // phi(x) = H_chord^{-1}(H_base(x)); maps [a,b] onto itself, phi(x) <= x
  // when the base cumulative hazard is convex on [a, b].
  double coupling_map(double x) const;

 private:
  std::shared_ptr<const HazardModel> base_;
  double a_, b_, ha_, hb_;
};

}  // namespace hazmon

#endif
