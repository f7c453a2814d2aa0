#include "hazmon/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quadrature.hpp"

namespace hazmon {

double HazardModel::cdf(double x) const {
  if (std::isnan(x)) throw std::domain_error("cdf of NaN");
  if (x <= 0.0) return 0.0;
  return -std::expm1(-cumhaz(x));
}

double HazardModel::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("quantile level must lie in (0,1)");
  return cumhaz_inverse(-std::log1p(-q));
}

double HazardModel::cumhaz_inverse(double e) const {
  if (std::isnan(e) || e < 0.0)
    throw std::domain_error("cumulative hazard inverse needs e >= 0");
  if (e == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (cumhaz(hi) < e) {
    hi *= 2.0;
    if (++guard > 200)
      throw std::runtime_error("cumulative hazard does not reach the target");
  }
  double lo = (hi > 1.0) ? 0.5 * hi : 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (cumhaz(mid) >= e)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Sample HazardModel::sample(std::size_t n, RngStream& rng) const {
  std::vector<double> e(n);
  for (double& v : e) v = rng.next_exponential();
  std::sort(e.begin(), e.end());
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = cumhaz_inverse(e[i]);
  return Sample::from_data(std::move(x), TieBreak::perturb);
}

ConstantHazard::ConstantHazard(double level) : level_(level) {
  if (!std::isfinite(level) || !(level > 0.0))
    throw std::invalid_argument("constant hazard level must be positive");
}

double ConstantHazard::cumhaz(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("cumhaz needs x >= 0");
  return level_ * x;
}

double ConstantHazard::cumhaz_inverse(double e) const {
  if (std::isnan(e) || e < 0.0)
    throw std::domain_error("cumulative hazard inverse needs e >= 0");
  return e / level_;
}

namespace {
const double k34 = 0.75;
const double k34_3 = 0.421875;    // (3/4)^3
const double k34_4 = 0.31640625;  // (3/4)^4
}  // namespace

DFamily::DFamily(double d) : d_(d), outside_range_(std::fabs(d) > 1.0) {
  if (!std::isfinite(d)) throw std::invalid_argument("d must be finite");
}

double DFamily::hazard(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("hazard needs x >= 0");
  const double w = x - k34;
  return 0.5 + 2.5 * (w * w * w + k34_3) + d_ * x * x;
}

double DFamily::hazard_deriv(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("hazard needs x >= 0");
  const double w = x - k34;
  return 7.5 * w * w + 2.0 * d_ * x;
}

double DFamily::cumhaz(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("cumhaz needs x >= 0");
  const double w = x - k34;
  const double w2 = w * w;
  return 0.5 * x + 0.625 * (w2 * w2 - k34_4) + 2.5 * k34_3 * x +
         d_ * x * x * x / 3.0;
}

std::optional<std::pair<double, double>> DFamily::stationary_interval() const {
  if (d_ > 0.0) return std::nullopt;
  const double s = std::sqrt(d_ * d_ - 11.25 * d_);
  const double c = k34 - (2.0 / 15.0) * d_;
  return std::make_pair(c - (2.0 / 15.0) * s, c + (2.0 / 15.0) * s);
}

BumpFamily::BumpFamily(double beta, double gamma, double mu, double sigma)
    : beta_(beta), gamma_(gamma), mu_(mu), sigma_(sigma) {
  if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(mu) ||
      !std::isfinite(sigma))
    throw std::invalid_argument("bump family parameters must be finite");
  if (gamma <= -1.0)
    throw std::invalid_argument(
        "gamma <= -1 makes the hazard non-integrable at 0");
  if (!(sigma > 0.0))
    throw std::invalid_argument("sigma must be strictly positive");

  // Expand the right endpoint until the cumulative hazard covers every
  // exponential draw (largest possible is -log(2^-54) < 38).
  double cap = 1.0, total = exact_cumhaz_panel(0.0, 1.0);
  int guard = 0;
  while (total < 38.0) {
    total += exact_cumhaz_panel(cap, 2.0 * cap);
    cap *= 2.0;
    if (++guard > 80)
      throw std::runtime_error("bump cumulative hazard grows too slowly");
  }

  // Refinement-adaptive grid: geometric spacing (dense near 0, where the
  // hazard may be steep) with exact quadrature between knots and the exact
  // hazard as derivative, supporting cubic Hermite evaluation in between.
  const int panels = 1600;
  const double first = cap * 1e-6;
  const double ratio = std::pow(cap / first, 1.0 / (panels - 1));
  grid_x_.push_back(0.0);
  double x = first;
  for (int i = 0; i < panels; ++i) {
    grid_x_.push_back(std::min(x, cap));
    x *= ratio;
  }
  grid_x_.back() = cap;
  grid_h_.resize(grid_x_.size());
  grid_d_.resize(grid_x_.size());
  grid_h_[0] = 0.0;
  // Hazard at 0 (finite cases); the gamma < 0 pole is represented by 0 here,
  // which only weakens the Hermite seed in the first panel. The inversion
  // polishes against the exact cumulative hazard, so accuracy is unaffected.
  grid_d_[0] = (gamma_ == 0.0) ? bump_factor(0.0) : 0.0;
  for (std::size_t i = 1; i < grid_x_.size(); ++i) {
    grid_h_[i] = grid_h_[i - 1] + exact_cumhaz_panel(grid_x_[i - 1], grid_x_[i]);
    grid_d_[i] = hazard_positive(grid_x_[i]);
  }
}

double BumpFamily::bump_factor(double x) const {
  const double z = (x - mu_) / sigma_;
  const double dens =
      std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * M_PI));
  return std::exp(beta_ * dens);
}

double BumpFamily::hazard_positive(double x) const {
  return std::pow(x, gamma_) * bump_factor(x);
}

double BumpFamily::hazard(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("hazard needs x >= 0");
  if (x == 0.0) {
    if (gamma_ > 0.0) return 0.0;
    if (gamma_ == 0.0) return bump_factor(0.0);
    return std::numeric_limits<double>::infinity();
  }
  return hazard_positive(x);
}

double BumpFamily::hazard_deriv(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("hazard needs x >= 0");
  if (x == 0.0) {
    if (gamma_ == 0.0) {
      const double z = -mu_ / sigma_;
      const double dens =
          std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * M_PI));
      return bump_factor(0.0) * beta_ * dens * (mu_ / (sigma_ * sigma_));
    }
    if (gamma_ >= 1.0) return (gamma_ == 1.0) ? bump_factor(0.0) : 0.0;
    return (gamma_ > 0.0 ? 1.0 : -1.0) *
           std::numeric_limits<double>::infinity();
  }
  const double z = (x - mu_) / sigma_;
  const double dens =
      std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * M_PI));
  return hazard_positive(x) *
         (gamma_ / x - beta_ * dens * z / sigma_);
}

// Exact integral of the hazard over [lo, hi].  A panel touching 0 with
// gamma != 0 is computed through the substitution s = x^(1+gamma), under
// which  integral x^g * c(x) dx = 1/(1+g) * integral c(s^(1/(1+g))) ds
// with a bounded continuous integrand.
double BumpFamily::exact_cumhaz_panel(double lo, double hi) const {
  if (lo == hi) return 0.0;
  const double tol = 1e-12 * std::max(1.0, hi - lo);
  if (lo == 0.0 && gamma_ != 0.0) {
    const double p = 1.0 + gamma_;
    const double s_hi = std::pow(hi, p);
    const auto f = [&](double s) {
      return bump_factor(s > 0.0 ? std::pow(s, 1.0 / p) : 0.0) / p;
    };
    return detail::adaptive_simpson(f, 0.0, s_hi, tol);
  }
  const auto f = [&](double x) {
    if (x > 0.0) return hazard_positive(x);
    return gamma_ == 0.0 ? bump_factor(0.0) : 0.0;
  };
  return detail::adaptive_simpson(f, lo, hi, tol);
}

double BumpFamily::cumhaz(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("cumhaz needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x >= grid_x_.back())
    return grid_h_.back() + exact_cumhaz_panel(grid_x_.back(), x);
  const std::size_t i = static_cast<std::size_t>(
      std::upper_bound(grid_x_.begin(), grid_x_.end(), x) - grid_x_.begin());
  return grid_h_[i - 1] + exact_cumhaz_panel(grid_x_[i - 1], x);
}

double BumpFamily::cumhaz_inverse(double e) const {
  if (std::isnan(e) || e < 0.0)
    throw std::domain_error("cumulative hazard inverse needs e >= 0");
  if (e == 0.0) return 0.0;
  if (e >= grid_h_.back()) {
    // Beyond the cache (possible only for extreme quantile requests): fall
    // back to expanding bisection on the exact cumulative hazard.
    return HazardModel::cumhaz_inverse(e);
  }
  const std::size_t i = static_cast<std::size_t>(
      std::upper_bound(grid_h_.begin(), grid_h_.end(), e) - grid_h_.begin());
  double lo = grid_x_[i - 1], hi = grid_x_[i];
  double flo = grid_h_[i - 1];

  // Cubic Hermite estimate inside the bracketing panel, then Newton steps
  // against the exact cumulative hazard.
  double x;
  {
    const double w = hi - lo;
    const double h00 = grid_h_[i - 1], h11 = grid_h_[i];
    const double d0 = grid_d_[i - 1] * w, d1 = grid_d_[i] * w;
    double u = 0.5;
    for (int it = 0; it < 40; ++it) {
      const double u2 = u * u, u3 = u2 * u;
      const double val = h00 * (2 * u3 - 3 * u2 + 1) + d0 * (u3 - 2 * u2 + u) +
                         h11 * (-2 * u3 + 3 * u2) + d1 * (u3 - u2);
      const double der = h00 * (6 * u2 - 6 * u) + d0 * (3 * u2 - 4 * u + 1) +
                         h11 * (-6 * u2 + 6 * u) + d1 * (3 * u2 - 2 * u);
      const double diff = val - e;
      if (std::fabs(diff) < 1e-13 * std::max(1.0, e)) break;
      double step = (der > 0.0) ? diff / der : 0.0;
      double nu = u - step;
      if (!(nu > 0.0 && nu < 1.0) || step == 0.0)
        nu = (diff > 0.0) ? 0.5 * u : 0.5 * (u + 1.0);
      if (std::fabs(nu - u) < 1e-9 && it > 4) { u = nu; break; }
      u = nu;
    }
    x = lo + u * w;
  }

  // Polish on the exact function, safeguarded by the panel bracket.
  double fx = flo + exact_cumhaz_panel(lo, x) - e;
  for (int it = 0; it < 60; ++it) {
    if (fx >= 0.0) hi = x; else { lo = x; flo = fx + e; }
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    const double d = hazard_positive(std::max(x, 1e-300));
    double nx = x - fx / d;
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::fabs(nx - x) <= 1e-12 * std::max(1.0, x)) { x = nx; break; }
    fx = flo + exact_cumhaz_panel(lo, nx) - e;
    x = nx;
  }
  return x;
}

LinearizedModel::LinearizedModel(std::shared_ptr<const HazardModel> base,
                                 double a, double b)
    : base_(std::move(base)), a_(a), b_(b) {
  if (!base_) throw std::invalid_argument("linearization needs a base model");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a >= 0.0) || !(a < b))
    throw std::invalid_argument("linearization needs 0 <= a < b");
  ha_ = base_->cumhaz(a_);
  hb_ = base_->cumhaz(b_);
  if (!(hb_ > ha_))
    throw std::invalid_argument(
        "base cumulative hazard must increase across [a, b]");
}

double LinearizedModel::hazard(double x) const {
  if (x >= a_ && x < b_) return (hb_ - ha_) / (b_ - a_);
  return base_->hazard(x);
}

double LinearizedModel::hazard_deriv(double x) const {
  if (x >= a_ && x < b_) return 0.0;
  return base_->hazard_deriv(x);
}

double LinearizedModel::cumhaz(double x) const {
  if (x >= a_ && x < b_)
    return ha_ + (x - a_) * (hb_ - ha_) / (b_ - a_);
  return base_->cumhaz(x);
}

double LinearizedModel::cumhaz_inverse(double e) const {
  if (std::isnan(e) || e < 0.0)
    throw std::domain_error("cumulative hazard inverse needs e >= 0");
  if (e <= ha_) return base_->cumhaz_inverse(e);
  if (e < hb_) return a_ + (e - ha_) * (b_ - a_) / (hb_ - ha_);
  return base_->cumhaz_inverse(e);
}

double LinearizedModel::coupling_map(double x) const {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("coupling map needs x >= 0");
  if (x <= a_ || x >= b_) return x;
  return a_ + (base_->cumhaz(x) - ha_) * (b_ - a_) / (hb_ - ha_);
}

}  // namespace hazmon
