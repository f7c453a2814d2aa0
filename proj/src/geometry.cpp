#include "hazmon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hazmon {

namespace {

const double kCollinearTol = 1e-12;

double slope(const Point& a, const Point& b) { return (b.y - a.y) / (b.x - a.x); }

// True when s_left >= s_right up to a relative tolerance, i.e. the middle
// point of the triple is on or above the chord and must be popped.
bool pops_middle(double s_left, double s_right) {
  const double scale = std::max(std::fabs(s_left), std::fabs(s_right));
  return s_right - s_left <= kCollinearTol * scale;
}

}  // namespace

CusumDiagram::CusumDiagram(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    throw std::invalid_argument("cusum diagram needs at least two points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y))
      throw std::invalid_argument("cusum diagram has a non-finite coordinate");
    if (i > 0 && !(points_[i - 1].x < points_[i].x))
      throw std::invalid_argument("cusum diagram abscissas must strictly increase");
  }
}

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<Point> knots)
    : knots_(std::move(knots)) {
  if (knots_.size() < 2)
    throw std::invalid_argument("piecewise-linear function needs two knots");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].x) || !std::isfinite(knots_[i].y))
      throw std::invalid_argument("piecewise-linear knot is non-finite");
    if (i > 0 && !(knots_[i - 1].x < knots_[i].x))
      throw std::invalid_argument("piecewise-linear knots must strictly increase");
  }
}

std::size_t PiecewiseLinearFn::segment_of(double x) const {
  // Index i with knots_[i].x <= x <= knots_[i+1].x (left-closed pick).
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), x,
      [](double v, const Point& p) { return v < p.x; });
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  if (i == 0) throw std::domain_error("evaluation left of the first knot");
  if (i == knots_.size()) {
    if (x > knots_.back().x)
      throw std::domain_error("evaluation right of the last knot");
    i = knots_.size() - 1;
  }
  return i - 1;
}

double PiecewiseLinearFn::operator()(double x) const {
  const std::size_t i = segment_of(x);
  const Point& a = knots_[i];
  const Point& b = knots_[i + 1];
  if (x == a.x) return a.y;
  if (x == b.x) return b.y;
  return a.y + (x - a.x) * slope(a, b);
}

double PiecewiseLinearFn::left_derivative(double x) const {
  if (!(x > xmin() && x <= xmax()))
    throw std::domain_error("left derivative defined on (xmin, xmax]");
  auto it = std::lower_bound(
      knots_.begin(), knots_.end(), x,
      [](const Point& p, double v) { return p.x < v; });
  // First knot with knot.x >= x; the segment reaching x from the left is
  // [it-1, it].
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  return slope(knots_[i - 1], knots_[i]);
}

double PiecewiseLinearFn::right_derivative(double x) const {
  if (!(x >= xmin() && x < xmax()))
    throw std::domain_error("right derivative defined on [xmin, xmax)");
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), x,
      [](double v, const Point& p) { return v < p.x; });
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  return slope(knots_[i - 1], knots_[i]);
}

double PiecewiseLinearFn::inverse_lower(double y) const {
  if (!(y >= knots_.front().y && y <= knots_.back().y))
    throw std::domain_error("inverse target outside the value range");
  // First knot with value >= y.
  auto it = std::lower_bound(
      knots_.begin(), knots_.end(), y,
      [](const Point& p, double v) { return p.y < v; });
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  if (knots_[i].y == y) {
    // inf over a possibly flat stretch ending at knot i.
    std::size_t j = i;
    while (j > 0 && knots_[j - 1].y == y) --j;
    return knots_[j].x;
  }
  const Point& a = knots_[i - 1];
  const Point& b = knots_[i];
  return a.x + (y - a.y) / slope(a, b);
}

PiecewiseLinearFn gcm(const CusumDiagram& diagram) {
  const std::vector<Point>& pts = diagram.points();
  std::vector<Point> hull;
  hull.reserve(pts.size());
  for (const Point& p : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull[hull.size() - 1];
      if (pops_middle(slope(a, b), slope(b, p)))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  return PiecewiseLinearFn(std::move(hull));
}

std::vector<SlopeSegment> gcm_slopes_as_isotonic(const CusumDiagram& diagram) {
  const PiecewiseLinearFn fn = gcm(diagram);
  const std::vector<Point>& k = fn.knots();
  std::vector<SlopeSegment> segments;
  segments.reserve(k.size() - 1);
  for (std::size_t i = 0; i + 1 < k.size(); ++i)
    segments.push_back({k[i].x, k[i + 1].x, slope(k[i], k[i + 1])});
  return segments;
}

}  // namespace hazmon
