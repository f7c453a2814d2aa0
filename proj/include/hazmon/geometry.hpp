#ifndef HAZMON_GEOMETRY_HPP
#define HAZMON_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace hazmon {

struct Point {
  double x;
  double y;
};

// A cumulative-sum diagram: at least two points, strictly increasing in x,
// all coordinates finite.  Construction validates; ties in x are rejected.
class CusumDiagram {
 public:
  explicit CusumDiagram(std::vector<Point> points);
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Point> points_;
};

// Continuous piecewise-linear function given by knots with strictly
// increasing x.  A single knot denotes a constant is not allowed; at least
// two knots are required.
class PiecewiseLinearFn {
 public:
  explicit PiecewiseLinearFn(std::vector<Point> knots);

  double operator()(double x) const;        // x must lie in [xmin, xmax]
  double left_derivative(double x) const;   // x in (xmin, xmax]
  double right_derivative(double x) const;  // x in [xmin, xmax)

  // Generalized inverse inf{x : f(x) >= y} for a nondecreasing function.
  // y must lie in [f(xmin), f(xmax)].
  double inverse_lower(double y) const;

  double xmin() const { return knots_.front().x; }
  double xmax() const { return knots_.back().x; }
  const std::vector<Point>& knots() const { return knots_; }

 private:
  std::size_t segment_of(double x) const;
  std::vector<Point> knots_;
};

// Greatest convex minorant of the piecewise-linear interpolation of a
// diagram.  Knots are a subset of the diagram points; the first and last
// diagram points are always knots.  Interior points whose adjacent chord
// slopes agree to within a relative tolerance of 1e-12 are treated as
// collinear and dropped, which leaves the function unchanged.
PiecewiseLinearFn gcm(const CusumDiagram& diagram);

// One piece of a step function defined on [x_lo, x_hi).
struct SlopeSegment {
  double x_lo;
  double x_hi;
  double slope;
};

// The GCM derivative as a step function: the slopes form the isotonic
// (weighted least-squares, nondecreasing) regression of the diagram's chord
// slopes with the x-gaps as weights.
std::vector<SlopeSegment> gcm_slopes_as_isotonic(const CusumDiagram& diagram);

}  // namespace hazmon

#endif
