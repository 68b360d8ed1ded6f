#pragma once

#include <optional>
#include <vector>

#include "pbtk/jsonio.hpp"
#include "pbtk/kernel.hpp"

namespace pbtk {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool strictly_inside(const Interval& outer) const {
    return lo > outer.lo && hi < outer.hi;
  }
  bool empty() const { return hi <= lo; }
};

/// Intersection of two closed intervals; empty() if they do not overlap
/// on a set of positive length.
Interval intersect(const Interval& a, const Interval& b);

// One monotone transition. The derivative profile is a mollified trapezoid:
// kernel shoulders of width `shoulder` at both ends of [start, end] and a
// flat middle at |derivative| = slope, so the slope cap is attained on an
// interval and never exceeded. Levels at the endpoints are stored exactly;
// |level_after - level_before| agrees with slope * (length - shoulder) up
// to rounding.
struct RampSegment {
  double start = 0.0;
  double end = 0.0;
  double shoulder = 0.0;  // 0 < shoulder <= (end - start) / 2
  double slope = 0.0;     // plateau |derivative|
  double level_before = 0.0;
  double level_after = 0.0;

  double amplitude() const { return level_after - level_before; }
  double value(double x) const;
  double deriv(double x) const;
  /// sup of |second derivative| over the segment.
  double deriv2_bound() const { return slope * kernel_slope_max / shoulder; }
};

/// Build a transition of the given |amplitude| that ends exactly at
/// `end_at`, fitting inside [end_at - avail, end_at]. If `slope` is set it
/// is attained (the derivative plateau is nonempty); otherwise a gentle
/// slope of 2*amplitude/avail is used. Throws InfeasibleSpec when
/// slope * avail <= amplitude.
RampSegment ramp_ending_at(double end_at, double avail, double level_before,
                           double level_after, std::optional<double> slope = {});

/// Mirror image: transition starting exactly at `start_at`, fitting inside
/// [start_at, start_at + avail].
RampSegment ramp_starting_at(double start_at, double avail, double level_before,
                             double level_after, std::optional<double> slope = {});

// A compactly supported piecewise-smooth-ramp function of one variable.
// Between segments the value is constant, so plateau values are exact
// doubles; in particular functions promised to reach 1 return exactly 1.0
// there. The analytic derivative never exceeds deriv_cap().
class SmoothFn1D {
 public:
  SmoothFn1D() = default;

  /// Assemble from sorted, disjoint segments with matching levels
  /// (levels start and end at 0). Validates geometry.
  static SmoothFn1D assemble(std::vector<RampSegment> segments,
                             Interval design_support,
                             std::optional<Interval> plateau = {},
                             bool range01 = true);

  double value(double x) const;
  double deriv(double x) const;

  /// Hull of the constructed segments; strictly inside design_support().
  Interval support() const;
  /// Maximal intervals on which the value is not identically zero
  /// (segments joined across nonzero constant gaps).
  std::vector<Interval> value_parts() const;
  /// Intervals where the derivative can be nonzero: the ramp segments.
  std::vector<Interval> deriv_parts() const;
  /// The open interval the function promised to live in.
  Interval design_support() const { return design_support_; }
  const std::optional<Interval>& plateau() const { return plateau_; }

  double deriv_cap() const { return deriv_cap_; }
  double deriv2_cap() const { return deriv2_cap_; }
  double sup_abs() const { return sup_abs_; }
  bool range01() const { return range01_; }
  bool zero() const { return segments_.empty(); }

  const std::vector<RampSegment>& segments() const { return segments_; }

  SmoothFn1D translated(double dx) const;
  /// x-axis dilation by `factor` > 0: support scales by factor, slopes by
  /// 1/factor, values unchanged.
  SmoothFn1D dilated(double factor) const;

  Json descriptor() const;
  static SmoothFn1D from_descriptor(const Json& j);

 private:
  std::vector<RampSegment> segments_;
  Interval design_support_;
  std::optional<Interval> plateau_;
  bool range01_ = true;
  double deriv_cap_ = 0.0;
  double deriv2_cap_ = 0.0;
  double sup_abs_ = 0.0;
};

struct BumpSpec {
  Interval support;                       // open
  Interval plateau;                       // closed, possibly a single point
  std::optional<double> target_deriv_sup;  // exact required max |f'|
};

/// Bump rising 0 -> 1 -> 0 with plateau value exactly 1. When
/// target_deriv_sup is set, the rising ramp attains it and no point
/// exceeds it.
SmoothFn1D make_ramp(const BumpSpec& spec);

/// Cutoff equal to 1 on plateau_region, 0 outside support, range [0,1].
SmoothFn1D make_plateau_cutoff(Interval support, Interval plateau_region);

// Odd 1-Lipschitz map that collapses [-alpha, alpha] to 0 and moves no
// point by more than (1+delta)*alpha. alpha = 0 gives the identity.
class ShrinkMap {
 public:
  ShrinkMap() = default;
  ShrinkMap(double alpha, double delta) : alpha_(alpha), delta_(delta) {}

  double value(double x) const;
  double deriv(double x) const;  // in [0, 1]
  double alpha() const { return alpha_; }
  double delta() const { return delta_; }
  bool identity() const { return alpha_ == 0.0; }
  double deriv2_cap() const {
    return alpha_ == 0.0 ? 0.0 : kernel_slope_max / (delta_ * alpha_);
  }

 private:
  double alpha_ = 0.0;
  double delta_ = 1e-3;
};

ShrinkMap make_shrink(double alpha, double delta);

struct ComposedPoint {
  double value;
  double grad_norm_bound;
};

/// Chain rule at a point: |(w ∘ F)'| <= |w'(F)| * |F'| <= |F'|.
ComposedPoint compose1d(const ShrinkMap& outer, double inner_value,
                        double inner_grad_norm);

}  // namespace pbtk
