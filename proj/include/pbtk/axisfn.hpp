#pragma once

#include <memory>
#include <vector>

#include "pbtk/smoothfn.hpp"

namespace pbtk {

// One factor of a tensor term along a single axis: a shared SmoothFn1D
// evaluated either as itself or as its first derivative.
struct AxisAtom {
  std::shared_ptr<const SmoothFn1D> fn;
  int deriv_order = 0;  // 0 or 1

  double eval(double x) const {
    return deriv_order == 0 ? fn->value(x) : fn->deriv(x);
  }
  Interval support() const { return fn->support(); }
  double sup_bound() const {
    return deriv_order == 0 ? fn->sup_abs() : fn->deriv_cap();
  }
  double deriv_bound() const {
    return deriv_order == 0 ? fn->deriv_cap() : fn->deriv2_cap();
  }
};

// Product of atoms along one axis; the empty product is the constant 1.
class AxisFn {
 public:
  static AxisFn one() { return AxisFn{}; }
  static AxisFn of(std::shared_ptr<const SmoothFn1D> fn) {
    AxisFn a;
    a.atoms_.push_back(AxisAtom{std::move(fn), 0});
    return a;
  }
  static AxisFn deriv_of(std::shared_ptr<const SmoothFn1D> fn) {
    AxisFn a;
    a.atoms_.push_back(AxisAtom{std::move(fn), 1});
    return a;
  }

  AxisFn times(const AxisFn& other) const {
    AxisFn a = *this;
    a.atoms_.insert(a.atoms_.end(), other.atoms_.begin(), other.atoms_.end());
    return a;
  }

  double eval(double x) const {
    double v = 1.0;
    for (const auto& a : atoms_) {
      v *= a.eval(x);
      if (v == 0.0) return 0.0;
    }
    return v;
  }

  bool is_one() const { return atoms_.empty(); }

  /// Intersection of the factor supports. The product vanishes identically
  /// when this is empty.
  Interval support() const;
  /// Intersection of the factor support parts (derivative factors vanish on
  /// constant gaps, which is what kills the cross terms of the bracket).
  std::vector<Interval> support_parts() const;
  bool structurally_zero() const {
    return !is_one() && support_parts().empty();
  }

  /// sup |product| <= prod of factor sups.
  double sup_bound() const;
  /// sup |d/dx product| via the product rule over factor bounds.
  double deriv_bound() const;

  /// True when both products consist of the same shared functions with the
  /// same derivative orders, in order.
  bool same_structure(const AxisFn& other) const;

  /// All factor functions taken at order 0 with range [0,1] (so the product
  /// is nonnegative and bounded by 1).
  bool nonneg01() const;

  const std::vector<AxisAtom>& atoms() const { return atoms_; }
  bool order0() const {
    for (const auto& a : atoms_)
      if (a.deriv_order != 0) return false;
    return true;
  }

  /// d/dx of the product, expanded by the product rule. Each summand is a
  /// valid AxisFn; requires order0().
  std::vector<AxisFn> derivative_terms() const;

 private:
  std::vector<AxisAtom> atoms_;
};

}  // namespace pbtk
