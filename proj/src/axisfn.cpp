#include "pbtk/axisfn.hpp"

#include <limits>
#include <stdexcept>

namespace pbtk {

Interval AxisFn::support() const {
  if (atoms_.empty()) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return Interval{-inf, inf};
  }
  Interval s = atoms_.front().support();
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    s = intersect(s, atoms_[i].support());
  }
  return s;
}

std::vector<Interval> AxisFn::support_parts() const {
  std::vector<Interval> parts;
  bool first = true;
  for (const auto& a : atoms_) {
    const std::vector<Interval> ap =
        a.deriv_order == 0 ? a.fn->value_parts() : a.fn->deriv_parts();
    if (first) {
      parts = ap;
      first = false;
      continue;
    }
    std::vector<Interval> next;
    for (const auto& x : parts) {
      for (const auto& y : ap) {
        const Interval z = intersect(x, y);
        if (!z.empty()) next.push_back(z);
      }
    }
    parts = std::move(next);
    if (parts.empty()) break;
  }
  return parts;
}

double AxisFn::sup_bound() const {
  double b = 1.0;
  for (const auto& a : atoms_) b *= a.sup_bound();
  return b;
}

double AxisFn::deriv_bound() const {
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    double term = atoms_[i].deriv_bound();
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      if (j != i) term *= atoms_[j].sup_bound();
    }
    total += term;
  }
  return total;
}

bool AxisFn::same_structure(const AxisFn& other) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].fn.get() != other.atoms_[i].fn.get() ||
        atoms_[i].deriv_order != other.atoms_[i].deriv_order) {
      return false;
    }
  }
  return true;
}

bool AxisFn::nonneg01() const {
  for (const auto& a : atoms_) {
    if (a.deriv_order != 0 || !a.fn->range01()) return false;
  }
  return true;
}

std::vector<AxisFn> AxisFn::derivative_terms() const {
  if (!order0()) {
    throw std::logic_error("derivative_terms requires an order-0 product");
  }
  std::vector<AxisFn> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    AxisFn term;
    term.atoms_ = atoms_;
    term.atoms_[i].deriv_order = 1;
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace pbtk
