#include <vector>

#include "pbtk/errors.hpp"
#include "pbtk/symplectic.hpp"

namespace pbtk {

// Annulus planes never contribute: both factors there are radial, and
// {A(|w|), B(|w|)} = A'B' {|w|, |w|} = 0. Only the distinguished plane's
// derivatives survive, with the ring factors multiplying through.
TensorFn bracket_closed_form(const TensorFn& F, const TensorFn& G) {
  if (F.half_dim() != G.half_dim()) {
    throw std::invalid_argument("bracket of functions on different spaces");
  }
  TensorFn out(F.half_dim());
  for (const auto& a : F.terms()) {
    for (const auto& b : G.terms()) {
      std::vector<AxisFn> rings(a.rings.size());
      for (std::size_t i = 0; i < a.rings.size(); ++i) {
        rings[i] = a.rings[i].times(b.rings[i]);
      }
      const double c = a.coeff * b.coeff;
      for (const auto& dax : a.x.derivative_terms()) {
        for (const auto& dby : b.y.derivative_terms()) {
          TensorTerm t;
          t.coeff = c;
          t.x = dax.times(b.x);
          t.y = a.y.times(dby);
          t.rings = rings;
          out.add_term(std::move(t));
        }
      }
      for (const auto& day : a.y.derivative_terms()) {
        for (const auto& dbx : b.x.derivative_terms()) {
          TensorTerm t;
          t.coeff = -c;
          t.x = a.x.times(dbx);
          t.y = day.times(b.y);
          t.rings = rings;
          out.add_term(std::move(t));
        }
      }
    }
  }
  out.prune();
  return out;
}

TensorFn bracket_shared_annulus(const TensorFn& F, const TensorFn& G) {
  if (F.half_dim() != G.half_dim()) {
    throw StructureMismatch("pair lives on different spaces");
  }
  if (F.terms().size() != 1 || G.terms().size() != 1) {
    throw StructureMismatch("factorized bracket path requires single tensor terms");
  }
  const TensorTerm& a = F.terms().front();
  const TensorTerm& b = G.terms().front();
  for (std::size_t i = 0; i < a.rings.size(); ++i) {
    if (!a.rings[i].same_structure(b.rings[i])) {
      throw StructureMismatch("annulus factors differ between the pair");
    }
  }
  TensorFn out(F.half_dim());
  std::vector<AxisFn> rings2(a.rings.size());
  for (std::size_t i = 0; i < a.rings.size(); ++i) {
    rings2[i] = a.rings[i].times(a.rings[i]);
  }
  const double c = a.coeff * b.coeff;
  for (const auto& dax : a.x.derivative_terms()) {
    for (const auto& dby : b.y.derivative_terms()) {
      TensorTerm t;
      t.coeff = c;
      t.x = dax.times(b.x);
      t.y = a.y.times(dby);
      t.rings = rings2;
      out.add_term(std::move(t));
    }
  }
  for (const auto& day : a.y.derivative_terms()) {
    for (const auto& dbx : b.x.derivative_terms()) {
      TensorTerm t;
      t.coeff = -c;
      t.x = a.x.times(dbx);
      t.y = day.times(b.y);
      t.rings = rings2;
      out.add_term(std::move(t));
    }
  }
  out.prune();
  return out;
}

double bracket_finite_difference(
    const std::function<double(std::span<const double>)>& F,
    const std::function<double(std::span<const double>)>& G,
    std::span<const double> pt, double step,
    const std::vector<Interval>& domain) {
  if (step <= 0.0) throw OutOfRange("finite-difference step must be positive");
  const std::size_t dims = pt.size();
  if (dims % 2 != 0) throw std::invalid_argument("odd-dimensional point");
  if (domain.size() != dims) throw std::invalid_argument("domain/point mismatch");
  for (std::size_t i = 0; i < dims; ++i) {
    if (pt[i] < domain[i].lo + step || pt[i] > domain[i].hi - step) {
      throw DomainEdge("stencil leaves the domain at axis " + std::to_string(i));
    }
  }
  std::vector<double> q(pt.begin(), pt.end());
  auto diff = [&](const std::function<double(std::span<const double>)>& f,
                  std::size_t axis) {
    const double saved = q[axis];
    q[axis] = saved + step;
    const double hi = f(q);
    q[axis] = saved - step;
    const double lo = f(q);
    q[axis] = saved;
    return (hi - lo) / (2.0 * step);
  };
  double acc = 0.0;
  for (std::size_t k = 0; k < dims / 2; ++k) {
    const std::size_t ix = 2 * k, iy = 2 * k + 1;
    acc += diff(F, ix) * diff(G, iy) - diff(F, iy) * diff(G, ix);
  }
  return acc;
}

}  // namespace pbtk
