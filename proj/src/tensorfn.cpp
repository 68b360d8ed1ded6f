#include <cmath>
#include <stdexcept>

#include "pbtk/errors.hpp"
#include "pbtk/symplectic.hpp"

namespace pbtk {

double ModelSpace::ring_radius() const {
  return std::sqrt(eps_prime / M_PI);
}

bool ModelSpace::inside(std::span<const double> pt) const {
  if (pt.size() != static_cast<std::size_t>(dims())) return false;
  if (!plane_x.contains(pt[0]) || !plane_y.contains(pt[1])) return false;
  const double r2max = eps_prime / M_PI;
  for (int i = 0; i < rings(); ++i) {
    const double wx = pt[2 + 2 * i], wy = pt[3 + 2 * i];
    if (wx * wx + wy * wy > r2max) return false;
  }
  return true;
}

Json ModelSpace::to_json() const {
  return Json{{"n", n},
              {"plane_x", {plane_x.lo, plane_x.hi}},
              {"plane_y", {plane_y.lo, plane_y.hi}},
              {"eps_prime", eps_prime}};
}

ModelSpace ModelSpace::from_json(const Json& j) {
  ModelSpace m;
  m.n = j.at("n").get<int>();
  m.plane_x = {j.at("plane_x")[0].get<double>(), j.at("plane_x")[1].get<double>()};
  m.plane_y = {j.at("plane_y")[0].get<double>(), j.at("plane_y")[1].get<double>()};
  m.eps_prime = j.at("eps_prime").get<double>();
  return m;
}

double TensorTerm::value(std::span<const double> pt) const {
  double v = coeff * x.eval(pt[0]) * y.eval(pt[1]);
  if (v == 0.0) return 0.0;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    if (rings[i].is_one()) continue;
    const double wx = pt[2 + 2 * i], wy = pt[3 + 2 * i];
    v *= rings[i].eval(std::hypot(wx, wy));
    if (v == 0.0) return 0.0;
  }
  return v;
}

double TensorTerm::value_at(double px, double py,
                            std::span<const double> radii) const {
  double v = coeff * x.eval(px) * y.eval(py);
  if (v == 0.0) return 0.0;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    if (rings[i].is_one()) continue;
    v *= rings[i].eval(radii[i]);
    if (v == 0.0) return 0.0;
  }
  return v;
}

bool TensorTerm::structurally_zero() const {
  if (coeff == 0.0) return true;
  if (x.structurally_zero() || y.structurally_zero()) return true;
  for (const auto& r : rings) {
    if (r.structurally_zero()) return true;
    // Radial factors supported at negative radius only would be zero too,
    // but constructions never produce those.
  }
  return false;
}

double TensorTerm::sup_bound() const {
  double b = std::abs(coeff) * x.sup_bound() * y.sup_bound();
  for (const auto& r : rings) b *= r.sup_bound();
  return b;
}

void TensorFn::add_term(TensorTerm t) {
  if (t.rings.size() != static_cast<std::size_t>(n_ - 1)) {
    throw std::invalid_argument("ring factor count does not match half_dim");
  }
  terms_.push_back(std::move(t));
}

double TensorFn::value(std::span<const double> pt) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.value(pt);
  return v;
}

double TensorFn::value_at(double px, double py,
                          std::span<const double> radii) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.value_at(px, py, radii);
  return v;
}

TensorFn TensorFn::scaled(double c) const {
  TensorFn out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

TensorFn TensorFn::plus(const TensorFn& other) const {
  if (other.n_ != n_) throw std::invalid_argument("half_dim mismatch");
  TensorFn out = *this;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
  return out;
}

TensorFn TensorFn::minus(const TensorFn& other) const {
  return plus(other.scaled(-1.0));
}

TensorFn TensorFn::times(const TensorFn& other) const {
  if (other.n_ != n_) throw std::invalid_argument("half_dim mismatch");
  TensorFn out(n_);
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      TensorTerm t;
      t.coeff = a.coeff * b.coeff;
      t.x = a.x.times(b.x);
      t.y = a.y.times(b.y);
      t.rings.resize(a.rings.size());
      for (std::size_t i = 0; i < a.rings.size(); ++i) {
        t.rings[i] = a.rings[i].times(b.rings[i]);
      }
      out.terms_.push_back(std::move(t));
    }
  }
  out.prune();
  return out;
}

void TensorFn::prune() {
  std::erase_if(terms_, [](const TensorTerm& t) { return t.structurally_zero(); });
}

double TensorFn::sup_bound() const {
  double b = 0.0;
  for (const auto& t : terms_) b += t.sup_bound();
  return b;
}

std::function<double(std::span<const double>)> TensorFn::evaluator() const {
  return [copy = *this](std::span<const double> pt) { return copy.value(pt); };
}

}  // namespace pbtk
