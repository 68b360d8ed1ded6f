#include "pbtk/kernel.hpp"

#include <cmath>

#include "pbtk/quadrature.hpp"

namespace pbtk {
namespace {

inline double phi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double kernel_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t > 0.5) return 1.0 - kernel_step(1.0 - t);  // exact symmetry in FP
  const double a = phi(t);
  const double b = phi(1.0 - t);
  return a / (a + b);
}

double kernel_step_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  if (t > 0.5) return kernel_step_deriv(1.0 - t);
  const double a = phi(t);
  if (a == 0.0) return 0.0;  // flat region below double underflow
  const double b = phi(1.0 - t);
  const double ap = a / (t * t);
  const double bp = b / ((1.0 - t) * (1.0 - t));
  const double s = a + b;
  return (ap * b + a * bp) / (s * s);
}

double kernel_step_integral(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 0.5;
  // W(u) = u - 1/2 + W(1-u) reduces everything to [0, 1/2].
  if (u > 0.5) return u - 0.5 + kernel_step_integral(1.0 - u);
  return gauss_legendre_composite(kernel_step, 0.0, u, 2);
}

}  // namespace pbtk
