#pragma once

namespace pbtk {

// C-infinity transition kernel built from phi(t) = exp(-1/t).
//
// step(t) rises monotonically from 0 (t <= 0) to 1 (t >= 1) and is flat to
// infinite order at both ends, so piecewise assemblies of it stay smooth.
// It satisfies step(t) + step(1-t) = 1 exactly (enforced in floating point
// by mirroring), which makes the full-shoulder integral exactly 1/2.

/// Smooth step, clamped to {0,1} outside (0,1). Monotone, symmetric.
double kernel_step(double t);

/// d/dt of kernel_step. Max value is kernel_slope_max at t = 1/2.
double kernel_step_deriv(double t);

/// Partial integral  W(u) = ∫_0^u step(t) dt  for u in [0,1]; W(1) = 1/2.
/// Evaluated by composite Gauss-Legendre, accurate to ~1e-15.
double kernel_step_integral(double u);

/// sup |step'| over [0,1]; attained at t = 1/2.
inline constexpr double kernel_slope_max = 2.0;

}  // namespace pbtk
