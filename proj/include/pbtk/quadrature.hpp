#pragma once

#include <cstddef>
#include <functional>

namespace pbtk {

/// 24-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Composite Gauss-Legendre: [a, b] split into `panels` equal panels.
double gauss_legendre_composite(const std::function<double(double)>& f, double a,
                                double b, std::size_t panels);

/// Composite rule with panels refined geometrically toward b (ratio < 1
/// shrinks panels near b). Used for integrands steep at the outer edge.
double gauss_legendre_graded(const std::function<double(double)>& f, double a,
                             double b, std::size_t panels, double ratio);

}  // namespace pbtk
