#include "pbtk/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace pbtk {
namespace {

// 24-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; rule is
// symmetric).
constexpr std::array<double, 12> gl24_x = {
    0.064056892862605626085, 0.191118867473616309159, 0.315042679696163374387,
    0.433793507626045138487, 0.545421471388839535658, 0.648093651936975569252,
    0.740124191578554364244, 0.820001985973902921954, 0.886415527004401034213,
    0.938274552002732758524, 0.974728555971309498198, 0.995187219997021360180};
constexpr std::array<double, 12> gl24_w = {
    0.127938195346752156974, 0.125837456346828296121, 0.121670472927803391204,
    0.115505668053725601353, 0.107444270115965634783, 0.097618652104113888270,
    0.086190161531953275917, 0.073346481411080305734, 0.059298584915436780746,
    0.044277438817419806169, 0.028531388628933663181, 0.012341229799987199547};

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl24_x.size(); ++i) {
    acc += gl24_w[i] * (f(mid - half * gl24_x[i]) + f(mid + half * gl24_x[i]));
  }
  return half * acc;
}

double gauss_legendre_composite(const std::function<double(double)>& f, double a,
                                double b, std::size_t panels) {
  if (panels == 0) panels = 1;
  const double h = (b - a) / static_cast<double>(panels);
  double acc = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    acc += gauss_legendre(f, a + h * static_cast<double>(k),
                          a + h * static_cast<double>(k + 1));
  }
  return acc;
}

double gauss_legendre_graded(const std::function<double(double)>& f, double a,
                             double b, std::size_t panels, double ratio) {
  if (panels == 0) panels = 1;
  // Panel widths form a geometric sequence shrinking toward b.
  std::vector<double> widths(panels);
  double w = 1.0, total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    widths[k] = w;
    total += w;
    w *= ratio;
  }
  double acc = 0.0, lo = a;
  const double scale = (b - a) / total;
  for (std::size_t k = 0; k < panels; ++k) {
    const double hi = (k + 1 == panels) ? b : lo + widths[k] * scale;
    acc += gauss_legendre(f, lo, hi);
    lo = hi;
  }
  return acc;
}

}  // namespace pbtk
