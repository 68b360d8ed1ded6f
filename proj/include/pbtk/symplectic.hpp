#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pbtk/axisfn.hpp"
#include "pbtk/jsonio.hpp"

namespace pbtk {

// Model phase space R^{2n}: one distinguished plane z = (x, y) carrying the
// rectangle that realizes the construction disc (same area, hence
// symplectomorphic), and n-1 annulus planes w_i, each a disc of area
// eps_prime in which all profiles are radial.
struct ModelSpace {
  int n = 2;  // half-dimension; the construction needs 2n > 2
  Interval plane_x;
  Interval plane_y;
  double eps_prime = 1.0;

  int dims() const { return 2 * n; }
  int rings() const { return n - 1; }
  /// Radius of the annulus-plane disc B^2(eps_prime) (disc of *area*
  /// eps_prime).
  double ring_radius() const;
  bool inside(std::span<const double> pt) const;
  Json to_json() const;
  static ModelSpace from_json(const Json& j);
};

// One tensor term  coeff * X(x) * Y(y) * prod_i R_i(|w_i|).
// Ring factors are radial, so same-plane bracket contributions vanish and
// closed-form brackets stay within this class.
struct TensorTerm {
  double coeff = 1.0;
  AxisFn x;
  AxisFn y;
  std::vector<AxisFn> rings;  // size = rings() of the space; is_one allowed

  double value(std::span<const double> pt) const;
  double value_at(double px, double py, std::span<const double> radii) const;
  bool structurally_zero() const;
  double sup_bound() const;
};

// Linear combination of tensor terms: the working class for all functions
// on the model space (constructions, cutoffs, adversaries, brackets).
class TensorFn {
 public:
  TensorFn() = default;
  explicit TensorFn(int half_dim) : n_(half_dim) {}

  int half_dim() const { return n_; }
  const std::vector<TensorTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(TensorTerm t);
  double value(std::span<const double> pt) const;
  double value_at(double px, double py, std::span<const double> radii) const;

  TensorFn scaled(double c) const;
  TensorFn plus(const TensorFn& other) const;
  TensorFn minus(const TensorFn& other) const;
  /// Pointwise product, expanded term by term.
  TensorFn times(const TensorFn& other) const;

  /// Drop zero-coefficient and structurally-zero terms.
  void prune();

  /// sum of |coeff| * prod sup bounds — a cheap global bound.
  double sup_bound() const;

  std::function<double(std::span<const double>)> evaluator() const;

 private:
  int n_ = 2;
  std::vector<TensorTerm> terms_;
};

/// Closed-form Poisson bracket {F, G} = sum_k (dF/dx_k dG/dy_k - dF/dy_k
/// dG/dx_k) as another TensorFn. Radial annulus factors of the same plane
/// commute, so only the distinguished-plane derivatives contribute:
/// {X⊗Y⊗R, U⊗V⊗Q} = [(X'U)⊗(YV') - (XU')⊗(Y'V)] ⊗ (R_i Q_i)_i.
TensorFn bracket_closed_form(const TensorFn& F, const TensorFn& G);

/// Factorized path for pairs sharing identical annulus factors, as in
/// f = f_plane ⊗ h^(n-1): returns {F,G} = plane bracket ⊗ h^2 factors.
/// Throws StructureMismatch if the pair does not have that shape.
TensorFn bracket_shared_annulus(const TensorFn& F, const TensorFn& G);

/// Central finite-difference bracket at a point (independent oracle for the
/// closed form). `domain` bounds the evaluation box; throws DomainEdge when
/// the stencil would leave it.
double bracket_finite_difference(
    const std::function<double(std::span<const double>)>& F,
    const std::function<double(std::span<const double>)>& G,
    std::span<const double> pt, double step,
    const std::vector<Interval>& domain);

struct SupNormReport {
  double grid_max = 0.0;
  double certified_upper_bound = 0.0;
  std::vector<double> argmax;      // point in R^{2n}
  std::vector<double> resolution;  // per-axis grid step
  Json to_json() const;
};

struct GridSpec {
  std::size_t plane_nx = 2048;
  std::size_t plane_ny = 2048;
  std::size_t ring_n = 512;  // radial samples per annulus plane
};

/// Certified sup-norm of a TensorFn over the model space. Single tensor
/// terms factor into per-axis 1D problems (tight); sums are handled by
/// grouping terms with identical ring words and reducing to the plane.
SupNormReport sup_norm(const TensorFn& F, const ModelSpace& space,
                       const GridSpec& grid);

/// Generic gridded sup-norm with caller-supplied Lipschitz bound:
/// certified = grid max + L * (cell diagonal) / 2. Throws
/// ResolutionTooCoarse when certified / grid_max > 1.5.
SupNormReport sup_norm_callable(
    const std::function<double(std::span<const double>)>& f,
    const std::vector<Interval>& box, double lipschitz_bound,
    const std::vector<std::size_t>& resolution);

/// Max |f| over a dense grid only (no certification); helper for checks
/// where the analytic bound is known separately.
double grid_max_callable(const std::function<double(std::span<const double>)>& f,
                         const std::vector<Interval>& box,
                         const std::vector<std::size_t>& resolution);

}  // namespace pbtk
