#pragma once

// Curvature of the left-invariant metric, evaluated at the identity in the
// orthonormal basis (e_1..e_n, e_0) of the Lie algebra.

#include "pinch/solvgroup.hpp"

#include <cstdint>

namespace pinch {

/// (X', x0) bracket: [X,Y] = (x0*A*Y' - y0*A*X', 0).
TangentVector bracket(const TangentVector& x, const TangentVector& y, const BlockGenerator& a);

/// Matrix of ad_X in the orthonormal basis, acting on stacked (n+1)-vectors.
Mat ad_matrix(const TangentVector& x, const BlockGenerator& a);

/// Metric adjoint (ad_X)^*: the transpose of ad_matrix.
Mat ad_star(const TangentVector& x, const BlockGenerator& a);

/// <R(X,Y)Y,X> from the five-term formula for left-invariant metrics:
///   1/4 |ad*_X Y + ad*_Y X|^2 - <ad*_X X, ad*_Y Y> - 3/4 |[X,Y]|^2
///   - 1/2 <[[X,Y],Y],X> - 1/2 <[[Y,X],X],Y>.
double curvature_numerator(const TangentVector& x, const TangentVector& y,
                           const BlockGenerator& a);

/// Orthonormal pair spanning a 2-plane in R^{n+1}.
struct Plane {
  Vec u;
  Vec w;

  /// Gram-Schmidt on (u, w). Throws if they are (numerically) parallel.
  static Plane orthonormalized(const Vec& u, const Vec& w);
};

/// K(P) = curvature_numerator(u, w). Throws if P is not orthonormal to 1e-10.
double sectional_curvature(const Plane& plane, const BlockGenerator& a);

/// Allocation-free evaluator used by the maximizer. Works on stacked
/// (n+1)-vectors and applies A block by block.
class CurvatureModel {
 public:
  explicit CurvatureModel(const BlockGenerator& a);

  int dim() const { return n_ + 1; }
  double numerator(const double* x, const double* y) const;
  /// numerator / (|x|^2 |y|^2 - <x,y>^2); valid for any basis of the plane.
  double sectional(const double* x, const double* y) const;

 private:
  void apply(const double* in, double* out, bool transpose) const;
  void bracket(const double* x, const double* y, double* out) const;
  void ad_star(const double* x, const double* y, double* out) const;

  struct Block {
    int start;
    bool rot2;
    double lambda;
    double phi;
  };
  int n_ = 0;
  std::vector<Block> blocks_;
};

struct MaximizerOptions {
  int max_steps = 200;
  double fd_step = 1e-5;
  double improvement_tol = 1e-12;
  double initial_step = 0.25;
  /// |<u,w>| above 1 - collapse_tol after a step counts as a collapse.
  double collapse_tol = 1e-8;
};

struct CurvatureReport {
  double max_abs = 0.0;
  /// Signed sectional curvature at argmax_plane.
  double value_at_max = 0.0;
  Plane argmax_plane;
  double analytic_bound = 0.0;
  int samples_used = 0;
  int coordinate_seeds = 0;
  int discarded = 0;
  std::uint64_t seed = 0;
};

/// 11/4 * lambda_max^2.
double analytic_bound(double lambda_max);
double analytic_bound(const Spectrum& spectrum);

/// Multistart local ascent of |K| over 2-planes at the identity. Seeds are all
/// coordinate planes followed by budget - #coordinate planes random
/// orthonormal pairs. Deterministic in (a, budget, seed, options).
CurvatureReport max_abs_curvature(const BlockGenerator& a, int budget, std::uint64_t seed,
                                  const MaximizerOptions& options = {});

}  // namespace pinch
