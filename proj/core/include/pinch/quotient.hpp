#pragma once

// Lattices Gamma'_h = (1/h) P Z^n x| Z in S and diameter bounds for the
// compact quotient.

#include "pinch/exactalg.hpp"
#include "pinch/solvgroup.hpp"

#include <optional>

namespace pinch {

struct LatticeData {
  IntMatrix T;
  IntMatrix T_inverse;
  /// Conjugator with Exp(A) P = P T, scaled to |det P| = 1.
  Mat P;
  int h = 1;
  /// |Exp(A) P - P T|_F / |P|_F
  double residual = 0.0;
  /// 2-norm condition number of P.
  double condition = 1.0;

  /// Fiber lattice basis (1/h) P.
  Mat basis() const { return P / static_cast<double>(h); }
  LatticeData refined(int new_h) const;

  /// Unscaled lattice for a known conjugator; computes nothing.
  static LatticeData from_parts(IntMatrix T, Mat P, int h = 1);
};

/// Builds P from the eigenvectors of T matched to the generator blocks of
/// `spectrum`: each conjugate pair contributes the columns Re v, Im v and
/// each positive real root its eigenvector, giving Q with T Q = Q Exp(A);
/// P = Q^{-1}. Throws ConjugationFailure if the residual reaches 1e-8.
LatticeData conjugator(const IntMatrix& T, const Spectrum& spectrum);

/// Largest distance from Exp(A) b to the lattice over basis columns b,
/// measured by rounding coordinates in the basis.
double lattice_invariance_check(const LatticeData& lattice, const BlockGenerator& a);

/// Covering-radius upper bound of the fiber over base point t:
/// 1/2 sqrt(sum |b_i*|^2) for the Gram-Schmidt vectors of
/// (1/h) Exp(-tA) P T^{floor(t)}.
double fiber_covering_bound(const LatticeData& lattice, const BlockGenerator& a, double t);

/// Maximum of fiber_covering_bound over t = j/t_grid, j = 0..t_grid, times the
/// Lipschitz factor 1 + |A|_2 dt e^{|A|_2}.
double fiber_diameter_upper(const LatticeData& lattice, const BlockGenerator& a,
                            int t_grid = 64);

struct DiameterBound {
  /// Diameter of the base circle R/Z (circumference 1).
  double base_diam = 0.5;
  /// Base diameter used by the coarser bound (whole circumference).
  double base_diam_paper = 1.0;
  double fiber_sup = 0.0;
  double upper = 0.0;
  double upper_paper = 0.0;
  std::optional<double> sampled;
};

/// Submersion bound: diam <= base + sup over fibers.
DiameterBound diameter_upper(const LatticeData& lattice, const BlockGenerator& a,
                             int t_grid = 64);

/// Largest shortest-path distance on a grid graph over the fundamental domain
/// (fiber lattice coordinates in [0,1)^n, base in [0,1)), neighbours in every
/// {-1,0,1} direction with deck-transformation wrap-around. Edge weights use
/// the metric at the segment midpoint. An estimate, not a bound; n <= 3.
double sampled_diameter(const LatticeData& lattice, const BlockGenerator& a, int grid);

}  // namespace pinch
