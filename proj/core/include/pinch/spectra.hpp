#pragma once

#include "pinch/exactalg.hpp"

#include <complex>
#include <vector>

namespace pinch {

/// A complex-conjugate root pair r, conj(r) with r = exp(lambda + i*phi),
/// phi in (0, pi).
struct RootPair {
  double lambda = 0.0;
  double phi = 0.0;
};

/// Roots of a construction polynomial in logarithmic coordinates.
struct Spectrum {
  int n = 0;
  std::vector<RootPair> pairs;
  /// ln r for real positive roots.
  std::vector<double> reals;
  /// ln|r| for real negative roots. Empty for every default-sign PolySpec;
  /// a non-empty list makes the spectrum unrepresentable by a real generator.
  std::vector<double> negative_reals;
  double lambda_max = 0.0;

  /// Sum of lambda over all roots counted with multiplicity.
  double lambda_sum() const;
  /// Every lambda, conjugate pairs listed twice.
  std::vector<double> all_lambdas() const;
  /// Roots as complex numbers (pairs expanded).
  std::vector<std::complex<double>> roots() const;
};

Spectrum roots_closed_form(const PolySpec& spec);

struct AberthOptions {
  int max_iterations = 500;
  /// Residual target |p(r)| < residual_scale * (1 + |r|)^deg.
  double residual_scale = 1e-13;
  int polish_sweeps = 3;
};

/// All complex roots of a monic integer polynomial by Aberth-Ehrlich
/// simultaneous iteration. Deterministic: starts are evenly spaced on a
/// circle of radius |c_0|^{1/deg} with a fixed angular offset.
std::vector<std::complex<double>> roots_iterative(const IntPoly& p,
                                                  const AberthOptions& options = {});

/// Sorts raw roots into a Spectrum. Roots with |Im r| <= real_tol*(1+|r|)
/// count as real; upper half-plane roots become pairs (their conjugates are
/// assumed present and dropped).
Spectrum spectrum_from_roots(const std::vector<std::complex<double>>& roots,
                             double real_tol = 1e-9);

/// Largest distance between matched roots of two multisets of equal size.
/// Greedy matching: repeatedly pair the globally closest remaining roots.
double match_roots(const std::vector<std::complex<double>>& a,
                   const std::vector<std::complex<double>>& b);

struct SpectralBound {
  bool holds = false;
  double margin = 0.0;
};

/// lambda_max < 2/n; margin = 2/n - lambda_max.
SpectralBound verify_spectral_bound(const Spectrum& spectrum);

/// True iff some |lambda| exceeds tol, i.e. Exp(A) has an eigenvalue off the
/// unit circle.
bool check_not_nilcoverable(const Spectrum& spectrum, double tol);

}  // namespace pinch
