#include "pinch/spectra.hpp"

#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pinch {

namespace {

using cplx = std::complex<double>;

void finalize(Spectrum& s) {
  std::sort(s.pairs.begin(), s.pairs.end(), [](const RootPair& a, const RootPair& b) {
    if (a.phi != b.phi) return a.phi < b.phi;
    return a.lambda < b.lambda;
  });
  std::sort(s.reals.begin(), s.reals.end());
  std::sort(s.negative_reals.begin(), s.negative_reals.end());
  double m = 0.0;
  for (const auto& p : s.pairs) m = std::max(m, std::abs(p.lambda));
  for (double l : s.reals) m = std::max(m, std::abs(l));
  for (double l : s.negative_reals) m = std::max(m, std::abs(l));
  s.lambda_max = m;
  s.n = static_cast<int>(2 * s.pairs.size() + s.reals.size() + s.negative_reals.size());
}

// Horner with derivative, coefficients leading first.
void horner(const std::vector<double>& c, cplx x, cplx& value, cplx& deriv) {
  value = c[0];
  deriv = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    deriv = deriv * x + value;
    value = value * x + c[i];
  }
}

}  // namespace

double Spectrum::lambda_sum() const {
  double s = 0.0;
  for (const auto& p : pairs) s += 2.0 * p.lambda;
  for (double l : reals) s += l;
  for (double l : negative_reals) s += l;
  return s;
}

std::vector<double> Spectrum::all_lambdas() const {
  std::vector<double> out;
  for (const auto& p : pairs) {
    out.push_back(p.lambda);
    out.push_back(p.lambda);
  }
  out.insert(out.end(), reals.begin(), reals.end());
  out.insert(out.end(), negative_reals.begin(), negative_reals.end());
  return out;
}

std::vector<cplx> Spectrum::roots() const {
  std::vector<cplx> out;
  for (const auto& p : pairs) {
    const cplx r = std::polar(std::exp(p.lambda), p.phi);
    out.push_back(r);
    out.push_back(std::conj(r));
  }
  for (double l : reals) out.emplace_back(std::exp(l), 0.0);
  for (double l : negative_reals) out.emplace_back(-std::exp(l), 0.0);
  return out;
}

Spectrum roots_closed_form(const PolySpec& spec) {
  spec.validate();
  const int k = spec.k;
  const double sqrt5 = std::sqrt(5.0);
  Spectrum s;
  // y^2 + 3*sign*y + 1 = 0. Both roots share the sign -sign; arg y is 0 for
  // sign = -1 and pi for sign = +1. Their moduli are (3 +- sqrt5)/2.
  const int arg_numerator = spec.sign > 0 ? 1 : 0;  // arg y = arg_numerator * pi
  for (double modulus : {(3.0 + sqrt5) / 2.0, (3.0 - sqrt5) / 2.0}) {
    const double lambda = std::log(modulus) / k;
    // x_j = |y|^{1/k} exp(i*pi*(arg_numerator + 2j)/k); classify m = arg_numerator + 2j
    // modulo 2k exactly.
    for (int j = 0; j < k; ++j) {
      const int m = (arg_numerator + 2 * j) % (2 * k);
      if (m == 0) {
        s.reals.push_back(lambda);
      } else if (m == k) {
        s.negative_reals.push_back(lambda);
      } else if (m < k) {
        s.pairs.push_back({lambda, std::numbers::pi * m / k});
      }
      // k < m < 2k: lower half-plane conjugate of a listed pair.
    }
  }
  if (spec.odd_factor) s.reals.push_back(0.0);
  finalize(s);
  return s;
}

std::vector<cplx> roots_iterative(const IntPoly& p, const AberthOptions& options) {
  if (!p.is_monic()) throw InvalidArgument("roots", "polynomial must be monic");
  const int deg = p.degree();
  if (deg < 1) throw InvalidArgument("roots", "polynomial must have degree >= 1");
  if (p.constant() == 0) throw InvalidArgument("roots", "constant term must be nonzero");

  const std::vector<double> c = p.to_double();
  if (deg == 1) return {cplx(-c[1], 0.0)};

  const double radius = std::pow(std::abs(c.back()), 1.0 / deg);
  std::vector<cplx> z(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / deg + 0.4;
    z[static_cast<std::size_t>(i)] = std::polar(radius, angle);
  }

  auto residual_ok = [&](cplx r, cplx value) {
    return std::abs(value) < options.residual_scale * std::pow(1.0 + std::abs(r), deg);
  };

  int polish_left = -1;
  double worst = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool all_ok = true;
    worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cplx value, deriv;
      horner(c, z[i], value, deriv);
      worst = std::max(worst, std::abs(value));
      if (!residual_ok(z[i], value)) all_ok = false;
      if (value == 0.0) continue;
      const cplx ratio = value / deriv;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
    }
    if (all_ok) {
      if (polish_left < 0) polish_left = options.polish_sweeps;
      if (polish_left-- == 0) return z;
    }
  }
  // Accept if the final state satisfies the residual target.
  bool all_ok = true;
  worst = 0.0;
  for (const auto& r : z) {
    cplx value, deriv;
    horner(c, r, value, deriv);
    worst = std::max(worst, std::abs(value));
    all_ok = all_ok && residual_ok(r, value);
  }
  if (all_ok) return z;
  throw SolverFailure("Aberth iteration did not converge for " + p.to_string(), worst);
}

Spectrum spectrum_from_roots(const std::vector<cplx>& roots, double real_tol) {
  Spectrum s;
  for (const auto& r : roots) {
    const double mod = std::abs(r);
    if (std::abs(r.imag()) <= real_tol * (1.0 + mod)) {
      if (r.real() > 0) {
        s.reals.push_back(std::log(mod));
      } else {
        s.negative_reals.push_back(std::log(mod));
      }
    } else if (r.imag() > 0) {
      s.pairs.push_back({std::log(mod), std::arg(r)});
    }
  }
  finalize(s);
  if (s.n != static_cast<int>(2 * s.pairs.size() + s.reals.size() + s.negative_reals.size())) {
    throw InvalidArgument("roots", "inconsistent root classification");
  }
  return s;
}

double match_roots(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("roots", "root multisets differ in size");
  }
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  double worst = 0.0;
  for (std::size_t round = 0; round < a.size(); ++round) {
    double best = INFINITY;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used_b[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

SpectralBound verify_spectral_bound(const Spectrum& spectrum) {
  if (spectrum.n < 1) throw InvalidArgument("spectra", "empty spectrum");
  const double limit = 2.0 / spectrum.n;
  return {spectrum.lambda_max < limit, limit - spectrum.lambda_max};
}

bool check_not_nilcoverable(const Spectrum& spectrum, double tol) {
  if (!(tol > 0)) throw InvalidArgument("spectra", "tolerance must be positive");
  for (double l : spectrum.all_lambdas()) {
    if (std::abs(l) > tol) return true;
  }
  return false;
}

}  // namespace pinch
