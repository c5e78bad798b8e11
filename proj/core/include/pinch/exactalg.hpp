#pragma once

// Exact integer polynomials and matrices. Everything here runs on GMP
// integers; nothing is rounded.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace pinch {

using BigInt = mpz_class;

/// Parameters of the polynomial family x^{2k} + sign*3*x^k + 1, optionally
/// multiplied by (x - 1) to reach odd degree.
struct PolySpec {
  int k = 1;
  int sign = 1;
  bool odd_factor = false;

  int degree() const { return odd_factor ? 2 * k + 1 : 2 * k; }

  /// Default family member for dimension n: k = floor(n/2), the (x - 1)
  /// factor for odd n, and sign -1 when k is odd so that no root is a
  /// negative real.
  static PolySpec for_dimension(int n);

  void validate() const;

  friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

/// Integer polynomial, coefficients stored leading first.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& leading() const { return coeffs_.front(); }
  const BigInt& constant() const { return coeffs_.back(); }
  /// Coefficient of x^power.
  const BigInt& coeff_of_power(int power) const;
  bool is_monic() const { return !coeffs_.empty() && coeffs_.front() == 1; }

  std::vector<double> to_double() const;
  std::string to_string() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

IntPoly multiply(const IntPoly& a, const IntPoly& b);

/// Square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);

  int size() const { return n_; }
  BigInt& operator()(int i, int j) { return entries_[index(i, j)]; }
  const BigInt& operator()(int i, int j) const { return entries_[index(i, j)]; }

  /// Entries as int64. Throws if any entry does not fit.
  std::vector<long long> to_int64() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<BigInt> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

IntPoly build_polynomial(const PolySpec& spec);

/// Frobenius companion: ones on the subdiagonal, last column -c_0 ... -c_{n-1}.
IntMatrix companion_matrix(const IntPoly& p);

/// Bareiss fraction-free elimination.
BigInt det_exact(const IntMatrix& m);

/// det(xI - M) by Faddeev-LeVerrier; every division is exact.
IntPoly charpoly_exact(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Exact inverse of a unimodular matrix through Cayley-Hamilton.
IntMatrix inverse_unimodular(const IntMatrix& m);

}  // namespace pinch
