#include "pinch/exactalg.hpp"

#include "pinch/errors.hpp"

#include <limits>
#include <sstream>

namespace pinch {

PolySpec PolySpec::for_dimension(int n) {
  if (n < 2) {
    throw InvalidArgument("spec", "dimension must be at least 2, got " + std::to_string(n));
  }
  PolySpec spec;
  spec.k = n / 2;
  spec.odd_factor = (n % 2) == 1;
  spec.sign = (spec.k % 2 == 1) ? -1 : 1;
  return spec;
}

void PolySpec::validate() const {
  if (k < 1) {
    throw InvalidArgument("spec", "k must be >= 1, got " + std::to_string(k));
  }
  if (sign != 1 && sign != -1) {
    throw InvalidArgument("spec", "sign must be +1 or -1, got " + std::to_string(sign));
  }
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw InvalidArgument("poly", "polynomial needs at least one coefficient");
  }
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  if (coeffs.size() == 0) {
    throw InvalidArgument("poly", "polynomial needs at least one coefficient");
  }
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

const BigInt& IntPoly::coeff_of_power(int power) const {
  return coeffs_.at(static_cast<std::size_t>(degree() - power));
}

std::vector<double> IntPoly::to_double() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_d());
  return out;
}

std::string IntPoly::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i].get_str();
  }
  os << ']';
  return os.str();
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      out[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return IntPoly(std::move(out));
}

IntMatrix::IntMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw InvalidArgument("matrix", "negative dimension");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) {
      throw InvalidArgument("matrix", "matrix must be square");
    }
    int j = 0;
    for (long v : row) (*this)(i, j++) = v;
    ++i;
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<long long> IntMatrix::to_int64() const {
  std::vector<long long> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!e.fits_slong_p()) {
      throw InvalidArgument("matrix", "entry does not fit in 64 bits");
    }
    out.push_back(e.get_si());
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("matrix", "dimension mismatch");
  const int n = a.size();
  IntMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      if (a(i, l) == 0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += a(i, l) * b(l, j);
    }
  }
  return c;
}

IntPoly build_polynomial(const PolySpec& spec) {
  spec.validate();
  std::vector<BigInt> coeffs(static_cast<std::size_t>(2 * spec.k + 1), 0);
  coeffs.front() = 1;
  coeffs[static_cast<std::size_t>(spec.k)] = 3 * spec.sign;
  coeffs.back() = 1;
  IntPoly base(std::move(coeffs));
  if (!spec.odd_factor) return base;
  return multiply(base, IntPoly{1, -1});
}

IntMatrix companion_matrix(const IntPoly& p) {
  if (!p.is_monic()) {
    throw InvalidArgument("companion", "polynomial must be monic, got " + p.to_string());
  }
  const int n = p.degree();
  if (n < 1) throw InvalidArgument("companion", "polynomial must have degree >= 1");
  IntMatrix c(n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p.coeff_of_power(i);
  return c;
}

BigInt det_exact(const IntMatrix& m) {
  const int n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a(r, k) != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        BigInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntPoly charpoly_exact(const IntMatrix& m) {
  const int n = m.size();
  // c[i] is the coefficient of x^i.
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix mk(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = std::move(next);
    BigInt trace = 0;
    IntMatrix am = m * mk;
    for (int i = 0; i < n; ++i) trace += am(i, i);
    BigInt q;
    BigInt divisor = k;
    mpz_divexact(q.get_mpz_t(), trace.get_mpz_t(), divisor.get_mpz_t());
    c[static_cast<std::size_t>(n - k)] = -q;
  }
  std::vector<BigInt> leading_first(c.rbegin(), c.rend());
  return IntPoly(std::move(leading_first));
}

bool is_unimodular(const IntMatrix& m) {
  const BigInt d = det_exact(m);
  return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m)) {
    throw InvalidArgument("matrix", "inverse_unimodular needs determinant +1 or -1");
  }
  const int n = m.size();
  const IntPoly p = charpoly_exact(m);
  IntMatrix b = IntMatrix::identity(n);
  for (int power = n - 1; power >= 1; --power) {
    IntMatrix next = m * b;
    for (int i = 0; i < n; ++i) next(i, i) += p.coeff_of_power(power);
    b = std::move(next);
  }
  // m^{-1} = -b / c_0 with c_0 = +-1.
  const BigInt scale = -p.constant();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) *= scale;
  }
  return b;
}

}  // namespace pinch
