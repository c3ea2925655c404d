#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pitheory/error.hpp"
#include "pitheory/primes.hpp"

namespace pitheory {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
inline std::vector<Integer> compute_cyclotomic_polynomial(
    std::uint64_t n, const std::map<std::uint64_t, std::vector<Integer>>& known) {
  // x^n - 1 divided by every Phi_d with d | n, d < n.
  std::vector<Integer> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& den = known.at(d);
    const std::size_t dd = den.size() - 1;
    std::vector<Integer> quotient(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      Integer q = num[i];  // den is monic
      quotient[i - dd] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= q * den[j];
    }
    num = std::move(quotient);
  }
  return num;
}

class CyclotomicPolynomials {
 public:
  static const std::vector<Integer>& get(std::uint64_t n) {
    static CyclotomicPolynomials instance;
    std::lock_guard lock(instance.mutex_);
    auto& cache = instance.cache_;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d != 0 || cache.contains(d)) continue;
      cache.emplace(d, compute_cyclotomic_polynomial(d, cache));
    }
    return cache.at(n);
  }

 private:
  std::mutex mutex_;
  std::map<std::uint64_t, std::vector<Integer>> cache_;  // node-based: references stay valid
};

/// Folds exponents modulo n and reduces modulo Phi_n; returns phi(n) coordinates.
inline std::vector<Rational> reduce_power_form(std::vector<Rational> v, std::uint64_t n) {
  std::vector<Rational> folded(n, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) folded[i % n] += v[i];
  }
  const auto& phi_poly = CyclotomicPolynomials::get(n);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = folded.size(); i-- > deg;) {
    if (folded[i] == 0) continue;
    Rational coef = folded[i];
    for (std::size_t j = 0; j <= deg; ++j) folded[i - deg + j] -= coef * phi_poly[j];
  }
  folded.resize(deg);
  return folded;
}

/// Coordinates in Q(zeta_big) of the element with coordinates `coords` in
/// Q(zeta_small), small | big.
inline std::vector<Rational> lift_coordinates(std::span<const Rational> coords, std::uint64_t small,
                                              std::uint64_t big) {
  if (small == big) return {coords.begin(), coords.end()};
  const std::uint64_t step = big / small;
  std::vector<Rational> spread(static_cast<std::size_t>(step * (coords.size() - 1) + 1), 0);
  for (std::size_t j = 0; j < coords.size(); ++j) spread[j * step] = coords[j];
  return reduce_power_form(std::move(spread), big);
}

/// Recognizes elements of Q(zeta_big) lying in Q(zeta_small) and returns their
/// coordinates there. Built once per (big, small) pair.
class SubfieldSolver {
 public:
  SubfieldSolver(std::uint64_t big, std::uint64_t small) : big_(big), small_(small) {
    const std::size_t rows = euler_phi(big);
    const std::size_t cols = euler_phi(small);
    basis_.resize(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Rational> unit(cols, 0);
      unit[j] = 1;
      basis_[j] = lift_coordinates(unit, small, big);
    }
    // Row-reduce [B | I_rows] restricted to pivot rows to get a left inverse.
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) m[i][j] = basis_[j][i];
    std::vector<std::size_t> row_ids(rows);
    std::iota(row_ids.begin(), row_ids.end(), 0);
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) aug[i][i] = 1;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t piv = r;
      while (piv < rows && m[piv][j] == 0) ++piv;
      if (piv == rows) throw CheckFailed("subfield basis is singular");
      std::swap(m[piv], m[r]);
      std::swap(aug[piv], aug[r]);
      Rational inv = 1 / m[r][j];
      for (auto& x : m[r]) x *= inv;
      for (auto& x : aug[r]) x *= inv;
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || m[i][j] == 0) continue;
        Rational f = m[i][j];
        for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
        for (std::size_t k = 0; k < rows; ++k) aug[i][k] -= f * aug[r][k];
      }
      ++r;
    }
    left_inverse_.assign(aug.begin(), aug.begin() + static_cast<std::ptrdiff_t>(cols));
  }

  std::optional<std::vector<Rational>> express(std::span<const Rational> x) const {
    const std::size_t cols = basis_.size();
    std::vector<Rational> c(cols, 0);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < x.size(); ++i)
        if (left_inverse_[j][i] != 0 && x[i] != 0) c[j] += left_inverse_[j][i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < cols; ++j)
        if (c[j] != 0) s += c[j] * basis_[j][i];
      if (s != x[i]) return std::nullopt;
    }
    return c;
  }

  static std::shared_ptr<const SubfieldSolver> get(std::uint64_t big, std::uint64_t small) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const SubfieldSolver>> cache;
    {
      std::lock_guard lock(mutex);
      if (auto it = cache.find({big, small}); it != cache.end()) return it->second;
    }
    auto solver = std::make_shared<const SubfieldSolver>(big, small);
    std::lock_guard lock(mutex);
    return cache.emplace(std::pair{big, small}, std::move(solver)).first->second;
  }

 private:
  std::uint64_t big_;
  std::uint64_t small_;
  std::vector<std::vector<Rational>> basis_;
  std::vector<std::vector<Rational>> left_inverse_;
};

}  // namespace detail

/// An exact element of a cyclotomic field.
///
/// Stored as rational coordinates over the power basis 1, z, ..., z^(phi(n)-1)
/// of Q(z), z = exp(2 pi i / n), with n the smallest conductor of a field
/// containing the value. The representation is unique, so structural equality
/// is field equality.
class Cyclotomic {
 public:
  Cyclotomic() : coeffs_{Rational(0)} {}
  Cyclotomic(long value) : coeffs_{Rational(value)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value) : coeffs_{value} {  // NOLINT(google-explicit-constructor)
    coeffs_[0].canonicalize();
  }

  /// Builds the value from coordinates over Q(zeta_n), canonicalizing.
  static Cyclotomic from_coordinates(std::uint64_t n, std::vector<Rational> coords) {
    if (n == 0) throw InvalidArgument("cyclotomic conductor must be positive");
    if (coords.size() != detail::euler_phi(n)) {
      throw InvalidArgument("expected " + std::to_string(detail::euler_phi(n)) +
                            " coordinates for conductor " + std::to_string(n));
    }
    return canonical(n, std::move(coords));
  }

  /// Sum of a_k zeta_n^k for k = 0..size-1 (exponents taken mod n).
  static Cyclotomic from_exponent_sum(std::uint64_t n, const std::vector<Rational>& by_exponent) {
    if (n == 0) throw InvalidArgument("root of unity order must be positive");
    return canonical(n, detail::reduce_power_form(by_exponent, n));
  }

  std::uint64_t conductor() const { return n_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Coordinates of the value in Q(zeta_m); m must be a multiple of the conductor.
  std::vector<Rational> coordinates_at(std::uint64_t m) const {
    if (m == 0 || m % n_ != 0) {
      throw InvalidArgument("conductor " + std::to_string(n_) + " does not divide " + std::to_string(m));
    }
    return detail::lift_coordinates(coeffs_, n_, m);
  }

  bool is_zero() const { return n_ == 1 && coeffs_[0] == 0; }
  bool is_rational() const { return n_ == 1; }
  bool is_integer() const { return n_ == 1 && coeffs_[0].get_den() == 1; }
  const Rational& rational_value() const {
    if (n_ != 1) throw InvalidArgument("cyclotomic value is not rational");
    return coeffs_[0];
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == 1 && b.n_ == 1) return Cyclotomic(Rational(a.coeffs_[0] + b.coeffs_[0]));
    const std::uint64_t m = std::lcm(a.n_, b.n_);
    auto x = a.coordinates_at(m);
    auto y = b.coordinates_at(m);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return canonical(m, std::move(x));
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == 1) return b.scaled(a.coeffs_[0]);
    if (b.n_ == 1) return a.scaled(b.coeffs_[0]);
    const std::uint64_t m = std::lcm(a.n_, b.n_);
    auto x = a.coordinates_at(m);
    auto y = b.coordinates_at(m);
    std::vector<Rational> product(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) product[i + j] += x[i] * y[j];
    }
    return canonical(m, detail::reduce_power_form(std::move(product), m));
  }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  Cyclotomic scaled(const Rational& r) const {
    if (r == 0) return Cyclotomic();
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c *= r;
    return out;
  }

  Cyclotomic pow(std::uint64_t k) const {
    Cyclotomic result(1);
    Cyclotomic base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      base *= base;
      k >>= 1;
    }
    return result;
  }

  /// Image under the Galois automorphism zeta_n -> zeta_n^k, gcd(k, n) = 1.
  Cyclotomic galois(std::int64_t k) const {
    const auto n = static_cast<std::int64_t>(n_);
    const auto kk = static_cast<std::uint64_t>(((k % n) + n) % n);
    if (std::gcd(kk, n_) != 1 && n_ != 1) throw InvalidArgument("Galois exponent not coprime to conductor");
    std::vector<Rational> spread(n_, 0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) spread[(j * kk) % n_] += coeffs_[j];
    return canonical(n_, detail::reduce_power_form(std::move(spread), n_));
  }

  Cyclotomic conj() const { return galois(-1); }

  /// True iff the value is a root of unity. Every root of unity in Q(zeta_n)
  /// has order dividing lcm(2, n).
  bool is_root_of_unity() const {
    if (is_zero()) return false;
    return pow(std::lcm<std::uint64_t>(2, n_)) == Cyclotomic(1);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      std::string term = coeffs_[j].get_str();
      if (j > 0) term = "(" + term + ")*E(" + std::to_string(n_) + ")^" + std::to_string(j);
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  /// Structural total order (conductor, then coordinates); not a field order.
  friend std::strong_ordering operator<=>(const Cyclotomic& a, const Cyclotomic& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      int s = cmp(a.coeffs_[i], b.coeffs_[i]);
      if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  static Cyclotomic canonical(std::uint64_t n, std::vector<Rational> coords) {
    for (auto& c : coords) c.canonicalize();  // callers may hand in unreduced fractions
    bool shrunk = true;
    while (shrunk && n > 1) {
      shrunk = false;
      for (auto q : prime_divisors(n)) {
        const std::uint64_t d = n / q;
        if (auto sub = in_subfield(n, d, q, coords)) {
          n = d;
          coords = std::move(*sub);
          shrunk = true;
          break;
        }
      }
    }
    Cyclotomic out;
    out.n_ = n;
    out.coeffs_ = std::move(coords);
    return out;
  }

  static std::optional<std::vector<Rational>> in_subfield(std::uint64_t n, std::uint64_t d,
                                                           std::uint64_t q,
                                                           const std::vector<Rational>& coords) {
    if (d % q == 0) {
      // Phi_n(x) = Phi_d(x^q): the subfield is spanned by exponents divisible by q.
      std::vector<Rational> sub(coords.size() / q, 0);
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i % q == 0) {
          sub[i / q] = coords[i];
        } else if (coords[i] != 0) {
          return std::nullopt;
        }
      }
      return sub;
    }
    return detail::SubfieldSolver::get(n, d)->express(coords);
  }

  std::uint64_t n_ = 1;
  std::vector<Rational> coeffs_;
};

/// zeta_n^k.
inline Cyclotomic root_of_unity(std::uint64_t n, std::int64_t k) {
  if (n == 0) throw InvalidArgument("root of unity order must be positive");
  const auto nn = static_cast<std::int64_t>(n);
  std::vector<Rational> by_exponent(n, 0);
  by_exponent[static_cast<std::size_t>(((k % nn) + nn) % nn)] = 1;
  return Cyclotomic::from_exponent_sum(n, by_exponent);
}

/// True iff the values (each a root of unity) sum to the integer n, which
/// happens exactly when every value equals 1.
inline bool sum_is_degree(std::span<const Cyclotomic> values, std::uint64_t n, bool verify = true) {
  Cyclotomic sum;
  for (const auto& v : values) {
    if (verify && !v.is_root_of_unity()) throw InvalidArgument("value is not a root of unity: " + v.to_string());
    sum += v;
  }
  return sum == Cyclotomic(static_cast<long>(n));
}

}  // namespace pitheory
