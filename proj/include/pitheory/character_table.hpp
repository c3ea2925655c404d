#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pitheory/classes.hpp"
#include "pitheory/cyclotomic.hpp"
#include "pitheory/error.hpp"
#include "pitheory/modular.hpp"
#include "pitheory/normal.hpp"
#include "pitheory/perm.hpp"

namespace pitheory {

struct Character {
  std::vector<Cyclotomic> values;  // one per column of the owning table

  const Cyclotomic& degree_value() const { return values.front(); }
  std::uint64_t degree() const {
    const auto& d = values.front();
    if (!d.is_integer() || d.rational_value() <= 0) throw CheckFailed("character degree is not a positive integer");
    return d.rational_value().get_num().get_ui();
  }

  friend bool operator==(const Character&, const Character&) = default;
};

struct ClassInfo {
  std::uint64_t order = 1;  // element order
  std::uint64_t size = 1;
  friend bool operator==(const ClassInfo&, const ClassInfo&) = default;
};

enum class TableMode { Ordinary, Brauer };

/// Irreducible characters (ordinary) or irreducible Brauer characters, with
/// one column per conjugacy class (ordinary) or per p-regular class (Brauer).
struct CharacterTable {
  std::string group_name;
  TableMode mode = TableMode::Ordinary;
  std::uint64_t p = 0;                // Brauer mode only
  std::uint64_t group_order = 1;
  std::vector<std::size_t> columns;   // group class index of each column
  std::vector<ClassInfo> classes;     // per column
  std::vector<Character> irreducibles;

  std::size_t size() const { return irreducibles.size(); }
  const Character& operator[](std::size_t i) const { return irreducibles[i]; }
};

inline std::vector<ClassInfo> class_info(const ConjugacyClasses& classes) {
  std::vector<ClassInfo> out;
  for (const auto& c : classes) out.push_back({c.element_order, c.size()});
  return out;
}

namespace detail {

// Orders values by conductor, then by coordinates descending, so that among
// rational values larger ones come first and the principal character leads.
inline int compare_for_display(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor() ? -1 : 1;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    int s = cmp(a.coefficients()[i], b.coefficients()[i]);
    if (s != 0) return s > 0 ? -1 : 1;
  }
  return 0;
}

inline bool character_precedes(const Character& a, const Character& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t c = 0; c < a.values.size(); ++c) {
    int s = compare_for_display(a.values[c], b.values[c]);
    if (s != 0) return s < 0;
  }
  return false;
}

inline std::uint64_t group_exponent(const ConjugacyClasses& classes) {
  std::uint64_t e = 1;
  for (const auto& c : classes) e = std::lcm(e, c.element_order);
  return e;
}

inline std::uint64_t next_modulus(std::uint64_t exponent, std::uint64_t above, std::uint64_t search_bound) {
  for (std::uint64_t q = exponent + 1; q <= search_bound; q += exponent) {
    if (q > above && is_prime(q)) return q;
  }
  throw CheckFailed("no prime modulus = 1 mod " + std::to_string(exponent) + " below " +
                    std::to_string(search_bound));
}

/// Class multiplication coefficients a[j][k][l]: the number of x in C_j with
/// x^-1 z_l in C_k, z_l the representative of C_l.
inline std::vector<std::uint64_t> structure_constants(const Group& group, const ConjugacyClasses& classes) {
  const std::size_t r = classes.size();
  std::vector<std::uint64_t> a(r * r * r, 0);
  for (std::size_t l = 0; l < r; ++l) {
    const ElementId z = classes[l].representative;
    for (ElementId x = 0; x < group.order(); ++x) {
      const std::size_t j = classes.class_of(x);
      const std::size_t k = classes.class_of(group.mul(group.inverse(x), z));
      ++a[(j * r + k) * r + l];
    }
  }
  return a;
}

/// Simultaneous eigenvectors of the class matrices over F_q, one per
/// irreducible character, each scaled so its identity coordinate is 1.
/// Empty if the space does not split into lines.
inline modular::Matrix central_character_vectors(const std::vector<std::uint64_t>& a, std::size_t r,
                                                 std::uint64_t q) {
  using modular::Matrix;
  // Subspaces as column bases b (r x d) with b restricted to `pivots` = identity.
  struct Subspace {
    Matrix basis;  // d rows, each a length-r vector
    std::vector<std::size_t> pivots;
  };
  std::vector<Subspace> done;
  std::vector<Subspace> open;
  {
    Subspace whole;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::uint64_t> e(r, 0);
      e[i] = 1;
      whole.basis.push_back(std::move(e));
      whole.pivots.push_back(i);
    }
    (r == 1 ? done : open).push_back(std::move(whole));
  }

  for (std::size_t j = 1; j < r && !open.empty(); ++j) {
    std::vector<Subspace> still_open;
    for (auto& space : open) {
      const std::size_t d = space.basis.size();
      // action matrix: column t = image of basis vector t, read at pivot rows
      Matrix action(d, std::vector<std::uint64_t>(d, 0));
      for (std::size_t t = 0; t < d; ++t) {
        const auto& v = space.basis[t];
        for (std::size_t s = 0; s < d; ++s) {
          const std::size_t k = space.pivots[s];
          std::uint64_t sum = 0;
          for (std::size_t l = 0; l < r; ++l) {
            if (v[l] == 0) continue;
            sum = modular::add(sum, modular::mul(a[(j * r + k) * r + l] % q, v[l], q), q);
          }
          action[s][t] = sum;
        }
      }
      const auto poly = modular::characteristic_polynomial(action, q);
      std::size_t found = 0;
      std::vector<Subspace> pieces;
      for (std::uint64_t lambda = 0; lambda < q && found < d; ++lambda) {
        if (modular::evaluate(poly, lambda, q) != 0) continue;
        Matrix shifted = action;
        for (std::size_t s = 0; s < d; ++s) shifted[s][s] = modular::sub(shifted[s][s], lambda, q);
        Matrix kernel = modular::null_space(shifted, d, q);
        if (kernel.empty()) continue;
        Subspace piece;
        for (const auto& y : kernel) {
          std::vector<std::uint64_t> w(r, 0);
          for (std::size_t t = 0; t < d; ++t) {
            if (y[t] == 0) continue;
            for (std::size_t l = 0; l < r; ++l)
              w[l] = modular::add(w[l], modular::mul(y[t], space.basis[t][l], q), q);
          }
          piece.basis.push_back(std::move(w));
        }
        piece.pivots = modular::row_reduce(piece.basis, q);
        found += piece.basis.size();
        pieces.push_back(std::move(piece));
      }
      if (found != d) return {};
      for (auto& piece : pieces) (piece.basis.size() == 1 ? done : still_open).push_back(std::move(piece));
    }
    open = std::move(still_open);
  }
  if (!open.empty()) return {};

  Matrix out;
  for (auto& space : done) {
    auto v = space.basis.front();
    if (v[0] == 0) return {};
    const std::uint64_t s = modular::inv(v[0], q);
    for (auto& x : v) x = modular::mul(x, s, q);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::optional<std::vector<Character>> lift_characters(const ConjugacyClasses& classes,
                                                             const modular::Matrix& omegas,
                                                             std::uint64_t q, std::uint64_t exponent) {
  const std::size_t r = classes.size();
  const std::uint64_t order = classes.group_order();
  const std::uint64_t z = modular::pow(modular::primitive_root(q), (q - 1) / exponent, q);
  const auto max_degree = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(order)) + 1);

  std::vector<Character> out;
  for (const auto& omega : omegas) {
    // |G| / chi(1)^2 = sum_l omega_l omega_{l*} / |C_l|
    std::uint64_t s = 0;
    for (std::size_t l = 0; l < r; ++l) {
      const std::uint64_t term = modular::mul(omega[l], omega[classes.inverse_class(l)], q);
      s = modular::add(s, modular::mul(term, modular::inv(classes[l].size() % q, q), q), q);
    }
    if (s == 0) return std::nullopt;
    const std::uint64_t degree_sq = modular::mul(order % q, modular::inv(s, q), q);
    std::uint64_t degree = 0;
    for (std::uint64_t d = 1; d <= max_degree; ++d) {
      if (d * d > order) break;
      if ((d * d) % q == degree_sq && order % d == 0) {
        degree = d;
        break;
      }
    }
    if (degree == 0) return std::nullopt;

    std::vector<std::uint64_t> mod_values(r);
    for (std::size_t l = 0; l < r; ++l) {
      mod_values[l] = modular::mul(modular::mul(omega[l], degree, q), modular::inv(classes[l].size() % q, q), q);
    }

    Character chi;
    for (std::size_t l = 0; l < r; ++l) {
      const std::uint64_t o = classes[l].element_order;
      const std::uint64_t w = modular::pow(z, exponent / o, q);
      const std::uint64_t w_inv = modular::inv(w, q);
      const std::uint64_t o_inv = modular::inv(o % q, q);
      std::vector<Rational> multiplicity(o, 0);
      std::uint64_t total = 0;
      for (std::uint64_t k = 0; k < o; ++k) {
        std::uint64_t sum = 0;
        const std::uint64_t step = modular::pow(w_inv, k, q);
        std::uint64_t twiddle = 1;
        for (std::uint64_t t = 0; t < o; ++t) {
          sum = modular::add(sum, modular::mul(mod_values[classes.power_map(l, t)], twiddle, q), q);
          twiddle = modular::mul(twiddle, step, q);
        }
        const std::uint64_t m = modular::mul(sum, o_inv, q);
        if (m > degree) return std::nullopt;
        multiplicity[k] = static_cast<unsigned long>(m);
        total += m;
      }
      if (total != degree) return std::nullopt;
      chi.values.push_back(Cyclotomic::from_exponent_sum(o, multiplicity));
    }
    out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace detail

struct TableCheck {
  bool row_orthogonality = true;
  bool column_orthogonality = true;
  bool degree_sum = true;
  bool ok() const { return row_orthogonality && column_orthogonality && degree_sum; }
};

/// Exact orthogonality checks for an ordinary table.
inline TableCheck check_table(const CharacterTable& table) {
  TableCheck check;
  const std::size_t r = table.classes.size();
  if (table.irreducibles.size() != r) {
    check.row_orthogonality = check.column_orthogonality = check.degree_sum = false;
    return check;
  }
  std::vector<std::vector<Cyclotomic>> conj(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (table.irreducibles[i].values.size() != r) {
      check.row_orthogonality = check.column_orthogonality = check.degree_sum = false;
      return check;
    }
    for (const auto& v : table.irreducibles[i].values) conj[i].push_back(v.conj());
  }
  const Rational inv_order(1, table.group_order);
  for (std::size_t i = 0; i < r && check.row_orthogonality; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      Cyclotomic sum;
      for (std::size_t c = 0; c < r; ++c) {
        sum += (table.irreducibles[i].values[c] * conj[j][c]).scaled(Rational(table.classes[c].size));
      }
      if (sum.scaled(inv_order) != Cyclotomic(i == j ? 1 : 0)) {
        check.row_orthogonality = false;
        break;
      }
    }
  }
  for (std::size_t c = 0; c < r && check.column_orthogonality; ++c) {
    for (std::size_t d = c; d < r; ++d) {
      Cyclotomic sum;
      for (std::size_t i = 0; i < r; ++i) sum += table.irreducibles[i].values[c] * conj[i][d];
      const long expected = c == d ? static_cast<long>(table.group_order / table.classes[c].size) : 0;
      if (sum != Cyclotomic(expected)) {
        check.column_orthogonality = false;
        break;
      }
    }
  }
  Cyclotomic squares;
  for (const auto& chi : table.irreducibles) squares += chi.degree_value() * chi.degree_value();
  check.degree_sum = squares == Cyclotomic(static_cast<long>(table.group_order));
  return check;
}

struct TableOptions {
  std::uint64_t modulus_search_bound = 100'000'000;
  std::size_t max_attempts = 8;
};

/// Ordinary character table by the Dixon-Schneider method: class-algebra
/// structure constants, simultaneous eigenvectors over F_q with
/// q = 1 mod exp(G), and exact lifting of each value from the multiplicities
/// of the eigenvalues of g, recovered by a discrete Fourier sum over the
/// powers of g.
inline CharacterTable compute_table(const Group& group, const ConjugacyClasses& classes,
                                    TableOptions options = {}) {
  CharacterTable table;
  table.group_name = group.name();
  table.group_order = group.order();
  table.classes = class_info(classes);
  table.columns.resize(classes.size());
  std::iota(table.columns.begin(), table.columns.end(), std::size_t{0});

  const std::size_t r = classes.size();
  const std::uint64_t exponent = detail::group_exponent(classes);
  const auto a = detail::structure_constants(group, classes);
  // q > 2 sqrt(|G|) makes the degree recoverable from its square mod q.
  auto above = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(group.order())));
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::uint64_t q = detail::next_modulus(exponent, above, options.modulus_search_bound);
    above = q;
    const auto omegas = detail::central_character_vectors(a, r, q);
    if (omegas.size() != r) continue;
    auto chars = detail::lift_characters(classes, omegas, q, exponent);
    if (!chars) continue;
    std::sort(chars->begin(), chars->end(), detail::character_precedes);
    table.irreducibles = std::move(*chars);
    if (!check_table(table).ok()) {
      table.irreducibles.clear();
      continue;
    }
    return table;
  }
  throw CheckFailed("eigenspace splitting failed for every tried modulus");
}

/// ker chi: the union of the classes where chi takes its degree. Throws
/// CheckFailed if that set is not closed under products.
inline NormalSubgroup kernel_of_character(const Group& group, const ConjugacyClasses& classes,
                                          const CharacterTable& table, const Character& chi) {
  if (table.mode != TableMode::Ordinary) throw InvalidArgument("kernel_of_character needs an ordinary table");
  std::vector<std::size_t> cls;
  for (std::size_t col = 0; col < chi.values.size(); ++col) {
    if (chi.values[col] == chi.degree_value()) cls.push_back(table.columns[col]);
  }
  NormalSubgroup kernel = NormalSubgroup::from_classes(classes, cls);
  const auto elements = kernel.elements();
  if (generate_subgroup(group, elements) != kernel.members()) {
    throw CheckFailed("kernel of character is not closed under products");
  }
  return kernel;
}

}  // namespace pitheory
