#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "pitheory/analyzed_group.hpp"
#include "pitheory/character_table.hpp"
#include "pitheory/cyclotomic.hpp"
#include "pitheory/error.hpp"
#include "pitheory/normal.hpp"
#include "pitheory/primes.hpp"

namespace pitheory {

/// A class function on the π-classes of G.
struct PartialCharacter {
  PrimeSet pi;
  std::vector<std::size_t> classes;  // group class indices, ascending
  std::vector<Cyclotomic> values;    // one per entry of `classes`

  const Cyclotomic& degree_value() const { return values.front(); }
  std::uint64_t degree() const { return Character{values}.degree(); }

  std::optional<Cyclotomic> value_at_class(std::size_t c) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), c);
    if (it == classes.end() || *it != c) return std::nullopt;
    return values[static_cast<std::size_t>(it - classes.begin())];
  }

  friend bool operator==(const PartialCharacter& a, const PartialCharacter& b) {
    return a.classes == b.classes && a.values == b.values;
  }
};

/// Table columns whose elements are π-elements.
inline std::vector<std::size_t> pi_columns(const CharacterTable& table, const PrimeSet& pi) {
  std::vector<std::size_t> out;
  for (std::size_t col = 0; col < table.classes.size(); ++col)
    if (pi.contains_number(table.classes[col].order)) out.push_back(col);
  return out;
}

/// chi°: the values of chi on the π-classes, in class order.
inline PartialCharacter restrict(const CharacterTable& table, const Character& chi, const PrimeSet& pi) {
  PartialCharacter out;
  out.pi = pi;
  for (std::size_t col : pi_columns(table, pi)) {
    out.classes.push_back(table.columns[col]);
    out.values.push_back(chi.values[col]);
  }
  return out;
}

namespace detail {

inline std::uint64_t common_conductor(const std::vector<PartialCharacter>& chars) {
  std::uint64_t n = 1;
  for (const auto& phi : chars)
    for (const auto& v : phi.values) n = std::lcm(n, v.conductor());
  return n;
}

/// Values as one flat rational vector: the coordinates of each class value
/// in Q(zeta_n), concatenated.
inline std::vector<Rational> flatten(const PartialCharacter& phi, std::uint64_t n) {
  std::vector<Rational> out;
  for (const auto& v : phi.values) {
    auto coords = v.coordinates_at(n);
    out.insert(out.end(), coords.begin(), coords.end());
  }
  return out;
}

/// Same as flatten, for values that are algebraic integers (so every
/// coordinate over the power basis is an integer).
inline std::vector<std::int64_t> flatten_integral(const PartialCharacter& phi, std::uint64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& x : flatten(phi, n)) {
    if (x.get_den() != 1 || !x.get_num().fits_slong_p()) {
      throw CheckFailed("partial character value is not an algebraic integer");
    }
    out.push_back(x.get_num().get_si());
  }
  return out;
}

inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Solves sum_i x_i basis[i] = target over Q. Nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_combination(const std::vector<std::vector<Rational>>& basis,
                                                              const std::vector<Rational>& target) {
  const std::size_t unknowns = basis.size();
  const std::size_t equations = target.size();
  std::vector<std::vector<Rational>> m(equations, std::vector<Rational>(unknowns + 1, 0));
  for (std::size_t e = 0; e < equations; ++e) {
    for (std::size_t u = 0; u < unknowns; ++u) m[e][u] = basis[u][e];
    m[e][unknowns] = target[e];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < unknowns && row < equations; ++c) {
    std::size_t piv = row;
    while (piv < equations && m[piv][c] == 0) ++piv;
    if (piv == equations) continue;
    std::swap(m[piv], m[row]);
    Rational s = 1 / m[row][c];
    for (auto& x : m[row]) x *= s;
    for (std::size_t i = 0; i < equations; ++i) {
      if (i == row || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k <= unknowns; ++k) m[i][k] -= f * m[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < equations; ++i)
    if (m[i][unknowns] != 0) return std::nullopt;
  if (pivot_col.size() != unknowns) return std::nullopt;  // not unique
  std::vector<Rational> x(unknowns, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = m[r][unknowns];
  return x;
}

/// Depth-first search for nonnegative integers c_i with
/// sum c_i deg_i = target degree and sum c_i parts_i = target.
class CombinationSearch {
 public:
  CombinationSearch(const std::vector<std::vector<std::int64_t>>& parts,
                    const std::vector<std::uint64_t>& degrees, const std::vector<std::int64_t>& target)
      : parts_(parts), degrees_(degrees), target_(target), sum_(target.size(), 0) {}

  bool run(std::uint64_t degree) { return descend(0, degree); }

 private:
  bool descend(std::size_t index, std::uint64_t remaining) {
    if (remaining == 0) return sum_ == target_;
    if (index == parts_.size()) return false;
    const std::uint64_t max_coeff = remaining / degrees_[index];
    for (std::uint64_t c = max_coeff + 1; c-- > 0;) {
      add(index, static_cast<std::int64_t>(c));
      const bool hit = descend(index + 1, remaining - c * degrees_[index]);
      add(index, -static_cast<std::int64_t>(c));
      if (hit) return true;
    }
    return false;
  }

  void add(std::size_t index, std::int64_t c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < sum_.size(); ++k) sum_[k] += c * parts_[index][k];
  }

  const std::vector<std::vector<std::int64_t>>& parts_;
  const std::vector<std::uint64_t>& degrees_;
  const std::vector<std::int64_t>& target_;
  std::vector<std::int64_t> sum_;
};

}  // namespace detail

inline void require_separable(const AnalyzedGroup& g, const PrimeSet& pi) {
  if (!is_pi_separable(g.group(), g.classes(), pi).separable) {
    throw NotSeparable("group " + g.name() + " is not separable for pi = {" + pi.to_string() + "}");
  }
}

/// I_π(G): restrictions of the ordinary irreducibles that are not sums of
/// other π-partial characters.
///
/// Candidates are visited by ascending degree. A proper decomposition only
/// uses constituents of strictly smaller degree, and every constituent is
/// itself a sum of irreducibles, so it is enough to search combinations of
/// the irreducibles already accepted.
inline std::vector<PartialCharacter> irreducible_partial_characters(const AnalyzedGroup& g,
                                                                    const CharacterTable& table,
                                                                    const PrimeSet& pi) {
  require_separable(g, pi);
  std::vector<PartialCharacter> candidates;
  for (const auto& chi : table.irreducibles) {
    auto phi = restrict(table, chi, pi);
    if (std::find(candidates.begin(), candidates.end(), phi) == candidates.end()) candidates.push_back(std::move(phi));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PartialCharacter& a, const PartialCharacter& b) { return a.degree() < b.degree(); });

  const std::uint64_t n = detail::common_conductor(candidates);
  std::vector<PartialCharacter> accepted;
  std::vector<std::vector<std::int64_t>> accepted_flat;
  std::vector<std::uint64_t> accepted_degree;
  for (auto& phi : candidates) {
    const std::uint64_t degree = phi.degree();
    auto flat = detail::flatten_integral(phi, n);
    std::size_t smaller = 0;
    while (smaller < accepted.size() && accepted_degree[smaller] < degree) ++smaller;
    std::vector<std::vector<std::int64_t>> parts(accepted_flat.begin(),
                                                 accepted_flat.begin() + static_cast<std::ptrdiff_t>(smaller));
    std::vector<std::uint64_t> degrees(accepted_degree.begin(),
                                       accepted_degree.begin() + static_cast<std::ptrdiff_t>(smaller));
    detail::CombinationSearch search(parts, degrees, flat);
    if (search.run(degree)) continue;
    accepted.push_back(std::move(phi));
    accepted_flat.push_back(std::move(flat));
    accepted_degree.push_back(degree);
  }

  const std::size_t pi_class_count = pi_columns(table, pi).size();
  if (accepted.size() != pi_class_count) {
    throw CheckFailed("found " + std::to_string(accepted.size()) + " irreducible partial characters but " +
                      std::to_string(pi_class_count) + " pi-classes");
  }
  std::vector<std::vector<Rational>> rows;
  for (const auto& phi : accepted) rows.push_back(detail::flatten(phi, n));
  if (detail::rational_rank(rows) != accepted.size()) {
    throw CheckFailed("irreducible partial characters are linearly dependent");
  }
  return accepted;
}

/// Rows indexed by the table's characters, columns by I_π(G).
struct DecompositionMatrix {
  std::vector<std::vector<std::uint64_t>> entries;

  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

inline DecompositionMatrix decomposition_matrix(const CharacterTable& table, const PrimeSet& pi,
                                                const std::vector<PartialCharacter>& irreducibles) {
  std::vector<PartialCharacter> all = irreducibles;
  for (const auto& chi : table.irreducibles) all.push_back(restrict(table, chi, pi));
  const std::uint64_t n = detail::common_conductor(all);
  std::vector<std::vector<Rational>> basis;
  for (const auto& phi : irreducibles) basis.push_back(detail::flatten(phi, n));

  DecompositionMatrix out;
  for (const auto& chi : table.irreducibles) {
    auto x = detail::solve_combination(basis, detail::flatten(restrict(table, chi, pi), n));
    if (!x) throw CheckFailed("restriction is not in the span of the irreducible partial characters");
    std::vector<std::uint64_t> row;
    for (const auto& coeff : *x) {
      if (coeff.get_den() != 1 || coeff < 0) {
        throw CheckFailed("decomposition coefficient " + coeff.get_str() + " is not a nonnegative integer");
      }
      row.push_back(coeff.get_num().get_ui());
    }
    out.entries.push_back(std::move(row));
  }
  return out;
}

/// Indices of the characters chi with chi° = phi.
inline std::vector<std::size_t> lifts(const PartialCharacter& phi, const CharacterTable& table) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table.irreducibles.size(); ++i)
    if (restrict(table, table.irreducibles[i], phi.pi) == phi) out.push_back(i);
  return out;
}

/// IBr_p(G) for p-solvable G, as the {p}'-partial characters.
inline std::vector<PartialCharacter> brauer_characters(const AnalyzedGroup& g, const CharacterTable& table,
                                                       std::uint64_t p) {
  const PrimeSet pi = PrimeSet::complement_of(p);
  if (!is_pi_separable(g.group(), g.classes(), pi).separable) {
    throw NotSeparable("group " + g.name() + " is not " + std::to_string(p) +
                       "-solvable; ingest an externally computed Brauer table instead");
  }
  return irreducible_partial_characters(g, table, pi);
}

/// The rows of an ingested Brauer table as {p}'-partial characters.
inline std::vector<PartialCharacter> brauer_table_characters(const CharacterTable& table) {
  if (table.mode != TableMode::Brauer) throw InvalidArgument("table is not a Brauer table");
  std::vector<PartialCharacter> out;
  for (const auto& row : table.irreducibles) {
    PartialCharacter phi;
    phi.pi = PrimeSet::complement_of(table.p);
    phi.classes = table.columns;
    phi.values = row.values;
    out.push_back(std::move(phi));
  }
  return out;
}

}  // namespace pitheory
