#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pitheory/analyzed_group.hpp"
#include "pitheory/character_table.hpp"
#include "pitheory/error.hpp"
#include "pitheory/normal.hpp"
#include "pitheory/partial.hpp"

namespace pitheory {

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;

  bool passed() const { return status == CheckStatus::Pass; }
  bool failed() const { return status == CheckStatus::Fail; }

  static CheckOutcome from(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
  }
  static CheckOutcome skipped(std::string name, std::string reason) {
    return {std::move(name), CheckStatus::Skipped, std::move(reason)};
  }
};

struct LiftRecord {
  std::size_t character = 0;  // row in the ordinary table
  NormalSubgroup kernel;
};

struct KernelReport {
  PartialCharacter phi;
  NormalSubgroup l;
  NormalSubgroup k;
  std::vector<LiftRecord> lifts;
  std::vector<CheckOutcome> checks;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.failed(); });
  }
};

namespace detail {

inline void require_on_group(const AnalyzedGroup& g, const PartialCharacter& phi) {
  for (std::size_t c : phi.classes) {
    if (c >= g.classes().size() || !phi.pi.contains_number(g.classes()[c].element_order)) {
      throw InvalidArgument("partial character is not defined on the pi-classes of " + g.name());
    }
  }
}

inline const NormalSubgroup& unique_maximum(const std::vector<const NormalSubgroup*>& qualifying,
                                            const char* what) {
  for (const auto* candidate : qualifying) {
    const bool contains_all = std::all_of(qualifying.begin(), qualifying.end(),
                                          [&](const NormalSubgroup* n) { return n->is_subgroup_of(*candidate); });
    if (contains_all) return *candidate;
  }
  throw CheckFailed(std::string("no unique largest normal subgroup ") + what);
}

}  // namespace detail

/// L(phi): the subgroup generated by the π-elements where phi takes its degree.
/// Throws CheckFailed if the generated subgroup is not normal.
inline NormalSubgroup l_subgroup(const AnalyzedGroup& g, const PartialCharacter& phi) {
  detail::require_on_group(g, phi);
  std::vector<ElementId> seed;
  for (std::size_t i = 0; i < phi.classes.size(); ++i) {
    if (phi.values[i] != phi.degree_value()) continue;
    const auto& members = g.classes()[phi.classes[i]].members;
    seed.insert(seed.end(), members.begin(), members.end());
  }
  // The seed is a union of classes, so the subgroup it generates must already be normal.
  return NormalSubgroup::from_members(g.classes(), generate_subgroup(g.group(), seed));
}

/// K(phi): the preimage of O_π'(G / L(phi)).
inline NormalSubgroup k_subgroup(const AnalyzedGroup& g, const PartialCharacter& phi, const NormalSubgroup& l) {
  return largest_normal_over(g.group(), g.classes(), l, phi.pi.complement_in(g.order()));
}

inline NormalSubgroup k_subgroup(const AnalyzedGroup& g, const PartialCharacter& phi) {
  return k_subgroup(g, phi, l_subgroup(g, phi));
}

/// Largest normal N with phi(x) = phi(1) on every π-element x of N, by a scan
/// of the normal-subgroup lattice.
inline NormalSubgroup largest_normal_constant_on_pi_part(const AnalyzedGroup& g, const PartialCharacter& phi) {
  detail::require_on_group(g, phi);
  std::vector<const NormalSubgroup*> qualifying;
  for (const auto& n : g.normal_subgroups()) {
    bool ok = true;
    for (std::size_t c : n.class_indices()) {
      auto v = phi.value_at_class(c);
      if (v && *v != phi.degree_value()) {
        ok = false;
        break;
      }
    }
    if (ok) qualifying.push_back(&n);
  }
  return detail::unique_maximum(qualifying, "on whose pi-part phi is constant");
}

/// Largest normal N such that phi(x) = phi(y) for all π-elements x, y with
/// Nx = Ny, by a scan of the normal-subgroup lattice.
inline NormalSubgroup largest_normal_coset_constant(const AnalyzedGroup& g, const PartialCharacter& phi) {
  detail::require_on_group(g, phi);
  const Group& group = g.group();
  const auto& classes = g.classes();
  // value id per element: index into phi.values, or -1 off the π-elements
  std::vector<std::ptrdiff_t> value_id(group.order(), -1);
  std::vector<ElementId> pi_elements;
  for (std::size_t i = 0; i < phi.classes.size(); ++i) {
    // equal values share an id so comparisons are integer compares
    std::ptrdiff_t id = static_cast<std::ptrdiff_t>(i);
    for (std::size_t j = 0; j < i; ++j)
      if (phi.values[j] == phi.values[i]) {
        id = static_cast<std::ptrdiff_t>(j);
        break;
      }
    for (ElementId x : classes[phi.classes[i]].members) {
      value_id[x] = id;
      pi_elements.push_back(x);
    }
  }

  std::vector<const NormalSubgroup*> qualifying;
  for (const auto& n : g.normal_subgroups()) {
    const auto members = n.elements();
    bool ok = true;
    for (ElementId x : pi_elements) {
      for (ElementId m : members) {
        const auto y = value_id[group.mul(m, x)];
        if (y >= 0 && y != value_id[x]) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) qualifying.push_back(&n);
  }
  return detail::unique_maximum(qualifying, "on whose cosets phi is constant");
}

/// ker phi for an irreducible Brauer character, as K(phi); cross-checked
/// against the lattice characterization.
inline NormalSubgroup brauer_kernel(const AnalyzedGroup& g, const PartialCharacter& phi) {
  if (!phi.pi.is_complement()) throw InvalidArgument("brauer_kernel needs a {p}'-partial character");
  NormalSubgroup k = k_subgroup(g, phi);
  if (!(k == largest_normal_constant_on_pi_part(g, phi))) {
    throw CheckFailed("K(phi) disagrees with the largest normal subgroup constant on its p-regular part");
  }
  return k;
}

inline std::vector<LiftRecord> lift_records(const AnalyzedGroup& g, const PartialCharacter& phi,
                                            const CharacterTable& table) {
  std::vector<LiftRecord> out;
  for (std::size_t i : lifts(phi, table)) {
    out.push_back({i, kernel_of_character(g.group(), g.classes(), table, table.irreducibles[i])});
  }
  return out;
}

/// L(phi) <= ker chi <= K(phi) for every chi with chi° = phi.
inline CheckOutcome check_lift_sandwich(const AnalyzedGroup& g, const PartialCharacter& phi,
                                        const CharacterTable& table) {
  const NormalSubgroup l = l_subgroup(g, phi);
  const NormalSubgroup k = k_subgroup(g, phi, l);
  const auto records = lift_records(g, phi, table);
  if (records.empty()) return CheckOutcome::from("lift_sandwich", false, "phi has no lift");
  for (const auto& rec : records) {
    if (!l.is_subgroup_of(rec.kernel) || !rec.kernel.is_subgroup_of(k)) {
      return CheckOutcome::from("lift_sandwich", false,
                                "lift " + std::to_string(rec.character) + " has kernel of order " +
                                    std::to_string(rec.kernel.order()) + " outside [L, K]");
    }
  }
  return CheckOutcome::from("lift_sandwich", true);
}

/// Some chi with chi° = phi has ker chi = K(phi).
inline CheckOutcome check_exists_lift_with_kernel_K(const AnalyzedGroup& g, const PartialCharacter& phi,
                                                    const CharacterTable& table) {
  const NormalSubgroup k = k_subgroup(g, phi);
  for (const auto& rec : lift_records(g, phi, table)) {
    if (rec.kernel == k) return CheckOutcome::from("lift_attains_k", true);
  }
  return CheckOutcome::from("lift_attains_k", false, "no lift has kernel K(phi)");
}

/// For every lift chi with M = ker chi: M <= K(phi) and K(phi)/M = O_π'(G/M).
inline CheckOutcome check_lemma_quotient(const AnalyzedGroup& g, const PartialCharacter& phi,
                                         const CharacterTable& table) {
  const NormalSubgroup k = k_subgroup(g, phi);
  const PrimeSet pi_prime = phi.pi.complement_in(g.order());
  for (const auto& rec : lift_records(g, phi, table)) {
    if (!rec.kernel.is_subgroup_of(k) ||
        !(largest_normal_over(g.group(), g.classes(), rec.kernel, pi_prime) == k)) {
      return CheckOutcome::from("quotient_core", false,
                                "lift " + std::to_string(rec.character) + " breaks K/M = O_pi'(G/M)");
    }
  }
  return CheckOutcome::from("quotient_core", true);
}

/// The intersection of K(phi) over phi in `irreducibles` equals O_π'(G).
inline CheckOutcome intersection_theorem(const AnalyzedGroup& g, const std::vector<PartialCharacter>& irreducibles,
                                         const PrimeSet& pi) {
  NormalSubgroup meet = g.whole();
  for (const auto& phi : irreducibles) meet = intersection(g.classes(), meet, k_subgroup(g, phi));
  const NormalSubgroup core = o_pi(g.group(), g.classes(), pi.complement_in(g.order()));
  return CheckOutcome::from("intersection_equals_core", meet == core,
                            "intersection order " + std::to_string(meet.order()) + ", O_pi' order " +
                                std::to_string(core.order()));
}

inline CheckOutcome intersection_theorem(const AnalyzedGroup& g, const CharacterTable& table, const PrimeSet& pi) {
  return intersection_theorem(g, irreducible_partial_characters(g, table, pi), pi);
}

/// Every kernel computation and check for one phi.
inline KernelReport analyze_partial_character(const AnalyzedGroup& g, const PartialCharacter& phi,
                                              const CharacterTable* table) {
  KernelReport report;
  report.phi = phi;
  report.l = l_subgroup(g, phi);
  report.k = k_subgroup(g, phi, report.l);
  auto& checks = report.checks;

  checks.push_back(CheckOutcome::from("l_below_k", report.l.is_subgroup_of(report.k)));
  const PrimeSet pi_prime = phi.pi.complement_in(g.order());
  checks.push_back(CheckOutcome::from("k_over_l_is_pi_prime", pi_prime.contains_number(report.k.order() / report.l.order())));
  bool pi_part_inside_l = true;
  for (std::size_t c : report.k.class_indices())
    if (phi.pi.contains_number(g.classes()[c].element_order) && !report.l.contains_class(c)) pi_part_inside_l = false;
  checks.push_back(CheckOutcome::from("k_pi_elements_in_l", pi_part_inside_l));

  const auto lattice_k = largest_normal_constant_on_pi_part(g, phi);
  checks.push_back(CheckOutcome::from("k_equals_pi_part_scan", lattice_k == report.k,
                                      "scan order " + std::to_string(lattice_k.order())));
  const auto coset_k = largest_normal_coset_constant(g, phi);
  checks.push_back(CheckOutcome::from("k_equals_coset_scan", coset_k == report.k,
                                      "scan order " + std::to_string(coset_k.order())));

  if (table == nullptr) return report;
  report.lifts = lift_records(g, phi, *table);
  checks.push_back(CheckOutcome::from("has_lift", !report.lifts.empty()));
  checks.push_back(check_lift_sandwich(g, phi, *table));
  checks.push_back(check_exists_lift_with_kernel_K(g, phi, *table));
  checks.push_back(check_lemma_quotient(g, phi, *table));
  return report;
}

/// Direct product C x H with C cyclic of a π-order and H a nontrivial
/// π'-group, together with phi = (alpha x 1_H)° for alpha faithful and a
/// lift alpha x theta whose kernel lies strictly inside K(phi).
struct CounterexampleResult {
  AnalyzedGroup group;
  PrimeSet pi;
  CharacterTable table;
  std::size_t alpha_character = 0;  // alpha x 1_H
  std::size_t theta_character = 0;  // alpha x theta, theta nonprincipal linear
  NormalSubgroup h_subgroup;
  NormalSubgroup theta_kernel;      // ker theta, read from the product structure
  KernelReport report;
  std::vector<CheckOutcome> checks;

  bool passed() const {
    return report.passed() &&
           std::none_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.failed(); });
  }
};

inline CounterexampleResult counterexample_group(std::uint64_t c_order, const Group& h) {
  if (c_order < 3) throw InvalidArgument("the cyclic factor must have order at least 3");
  if (h.order() < 2) throw InvalidArgument("H must be nontrivial");
  if (std::gcd(c_order, h.order()) != 1) throw InvalidArgument("|C| and |H| must be coprime");

  const std::size_t degree = c_order + h.degree();
  std::vector<Point> cycle(degree);
  std::iota(cycle.begin(), cycle.end(), Point{0});
  for (std::size_t i = 0; i < c_order; ++i) cycle[i] = static_cast<Point>((i + 1) % c_order);
  std::vector<Permutation> gens{Permutation(cycle)};
  for (const auto& s : h.generators()) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t i = 0; i < s.degree(); ++i) images[c_order + i] = static_cast<Point>(c_order + s[static_cast<Point>(i)]);
    gens.push_back(Permutation(std::move(images)));
  }
  Group product = Group::from_generators(degree, std::move(gens));
  product.set_name("C" + std::to_string(c_order) + "x" + (h.name().empty() ? "H" : h.name()));

  AnalyzedGroup g(std::move(product));
  const auto& classes = g.classes();
  const ElementId c_gen = g.group().id_of(Permutation(cycle));

  std::set<std::uint64_t> pi_primes = prime_divisors(c_order);
  PrimeSet pi = PrimeSet::of(pi_primes);
  CharacterTable table = compute_table(g.group(), classes);

  std::vector<bool> in_h(g.order(), false);
  for (ElementId x = 0; x < g.order(); ++x) {
    const auto& perm = g.group().element(x);
    bool fixes_c = true;
    for (Point i = 0; i < c_order; ++i)
      if (perm[i] != i) fixes_c = false;
    in_h[x] = fixes_c;
  }
  NormalSubgroup h_sub = NormalSubgroup::from_members(classes, in_h);

  const Cyclotomic zeta = root_of_unity(c_order, 1);
  std::optional<std::size_t> alpha;
  std::optional<std::size_t> theta;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& chi = table[i];
    if (chi.degree() != 1 || chi.values[classes.class_of(c_gen)] != zeta) continue;
    bool trivial_on_h = true;
    for (std::size_t c : h_sub.class_indices())
      if (chi.values[c] != Cyclotomic(1)) trivial_on_h = false;
    if (trivial_on_h && !alpha) alpha = i;
    if (!trivial_on_h && !theta) theta = i;
  }
  if (!alpha) throw CheckFailed("no character alpha x 1_H found");
  if (!theta) throw InvalidArgument("H has no nonprincipal linear character");

  CounterexampleResult result{g, pi, table, *alpha, *theta, h_sub, {}, {}, {}};
  const PartialCharacter phi = restrict(table, table[*alpha], pi);
  result.report = analyze_partial_character(g, phi, &table);

  std::vector<bool> theta_kernel(g.order(), false);
  for (ElementId x = 0; x < g.order(); ++x)
    if (in_h[x] && table[*theta].values[classes.class_of(x)] == Cyclotomic(1)) theta_kernel[x] = true;
  result.theta_kernel = NormalSubgroup::from_members(classes, theta_kernel);
  const NormalSubgroup lift_kernel = kernel_of_character(g.group(), classes, table, table[*theta]);

  auto& checks = result.checks;
  checks.push_back(CheckOutcome::from("phi_irreducible", [&] {
    const auto irr = irreducible_partial_characters(g, table, pi);
    return std::find(irr.begin(), irr.end(), phi) != irr.end();
  }()));
  checks.push_back(CheckOutcome::from("l_trivial", result.report.l.order() == 1));
  checks.push_back(CheckOutcome::from("k_equals_h", result.report.k == h_sub));
  checks.push_back(CheckOutcome::from("theta_lift_restricts_to_phi", restrict(table, table[*theta], pi) == phi));
  checks.push_back(CheckOutcome::from("lift_kernel_is_ker_theta", lift_kernel == result.theta_kernel));
  checks.push_back(CheckOutcome::from("lift_kernel_strictly_below_k",
                                      lift_kernel.is_subgroup_of(result.report.k) &&
                                          lift_kernel.order() < result.report.k.order(),
                                      "|ker chi| = " + std::to_string(lift_kernel.order()) +
                                          ", |K| = " + std::to_string(result.report.k.order())));
  return result;
}

}  // namespace pitheory
