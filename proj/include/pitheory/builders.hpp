#pragma once

#include <cctype>
#include <numeric>
#include <string>
#include <vector>

#include "pitheory/error.hpp"
#include "pitheory/perm.hpp"

namespace pitheory::builders {

inline Permutation cycle_on(std::size_t degree, std::size_t first, std::size_t length) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t i = 0; i < length; ++i) images[first + i] = static_cast<Point>(first + (i + 1) % length);
  return Permutation(std::move(images));
}

inline Group named(Group g, std::string name) {
  g.set_name(std::move(name));
  return g;
}

/// Cyclic group of order n acting regularly on n points.
inline Group cyclic(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group order must be positive");
  std::vector<Permutation> gens;
  if (n > 1) gens.push_back(cycle_on(n, 0, n));
  return named(Group::from_generators(n, std::move(gens)), "c" + std::to_string(n));
}

/// Dihedral group of the given order (>= 6) acting on order/2 points.
inline Group dihedral(std::size_t order) {
  if (order < 6 || order % 2 != 0) throw InvalidArgument("dihedral order must be even and at least 6");
  const std::size_t m = order / 2;
  std::vector<Point> reflection(m);
  for (std::size_t i = 0; i < m; ++i) reflection[i] = static_cast<Point>((m - i) % m);
  return named(Group::from_generators(m, {cycle_on(m, 0, m), Permutation(std::move(reflection))}),
               "d" + std::to_string(order));
}

inline Group symmetric(std::size_t n) {
  if (n < 1) throw InvalidArgument("symmetric group degree must be positive");
  std::vector<Permutation> gens;
  if (n > 1) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    if (n > 2) gens.push_back(cycle_on(n, 0, n));
  }
  return named(Group::from_generators(n, std::move(gens)), "s" + std::to_string(n));
}

inline Group alternating(std::size_t n) {
  if (n < 1) throw InvalidArgument("alternating group degree must be positive");
  std::vector<Permutation> gens;
  for (Point i = 2; i < n; ++i) gens.push_back(Permutation::from_cycles(n, {{0, 1, i}}));
  return named(Group::from_generators(n, std::move(gens)), "a" + std::to_string(n));
}

inline Group klein_four() {
  return named(Group::from_generators(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                          Permutation::from_cycles(4, {{0, 2}, {1, 3}})}),
               "v4");
}

/// Parses short names: c<n>, d<order>, s<n>, a<n>, v4.
inline Group from_spec(const std::string& spec) {
  if (spec == "v4" || spec == "klein") return klein_four();
  if (spec.size() < 2 || !std::isdigit(static_cast<unsigned char>(spec[1])) ||
      spec.find_first_not_of("0123456789", 1) != std::string::npos) {
    throw InvalidArgument("unknown group spec '" + spec + "'");
  }
  const std::size_t n = std::stoul(spec.substr(1));
  switch (spec[0]) {
    case 'c': return cyclic(n);
    case 'd': return dihedral(n);
    case 's': return symmetric(n);
    case 'a': return alternating(n);
    default: throw InvalidArgument("unknown group spec '" + spec + "'");
  }
}

}  // namespace pitheory::builders
