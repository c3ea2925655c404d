#pragma once

// Independent oracles used by the tests. Nothing here calls into the library's
// group machinery: elements are plain image vectors and everything is brute force.

#include <cmath>
#include <complex>
#include <filesystem>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "pitheory.hpp"

namespace oracle {

using Images = std::vector<std::uint32_t>;

inline std::filesystem::path corpus_dir() { return PITHEORY_CORPUS_DIR; }

inline pitheory::Group corpus_group(const std::string& name) {
  return pitheory::io::load_group(corpus_dir() / (name + ".json"));
}

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    const auto file = e.path().filename().string();
    if (file.ends_with(".json") && !file.ends_with(".table.json")) names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

// x then y
inline Images compose(const Images& x, const Images& y) {
  Images r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
  return r;
}

inline Images invert(const Images& x) {
  Images r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline std::set<Images> closure(std::size_t degree, const std::vector<Images>& gens) {
  Images id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::set<Images> seen{id};
  std::vector<Images> frontier{id};
  while (!frontier.empty()) {
    std::vector<Images> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = compose(x, g);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return seen;
}

inline std::size_t order_of(const Images& x) {
  Images id(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) id[i] = static_cast<std::uint32_t>(i);
  std::size_t k = 1;
  for (Images y = x; y != id; y = compose(y, x)) ++k;
  return k;
}

struct BruteClass {
  std::set<Images> members;
  std::size_t element_order;
};

inline std::vector<BruteClass> brute_classes(const std::set<Images>& group) {
  std::vector<BruteClass> out;
  std::set<Images> done;
  for (const auto& x : group) {
    if (done.contains(x)) continue;
    BruteClass c{{}, order_of(x)};
    for (const auto& g : group) c.members.insert(compose(compose(invert(g), x), g));
    done.insert(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

inline std::set<Images> elements_of(const pitheory::Group& g) {
  std::vector<Images> gens;
  for (const auto& p : g.generators()) gens.emplace_back(p.images().begin(), p.images().end());
  return closure(g.degree(), gens);
}

// Every union of classes that contains 1 and is closed under multiplication.
inline std::set<std::set<std::size_t>> brute_normal_subgroups(const pitheory::Group& g,
                                                              const pitheory::ConjugacyClasses& classes) {
  std::set<std::set<std::size_t>> out;
  const std::size_t k = classes.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); mask += 2) {  // class 0 is the identity
    std::vector<bool> in(g.order(), false);
    for (std::size_t c = 0; c < k; ++c)
      if (mask >> c & 1)
        for (auto x : classes[c].members) in[x] = true;
    bool closed = true;
    for (std::uint32_t x = 0; x < g.order() && closed; ++x) {
      if (!in[x]) continue;
      for (std::uint32_t y = 0; y < g.order() && closed; ++y)
        if (in[y] && !in[g.mul(x, y)]) closed = false;
    }
    if (!closed) continue;
    std::set<std::size_t> ids;
    for (std::size_t c = 0; c < k; ++c)
      if (mask >> c & 1) ids.insert(c);
    out.insert(ids);
  }
  return out;
}

inline std::complex<double> numeric(const pitheory::Cyclotomic& z) {
  std::complex<double> s = 0;
  const auto n = z.conductor();
  const auto& c = z.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    s += c[k].get_d() * std::polar(1.0, angle);
  }
  return s;
}

constexpr double kNumericTolerance = 1e-9;

inline bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < kNumericTolerance; }

}  // namespace oracle

namespace pitheory {
// readable gtest failure messages
inline void PrintTo(const Cyclotomic& z, std::ostream* os) { *os << z.to_string(); }
}  // namespace pitheory
