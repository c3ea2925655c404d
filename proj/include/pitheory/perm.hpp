#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pitheory/error.hpp"

namespace pitheory {

using Point = std::uint32_t;
using ElementId = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored as its image list.
/// Products compose left to right: (x * y)[i] == y[x[i]].
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw InvalidPermutation("permutation images are not a bijection on 0.." +
                                 std::to_string(images_.size()) + "-1");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        Point a = cycle[i];
        Point b = cycle[(i + 1) % cycle.size()];
        if (a >= degree || b >= degree || used[a]) {
          throw InvalidPermutation("cycles are not disjoint or exceed the degree");
        }
        used[a] = true;
        images[a] = b;
      }
    }
    return Permutation(std::move(images));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point p) const { return images_[p]; }
  std::span<const Point> images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
    return out;
  }

  Permutation inverse() const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  std::optional<Point> first_moved_point() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return static_cast<Point>(i);
    return std::nullopt;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Base and strong generating set built by deterministic Schreier-Sims.
class StabilizerChain {
 public:
  StabilizerChain() = default;

  StabilizerChain(std::size_t degree, std::span<const Permutation> generators) : degree_(degree) {
    for (const auto& g : generators) {
      if (g.is_identity()) continue;
      if (levels_.empty()) push_level(*g.first_moved_point());
      levels_[0].generators.push_back(g);
    }
    if (levels_.empty()) return;
    rebuild_orbit(0);

    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = levels_.size(); i-- > 0 && !changed;) {
        changed = saturate_level(i);
      }
    }
  }

  const std::vector<Point>& base() const { return base_; }

  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    for (const auto& level : levels_)
      for (const auto& g : level.generators)
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return out;
  }

  /// Product of the basic orbit lengths, saturated at the max of uint64.
  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto& level : levels_) {
      std::uint64_t len = level.orbit.size();
      if (n > std::numeric_limits<std::uint64_t>::max() / len) return std::numeric_limits<std::uint64_t>::max();
      n *= len;
    }
    return n;
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    auto [residue, level] = strip(g, 0);
    return level == levels_.size() && residue.is_identity();
  }

 private:
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> transversal;
  };

  void push_level(Point base_point) {
    Level level;
    level.base_point = base_point;
    levels_.push_back(std::move(level));
    base_.push_back(base_point);
  }

  void rebuild_orbit(std::size_t i) {
    Level& level = levels_[i];
    level.orbit.assign(1, level.base_point);
    level.transversal.assign(degree_, std::nullopt);
    level.transversal[level.base_point] = Permutation::identity(degree_);
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
      Point beta = level.orbit[k];
      for (const auto& s : level.generators) {
        Point image = s[beta];
        if (!level.transversal[image]) {
          level.transversal[image] = *level.transversal[beta] * s;
          level.orbit.push_back(image);
        }
      }
    }
  }

  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      Point beta = g[levels_[i].base_point];
      const auto& u = levels_[i].transversal[beta];
      if (!u) return {std::move(g), i};
      g = g * u->inverse();
    }
    return {std::move(g), levels_.size()};
  }

  // Sifts every Schreier generator of level i; on the first one that does not
  // sift, extends the chain and reports a change.
  bool saturate_level(std::size_t i) {
    const std::vector<Point> orbit = levels_[i].orbit;
    const std::vector<Permutation> gens = levels_[i].generators;
    for (Point beta : orbit) {
      for (const auto& s : gens) {
        const Permutation& u_beta = *levels_[i].transversal[beta];
        const Permutation& u_image = *levels_[i].transversal[s[beta]];
        Permutation h = u_beta * s * u_image.inverse();
        if (h.is_identity()) continue;
        auto [residue, stop] = strip(std::move(h), i + 1);
        if (residue.is_identity()) continue;
        if (stop == levels_.size()) push_level(*residue.first_moved_point());
        for (std::size_t l = i + 1; l <= stop; ++l) {
          levels_[l].generators.push_back(residue);
          rebuild_orbit(l);
        }
        return true;
      }
    }
    return false;
  }

  std::size_t degree_ = 0;
  std::vector<Point> base_;
  std::vector<Level> levels_;
};

struct GroupOptions {
  std::uint64_t order_bound = 100000;
  /// Orders up to this size cache a full multiplication table.
  std::size_t table_bound = 1024;
};

/// A finite permutation group with every element enumerated.
///
/// Element ids follow breadth-first order over right multiplication by the
/// generators, so the identity is id 0 and ids are reproducible.
class Group {
 public:
  static Group from_generators(std::size_t degree, std::vector<Permutation> generators,
                               GroupOptions options = {}) {
    if (degree == 0) throw InvalidArgument("group degree must be positive");
    for (const auto& g : generators) {
      if (g.degree() != degree) {
        throw InvalidPermutation("generator degree " + std::to_string(g.degree()) +
                                 " does not match group degree " + std::to_string(degree));
      }
    }
    Group group;
    group.degree_ = degree;
    group.generators_ = std::move(generators);
    group.chain_ = StabilizerChain(degree, group.generators_);
    std::uint64_t order = group.chain_.order();
    if (order > options.order_bound) {
      throw OrderBoundExceeded("group order " + std::to_string(order) + " exceeds the bound " +
                               std::to_string(options.order_bound));
    }
    group.enumerate(options);
    if (group.elements_.size() != order) {
      throw CheckFailed("stabilizer chain order disagrees with enumeration");
    }
    return group;
  }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const StabilizerChain& chain() const { return chain_; }
  std::uint64_t order() const { return elements_.size(); }
  ElementId identity() const { return 0; }

  const Permutation& element(ElementId x) const {
    check_id(x);
    return elements_[x];
  }

  std::optional<ElementId> find(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ElementId id_of(const Permutation& p) const {
    auto id = find(p);
    if (!id) throw InvalidArgument("permutation is not an element of the group");
    return *id;
  }

  bool contains(const Permutation& p) const { return chain_.contains(p); }

  ElementId mul(ElementId a, ElementId b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
    return index_.at(elements_[a] * elements_[b]);
  }

  ElementId inverse(ElementId a) const { return inverses_[a]; }

  ElementId conjugate(ElementId x, ElementId by) const {
    return mul(mul(inverse(by), x), by);
  }

  ElementId power(ElementId x, std::uint64_t k) const {
    ElementId result = identity();
    ElementId base = x;
    while (k > 0) {
      if (k & 1) result = mul(result, base);
      base = mul(base, base);
      k >>= 1;
    }
    return result;
  }

  std::uint64_t element_order(ElementId x) const {
    check_id(x);
    std::uint64_t k = 1;
    for (ElementId y = x; y != identity(); y = mul(y, x)) ++k;
    return k;
  }

  std::vector<ElementId> generator_ids() const {
    std::vector<ElementId> out;
    for (const auto& g : generators_) out.push_back(id_of(g));
    return out;
  }

 private:
  Group() = default;

  void check_id(ElementId x) const {
    if (x >= elements_.size()) throw InvalidArgument("invalid element id " + std::to_string(x));
  }

  void enumerate(const GroupOptions& options) {
    elements_.push_back(Permutation::identity(degree_));
    index_.emplace(elements_.back(), 0);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      for (const auto& g : generators_) {
        Permutation y = elements_[k] * g;
        if (index_.contains(y)) continue;
        index_.emplace(y, static_cast<ElementId>(elements_.size()));
        elements_.push_back(std::move(y));
      }
    }
    inverses_.resize(elements_.size());
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      inverses_[k] = index_.at(elements_[k].inverse());
    }
    if (elements_.size() <= options.table_bound) {
      const std::size_t n = elements_.size();
      table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          table_[a * n + b] = index_.at(elements_[a] * elements_[b]);
    }
  }

  std::string name_;
  std::size_t degree_ = 1;
  std::vector<Permutation> generators_;
  StabilizerChain chain_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementId, PermutationHash> index_;
  std::vector<ElementId> inverses_;
  std::vector<ElementId> table_;
};

inline Group group_from_generators(std::size_t degree, std::vector<Permutation> generators,
                                   GroupOptions options = {}) {
  return Group::from_generators(degree, std::move(generators), options);
}

inline std::uint64_t element_order(const Group& g, ElementId x) { return g.element_order(x); }

}  // namespace pitheory
