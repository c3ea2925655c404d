#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pitheory/classes.hpp"
#include "pitheory/error.hpp"
#include "pitheory/perm.hpp"
#include "pitheory/primes.hpp"

namespace pitheory {

/// A normal subgroup, stored as its membership mask and the conjugacy
/// classes whose union it is.
class NormalSubgroup {
 public:
  NormalSubgroup() = default;

  /// Throws CheckFailed if the mask is not a union of conjugacy classes.
  static NormalSubgroup from_members(const ConjugacyClasses& classes, std::vector<bool> members) {
    NormalSubgroup n;
    n.members_ = std::move(members);
    if (n.members_.size() != classes.group_order()) {
      throw InvalidArgument("membership mask has the wrong length");
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const auto& cls = classes[c];
      bool inside = n.members_[cls.representative];
      for (ElementId x : cls.members) {
        if (n.members_[x] != inside) throw CheckFailed("subgroup is not a union of conjugacy classes");
      }
      if (inside) {
        n.classes_.push_back(c);
        n.order_ += cls.size();
      }
    }
    return n;
  }

  static NormalSubgroup from_classes(const ConjugacyClasses& classes,
                                     std::span<const std::size_t> class_indices) {
    std::vector<bool> members(classes.group_order(), false);
    for (std::size_t c : class_indices)
      for (ElementId x : classes[c].members) members[x] = true;
    return from_members(classes, std::move(members));
  }

  std::uint64_t order() const { return order_; }
  const std::vector<bool>& members() const { return members_; }
  const std::vector<std::size_t>& class_indices() const { return classes_; }
  bool contains(ElementId x) const { return members_.at(x); }
  bool contains_class(std::size_t c) const {
    return std::binary_search(classes_.begin(), classes_.end(), c);
  }

  std::vector<ElementId> elements() const {
    std::vector<ElementId> out;
    for (std::size_t x = 0; x < members_.size(); ++x)
      if (members_[x]) out.push_back(static_cast<ElementId>(x));
    return out;
  }

  bool is_subgroup_of(const NormalSubgroup& other) const {
    return std::includes(other.classes_.begin(), other.classes_.end(), classes_.begin(),
                         classes_.end());
  }

  friend bool operator==(const NormalSubgroup& a, const NormalSubgroup& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<bool> members_;
  std::vector<std::size_t> classes_;
  std::uint64_t order_ = 0;
};

/// Membership mask of the subgroup generated by the seeds.
inline std::vector<bool> generate_subgroup(const Group& group, std::span<const ElementId> seeds) {
  std::vector<bool> members(group.order(), false);
  std::vector<ElementId> elements{group.identity()};
  members[group.identity()] = true;
  std::vector<ElementId> gens;
  for (ElementId s : seeds) {
    if (members[s]) continue;
    gens.push_back(s);
    // Re-close: every product of an element with a generator stays inside.
    for (std::size_t k = 0; k < elements.size(); ++k) {
      for (ElementId g : gens) {
        ElementId y = group.mul(elements[k], g);
        if (!members[y]) {
          members[y] = true;
          elements.push_back(y);
        }
      }
    }
  }
  return members;
}

inline NormalSubgroup trivial_subgroup(const ConjugacyClasses& classes) {
  const std::size_t identity_class = 0;
  return NormalSubgroup::from_classes(classes, std::span(&identity_class, 1));
}

inline NormalSubgroup whole_group(const ConjugacyClasses& classes) {
  std::vector<bool> all(classes.group_order(), true);
  return NormalSubgroup::from_members(classes, std::move(all));
}

/// Classes whose elements are π-elements. The identity class is always included.
inline std::vector<std::size_t> pi_elements(const Group&, const ConjugacyClasses& classes,
                                            const PrimeSet& pi) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (pi.contains_number(classes[c].element_order)) out.push_back(c);
  return out;
}

/// Smallest normal subgroup containing the seed. The seed is first closed
/// under conjugation; the subgroup generated by a class-closed set is then
/// checked to be normal.
inline NormalSubgroup normal_closure(const Group& group, const ConjugacyClasses& classes,
                                     std::span<const ElementId> seed) {
  std::vector<bool> in_class(classes.size(), false);
  for (ElementId x : seed) in_class[classes.class_of(x)] = true;
  std::vector<ElementId> closed;
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (in_class[c]) closed.insert(closed.end(), classes[c].members.begin(), classes[c].members.end());
  return NormalSubgroup::from_members(classes, generate_subgroup(group, closed));
}

inline NormalSubgroup normal_closure_of_classes(const Group& group, const ConjugacyClasses& classes,
                                                std::span<const std::size_t> class_indices) {
  std::vector<ElementId> seed;
  for (std::size_t c : class_indices) seed.push_back(classes[c].representative);
  return normal_closure(group, classes, seed);
}

inline NormalSubgroup join(const Group& group, const ConjugacyClasses& classes,
                           const NormalSubgroup& a, const NormalSubgroup& b) {
  std::vector<std::size_t> cls = a.class_indices();
  cls.insert(cls.end(), b.class_indices().begin(), b.class_indices().end());
  return normal_closure_of_classes(group, classes, cls);
}

inline NormalSubgroup intersection(const ConjugacyClasses& classes, const NormalSubgroup& a,
                                   const NormalSubgroup& b) {
  std::vector<std::size_t> cls;
  std::set_intersection(a.class_indices().begin(), a.class_indices().end(),
                        b.class_indices().begin(), b.class_indices().end(), std::back_inserter(cls));
  return NormalSubgroup::from_classes(classes, cls);
}

/// Every normal subgroup of G, ordered by order and then class indices.
///
/// Each normal subgroup is the join of the normal closures of its classes, so
/// closing {1} under joins with single-class closures reaches all of them.
inline std::vector<NormalSubgroup> all_normal_subgroups(const Group& group,
                                                        const ConjugacyClasses& classes,
                                                        std::size_t class_bound = 24) {
  if (classes.size() > class_bound) {
    throw OrderBoundExceeded("class count " + std::to_string(classes.size()) +
                             " exceeds the normal-subgroup enumeration bound " +
                             std::to_string(class_bound));
  }
  std::vector<NormalSubgroup> minimal;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    minimal.push_back(normal_closure_of_classes(group, classes, std::span(&c, 1)));
  }
  std::map<std::vector<std::size_t>, NormalSubgroup> found;
  std::vector<NormalSubgroup> work{trivial_subgroup(classes)};
  found.emplace(work.front().class_indices(), work.front());
  for (std::size_t k = 0; k < work.size(); ++k) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (work[k].contains_class(c)) continue;
      NormalSubgroup next = join(group, classes, work[k], minimal[c]);
      if (found.contains(next.class_indices())) continue;
      found.emplace(next.class_indices(), next);
      work.push_back(std::move(next));
    }
  }
  std::sort(work.begin(), work.end(), [](const NormalSubgroup& a, const NormalSubgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.class_indices() < b.class_indices();
  });
  return work;
}

/// Largest normal N with L <= N and |N : L| a π-number; the preimage of
/// O_π(G/L).
///
/// Admissible subgroups are closed under joins, so a single pass that adds
/// each class whose normal closure keeps the index a π-number reaches the
/// maximum.
inline NormalSubgroup largest_normal_over(const Group& group, const ConjugacyClasses& classes,
                                          const NormalSubgroup& lower, const PrimeSet& pi) {
  NormalSubgroup current = lower;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (current.contains_class(c)) continue;
    std::vector<std::size_t> cls = current.class_indices();
    cls.push_back(c);
    NormalSubgroup candidate = normal_closure_of_classes(group, classes, cls);
    if (pi.contains_number(candidate.order() / lower.order())) current = std::move(candidate);
  }
  return current;
}

/// O_π(G): the largest normal π-subgroup.
inline NormalSubgroup o_pi(const Group& group, const ConjugacyClasses& classes, const PrimeSet& pi) {
  return largest_normal_over(group, classes, trivial_subgroup(classes), pi);
}

/// O^{π'}(N): the subgroup generated by the π-elements of N.
inline NormalSubgroup o_upper_pi_prime(const Group& group, const ConjugacyClasses& classes,
                                       const NormalSubgroup& n, const PrimeSet& pi) {
  std::vector<std::size_t> cls;
  for (std::size_t c : n.class_indices())
    if (pi.contains_number(classes[c].element_order)) cls.push_back(c);
  return normal_closure_of_classes(group, classes, cls);
}

struct PiSeparability {
  bool separable = false;
  /// Ascending series 1 = T0 < T1 < ... alternating between π- and π'-steps.
  std::vector<NormalSubgroup> series;
};

inline PiSeparability is_pi_separable(const Group& group, const ConjugacyClasses& classes,
                                      const PrimeSet& pi) {
  const PrimeSet pi_prime = pi.complement_in(group.order());
  PiSeparability best;
  for (int start = 0; start < 2; ++start) {
    PiSeparability attempt;
    attempt.series.push_back(trivial_subgroup(classes));
    int stalled = 0;
    bool use_pi = start == 0;
    while (stalled < 2 && attempt.series.back().order() < group.order()) {
      NormalSubgroup next =
          largest_normal_over(group, classes, attempt.series.back(), use_pi ? pi : pi_prime);
      if (next.order() == attempt.series.back().order()) {
        ++stalled;
      } else {
        stalled = 0;
        attempt.series.push_back(std::move(next));
      }
      use_pi = !use_pi;
    }
    attempt.separable = attempt.series.back().order() == group.order();
    if (attempt.separable) return attempt;
    if (start == 0) best = std::move(attempt);
  }
  return best;
}

}  // namespace pitheory
