#pragma once

#include <cstdint>
#include <vector>

#include "pitheory/perm.hpp"

namespace pitheory {

struct ConjugacyClass {
  ElementId representative = 0;
  std::vector<ElementId> members;  // ascending
  std::uint64_t element_order = 1;

  std::uint64_t size() const { return members.size(); }
};

/// Conjugacy classes of an enumerated group, ordered by smallest member id
/// (so class 0 is the identity), together with the full power map.
class ConjugacyClasses {
 public:
  ConjugacyClasses() = default;

  explicit ConjugacyClasses(const Group& group) {
    const std::size_t n = group.order();
    constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
    class_of_.assign(n, kUnassigned);
    const std::vector<ElementId> gens = group.generator_ids();

    for (ElementId x = 0; x < n; ++x) {
      if (class_of_[x] != kUnassigned) continue;
      const std::size_t index = classes_.size();
      ConjugacyClass cls;
      cls.representative = x;
      cls.members.push_back(x);
      class_of_[x] = index;
      for (std::size_t k = 0; k < cls.members.size(); ++k) {
        for (ElementId g : gens) {
          ElementId y = group.conjugate(cls.members[k], g);
          if (class_of_[y] == kUnassigned) {
            class_of_[y] = index;
            cls.members.push_back(y);
          }
        }
      }
      std::sort(cls.members.begin(), cls.members.end());
      cls.element_order = group.element_order(x);
      classes_.push_back(std::move(cls));
    }

    power_map_.resize(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const auto& cls = classes_[c];
      auto& row = power_map_[c];
      row.resize(cls.element_order);
      ElementId y = group.identity();
      for (std::uint64_t s = 0; s < cls.element_order; ++s) {
        row[s] = class_of_[y];
        y = group.mul(y, cls.representative);
      }
    }

    inverse_class_.resize(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      inverse_class_[c] = class_of_[group.inverse(classes_[c].representative)];
    }
  }

  std::size_t size() const { return classes_.size(); }
  const ConjugacyClass& operator[](std::size_t c) const { return classes_[c]; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  auto begin() const { return classes_.begin(); }
  auto end() const { return classes_.end(); }

  std::size_t class_of(ElementId x) const { return class_of_.at(x); }

  /// Class of g^s for g in class c.
  std::size_t power_map(std::size_t c, std::uint64_t s) const {
    const auto& row = power_map_.at(c);
    return row[s % row.size()];
  }

  std::size_t inverse_class(std::size_t c) const { return inverse_class_.at(c); }

  std::uint64_t group_order() const { return class_of_.size(); }

 private:
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> power_map_;
  std::vector<std::size_t> inverse_class_;
};

inline ConjugacyClasses conjugacy_classes(const Group& group) { return ConjugacyClasses(group); }

}  // namespace pitheory
