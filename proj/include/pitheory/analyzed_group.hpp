#pragma once

#include <exception>
#include <memory>
#include <mutex>
#include <vector>

#include "pitheory/classes.hpp"
#include "pitheory/normal.hpp"
#include "pitheory/perm.hpp"

namespace pitheory {

/// A group with its conjugacy classes and a lazily built normal-subgroup
/// lattice. Cheap to copy; copies share the lattice cache.
class AnalyzedGroup {
 public:
  explicit AnalyzedGroup(Group group, std::size_t class_bound = 24)
      : group_(std::make_shared<const Group>(std::move(group))),
        classes_(std::make_shared<const ConjugacyClasses>(*group_)),
        lattice_(std::make_shared<LatticeCache>()),
        class_bound_(class_bound) {}

  const Group& group() const { return *group_; }
  const ConjugacyClasses& classes() const { return *classes_; }
  std::uint64_t order() const { return group_->order(); }
  const std::string& name() const { return group_->name(); }

  const std::vector<NormalSubgroup>& normal_subgroups() const {
    std::call_once(lattice_->once, [this] {
      try {
        lattice_->subgroups = all_normal_subgroups(*group_, *classes_, class_bound_);
      } catch (...) {
        lattice_->error = std::current_exception();
      }
    });
    if (lattice_->error) std::rethrow_exception(lattice_->error);
    return lattice_->subgroups;
  }

  NormalSubgroup trivial() const { return trivial_subgroup(*classes_); }
  NormalSubgroup whole() const { return whole_group(*classes_); }

 private:
  struct LatticeCache {
    std::once_flag once;
    std::vector<NormalSubgroup> subgroups;
    std::exception_ptr error;
  };

  std::shared_ptr<const Group> group_;
  std::shared_ptr<const ConjugacyClasses> classes_;
  std::shared_ptr<LatticeCache> lattice_;
  std::size_t class_bound_;
};

}  // namespace pitheory
