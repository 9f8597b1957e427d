#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vsharp {

using ElementIndex = std::size_t;

// A finite group given extensionally by its Cayley table. Element 0 is the
// identity. Instances are validated on construction and immutable after.
class FiniteGroup {
 public:
  // Validates closure, identity, inverses and associativity (exhaustive up to
  // order 64, 200000 seeded triples above). Throws InputError.
  static FiniteGroup from_table(std::string name, std::vector<std::string> element_names,
                                std::vector<std::vector<ElementIndex>> table,
                                std::vector<ElementIndex> generators = {});

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  static constexpr ElementIndex identity() { return 0; }

  // Throws std::out_of_range for indices outside [0, order).
  ElementIndex mul(ElementIndex a, ElementIndex b) const;
  ElementIndex inverse(ElementIndex a) const;
  // g x g^-1
  ElementIndex conjugate(ElementIndex g, ElementIndex x) const;

  const std::string& element_name(ElementIndex a) const;
  const std::vector<std::string>& element_names() const { return element_names_; }
  std::optional<ElementIndex> find(std::string_view element_name) const;

  // Generators from the input file, or a greedily chosen generating set.
  const std::vector<ElementIndex>& generators() const { return generators_; }
  bool generators_from_input() const { return generators_from_input_; }

  // Conjugacy classes ordered by smallest member; members sorted.
  const std::vector<std::vector<ElementIndex>>& classes() const { return classes_; }
  std::size_t class_of(ElementIndex a) const { return class_of_.at(a); }

  // Row-major table copy, as stored in group files.
  std::vector<std::vector<ElementIndex>> table() const;

 private:
  FiniteGroup() = default;

  std::string name_;
  std::size_t order_ = 0;
  std::vector<std::string> element_names_;
  std::vector<ElementIndex> table_;
  std::vector<ElementIndex> inverse_;
  std::vector<ElementIndex> generators_;
  bool generators_from_input_ = false;
  std::vector<std::vector<ElementIndex>> classes_;
  std::vector<std::size_t> class_of_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_group(FiniteGroup group);

class Subgroup {
 public:
  // Throws InputError unless `members` is a subgroup of `group`.
  static Subgroup from_members(GroupPtr group, std::vector<ElementIndex> members);
  static Subgroup generated_by(GroupPtr group, std::span<const ElementIndex> generators);
  static Subgroup trivial(GroupPtr group);
  static Subgroup whole(GroupPtr group);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<ElementIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  // [G : H]
  std::size_t index() const { return group_->order() / members_.size(); }
  bool contains(ElementIndex a) const { return a < mask_.size() && mask_[a]; }
  bool is_subset_of(const Subgroup& other) const;

  // g H g^-1
  Subgroup conjugate_by(ElementIndex g) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }
  // Orders by (size, members).
  friend bool operator<(const Subgroup& a, const Subgroup& b);

 private:
  Subgroup(GroupPtr group, std::vector<ElementIndex> members);

  GroupPtr group_;
  std::vector<ElementIndex> members_;
  std::vector<bool> mask_;
};

ElementIndex mul(const FiniteGroup& group, ElementIndex g, ElementIndex h);

std::vector<std::vector<ElementIndex>> conjugacy_classes(const FiniteGroup& group);

// Every subgroup, sorted by (size, members). Throws InputError above `order_bound`.
std::vector<Subgroup> all_subgroups(const GroupPtr& group, std::size_t order_bound = 64);

bool is_normal(const Subgroup& h);

// true iff `inner` is a normal subgroup of `outer`.
bool is_normal_in(const Subgroup& inner, const Subgroup& outer);

// One representative per left coset gH, the smallest index in each; sorted.
std::vector<ElementIndex> left_cosets(const Subgroup& h);

// Smallest element of the left coset gH.
ElementIndex canonical_coset_representative(const Subgroup& h, ElementIndex g);

// Elements with g^2 = e.
std::size_t count_square_roots_of_identity(const FiniteGroup& group);

}  // namespace vsharp
