#include "vsharp/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "vsharp/error.hpp"
#include "vsharp/linalg.hpp"

namespace vsharp {

namespace {

constexpr std::size_t kExhaustiveAssociativityBound = 64;
constexpr std::size_t kSampledTriples = 200000;

std::vector<ElementIndex> closure(const FiniteGroup& g, std::span<const ElementIndex> seeds) {
  std::vector<bool> seen(g.order(), false);
  std::vector<ElementIndex> members{FiniteGroup::identity()};
  seen[FiniteGroup::identity()] = true;
  for (auto s : seeds) {
    if (!seen.at(s)) {
      seen[s] = true;
      members.push_back(s);
    }
  }
  // Closure under multiplication suffices in a finite group.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto p : {g.mul(members[i], members[j]), g.mul(members[j], members[i])}) {
        if (!seen[p]) {
          seen[p] = true;
          members.push_back(p);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::string> element_names,
                                    std::vector<std::vector<ElementIndex>> table,
                                    std::vector<ElementIndex> generators) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("group '" + name + "': empty Cayley table");
  if (element_names.empty()) {
    for (std::size_t i = 0; i < n; ++i) element_names.push_back(std::to_string(i));
  }
  if (element_names.size() != n) {
    throw InputError("group '" + name + "': " + std::to_string(element_names.size()) + " element names for order " +
                     std::to_string(n));
  }
  {
    std::set<std::string> unique(element_names.begin(), element_names.end());
    if (unique.size() != n) throw InputError("group '" + name + "': duplicate element names");
  }

  FiniteGroup g;
  g.name_ = std::move(name);
  g.order_ = n;
  g.element_names_ = std::move(element_names);
  g.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw InputError("group '" + g.name_ + "': table row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw InputError("group '" + g.name_ + "': table entry out of range");
      g.table_[a * n + b] = table[a][b];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (g.table_[a] != a || g.table_[a * n] != a) {
      throw InputError("group '" + g.name_ + "': element 0 is not a two-sided identity");
    }
  }
  g.inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.table_[a * n + b] == 0 && g.table_[b * n + a] == 0) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] == n) throw InputError("group '" + g.name_ + "': element " + std::to_string(a) + " has no inverse");
  }
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return g.table_[g.table_[a * n + b] * n + c] == g.table_[a * n + g.table_[b * n + c]];
  };
  if (n <= kExhaustiveAssociativityBound) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw InputError("group '" + g.name_ + "': table is not associative");
  } else {
    Lcg rng(42);
    for (std::size_t k = 0; k < kSampledTriples; ++k) {
      if (!assoc(rng.next() % n, rng.next() % n, rng.next() % n)) {
        throw InputError("group '" + g.name_ + "': table is not associative");
      }
    }
  }

  for (auto gen : generators) {
    if (gen >= n) throw InputError("group '" + g.name_ + "': generator index out of range");
  }
  if (!generators.empty()) {
    if (closure(g, generators).size() != n) {
      throw InputError("group '" + g.name_ + "': listed generators do not generate the group");
    }
    g.generators_ = std::move(generators);
    g.generators_from_input_ = true;
  } else {
    std::vector<ElementIndex> gens;
    std::size_t reached = 1;
    for (ElementIndex a = 1; a < n && reached < n; ++a) {
      auto with = gens;
      with.push_back(a);
      const auto size = closure(g, with).size();
      if (size > reached) {
        gens = std::move(with);
        reached = size;
      }
    }
    g.generators_ = std::move(gens);
  }

  g.class_of_.assign(n, n);
  for (ElementIndex x = 0; x < n; ++x) {
    if (g.class_of_[x] != n) continue;
    std::vector<ElementIndex> cls;
    for (ElementIndex h = 0; h < n; ++h) cls.push_back(g.conjugate(h, x));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (auto y : cls) g.class_of_[y] = g.classes_.size();
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

ElementIndex FiniteGroup::mul(ElementIndex a, ElementIndex b) const {
  if (a >= order_ || b >= order_) throw std::out_of_range("element index out of range");
  return table_[a * order_ + b];
}

ElementIndex FiniteGroup::inverse(ElementIndex a) const { return inverse_.at(a); }

ElementIndex FiniteGroup::conjugate(ElementIndex g, ElementIndex x) const { return mul(mul(g, x), inverse(g)); }

const std::string& FiniteGroup::element_name(ElementIndex a) const { return element_names_.at(a); }

std::optional<ElementIndex> FiniteGroup::find(std::string_view element_name) const {
  for (std::size_t i = 0; i < element_names_.size(); ++i) {
    if (element_names_[i] == element_name) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<ElementIndex>> FiniteGroup::table() const {
  std::vector<std::vector<ElementIndex>> out(order_);
  for (std::size_t a = 0; a < order_; ++a) out[a].assign(table_.begin() + a * order_, table_.begin() + (a + 1) * order_);
  return out;
}

GroupPtr make_group(FiniteGroup group) { return std::make_shared<const FiniteGroup>(std::move(group)); }

Subgroup::Subgroup(GroupPtr group, std::vector<ElementIndex> members)
    : group_(std::move(group)), members_(std::move(members)), mask_(group_->order(), false) {
  for (auto m : members_) mask_[m] = true;
}

Subgroup Subgroup::from_members(GroupPtr group, std::vector<ElementIndex> members) {
  if (!group) throw InputError("subgroup without a parent group");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (auto m : members) {
    if (m >= group->order()) throw InputError("subgroup member " + std::to_string(m) + " out of range");
  }
  if (members.empty() || members.front() != FiniteGroup::identity()) {
    throw InputError("subset does not contain the identity");
  }
  Subgroup h(std::move(group), std::move(members));
  const auto& g = *h.group_;
  for (auto a : h.members_) {
    if (!h.contains(g.inverse(a))) throw InputError("subset is not closed under inverses");
    for (auto b : h.members_) {
      if (!h.contains(g.mul(a, b))) throw InputError("subset is not closed under multiplication");
    }
  }
  if (g.order() % h.size() != 0) throw VerificationError("subgroup order does not divide group order");
  return h;
}

Subgroup Subgroup::generated_by(GroupPtr group, std::span<const ElementIndex> generators) {
  auto members = closure(*group, generators);
  return Subgroup(std::move(group), std::move(members));
}

Subgroup Subgroup::trivial(GroupPtr group) { return Subgroup(std::move(group), {FiniteGroup::identity()}); }

Subgroup Subgroup::whole(GroupPtr group) {
  std::vector<ElementIndex> all(group->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(std::move(group), std::move(all));
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::all_of(members_.begin(), members_.end(), [&](ElementIndex a) { return other.contains(a); });
}

Subgroup Subgroup::conjugate_by(ElementIndex g) const {
  std::vector<ElementIndex> out;
  out.reserve(members_.size());
  for (auto h : members_) out.push_back(group_->conjugate(g, h));
  std::sort(out.begin(), out.end());
  return Subgroup(group_, std::move(out));
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members_ < b.members_;
}

ElementIndex mul(const FiniteGroup& group, ElementIndex g, ElementIndex h) { return group.mul(g, h); }

std::vector<std::vector<ElementIndex>> conjugacy_classes(const FiniteGroup& group) { return group.classes(); }

std::vector<Subgroup> all_subgroups(const GroupPtr& group, std::size_t order_bound) {
  if (group->order() > order_bound) {
    throw InputError("subgroup enumeration bound exceeded: order " + std::to_string(group->order()) + " > " +
                     std::to_string(order_bound));
  }
  const std::size_t n = group->order();
  std::set<std::vector<ElementIndex>> found;
  std::vector<std::vector<ElementIndex>> cyclic;
  for (ElementIndex a = 0; a < n; ++a) {
    const ElementIndex gen[] = {a};
    auto c = closure(*group, gen);
    if (found.insert(c).second) cyclic.push_back(std::move(c));
  }
  // Join every known subgroup with every cyclic one until nothing new appears.
  std::vector<std::vector<ElementIndex>> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<std::vector<ElementIndex>> next;
    for (const auto& h : frontier) {
      for (const auto& c : cyclic) {
        if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
        std::vector<ElementIndex> seeds = h;
        seeds.insert(seeds.end(), c.begin(), c.end());
        auto joined = closure(*group, seeds);
        if (found.insert(joined).second) next.push_back(std::move(joined));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& members : found) out.push_back(Subgroup::from_members(group, members));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_normal(const Subgroup& h) {
  const auto& g = h.group();
  for (ElementIndex x = 0; x < g.order(); ++x) {
    for (auto m : h.members()) {
      if (!h.contains(g.conjugate(x, m))) return false;
    }
  }
  return true;
}

bool is_normal_in(const Subgroup& inner, const Subgroup& outer) {
  if (!inner.is_subset_of(outer)) return false;
  const auto& g = inner.group();
  for (auto x : outer.members()) {
    for (auto m : inner.members()) {
      if (!inner.contains(g.conjugate(x, m))) return false;
    }
  }
  return true;
}

ElementIndex canonical_coset_representative(const Subgroup& h, ElementIndex g) {
  ElementIndex best = h.group().order();
  for (auto m : h.members()) best = std::min(best, h.group().mul(g, m));
  return best;
}

std::vector<ElementIndex> left_cosets(const Subgroup& h) {
  std::vector<ElementIndex> reps;
  for (ElementIndex g = 0; g < h.group().order(); ++g) {
    if (canonical_coset_representative(h, g) == g) reps.push_back(g);
  }
  return reps;
}

std::size_t count_square_roots_of_identity(const FiniteGroup& group) {
  std::size_t count = 0;
  for (ElementIndex g = 0; g < group.order(); ++g) {
    if (group.mul(g, g) == FiniteGroup::identity()) ++count;
  }
  return count;
}

}  // namespace vsharp
