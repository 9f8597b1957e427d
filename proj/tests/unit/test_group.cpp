#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "vsharp/error.hpp"
#include "vsharp/group.hpp"

using namespace vsharp;
using vsharp::testing::bundled_keys;
using vsharp::testing::data_dir;

namespace {

GroupPtr group(const std::string& key) { return load_group(data_dir() / "groups" / (key + ".json")); }

ElementIndex el(const FiniteGroup& g, const std::string& name) { return g.find(name).value(); }

// Subgroups by brute force over every subset containing the identity.
std::set<std::vector<ElementIndex>> brute_force_subgroups(const FiniteGroup& g) {
  std::set<std::vector<ElementIndex>> out;
  const auto n = g.order();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
    std::vector<ElementIndex> m;
    for (ElementIndex a = 0; a < n; ++a) {
      if (mask >> a & 1) m.push_back(a);
    }
    bool closed = true;
    for (auto a : m) {
      for (auto b : m) {
        if (!(mask >> g.mul(a, b) & 1)) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) out.insert(m);
  }
  return out;
}

std::vector<std::size_t> brute_force_class_sizes(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<std::size_t> sizes;
  for (ElementIndex x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::set<ElementIndex> cls;
    for (ElementIndex h = 0; h < g.order(); ++h) cls.insert(g.mul(g.mul(h, x), g.inverse(h)));
    for (auto c : cls) seen[c] = true;
    sizes.push_back(cls.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<std::size_t> sorted_sizes(const std::vector<std::vector<ElementIndex>>& classes) {
  std::vector<std::size_t> s;
  for (const auto& c : classes) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST(Group, Q8MultiplicationFollowsQuaternionRules) {
  const auto g = group("q8");
  EXPECT_EQ(g->element_name(g->mul(el(*g, "i"), el(*g, "j"))), "k");
  EXPECT_EQ(g->element_name(g->mul(el(*g, "j"), el(*g, "i"))), "-k");
  EXPECT_EQ(g->element_name(g->mul(el(*g, "i"), el(*g, "i"))), "-1");
}

TEST(Group, IdentityIsNeutral) {
  for (const auto& key : bundled_keys()) {
    const auto g = group(key);
    for (ElementIndex a = 0; a < g->order(); ++a) {
      EXPECT_EQ(mul(*g, 0, a), a);
      EXPECT_EQ(mul(*g, a, 0), a);
    }
  }
}

TEST(Group, C2GeneratorSquaresToIdentity) {
  const auto g = group("c2");
  EXPECT_EQ(g->mul(el(*g, "x"), el(*g, "x")), FiniteGroup::identity());
}

TEST(Group, MulRejectsOutOfRangeIndices) {
  const auto g = group("q8");
  EXPECT_THROW(g->mul(8, 0), std::out_of_range);
}

TEST(Group, ConjugacyClassSizesMatchBruteForce) {
  EXPECT_EQ(sorted_sizes(conjugacy_classes(*group("q8"))), (std::vector<std::size_t>{1, 1, 2, 2, 2}));
  EXPECT_EQ(sorted_sizes(conjugacy_classes(*group("s3"))), (std::vector<std::size_t>{1, 2, 3}));
  for (const auto& key : bundled_keys()) {
    const auto g = group(key);
    const auto classes = conjugacy_classes(*g);
    EXPECT_EQ(sorted_sizes(classes), brute_force_class_sizes(*g)) << key;
    EXPECT_EQ(classes.front(), std::vector<ElementIndex>{0});
    std::size_t total = 0;
    for (const auto& c : classes) {
      total += c.size();
      EXPECT_EQ(g->order() % c.size(), 0u);
    }
    EXPECT_EQ(total, g->order());
  }
}

TEST(Group, TrivialGroupHasOneClass) {
  const auto g = make_group(FiniteGroup::from_table("1", {"e"}, {{0}}));
  EXPECT_EQ(conjugacy_classes(*g).size(), 1u);
  EXPECT_EQ(all_subgroups(g).size(), 1u);
}

TEST(Group, SubgroupCountsMatchExamples) {
  auto orders = [](const std::vector<Subgroup>& subs) {
    std::vector<std::size_t> o;
    for (const auto& s : subs) o.push_back(s.size());
    return o;
  };
  EXPECT_EQ(orders(all_subgroups(group("q8"))), (std::vector<std::size_t>{1, 2, 4, 4, 4, 8}));
  EXPECT_EQ(orders(all_subgroups(group("s3"))), (std::vector<std::size_t>{1, 2, 2, 2, 3, 6}));
  EXPECT_EQ(all_subgroups(group("c2")).size(), 2u);
}

TEST(Group, SubgroupLatticeMatchesExhaustiveSearch) {
  for (const auto& key : bundled_keys()) {
    const auto g = group(key);
    const auto subs = all_subgroups(g);
    std::set<std::vector<ElementIndex>> got;
    for (const auto& s : subs) {
      got.insert(s.members());
      EXPECT_EQ(g->order() % s.size(), 0u);
      EXPECT_TRUE(std::is_sorted(s.members().begin(), s.members().end()));
    }
    EXPECT_EQ(got.size(), subs.size()) << key << ": duplicates";
    EXPECT_EQ(got, brute_force_subgroups(*g)) << key;
    EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
  }
}

TEST(Group, SubgroupBoundIsEnforced) {
  EXPECT_THROW(all_subgroups(group("c2xq8"), 8), InputError);
}

TEST(Group, NormalityExamples) {
  const auto q8 = group("q8");
  EXPECT_TRUE(is_normal(Subgroup::from_members(q8, {0, el(*q8, "-1")})));
  const auto s3 = group("s3");
  EXPECT_FALSE(is_normal(Subgroup::from_members(s3, {0, el(*s3, "(12)")})));
  EXPECT_TRUE(is_normal(Subgroup::whole(s3)));
}

TEST(Group, NormalityMatchesConjugationOracle) {
  for (const auto& key : bundled_keys()) {
    const auto g = group(key);
    for (const auto& h : all_subgroups(g)) {
      bool oracle = true;
      for (ElementIndex x = 0; x < g->order() && oracle; ++x) {
        for (auto m : h.members()) {
          if (!h.contains(g->mul(g->mul(x, m), g->inverse(x)))) {
            oracle = false;
            break;
          }
        }
      }
      EXPECT_EQ(is_normal(h), oracle) << key;
    }
  }
}

TEST(Group, LeftCosetExamples) {
  const auto q8 = group("q8");
  EXPECT_EQ(left_cosets(Subgroup::from_members(q8, {0, el(*q8, "-1")})).size(), 4u);
  EXPECT_EQ(left_cosets(Subgroup::whole(q8)), std::vector<ElementIndex>{0});
  EXPECT_EQ(left_cosets(Subgroup::trivial(q8)).size(), 8u);
}

TEST(Group, CosetRepresentativesAreMinimal) {
  for (const auto& key : bundled_keys()) {
    const auto g = group(key);
    for (const auto& h : all_subgroups(g)) {
      const auto reps = left_cosets(h);
      EXPECT_EQ(reps.size(), h.index());
      for (auto r : reps) {
        for (auto m : h.members()) EXPECT_LE(r, g->mul(r, m));
        EXPECT_EQ(canonical_coset_representative(h, r), r);
      }
    }
  }
}

TEST(Group, QuotientProductIsWellDefined) {
  for (const auto& key : bundled_keys()) {
    const auto g = group(key);
    for (const auto& h : all_subgroups(g)) {
      if (!is_normal(h)) continue;
      for (ElementIndex a = 0; a < g->order(); ++a) {
        for (ElementIndex b = 0; b < g->order(); ++b) {
          const auto base = canonical_coset_representative(h, g->mul(a, b));
          for (auto m : h.members()) {
            EXPECT_EQ(canonical_coset_representative(h, g->mul(g->mul(a, m), b)), base);
          }
        }
      }
    }
  }
}

TEST(Group, InvalidTablesAreRejected) {
  EXPECT_THROW(FiniteGroup::from_table("bad", {"a", "b"}, {{1, 0}, {0, 1}}), InputError);  // 0 is not the identity
  EXPECT_THROW(FiniteGroup::from_table("bad", {"e", "x"}, {{0, 1}, {1, 1}}), InputError);  // x has no inverse
  EXPECT_THROW(FiniteGroup::from_table("bad", {"e", "x"}, {{0, 1}, {1, 2}}), InputError);  // out of range
  // Identity and inverses fine, associativity fails.
  EXPECT_THROW(FiniteGroup::from_table("bad", {"e", "a", "b"}, {{0, 1, 2}, {1, 0, 0}, {2, 0, 0}}), InputError);
  EXPECT_THROW(FiniteGroup::from_table("c4", {"e", "a", "a2", "a3"}, {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}}, {2}),
               InputError);
}

TEST(Group, SubsetsThatAreNotSubgroupsAreRejected) {
  const auto q8 = group("q8");
  EXPECT_THROW(Subgroup::from_members(q8, {0, el(*q8, "i")}), InputError);
  EXPECT_THROW(Subgroup::from_members(q8, {el(*q8, "-1")}), InputError);
}

TEST(Group, SquareRootsOfIdentity) {
  EXPECT_EQ(count_square_roots_of_identity(*group("q8")), 2u);
  EXPECT_EQ(count_square_roots_of_identity(*group("s3")), 4u);
  EXPECT_EQ(count_square_roots_of_identity(*group("d4")), 6u);
}
