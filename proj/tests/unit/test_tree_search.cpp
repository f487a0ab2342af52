#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "bbr/algebra.hpp"
#include "bbr/errors.hpp"
#include "bbr/tree_search.hpp"
#include "support/oracles.hpp"

using namespace bbr;

namespace {

AbelianSpec ab(std::vector<std::uint64_t> d) { return abelian_from_invariant_factors(std::move(d)); }

double log_floor(const OperationSet& ops) {
  return std::log(static_cast<double>(ops.size())) / std::log(static_cast<double>(ops.n()));
}

std::vector<std::size_t> sorted_depths(const TreeVerification& v) {
  auto d = v.depth;
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST(OperationSet, RejectsDuplicatesAndMixedSizes) {
  const auto z3 = build_abelian(ab({3}));
  EXPECT_THROW(OperationSet(3, {z3, z3}, "dup"), ValidationError);
  EXPECT_THROW(OperationSet(3, {build_abelian(ab({2}))}, "size"), ValidationError);
  const OperationSet ok(3, {z3}, "one");
  EXPECT_EQ(ok.find(z3), OperationId{0});
  EXPECT_FALSE(ok.find(build_max_chain(3)).has_value());
}

TEST(EnumerateXg, Examples) {
  EXPECT_EQ(enumerate_x_g(build_abelian(ab({4}))).size(), 12u);
  EXPECT_EQ(enumerate_x_g(build_abelian(ab({3}))).size(), 3u);
  EXPECT_EQ(enumerate_x_g(build_max_chain(3)).size(), 6u);
}

TEST(EnumerateXg, MatchesTransportedTables) {
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (const auto& spec : abelian_groups_of_order(n)) {
      const auto t = build_abelian(spec);
      const auto ops = enumerate_x_g(t);
      std::set<bbr::testing::Rows> expected;
      for (const auto& f : bbr::testing::all_permutations(n))
        expected.insert(bbr::testing::transport(bbr::testing::rows_of(t), f));
      std::set<bbr::testing::Rows> got;
      for (const auto& op : ops.ops()) got.insert(bbr::testing::rows_of(op));
      EXPECT_EQ(got, expected) << to_string(spec);
    }
  }
}

TEST(EnumerateXg, PrimeFastPathMatchesOrbitSize) {
  for (std::uint64_t p : {7u, 11u}) {
    const auto t = build_abelian(ab({p}));
    std::set<OpTable> seen;
    std::size_t visited = 0;
    if (p == 7) {
      const auto n = for_each_x_g(t, [&](const OpTable& op) {
        ++visited;
        seen.insert(op);
        EXPECT_TRUE(are_isomorphic(op, t).has_value());
      });
      EXPECT_EQ(n, visited);
      EXPECT_EQ(seen.size(), bbr::testing::naive_orbit_size(bbr::testing::rows_of(t)));
    } else {
      const auto n = for_each_x_g(t, [&](const OpTable&) { ++visited; });
      EXPECT_EQ(n, 3991680u);
      EXPECT_EQ(visited, 3991680u);
    }
  }
  EXPECT_THROW(enumerate_x_g(build_abelian(ab({11})), 1000), CapabilityError);
  EXPECT_THROW(enumerate_x_g(build_abelian(ab({2, 6}))), CapabilityError);
}

TEST(EnumerateXr, GaloisFourHasThreeMultiplications) {
  const auto ops = enumerate_x_r(build_ring(parse_ring("gf4")));
  EXPECT_EQ(ops.size(), 3u);
  EXPECT_EQ(enumerate_x_r(build_ring(parse_ring("z4"))).size(), 2u);
}

TEST(VerifyQueryTree, SortingTreeForThreeElements) {
  const auto ops = enumerate_x_g(build_max_chain(3));
  const auto tree = bbr::testing::sorting_tree_3();
  const auto v = verify_query_tree(tree, ops);
  ASSERT_TRUE(v.ok) << v.failure;
  EXPECT_EQ(sorted_depths(v), (std::vector<std::size_t>{2, 2, 3, 3, 3, 3}));
  std::set<std::size_t> leaves;
  for (const auto& l : v.leaf_index) leaves.insert(*l);
  EXPECT_EQ(leaves.size(), tree.leaf_count());
  const auto s = tree_stats(tree, ops);
  EXPECT_EQ(s.worst_depth, 3u);
  EXPECT_NEAR(s.avg_depth, 16.0 / 6.0, 1e-12);
  EXPECT_GE(s.avg_depth, log_floor(ops) - 1e-9);
}

TEST(VerifyQueryTree, CyclicFourTree) {
  const auto ops = enumerate_x_g(build_abelian(ab({4})));
  const auto tree = bbr::testing::cyclic4_tree();
  const auto v = verify_query_tree(tree, ops);
  ASSERT_TRUE(v.ok) << v.failure;
  EXPECT_EQ(tree.leaf_count(), 12u);
  EXPECT_EQ(sorted_depths(v), std::vector<std::size_t>(12, 2));
  const auto s = tree_stats(tree, ops);
  EXPECT_EQ(s.worst_depth, 2u);
  EXPECT_DOUBLE_EQ(s.avg_depth, 2.0);
  EXPECT_GE(s.avg_depth, log_floor(ops) - 1e-9);
}

TEST(VerifyQueryTree, SingleLeaf) {
  const OperationSet one(3, {build_abelian(ab({3}))}, "one");
  const auto v = verify_query_tree(QueryTree::leaf(), one);
  EXPECT_TRUE(v.ok);
  const auto s = tree_stats(QueryTree::leaf(), one);
  EXPECT_EQ(s.worst_depth, 0u);
  EXPECT_EQ(s.avg_depth, 0.0);
}

TEST(VerifyQueryTree, ReportsFailures) {
  const auto ops = enumerate_x_g(build_max_chain(3));
  {
    // Missing branch: drop the answer-1 subtree.
    auto tree = bbr::testing::sorting_tree_3();
    tree.children.pop_back();
    const auto v = verify_query_tree(tree, ops);
    EXPECT_FALSE(v.ok);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(ops[*v.witness](0, 1), 1u);
    EXPECT_THROW(tree_stats(tree, ops), ValidationError);
  }
  {
    // Two operations share a leaf: stop after the root query.
    using T = QueryTree;
    const auto tree = T::node(0, 1, {{0, T::leaf()}, {1, T::leaf()}});
    EXPECT_FALSE(verify_query_tree(tree, ops).ok);
  }
  {
    // Repeated branch label.
    using T = QueryTree;
    const auto tree = T::node(0, 1, {{0, T::leaf()}, {0, T::leaf()}});
    EXPECT_FALSE(verify_query_tree(tree, ops).ok);
  }
  {
    // A spare leaf nobody reaches breaks surjectivity.
    auto tree = bbr::testing::sorting_tree_3();
    tree.children.back().subtree.children.push_back({1, QueryTree::leaf()});
    EXPECT_FALSE(verify_query_tree(tree, ops).ok);
  }
  {
    // A labelled leaf must name the operation that reaches it.
    const OperationSet one(3, {build_abelian(ab({3}))}, "one");
    EXPECT_TRUE(verify_query_tree(QueryTree::leaf(0), one).ok);
    const OperationSet two(3, {build_abelian(ab({3})), build_max_chain(3)}, "two");
    using T = QueryTree;
    const auto tree = T::node(0, 0, {{0, T::leaf(1)}, {1, T::leaf(0)}, {2, T::leaf(0)}});
    EXPECT_FALSE(verify_query_tree(tree, two).ok);
  }
}

TEST(MinimalWorstCase, Examples) {
  struct Case {
    OpTable canonical;
    std::size_t depth;
  };
  for (const auto& c : {Case{build_abelian(ab({4})), 2}, Case{build_max_chain(3), 3},
                        Case{build_max_chain(4), 5}, Case{build_abelian(ab({2, 2})), 1},
                        Case{build_abelian(ab({3})), 1}, Case{build_abelian(ab({5})), 3}}) {
    const auto ops = enumerate_x_g(c.canonical);
    const auto r = minimal_worst_case(ops);
    EXPECT_EQ(r.depth, c.depth);
    EXPECT_GE(static_cast<double>(r.depth), std::ceil(log_floor(ops) - 1e-9));
    const auto v = verify_query_tree(r.tree, ops);
    ASSERT_TRUE(v.ok) << v.failure;
    const auto s = tree_stats(r.tree, ops);
    EXPECT_EQ(s.worst_depth, r.depth);
    EXPECT_GE(s.avg_depth, log_floor(ops) - 1e-9);
  }
}

TEST(MinimalWorstCase, Deterministic) {
  const auto ops = enumerate_x_g(build_max_chain(4));
  const auto a = minimal_worst_case(ops);
  const auto b = minimal_worst_case(ops);
  EXPECT_EQ(a.depth, b.depth);
  EXPECT_EQ(render_tree(a.tree), render_tree(b.tree));
  // Canonical witness: the root asks the first informative query.
  ASSERT_TRUE(a.tree.query.has_value());
  EXPECT_EQ(*a.tree.query, (Query{0, 1}));
}

TEST(MinimalWorstCase, BudgetNamesMeasuredSize) {
  const auto ops = enumerate_x_g(build_max_chain(5));
  try {
    minimal_worst_case(ops, 100);
    FAIL();
  } catch (const CapabilityError& e) {
    EXPECT_NE(std::string(e.what()).find("120"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

TEST(MinimalWorstCase, SingletonNeedsNothing) {
  const OperationSet one(2, {build_abelian(ab({2}))}, "one");
  const auto r = minimal_worst_case(one);
  EXPECT_EQ(r.depth, 0u);
  EXPECT_TRUE(r.tree.is_leaf());
}

TEST(RenderTree, IndentsAnswers) {
  const auto text = render_tree(bbr::testing::cyclic4_tree());
  EXPECT_EQ(text.rfind("0*0", 0), 0u);
  EXPECT_NE(text.find("  = 1: 0*1"), std::string::npos);
}
