#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "mtlab/core.hpp"
#include "mtlab/search.hpp"
#include "mtlab/synthetic.hpp"

namespace mtlab {
namespace {

std::vector<Value> leaf_values(const SyntheticTree& t)
{
    std::vector<Value> out;
    for (SyntheticTree::Position p = 0; p < t.node_count(); ++p) {
        if (t.successors(p).empty()) out.push_back(t.max_value(p));
    }
    return out;
}

TEST(SyntheticTree, Deterministic)
{
    for (auto model : {ValueModel::IidLeaf, ValueModel::EdgeDelta}) {
        const TreeConfig c{.width = 3, .depth = 5, .seed = 99, .model = model, .ordering = 0.7};
        const SyntheticTree a(c), b(c);
        EXPECT_EQ(leaf_values(a), leaf_values(b));
        for (SyntheticTree::Position p = 0; p < a.node_count(); ++p) ASSERT_EQ(a.key(p), b.key(p));
        TreeConfig other = c;
        other.seed = 100;
        EXPECT_NE(leaf_values(a), leaf_values(SyntheticTree(other)));
    }
}

TEST(SyntheticTree, Shape)
{
    const SyntheticTree t({.width = 3, .depth = 4, .seed = 1});
    EXPECT_EQ(t.node_count(), 1u + 3 + 9 + 27 + 81);
    EXPECT_EQ(tree_node_count(3, 4), 121u);
    EXPECT_EQ(leaf_values(t).size(), 81u);
    EXPECT_EQ(t.ply(t.root()), 0);
    for (auto c : t.successors(t.root())) EXPECT_EQ(t.ply(c), 1);
}

TEST(SyntheticTree, WidthOneHasSingleLeaf)
{
    const SyntheticTree t({.width = 1, .depth = 7, .seed = 4});
    EXPECT_EQ(leaf_values(t).size(), 1u);
    EXPECT_EQ(t.node_count(), 8u);
}

TEST(SyntheticTree, RejectsBadConfig)
{
    EXPECT_THROW(SyntheticTree({.width = 0, .depth = 2}), std::invalid_argument);
    EXPECT_THROW(SyntheticTree({.width = 2, .depth = -1}), std::invalid_argument);
    EXPECT_THROW(SyntheticTree({.width = 2, .depth = 2, .ordering = 1.5}), std::invalid_argument);
    EXPECT_THROW(SyntheticTree({.width = 2, .depth = 2, .ordering = -0.1}), std::invalid_argument);
    EXPECT_THROW(SyntheticTree({.width = 2, .depth = 2, .range = -1}), std::invalid_argument);
    EXPECT_THROW(SyntheticTree({.width = 64, .depth = 8}), BudgetExceeded);
}

TEST(SyntheticTree, KeysAreUniqueAndFitTheTable)
{
    const SyntheticTree t({.width = 5, .depth = 5, .seed = 7});
    std::set<std::uint64_t> keys, slots;
    const std::uint64_t mask = (std::uint64_t{1} << t.table_bits()) - 1;
    for (SyntheticTree::Position p = 0; p < t.node_count(); ++p) {
        keys.insert(t.key(p));
        slots.insert(t.key(p) & mask);
    }
    EXPECT_EQ(keys.size(), t.node_count());
    EXPECT_EQ(slots.size(), t.node_count());
}

TEST(SyntheticTree, LeafValuesWithinRange)
{
    const SyntheticTree t({.width = 4, .depth = 3, .seed = 12, .model = ValueModel::IidLeaf, .range = 10});
    for (Value v : leaf_values(t)) {
        EXPECT_GE(v, -10);
        EXPECT_LE(v, 10);
    }
}

TEST(SyntheticTree, EdgeModelChildDiffersByEdge)
{
    const SyntheticTree t({.width = 3, .depth = 4, .seed = 5, .model = ValueModel::EdgeDelta, .range = 8});
    for (SyntheticTree::Position p = 0; p < t.node_count(); ++p) {
        for (auto c : t.successors(p)) {
            EXPECT_LE(std::abs(t.max_value(c) - t.max_value(p)), 8);
        }
    }
}

// Perfect ordering puts the minimax-best child first at every inner node.
TEST(SyntheticTree, PerfectOrderingPutsBestFirst)
{
    for (auto model : {ValueModel::IidLeaf, ValueModel::EdgeDelta}) {
        const SyntheticTree t({.width = 4, .depth = 4, .seed = 31, .model = model, .ordering = 1.0});
        for (SyntheticTree::Position p = 0; p < t.node_count(); ++p) {
            const auto kids = t.successors(p);
            if (kids.empty()) continue;
            const bool max_node = t.ply(p) % 2 == 0;
            for (auto c : kids) {
                if (max_node) {
                    ASSERT_GE(t.minimax_value(kids[0]), t.minimax_value(c));
                } else {
                    ASSERT_LE(t.minimax_value(kids[0]), t.minimax_value(c));
                }
            }
            ASSERT_EQ(t.minimax_value(p), t.minimax_value(kids[0]));
        }
    }
}

TEST(SyntheticTree, ZeroOrderingNeverPutsUniqueBestFirst)
{
    const SyntheticTree t({.width = 3, .depth = 3, .seed = 3, .model = ValueModel::IidLeaf, .ordering = 0.0,
                           .range = 1000});
    int checked = 0;
    for (SyntheticTree::Position p = 0; p < t.node_count(); ++p) {
        const auto kids = t.successors(p);
        if (kids.empty()) continue;
        int best = 0;
        for (auto c : kids) best += t.minimax_value(c) == t.minimax_value(p);
        if (best != 1) continue;
        EXPECT_NE(t.minimax_value(kids[0]), t.minimax_value(p));
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(SyntheticTree, OrderingFrequencyTracksP)
{
    int first_best = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const SyntheticTree t({.width = 4, .depth = 2, .seed = seed, .model = ValueModel::IidLeaf,
                               .ordering = 0.6, .range = 100000});
        for (auto p : t.successors(t.root())) {
            const auto kids = t.successors(p);
            ++total;
            first_best += t.minimax_value(kids[0]) == t.minimax_value(p);
        }
        const auto top = t.successors(t.root());
        ++total;
        first_best += t.minimax_value(top[0]) == t.minimax_value(t.root());
    }
    const double freq = double(first_best) / total;
    EXPECT_NEAR(freq, 0.6, 0.12);
}

// Minimal tree on a perfectly ordered uniform tree, for even depths.
TEST(SyntheticTree, PerfectOrderingGivesMinimalLeafCount)
{
    for (int w = 2; w <= 4; ++w) {
        for (int d = 0; d <= 6; d += 2) {
            if (tree_node_count(w, d) > kMaxTreeNodes) continue;
            const SyntheticTree t({.width = w, .depth = d, .seed = std::uint64_t(w * 10 + d)});
            SearchStats stats;
            plain_alphabeta(t, t.root(), Window::full(), d, &stats);
            EXPECT_EQ(stats.nbp, minimal_tree_leaves(w, d)) << w << " " << d;
        }
    }
}

} // namespace
} // namespace mtlab
