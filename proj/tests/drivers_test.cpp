#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "mtlab/drivers.hpp"
#include "mtlab/oracles.hpp"
#include "mtlab/synthetic.hpp"
#include "test_trees.hpp"

namespace mtlab {
namespace {

using testing::ExplicitTree;
using testing::make_t1;

template <class Game>
DriverResult run(const Game& g, Algorithm a, int depth, DriverParams p = {})
{
    TranspositionTable table(16);
    Searcher<Game> s(g, table);
    return run_algorithm(s, a, depth, p);
}

void expect_history(const DriverResult& r, std::initializer_list<std::tuple<Value, Value, ResultClass>> want)
{
    ASSERT_EQ(r.bound_history.size(), want.size());
    std::size_t i = 0;
    for (const auto& [gamma, g, cls] : want) {
        EXPECT_EQ(r.bound_history[i].gamma, gamma) << "step " << i;
        EXPECT_EQ(r.bound_history[i].g, g) << "step " << i;
        EXPECT_EQ(r.bound_history[i].cls, cls) << "step " << i;
        ++i;
    }
}

TEST(AlgorithmIds, RoundTrip)
{
    for (Algorithm a : kAllAlgorithms) EXPECT_EQ(parse_algorithm(to_string(a)), a);
    EXPECT_EQ(to_string(Algorithm::MtdF), "mtd-f");
    EXPECT_EQ(to_string(Algorithm::AspNegaScout), "asp-negascout");
    EXPECT_THROW(parse_algorithm("sss"), std::invalid_argument);
}

TEST(AbSss, T1)
{
    const auto r = run(make_t1(), Algorithm::AbSss, 2);
    EXPECT_EQ(r.value, 3);
    EXPECT_EQ(r.ab_calls, 2u);
    expect_history(r, {{kInf, 3, ResultClass::FailLow}, {3, 3, ResultClass::FailHigh}});
}

TEST(AbSss, SingleLeaf)
{
    EXPECT_EQ(run(ExplicitTree(7), Algorithm::AbSss, 3).value, 7);
}

TEST(AbDual, T1)
{
    const auto r = run(make_t1(), Algorithm::AbDual, 2);
    EXPECT_EQ(r.value, 3);
    ASSERT_FALSE(r.bound_history.empty());
    EXPECT_EQ(r.bound_history.front().gamma, -kInf);
    EXPECT_EQ(r.bound_history.front().cls, ResultClass::FailHigh);
    EXPECT_LE(r.bound_history.front().g, 3);
    EXPECT_EQ(r.bound_history.back().g, 3);
    EXPECT_EQ(r.bound_history.back().cls, ResultClass::FailLow);
}

TEST(AbDual, SingleLeaf)
{
    EXPECT_EQ(run(ExplicitTree(-4), Algorithm::AbDual, 1).value, -4);
}

TEST(MtdF, ExactGuessTakesTwoCalls)
{
    const auto r = run(make_t1(), Algorithm::MtdF, 2, {.first_guess = 3});
    EXPECT_EQ(r.value, 3);
    EXPECT_EQ(r.ab_calls, 2u);
    expect_history(r, {{3, 3, ResultClass::FailHigh}, {4, 3, ResultClass::FailLow}});
}

TEST(MtdF, LowGuess)
{
    const auto r = run(make_t1(), Algorithm::MtdF, 2, {.first_guess = 0});
    EXPECT_EQ(r.value, 3);
    EXPECT_EQ(r.ab_calls, 2u);
    expect_history(r, {{0, 3, ResultClass::FailHigh}, {4, 3, ResultClass::FailLow}});
}

TEST(MtdF, InfiniteGuessMatchesAbSssTrace)
{
    const auto t1 = make_t1();
    EXPECT_EQ(trace_capture(t1, Algorithm::MtdF, 2, 8, {.first_guess = kInf}),
              trace_capture(t1, Algorithm::AbSss, 2, 8));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const SyntheticTree tree({.width = 3, .depth = 4, .seed = rng(), .ordering = 0.5});
        EXPECT_EQ(trace_capture(tree, Algorithm::MtdF, 4, tree.table_bits(), {.first_guess = kInf}),
                  trace_capture(tree, Algorithm::AbSss, 4, tree.table_bits()));
    }
}

TEST(MtdBi, T1WithinCallBound)
{
    const auto r = run(make_t1(), Algorithm::MtdBi, 2, {.bisect_lo = -16, .bisect_hi = 16});
    EXPECT_EQ(r.value, 3);
    EXPECT_LE(r.ab_calls, 7u); // ceil(log2(32)) + 2
}

TEST(MtdBi, DegenerateBracket)
{
    const ExplicitTree flat({{4, 4}, {4, 4}});
    const auto r = run(flat, Algorithm::MtdBi, 2, {.bisect_lo = 4, .bisect_hi = 4});
    EXPECT_EQ(r.value, 4);
    EXPECT_EQ(r.ab_calls, 1u);
}

TEST(MtdBi, RejectsInvertedBracket)
{
    EXPECT_THROW(run(make_t1(), Algorithm::MtdBi, 2, {.bisect_lo = 5, .bisect_hi = 4}), std::invalid_argument);
}

TEST(MtdBi, WrongBracketIsDetected)
{
    EXPECT_THROW(run(make_t1(), Algorithm::MtdBi, 2, {.bisect_lo = 5, .bisect_hi = 9}), SoundnessError);
}

TEST(AspirationNegaScout, InsideWindow)
{
    const auto r = run(make_t1(), Algorithm::AspNegaScout, 2, {.first_guess = 3, .aspiration_delta = 2});
    EXPECT_EQ(r.value, 3);
    EXPECT_EQ(r.ab_calls, 1u);
}

TEST(AspirationNegaScout, FailLowThenResearch)
{
    const auto r = run(make_t1(), Algorithm::AspNegaScout, 2, {.first_guess = 10, .aspiration_delta = 1});
    EXPECT_EQ(r.value, 3);
    ASSERT_EQ(r.ab_calls, 2u);
    EXPECT_EQ(r.bound_history[0].cls, ResultClass::FailLow);
    EXPECT_EQ(r.bound_history[1].cls, ResultClass::Exact);
}

TEST(AspirationNegaScout, FailHighThenResearch)
{
    const auto r = run(make_t1(), Algorithm::AspNegaScout, 2, {.first_guess = -10, .aspiration_delta = 1});
    EXPECT_EQ(r.value, 3);
    ASSERT_EQ(r.ab_calls, 2u);
    EXPECT_EQ(r.bound_history[0].cls, ResultClass::FailHigh);
    EXPECT_EQ(r.bound_history[1].cls, ResultClass::Exact);
}

TEST(AspirationNegaScout, RejectsNonPositiveDelta)
{
    EXPECT_THROW(run(make_t1(), Algorithm::AspNegaScout, 2, {.aspiration_delta = 0}), std::invalid_argument);
}

TEST(IterativeDeepening, MtdFMatchesOracleAtEveryDepth)
{
    const SyntheticTree tree({.width = 3, .depth = 6, .seed = 17, .model = ValueModel::EdgeDelta, .ordering = 0.9});
    TranspositionTable table(tree.table_bits());
    Searcher<SyntheticTree> s(tree, table);
    const auto iters = iterative_deepening(s, Algorithm::MtdF, 6);
    ASSERT_EQ(iters.size(), 6u);
    for (const auto& it : iters) EXPECT_EQ(it.result.value, brute_minimax(tree, it.depth)) << it.depth;
    for (std::size_t i = 1; i < iters.size(); ++i) {
        EXPECT_GE(iters[i].cumulative.nbp, iters[i - 1].cumulative.nbp);
        // the guess is the previous iteration's value
        EXPECT_EQ(iters[i].result.bound_history.front().gamma, iters[i - 1].result.value);
    }
    EXPECT_EQ(table.age(), 5);
}

TEST(IterativeDeepening, DepthOneEqualsDirectCall)
{
    const SyntheticTree tree({.width = 4, .depth = 3, .seed = 8});
    for (Algorithm a : kAllAlgorithms) {
        TranspositionTable t1(tree.table_bits()), t2(tree.table_bits());
        Searcher<SyntheticTree> s1(tree, t1), s2(tree, t2);
        const auto iters = iterative_deepening(s1, a, 1);
        ASSERT_EQ(iters.size(), 1u);
        const auto direct = run_algorithm(s2, a, 1);
        EXPECT_EQ(iters[0].result.value, direct.value);
        EXPECT_EQ(iters[0].result.bound_history.size(), direct.bound_history.size());
        EXPECT_EQ(iters[0].cumulative.nbp, direct.stats.nbp);
    }
}

TEST(IterativeDeepening, AllAlgorithmsAgreePerDepth)
{
    const SyntheticTree tree({.width = 4, .depth = 5, .seed = 23, .model = ValueModel::IidLeaf, .ordering = 0.5});
    std::vector<std::vector<Value>> values;
    for (Algorithm a : kAllAlgorithms) {
        TranspositionTable table(tree.table_bits());
        Searcher<SyntheticTree> s(tree, table);
        std::vector<Value> v;
        for (const auto& it : iterative_deepening(s, a, 5, {.aspiration_delta = 10})) v.push_back(it.result.value);
        values.push_back(v);
    }
    for (const auto& v : values) EXPECT_EQ(v, values.front());
}

TEST(IterativeDeepening, RejectsZeroDepth)
{
    const auto t1 = make_t1();
    TranspositionTable table(8);
    Searcher<ExplicitTree> s(t1, table);
    EXPECT_THROW(iterative_deepening(s, Algorithm::MtdF, 0), std::invalid_argument);
}

// Driver properties over random trees: agreement with the oracle, monotone
// bound sequences, and the MTD(f) interval invariant.
TEST(DriverProperty, RandomTrees)
{
    std::mt19937_64 rng(77);
    for (int t = 0; t < 250; ++t) {
        TreeConfig cfg;
        cfg.width = 2 + int(rng() % 4);
        cfg.depth = 2 + int(rng() % 5);
        cfg.seed = rng();
        cfg.model = (t % 2) ? ValueModel::IidLeaf : ValueModel::EdgeDelta;
        cfg.ordering = (rng() % 3) * 0.5;
        cfg.range = 1 + int(rng() % 50);
        const SyntheticTree tree(cfg);
        const Value f = brute_minimax(tree, cfg.depth);
        const Value guess = Value(rng() % 101) - 50;
        for (Algorithm a : kAllAlgorithms) {
            TranspositionTable table(tree.table_bits());
            Searcher<SyntheticTree> s(tree, table);
            const auto r = run_algorithm(s, a, cfg.depth, {.first_guess = guess, .aspiration_delta = 3});
            ASSERT_EQ(r.value, f) << to_string(a) << " " << cfg.seed;
            ASSERT_EQ(r.ab_calls, r.bound_history.size());
            ASSERT_EQ(r.bound_history.back().g, r.value);
            ASSERT_EQ(r.stats.ab_calls, r.ab_calls);
            ASSERT_LE(r.stats.nbp, r.stats.total_nodes);
            const auto& h = r.bound_history;
            if (a == Algorithm::AbSss) {
                for (std::size_t i = 0; i + 1 < h.size(); ++i) {
                    ASSERT_EQ(h[i].cls, ResultClass::FailLow);
                    if (i > 0) {
                        ASSERT_LT(h[i].g, h[i - 1].g);
                    }
                }
                ASSERT_EQ(h.back().cls, ResultClass::FailHigh);
            }
            if (a == Algorithm::AbDual) {
                for (std::size_t i = 0; i + 1 < h.size(); ++i) {
                    ASSERT_EQ(h[i].cls, ResultClass::FailHigh);
                    if (i > 0) {
                        ASSERT_GT(h[i].g, h[i - 1].g);
                    }
                }
                ASSERT_EQ(h.back().cls, ResultClass::FailLow);
            }
            if (a == Algorithm::MtdF || a == Algorithm::MtdBi) {
                Value lo = -kInf, hi = kInf;
                for (const auto& step : h) {
                    if (step.g < step.gamma) hi = step.g; else lo = step.g;
                    ASSERT_LE(lo, f);
                    ASSERT_GE(hi, f);
                }
            }
            if (a == Algorithm::MtdBi) {
                ASSERT_LE(double(r.ab_calls), std::ceil(std::log2(2.0 * kInf)) + 2);
            }
        }
        // exact guess: one fail high, one fail low
        TranspositionTable table(tree.table_bits());
        Searcher<SyntheticTree> s(tree, table);
        ASSERT_EQ(mtd_f(s, cfg.depth, f).ab_calls, 2u);
    }
}

} // namespace
} // namespace mtlab
