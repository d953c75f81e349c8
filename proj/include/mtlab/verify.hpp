#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drivers.hpp"
#include "oracles.hpp"
#include "position_set.hpp"
#include "search.hpp"
#include "synthetic.hpp"
#include "ttable.hpp"

namespace mtlab {

enum class Suite { Equivalence, SssOrder, Dominance, MinimalTree, NullWindow, MtdExactGuess };

inline constexpr std::array kAllSuites = {Suite::Equivalence, Suite::SssOrder,   Suite::Dominance,
                                          Suite::MinimalTree, Suite::NullWindow, Suite::MtdExactGuess};

inline std::string_view to_string(Suite s)
{
    switch (s) {
    case Suite::Equivalence: return "equivalence";
    case Suite::SssOrder: return "sss-order";
    case Suite::Dominance: return "dominance";
    case Suite::MinimalTree: return "minimal-tree";
    case Suite::NullWindow: return "null-window";
    case Suite::MtdExactGuess: return "mtd-exact-guess";
    }
    return "?";
}

inline Suite parse_suite(std::string_view id)
{
    for (Suite s : kAllSuites) {
        if (to_string(s) == id) return s;
    }
    throw std::invalid_argument("unknown verify suite '" + std::string(id) + "'");
}

/// Default case count per suite (trees, or calls for null-window).
inline std::uint64_t default_count(Suite s)
{
    switch (s) {
    case Suite::Equivalence: return 1000;
    case Suite::SssOrder:
    case Suite::Dominance: return 200;
    case Suite::MinimalTree: return 0; // fixed grid
    case Suite::NullWindow: return 100000;
    case Suite::MtdExactGuess: return 100;
    }
    return 0;
}

struct VerifyReport {
    Suite suite = Suite::Equivalence;
    bool passed = true;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::uint64_t evictions = 0; // table entries lost across the whole suite
    std::vector<std::string> counterexamples; // first few only
    std::vector<std::string> notes;

    void fail(std::string what)
    {
        passed = false;
        ++failures;
        if (counterexamples.size() < 10) counterexamples.push_back(std::move(what));
    }
};

namespace detail {

/// Counter-based draws for suite generation.
class SuiteRng {
public:
    explicit SuiteRng(std::uint64_t seed) : state_(mix64(seed ^ 0x7375697465ULL)) {}
    std::uint64_t next() { return mix64(state_++); }
    int between(int lo, int hi) { return lo + static_cast<int>(next() % std::uint64_t(hi - lo + 1)); }
    template <class T, std::size_t N>
    T pick(const std::array<T, N>& xs) { return xs[next() % N]; }

private:
    std::uint64_t state_;
};

inline TreeConfig random_tree(SuiteRng& rng, int wmin, int wmax, int dmin, int dmax)
{
    static constexpr std::array<double, 3> kOrdering = {0.5, 0.9, 1.0};
    static constexpr std::array<int, 3> kRange = {2, 10, 100};
    TreeConfig c;
    c.width = rng.between(wmin, wmax);
    c.depth = rng.between(dmin, dmax);
    c.seed = rng.next() >> 16;
    c.model = (rng.next() & 1) ? ValueModel::EdgeDelta : ValueModel::IidLeaf;
    c.ordering = rng.pick(kOrdering);
    c.range = rng.pick(kRange);
    return c;
}

inline std::string describe(const TreeConfig& c) { return format_tree_config(c); }

template <class Table>
void count_loss(VerifyReport& r, const Table& t)
{
    r.evictions += t.stats().overwrites + t.stats().rejected;
}

template <class Table>
void suite_equivalence(VerifyReport& rep, std::uint64_t seed, std::uint64_t count)
{
    SuiteRng rng(seed);
    for (std::uint64_t i = 0; i < count; ++i) {
        const TreeConfig cfg = random_tree(rng, 2, 5, 2, 8);
        const SyntheticTree tree(cfg);
        const Value want = brute_minimax(tree, cfg.depth);
        DriverParams p;
        p.first_guess = static_cast<Value>(rng.between(-cfg.range, cfg.range));
        p.aspiration_delta = std::max<Value>(1, static_cast<Value>(tree.leaf_value_stddev() / 8));
        ++rep.cases;
        for (Algorithm a : kAllAlgorithms) {
            Table table(tree.table_bits());
            Searcher<SyntheticTree, Table> s(tree, table);
            Value got;
            try {
                got = run_algorithm(s, a, cfg.depth, p).value;
            } catch (const SoundnessError& ex) {
                rep.fail(describe(cfg) + " algo=" + std::string(to_string(a)) + " soundness: " + ex.what());
                continue;
            }
            count_loss(rep, table);
            if (got != want) {
                rep.fail(describe(cfg) + " algo=" + std::string(to_string(a)) + " got " + std::to_string(got) +
                         " want " + std::to_string(want));
            }
        }
        // Every fourth tree also goes through iterative deepening, checked
        // against the oracle at every depth.
        if (i % 4 == 0) {
            for (Algorithm a : {Algorithm::MtdF, Algorithm::AspNegaScout, Algorithm::AbSss}) {
                Table table(tree.table_bits());
                Searcher<SyntheticTree, Table> s(tree, table);
                try {
                    const auto iters = iterative_deepening(s, a, cfg.depth, p);
                    for (const auto& it : iters) {
                        const Value w = brute_minimax(tree, it.depth);
                        if (it.result.value != w) {
                            rep.fail(describe(cfg) + " id algo=" + std::string(to_string(a)) + " depth " +
                                     std::to_string(it.depth) + " got " + std::to_string(it.result.value) +
                                     " want " + std::to_string(w));
                        }
                    }
                } catch (const SoundnessError& ex) {
                    rep.fail(describe(cfg) + " id algo=" + std::string(to_string(a)) + " soundness: " + ex.what());
                }
            }
        }
    }
}

template <class Table>
void suite_sss_order(VerifyReport& rep, std::uint64_t seed, std::uint64_t count, bool dominance)
{
    SuiteRng rng(seed ^ 0x535353ULL);
    std::uint64_t sss_leaves = 0, ab_leaves = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const TreeConfig cfg = random_tree(rng, 2, 4, 2, 6);
        const SyntheticTree tree(cfg);
        ++rep.cases;
        LeafTrace sss;
        try {
            sss = trace_capture<SyntheticTree, Table>(tree, Algorithm::AbSss, cfg.depth, tree.table_bits());
        } catch (const std::exception& ex) {
            rep.fail(describe(cfg) + " capture failed: " + ex.what());
            continue;
        }
        if (dominance) {
            const LeafTrace ab = trace_capture<SyntheticTree, Table>(tree, Algorithm::AlphaBeta, cfg.depth,
                                                                     tree.table_bits());
            const std::set<std::uint64_t> distinct(sss.begin(), sss.end());
            sss_leaves += distinct.size();
            ab_leaves += ab.size();
            if (distinct.size() > ab.size()) {
                rep.fail(describe(cfg) + " ab-sss evaluated " + std::to_string(distinct.size()) +
                         " distinct leaves, alpha-beta " + std::to_string(ab.size()));
            }
        } else {
            const OracleResult oracle = stockman_sss(tree, cfg.depth);
            if (oracle.leaf_trace != sss) {
                std::size_t k = 0;
                while (k < sss.size() && k < oracle.leaf_trace.size() && sss[k] == oracle.leaf_trace[k]) ++k;
                rep.fail(describe(cfg) + " traces diverge at leaf " + std::to_string(k) + " (ab-sss " +
                         std::to_string(sss.size()) + " leaves, stockman " +
                         std::to_string(oracle.leaf_trace.size()) + ")");
            } else if (oracle.value != brute_minimax(tree, cfg.depth)) {
                rep.fail(describe(cfg) + " stockman value differs from brute force");
            }
        }
    }
    if (dominance && ab_leaves > 0) {
        std::ostringstream os;
        os << "total leaves: ab-sss " << sss_leaves << ", alpha-beta " << ab_leaves << " (ratio "
           << double(sss_leaves) / double(ab_leaves) << ")";
        rep.notes.push_back(os.str());
    }
}

inline void suite_minimal_tree(VerifyReport& rep, std::uint64_t seed)
{
    for (int w = 1; w <= 4; ++w) {
        for (int d = 0; d <= 6; ++d) {
            for (ValueModel m : {ValueModel::EdgeDelta, ValueModel::IidLeaf}) {
                for (std::uint64_t k = 0; k < 3; ++k) {
                    TreeConfig cfg;
                    cfg.width = w;
                    cfg.depth = d;
                    cfg.seed = seed * 3 + k;
                    cfg.model = m;
                    cfg.ordering = 1.0;
                    cfg.range = 50;
                    const SyntheticTree tree(cfg);
                    SearchStats st;
                    plain_alphabeta(tree, tree.root(), Window::full(), d, &st);
                    ++rep.cases;
                    const auto want = minimal_tree_leaves(w, d);
                    if (st.nbp != want) {
                        rep.fail(describe(cfg) + " nbp " + std::to_string(st.nbp) + " want " + std::to_string(want));
                    }
                }
            }
        }
    }
}

template <class Table>
void suite_null_window(VerifyReport& rep, std::uint64_t seed, std::uint64_t calls)
{
    SuiteRng rng(seed ^ 0x4e554c4cULL);
    constexpr int kCallsPerTree = 50;
    std::uint64_t low = 0, high = 0;
    while (rep.cases < calls) {
        const TreeConfig cfg = random_tree(rng, 2, 4, 2, 5);
        const SyntheticTree tree(cfg);
        Table table(tree.table_bits());
        Searcher<SyntheticTree, Table> s(tree, table);
        const int reach = cfg.model == ValueModel::EdgeDelta ? cfg.range * cfg.depth : cfg.range;
        // One search horizon per tree, so a node always has the same remaining
        // depth and the table never answers with a deeper result.
        const int horizon = rng.between(1, cfg.depth);
        for (int k = 0; k < kCallsPerTree && rep.cases < calls; ++k) {
            auto pos = tree.root();
            const int steps = rng.between(0, std::min(2, horizon));
            for (int j = 0; j < steps; ++j) {
                const auto kids = tree.successors(pos);
                pos = kids[rng.next() % kids.size()];
            }
            const int depth = horizon - tree.ply(pos);
            const Value f = brute_minimax(tree, pos, depth);
            const Value gamma = (rng.next() & 1) ? f + rng.between(-4, 4) : rng.between(-reach - 2, reach + 2);
            const Window w = Window::null_below(gamma);
            const Value g = s.mt_alphabeta(pos, w, depth);
            ++rep.cases;
            const auto cls = classify_result(g, w);
            const std::string where = describe(cfg) + " node=" + std::to_string(pos) + " depth=" +
                                      std::to_string(depth) + " gamma=" + std::to_string(gamma);
            if (cls == ResultClass::Exact) {
                rep.fail(where + ": null window returned EXACT");
            } else if (cls == ResultClass::FailLow) {
                ++low;
                if (g < f) rep.fail(where + ": fail-low g=" + std::to_string(g) + " below value " + std::to_string(f));
            } else {
                ++high;
                if (g > f) rep.fail(where + ": fail-high g=" + std::to_string(g) + " above value " + std::to_string(f));
            }
        }
        count_loss(rep, table);
    }
    rep.notes.push_back("fail-low " + std::to_string(low) + ", fail-high " + std::to_string(high));
}

template <class Table>
void suite_mtd_exact_guess(VerifyReport& rep, std::uint64_t seed, std::uint64_t count)
{
    SuiteRng rng(seed ^ 0x4d5444ULL);
    for (std::uint64_t i = 0; i < count; ++i) {
        const TreeConfig cfg = random_tree(rng, 2, 5, 2, 7);
        const SyntheticTree tree(cfg);
        const Value f = brute_minimax(tree, cfg.depth);
        Table table(tree.table_bits());
        Searcher<SyntheticTree, Table> s(tree, table);
        ++rep.cases;
        const DriverResult r = mtd_f(s, cfg.depth, f);
        count_loss(rep, table);
        if (r.ab_calls != 2 || r.value != f) {
            rep.fail(describe(cfg) + " guess " + std::to_string(f) + ": " + std::to_string(r.ab_calls) +
                     " calls, value " + std::to_string(r.value));
        }
    }
}

} // namespace detail

/// Run one property suite with fixed seeds. count = 0 uses the suite's
/// default size. Failures are reported, never thrown.
template <class Table = TranspositionTable>
VerifyReport run_verify(Suite suite, std::uint64_t seed = 1, std::uint64_t count = 0)
{
    VerifyReport rep;
    rep.suite = suite;
    if (count == 0) count = default_count(suite);
    try {
        switch (suite) {
        case Suite::Equivalence: detail::suite_equivalence<Table>(rep, seed, count); break;
        case Suite::SssOrder: detail::suite_sss_order<Table>(rep, seed, count, false); break;
        case Suite::Dominance: detail::suite_sss_order<Table>(rep, seed, count, true); break;
        case Suite::MinimalTree: detail::suite_minimal_tree(rep, seed); break;
        case Suite::NullWindow: detail::suite_null_window<Table>(rep, seed, count); break;
        case Suite::MtdExactGuess: detail::suite_mtd_exact_guess<Table>(rep, seed, count); break;
        }
    } catch (const std::exception& ex) {
        rep.fail(std::string("aborted: ") + ex.what());
    }
    return rep;
}

inline void print_report(const VerifyReport& r, std::ostream& out)
{
    out << to_string(r.suite) << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.cases << " cases, "
        << r.failures << " failures, " << r.evictions << " evictions)\n";
    for (const auto& n : r.notes) out << "  note: " << n << '\n';
    for (const auto& c : r.counterexamples) out << "  counterexample: " << c << '\n';
}

} // namespace mtlab
