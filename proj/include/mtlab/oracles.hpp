#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "drivers.hpp"
#include "search.hpp"
#include "ttable.hpp"

// Reference implementations for tests and the verify suites. Clarity over
// speed throughout.

namespace mtlab {

inline constexpr std::uint64_t kOracleNodeBudget = 10'000'000;

namespace detail {

template <GameAdapter Game>
Value brute_negamax(const Game& game, const typename Game::Position& pos, int depth,
                    std::uint64_t& budget)
{
    if (budget == 0) throw BudgetExceeded("brute_minimax: node budget exceeded");
    --budget;
    if (game.is_terminal(pos, depth)) return game.evaluate(pos);
    Value best = -kInf;
    for (const auto& c : game.successors(pos)) {
        best = std::max(best, -brute_negamax(game, c, depth - 1, budget));
    }
    return best;
}

} // namespace detail

/// Exact negamax value by full enumeration, no pruning. The value is from the
/// point of view of the side to move at pos.
template <GameAdapter Game>
Value brute_minimax(const Game& game, const typename Game::Position& pos, int depth,
                    std::uint64_t node_budget = kOracleNodeBudget)
{
    if (depth < 0) throw std::invalid_argument("brute_minimax: negative depth");
    return detail::brute_negamax(game, pos, depth, node_budget);
}

template <GameAdapter Game>
Value brute_minimax(const Game& game, int depth, std::uint64_t node_budget = kOracleNodeBudget)
{
    return brute_minimax(game, game.root(), depth, node_budget);
}

struct OracleResult {
    Value value = 0;
    LeafTrace leaf_trace;
};

enum class OpenStatus { Live, Solved };

/// Stockman's SSS* with an explicit OPEN list. The root is a MAX node; values
/// are in MAX terms internally and the result is returned as seen from the
/// root's side to move (same as the negamax searches).
///
/// OPEN order: merit descending, ties to the leftmost node (lexicographic
/// child-index path).
template <GameAdapter Game>
OracleResult stockman_sss(const Game& game, int depth, std::uint64_t node_budget = kOracleNodeBudget)
{
    using Position = typename Game::Position;
    if (depth < 0) throw std::invalid_argument("stockman_sss: negative depth");

    struct Item {
        std::vector<int> path;
        OpenStatus status;
        Value merit;
        Position pos;
    };
    struct ByMeritThenLeftmost {
        bool operator()(const Item& a, const Item& b) const
        {
            if (a.merit != b.merit) return a.merit > b.merit;
            return a.path < b.path;
        }
    };

    const Position root = game.root();
    // Regenerate a node from its path; the adapter's successor order is
    // deterministic, so this is the same position the searches see.
    const auto at = [&](const std::vector<int>& path) {
        Position p = root;
        for (int i : path) p = game.successors(p).at(static_cast<std::size_t>(i));
        return p;
    };
    const auto is_max_node = [](const std::vector<int>& path) { return path.size() % 2 == 0; };
    const auto is_prefix = [](const std::vector<int>& pre, const std::vector<int>& path) {
        return pre.size() < path.size() && std::equal(pre.begin(), pre.end(), path.begin());
    };

    OracleResult result;
    std::multiset<Item, ByMeritThenLeftmost> open;
    open.insert({{}, OpenStatus::Live, kInf, root});

    std::uint64_t steps = 0;
    while (!open.empty()) {
        if (++steps > node_budget) throw BudgetExceeded("stockman_sss: step budget exceeded");
        Item item = *open.begin();
        open.erase(open.begin());
        const int remaining = depth - static_cast<int>(item.path.size());

        if (item.status == OpenStatus::Live) {
            if (game.is_terminal(item.pos, remaining)) {
                result.leaf_trace.push_back(game.key(item.pos));
                const Value e = game.evaluate(item.pos);
                const Value max_e = is_max_node(item.path) ? e : -e;
                open.insert({item.path, OpenStatus::Solved, std::min(item.merit, max_e), item.pos});
            } else if (is_max_node(item.path)) {
                const auto kids = game.successors(item.pos);
                if (kids.empty()) throw std::logic_error("stockman_sss: malformed tree");
                for (std::size_t j = 0; j < kids.size(); ++j) {
                    auto p = item.path;
                    p.push_back(static_cast<int>(j));
                    open.insert({std::move(p), OpenStatus::Live, item.merit, kids[j]});
                }
            } else {
                const auto kids = game.successors(item.pos);
                if (kids.empty()) throw std::logic_error("stockman_sss: malformed tree");
                auto p = item.path;
                p.push_back(0);
                open.insert({std::move(p), OpenStatus::Live, item.merit, kids[0]});
            }
            continue;
        }

        // Solved.
        if (item.path.empty()) {
            result.value = item.merit;
            return result;
        }
        std::vector<int> parent(item.path.begin(), item.path.end() - 1);
        if (!is_max_node(item.path)) {
            // A solved MIN node solves its MAX parent; drop the parent's other
            // descendants.
            for (auto it = open.begin(); it != open.end();) {
                it = is_prefix(parent, it->path) ? open.erase(it) : std::next(it);
            }
            open.insert({parent, OpenStatus::Solved, item.merit, at(parent)});
        } else {
            const Position parent_pos = at(parent);
            const auto siblings = game.successors(parent_pos);
            const auto next = static_cast<std::size_t>(item.path.back()) + 1;
            if (next < siblings.size()) {
                auto p = parent;
                p.push_back(static_cast<int>(next));
                open.insert({std::move(p), OpenStatus::Live, item.merit, siblings[next]});
            } else {
                open.insert({parent, OpenStatus::Solved, item.merit, parent_pos});
            }
        }
    }
    throw std::logic_error("stockman_sss: OPEN list exhausted before the root was solved");
}

/// Leaf evaluation sequence of one full driver run at a fixed depth, using a
/// fresh table and literal left-to-right child order. Fails if the table lost
/// any entry, since order equivalence is undefined under eviction.
template <GameAdapter Game, class Table = TranspositionTable>
LeafTrace trace_capture(const Game& game, Algorithm algo, int depth, int tt_bits,
                        const DriverParams& params = {})
{
    Table table(tt_bits);
    Searcher<Game, Table> s(game, table, SearchOptions{.tt_move_first = false});
    LeafTrace trace;
    s.set_trace(&trace);
    run_algorithm(s, algo, depth, params);
    if (table.stats().lossy()) {
        throw std::runtime_error("trace_capture: table evicted entries during capture");
    }
    return trace;
}

} // namespace mtlab
