#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "ttable.hpp"

namespace mtlab {

struct SearchStats {
    std::uint64_t nbp = 0;         // leaf evaluations
    std::uint64_t total_nodes = 0; // every node visit, TT cutoffs included
    std::uint64_t tt_cutoffs = 0;
    std::uint64_t ab_calls = 0;    // root-level searches issued by a driver
    std::chrono::nanoseconds elapsed{0};

    SearchStats& operator+=(const SearchStats& o)
    {
        nbp += o.nbp;
        total_nodes += o.total_nodes;
        tt_cutoffs += o.tt_cutoffs;
        ab_calls += o.ab_calls;
        elapsed += o.elapsed;
        return *this;
    }
    friend SearchStats operator-(SearchStats a, const SearchStats& b)
    {
        a.nbp -= b.nbp;
        a.total_nodes -= b.total_nodes;
        a.tt_cutoffs -= b.tt_cutoffs;
        a.ab_calls -= b.ab_calls;
        a.elapsed -= b.elapsed;
        return a;
    }
};

/// Keys of evaluated positions, in evaluation order.
using LeafTrace = std::vector<std::uint64_t>;

struct SearchOptions {
    /// Search the transposition-table move before the static order. Off gives
    /// the literal left-to-right child order.
    bool tt_move_first = true;
};

/// One search instance: a game, a table, counters. Single-threaded.
template <GameAdapter Game, class Table = TranspositionTable>
class Searcher {
public:
    using Position = typename Game::Position;

    Searcher(const Game& game, Table& table, SearchOptions options = {})
        : game_(&game), table_(&table), options_(options)
    {
    }

    const Game& game() const noexcept { return *game_; }
    Table& table() noexcept { return *table_; }
    const SearchOptions& options() const noexcept { return options_; }
    SearchStats& stats() noexcept { return stats_; }
    const SearchStats& stats() const noexcept { return stats_; }

    /// Record evaluated leaf keys into trace (nullptr to stop).
    void set_trace(LeafTrace* trace) noexcept { trace_ = trace; }

    /// Null- or wide-window Alpha-Beta backed by the transposition table.
    Value mt_alphabeta(const Position& pos, Window w, int depth)
    {
        check_args(w, depth);
        return mt(pos, w.alpha, w.beta, depth);
    }

    /// Alpha-Beta with no memory at all.
    Value plain_alphabeta(const Position& pos, Window w, int depth)
    {
        check_args(w, depth);
        return plain(pos, w.alpha, w.beta, depth);
    }

    /// NegaScout sharing the transposition table; siblings after the first
    /// are probed with a null window and re-searched on a fail high inside
    /// the window.
    Value negascout(const Position& pos, Window w, int depth)
    {
        check_args(w, depth);
        return scout(pos, w.alpha, w.beta, depth);
    }

private:
    static void check_args(const Window& w, int depth)
    {
        require_valid(w);
        if (depth < 0) throw std::invalid_argument("search depth must be >= 0");
    }

    Value evaluate(const Position& pos, std::uint64_t key)
    {
        ++stats_.nbp;
        if (trace_) trace_->push_back(key);
        const Value v = game_->evaluate(pos);
        if (v <= -kInf || v >= kInf) {
            throw SoundnessError("evaluation outside (-INF, INF): " + std::to_string(v));
        }
        return v;
    }

    // Visiting order over successor indices: TT move first if enabled.
    void order(std::vector<int>& idx, std::size_t n, std::uint64_t key) const
    {
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), 0);
        if (!options_.tt_move_first) return;
        const int m = table_->probe_move(key);
        if (m > 0 && static_cast<std::size_t>(m) < n) {
            std::rotate(idx.begin(), idx.begin() + m, idx.begin() + m + 1);
        }
    }

    void save(std::uint64_t key, int depth, Value g, Value alpha, Value beta, int best)
    {
        BoundPair b;
        if (g <= alpha) {
            b.f_plus = g;
        } else if (g >= beta) {
            b.f_minus = g;
        } else {
            b.f_minus = b.f_plus = g;
        }
        table_->store(key, depth, b, best);
    }

    Value mt(const Position& pos, Value alpha, Value beta, int depth)
    {
        ++stats_.total_nodes;
        const std::uint64_t key = game_->key(pos);
        if (auto e = table_->retrieve(key, depth)) {
            if (e->bounds.f_plus <= alpha || e->bounds.f_plus == e->bounds.f_minus) {
                ++stats_.tt_cutoffs;
                return e->bounds.f_plus;
            }
            if (e->bounds.f_minus >= beta) {
                ++stats_.tt_cutoffs;
                return e->bounds.f_minus;
            }
        }
        if (game_->is_terminal(pos, depth)) {
            const Value g = evaluate(pos, key);
            table_->store(key, depth, {g, g});
            return g;
        }
        const auto children = game_->successors(pos);
        if (children.empty()) throw std::logic_error("non-terminal position without successors");
        std::vector<int> idx;
        order(idx, children.size(), key);

        Value g = -kInf;
        Value a = alpha;
        int best = kNoMove;
        for (std::size_t i = 0; i < idx.size() && g < beta; ++i) {
            const Value v = -mt(children[idx[i]], -beta, -a, depth - 1);
            if (v > g) {
                g = v;
                best = idx[i];
            }
            a = std::max(a, g);
        }
        save(key, depth, g, alpha, beta, best);
        return g;
    }

    Value plain(const Position& pos, Value alpha, Value beta, int depth)
    {
        ++stats_.total_nodes;
        if (game_->is_terminal(pos, depth)) return evaluate(pos, game_->key(pos));
        const auto children = game_->successors(pos);
        if (children.empty()) throw std::logic_error("non-terminal position without successors");
        Value g = -kInf;
        Value a = alpha;
        for (std::size_t i = 0; i < children.size() && g < beta; ++i) {
            g = std::max(g, -plain(children[i], -beta, -a, depth - 1));
            a = std::max(a, g);
        }
        return g;
    }

    Value scout(const Position& pos, Value alpha, Value beta, int depth)
    {
        ++stats_.total_nodes;
        const std::uint64_t key = game_->key(pos);
        if (auto e = table_->retrieve(key, depth)) {
            if (e->bounds.f_plus <= alpha || e->bounds.f_plus == e->bounds.f_minus) {
                ++stats_.tt_cutoffs;
                return e->bounds.f_plus;
            }
            if (e->bounds.f_minus >= beta) {
                ++stats_.tt_cutoffs;
                return e->bounds.f_minus;
            }
        }
        if (game_->is_terminal(pos, depth)) {
            const Value g = evaluate(pos, key);
            table_->store(key, depth, {g, g});
            return g;
        }
        const auto children = game_->successors(pos);
        if (children.empty()) throw std::logic_error("non-terminal position without successors");
        std::vector<int> idx;
        order(idx, children.size(), key);

        Value g = -kInf;
        Value a = alpha;
        Value b = beta;
        int best = kNoMove;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const auto& child = children[idx[i]];
            Value v = -scout(child, -b, -a, depth - 1);
            if (i > 0 && v > a && v < beta) {
                v = -scout(child, -beta, -v, depth - 1);
            }
            if (v > g) {
                g = v;
                best = idx[i];
            }
            a = std::max(a, g);
            if (g >= beta) break;
            b = a + 1;
        }
        save(key, depth, g, alpha, beta, best);
        return g;
    }

    const Game* game_;
    Table* table_;
    SearchOptions options_;
    SearchStats stats_;
    LeafTrace* trace_ = nullptr;
};

template <GameAdapter Game>
Value plain_alphabeta(const Game& game, const typename Game::Position& pos, Window w, int depth,
                      SearchStats* stats = nullptr, LeafTrace* trace = nullptr)
{
    TranspositionTable unused(kMinTableBits);
    Searcher<Game> s(game, unused);
    s.set_trace(trace);
    const Value g = s.plain_alphabeta(pos, w, depth);
    if (stats) *stats += s.stats();
    return g;
}

} // namespace mtlab
