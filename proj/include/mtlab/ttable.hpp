#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace mtlab {

inline constexpr int kNoMove = -1;
inline constexpr int kDefaultTableBits = 21;
inline constexpr int kMinTableBits = 4;
inline constexpr int kMaxTableBits = 28;

struct TTEntry {
    std::uint64_t key = 0;
    BoundPair bounds;
    std::int16_t depth = -1; // -1 marks an empty slot
    std::int16_t best_move = kNoMove;
    std::uint16_t age = 0;

    bool empty() const noexcept { return depth < 0; }
};

struct TableStats {
    std::uint64_t stores = 0;
    std::uint64_t overwrites = 0; // a live entry for a different key was replaced
    std::uint64_t rejected = 0;   // a store lost to the replacement policy
    std::uint64_t conflicts = 0;  // same-depth merge produced f- > f+
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t occupancy = 0;

    /// Stored search information was lost at some point.
    bool lossy() const noexcept { return overwrites != 0 || rejected != 0; }
};

/// Same key, same depth: both bound pairs are valid, keep the intersection.
struct IntersectMerge {
    static BoundPair merge(const BoundPair& old_b, const BoundPair& new_b) noexcept
    {
        return {std::max(old_b.f_minus, new_b.f_minus), std::min(old_b.f_plus, new_b.f_plus)};
    }
};

/// Direct-mapped transposition table holding a bound pair and a best move per
/// position. Slot = low bits of the key, full key kept for verification.
///
/// Replacement: deeper entries win, equal depth goes to the newer store, and
/// entries from an older generation are always replaceable.
template <class MergePolicy = IntersectMerge>
class BasicTranspositionTable {
public:
    explicit BasicTranspositionTable(int bits = kDefaultTableBits)
        : bits_(bits)
    {
        if (bits < kMinTableBits || bits > kMaxTableBits) {
            throw std::invalid_argument("tt_bits must be in [" + std::to_string(kMinTableBits) + ", " +
                                        std::to_string(kMaxTableBits) + "], got " +
                                        std::to_string(bits));
        }
        slots_.resize(std::size_t{1} << bits);
        mask_ = slots_.size() - 1;
    }

    int bits() const noexcept { return bits_; }
    std::size_t capacity() const noexcept { return slots_.size(); }
    std::uint16_t age() const noexcept { return age_; }
    const TableStats& stats() const noexcept { return stats_; }

    /// Entry for key if it was searched at least required_depth plies deep.
    std::optional<TTEntry> retrieve(std::uint64_t key, int required_depth)
    {
        const TTEntry& e = slots_[key & mask_];
        if (!e.empty() && e.key == key && e.depth >= required_depth) {
            ++stats_.hits;
            return e;
        }
        ++stats_.misses;
        return std::nullopt;
    }

    /// Best move recorded for key at any depth; used for ordering only.
    int probe_move(std::uint64_t key) const noexcept
    {
        const TTEntry& e = slots_[key & mask_];
        return (!e.empty() && e.key == key) ? e.best_move : kNoMove;
    }

    void store(std::uint64_t key, int depth, const BoundPair& bounds, int best_move = kNoMove)
    {
        if (!bounds.valid()) {
            throw std::logic_error("tt_store: f- (" + std::to_string(bounds.f_minus) + ") > f+ (" +
                                   std::to_string(bounds.f_plus) + ")");
        }
        if (depth < 0) throw std::logic_error("tt_store: negative depth");

        ++stats_.stores;
        TTEntry& e = slots_[key & mask_];
        const auto d = static_cast<std::int16_t>(depth);
        const auto m = static_cast<std::int16_t>(best_move);

        if (e.empty()) {
            ++stats_.occupancy;
            e = TTEntry{key, bounds, d, m, age_};
            return;
        }
        if (e.key == key) {
            if (e.depth == d) {
                BoundPair merged = MergePolicy::merge(e.bounds, bounds);
                if (!merged.valid()) {
                    ++stats_.conflicts;
                    merged = bounds;
                }
                e.bounds = merged;
                if (m != kNoMove) e.best_move = m;
                e.age = age_;
            } else if (d > e.depth || e.age < age_) {
                e = TTEntry{key, bounds, d, m != kNoMove ? m : e.best_move, age_};
            } else {
                ++stats_.rejected;
            }
            return;
        }
        if (e.age < age_ || d >= e.depth) {
            ++stats_.overwrites;
            e = TTEntry{key, bounds, d, m, age_};
        } else {
            ++stats_.rejected;
        }
    }

    /// Start a new search generation. Old entries stay readable but become
    /// the first candidates for replacement.
    void clear_generation() noexcept { ++age_; }

    void reset()
    {
        std::fill(slots_.begin(), slots_.end(), TTEntry{});
        stats_ = {};
        age_ = 0;
    }

private:
    int bits_;
    std::uint64_t mask_ = 0;
    std::uint16_t age_ = 0;
    std::vector<TTEntry> slots_;
    TableStats stats_;
};

using TranspositionTable = BasicTranspositionTable<>;

} // namespace mtlab
