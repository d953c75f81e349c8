#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtlab {

/// Integer game score. All evaluations are integers so that null windows
/// <g-1, g> are well defined.
using Value = std::int32_t;

/// Sentinel for "unbounded". Chosen so that kInf + 1 and -kInf - 1 are still
/// representable: drivers compute gamma +/- 1 next to the sentinel.
inline constexpr Value kInf = Value{1} << 30;

static_assert(kInf < std::numeric_limits<Value>::max() - 1);
static_assert(-kInf > std::numeric_limits<Value>::min() + 1);

/// Raised when a search observes a state that its own postconditions rule out
/// (non-converging driver, contradictory bounds, cross-algorithm mismatch).
class SoundnessError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An oracle or generator would exceed its node budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Window {
    Value alpha = -kInf;
    Value beta = kInf;

    constexpr bool valid() const noexcept
    {
        return alpha < beta && alpha >= -kInf && beta <= kInf;
    }
    constexpr bool is_null() const noexcept { return beta == alpha + 1; }

    static constexpr Window full() noexcept { return {-kInf, kInf}; }
    /// The null window <gamma - 1, gamma>.
    static constexpr Window null_below(Value gamma) noexcept { return {gamma - 1, gamma}; }
};

inline void require_valid(const Window& w)
{
    if (!w.valid()) {
        throw std::invalid_argument("invalid search window <" + std::to_string(w.alpha) + ", " +
                                    std::to_string(w.beta) + ">");
    }
}

/// Lower and upper bound on a minimax value. -kInf / +kInf mean "unknown".
struct BoundPair {
    Value f_minus = -kInf;
    Value f_plus = kInf;

    constexpr bool valid() const noexcept { return f_minus <= f_plus; }
    constexpr bool exact() const noexcept { return f_minus == f_plus; }
    constexpr bool contains(Value v) const noexcept { return f_minus <= v && v <= f_plus; }

    friend constexpr bool operator==(const BoundPair&, const BoundPair&) = default;
};

enum class ResultClass { Exact, FailLow, FailHigh };

/// Knuth-Moore classification of an Alpha-Beta return value g for window w.
/// FailLow means g is an upper bound, FailHigh means g is a lower bound.
constexpr ResultClass classify_result(Value g, const Window& w) noexcept
{
    if (g <= w.alpha) return ResultClass::FailLow;
    if (g >= w.beta) return ResultClass::FailHigh;
    return ResultClass::Exact;
}

inline const char* to_string(ResultClass c)
{
    switch (c) {
    case ResultClass::Exact: return "EXACT";
    case ResultClass::FailLow: return "FAIL_LOW";
    case ResultClass::FailHigh: return "FAIL_HIGH";
    }
    return "?";
}

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("minimal_tree_leaves: result overflows 64 bits");
        }
        r *= base;
    }
    return r;
}

} // namespace detail

/// Leaf count of the minimal tree of a uniform tree of width w and depth d:
/// w^floor(d/2) + w^ceil(d/2) - 1.
inline std::uint64_t minimal_tree_leaves(int width, int depth)
{
    if (width < 1 || depth < 0) {
        throw std::invalid_argument("minimal_tree_leaves: need width >= 1 and depth >= 0");
    }
    const auto lo = detail::checked_pow(static_cast<std::uint64_t>(width), depth / 2);
    const auto hi = detail::checked_pow(static_cast<std::uint64_t>(width), (depth + 1) / 2);
    if (lo > std::numeric_limits<std::uint64_t>::max() - hi) {
        throw std::overflow_error("minimal_tree_leaves: result overflows 64 bits");
    }
    return lo + hi - 1;
}

/// A game the searches can walk. Positions are values; successors come back in
/// a deterministic static order. evaluate() scores from the side to move
/// (negamax orientation). is_terminal() is true at remaining depth 0 or at a
/// genuine end of game.
template <class G>
concept GameAdapter = requires(const G& g, const typename G::Position& p, int depth) {
    typename G::Position;
    { g.root() } -> std::convertible_to<typename G::Position>;
    { g.successors(p) } -> std::same_as<std::vector<typename G::Position>>;
    { g.evaluate(p) } -> std::same_as<Value>;
    { g.is_terminal(p, depth) } -> std::same_as<bool>;
    { g.key(p) } -> std::same_as<std::uint64_t>;
    { g.max_branching() } -> std::convertible_to<int>;
};

} // namespace mtlab
