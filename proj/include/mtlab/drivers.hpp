#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "search.hpp"

namespace mtlab {

enum class Algorithm { AlphaBeta, AlphaBetaTT, NegaScout, AspNegaScout, AbSss, AbDual, MtdF, MtdBi };

inline constexpr std::array kAllAlgorithms = {
    Algorithm::AlphaBeta, Algorithm::AlphaBetaTT, Algorithm::NegaScout, Algorithm::AspNegaScout,
    Algorithm::AbSss,     Algorithm::AbDual,      Algorithm::MtdF,      Algorithm::MtdBi,
};

inline constexpr Algorithm kBaseline = Algorithm::AspNegaScout;

inline std::string_view to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::AlphaBeta: return "ab";
    case Algorithm::AlphaBetaTT: return "ab-tt";
    case Algorithm::NegaScout: return "negascout";
    case Algorithm::AspNegaScout: return "asp-negascout";
    case Algorithm::AbSss: return "ab-sss";
    case Algorithm::AbDual: return "ab-dual";
    case Algorithm::MtdF: return "mtd-f";
    case Algorithm::MtdBi: return "mtd-bi";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view id)
{
    for (Algorithm a : kAllAlgorithms) {
        if (to_string(a) == id) return a;
    }
    throw std::invalid_argument("unknown algorithm id '" + std::string(id) + "'");
}

/// One root-level search issued by a driver.
struct BoundStep {
    Value gamma;   // the test value the driver chose
    Window window; // window actually passed to the search
    Value g;
    ResultClass cls;
};

struct DriverResult {
    Value value = 0;
    std::uint64_t ab_calls = 0;
    std::vector<BoundStep> bound_history;
    SearchStats stats;
};

struct DriverParams {
    Value first_guess = 0;        // MTD(f) start value and aspiration centre
    Value aspiration_delta = 16;  // half-width of the aspiration window
    Value bisect_lo = -kInf;      // mtd-bi bracket, must contain the value
    Value bisect_hi = kInf;
};

namespace detail {

// Upper bound on driver passes. Every loop below also checks that it makes
// progress, so hitting this means something is badly wrong.
inline constexpr std::uint64_t kMaxDriverPasses = std::uint64_t{2} * kInf + 4;

template <class S>
class DriverRun {
public:
    explicit DriverRun(S& s)
        : s_(s), before_(s.stats()), start_(std::chrono::steady_clock::now())
    {
    }

    template <class Fn>
    Value call(Value gamma, Window w, Fn&& search)
    {
        if (result_.ab_calls >= kMaxDriverPasses) throw SoundnessError("driver did not converge");
        const Value g = search(w);
        ++result_.ab_calls;
        ++s_.stats().ab_calls;
        result_.bound_history.push_back({gamma, w, g, classify_result(g, w)});
        return g;
    }

    DriverResult finish(Value value)
    {
        s_.stats().elapsed += std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start_);
        result_.value = value;
        result_.stats = s_.stats() - before_;
        return std::move(result_);
    }

private:
    S& s_;
    SearchStats before_;
    std::chrono::steady_clock::time_point start_;
    DriverResult result_;
};

inline Value clamp_value(std::int64_t v)
{
    return static_cast<Value>(std::clamp<std::int64_t>(v, -kInf, kInf));
}

} // namespace detail

/// Single wide-window search: `ab` (no memory), `ab-tt`, or `negascout`.
template <class S>
DriverResult wide_window(S& s, Algorithm algo, int depth)
{
    detail::DriverRun<S> run(s);
    const auto root = s.game().root();
    const Value g = run.call(kInf, Window::full(), [&](Window w) {
        switch (algo) {
        case Algorithm::AlphaBeta: return s.plain_alphabeta(root, w, depth);
        case Algorithm::AlphaBetaTT: return s.mt_alphabeta(root, w, depth);
        case Algorithm::NegaScout: return s.negascout(root, w, depth);
        default: throw std::invalid_argument("wide_window: not a single-search algorithm");
        }
    });
    return run.finish(g);
}

/// SSS* as a sequence of null-window searches from +INF downwards.
template <class S>
DriverResult ab_sss(S& s, int depth)
{
    detail::DriverRun<S> run(s);
    const auto root = s.game().root();
    Value g = kInf;
    Value gamma;
    do {
        gamma = g;
        g = run.call(gamma, Window::null_below(gamma),
                     [&](Window w) { return s.mt_alphabeta(root, w, depth); });
        if (g > gamma) throw SoundnessError("ab-sss: upper bound increased");
    } while (g != gamma);
    return run.finish(g);
}

/// DUAL*: the mirror of ab_sss, raising lower bounds from -INF.
template <class S>
DriverResult ab_dual(S& s, int depth)
{
    detail::DriverRun<S> run(s);
    const auto root = s.game().root();
    Value g = -kInf;
    Value gamma;
    do {
        gamma = g;
        g = run.call(gamma, Window{gamma, gamma + 1},
                     [&](Window w) { return s.mt_alphabeta(root, w, depth); });
        if (g < gamma) throw SoundnessError("ab-dual: lower bound decreased");
    } while (g != gamma);
    return run.finish(g);
}

/// MTD(f): null-window searches zig-zagging from a first guess until the
/// lower and upper bounds meet.
template <class S>
DriverResult mtd_f(S& s, int depth, Value first_guess)
{
    if (first_guess < -kInf || first_guess > kInf) {
        throw std::invalid_argument("mtd-f: first guess outside [-INF, INF]");
    }
    detail::DriverRun<S> run(s);
    const auto root = s.game().root();
    Value g = first_guess;
    Value lower = -kInf;
    Value upper = kInf;
    do {
        const Value gamma = (g == lower) ? g + 1 : g;
        g = run.call(gamma, Window::null_below(gamma),
                     [&](Window w) { return s.mt_alphabeta(root, w, depth); });
        const Value old_lower = lower, old_upper = upper;
        if (g < gamma) {
            upper = g;
        } else {
            lower = g;
        }
        if (lower > upper) throw SoundnessError("mtd-f: bounds crossed");
        if (std::int64_t{upper} - lower >= std::int64_t{old_upper} - old_lower) {
            throw SoundnessError("mtd-f: bound interval did not shrink");
        }
    } while (lower != upper);
    return run.finish(g);
}

/// Bisection over [lo, hi]: each pass tests the midpoint of the current
/// interval, clamped into (f-, f+].
template <class S>
DriverResult mtd_bi(S& s, int depth, Value lo, Value hi)
{
    if (lo > hi) throw std::invalid_argument("mtd-bi: lo > hi");
    if (lo < -kInf || hi > kInf) throw std::invalid_argument("mtd-bi: bracket outside [-INF, INF]");
    detail::DriverRun<S> run(s);
    const auto root = s.game().root();
    Value lower = lo;
    Value upper = hi;
    Value g;
    do {
        Value gamma;
        if (lower == upper) {
            gamma = upper;
        } else {
            const std::int64_t sum = std::int64_t{lower} + upper;
            // ceil((f- + f+) / 2), rounding toward +infinity for negative sums too
            const std::int64_t mid = sum >= 0 ? (sum + 1) / 2 : -((-sum) / 2);
            gamma = std::clamp<Value>(static_cast<Value>(mid), lower + 1, upper);
        }
        g = run.call(gamma, Window::null_below(gamma),
                     [&](Window w) { return s.mt_alphabeta(root, w, depth); });
        if (g < gamma) {
            upper = g;
        } else {
            lower = g;
        }
        if (lower > upper) {
            throw SoundnessError("mtd-bi: bounds crossed (bracket did not contain the value?)");
        }
    } while (lower != upper);
    return run.finish(g);
}

/// NegaScout inside an aspiration window around prev, re-searched once on
/// failure.
template <class S>
DriverResult aspiration_negascout(S& s, int depth, Value prev, Value delta)
{
    if (delta <= 0) throw std::invalid_argument("aspiration delta must be > 0");
    detail::DriverRun<S> run(s);
    const auto root = s.game().root();
    const auto ns = [&](Window w) { return s.negascout(root, w, depth); };

    Window w{detail::clamp_value(std::int64_t{prev} - delta),
             detail::clamp_value(std::int64_t{prev} + delta)};
    if (w.alpha >= w.beta) w = Window::full();
    Value g = run.call(w.beta, w, ns);
    switch (classify_result(g, w)) {
    case ResultClass::Exact: break;
    case ResultClass::FailLow: {
        const Window re{-kInf, std::min(kInf, g + 1)};
        g = run.call(re.beta, re, ns);
        if (classify_result(g, re) != ResultClass::Exact && g != -kInf) {
            throw SoundnessError("asp-negascout: re-search after fail low did not resolve");
        }
        break;
    }
    case ResultClass::FailHigh: {
        const Window re{std::max(-kInf, g - 1), kInf};
        g = run.call(re.beta, re, ns);
        if (classify_result(g, re) != ResultClass::Exact && g != kInf) {
            throw SoundnessError("asp-negascout: re-search after fail high did not resolve");
        }
        break;
    }
    }
    return run.finish(g);
}

/// Run one algorithm once at a fixed depth.
template <class S>
DriverResult run_algorithm(S& s, Algorithm algo, int depth, const DriverParams& p = {})
{
    switch (algo) {
    case Algorithm::AlphaBeta:
    case Algorithm::AlphaBetaTT:
    case Algorithm::NegaScout: return wide_window(s, algo, depth);
    case Algorithm::AspNegaScout: return aspiration_negascout(s, depth, p.first_guess, p.aspiration_delta);
    case Algorithm::AbSss: return ab_sss(s, depth);
    case Algorithm::AbDual: return ab_dual(s, depth);
    case Algorithm::MtdF: return mtd_f(s, depth, p.first_guess);
    case Algorithm::MtdBi: return mtd_bi(s, depth, p.bisect_lo, p.bisect_hi);
    }
    throw std::invalid_argument("unknown algorithm");
}

/// Per-depth outcome of iterative deepening. stats are cumulative over all
/// iterations up to and including this depth; ab_calls is this iteration's.
struct IterationResult {
    int depth = 0;
    DriverResult result;
    SearchStats cumulative;
};

/// Depths 1..max_depth sharing one table. MTD(f)'s guess and the aspiration
/// centre come from the previous iteration (0 before the first).
template <class S>
std::vector<IterationResult> iterative_deepening(S& s, Algorithm algo, int max_depth,
                                                 DriverParams p = {})
{
    if (max_depth < 1) throw std::invalid_argument("iterative deepening needs max_depth >= 1");
    std::vector<IterationResult> out;
    out.reserve(static_cast<std::size_t>(max_depth));
    SearchStats cumulative;
    for (int d = 1; d <= max_depth; ++d) {
        if (d > 1) {
            s.table().clear_generation();
            p.first_guess = out.back().result.value;
        }
        DriverResult r = run_algorithm(s, algo, d, p);
        cumulative += r.stats;
        out.push_back({d, std::move(r), cumulative});
    }
    return out;
}

} // namespace mtlab
