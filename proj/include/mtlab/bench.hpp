#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "drivers.hpp"
#include "position_set.hpp"
#include "search.hpp"
#include "ttable.hpp"

namespace mtlab {

enum class Metric { Nbp, Total };

struct RunConfig {
    std::vector<Algorithm> algorithms;
    int max_depth = 6;
    int tt_bits = kDefaultTableBits;
    std::uint64_t seed = 0; // added to every synthetic record's seed
    std::string positions_path;
    Metric metric = Metric::Nbp;
    std::string output_path;
    unsigned jobs = 1;
};

struct BenchRecord {
    std::string domain;
    std::size_t position = 0;
    int depth = 0;
    Algorithm algorithm = kBaseline;
    std::uint64_t nbp_cumulative = 0;
    std::uint64_t total_nodes_cumulative = 0;
    std::uint64_t ab_calls = 0;
    std::uint64_t tt_hits = 0;
    std::uint64_t tt_stores = 0;
    std::uint64_t tt_occupancy = 0;
    std::int64_t elapsed_ns = 0;
    double ratio_vs_baseline = 1.0;

    // Not part of the CSV.
    Value value = 0;
    std::uint64_t tt_overwrites = 0;
    std::uint64_t tt_rejected = 0;
};

struct BenchRun {
    std::vector<BenchRecord> records;
    std::vector<std::string> diagnostics; // positions that were aborted
};

/// Aspiration half-width used for a position: 1/8 of the leaf standard
/// deviation on synthetic trees, about five disc units on Othello.
inline Value default_aspiration_delta(const PositionEntry& e)
{
    if (const auto* t = std::get_if<SyntheticTree>(&e.game)) {
        return std::max<Value>(1, static_cast<Value>(std::lround(t->leaf_value_stddev() / 8.0)));
    }
    return 16;
}

/// Iterative deepening of one algorithm on one game with a fresh table.
template <GameAdapter Game>
std::vector<BenchRecord> bench_one(const Game& game, Algorithm algo, int max_depth, int tt_bits,
                                   const DriverParams& params)
{
    TranspositionTable table(tt_bits);
    Searcher<Game> s(game, table);
    std::vector<BenchRecord> out;
    out.reserve(static_cast<std::size_t>(max_depth));
    DriverParams p = params;
    SearchStats cumulative;
    for (int d = 1; d <= max_depth; ++d) {
        if (d > 1) {
            table.clear_generation();
            p.first_guess = out.back().value;
        }
        const DriverResult r = run_algorithm(s, algo, d, p);
        cumulative += r.stats;
        BenchRecord rec;
        rec.depth = d;
        rec.algorithm = algo;
        rec.nbp_cumulative = cumulative.nbp;
        rec.total_nodes_cumulative = cumulative.total_nodes;
        rec.ab_calls = r.ab_calls;
        rec.tt_hits = table.stats().hits;
        rec.tt_stores = table.stats().stores;
        rec.tt_occupancy = table.stats().occupancy;
        rec.elapsed_ns = cumulative.elapsed.count();
        rec.value = r.value;
        rec.tt_overwrites = table.stats().overwrites;
        rec.tt_rejected = table.stats().rejected;
        out.push_back(rec);
    }
    return out;
}

namespace detail {

inline std::vector<Algorithm> with_baseline(std::vector<Algorithm> algos)
{
    algos.push_back(kBaseline);
    std::sort(algos.begin(), algos.end());
    algos.erase(std::unique(algos.begin(), algos.end()), algos.end());
    return algos;
}

inline std::uint64_t metric_of(const BenchRecord& r, Metric m)
{
    return m == Metric::Nbp ? r.nbp_cumulative : r.total_nodes_cumulative;
}

} // namespace detail

/// All algorithms (plus the Aspiration NegaScout baseline) on one position.
/// Values must agree across algorithms at every depth; a mismatch throws
/// SoundnessError.
inline std::vector<BenchRecord> bench_position(const PositionEntry& entry, std::size_t index,
                                               const RunConfig& cfg)
{
    DriverParams params;
    params.aspiration_delta = default_aspiration_delta(entry);
    std::vector<BenchRecord> records;
    for (Algorithm a : detail::with_baseline(cfg.algorithms)) {
        auto recs = std::visit(
            [&](const auto& game) { return bench_one(game, a, cfg.max_depth, cfg.tt_bits, params); },
            entry.game);
        for (auto& r : recs) {
            r.domain = entry.domain();
            r.position = index;
            records.push_back(std::move(r));
        }
    }

    for (int d = 1; d <= cfg.max_depth; ++d) {
        const BenchRecord* base = nullptr;
        for (const auto& r : records) {
            if (r.depth == d && r.algorithm == kBaseline) base = &r;
        }
        for (auto& r : records) {
            if (r.depth != d) continue;
            if (r.value != base->value) {
                throw SoundnessError("position " + std::to_string(index) + " depth " + std::to_string(d) +
                                     ": " + std::string(to_string(r.algorithm)) + " returned " +
                                     std::to_string(r.value) + " but " + std::string(to_string(kBaseline)) +
                                     " returned " + std::to_string(base->value));
            }
            const auto denom = detail::metric_of(*base, cfg.metric);
            const auto num = detail::metric_of(r, cfg.metric);
            r.ratio_vs_baseline = denom == 0 ? (num == 0 ? 1.0 : INFINITY) : double(num) / double(denom);
        }
    }
    return records;
}

inline void sort_records(std::vector<BenchRecord>& records)
{
    std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.position, a.algorithm, a.depth) < std::tie(b.position, b.algorithm, b.depth);
    });
}

/// Benchmark every position. Positions are independent and may run on
/// cfg.jobs worker threads; the output order is (position, algorithm, depth).
inline BenchRun run_bench(const RunConfig& cfg, const std::vector<PositionEntry>& positions)
{
    if (cfg.algorithms.empty()) throw std::invalid_argument("bench: no algorithms given");
    if (cfg.max_depth < 1) throw std::invalid_argument("bench: depth must be >= 1");

    BenchRun run;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::exception_ptr hard_failure;

    auto worker = [&] {
        for (std::size_t i = next++; i < positions.size(); i = next++) {
            try {
                auto recs = bench_position(positions[i], i, cfg);
                std::lock_guard lock(mu);
                run.records.insert(run.records.end(), recs.begin(), recs.end());
            } catch (const SoundnessError&) {
                std::lock_guard lock(mu);
                if (!hard_failure) hard_failure = std::current_exception();
            } catch (const std::exception& ex) {
                std::lock_guard lock(mu);
                run.diagnostics.push_back("position " + std::to_string(i) + " aborted: " + ex.what());
            }
        }
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(positions.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (hard_failure) std::rethrow_exception(hard_failure);

    sort_records(run.records);
    std::sort(run.diagnostics.begin(), run.diagnostics.end());
    return run;
}

inline std::vector<PositionEntry> reseed(std::vector<PositionEntry> set, std::uint64_t seed)
{
    if (seed == 0) return set;
    for (auto& e : set) {
        if (auto* t = std::get_if<SyntheticTree>(&e.game)) {
            TreeConfig c = t->config();
            c.seed += seed;
            e.game = SyntheticTree(c);
        }
    }
    return set;
}

inline BenchRun run_bench(const RunConfig& cfg)
{
    return run_bench(cfg, reseed(load_position_set(cfg.positions_path), cfg.seed));
}

inline constexpr const char* kCsvHeader =
    "domain,position,depth,algorithm,nbp_cumulative,total_nodes_cumulative,ab_calls,"
    "tt_hits,tt_stores,tt_occupancy,elapsed_ns,ratio_vs_baseline";

inline void write_csv(const std::vector<BenchRecord>& records, std::ostream& out)
{
    out << kCsvHeader << '\n';
    char ratio[64];
    for (const auto& r : records) {
        std::snprintf(ratio, sizeof ratio, "%.4f", r.ratio_vs_baseline);
        out << r.domain << ',' << r.position << ',' << r.depth << ',' << to_string(r.algorithm) << ','
            << r.nbp_cumulative << ',' << r.total_nodes_cumulative << ',' << r.ab_calls << ','
            << r.tt_hits << ',' << r.tt_stores << ',' << r.tt_occupancy << ',' << r.elapsed_ns << ','
            << ratio << '\n';
    }
}

inline void emit_csv(const std::vector<BenchRecord>& records, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(records, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace mtlab
