// mtlab: benchmark, verify and inspect the MT search drivers.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 internal soundness failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtlab/mtlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSoundness = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<mtlab::Algorithm> parse_algorithms(const std::string& list)
{
    std::vector<mtlab::Algorithm> out;
    std::stringstream ss(list);
    std::string id;
    while (std::getline(ss, id, ',')) {
        if (id.empty()) continue;
        if (id == "all") {
            out.insert(out.end(), mtlab::kAllAlgorithms.begin(), mtlab::kAllAlgorithms.end());
            continue;
        }
        try {
            out.push_back(mtlab::parse_algorithm(id));
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
    }
    if (out.empty()) throw UsageError("--algos: no algorithm ids given");
    return out;
}

int cmd_bench(const std::string& positions, const std::string& algos, int depth, int tt_bits,
              std::uint64_t seed, const std::string& metric, const std::string& out, unsigned jobs)
{
    mtlab::RunConfig cfg;
    cfg.algorithms = parse_algorithms(algos);
    cfg.max_depth = depth;
    cfg.tt_bits = tt_bits;
    cfg.seed = seed;
    cfg.positions_path = positions;
    cfg.metric = metric == "total" ? mtlab::Metric::Total : mtlab::Metric::Nbp;
    cfg.output_path = out;
    cfg.jobs = jobs;
    if (depth < 1) throw UsageError("--depth must be >= 1");

    const mtlab::BenchRun run = mtlab::run_bench(cfg);
    mtlab::emit_csv(run.records, out);
    for (const auto& d : run.diagnostics) std::cerr << "warning: " << d << '\n';

    // Mean ratio at the deepest iteration, per algorithm.
    std::map<mtlab::Algorithm, std::pair<double, int>> mean;
    for (const auto& r : run.records) {
        if (r.depth != depth) continue;
        auto& [sum, n] = mean[r.algorithm];
        sum += r.ratio_vs_baseline;
        ++n;
    }
    std::cout << "wrote " << run.records.size() << " records to " << out << '\n';
    std::cout << "mean " << metric << " ratio vs " << mtlab::to_string(mtlab::kBaseline) << " at depth "
              << depth << ":\n";
    for (const auto& [algo, acc] : mean) {
        std::cout << "  " << mtlab::to_string(algo) << ": " << acc.first / acc.second << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::uint64_t count)
{
    std::vector<mtlab::Suite> suites;
    if (suite == "all") {
        suites.assign(mtlab::kAllSuites.begin(), mtlab::kAllSuites.end());
    } else {
        try {
            suites.push_back(mtlab::parse_suite(suite));
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
    }
    bool ok = true;
    for (auto s : suites) {
        const auto rep = mtlab::run_verify(s, seed, count);
        mtlab::print_report(rep, std::cout);
        ok = ok && rep.passed;
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_gen(const mtlab::TreeConfig& cfg, const std::string& out)
{
    // Build it once so invalid configurations are rejected before writing.
    try {
        (void)mtlab::gen_tree(cfg);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    std::ofstream f(out, std::ios::app);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for appending");
    f << mtlab::format_tree_config(cfg) << '\n';
    std::cout << mtlab::format_tree_config(cfg) << '\n';
    return kExitOk;
}

template <class Game>
void analyze_game(const Game& game, mtlab::Algorithm algo, int depth, int tt_bits, bool deepen,
                  mtlab::DriverParams params)
{
    mtlab::TranspositionTable table(tt_bits);
    mtlab::Searcher<Game> s(game, table);
    mtlab::DriverResult r;
    mtlab::SearchStats total;
    if (deepen) {
        auto iters = mtlab::iterative_deepening(s, algo, depth, params);
        for (const auto& it : iters) {
            std::cout << "depth " << it.depth << ": value " << it.result.value << ", " << it.result.ab_calls
                      << " searches, nbp(cum) " << it.cumulative.nbp << '\n';
        }
        r = iters.back().result;
        total = iters.back().cumulative;
    } else {
        r = mtlab::run_algorithm(s, algo, depth, params);
        total = r.stats;
    }
    std::cout << "algorithm " << mtlab::to_string(algo) << ", depth " << depth << '\n';
    std::cout << "value " << r.value << '\n';
    std::cout << "bound history (" << r.ab_calls << " searches):\n";
    for (const auto& step : r.bound_history) {
        std::cout << "  gamma " << step.gamma << "  window <" << step.window.alpha << ", " << step.window.beta
                  << ">  g " << step.g << "  " << mtlab::to_string(step.cls) << '\n';
    }
    std::cout << "nbp " << total.nbp << "\ntotal_nodes " << total.total_nodes << "\ntt_cutoffs "
              << total.tt_cutoffs << "\nab_calls " << total.ab_calls << "\nelapsed_ns " << total.elapsed.count()
              << '\n';
    const auto& ts = table.stats();
    std::cout << "tt stores " << ts.stores << ", hits " << ts.hits << ", misses " << ts.misses << ", occupancy "
              << ts.occupancy << ", overwrites " << ts.overwrites << ", rejected " << ts.rejected << '\n';
}

int cmd_analyze(const std::string& position, const std::string& algo_id, int depth, int tt_bits, bool deepen,
                const mtlab::Value* guess)
{
    mtlab::PositionEntry entry = [&] {
        try {
            return mtlab::parse_position(position);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(std::string("--position: ") + ex.what());
        }
    }();
    mtlab::Algorithm algo;
    try {
        algo = mtlab::parse_algorithm(algo_id);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    if (depth < 0 || (deepen && depth < 1)) throw UsageError("--depth out of range");
    mtlab::DriverParams params;
    params.aspiration_delta = mtlab::default_aspiration_delta(entry);
    if (guess) params.first_guess = *guess;
    std::visit([&](const auto& game) { analyze_game(game, algo, depth, tt_bits, deepen, params); }, entry.game);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MT-framework game-tree search laboratory"};
    app.require_subcommand(1);

    std::string positions, algos, metric = "nbp", out;
    int depth = 6;
    int tt_bits = mtlab::kDefaultTableBits;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    auto* bench = app.add_subcommand("bench", "iterative-deepening benchmark over a position set, CSV output");
    bench->add_option("--positions", positions, "position-set file")->required();
    bench->add_option("--algos", algos, "comma-separated algorithm ids (or 'all')")->required();
    bench->add_option("--depth", depth, "maximum iterative-deepening depth")->required();
    bench->add_option("--tt-bits", tt_bits, "transposition table holds 2^B entries")
        ->check(CLI::Range(mtlab::kMinTableBits, mtlab::kMaxTableBits));
    bench->add_option("--seed", seed, "added to every synthetic record's seed");
    bench->add_option("--metric", metric, "ratio metric")->check(CLI::IsMember({"nbp", "total"}));
    bench->add_option("--out", out, "CSV output path")->required();
    bench->add_option("--jobs", jobs, "worker threads (positions run in parallel)");

    std::string suite;
    std::uint64_t vseed = 1, count = 0;
    auto* verify = app.add_subcommand("verify", "run a property suite against the oracles");
    verify->add_option("--suite", suite, "equivalence, sss-order, dominance, minimal-tree, null-window, "
                                         "mtd-exact-guess, or all")
        ->required();
    verify->add_option("--seed", vseed, "suite seed");
    verify->add_option("--count", count, "number of cases (0 = suite default)");

    mtlab::TreeConfig tcfg;
    std::string model = "edge", gen_out;
    auto* gen = app.add_subcommand("gen", "append a synthetic tree record to a position set");
    gen->add_option("--width", tcfg.width)->required();
    gen->add_option("--depth", tcfg.depth)->required();
    gen->add_option("--seed", tcfg.seed);
    gen->add_option("--p", tcfg.ordering, "probability the best child comes first");
    gen->add_option("--model", model)->check(CLI::IsMember({"iid", "edge"}));
    gen->add_option("--range", tcfg.range);
    gen->add_option("--out", gen_out)->required();

    std::string position, algo = "mtd-f";
    int adepth = 4;
    int att_bits = 20;
    mtlab::Value guess = 0;
    bool deepen = false;
    auto* analyze = app.add_subcommand("analyze", "run one algorithm on one position and show its bounds");
    analyze->add_option("--position", position, "a position-set record, e.g. 'othello standard'")->required();
    analyze->add_option("--algo", algo);
    analyze->add_option("--depth", adepth);
    analyze->add_option("--tt-bits", att_bits)->check(CLI::Range(mtlab::kMinTableBits, mtlab::kMaxTableBits));
    auto* guess_opt = analyze->add_option("--guess", guess, "first guess / aspiration centre");
    analyze->add_flag("--id", deepen, "iterative deepening up to --depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*bench) return cmd_bench(positions, algos, depth, tt_bits, seed, metric, out, jobs);
        if (*verify) return cmd_verify(suite, vseed, count);
        if (*gen) {
            tcfg.model = model == "iid" ? mtlab::ValueModel::IidLeaf : mtlab::ValueModel::EdgeDelta;
            return cmd_gen(tcfg, gen_out);
        }
        if (*analyze) return cmd_analyze(position, algo, adepth, att_bits, deepen, *guess_opt ? &guess : nullptr);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const mtlab::SoundnessError& e) {
        std::cerr << "soundness failure: " << e.what() << '\n';
        return kExitSoundness;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
