// obcm command line: instance generation, single-algorithm solving,
// benchmark suites and pairwise statistical comparison.
//
// Exit codes: 0 success, 2 parameter error, 3 I/O or parse error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "obcm/config.hpp"
#include "obcm/obcm.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parameter_error = 2;
constexpr int exit_io_error = 3;

struct gen_options {
    std::uint32_t n1 = 0;
    std::uint32_t n2 = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t count = 1;
    std::string out;
    std::string out_dir;
    std::string prefix = "rand";
};

int run_gen(const gen_options& opt) {
    if (!opt.out.empty() && opt.count != 1) {
        std::cerr << "error: --out writes a single file; use --out-dir with --count\n";
        return exit_parameter_error;
    }
    for (std::uint32_t i = 0; i < opt.count; ++i) {
        const obcm::seed_t seed =
            obcm::derive_seed(obcm::seed_t{opt.seed}, i, "instance", 0);
        const obcm::bipartite_instance inst =
            obcm::generate_random(opt.n1, opt.n2, opt.p, seed);
        std::string path = opt.out;
        if (path.empty()) {
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%03u.obcm", opt.prefix.c_str(), i);
            path = opt.out_dir.empty() ? name : opt.out_dir + "/" + name;
        }
        if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
        obcm::write_instance(inst, path);
        std::cout << path << " n1=" << inst.n1() << " n2=" << inst.n2() << " m=" << inst.m()
                  << "\n";
    }
    return exit_ok;
}

struct solve_options {
    std::string algo;
    std::string instance_path;
    std::uint64_t seed = 0;
    double stagnation_exponent = 1.5;
    std::optional<std::uint64_t> stagnation_limit;
    std::uint64_t max_generations = UINT64_MAX;
    std::optional<std::int64_t> target;
    std::string out;
};

int run_solve(const solve_options& opt) {
    if (!obcm::is_known_algorithm(opt.algo)) {
        std::cerr << "error: unknown algorithm '" << opt.algo << "'\n";
        return exit_parameter_error;
    }
    const obcm::bipartite_instance inst = obcm::read_instance(opt.instance_path);
    const obcm::cross_table table = obcm::build_cross_table(inst);
    obcm::stop_rule stop = obcm::stop_rule::stagnation_power(
        inst.n2(), opt.stagnation_exponent, opt.max_generations);
    if (opt.stagnation_limit) stop.stagnation_limit = *opt.stagnation_limit;
    if (opt.target) stop.target = *opt.target;
    const obcm::run_trace trace =
        obcm::run_algorithm(opt.algo, inst, table, stop, obcm::seed_t{opt.seed});
    if (opt.out.empty()) {
        obcm::write_ordering(trace.final_ordering, std::cout);
        std::cerr << "crossings " << trace.final_crossings << "\n";
    } else {
        obcm::write_ordering(trace.final_ordering, opt.out);
        std::cout << "crossings " << trace.final_crossings << "\n";
    }
    return exit_ok;
}

struct bench_options {
    std::string config_path;
    std::string output_dir;
    std::optional<unsigned> threads;
};

int run_bench(const bench_options& opt) {
    obcm::suite_config config = obcm::load_suite_config(opt.config_path);
    if (!opt.output_dir.empty()) config.output_dir = opt.output_dir;
    if (opt.threads) config.threads = *opt.threads;
    if (config.output_dir.empty()) {
        std::cerr << "error: no output directory (config output_dir or --output-dir)\n";
        return exit_parameter_error;
    }
    const obcm::suite_report report = obcm::run_suite(config);
    std::cout << "instances " << report.instances.size() << "\n"
              << "rows " << report.rows.size() << "\n";
    for (const obcm::algorithm_aggregate& a : report.aggregates)
        std::cout << a.algorithm << " mean_gap " << a.mean_gap << " median_gap " << a.median_gap
                  << "\n";
    std::cout << "report written to " << config.output_dir << "\n";
    return exit_ok;
}

struct stats_options {
    std::string a_path;
    std::string b_path;
    std::string column = "crossings";
};

int run_stats(const stats_options& opt) {
    const std::vector<double> a = obcm::read_csv_column(opt.a_path, opt.column);
    const std::vector<double> b = obcm::read_csv_column(opt.b_path, opt.column);
    if (a.empty() || b.empty()) {
        std::cerr << "error: empty sample (column '" << opt.column << "')\n";
        return exit_parameter_error;
    }
    const obcm::test_result r = obcm::wilcoxon_rank_sum(a, b);
    std::printf("n_a %zu\nn_b %zu\nrank_sum %.12g\nu_statistic %.12g\n", a.size(), b.size(),
                r.rank_sum, r.u_statistic);
    std::printf("p_less %.12g\np_two_sided %.12g\nmethod %s\n", r.p_less, r.p_two_sided,
                obcm::to_string(r.method));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-sided bipartite crossing minimisation solvers and benchmarks"};
    app.require_subcommand(1);

    gen_options gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate random instance files");
    gen_cmd->add_option("--n1", gen.n1, "fixed-layer size")->required();
    gen_cmd->add_option("--n2", gen.n2, "free-layer size")->required();
    gen_cmd->add_option("--p", gen.p, "edge probability")->required();
    gen_cmd->add_option("--seed", gen.seed, "master seed");
    gen_cmd->add_option("--count", gen.count, "number of instances");
    gen_cmd->add_option("--out", gen.out, "output file (single instance)");
    gen_cmd->add_option("--out-dir", gen.out_dir, "output directory");
    gen_cmd->add_option("--prefix", gen.prefix, "file name prefix");

    solve_options solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run one algorithm on one instance");
    solve_cmd->add_option("--algo", solve.algo, "algorithm name")->required();
    solve_cmd->add_option("--instance", solve.instance_path, "instance file")->required();
    solve_cmd->add_option("--seed", solve.seed, "seed for randomised algorithms");
    solve_cmd->add_option("--stagnation-exponent", solve.stagnation_exponent,
                          "stop after ceil(n2^e) generations without improvement");
    solve_cmd->add_option("--stagnation-limit", solve.stagnation_limit,
                          "explicit stagnation limit (overrides the exponent)");
    solve_cmd->add_option("--max-generations", solve.max_generations, "hard generation cap");
    solve_cmd->add_option("--target", solve.target, "stop when this crossing count is reached");
    solve_cmd->add_option("--out", solve.out, "ordering output file (default: stdout)");

    bench_options bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark suite from a config file");
    bench_cmd->add_option("--config", bench.config_path, "suite config (JSON)")->required();
    bench_cmd->add_option("--output-dir", bench.output_dir, "overrides config output_dir");
    bench_cmd->add_option("--threads", bench.threads, "overrides config threads");

    stats_options stats;
    CLI::App* stats_cmd =
        app.add_subcommand("stats", "Wilcoxon rank-sum test between two CSV columns");
    stats_cmd->add_option("--a", stats.a_path, "first results CSV")->required();
    stats_cmd->add_option("--b", stats.b_path, "second results CSV")->required();
    stats_cmd->add_option("--column", stats.column, "column name (default: crossings)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_parameter_error;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (solve_cmd->parsed()) return run_solve(solve);
        if (bench_cmd->parsed()) return run_bench(bench);
        if (stats_cmd->parsed()) return run_stats(stats);
    } catch (const obcm::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const obcm::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return exit_parameter_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}
