#ifndef OBCM_BENCH_HPP
#define OBCM_BENCH_HPP

// Experiment harness: suite generation, algorithm execution with separated
// preprocessing/search timing, per-run traces, CSV reports and pairwise
// statistical comparisons.
//
// Reproducibility contract: a suite is fully determined by its config and
// master seed. Every (instance, algorithm, repetition) cell derives its own
// seed from those coordinates, so serial and parallel execution produce the
// same rows and the emitted results/convergence CSVs are byte-identical
// across runs. Wall-clock durations are reported in a separate timings file
// that is exempt from that guarantee.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "obcm/classic.hpp"
#include "obcm/cross_table.hpp"
#include "obcm/exact.hpp"
#include "obcm/instance.hpp"
#include "obcm/search.hpp"
#include "obcm/stats.hpp"

namespace obcm {

/// Instances this small get an exact_dp reference; larger ones use the best
/// crossing number seen across all runs on the instance.
inline constexpr vertex_t bench_exact_reference_max_n2 = 20;

inline const std::vector<std::string>& algorithm_registry() {
    static const std::vector<std::string> names = {
        "barycenter", "median",      "sifting",  "rls-swap", "rls-exchange",
        "rls-jump",   "ea-swap",     "ea-exchange", "ea-jump",
        "jfirls",     "jrirls",      "jsrls",    "exact"};
    return names;
}

inline bool is_known_algorithm(const std::string& name) {
    const auto& reg = algorithm_registry();
    return std::find(reg.begin(), reg.end(), name) != reg.end();
}

namespace detail {

inline std::optional<mutation_config> parse_mutation_algorithm(const std::string& name) {
    mutation_config config;
    std::string op;
    if (name.rfind("rls-", 0) == 0) {
        config.strength = strength_rule::constant_one;
        op = name.substr(4);
    } else if (name.rfind("ea-", 0) == 0) {
        config.strength = strength_rule::poisson;
        op = name.substr(3);
    } else {
        return std::nullopt;
    }
    if (op == "swap") config.op = mutation_op::swap;
    else if (op == "exchange") config.op = mutation_op::exchange;
    else if (op == "jump") config.op = mutation_op::jump;
    else return std::nullopt;
    return config;
}

inline std::optional<scan_strategy> parse_scan_algorithm(const std::string& name) {
    if (name == "jfirls") return scan_strategy::first;
    if (name == "jrirls") return scan_strategy::random;
    if (name == "jsrls") return scan_strategy::best;
    return std::nullopt;
}

inline run_trace deterministic_trace(std::string name, seed_t seed, ordering ord,
                                     const cross_table& table, std::uint64_t delta_ops = 0) {
    run_trace trace;
    trace.algorithm = std::move(name);
    trace.seed = seed;
    trace.final_crossings = crossings_of(table, ord);
    trace.final_ordering = std::move(ord);
    trace.events.push_back({0, trace.final_crossings});
    trace.evaluations = 1;
    trace.delta_ops = delta_ops;
    return trace;
}

}  // namespace detail

inline const char* algorithm_start_kind(const std::string& name) {
    if (name == "sifting") return "identity";
    if (name == "barycenter" || name == "median" || name == "exact") return "n/a";
    return "random";
}

/// Runs one algorithm by registry name on a prepared instance/table pair.
/// Randomised algorithms draw their start permutation and their decision
/// stream from the given seed.
inline run_trace run_algorithm(const std::string& name, const bipartite_instance& inst,
                               const cross_table& table, const stop_rule& stop, seed_t seed) {
    if (name == "barycenter")
        return detail::deterministic_trace(name, seed, barycenter(inst), table);
    if (name == "median") return detail::deterministic_trace(name, seed, median(inst), table);
    if (name == "sifting") {
        std::uint64_t ops = 0;
        ordering result = sifting(inst, table, ordering::identity(inst.n2()), &ops);
        return detail::deterministic_trace(name, seed, std::move(result), table, ops);
    }
    if (name == "exact") {
        exact_result res = exact_dp(table);
        return detail::deterministic_trace(name, seed, std::move(res.best), table);
    }
    const ordering start = random_ordering(inst.n2(), derive_seed(seed, 0, "start-ordering", 0));
    if (auto config = detail::parse_mutation_algorithm(name))
        return run_search(table, *config, stop, seed, start);
    if (auto strategy = detail::parse_scan_algorithm(name))
        return run_scanning_rls(table, *strategy, stop, seed, start);
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

/// One algorithm entry of a suite; optional fields override the suite-wide
/// stop rule for this algorithm only.
struct algorithm_spec {
    std::string name;
    std::optional<double> stagnation_exponent;
    std::optional<std::uint64_t> stagnation_limit;
    std::optional<std::uint64_t> max_generations;
    std::optional<crossing_t> target;
};

struct random_family {
    vertex_t n1{0};
    vertex_t n2{0};
    double p{0.0};
    std::uint32_t count{1};
};

struct suite_config {
    std::optional<random_family> random;   // exactly one of random /
    std::optional<std::string> instance_dir;  // instance_dir must be set
    seed_t master_seed{0};
    std::vector<algorithm_spec> algorithms;
    std::uint32_t repetitions{1};
    double stagnation_exponent{1.5};
    std::uint64_t max_generations{UINT64_MAX};
    std::string output_dir;  // empty: keep the report in memory only
    unsigned threads{1};
    bool write_traces{true};
};

inline stop_rule resolve_stop(const suite_config& config, const algorithm_spec& spec,
                              vertex_t n2) {
    stop_rule stop = stop_rule::stagnation_power(
        n2, spec.stagnation_exponent.value_or(config.stagnation_exponent),
        spec.max_generations.value_or(config.max_generations));
    if (spec.stagnation_limit) stop.stagnation_limit = *spec.stagnation_limit;
    if (spec.target) stop.target = *spec.target;
    return stop;
}

struct run_row {
    std::string instance_id;
    std::uint32_t instance_index{0};
    std::string algorithm;
    std::uint32_t repetition{0};
    std::uint64_t seed{0};
    std::string start_kind;
    crossing_t final_crossings{0};
    crossing_t reference{0};
    std::string reference_kind;
    crossing_t gap{0};
    std::uint64_t generations{0};
    std::uint64_t evaluations{0};
    std::uint64_t delta_ops{0};
    double preprocess_seconds{0.0};
    double search_seconds{0.0};
};

struct instance_summary {
    std::string id;
    vertex_t n1{0};
    vertex_t n2{0};
    std::size_t m{0};
    crossing_t lower_bound{0};
    crossing_t reference{0};
    std::string reference_kind;
    std::uint64_t table_build_ops{0};
    double table_build_seconds{0.0};
};

struct algorithm_aggregate {
    std::string algorithm;
    std::size_t runs{0};
    double mean_gap{0.0};
    double median_gap{0.0};
};

struct pairwise_test {
    std::string a;
    std::string b;
    test_result result;
};

struct suite_report {
    std::vector<instance_summary> instances;
    std::vector<run_row> rows;      // ordered by (instance, algorithm, rep)
    std::vector<run_trace> traces;  // parallel to rows
    std::vector<algorithm_aggregate> aggregates;
    std::vector<pairwise_test> tests;
};

/// Tests "a better than b" (p_less) on the final crossing numbers of the
/// two algorithms pooled across the suite. Finals are paired by instance
/// through the shared per-instance reference: the pooled values are the
/// gaps final - reference, since raw crossing numbers of different
/// instances are not rank-comparable. Throws if either name is absent or
/// the run counts differ.
inline test_result compare_algorithms(const suite_report& report, const std::string& a,
                                      const std::string& b) {
    std::vector<double> sample_a, sample_b;
    for (const run_row& row : report.rows) {
        if (row.algorithm == a) sample_a.push_back(static_cast<double>(row.gap));
        if (row.algorithm == b) sample_b.push_back(static_cast<double>(row.gap));
    }
    if (sample_a.empty()) throw std::invalid_argument("algorithm '" + a + "' not in report");
    if (sample_b.empty()) throw std::invalid_argument("algorithm '" + b + "' not in report");
    if (a != b && sample_a.size() != sample_b.size())
        throw std::invalid_argument("unequal run counts for '" + a + "' and '" + b + "'");
    return wilcoxon_rank_sum(sample_a, sample_b);
}

struct convergence_row {
    std::uint64_t checkpoint{0};
    std::string algorithm;
    double mean_gap{0.0};
    double stddev{0.0};
};

namespace detail {

inline crossing_t trace_value_at(const run_trace& trace, std::uint64_t generation) {
    crossing_t value = trace.events.front().crossings;
    for (const improvement_event& e : trace.events) {
        if (e.generation > generation) break;
        value = e.crossings;
    }
    return value;
}

}  // namespace detail

/// Step-interpolates each run's best-so-far crossings onto the checkpoint
/// grid and averages the gap to the per-instance reference, per algorithm
/// per checkpoint. An empty grid selects the geometric grid 1, 2, 4, ... up
/// to the first power of two at or above the longest run.
inline std::vector<convergence_row> emit_convergence(const suite_report& report,
                                                     std::vector<std::uint64_t> grid = {}) {
    if (report.rows.empty()) throw std::invalid_argument("empty report");
    // Every algorithm must cover the same multiset of instances.
    std::map<std::string, std::multiset<std::string>> coverage;
    for (const run_row& row : report.rows) coverage[row.algorithm].insert(row.instance_id);
    for (const auto& [name, cover] : coverage)
        if (cover != coverage.begin()->second)
            throw std::invalid_argument("algorithm '" + name +
                                        "' covers different instances than '" +
                                        coverage.begin()->first + "'");

    if (grid.empty()) {
        std::uint64_t max_gen = 1;
        for (const run_row& row : report.rows) max_gen = std::max(max_gen, row.generations);
        for (std::uint64_t g = 1;; g *= 2) {
            grid.push_back(g);
            if (g >= max_gen) break;
        }
    }

    std::vector<std::string> algorithms;
    for (const auto& [name, cover] : coverage) algorithms.push_back(name);

    std::vector<convergence_row> out;
    for (std::uint64_t checkpoint : grid) {
        for (const std::string& name : algorithms) {
            double sum = 0.0, sum_sq = 0.0;
            std::size_t count = 0;
            for (std::size_t r = 0; r < report.rows.size(); ++r) {
                if (report.rows[r].algorithm != name) continue;
                const double gap = static_cast<double>(
                    detail::trace_value_at(report.traces[r], checkpoint) -
                    report.rows[r].reference);
                sum += gap;
                sum_sq += gap * gap;
                ++count;
            }
            const double mean = sum / static_cast<double>(count);
            const double var =
                std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean);
            out.push_back({checkpoint, name, mean, std::sqrt(var)});
        }
    }
    return out;
}

namespace detail {

inline std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

inline std::string format_seconds(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

inline void open_out(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path, std::ios::binary);
    if (!out) throw io_error("cannot write '" + path.string() + "'");
}

}  // namespace detail

inline void write_trace_csv(const run_trace& trace, std::ostream& out) {
    out << "obcm-bench 1\ngeneration,crossings\n";
    for (const improvement_event& e : trace.events)
        out << e.generation << ',' << e.crossings << '\n';
}

inline void write_report_files(const suite_report& report, const std::string& output_dir,
                               bool write_traces = true) {
    namespace fs = std::filesystem;
    const fs::path dir(output_dir);
    fs::create_directories(dir);

    std::ofstream results;
    detail::open_out(results, dir / "results.csv");
    results << "obcm-bench 1\n"
            << "instance,algorithm,rep,seed,start,crossings,reference,reference_kind,"
               "gap,generations,evaluations,delta_ops\n";
    for (const run_row& r : report.rows) {
        results << r.instance_id << ',' << r.algorithm << ',' << r.repetition << ',' << r.seed
                << ',' << r.start_kind << ',' << r.final_crossings << ',' << r.reference << ','
                << r.reference_kind << ',' << r.gap << ',' << r.generations << ','
                << r.evaluations << ',' << r.delta_ops << '\n';
    }

    std::ofstream timings;
    detail::open_out(timings, dir / "timings.csv");
    timings << "obcm-bench 1\ninstance,algorithm,rep,preprocess_seconds,search_seconds\n";
    for (const run_row& r : report.rows) {
        timings << r.instance_id << ',' << r.algorithm << ',' << r.repetition << ','
                << detail::format_seconds(r.preprocess_seconds) << ','
                << detail::format_seconds(r.search_seconds) << '\n';
    }

    std::ofstream instances;
    detail::open_out(instances, dir / "instances.csv");
    instances << "obcm-bench 1\n"
              << "instance,n1,n2,m,lower_bound,reference,reference_kind,table_build_ops\n";
    for (const instance_summary& s : report.instances) {
        instances << s.id << ',' << s.n1 << ',' << s.n2 << ',' << s.m << ',' << s.lower_bound
                  << ',' << s.reference << ',' << s.reference_kind << ',' << s.table_build_ops
                  << '\n';
    }

    std::ofstream summary;
    detail::open_out(summary, dir / "summary.csv");
    summary << "obcm-bench 1\nalgorithm,runs,mean_gap,median_gap\n";
    for (const algorithm_aggregate& a : report.aggregates) {
        summary << a.algorithm << ',' << a.runs << ',' << detail::format_double(a.mean_gap)
                << ',' << detail::format_double(a.median_gap) << '\n';
    }

    std::ofstream tests;
    detail::open_out(tests, dir / "tests.csv");
    tests << "obcm-bench 1\na,b,u_statistic,p_less,p_two_sided,method\n";
    for (const pairwise_test& t : report.tests) {
        tests << t.a << ',' << t.b << ',' << detail::format_double(t.result.u_statistic) << ','
              << detail::format_double(t.result.p_less) << ','
              << detail::format_double(t.result.p_two_sided) << ',' << to_string(t.result.method)
              << '\n';
    }

    std::ofstream convergence;
    detail::open_out(convergence, dir / "convergence.csv");
    convergence << "obcm-bench 1\ncheckpoint,algorithm,mean_gap,stddev\n";
    for (const convergence_row& c : emit_convergence(report)) {
        convergence << c.checkpoint << ',' << c.algorithm << ','
                    << detail::format_double(c.mean_gap) << ','
                    << detail::format_double(c.stddev) << '\n';
    }

    if (write_traces) {
        const fs::path trace_dir = dir / "traces";
        fs::create_directories(trace_dir);
        for (std::size_t r = 0; r < report.rows.size(); ++r) {
            const run_row& row = report.rows[r];
            std::ofstream trace_out;
            detail::open_out(trace_out,
                             trace_dir / (row.instance_id + "_" + row.algorithm + "_" +
                                          std::to_string(row.repetition) + ".trace.csv"));
            write_trace_csv(report.traces[r], trace_out);
        }
    }
}

/// Executes the whole suite. Cells run concurrently when config.threads > 1;
/// the report (and all deterministic CSVs) is identical to a serial run.
inline suite_report run_suite(const suite_config& config) {
    if (config.algorithms.empty())
        throw std::invalid_argument("suite config needs at least one algorithm");
    if (config.random.has_value() == config.instance_dir.has_value())
        throw std::invalid_argument("suite config needs exactly one of random family / "
                                    "instance directory");
    if (config.repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
    std::set<std::string> seen_names;
    for (const algorithm_spec& spec : config.algorithms) {
        if (!is_known_algorithm(spec.name))
            throw std::invalid_argument("unknown algorithm '" + spec.name + "'");
        if (!seen_names.insert(spec.name).second)
            throw std::invalid_argument("duplicate algorithm '" + spec.name + "'");
    }

    // Load or generate the instance set.
    std::vector<std::string> ids;
    std::vector<bipartite_instance> instances;
    if (config.random) {
        const random_family& fam = *config.random;
        if (!(fam.p >= 0.0 && fam.p <= 1.0))
            throw std::invalid_argument("edge probability must be in [0,1]");
        if (fam.count == 0) throw std::invalid_argument("instance count must be >= 1");
        for (std::uint32_t i = 0; i < fam.count; ++i) {
            char id[32];
            std::snprintf(id, sizeof(id), "rand_%03u", i);
            ids.push_back(id);
            instances.push_back(generate_random(fam.n1, fam.n2, fam.p,
                                                derive_seed(config.master_seed, i, "instance", 0)));
        }
    } else {
        namespace fs = std::filesystem;
        if (!fs::is_directory(*config.instance_dir))
            throw io_error("instance directory '" + *config.instance_dir + "' not found");
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(*config.instance_dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& file : files) {
            ids.push_back(file.stem().string());
            instances.push_back(read_instance(file.string()));
        }
        if (instances.empty())
            throw io_error("instance directory '" + *config.instance_dir + "' is empty");
    }

    // Build one shared cross table per instance; the build is timed
    // separately and never folded into search time.
    const std::size_t n_instances = instances.size();
    std::vector<cross_table> tables(n_instances);
    std::vector<double> build_seconds(n_instances, 0.0);
    for (std::size_t i = 0; i < n_instances; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        tables[i] = build_cross_table(instances[i]);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        build_seconds[i] = dt.count();
    }

    const std::size_t n_algorithms = config.algorithms.size();
    const std::size_t n_cells = n_instances * n_algorithms * config.repetitions;

    suite_report report;
    report.traces.resize(n_cells);
    std::atomic<std::size_t> next_cell{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t cell = next_cell.fetch_add(1);
            if (cell >= n_cells) return;
            const std::size_t inst_idx = cell / (n_algorithms * config.repetitions);
            const std::size_t algo_idx = (cell / config.repetitions) % n_algorithms;
            const std::uint32_t rep = static_cast<std::uint32_t>(cell % config.repetitions);
            const algorithm_spec& spec = config.algorithms[algo_idx];
            const seed_t seed =
                derive_seed(config.master_seed, inst_idx, spec.name, rep);
            const stop_rule stop = resolve_stop(config, spec, instances[inst_idx].n2());
            run_trace trace =
                run_algorithm(spec.name, instances[inst_idx], tables[inst_idx], stop, seed);
            trace.preprocess_seconds = build_seconds[inst_idx];
            report.traces[cell] = std::move(trace);
        }
    };
    const unsigned n_threads = std::max(1u, config.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // Per-instance reference: exact optimum at desk scale, otherwise the
    // best crossing number seen across all runs on the instance.
    std::vector<crossing_t> reference(n_instances);
    std::vector<std::string> reference_kind(n_instances);
    for (std::size_t i = 0; i < n_instances; ++i) {
        if (instances[i].n2() <= bench_exact_reference_max_n2) {
            reference[i] = exact_dp(tables[i]).optimum;
            reference_kind[i] = "exact";
        } else {
            crossing_t best = report.traces[i * n_algorithms * config.repetitions]
                                  .final_crossings;
            for (std::size_t a = 0; a < n_algorithms; ++a)
                for (std::uint32_t rep = 0; rep < config.repetitions; ++rep)
                    best = std::min(best,
                                    report.traces[(i * n_algorithms + a) * config.repetitions +
                                                  rep]
                                        .final_crossings);
            reference[i] = best;
            reference_kind[i] = "best-known";
        }
        report.instances.push_back({ids[i], instances[i].n1(), instances[i].n2(),
                                    instances[i].m(), pairwise_lower_bound(tables[i]),
                                    reference[i], reference_kind[i], tables[i].build_ops(),
                                    build_seconds[i]});
    }

    report.rows.reserve(n_cells);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        const std::size_t inst_idx = cell / (n_algorithms * config.repetitions);
        const std::uint32_t rep = static_cast<std::uint32_t>(cell % config.repetitions);
        const run_trace& trace = report.traces[cell];
        run_row row;
        row.instance_id = ids[inst_idx];
        row.instance_index = static_cast<std::uint32_t>(inst_idx);
        row.algorithm = trace.algorithm;
        row.repetition = rep;
        row.seed = derive_seed(config.master_seed, inst_idx, trace.algorithm, rep).value;
        row.start_kind = algorithm_start_kind(trace.algorithm);
        row.final_crossings = trace.final_crossings;
        row.reference = reference[inst_idx];
        row.reference_kind = reference_kind[inst_idx];
        row.gap = trace.final_crossings - reference[inst_idx];
        row.generations = trace.generations;
        row.evaluations = trace.evaluations;
        row.delta_ops = trace.delta_ops;
        row.preprocess_seconds = trace.preprocess_seconds;
        row.search_seconds = trace.search_seconds;
        report.rows.push_back(std::move(row));
    }

    // Aggregates and pairwise tests.
    for (const algorithm_spec& spec : config.algorithms) {
        std::vector<double> gaps;
        for (const run_row& row : report.rows)
            if (row.algorithm == spec.name) gaps.push_back(static_cast<double>(row.gap));
        if (gaps.empty()) continue;
        std::sort(gaps.begin(), gaps.end());
        double sum = 0.0;
        for (double g : gaps) sum += g;
        const double mean = sum / static_cast<double>(gaps.size());
        const double median = gaps.size() % 2 == 1
                                  ? gaps[gaps.size() / 2]
                                  : (gaps[gaps.size() / 2 - 1] + gaps[gaps.size() / 2]) / 2.0;
        report.aggregates.push_back({spec.name, gaps.size(), mean, median});
    }
    for (std::size_t a = 0; a < n_algorithms; ++a) {
        for (std::size_t b = a + 1; b < n_algorithms; ++b) {
            report.tests.push_back({config.algorithms[a].name, config.algorithms[b].name,
                                    compare_algorithms(report, config.algorithms[a].name,
                                                       config.algorithms[b].name)});
        }
    }

    if (!config.output_dir.empty())
        write_report_files(report, config.output_dir, config.write_traces);
    return report;
}

}  // namespace obcm

#endif
