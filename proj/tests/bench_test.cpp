#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "obcm/bench.hpp"
#include "obcm/config.hpp"

using namespace obcm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct temp_dir {
    fs::path path;
    explicit temp_dir(const std::string& tag)
        : path(fs::temp_directory_path() / ("obcm_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~temp_dir() { fs::remove_all(path); }
};

suite_config small_config() {
    suite_config config;
    config.random = random_family{8, 8, 0.3, 5};
    config.master_seed = seed_t{20240601};
    config.algorithms = {{"barycenter"}, {"rls-jump"}};
    config.repetitions = 1;
    return config;
}

}  // namespace

TEST_CASE("run_suite produces one row per cell with exact references") {
    const auto report = run_suite(small_config());
    REQUIRE(report.rows.size() == 10);
    REQUIRE(report.instances.size() == 5);
    for (const run_row& row : report.rows) {
        CHECK(row.reference_kind == "exact");
        CHECK(row.gap >= 0);
        CHECK(row.final_crossings == row.reference + row.gap);
    }
    for (const instance_summary& inst : report.instances) {
        CHECK(inst.lower_bound <= inst.reference);
        CHECK(inst.n1 == 8);
        CHECK(inst.n2 == 8);
    }
    // row order is (instance, algorithm, repetition)
    CHECK(report.rows[0].algorithm == "barycenter");
    CHECK(report.rows[1].algorithm == "rls-jump");
    CHECK(report.rows[0].instance_id == "rand_000");
    CHECK(report.rows[2].instance_id == "rand_001");
}

TEST_CASE("reference sandwich holds with best-known references") {
    suite_config config = small_config();
    config.random = random_family{22, 22, 0.2, 3};  // above the exact cap
    config.algorithms = {{"barycenter"}, {"median"}, {"rls-jump"}};
    const auto report = run_suite(config);
    for (const run_row& row : report.rows) {
        CHECK(row.reference_kind == "best-known");
        CHECK(row.final_crossings >= row.reference);
    }
    for (const instance_summary& inst : report.instances)
        CHECK(inst.lower_bound <= inst.reference);
}

TEST_CASE("suite CSVs are byte-identical across runs and thread counts") {
    temp_dir dir_a("suite_a"), dir_b("suite_b"), dir_c("suite_c");
    suite_config config = small_config();
    config.algorithms = {{"barycenter"}, {"sifting"}, {"rls-jump"}, {"jsrls"}};
    config.repetitions = 2;

    config.output_dir = dir_a.path.string();
    run_suite(config);
    config.output_dir = dir_b.path.string();
    run_suite(config);
    config.output_dir = dir_c.path.string();
    config.threads = 4;
    run_suite(config);

    for (const std::string name :
         {"results.csv", "instances.csv", "summary.csv", "tests.csv", "convergence.csv"}) {
        INFO(name);
        const std::string a = slurp(dir_a.path / name);
        CHECK(a == slurp(dir_b.path / name));
        CHECK(a == slurp(dir_c.path / name));
    }
    const std::string trace_name = "rand_000_rls-jump_1.trace.csv";
    CHECK(slurp(dir_a.path / "traces" / trace_name) ==
          slurp(dir_c.path / "traces" / trace_name));
}

TEST_CASE("run_suite reads instances from a directory in name order") {
    temp_dir dir("inst_dir");
    write_instance(generate_random(6, 6, 0.5, seed_t{1}), (dir.path / "b_second.obcm").string());
    write_instance(generate_random(6, 5, 0.5, seed_t{2}), (dir.path / "a_first.obcm").string());

    suite_config config;
    config.instance_dir = dir.path.string();
    config.master_seed = seed_t{9};
    config.algorithms = {{"median"}};
    const auto report = run_suite(config);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].instance_id == "a_first");
    CHECK(report.rows[1].instance_id == "b_second");
}

TEST_CASE("run_suite validates its config") {
    suite_config config = small_config();
    config.algorithms.clear();
    CHECK_THROWS_AS(run_suite(config), std::invalid_argument);

    config = small_config();
    config.algorithms = {{"nonsense"}};
    CHECK_THROWS_AS(run_suite(config), std::invalid_argument);

    config = small_config();
    config.algorithms = {{"median"}, {"median"}};
    CHECK_THROWS_AS(run_suite(config), std::invalid_argument);

    config = small_config();
    config.instance_dir = "also-set";
    CHECK_THROWS_AS(run_suite(config), std::invalid_argument);

    config = small_config();
    config.repetitions = 0;
    CHECK_THROWS_AS(run_suite(config), std::invalid_argument);
}

TEST_CASE("per-algorithm stop overrides take effect") {
    suite_config config = small_config();
    config.algorithms = {{"rls-jump", std::nullopt, std::nullopt, std::uint64_t{3},
                          std::nullopt}};
    const auto report = run_suite(config);
    for (const run_row& row : report.rows) CHECK(row.generations <= 3);
}

TEST_CASE("compare_algorithms matches the self-comparison contract") {
    const auto report = run_suite(small_config());
    const auto self = compare_algorithms(report, "rls-jump", "rls-jump");
    CHECK(self.p_two_sided == 1.0);
    CHECK_THROWS_AS(compare_algorithms(report, "rls-jump", "median"), std::invalid_argument);
}

TEST_CASE("emit_convergence step-interpolates onto the grid") {
    suite_report report;
    run_row row;
    row.instance_id = "i0";
    row.algorithm = "x";
    row.reference = 3;
    row.generations = 8;
    report.rows.push_back(row);
    run_trace trace;
    trace.algorithm = "x";
    trace.events = {{1, 10}, {5, 3}};
    report.traces.push_back(trace);

    const auto rows = emit_convergence(report, {1, 2, 4, 8});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].mean_gap == 7.0);
    CHECK(rows[1].mean_gap == 7.0);
    CHECK(rows[2].mean_gap == 7.0);
    CHECK(rows[3].mean_gap == 0.0);
    for (const auto& r : rows) CHECK(r.stddev == 0.0);
}

TEST_CASE("emit_convergence is all-zero when every trace starts at the reference") {
    suite_report report;
    for (int i = 0; i < 3; ++i) {
        run_row row;
        row.instance_id = "i" + std::to_string(i);
        row.algorithm = "x";
        row.reference = 5;
        report.rows.push_back(row);
        run_trace trace;
        trace.events = {{0, 5}};
        report.traces.push_back(trace);
    }
    for (const auto& r : emit_convergence(report)) {
        CHECK(r.mean_gap == 0.0);
        CHECK(r.stddev == 0.0);
    }
}

TEST_CASE("jump's convergence curve dominates swap's late checkpoints") {
    suite_config config;
    config.random = random_family{100, 100, 0.05, 8};
    config.master_seed = seed_t{815};
    config.algorithms = {{"rls-swap"}, {"rls-jump"}};
    config.threads = 2;
    const auto report = run_suite(config);
    const auto rows = emit_convergence(report);
    std::map<std::uint64_t, std::map<std::string, double>> by_checkpoint;
    for (const convergence_row& r : rows) by_checkpoint[r.checkpoint][r.algorithm] = r.mean_gap;
    int late_checkpoints = 0;
    for (const auto& [checkpoint, gaps] : by_checkpoint) {
        if (checkpoint < 1000) continue;
        ++late_checkpoints;
        CHECK(gaps.at("rls-jump") <= gaps.at("rls-swap"));
    }
    CHECK(late_checkpoints >= 3);
}

TEST_CASE("emit_convergence rejects mismatched coverage") {
    suite_report report;
    run_row a;
    a.instance_id = "i0";
    a.algorithm = "x";
    report.rows.push_back(a);
    run_row b;
    b.instance_id = "i1";  // different instance set for algorithm y
    b.algorithm = "y";
    report.rows.push_back(b);
    report.traces.resize(2);
    report.traces[0].events = {{0, 0}};
    report.traces[1].events = {{0, 0}};
    CHECK_THROWS_AS(emit_convergence(report), std::invalid_argument);
}

TEST_CASE("suite config parses from JSON") {
    const std::string text = R"({
        "suite": {"n1": 10, "n2": 12, "p": 0.25, "count": 4},
        "master_seed": 77,
        "repetitions": 2,
        "stop": {"stagnation_exponent": 2.0, "max_generations": 5000},
        "algorithms": ["barycenter", {"name": "jsrls", "max_generations": 100}],
        "output_dir": "somewhere",
        "threads": 3,
        "write_traces": false
    })";
    const suite_config config = parse_suite_config(text, "mem");
    REQUIRE(config.random.has_value());
    CHECK(config.random->n1 == 10);
    CHECK(config.random->n2 == 12);
    CHECK(config.random->p == 0.25);
    CHECK(config.random->count == 4);
    CHECK(config.master_seed.value == 77);
    CHECK(config.repetitions == 2);
    CHECK(config.stagnation_exponent == 2.0);
    CHECK(config.max_generations == 5000);
    REQUIRE(config.algorithms.size() == 2);
    CHECK(config.algorithms[0].name == "barycenter");
    CHECK(config.algorithms[1].name == "jsrls");
    REQUIRE(config.algorithms[1].max_generations.has_value());
    CHECK(*config.algorithms[1].max_generations == 100);
    CHECK(config.threads == 3);
    CHECK_FALSE(config.write_traces);

    CHECK_THROWS_AS(parse_suite_config("{ not json", "mem"), parse_error);
    CHECK_THROWS_AS(parse_suite_config(R"({"algorithms": 5})", "mem"), std::invalid_argument);
}

TEST_CASE("read_csv_column finds named columns and reports bad cells") {
    temp_dir dir("csv");
    const fs::path path = dir.path / "t.csv";
    {
        std::ofstream out(path);
        out << "obcm-bench 1\na,b,c\n1,2.5,x\n4,-1,y\n";
    }
    CHECK(read_csv_column(path.string(), "a") == std::vector<double>{1.0, 4.0});
    CHECK(read_csv_column(path.string(), "b") == std::vector<double>{2.5, -1.0});
    CHECK_THROWS_AS(read_csv_column(path.string(), "nope"), std::invalid_argument);
    CHECK_THROWS_AS(read_csv_column(path.string(), "c"), parse_error);
    CHECK_THROWS_AS(read_csv_column((dir.path / "missing.csv").string(), "a"), io_error);
}
