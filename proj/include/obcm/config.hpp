#ifndef OBCM_CONFIG_HPP
#define OBCM_CONFIG_HPP

// Suite config file (JSON) and CSV column access for the CLI.
//
// Config schema:
//   {
//     "suite": {"n1": 100, "n2": 100, "p": 0.05, "count": 50},
//     // or: "instance_dir": "path/to/instances",
//     "master_seed": 20240601,
//     "repetitions": 1,
//     "stop": {"stagnation_exponent": 1.5, "max_generations": 10000000},
//     "algorithms": ["barycenter", {"name": "jsrls", "max_generations": 100}],
//     "output_dir": "out",
//     "threads": 1,
//     "write_traces": true
//   }
// Algorithm entries are either a name or an object with per-algorithm stop
// overrides (stagnation_exponent, stagnation_limit, max_generations, target).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "obcm/bench.hpp"

namespace obcm {

namespace detail {

inline algorithm_spec parse_algorithm_spec(const nlohmann::json& entry) {
    algorithm_spec spec;
    if (entry.is_string()) {
        spec.name = entry.get<std::string>();
        return spec;
    }
    if (!entry.is_object() || !entry.contains("name"))
        throw std::invalid_argument("algorithm entry must be a name or an object with 'name'");
    spec.name = entry.at("name").get<std::string>();
    if (entry.contains("stagnation_exponent"))
        spec.stagnation_exponent = entry.at("stagnation_exponent").get<double>();
    if (entry.contains("stagnation_limit"))
        spec.stagnation_limit = entry.at("stagnation_limit").get<std::uint64_t>();
    if (entry.contains("max_generations"))
        spec.max_generations = entry.at("max_generations").get<std::uint64_t>();
    if (entry.contains("target")) spec.target = entry.at("target").get<crossing_t>();
    return spec;
}

}  // namespace detail

inline suite_config parse_suite_config(const std::string& text, const std::string& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(origin + ": " + e.what());
    }
    try {
        suite_config config;
        if (doc.contains("suite")) {
            const auto& s = doc.at("suite");
            random_family fam;
            fam.n1 = s.at("n1").get<vertex_t>();
            fam.n2 = s.at("n2").get<vertex_t>();
            fam.p = s.at("p").get<double>();
            fam.count = s.value("count", 1u);
            config.random = fam;
        }
        if (doc.contains("instance_dir"))
            config.instance_dir = doc.at("instance_dir").get<std::string>();
        config.master_seed = seed_t{doc.value("master_seed", std::uint64_t{0})};
        config.repetitions = doc.value("repetitions", 1u);
        if (doc.contains("stop")) {
            const auto& s = doc.at("stop");
            config.stagnation_exponent = s.value("stagnation_exponent", 1.5);
            config.max_generations = s.value("max_generations", UINT64_MAX);
        }
        if (!doc.contains("algorithms") || !doc.at("algorithms").is_array())
            throw std::invalid_argument("config needs an 'algorithms' array");
        for (const auto& entry : doc.at("algorithms"))
            config.algorithms.push_back(detail::parse_algorithm_spec(entry));
        config.output_dir = doc.value("output_dir", std::string{});
        config.threads = doc.value("threads", 1u);
        config.write_traces = doc.value("write_traces", true);
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
}

inline suite_config load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_suite_config(buffer.str(), path);
}

/// Reads one numeric column from a CSV file by header name. A leading
/// "obcm-bench 1" version line is skipped if present.
inline std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open CSV file '" + path + "'");
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw parse_error(path + ": empty file");
    ++lineno;
    if (line.rfind("obcm-bench", 0) == 0) {
        if (!std::getline(in, line)) throw parse_error(path + ": missing header row");
        ++lineno;
    }
    const auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(s);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        return fields;
    };
    const std::vector<std::string> header = split(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    if (col == header.size())
        throw std::invalid_argument(path + ": no column named '" + column + "'");
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line);
        if (fields.size() <= col)
            throw parse_error(path + ":" + std::to_string(lineno) + ": short row");
        try {
            values.push_back(std::stod(fields[col]));
        } catch (const std::exception&) {
            throw parse_error(path + ":" + std::to_string(lineno) + ": '" + fields[col] +
                              "' is not a number");
        }
    }
    return values;
}

}  // namespace obcm

#endif
