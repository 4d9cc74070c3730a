#include "ddfa/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ddfa/error.hpp"
#include "ddfa/regex.hpp"
#include "ddfa/synth.hpp"

namespace ddfa {

namespace {

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(sep, pos);
        if (end == std::string::npos) end = text.size();
        parts.push_back(text.substr(pos, end - pos));
        pos = end + 1;
        if (end == text.size()) break;
    }
    return parts;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError("bench: bad " + what + " '" + s + "'");
    }
}

}  // namespace

std::string bench_csv_row(const BenchRow& row) {
    const CompressionReport& r = row.report;
    std::ostringstream out;
    out << row.dataset << ',' << row.n << ',' << r.algorithm << ',' << r.L << ',' << r.k << ','
        << r.r << ',' << r.seed << ',' << r.labeled_after << ',' << r.default_count << ','
        << fixed(r.compression_ratio, 6) << ',' << r.longest_delay << ','
        << fixed(r.t_graph_ms, 3) << ',' << fixed(r.t_forest_ms, 3) << ','
        << fixed(r.t_build_ms, 3) << ',' << fixed(r.t_total_ms, 3);
    return out.str();
}

std::vector<BenchDataset> build_synthetic_datasets(const std::string& spec) {
    std::vector<std::uint64_t> sizes;
    std::uint32_t clusters = 16;
    double noise = 0.05;
    std::uint32_t alphabet = 256;
    std::uint64_t seed = 1;
    std::string kind = "clustered";

    for (const std::string& part : split(spec, ';')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw InputError("bench: bad spec item '" + part + "'");
        std::string key = part.substr(0, eq), value = part.substr(eq + 1);
        if (key == "sizes") {
            for (const std::string& s : split(value, ','))
                if (!s.empty()) sizes.push_back(parse_u64(s, "size"));
        } else if (key == "clusters") {
            clusters = static_cast<std::uint32_t>(parse_u64(value, "cluster count"));
        } else if (key == "noise") {
            try {
                noise = std::stod(value);
            } catch (const std::exception&) {
                throw InputError("bench: bad noise '" + value + "'");
            }
        } else if (key == "alphabet") {
            alphabet = static_cast<std::uint32_t>(parse_u64(value, "alphabet size"));
        } else if (key == "seed") {
            seed = parse_u64(value, "seed");
        } else if (key == "kind") {
            kind = value;
        } else {
            throw InputError("bench: unknown spec key '" + key + "'");
        }
    }
    if (sizes.empty()) throw InputError("bench: spec needs sizes=...");

    std::vector<BenchDataset> datasets;
    if (kind == "clustered") {
        for (std::uint64_t n : sizes) {
            std::uint32_t c = std::min<std::uint32_t>(clusters, static_cast<std::uint32_t>(n));
            BenchDataset d;
            d.name = "clustered-" + std::to_string(n);
            d.dfa = generate_clustered_dfa(static_cast<std::uint32_t>(n), alphabet, c, noise,
                                           seed);
            datasets.push_back(std::move(d));
        }
    } else if (kind == "rules") {
        for (std::uint64_t count : sizes) {
            RuleGenOptions opts;
            opts.rule_count = static_cast<std::uint32_t>(count);
            opts.alphabet_size = alphabet;
            auto rules = generate_rule_set(opts, seed);
            BenchDataset d;
            d.name = "rules-" + std::to_string(count);
            d.dfa = compile_regex_set(rules, alphabet);
            datasets.push_back(std::move(d));
        }
        std::sort(datasets.begin(), datasets.end(), [](const auto& a, const auto& b) {
            return a.dfa.state_count < b.dfa.state_count;
        });
    } else {
        throw InputError("bench: unknown kind '" + kind + "'");
    }
    return datasets;
}

std::vector<BenchDataset> load_rules_dir(const std::string& dir, std::uint32_t alphabet_size) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".rules")
            files.push_back(entry.path());
    if (ec) throw InputError("bench: cannot read directory " + dir + ": " + ec.message());
    if (files.empty()) throw InputError("bench: no *.rules files in " + dir);
    std::sort(files.begin(), files.end());

    std::vector<BenchDataset> datasets;
    for (const auto& path : files) {
        RuleFile rf = read_rule_file(path.string());
        BenchDataset d;
        d.name = path.stem().string();
        d.dfa = compile_regex_set(rf.patterns, alphabet_size);
        datasets.push_back(std::move(d));
    }
    std::sort(datasets.begin(), datasets.end(), [](const auto& a, const auto& b) {
        return a.dfa.state_count < b.dfa.state_count;
    });
    return datasets;
}

int run_bench(const std::vector<BenchDataset>& datasets, const BenchConfig& config,
              std::ostream& out) {
    std::ofstream csv;
    if (!config.csv_path.empty()) {
        bool fresh = true;
        {
            std::ifstream probe(config.csv_path);
            fresh = !probe.good() || probe.peek() == std::ifstream::traits_type::eof();
        }
        csv.open(config.csv_path, std::ios::app);
        if (!csv) throw InputError("bench: cannot write " + config.csv_path);
        if (fresh) csv << kBenchCsvHeader << "\n";
    }

    int failures = 0;
    // (dataset, algo) -> mean total time / mean size over seeds
    std::map<std::pair<std::string, std::string>, std::pair<double, double>> means;
    std::map<std::string, std::uint32_t> dataset_n;

    for (const auto& dataset : datasets) {
        dataset_n[dataset.name] = dataset.dfa.state_count;
        for (Algo algo : config.algos) {
            double time_sum = 0.0, size_sum = 0.0;
            std::size_t runs = 0;
            for (std::uint64_t seed : config.seeds) {
                AlgoSpec spec;
                spec.algo = algo;
                spec.L = config.L;
                spec.lsh = {config.k, config.r, seed};
                spec.dense_cap = config.dense_cap;
                try {
                    CompressionResult res = compress(dataset.dfa, spec);
                    BenchRow row{dataset.name, dataset.dfa.state_count, res.report};
                    std::string line = bench_csv_row(row);
                    if (csv.is_open()) csv << line << "\n";
                    out << line << "\n";
                    time_sum += res.report.t_total_ms;
                    size_sum += double(res.report.total_after);
                    ++runs;
                } catch (const std::exception& e) {
                    ++failures;
                    out << "# FAIL " << dataset.name << " " << to_string(algo) << " seed "
                        << seed << ": " << e.what() << "\n";
                }
            }
            if (runs > 0)
                means[{dataset.name, to_string(algo)}] = {time_sum / double(runs),
                                                          size_sum / double(runs)};
        }
    }
    if (csv.is_open()) csv.flush();

    // Sparse vs dense summary where both variants ran.
    static const std::pair<const char*, const char*> kPairs[] = {
        {"orig", "orig-sp"}, {"refined", "refined-sp"}, {"cut", "cut-sp"}, {"adfa", "adfa-sp"}};
    bool header_done = false;
    for (const auto& dataset : datasets) {
        for (auto [dense, sp] : kPairs) {
            auto itd = means.find({dataset.name, dense});
            auto its = means.find({dataset.name, sp});
            if (itd == means.end() || its == means.end()) continue;
            if (!header_done) {
                out << "\nsummary: sparse vs dense\n";
                out << "dataset,n,pair,time_ratio,size_delta_pct\n";
                header_done = true;
            }
            double time_ratio = its->second.first / std::max(itd->second.first, 1e-9);
            double size_delta =
                100.0 * (its->second.second - itd->second.second) /
                std::max(itd->second.second, 1e-9);
            out << dataset.name << ',' << dataset_n[dataset.name] << ',' << sp << '/' << dense
                << ',' << fixed(time_ratio, 3) << ',' << fixed(size_delta, 2) << "\n";
        }
    }
    return failures;
}

}  // namespace ddfa
