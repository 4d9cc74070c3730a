#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddfa/dfa.hpp"
#include "ddfa/pipeline.hpp"

namespace ddfa {

struct BenchDataset {
    std::string name;
    Dfa dfa;
};

// One CSV row per (dataset, algorithm, seed) run.
struct BenchRow {
    std::string dataset;
    std::uint32_t n = 0;
    CompressionReport report;
};

inline constexpr const char* kBenchCsvHeader =
    "dataset,n,algo,L,k,r,seed,labeled_after,default_count,ratio,longest_delay,"
    "t_graph_ms,t_forest_ms,t_build_ms,t_total_ms";

std::string bench_csv_row(const BenchRow& row);

// Parses a synthetic dataset spec of the form
//   "sizes=1024,2048,4096;clusters=16;noise=0.05;alphabet=256;kind=clustered;seed=1"
// kind=clustered (default) builds clustered DFAs of the given sizes;
// kind=rules generates rule sets (sizes = rule counts) and compiles them.
std::vector<BenchDataset> build_synthetic_datasets(const std::string& spec);

// Compiles every *.rules file in the directory (sorted by resulting state
// count) into a dataset named after the file.
std::vector<BenchDataset> load_rules_dir(const std::string& dir, std::uint32_t alphabet_size);

struct BenchConfig {
    std::vector<Algo> algos;
    std::vector<std::uint64_t> seeds = {1};
    std::uint32_t L = 2;
    std::uint32_t k = 8;
    std::uint32_t r = 512;
    std::uint32_t dense_cap = 100'000;
    std::string csv_path;  // empty: rows go to `out` only
};

// Runs every (dataset, algo, seed) job, appends rows to the CSV, and prints
// a sparse-vs-dense summary. Per-job failures are reported and skipped.
// Returns the number of failed jobs.
int run_bench(const std::vector<BenchDataset>& datasets, const BenchConfig& config,
              std::ostream& out);

}  // namespace ddfa
