#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddfa/d2fa.hpp"
#include "ddfa/graph.hpp"

namespace ddfa {

// The eight end-to-end compression algorithms. *_sp variants replace the
// dense similarity graph (or the dense best-default scan) with LSH sampling.
enum class Algo {
    orig,
    orig_sp,
    refined,
    refined_sp,
    cut,
    cut_sp,
    adfa,
    adfa_sp,
};

const char* to_string(Algo a);
std::optional<Algo> parse_algo(std::string_view name);
std::vector<Algo> all_algos();
bool algo_is_sparse(Algo a);
bool algo_bounds_longest_delay(Algo a);  // refined*, cut*

struct AlgoSpec {
    Algo algo = Algo::orig;
    std::uint32_t L = 2;  // longest-delay bound; refined*/cut* only
    LshParams lsh;        // sparse variants only
    std::uint32_t dense_cap = 100'000;
};

struct CompressionReport {
    std::string algorithm;
    std::uint32_t L = 0;  // 0 when the algorithm has no delay bound
    std::uint32_t k = 0;  // 0 for dense variants
    std::uint32_t r = 0;
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    std::uint32_t alphabet_size = 0;
    std::uint64_t labeled_before = 0;  // n * alphabet_size
    std::uint64_t labeled_after = 0;
    std::uint64_t default_count = 0;
    std::uint64_t total_after = 0;  // labeled_after + default_count
    double compression_ratio = 0.0;  // total_after / labeled_before
    std::uint32_t longest_delay = 0;
    std::uint64_t srg_edge_count = 0;  // 0 for the A-DFA family
    double t_graph_ms = 0.0;
    double t_forest_ms = 0.0;
    double t_build_ms = 0.0;
    double t_total_ms = 0.0;  // graph + forest + build, measured end to end
};

struct CompressionResult {
    D2fa d2fa;
    CompressionReport report;
};

// Runs the pipeline selected by spec.algo. Throws InputError on invalid
// parameters or a dense run above spec.dense_cap states.
CompressionResult compress(const Dfa& dfa, const AlgoSpec& spec);

// Named entry points for the individual pipelines.
CompressionResult compress_orig(const Dfa& dfa, bool sparse, const LshParams& lsh = {},
                                std::uint32_t dense_cap = 100'000);
CompressionResult compress_refined(const Dfa& dfa, std::uint32_t L, bool sparse,
                                   const LshParams& lsh = {}, std::uint32_t dense_cap = 100'000);
CompressionResult compress_cut(const Dfa& dfa, std::uint32_t L, bool sparse,
                               const LshParams& lsh = {}, std::uint32_t dense_cap = 100'000);
CompressionResult compress_adfa(const Dfa& dfa);
CompressionResult compress_adfa_sparse(const Dfa& dfa, const LshParams& lsh);

}  // namespace ddfa
