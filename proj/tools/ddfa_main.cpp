// ddfa: compile rule sets to DFAs, compress them into delayed DFAs with
// default transitions, match inputs, verify equivalence, and benchmark the
// dense vs LSH-sparsified construction pipelines.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddfa/bench.hpp"
#include "ddfa/d2fa.hpp"
#include "ddfa/dfa.hpp"
#include "ddfa/error.hpp"
#include "ddfa/pipeline.hpp"
#include "ddfa/regex.hpp"
#include "ddfa/synth.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIntegrity = 2;

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ddfa::InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json report_json(const ddfa::CompressionReport& r) {
    return json{{"algorithm", r.algorithm},
                {"L", r.L},
                {"k", r.k},
                {"r", r.r},
                {"seed", r.seed},
                {"n", r.n},
                {"alphabet_size", r.alphabet_size},
                {"labeled_before", r.labeled_before},
                {"labeled_after", r.labeled_after},
                {"default_count", r.default_count},
                {"total_after", r.total_after},
                {"compression_ratio", r.compression_ratio},
                {"longest_delay", r.longest_delay},
                {"srg_edge_count", r.srg_edge_count},
                {"t_graph_ms", r.t_graph_ms},
                {"t_forest_ms", r.t_forest_ms},
                {"t_build_ms", r.t_build_ms},
                {"t_total_ms", r.t_total_ms}};
}

struct CompileArgs {
    std::string rules_path;
    std::string out_path;
    std::uint32_t alphabet = 256;
    std::size_t state_cap = 2'000'000;
    bool minimize = false;
};

int run_compile(const CompileArgs& args) {
    ddfa::RuleFile rules = ddfa::read_rule_file(args.rules_path);
    ddfa::CompileOptions opts;
    opts.minimize = args.minimize;
    opts.state_cap = args.state_cap;
    auto begin = std::chrono::steady_clock::now();
    ddfa::Dfa dfa;
    try {
        dfa = ddfa::compile_regex_set(rules.patterns, args.alphabet, opts);
    } catch (const ddfa::RegexSyntaxError& e) {
        std::cerr << args.rules_path << ":" << rules.lines[e.rule_index()] << ": offset "
                  << e.offset() << ": " << e.what() << "\n";
        return kExitInput;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          begin)
                    .count();
    ddfa::write_dfa(dfa, args.out_path);
    std::cout << "states " << dfa.state_count << "\n";
    std::cout << "build_ms " << ms << "\n";
    return kExitOk;
}

struct CompressArgs {
    std::string dfa_path;
    std::string algo = "orig";
    std::string out_path;
    std::string stats_path;
    std::uint32_t L = 2;
    std::uint32_t k = 8;
    std::uint32_t r = 512;
    std::uint64_t seed = 1;
    std::uint32_t dense_cap = 100'000;
    bool no_verify = false;
};

int run_compress(const CompressArgs& args) {
    ddfa::Dfa dfa = ddfa::read_dfa(args.dfa_path);
    auto algo = ddfa::parse_algo(args.algo);
    if (!algo) throw ddfa::InputError("unknown algorithm '" + args.algo + "'");
    ddfa::AlgoSpec spec;
    spec.algo = *algo;
    spec.L = args.L;
    spec.lsh = {args.k, args.r, args.seed};
    spec.dense_cap = args.dense_cap;
    ddfa::CompressionResult res = ddfa::compress(dfa, spec);
    ddfa::write_d2fa(res.d2fa, args.out_path);
    if (!args.stats_path.empty()) {
        std::ofstream stats(args.stats_path, std::ios::trunc);
        if (!stats) throw ddfa::InputError("cannot write " + args.stats_path);
        stats << report_json(res.report).dump(2) << "\n";
    }
    const auto& r = res.report;
    std::cout << r.algorithm << ": n=" << r.n << " labeled=" << r.labeled_after
              << " defaults=" << r.default_count << " ratio=" << r.compression_ratio
              << " longest_delay=" << r.longest_delay << " total_ms=" << r.t_total_ms << "\n";
    if (!args.no_verify) {
        ddfa::VerifyResult check = ddfa::verify_equivalent(dfa, res.d2fa);
        if (!check) {
            std::cerr << "verification failed: state " << check.state << ", character "
                      << check.character << ": " << check.detail << "\n";
            return kExitIntegrity;
        }
    }
    return kExitOk;
}

struct MatchArgs {
    std::string d2fa_path;
    std::string input_path;
    bool report = false;
};

int run_match(const MatchArgs& args) {
    ddfa::D2fa d2fa = ddfa::read_d2fa(args.d2fa_path);
    std::string input = read_bytes(args.input_path);
    ddfa::MatchResult m = ddfa::match_string(d2fa, input);
    for (std::size_t pos : m.accepting_positions) std::cout << "accept " << pos << "\n";
    double per_byte = input.empty() ? 0.0 : double(m.matching_delay) / double(input.size());
    std::cout << "matches " << m.accepting_positions.size() << "\n";
    std::cout << "matching_delay " << m.matching_delay << "\n";
    std::cout << "delay_per_byte " << per_byte << "\n";
    std::cout << "accepted " << (m.accepted ? 1 : 0) << "\n";
    if (args.report) {
        json j{{"bytes", input.size()},
               {"matches", m.accepting_positions.size()},
               {"matching_delay", m.matching_delay},
               {"delay_per_byte", per_byte},
               {"end_state", m.end_state},
               {"accepted", m.accepted}};
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

int run_verify(const std::string& dfa_path, const std::string& d2fa_path) {
    ddfa::Dfa dfa = ddfa::read_dfa(dfa_path);
    ddfa::D2fa d2fa = ddfa::read_d2fa(d2fa_path);
    ddfa::VerifyResult res = ddfa::verify_equivalent(dfa, d2fa);
    switch (res.status) {
        case ddfa::VerifyResult::Status::ok:
            std::cout << "equivalent\n";
            return kExitOk;
        case ddfa::VerifyResult::Status::shape_mismatch:
            std::cerr << "shape mismatch: " << res.detail << "\n";
            return kExitInput;
        case ddfa::VerifyResult::Status::transition_mismatch:
            std::cerr << "not equivalent: state " << res.state << ", character "
                      << res.character << ": " << res.detail << "\n";
            return kExitIntegrity;
    }
    return kExitIntegrity;
}

struct BenchArgs {
    std::string rules_dir;
    std::string synthetic;
    std::string algos = "orig,orig-sp,refined,refined-sp,cut,cut-sp,adfa,adfa-sp";
    std::string seeds = "1";
    std::string csv_path;
    std::uint32_t alphabet = 256;
    std::uint32_t L = 2;
    std::uint32_t k = 8;
    std::uint32_t r = 512;
    std::uint32_t dense_cap = 100'000;
};

int run_bench_cmd(const BenchArgs& args) {
    if (args.rules_dir.empty() == args.synthetic.empty())
        throw ddfa::InputError("bench: pass exactly one of --rules-dir / --synthetic");
    std::vector<ddfa::BenchDataset> datasets =
        args.rules_dir.empty() ? ddfa::build_synthetic_datasets(args.synthetic)
                               : ddfa::load_rules_dir(args.rules_dir, args.alphabet);

    ddfa::BenchConfig config;
    config.L = args.L;
    config.k = args.k;
    config.r = args.r;
    config.dense_cap = args.dense_cap;
    config.csv_path = args.csv_path;
    std::stringstream algos(args.algos), seeds(args.seeds);
    std::string item;
    while (std::getline(algos, item, ',')) {
        if (item.empty()) continue;
        auto a = ddfa::parse_algo(item);
        if (!a) throw ddfa::InputError("unknown algorithm '" + item + "'");
        config.algos.push_back(*a);
    }
    config.seeds.clear();
    while (std::getline(seeds, item, ',')) {
        if (item.empty()) continue;
        config.seeds.push_back(std::stoull(item));
    }
    if (config.algos.empty() || config.seeds.empty())
        throw ddfa::InputError("bench: need at least one algorithm and one seed");

    std::cout << ddfa::kBenchCsvHeader << "\n";
    int failures = ddfa::run_bench(datasets, config, std::cout);
    if (failures > 0) std::cerr << failures << " job(s) failed\n";
    return kExitOk;  // partial failures are recorded per row, run continues
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delayed-DFA (D2FA) compression toolkit"};
    app.require_subcommand(1);

    CompileArgs compile_args;
    auto* compile = app.add_subcommand("compile", "compile a rule file into a DFA");
    compile->add_option("--rules", compile_args.rules_path, "rule file, one pattern per line")
        ->required();
    compile->add_option("--alphabet", compile_args.alphabet, "alphabet size (default 256)");
    compile->add_option("--out", compile_args.out_path, "output DFA path")->required();
    compile->add_option("--state-cap", compile_args.state_cap, "abort above this many states");
    compile->add_flag("--minimize", compile_args.minimize, "Hopcroft-minimize the DFA");

    CompressArgs compress_args;
    auto* compress = app.add_subcommand("compress", "compress a DFA into a D2FA");
    compress->add_option("--dfa", compress_args.dfa_path, "input DFA path")->required();
    compress->add_option("--algo", compress_args.algo,
                         "orig|orig-sp|refined|refined-sp|cut|cut-sp|adfa|adfa-sp")
        ->required();
    compress->add_option("--L", compress_args.L, "longest-delay bound (refined/cut)");
    compress->add_option("--k", compress_args.k, "LSH characters per round");
    compress->add_option("--r", compress_args.r, "LSH rounds");
    compress->add_option("--seed", compress_args.seed, "RNG seed for sparse variants");
    compress->add_option("--dense-cap", compress_args.dense_cap,
                         "state cap for dense (quadratic) graphs");
    compress->add_option("--out", compress_args.out_path, "output D2FA path")->required();
    compress->add_option("--stats", compress_args.stats_path, "write a JSON stats record here");
    compress->add_flag("--no-verify", compress_args.no_verify,
                       "skip the structural equivalence check");

    MatchArgs match_args;
    auto* match = app.add_subcommand("match", "run a D2FA over an input file");
    match->add_option("--d2fa", match_args.d2fa_path, "D2FA path")->required();
    match->add_option("--input", match_args.input_path, "input bytes")->required();
    match->add_flag("--report", match_args.report, "also print a JSON report");

    std::string verify_dfa, verify_d2fa;
    auto* verify = app.add_subcommand("verify", "check a D2FA against its source DFA");
    verify->add_option("--dfa", verify_dfa, "DFA path")->required();
    verify->add_option("--d2fa", verify_d2fa, "D2FA path")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run compression benchmarks, emit CSV rows");
    bench->add_option("--rules-dir", bench_args.rules_dir, "directory of *.rules files");
    bench->add_option("--synthetic", bench_args.synthetic,
                      "spec, e.g. sizes=1024,2048;clusters=16;noise=0.05;alphabet=256;"
                      "kind=clustered;seed=1");
    bench->add_option("--algos", bench_args.algos, "comma-separated algorithm list");
    bench->add_option("--seeds", bench_args.seeds, "comma-separated seed list");
    bench->add_option("--csv", bench_args.csv_path, "append rows to this CSV file");
    bench->add_option("--alphabet", bench_args.alphabet, "alphabet for rule compilation");
    bench->add_option("--L", bench_args.L, "longest-delay bound");
    bench->add_option("--k", bench_args.k, "LSH characters per round");
    bench->add_option("--r", bench_args.r, "LSH rounds");
    bench->add_option("--dense-cap", bench_args.dense_cap, "dense graph state cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(compile)) return run_compile(compile_args);
        if (app.got_subcommand(compress)) return run_compress(compress_args);
        if (app.got_subcommand(match)) return run_match(match_args);
        if (app.got_subcommand(verify)) return run_verify(verify_dfa, verify_d2fa);
        if (app.got_subcommand(bench)) return run_bench_cmd(bench_args);
    } catch (const ddfa::IntegrityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
