#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drunktext/corpus.hpp"

namespace drunktext {

// All flags for every subcommand; each stage reads only its own slice. One
// root seed feeds named substreams so any stage reproduces in isolation.
struct RunConfig {
    std::string lexicon_dir = "data/lexicons";
    std::string out_dir = "out";
    std::uint64_t seed = 1337;
    std::string segment = "both";  // weekday | weekend | both

    SyntheticConfig synth;

    std::string input;  // corpus path; stages default to the pipeline chain
    std::size_t min_drunk_tweets = 5;

    std::string classifier = "all";
    std::size_t k = 10;
    std::string negative_set = "labeled";  // labeled | random

    std::size_t bins = 10;

    std::size_t window = 5;
    double peak_k = 1.0;
    double min_pmi = 1.0;
    std::size_t min_cooccur = 5;
    bool expand = true;

    std::string mode = "interest";  // interest | friends | followers
    double threshold = 0.2;
    std::size_t min_common = 1;

    std::string corpus_path() const;
    std::string labeled_path() const;
};

// Every stage writes its outputs plus a manifest-<stage>.json (config, seed,
// output hashes) into out_dir, and returns the relative paths written.
std::vector<std::string> run_generate(const RunConfig& cfg);
std::vector<std::string> run_label(const RunConfig& cfg);
std::vector<std::string> run_featurize(const RunConfig& cfg);
std::vector<std::string> run_report_categories(const RunConfig& cfg);
std::vector<std::string> run_evaluate(const RunConfig& cfg);
std::vector<std::string> run_rank(const RunConfig& cfg);
std::vector<std::string> run_peaks(const RunConfig& cfg);
std::vector<std::string> run_bots(const RunConfig& cfg);
std::vector<std::string> run_communities(const RunConfig& cfg);

/// generate, label, featurize, report-categories, evaluate, rank, peaks,
/// bots, then communities in all three modes. Byte-identical to running the
/// stages individually with the same flags.
std::vector<std::string> run_all(const RunConfig& cfg);

std::uint64_t fnv1a64_file(const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace drunktext
