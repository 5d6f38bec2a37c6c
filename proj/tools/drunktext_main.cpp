#include <cstdio>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "drunktext/errors.hpp"
#include "drunktext/pipeline.hpp"

using drunktext::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"drunk-texter analysis pipeline: synthetic corpora, lexicon features, "
                 "classification, feature ranking, peak profiles, bots, communities"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--lexicons", cfg.lexicon_dir, "directory of *.lex files")
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "root seed; all stages derive named substreams")
        ->capture_default_str();
    app.add_option("--segment", cfg.segment, "weekday | weekend | both")
        ->check(CLI::IsMember({"weekday", "weekend", "both"}))
        ->capture_default_str();
    app.add_option("--input", cfg.input, "input corpus (JSONL); defaults to the pipeline chain");

    auto* generate = app.add_subcommand("generate", "write a planted-signal synthetic corpus");
    generate->add_option("--n-drunk", cfg.synth.n_drunk)->capture_default_str();
    generate->add_option("--n-nondrunk", cfg.synth.n_nondrunk)->capture_default_str();
    generate->add_option("--tweets-min", cfg.synth.tweets_min)->capture_default_str();
    generate->add_option("--tweets-max", cfg.synth.tweets_max)->capture_default_str();
    generate->add_option("--drunk-rate", cfg.synth.drunk_token_rate, "0 plants no signal at all")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    auto* label = app.add_subcommand("label", "apply the cohort labeling rule");
    label->add_option("--min-drunk-tweets", cfg.min_drunk_tweets)
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
        ->capture_default_str();

    app.add_subcommand("featurize", "per-user per-segment feature CSV");
    app.add_subcommand("report-categories", "four-column cohort/segment category means");

    auto* evaluate = app.add_subcommand("evaluate", "cross-validated classifier comparison");
    evaluate
        ->add_option("--classifier", cfg.classifier,
                     "all | svm | lr | rf | bagging | dt | nb | adaboost")
        ->check(CLI::IsMember({"all", "svm", "lr", "rf", "bagging", "dt", "nb", "adaboost"}))
        ->capture_default_str();
    evaluate->add_option("--k", cfg.k, "folds")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
        ->capture_default_str();
    evaluate->add_option("--negative-set", cfg.negative_set, "labeled | random")
        ->check(CLI::IsMember({"labeled", "random"}))
        ->capture_default_str();

    auto* rank = app.add_subcommand("rank", "chi-square / information-gain feature ranking");
    rank->add_option("--bins", cfg.bins)
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
        ->capture_default_str();

    CLI::Validator odd_window(
        [](std::string& value) {
            long w = std::stol(value);
            return w >= 1 && w % 2 == 1 ? std::string() : std::string("window must be odd and >= 1");
        },
        "ODD");

    auto* peaks = app.add_subcommand("peaks", "drunk-score peak profiles per drunk texter");
    peaks->add_option("--window", cfg.window, "odd smoothing window")
        ->check(odd_window)
        ->capture_default_str();
    peaks->add_option("--peak-k", cfg.peak_k, "threshold is mean + k * stddev")
        ->capture_default_str();
    peaks->add_flag("--no-expand", [&cfg](std::int64_t) { cfg.expand = false; },
                    "score with the seed lexicon only");
    peaks->add_option("--min-pmi", cfg.min_pmi)->capture_default_str();
    peaks->add_option("--min-cooccur", cfg.min_cooccur)->capture_default_str();

    app.add_subcommand("bots", "flag users with >99% drunk-related tweets");

    auto* communities = app.add_subcommand("communities", "graph building plus Louvain");
    communities->add_option("--mode", cfg.mode, "interest | friends | followers")
        ->check(CLI::IsMember({"interest", "friends", "followers"}))
        ->capture_default_str();
    communities->add_option("--threshold", cfg.threshold, "cosine threshold for interest edges")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    communities->add_option("--min-common", cfg.min_common, "bond-graph edge cutoff")
        ->capture_default_str();
    communities->add_option("--window", cfg.window)->check(odd_window)->capture_default_str();
    communities->add_option("--peak-k", cfg.peak_k)->capture_default_str();

    auto* all = app.add_subcommand("all", "full pipeline into --out");
    all->add_option("--n-drunk", cfg.synth.n_drunk)->capture_default_str();
    all->add_option("--n-nondrunk", cfg.synth.n_nondrunk)->capture_default_str();
    all->add_option("--drunk-rate", cfg.synth.drunk_token_rate)
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    all->add_option("--k", cfg.k)
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 1 on usage error, 0 for --help
    }

    try {
        if (generate->parsed()) drunktext::run_generate(cfg);
        else if (label->parsed()) drunktext::run_label(cfg);
        else if (app.get_subcommand("featurize")->parsed()) drunktext::run_featurize(cfg);
        else if (app.get_subcommand("report-categories")->parsed())
            drunktext::run_report_categories(cfg);
        else if (evaluate->parsed()) drunktext::run_evaluate(cfg);
        else if (rank->parsed()) drunktext::run_rank(cfg);
        else if (peaks->parsed()) drunktext::run_peaks(cfg);
        else if (app.get_subcommand("bots")->parsed()) drunktext::run_bots(cfg);
        else if (communities->parsed()) drunktext::run_communities(cfg);
        else if (all->parsed()) drunktext::run_all(cfg);
    } catch (const drunktext::PipelineError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
