#include "drunktext/pipeline.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "drunktext/classify.hpp"
#include "drunktext/community.hpp"
#include "drunktext/errors.hpp"
#include "drunktext/features.hpp"
#include "drunktext/lexicon.hpp"
#include "drunktext/rank.hpp"
#include "drunktext/rng.hpp"
#include "drunktext/temporal.hpp"

namespace drunktext {

namespace fs = std::filesystem;
using nlohmann::json;

std::string RunConfig::corpus_path() const { return out_dir + "/corpus.jsonl"; }
std::string RunConfig::labeled_path() const { return out_dir + "/labeled.jsonl"; }

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot hash " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& rel) {
    fs::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/" + rel, std::ios::binary);
    if (!out) throw IoError("cannot write " + cfg.out_dir + "/" + rel);
    return out;
}

// manifest-<stage>.json: stage flags, root seed, and a content hash per
// output file
std::vector<std::string> write_manifest(const RunConfig& cfg, const std::string& stage,
                                        json stage_config, std::vector<std::string> outputs) {
    json m;
    m["subcommand"] = stage;
    m["seed"] = cfg.seed;
    m["config"] = std::move(stage_config);
    json hashes = json::object();
    for (const auto& rel : outputs) hashes[rel] = hex64(fnv1a64_file(cfg.out_dir + "/" + rel));
    m["outputs"] = std::move(hashes);

    std::string rel = "manifest-" + stage + ".json";
    auto out = open_out(cfg, rel);
    out << m.dump(2) << '\n';
    outputs.push_back(rel);
    return outputs;
}

std::vector<UserRecord> load_input(const RunConfig& cfg, const std::string& fallback) {
    return load_corpus(cfg.input.empty() ? fallback : cfg.input);
}

std::vector<DaySegment> segments_of(const RunConfig& cfg) {
    if (cfg.segment == "weekday") return {DaySegment::Weekday};
    if (cfg.segment == "weekend") return {DaySegment::Weekend};
    if (cfg.segment == "both") return {DaySegment::Weekday, DaySegment::Weekend};
    throw InvalidConfig("segment must be weekday, weekend, or both");
}

LexiconCategory drunk_lexicon_for(const RunConfig& cfg, const LexiconSet& lexicons,
                                  const std::vector<UserRecord>& users) {
    const LexiconCategory& seed = lexicons.at("drunk");
    if (!cfg.expand) return seed;
    return expand_drunk_lexicon(users, seed, cfg.min_pmi, cfg.min_cooccur);
}

std::vector<PeakProfile> drunk_user_profiles(const RunConfig& cfg,
                                             const std::vector<UserRecord>& users,
                                             const LexiconCategory& scored) {
    std::vector<PeakProfile> profiles;
    for (const auto& user : users) {
        if (user.label != Label::DrunkTexter || user.tweets.empty()) continue;
        ScoreSeries series = score_series(user, scored);
        series.window = cfg.window;
        auto peaks = detect_peaks(series, cfg.window, cfg.peak_k);
        profiles.push_back(peak_profile(series, peaks));
    }
    return profiles;
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

}  // namespace

std::vector<std::string> run_generate(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    SyntheticConfig synth = cfg.synth;
    synth.seed = substream_seed(cfg.seed, "generate");
    auto users = generate_synthetic(synth, lexicons);
    fs::create_directories(cfg.out_dir);
    save_corpus(users, cfg.corpus_path());

    json sc{{"n_drunk", synth.n_drunk},
            {"n_nondrunk", synth.n_nondrunk},
            {"tweets_min", synth.tweets_min},
            {"tweets_max", synth.tweets_max},
            {"drunk_token_rate", synth.drunk_token_rate}};
    return write_manifest(cfg, "generate", std::move(sc), {"corpus.jsonl"});
}

std::vector<std::string> run_label(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.corpus_path());
    users = label_drunk_texters(users, lexicons.at("drunk"), cfg.min_drunk_tweets);
    fs::create_directories(cfg.out_dir);
    save_corpus(users, cfg.labeled_path());

    json sc{{"min_drunk_tweets", cfg.min_drunk_tweets}};
    return write_manifest(cfg, "label", std::move(sc), {"labeled.jsonl"});
}

std::vector<std::string> run_featurize(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());
    FeatureSchema schema = FeatureSchema::from_lexicons(lexicons);
    CategoryMatcher matcher(lexicons);

    std::vector<std::string> outputs;
    for (DaySegment seg : segments_of(cfg)) {
        std::string rel = std::string("features_") + segment_name(seg) + ".csv";
        auto out = open_out(cfg, rel);
        for (const auto& name : schema.names) out << name << ',';
        out << "user_id,segment,label\n";
        for (const auto& user : users) {
            try {
                FeatureVector fv = featurize_user(user, seg, matcher, schema);
                for (double v : fv.values) out << format_double(v) << ',';
                out << user.user_id << ',' << segment_name(seg) << ',' << label_name(user.label)
                    << '\n';
            } catch (const EmptySegment&) {
                // skip users with no tokens in this segment
            }
        }
        outputs.push_back(rel);
    }

    json sc{{"segment", cfg.segment}};
    return write_manifest(cfg, "featurize", std::move(sc), std::move(outputs));
}

std::vector<std::string> run_report_categories(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());
    CategoryReport report = category_report(users, lexicons);

    auto out = open_out(cfg, "category_report.csv");
    out << "category,alpha,beta,gamma,delta\n";
    for (const auto& [name, row] : report.rows)
        out << name << ',' << format_double(row.alpha) << ',' << format_double(row.beta) << ','
            << format_double(row.gamma) << ',' << format_double(row.delta) << '\n';

    return write_manifest(cfg, "report-categories", json::object(), {"category_report.csv"});
}

namespace {

json report_to_json(const EvalReport& r) {
    json folds = json::array();
    for (const auto& c : r.folds)
        folds.push_back({{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}});
    return {{"accuracy_pct", r.accuracy_pct},
            {"precision", r.precision},
            {"recall", r.recall},
            {"f1", r.f1},
            {"roc_auc", r.roc_auc},
            {"convergence_warnings", r.convergence_warnings},
            {"folds", std::move(folds)}};
}

}  // namespace

std::vector<std::string> run_evaluate(const RunConfig& cfg) {
    if (cfg.k < 2) throw InvalidConfig("k must be >= 2");
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());

    if (cfg.negative_set == "random") {
        // robustness analog: negatives are a seeded sample of non-positive
        // users, sized to the positive cohort
        std::vector<std::size_t> candidates;
        std::size_t n_pos = 0;
        for (std::size_t i = 0; i < users.size(); ++i) {
            if (users[i].label == Label::DrunkTexter)
                ++n_pos;
            else
                candidates.push_back(i);
        }
        auto g = substream(cfg.seed, "negative-set");
        shuffle_seeded(candidates, g);
        candidates.resize(std::min(candidates.size(), n_pos));
        for (std::size_t i : candidates) users[i].label = Label::NonDrunk;
        std::vector<bool> keep(users.size(), false);
        for (std::size_t i = 0; i < users.size(); ++i)
            keep[i] = users[i].label == Label::DrunkTexter;
        for (std::size_t i : candidates) keep[i] = true;
        std::vector<UserRecord> sampled;
        for (std::size_t i = 0; i < users.size(); ++i)
            if (keep[i]) sampled.push_back(std::move(users[i]));
        users = std::move(sampled);
    } else if (cfg.negative_set != "labeled") {
        throw InvalidConfig("negative-set must be labeled or random");
    }

    std::vector<ClassifierKind> kinds = cfg.classifier == "all"
                                            ? all_classifiers()
                                            : std::vector<ClassifierKind>{
                                                  classifier_from_name(cfg.classifier)};

    auto csv = open_out(cfg, "evaluation.csv");
    csv << "segment,classifier,accuracy_pct,precision,recall,f1,roc_auc\n";
    json detail{{"k", cfg.k}, {"segments", json::object()}};

    for (DaySegment seg : segments_of(cfg)) {
        Dataset data = build_dataset(users, seg, lexicons);
        json seg_json = json::object();
        for (ClassifierKind kind : kinds) {
            ClassifierSpec spec;
            spec.kind = kind;
            spec.seed = substream_seed(cfg.seed, std::string("train:") + segment_name(seg) +
                                                     ":" + classifier_name(kind));
            EvalReport r = cross_validate(
                spec, data, cfg.k,
                substream_seed(cfg.seed, std::string("cv:") + segment_name(seg)));
            csv << segment_name(seg) << ',' << classifier_name(kind) << ','
                << format_double(r.accuracy_pct) << ',' << format_double(r.precision) << ','
                << format_double(r.recall) << ',' << format_double(r.f1) << ','
                << format_double(r.roc_auc) << '\n';
            seg_json[classifier_name(kind)] = report_to_json(r);
        }
        detail["segments"][segment_name(seg)] = std::move(seg_json);
    }

    auto js = open_out(cfg, "evaluation.json");
    js << detail.dump(2) << '\n';

    json sc{{"classifier", cfg.classifier},
            {"k", cfg.k},
            {"segment", cfg.segment},
            {"negative_set", cfg.negative_set}};
    return write_manifest(cfg, "evaluate", std::move(sc), {"evaluation.csv", "evaluation.json"});
}

std::vector<std::string> run_rank(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());

    std::vector<std::string> outputs;
    for (DaySegment seg : segments_of(cfg)) {
        Dataset data = build_dataset(users, seg, lexicons);
        FeatureRanking ranking = rank_features(data, cfg.bins, RankCriterion::Chi2);
        std::string rel = std::string("rank_") + segment_name(seg) + ".csv";
        auto out = open_out(cfg, rel);
        out << "rank,feature,chi2,info_gain\n";
        for (const auto& row : ranking.rows)
            out << row.rank << ',' << row.feature << ',' << format_double(row.chi2) << ','
                << format_double(row.info_gain) << '\n';
        outputs.push_back(rel);
    }

    json sc{{"bins", cfg.bins}, {"segment", cfg.segment}};
    return write_manifest(cfg, "rank", std::move(sc), std::move(outputs));
}

std::vector<std::string> run_peaks(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());
    LexiconCategory scored = drunk_lexicon_for(cfg, lexicons, users);
    auto profiles = drunk_user_profiles(cfg, users, scored);

    auto out = open_out(cfg, "peaks.csv");
    out << "user_id,n_peaks,mean_height,se_height,max_height,mean_interval,se_interval\n";
    for (const auto& p : profiles)
        out << p.user_id << ',' << p.n_peaks << ',' << opt_cell(p.mean_height) << ','
            << opt_cell(p.se_height) << ',' << opt_cell(p.max_height) << ','
            << opt_cell(p.mean_interval) << ',' << opt_cell(p.se_interval) << '\n';

    json summary;
    try {
        HeightSummary s = height_normality_summary(profiles);
        summary = {{"n", s.n},
                   {"mean", s.mean},
                   {"stddev", s.stddev},
                   {"skewness", s.skewness ? json(*s.skewness) : json()},
                   {"excess_kurtosis", s.excess_kurtosis ? json(*s.excess_kurtosis) : json()}};
    } catch (const TooFewProfiles& e) {
        summary = {{"n", 0}, {"error", e.what()}};
    }
    auto js = open_out(cfg, "peaks_summary.json");
    js << summary.dump(2) << '\n';

    json sc{{"window", cfg.window},
            {"k", cfg.peak_k},
            {"expand", cfg.expand},
            {"min_pmi", cfg.min_pmi},
            {"min_cooccur", cfg.min_cooccur}};
    return write_manifest(cfg, "peaks", std::move(sc), {"peaks.csv", "peaks_summary.json"});
}

std::vector<std::string> run_bots(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());
    auto flags = detect_bots(users, lexicons.at("drunk"));

    auto out = open_out(cfg, "bots.csv");
    out << "user_id,drunk_tweet_fraction,flagged\n";
    for (const auto& f : flags)
        out << f.user_id << ',' << format_double(f.drunk_tweet_fraction) << ','
            << (f.flagged ? "true" : "false") << '\n';

    return write_manifest(cfg, "bots", json::object(), {"bots.csv"});
}

std::vector<std::string> run_communities(const RunConfig& cfg) {
    LexiconSet lexicons = load_lexicon_dir(cfg.lexicon_dir);
    auto users = load_input(cfg, cfg.labeled_path());

    Graph graph;
    if (cfg.mode == "interest") {
        LexiconCategory scored = drunk_lexicon_for(cfg, lexicons, users);
        auto profiles = drunk_user_profiles(cfg, users, scored);
        graph = interest_graph(profiles, cfg.threshold);
    } else if (cfg.mode == "friends" || cfg.mode == "followers") {
        std::vector<UserRecord> drunk_users;
        for (const auto& u : users)
            if (u.label == Label::DrunkTexter) drunk_users.push_back(u);
        graph = bond_graph(drunk_users,
                           cfg.mode == "friends" ? BondRelation::Friends
                                                 : BondRelation::Followers,
                           cfg.min_common);
    } else {
        throw InvalidConfig("mode must be interest, friends, or followers");
    }

    Partition partition = louvain(graph, substream_seed(cfg.seed, "louvain:" + cfg.mode));

    std::string base = "communities-" + cfg.mode;
    auto edges = open_out(cfg, base + "-edges.csv");
    edges << "u,v,weight\n";
    for (const auto& e : graph.edges)
        edges << graph.nodes[e.u] << ',' << graph.nodes[e.v] << ',' << format_double(e.weight)
              << '\n';

    auto parts = open_out(cfg, base + "-partition.csv");
    parts << "user_id,community_id\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        parts << graph.nodes[i] << ',' << partition.community_of[i] << '\n';

    json summary{{"mode", cfg.mode},
                 {"n_nodes", graph.nodes.size()},
                 {"n_edges", graph.edges.size()},
                 {"n_communities", partition.n_communities()},
                 {"modularity", partition.modularity},
                 {"pass_modularity", partition.pass_modularity},
                 {"degree_loglog_slope", degree_loglog_slope(graph)}};
    auto js = open_out(cfg, base + ".json");
    js << summary.dump(2) << '\n';

    json sc{{"mode", cfg.mode},
            {"threshold", cfg.threshold},
            {"min_common", cfg.min_common},
            {"window", cfg.window},
            {"k", cfg.peak_k},
            {"expand", cfg.expand}};
    return write_manifest(cfg, "communities-" + cfg.mode, std::move(sc),
                          {base + "-edges.csv", base + "-partition.csv", base + ".json"});
}

std::vector<std::string> run_all(const RunConfig& cfg) {
    std::vector<std::string> written;
    auto append = [&](std::vector<std::string> files) {
        written.insert(written.end(), files.begin(), files.end());
    };
    append(run_generate(cfg));
    append(run_label(cfg));
    append(run_featurize(cfg));
    append(run_report_categories(cfg));
    append(run_evaluate(cfg));
    append(run_rank(cfg));
    append(run_peaks(cfg));
    append(run_bots(cfg));
    for (const char* mode : {"interest", "friends", "followers"}) {
        RunConfig c = cfg;
        c.mode = mode;
        append(run_communities(c));
    }
    return written;
}

}  // namespace drunktext
