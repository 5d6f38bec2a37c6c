// Acceptance suite: one line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "drunktext/classify.hpp"
#include "drunktext/community.hpp"
#include "drunktext/corpus.hpp"
#include "drunktext/features.hpp"
#include "drunktext/lexicon.hpp"
#include "drunktext/pipeline.hpp"
#include "drunktext/rank.hpp"
#include "drunktext/rng.hpp"
#include "drunktext/temporal.hpp"

using namespace drunktext;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LexiconSet shipped() { return load_lexicon_dir(DRUNKTEXT_LEXICON_DIR); }

// ---- independent oracles -------------------------------------------------

double chi2_oracle(const std::vector<std::size_t>& bins, const std::vector<int>& labels) {
    std::map<std::size_t, double> row;
    std::map<int, double> col;
    std::map<std::pair<std::size_t, int>, double> cell;
    double n = 0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        row[bins[i]] += 1;
        col[labels[i]] += 1;
        cell[{bins[i], labels[i]}] += 1;
        n += 1;
    }
    double chi2 = 0;
    for (const auto& [b, rt] : row)
        for (const auto& [c, ct] : col) {
            double expected = rt * ct / n;
            double observed = cell.count({b, c}) ? cell[{b, c}] : 0.0;
            if (expected > 0) chi2 += (observed - expected) * (observed - expected) / expected;
        }
    return chi2;
}

double auc_oracle(const std::vector<double>& scores, const std::vector<int>& labels) {
    double num = 0, pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] == 1) continue;
            pairs += 1;
            if (scores[i] > scores[j]) num += 1;
            else if (scores[i] == scores[j]) num += 0.5;
        }
    }
    return num / pairs;
}

std::vector<std::size_t> maxima_oracle(const std::vector<double>& s) {
    double mu = 0;
    for (double v : s) mu += v;
    mu /= static_cast<double>(s.size());
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i - 1] < s[i])) continue;
        std::size_t j = i;
        while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
        if (j + 1 >= s.size()) continue;
        if (s[j + 1] < s[i] && s[i] > mu) out.push_back(i);
    }
    return out;
}

std::vector<double> midranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
        double mid = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) rank[order[t]] = mid;
        i = j;
    }
    return rank;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ra = midranks(a), rb = midranks(b);
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= static_cast<double>(ra.size());
    mb /= static_cast<double>(rb.size());
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

// ---- criteria --------------------------------------------------------------

void criterion_1_chi2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;

    std::vector<std::size_t> bins;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        bins.push_back(0);
        labels.push_back(1);
        bins.push_back(1);
        labels.push_back(0);
    }
    ok &= chi_square(bins, labels) == 20.0;

    auto g = substream(9001, "c1");
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::size_t n = 4 + uniform_below(g, 197);
        std::size_t d = 1 + uniform_below(g, 5);
        std::vector<int> y(n);
        for (auto& v : y) v = bernoulli(g, 0.5) ? 1 : 0;
        y[0] = 1;
        y[1] = 0;
        for (std::size_t f = 0; f < d; ++f) {
            std::vector<double> col(n);
            for (auto& v : col) v = normal(g, 0, 1) + (bernoulli(g, 0.3) ? 1.0 : 0.0);
            auto disc = discretize(col, 2 + uniform_below(g, 9));
            double got = chi_square(disc.bins, y);
            double want = chi2_oracle(disc.bins, y);
            if (std::fabs(got - want) > 1e-9) ok = false;
        }
    }
    double dt = elapsed_s(t0);
    ok &= dt < 5.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "chi-square oracle equivalence, 50 datasets + exact 2x2=20 (%.2fs)", dt);
    report(1, ok, buf);
}

void criterion_2_auc() {
    bool ok = roc_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == 1.0;
    ok &= roc_auc({0.3, 0.3, 0.3, 0.3}, {1, 0, 1, 0}) == 0.5;

    auto g = substream(9002, "c2");
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::size_t n = 2 + uniform_below(g, 199);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(uniform_below(g, 12)) / 11.0;
            labels[i] = bernoulli(g, 0.5) ? 1 : 0;
        }
        labels[0] = 1;
        labels[n - 1] = 0;
        if (std::fabs(roc_auc(scores, labels) - auc_oracle(scores, labels)) > 1e-12) ok = false;
    }
    report(2, ok, "ROC AUC matches all-pairs concordance, separable=1.0, ties=0.5");
}

void criterion_3_gradient() {
    auto g = substream(9003, "c3");
    bool ok = true;
    for (int point = 0; point < 20; ++point) {
        std::size_t n = 5 + uniform_below(g, 40), d = 1 + uniform_below(g, 8);
        std::vector<std::vector<double>> rows(n, std::vector<double>(d));
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& v : rows[i]) v = normal(g, 0, 2);
            labels[i] = bernoulli(g, 0.5) ? 1 : 0;
        }
        std::vector<double> theta(d + 1);
        for (auto& t : theta) t = normal(g, 0, 1.5);
        auto grad = lr_gradient(rows, labels, theta, 1e-4);
        for (std::size_t f = 0; f < theta.size(); ++f) {
            double eps = 1e-6 * std::max(1.0, std::fabs(theta[f]));
            auto plus = theta, minus = theta;
            plus[f] += eps;
            minus[f] -= eps;
            double fd =
                (lr_loss(rows, labels, plus, 1e-4) - lr_loss(rows, labels, minus, 1e-4)) /
                (2 * eps);
            double denom = std::max({1e-8, std::fabs(fd), std::fabs(grad[f])});
            if (std::fabs(fd - grad[f]) / denom > 1e-5) ok = false;
        }
    }
    report(3, ok, "LR gradient vs central finite differences at 20 random points");
}

void criterion_4_classification() {
    auto t0 = std::chrono::steady_clock::now();
    LexiconSet lex = shipped();

    double svm_acc = 0, lr_acc = 0, svm_p = 0, lr_p = 0, svm_r = 0, lr_r = 0;
    double svm_auc = 0, lr_auc = 0;
    bool shape_ok = true;
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        SyntheticConfig cfg;
        cfg.seed = 101 + static_cast<std::uint64_t>(s);
        auto users = generate_synthetic(cfg, lex);
        Dataset data = build_dataset(users, DaySegment::Weekday, lex);
        shape_ok &= data.n_rows() == 556 && data.n_features() == data.schema.size();
        ClassifierSpec svm;
        svm.kind = ClassifierKind::SVM;
        svm.seed = 11;
        ClassifierSpec lr;
        lr.kind = ClassifierKind::LR;
        lr.seed = 11;
        EvalReport rs = cross_validate(svm, data, 10, cfg.seed);
        EvalReport rl = cross_validate(lr, data, 10, cfg.seed);
        svm_acc += rs.accuracy_pct;
        lr_acc += rl.accuracy_pct;
        svm_p += rs.precision;
        lr_p += rl.precision;
        svm_r += rs.recall;
        lr_r += rl.recall;
        svm_auc += rs.roc_auc;
        lr_auc += rl.roc_auc;
    }
    svm_acc /= seeds;
    lr_acc /= seeds;
    svm_p /= seeds;
    lr_p /= seeds;
    svm_r /= seeds;
    lr_r /= seeds;
    svm_auc /= seeds;
    lr_auc /= seeds;

    bool ok = shape_ok;
    ok &= svm_acc >= 93.0 && svm_acc <= 100.0 && lr_acc >= 93.0 && lr_acc <= 100.0;
    ok &= std::fabs(svm_p - svm_acc / 100.0) <= 0.01 && std::fabs(svm_r - svm_acc / 100.0) <= 0.01;
    ok &= std::fabs(lr_p - lr_acc / 100.0) <= 0.01 && std::fabs(lr_r - lr_acc / 100.0) <= 0.01;
    ok &= svm_auc >= 0.97 && lr_auc >= 0.97;

    // null corpus: drunk_token_rate 0 plants no signal anywhere
    double null_acc = 0, null_auc = 0;
    for (int s = 0; s < seeds; ++s) {
        SyntheticConfig cfg;
        cfg.seed = 501 + static_cast<std::uint64_t>(s);
        cfg.drunk_token_rate = 0.0;
        auto users = generate_synthetic(cfg, lex);
        Dataset data = build_dataset(users, DaySegment::Weekday, lex);
        ClassifierSpec svm;
        svm.kind = ClassifierKind::SVM;
        svm.seed = 11;
        EvalReport r = cross_validate(svm, data, 10, cfg.seed);
        null_acc += r.accuracy_pct;
        null_auc += r.roc_auc;
    }
    null_acc /= seeds;
    null_auc /= seeds;
    ok &= null_acc >= 45.0 && null_acc <= 55.0;
    ok &= null_auc >= 0.45 && null_auc <= 0.55;

    double dt = elapsed_s(t0);
    ok &= dt < 120.0;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "10-seed means: svm %.2f%%, lr %.2f%%, auc %.3f/%.3f; null %.2f%%/%.3f (%.1fs)",
                  svm_acc, lr_acc, svm_auc, lr_auc, null_acc, null_auc, dt);
    report(4, ok, buf);
}

void criterion_5_folds() {
    std::vector<int> labels;
    for (int i = 0; i < 278; ++i) labels.push_back(1);
    for (int i = 0; i < 278; ++i) labels.push_back(0);

    bool ok = true;
    FoldAssignment a = stratified_folds(labels, 10, 4242);
    FoldAssignment b = stratified_folds(labels, 10, 4242);
    ok &= a.fold_of == b.fold_of;

    std::vector<std::size_t> size(10, 0), pos(10, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ++size[a.fold_of[i]];
        if (labels[i] == 1) ++pos[a.fold_of[i]];
    }
    for (std::size_t f = 0; f < 10; ++f) {
        ok &= size[f] == 55 || size[f] == 56;
        std::size_t neg = size[f] - pos[f];
        ok &= pos[f] >= 27 && pos[f] <= 28 && neg >= 27 && neg <= 28;
        ok &= (pos[f] > neg ? pos[f] - neg : neg - pos[f]) <= 1;
    }
    report(5, ok, "stratified folds for 556 balanced rows: sizes 55/56, class skew <= 1");
}

void criterion_6_ranking() {
    LexiconSet lex = shipped();
    SyntheticConfig cfg;
    cfg.seed = 7;
    auto users = generate_synthetic(cfg, lex);
    Dataset data = build_dataset(users, DaySegment::Weekday, lex);

    bool ok = true;
    std::vector<double> chi2_by_feature, ig_by_feature;
    for (auto crit : {RankCriterion::Chi2, RankCriterion::InfoGain}) {
        FeatureRanking r = rank_features(data, 10, crit);
        std::set<std::string> top5;
        for (std::size_t i = 0; i < 5 && i < r.rows.size(); ++i) top5.insert(r.rows[i].feature);
        ok &= top5.count("drunk_frac") && top5.count("ingestion_frac") && top5.count("swear_frac");
        if (crit == RankCriterion::Chi2) {
            std::map<std::string, std::pair<double, double>> by_name;
            for (const auto& row : r.rows) by_name[row.feature] = {row.chi2, row.info_gain};
            for (const auto& [name, v] : by_name) {
                chi2_by_feature.push_back(v.first);
                ig_by_feature.push_back(v.second);
            }
        }
    }
    double rho = spearman(chi2_by_feature, ig_by_feature);
    ok &= rho >= 0.9;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "drunk/ingestion/swear in top-5 of both rankings, spearman %.3f", rho);
    report(6, ok, buf);
}

void criterion_7_directions() {
    LexiconSet lex = shipped();
    SyntheticConfig cfg;
    cfg.seed = 7;
    auto users = generate_synthetic(cfg, lex);
    CategoryReport rep = category_report(users, lex);

    bool ok = true;
    for (const char* cat : {"anger", "sexual", "ingestion", "social"}) {
        const auto& row = rep.rows.at(cat);
        ok &= row.alpha > row.beta && row.gamma > row.delta;
    }
    const auto& rel = rep.rows.at("religious");
    ok &= rel.alpha < rel.beta;
    report(7, ok, "category report directions: boosted categories up, religious reversed");
}

void criterion_8_peaks() {
    auto g = substream(9008, "c8");
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        std::size_t n = 3 + uniform_below(g, 998);
        std::vector<double> s(n);
        const bool plateau_heavy = trial % 2 == 0;
        for (auto& v : s)
            v = plateau_heavy ? static_cast<double>(uniform_below(g, 4)) / 3.0 : uniform_real(g);
        ScoreSeries series;
        series.user_id = "x";
        series.scores = s;
        auto peaks = detect_peaks(series, 1, 0.0);
        std::vector<std::size_t> got;
        for (const auto& p : peaks) got.push_back(p.index);
        if (got != maxima_oracle(s)) ok = false;
    }

    ScoreSeries impulse;
    impulse.user_id = "i";
    impulse.scores = {0, 0, 1, 0, 0, 1, 0};
    auto pk = detect_peaks(impulse, 1, 0.5);
    ok &= pk.size() == 2 && pk[0].index == 2 && pk[1].index == 5;

    LexiconSet lex = shipped();
    SyntheticConfig cfg;
    cfg.seed = 2024;
    auto users = generate_synthetic(cfg, lex);
    std::size_t with_intervals = 0, under_100 = 0;
    for (const auto& u : users) {
        if (u.label != Label::DrunkTexter) continue;
        ScoreSeries s = score_series(u, lex.at("drunk"));
        PeakProfile p = peak_profile(s, detect_peaks(s, 5, 1.0));
        if (!p.mean_interval) continue;
        ++with_intervals;
        if (*p.mean_interval < 100.0) ++under_100;
    }
    ok &= with_intervals > 0 &&
          static_cast<double>(under_100) >= 0.8 * static_cast<double>(with_intervals);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "peak oracle exact on 100 series; impulses at {2,5}; %zu/%zu intervals < 100",
                  under_100, with_intervals);
    report(8, ok, buf);
}

void criterion_9_louvain() {
    Graph g;
    g.nodes = {"a", "b", "c", "d", "e", "f"};
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(3, 4, 1);
    g.add_edge(4, 5, 1);
    g.add_edge(3, 5, 1);
    g.add_edge(2, 3, 1);

    Partition split;
    split.community_of = {0, 0, 0, 1, 1, 1};
    bool ok = std::fabs(modularity(g, split) - 0.35714) <= 1e-5;

    Partition found = louvain(g, 3);
    ok &= found.n_communities() == 2;
    ok &= found.community_of[0] == found.community_of[2] &&
          found.community_of[3] == found.community_of[5] &&
          found.community_of[0] != found.community_of[3];

    auto rng = substream(9009, "c9");
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 15 + uniform_below(rng, 25);
        Graph rg;
        for (std::size_t i = 0; i < n; ++i) rg.nodes.push_back("n" + std::to_string(i));
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (bernoulli(rng, 0.15)) rg.add_edge(u, v, 0.5 + uniform_real(rng));
        if (rg.edges.empty()) rg.add_edge(0, 1, 1.0);
        Partition p = louvain(rg, trial);
        for (std::size_t i = 1; i < p.pass_modularity.size(); ++i)
            if (p.pass_modularity[i] < p.pass_modularity[i - 1] - 1e-12) ok = false;
    }

    // planted three-block profile corpus at the paper-analog sizes
    const std::size_t sizes[3] = {276, 193, 312};
    std::vector<PeakProfile> profiles;
    auto bg = substream(9010, "c9blocks");
    for (int block = 0; block < 3; ++block) {
        for (std::size_t i = 0; i < sizes[block]; ++i) {
            PeakProfile p;
            p.user_id = "b" + std::to_string(block) + "_" + std::to_string(i);
            double a = 1.0 + uniform_real(bg), b = 0.5 + uniform_real(bg);
            if (block == 0) {
                p.n_peaks = static_cast<std::size_t>(1 + uniform_below(bg, 4));
                p.mean_height = a * 0.2;
            } else if (block == 1) {
                p.se_height = a * 0.1;
                p.max_height = b;
            } else {
                p.mean_interval = a * 30;
                p.se_interval = b * 3;
            }
            profiles.push_back(p);
        }
    }
    Graph blocks = interest_graph(profiles, 0.2);
    Partition part = louvain(blocks, 99);
    ok &= part.n_communities() == 3;
    std::vector<std::size_t> counts(part.n_communities(), 0);
    for (std::size_t c : part.community_of) ++counts[c];
    std::sort(counts.begin(), counts.end());
    ok &= counts == std::vector<std::size_t>{193, 276, 312};

    report(9, ok, "two-triangle Q=0.35714, Louvain recovers triangles, Q monotone, 3 planted blocks");
}

void criterion_10_bots() {
    LexiconCategory drunk;
    drunk.name = "drunk";
    drunk.add("drunk");

    auto make_user = [](const std::string& id, std::size_t matching, std::size_t total) {
        UserRecord u;
        u.user_id = id;
        for (std::size_t i = 0; i < total; ++i) {
            Tweet t;
            t.tweet_id = id + std::to_string(i);
            t.user_id = id;
            t.timestamp_utc = 1000 + static_cast<std::int64_t>(i);
            t.text = i < matching ? "drunk" : "sober";
            u.tweets.push_back(t);
        }
        return u;
    };

    auto flags = detect_bots({make_user("b", 100, 100), make_user("a", 99, 100)}, drunk);
    bool ok = flags[0].flagged && flags[0].drunk_tweet_fraction == 1.0;
    ok &= !flags[1].flagged && flags[1].drunk_tweet_fraction == 0.99;
    report(10, ok, "bot boundary: 100/100 flagged, 99/100 not (strict > 0.99)");
}

void criterion_11_determinism() {
    auto t0 = std::chrono::steady_clock::now();
    const std::string cli = DRUNKTEXT_CLI_PATH;
    const std::string lexicons = DRUNKTEXT_LEXICON_DIR;

    auto run_all = [&](const fs::path& out) {
        fs::remove_all(out);
        fs::create_directories(out);
        std::string cmd = cli + " --lexicons " + lexicons + " --out " + out.string() +
                          " --seed 7 all >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str())) == 0;
    };
    fs::path a = fs::temp_directory_path() / "drunktext_acc_a";
    fs::path b = fs::temp_directory_path() / "drunktext_acc_b";
    bool ok = run_all(a) && run_all(b);

    std::map<std::string, std::uint64_t> ha, hb;
    if (ok) {
        for (const auto& entry : fs::recursive_directory_iterator(a))
            if (entry.is_regular_file())
                ha[fs::relative(entry.path(), a).string()] = fnv1a64_file(entry.path().string());
        for (const auto& entry : fs::recursive_directory_iterator(b))
            if (entry.is_regular_file())
                hb[fs::relative(entry.path(), b).string()] = fnv1a64_file(entry.path().string());
        ok &= !ha.empty() && ha == hb;
    }
    fs::remove_all(a);
    fs::remove_all(b);

    double dt = elapsed_s(t0);
    ok &= dt < 300.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "`all --seed 7` twice: %zu files, hash-identical trees (%.1fs)", ha.size(), dt);
    report(11, ok, buf);
}

}  // namespace

int main() {
    criterion_1_chi2();
    criterion_2_auc();
    criterion_3_gradient();
    criterion_4_classification();
    criterion_5_folds();
    criterion_6_ranking();
    criterion_7_directions();
    criterion_8_peaks();
    criterion_9_louvain();
    criterion_10_bots();
    criterion_11_determinism();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
