#include "drunktext/features.hpp"

#include <algorithm>

#include "drunktext/errors.hpp"

namespace drunktext {

FeatureSchema FeatureSchema::from_lexicons(const LexiconSet& lexicons) {
    FeatureSchema schema;
    for (const auto& [name, cat] : lexicons.categories) schema.names.push_back(name + "_frac");
    schema.names.push_back("sentiment_net");
    schema.names.push_back("token_count");
    return schema;
}

std::size_t FeatureSchema::index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw PipelineError("unknown feature: " + name);
    return static_cast<std::size_t>(it - names.begin());
}

namespace {

std::vector<std::string> segment_tokens(const UserRecord& user, DaySegment segment) {
    std::vector<std::string> tokens;
    for (const auto& t : user.tweets) {
        if (day_segment(t.timestamp_utc) != segment) continue;
        auto tw = tokenize(t.text);
        tokens.insert(tokens.end(), tw.begin(), tw.end());
    }
    return tokens;
}

}  // namespace

FeatureVector featurize_user(const UserRecord& user, DaySegment segment,
                             const CategoryMatcher& matcher, const FeatureSchema& schema) {
    const auto& cats = matcher.category_names();
    if (schema.size() != cats.size() + 2)
        throw DimensionMismatch(schema.size(), cats.size() + 2);
    for (std::size_t c = 0; c < cats.size(); ++c)
        if (schema.names[c] != cats[c] + "_frac")
            throw PipelineError("schema does not match the lexicon set at " + schema.names[c]);

    auto tokens = segment_tokens(user, segment);
    if (tokens.empty()) throw EmptySegment(user.user_id, segment_name(segment));
    auto results = matcher.match_all(tokens);
    const double total = static_cast<double>(tokens.size());

    FeatureVector fv;
    fv.user_id = user.user_id;
    fv.segment = segment;
    fv.values.assign(schema.size(), 0.0);

    double pos = 0, neg = 0;
    for (std::size_t c = 0; c < cats.size(); ++c) {
        fv.values[c] = static_cast<double>(results[c].count) / total;
        if (cats[c] == "sentiment_pos") pos = static_cast<double>(results[c].count);
        if (cats[c] == "sentiment_neg") neg = static_cast<double>(results[c].count);
    }
    // schema = sorted categories + sentiment_net + token_count, same order as
    // the matcher's category list
    fv.values[cats.size()] = (pos - neg) / total;
    fv.values[cats.size() + 1] = total;
    return fv;
}

FeatureVector featurize_user(const UserRecord& user, DaySegment segment,
                             const LexiconSet& lexicons, const FeatureSchema& schema) {
    return featurize_user(user, segment, CategoryMatcher(lexicons), schema);
}

Dataset build_dataset(const std::vector<UserRecord>& users, DaySegment segment,
                      const LexiconSet& lexicons) {
    CategoryMatcher matcher(lexicons);
    Dataset data;
    data.schema = FeatureSchema::from_lexicons(lexicons);
    for (const auto& user : users) {
        if (user.label == Label::Unlabeled) continue;
        try {
            FeatureVector fv = featurize_user(user, segment, matcher, data.schema);
            data.rows.push_back(std::move(fv.values));
            data.labels.push_back(user.label == Label::DrunkTexter ? 1 : 0);
            data.ids.push_back(user.user_id);
        } catch (const EmptySegment&) {
            // D10: skip users with nothing in this segment
        }
    }
    if (data.rows.empty()) throw EmptyDataset();
    auto [mn, mx] = std::minmax_element(data.labels.begin(), data.labels.end());
    if (*mn == *mx) throw SingleClass("dataset for segment " + std::string(segment_name(segment)));
    return data;
}

CategoryReport category_report(const std::vector<UserRecord>& users, const LexiconSet& lexicons) {
    CategoryMatcher matcher(lexicons);
    FeatureSchema schema = FeatureSchema::from_lexicons(lexicons);
    const auto& cats = matcher.category_names();

    // [segment][cohort] running sums per category; cohort 0 = drunk, 1 = nondrunk
    std::vector<double> sums[2][2];
    std::size_t counts[2][2] = {{0, 0}, {0, 0}};
    for (auto& by_cohort : sums)
        for (auto& s : by_cohort) s.assign(cats.size(), 0.0);

    for (const auto& user : users) {
        if (user.label == Label::Unlabeled) continue;
        int cohort = user.label == Label::DrunkTexter ? 0 : 1;
        for (DaySegment seg : {DaySegment::Weekday, DaySegment::Weekend}) {
            int si = seg == DaySegment::Weekday ? 0 : 1;
            try {
                FeatureVector fv = featurize_user(user, seg, matcher, schema);
                for (std::size_t c = 0; c < cats.size(); ++c) sums[si][cohort][c] += fv.values[c];
                ++counts[si][cohort];
            } catch (const EmptySegment&) {
            }
        }
    }

    if (counts[0][0] + counts[1][0] == 0 || counts[0][1] + counts[1][1] == 0)
        throw SingleClass("category report");

    CategoryReport report;
    for (std::size_t c = 0; c < cats.size(); ++c) {
        CategoryReport::Row row;
        if (counts[0][0]) row.alpha = 100.0 * sums[0][0][c] / static_cast<double>(counts[0][0]);
        if (counts[0][1]) row.beta = 100.0 * sums[0][1][c] / static_cast<double>(counts[0][1]);
        if (counts[1][0]) row.gamma = 100.0 * sums[1][0][c] / static_cast<double>(counts[1][0]);
        if (counts[1][1]) row.delta = 100.0 * sums[1][1][c] / static_cast<double>(counts[1][1]);
        report.rows.emplace(cats[c], row);
    }
    return report;
}

}  // namespace drunktext
