#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "drunktext/corpus.hpp"
#include "drunktext/lexicon.hpp"

namespace drunktext {

// Ordered feature names: one "<category>_frac" per lexicon category (sorted
// by category name), then sentiment_net, then token_count. Fixed at build
// time; every vector in a dataset shares one schema.
struct FeatureSchema {
    std::vector<std::string> names;

    static FeatureSchema from_lexicons(const LexiconSet& lexicons);

    std::size_t size() const { return names.size(); }
    std::size_t index_of(const std::string& name) const;
};

struct FeatureVector {
    std::string user_id;
    DaySegment segment = DaySegment::Weekday;
    std::vector<double> values;  // aligned to schema
};

// Feature matrix with binary labels: 1 = DrunkTexter (positive),
// 0 = NonDrunk (negative). Row order follows input user order.
struct Dataset {
    FeatureSchema schema;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::vector<std::string> ids;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_features() const { return schema.size(); }
};

// Four cohort/segment means per category, LIWC-style percent scale (x100):
// alpha = drunk weekday, beta = nondrunk weekday, gamma = drunk weekend,
// delta = nondrunk weekend.
struct CategoryReport {
    struct Row {
        double alpha = 0, beta = 0, gamma = 0, delta = 0;
    };
    std::map<std::string, Row> rows;
};

/// Pools every token the user posted in the segment and computes per-category
/// token fractions, sentiment_net = (pos - neg) / tokens, and the raw token
/// count. Throws EmptySegment when the user has no tokens in the segment.
FeatureVector featurize_user(const UserRecord& user, DaySegment segment,
                             const LexiconSet& lexicons, const FeatureSchema& schema);

/// Same, reusing a prebuilt matcher (one corpus scan instead of one per
/// category).
FeatureVector featurize_user(const UserRecord& user, DaySegment segment,
                             const CategoryMatcher& matcher, const FeatureSchema& schema);

/// Rows for labeled users only (DrunkTexter / NonDrunk), skipping users empty
/// in the segment. Throws EmptyDataset / SingleClass when nothing usable
/// survives.
Dataset build_dataset(const std::vector<UserRecord>& users, DaySegment segment,
                      const LexiconSet& lexicons);

/// Per-category cohort/segment means over per-user fractions (users empty in
/// a segment are skipped for that segment), scaled x100.
CategoryReport category_report(const std::vector<UserRecord>& users, const LexiconSet& lexicons);

}  // namespace drunktext
