#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "drunktext/corpus.hpp"

namespace drunktext {

// A pattern is a lowercase literal, or a stem when it ends in '*'
// ("drink*" matches any token with prefix "drink").
struct LexiconEntry {
    std::string pattern;
    double weight = 1.0;

    friend bool operator<(const LexiconEntry& a, const LexiconEntry& b) {
        return a.pattern < b.pattern;
    }
};

struct LexiconCategory {
    std::string name;
    std::vector<LexiconEntry> entries;  // sorted by pattern, no duplicates

    void add(std::string pattern, double weight = 1.0);
    bool empty() const { return entries.empty(); }
};

struct LexiconSet {
    std::map<std::string, LexiconCategory> categories;

    const LexiconCategory& at(const std::string& name) const;
    bool has(const std::string& name) const { return categories.count(name) > 0; }
};

/// Lowercases, drops URLs and @mentions, strips the '#' sigil, then splits
/// on anything that is not a letter, digit, or intra-word apostrophe.
/// ASCII case folding; bytes >= 0x80 pass through as word characters.
std::vector<std::string> tokenize(const std::string& text);

struct MatchResult {
    std::size_t count = 0;
    double weight_sum = 0.0;
};

/// Counts tokens matching the category. Each token counts at most once, via
/// the lexicographically first matching pattern; weight_sum accumulates that
/// entry's weight per token occurrence.
MatchResult match_count(const std::vector<std::string>& tokens, const LexiconCategory& category);

/// True iff the token matches some entry of the category.
bool matches(const std::string& token, const LexiconCategory& category);

/// One-pass matcher over every category of a LexiconSet; used by featurize
/// so a timeline is scanned once instead of once per category. Results agree
/// with match_count category by category.
class CategoryMatcher {
public:
    explicit CategoryMatcher(const LexiconSet& lexicons);

    const std::vector<std::string>& category_names() const { return names_; }

    /// Per-category (count, weight_sum) over the token list, aligned to
    /// category_names().
    std::vector<MatchResult> match_all(const std::vector<std::string>& tokens) const;

private:
    struct Hit {
        std::uint32_t category;
        const LexiconEntry* entry;
    };
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::vector<Hit>> literal_;
    std::unordered_map<std::string, std::vector<Hit>> stem_;  // key without '*'
    std::size_t max_stem_len_ = 0;
};

/// Grows the drunk seed lexicon with tokens that co-occur with seed hits at
/// the tweet level: candidate t joins iff it appears in >= min_cooccur
/// seed-hit tweets and PMI(t, hit) = log2(p(t,hit) / (p(t) p(hit))) >=
/// min_pmi. New entries carry weight min(1, PMI/4); seed entries keep theirs.
LexiconCategory expand_drunk_lexicon(const std::vector<UserRecord>& users,
                                     const LexiconCategory& seed, double min_pmi,
                                     std::size_t min_cooccur);

/// Parses the `# category: <name>` / one-pattern-per-line lexicon format.
/// An optional `# count: <n>` line directly after a header asserts the
/// category's size (the shipped drunk seed declares 61).
LexiconSet parse_lexicon_file(const std::string& path);

/// Loads and merges every *.lex file in a directory (sorted by filename);
/// duplicate category names across files are an error.
LexiconSet load_lexicon_dir(const std::string& dir);

}  // namespace drunktext
