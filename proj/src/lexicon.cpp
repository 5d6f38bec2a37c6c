#include "drunktext/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "drunktext/errors.hpp"

namespace drunktext {

namespace {

bool is_word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool starts_with_ci(const std::string& s, const char* prefix) {
    std::size_t n = std::char_traits<char>::length(prefix);
    if (s.size() < n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    return true;
}

void emit_word_tokens(const std::string& word, std::vector<std::string>& out) {
    // Apostrophes bind only between word characters ("i'm"); splits happen
    // on everything else.
    std::string cur;
    auto flush = [&] {
        while (!cur.empty() && cur.front() == '\'') cur.erase(cur.begin());
        while (!cur.empty() && cur.back() == '\'') cur.pop_back();
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : word) {
        unsigned char lc = (c >= 'A' && c <= 'Z') ? c + 32 : c;
        if (is_word_char(lc) || lc == '\'')
            cur.push_back(static_cast<char>(lc));
        else
            flush();
    }
    flush();
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string word;
    std::istringstream stream(text);
    while (stream >> word) {
        if (starts_with_ci(word, "http://") || starts_with_ci(word, "https://") ||
            starts_with_ci(word, "www."))
            continue;
        if (word.front() == '@') continue;
        std::size_t start = 0;
        while (start < word.size() && word[start] == '#') ++start;
        emit_word_tokens(word.substr(start), tokens);
    }
    return tokens;
}

namespace {

bool entry_matches(const std::string& token, const LexiconEntry& e) {
    if (!e.pattern.empty() && e.pattern.back() == '*')
        return token.compare(0, e.pattern.size() - 1, e.pattern, 0, e.pattern.size() - 1) == 0;
    return token == e.pattern;
}

// Entries are kept sorted, so a linear scan yields the lexicographically
// first match.
const LexiconEntry* first_match(const std::string& token, const LexiconCategory& category) {
    for (const auto& e : category.entries)
        if (entry_matches(token, e)) return &e;
    return nullptr;
}

}  // namespace

MatchResult match_count(const std::vector<std::string>& tokens, const LexiconCategory& category) {
    MatchResult r;
    for (const auto& t : tokens) {
        if (const LexiconEntry* e = first_match(t, category)) {
            ++r.count;
            r.weight_sum += e->weight;
        }
    }
    return r;
}

bool matches(const std::string& token, const LexiconCategory& category) {
    return first_match(token, category) != nullptr;
}

void LexiconCategory::add(std::string pattern, double weight) {
    LexiconEntry e{std::move(pattern), weight};
    if (e.pattern.empty()) throw PipelineError("empty lexicon pattern in " + name);
    auto star = e.pattern.find('*');
    if (star != std::string::npos && star != e.pattern.size() - 1)
        throw PipelineError("'*' must be final in pattern: " + e.pattern);
    if (e.weight < 0) throw PipelineError("negative weight for pattern: " + e.pattern);
    auto it = std::lower_bound(entries.begin(), entries.end(), e);
    if (it != entries.end() && it->pattern == e.pattern)
        throw PipelineError("duplicate pattern '" + e.pattern + "' in category " + name);
    entries.insert(it, std::move(e));
}

const LexiconCategory& LexiconSet::at(const std::string& name) const {
    auto it = categories.find(name);
    if (it == categories.end()) throw PipelineError("unknown lexicon category: " + name);
    return it->second;
}

CategoryMatcher::CategoryMatcher(const LexiconSet& lexicons) {
    for (const auto& [name, cat] : lexicons.categories) {
        auto idx = static_cast<std::uint32_t>(names_.size());
        names_.push_back(name);
        for (const auto& e : cat.entries) {
            if (!e.pattern.empty() && e.pattern.back() == '*') {
                std::string prefix = e.pattern.substr(0, e.pattern.size() - 1);
                max_stem_len_ = std::max(max_stem_len_, prefix.size());
                stem_[prefix].push_back({idx, &e});
            } else {
                literal_[e.pattern].push_back({idx, &e});
            }
        }
    }
}

std::vector<MatchResult> CategoryMatcher::match_all(const std::vector<std::string>& tokens) const {
    std::vector<MatchResult> out(names_.size());
    // best pattern per category for the current token, epoch-stamped
    std::vector<const LexiconEntry*> best(names_.size(), nullptr);
    std::vector<std::uint32_t> stamp(names_.size(), 0);
    std::uint32_t epoch = 0;

    auto consider = [&](const std::vector<Hit>& hits) {
        for (const auto& h : hits) {
            if (stamp[h.category] != epoch) {
                stamp[h.category] = epoch;
                best[h.category] = h.entry;
            } else if (h.entry->pattern < best[h.category]->pattern) {
                best[h.category] = h.entry;
            }
        }
    };

    for (const auto& t : tokens) {
        ++epoch;
        if (auto it = literal_.find(t); it != literal_.end()) consider(it->second);
        std::size_t max_len = std::min(max_stem_len_, t.size());
        for (std::size_t len = 0; len <= max_len; ++len) {
            if (auto it = stem_.find(t.substr(0, len)); it != stem_.end()) consider(it->second);
        }
        for (std::size_t c = 0; c < names_.size(); ++c) {
            if (stamp[c] == epoch) {
                ++out[c].count;
                out[c].weight_sum += best[c]->weight;
            }
        }
    }
    return out;
}

LexiconCategory expand_drunk_lexicon(const std::vector<UserRecord>& users,
                                     const LexiconCategory& seed, double min_pmi,
                                     std::size_t min_cooccur) {
    if (users.empty()) throw EmptyCorpus();
    if (seed.empty()) throw EmptyLexicon(seed.name);

    std::size_t n_tweets = 0;
    std::size_t n_hit = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // token -> (n_t, n_t_hit)

    for (const auto& user : users) {
        for (const auto& tweet : user.tweets) {
            ++n_tweets;
            auto tokens = tokenize(tweet.text);
            std::sort(tokens.begin(), tokens.end());
            tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
            bool hit = false;
            for (const auto& t : tokens)
                if (matches(t, seed)) {
                    hit = true;
                    break;
                }
            if (hit) ++n_hit;
            for (const auto& t : tokens) {
                auto& c = counts[t];
                ++c.first;
                if (hit) ++c.second;
            }
        }
    }

    LexiconCategory out = seed;
    if (n_hit == 0 || n_tweets == 0) return out;

    const double n = static_cast<double>(n_tweets);
    const double p_hit = static_cast<double>(n_hit) / n;
    for (const auto& [token, c] : counts) {
        if (c.second < min_cooccur) continue;
        if (matches(token, seed)) continue;
        double p_t = static_cast<double>(c.first) / n;
        double p_joint = static_cast<double>(c.second) / n;
        double pmi = std::log2(p_joint / (p_t * p_hit));
        if (pmi >= min_pmi) out.add(token, std::clamp(pmi / 4.0, 0.0, 1.0));
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void close_category(LexiconSet& set, LexiconCategory& cur, long expected, const std::string& path) {
    if (cur.name.empty()) return;
    if (expected >= 0 && static_cast<long>(cur.entries.size()) != expected)
        throw PipelineError(path + ": category " + cur.name + " declares count " +
                            std::to_string(expected) + " but has " +
                            std::to_string(cur.entries.size()) + " entries");
    if (set.categories.count(cur.name))
        throw PipelineError(path + ": duplicate category " + cur.name);
    set.categories.emplace(cur.name, std::move(cur));
    cur = LexiconCategory{};
}

}  // namespace

LexiconSet parse_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    LexiconSet set;
    LexiconCategory cur;
    long expected = -1;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = trim(line.substr(1));
            if (body.rfind("category:", 0) == 0) {
                close_category(set, cur, expected, path);
                expected = -1;
                cur.name = trim(body.substr(9));
                if (cur.name.empty()) throw PipelineError(path + ": empty category name");
            } else if (body.rfind("count:", 0) == 0) {
                expected = std::stol(trim(body.substr(6)));
            }
            continue;  // other '#' lines are comments
        }
        if (cur.name.empty())
            throw PipelineError(path + ": entry before any '# category:' header");
        std::string pattern = line;
        double weight = 1.0;
        if (auto tab = line.find('\t'); tab != std::string::npos) {
            pattern = trim(line.substr(0, tab));
            weight = std::stod(trim(line.substr(tab + 1)));
        }
        for (char& c : pattern)
            if (c >= 'A' && c <= 'Z') c += 32;
        cur.add(std::move(pattern), weight);
    }
    close_category(set, cur, expected, path);
    return set;
}

LexiconSet load_lexicon_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".lex")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .lex files in " + dir);

    LexiconSet merged;
    for (const auto& f : files) {
        LexiconSet one = parse_lexicon_file(f.string());
        for (auto& [name, cat] : one.categories) {
            if (merged.categories.count(name))
                throw PipelineError("category " + name + " defined in more than one file");
            merged.categories.emplace(name, std::move(cat));
        }
    }
    return merged;
}

}  // namespace drunktext
