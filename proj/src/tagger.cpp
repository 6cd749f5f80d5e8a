#include "bambookg/tagger.hpp"
#include "bambookg/errors.hpp"
#include "bambookg/tag.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace bambookg {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c >= 0x80 || c == '\'' || c == '-';
}

// Lowercased words with surrounding punctuation stripped.
std::vector<std::string> words(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t begin = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        std::string_view tok = text.substr(begin, i - begin);
        std::size_t a = 0, b = tok.size();
        while (a < b && !is_word_char(static_cast<unsigned char>(tok[a]))) ++a;
        while (b > a && !is_word_char(static_cast<unsigned char>(tok[b - 1]))) --b;
        if (b > a) out.push_back(normalize_tag(tok.substr(a, b - a)));
    }
    return out;
}

std::vector<std::string> rank_counts(const std::map<std::string, std::size_t>& counts,
                                     std::size_t max_tags) {
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    for (const auto& [tag, n] : ranked) {
        if (out.size() >= max_tags) break;
        out.push_back(tag);
    }
    return out;
}

} // namespace

void TaggerConfig::validate() const {
    if (max_tags < 1) throw InvalidConfig("max_tags must be >= 1");
}

DeterministicTagger::DeterministicTagger() : stoplist_(default_stoplist()) {}

DeterministicTagger::DeterministicTagger(std::set<std::string> stoplist)
    : stoplist_(std::move(stoplist)) {}

std::vector<std::string> DeterministicTagger::tag_chunk(std::string_view text,
                                                        const TaggerConfig& cfg) {
    cfg.validate();
    std::vector<std::string> toks = words(text);

    if (cfg.vocabulary_constraint) {
        const auto& vocab = *cfg.vocabulary_constraint;
        // Pre-split multi-word vocabulary tags for phrase matching.
        std::size_t max_phrase = 1;
        std::unordered_map<std::string, const std::string*> phrases;
        for (const std::string& v : vocab) {
            phrases.emplace(v, &v);
            max_phrase = std::max(max_phrase,
                                  static_cast<std::size_t>(
                                      std::count(v.begin(), v.end(), ' ') + 1));
        }
        std::map<std::string, std::size_t> counts;
        std::size_t i = 0;
        while (i < toks.size()) {
            std::size_t matched = 0;
            std::string best;
            std::string candidate;
            // longest contiguous phrase wins; shorter matches are subsumed
            for (std::size_t len = std::min(max_phrase, toks.size() - i); len >= 1; --len) {
                candidate.clear();
                for (std::size_t k = 0; k < len; ++k) {
                    if (k) candidate.push_back(' ');
                    candidate += toks[i + k];
                }
                if (phrases.count(candidate)) {
                    matched = len;
                    best = candidate;
                    break;
                }
            }
            if (matched) {
                ++counts[best];
                i += matched;
            } else {
                ++i;
            }
        }
        if (counts.empty()) throw NoTagsFound("no vocabulary tag matches the text");
        return rank_counts(counts, cfg.max_tags);
    }

    std::map<std::string, std::size_t> counts;
    for (const std::string& w : toks) {
        if (w.empty() || stoplist_.count(w)) continue;
        ++counts[w];
    }
    return rank_counts(counts, cfg.max_tags);
}

std::set<std::string> DeterministicTagger::load_stoplist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stoplist: " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string norm = normalize_tag(line);
        if (!norm.empty()) out.insert(norm);
    }
    return out;
}

const std::set<std::string>& DeterministicTagger::default_stoplist() {
    static const std::set<std::string> kStoplist = {
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "an",
        "and", "any", "are", "as", "at", "be", "because", "been", "before", "being",
        "below", "between", "both", "but", "by", "can", "cannot", "could", "did", "do",
        "does", "doing", "down", "during", "each", "few", "for", "from", "further",
        "had", "has", "have", "having", "he", "her", "here", "hers", "herself", "him",
        "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself",
        "just", "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of",
        "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out",
        "over", "own", "s", "same", "she", "should", "so", "some", "such", "t", "than",
        "that", "the", "their", "theirs", "them", "themselves", "then", "there",
        "these", "they", "this", "those", "through", "to", "too", "under", "until",
        "up", "very", "was", "we", "were", "what", "when", "where", "which", "while",
        "who", "whom", "why", "will", "with", "would", "you", "your", "yours",
        "yourself", "yourselves",
    };
    return kStoplist;
}

std::vector<std::string> tag_query(Tagger& tagger, std::string_view query,
                                   const std::set<std::string>& vocabulary,
                                   TaggerConfig cfg) {
    cfg.vocabulary_constraint = vocabulary;
    if (vocabulary.empty()) throw NoTagsFound("vocabulary is empty");
    return tagger.tag_chunk(query, cfg);
}

} // namespace bambookg
