#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bambookg {

struct TaggerConfig {
    std::size_t max_tags = 8;
    // When present, every emitted tag must be a member (normalized form).
    std::optional<std::set<std::string>> vocabulary_constraint;

    void validate() const; // throws InvalidConfig
};

/// Produces at most max_tags normalized, de-duplicated tags for one chunk
/// of text, ordered by salience. Implementations must honor the
/// vocabulary constraint when set. Throws NoTagsFound when a constraint
/// is set and nothing matches.
class Tagger {
public:
    virtual ~Tagger() = default;
    virtual std::vector<std::string> tag_chunk(std::string_view text,
                                               const TaggerConfig& cfg) = 0;
    /// Number of network round-trips made so far; 0 forever for pure taggers.
    virtual std::uint64_t external_calls() const { return 0; }
};

/// Pure statistical tagger: stoplist-filtered term frequency, ranked by
/// (descending frequency, ascending lexicographic). With a vocabulary
/// constraint it switches to longest-contiguous-phrase matching so that
/// multi-word vocabulary tags win over their subsumed single words.
class DeterministicTagger : public Tagger {
public:
    DeterministicTagger();
    explicit DeterministicTagger(std::set<std::string> stoplist);

    std::vector<std::string> tag_chunk(std::string_view text,
                                       const TaggerConfig& cfg) override;

    static const std::set<std::string>& default_stoplist();
    static std::set<std::string> load_stoplist(const std::string& path);

private:
    std::set<std::string> stoplist_;
};

struct LlmEndpoint {
    std::string base_url;   // e.g. http://localhost:8080
    std::string model_name;
    int timeout_s = 30;
    std::string api_key;    // from BAMBOOKG_API_KEY

    void validate() const;
};

/// Client for an OpenAI-style /v1/chat/completions service. The prompt
/// demands a JSON array of strings; anything else is TaggerUnavailable.
/// Out-of-vocabulary tags returned by the service are dropped, never
/// trusted.
class LlmTagger : public Tagger {
public:
    LlmTagger(LlmEndpoint endpoint, std::string prompt_template);

    std::vector<std::string> tag_chunk(std::string_view text,
                                       const TaggerConfig& cfg) override;
    std::uint64_t external_calls() const override { return calls_.load(); }

    /// Ships with the repo under assets/tagger_prompt.txt.
    static std::string default_prompt_template();

private:
    LlmEndpoint endpoint_;
    std::string prompt_template_;
    std::atomic<std::uint64_t> calls_{0};
};

/// Tags a query against the store's global vocabulary: equivalent to
/// tag_chunk with vocabulary_constraint = vocabulary. Throws NoTagsFound
/// when no vocabulary tag matches.
std::vector<std::string> tag_query(Tagger& tagger, std::string_view query,
                                   const std::set<std::string>& vocabulary,
                                   TaggerConfig cfg);

} // namespace bambookg
