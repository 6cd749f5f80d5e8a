#include "bambookg/errors.hpp"
#include "bambookg/tag.hpp"
#include "bambookg/tagger.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace bambookg {

namespace {

std::string render_template(std::string templ, std::string_view key, std::string_view value) {
    std::string marker = "{" + std::string(key) + "}";
    std::size_t pos;
    while ((pos = templ.find(marker)) != std::string::npos) {
        templ.replace(pos, marker.size(), value);
    }
    return templ;
}

} // namespace

void LlmEndpoint::validate() const {
    if (base_url.empty()) throw InvalidConfig("llm base_url is empty");
    if (timeout_s <= 0) throw InvalidConfig("llm timeout must be > 0");
}

LlmTagger::LlmTagger(LlmEndpoint endpoint, std::string prompt_template)
    : endpoint_(std::move(endpoint)), prompt_template_(std::move(prompt_template)) {
    endpoint_.validate();
}

std::string LlmTagger::default_prompt_template() {
    return "Extract the most salient concepts or entities from the text below as short "
           "tags.\nReturn ONLY a JSON array of at most {max_tags} lowercase strings, "
           "nothing else.\n{vocabulary_clause}\nText:\n{text}\n";
}

std::vector<std::string> LlmTagger::tag_chunk(std::string_view text, const TaggerConfig& cfg) {
    cfg.validate();

    std::string vocab_clause;
    if (cfg.vocabulary_constraint) {
        std::ostringstream os;
        os << "Only use tags from this vocabulary: [";
        bool first = true;
        for (const auto& v : *cfg.vocabulary_constraint) {
            if (!first) os << ", ";
            os << '"' << v << '"';
            first = false;
        }
        os << "]";
        vocab_clause = os.str();
    }

    std::string prompt = prompt_template_;
    prompt = render_template(std::move(prompt), "max_tags", std::to_string(cfg.max_tags));
    prompt = render_template(std::move(prompt), "vocabulary_clause", vocab_clause);
    prompt = render_template(std::move(prompt), "text", text);

    nlohmann::json request = {
        {"model", endpoint_.model_name},
        {"temperature", 0},
        {"messages",
         {{{"role", "user"}, {"content", prompt}}}},
    };

    httplib::Client client(endpoint_.base_url);
    client.set_connection_timeout(endpoint_.timeout_s);
    client.set_read_timeout(endpoint_.timeout_s);
    httplib::Headers headers;
    if (!endpoint_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
    }

    calls_.fetch_add(1);
    auto res = client.Post("/v1/chat/completions", headers, request.dump(),
                           "application/json");
    if (!res) {
        throw TaggerUnavailable("tagger service unreachable: " +
                                httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw TaggerUnavailable("tagger service returned HTTP " +
                                std::to_string(res->status) + ": " + res->body);
    }

    std::vector<std::string> raw;
    try {
        auto body = nlohmann::json::parse(res->body);
        auto content = body.at("choices").at(0).at("message").at("content")
                           .get<std::string>();
        auto tags = nlohmann::json::parse(content);
        if (!tags.is_array()) {
            throw TaggerUnavailable("tagger did not return a JSON array; body: " + res->body);
        }
        for (const auto& t : tags) raw.push_back(t.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw TaggerUnavailable(std::string("malformed tagger response: ") + e.what() +
                                "; body: " + res->body);
    }

    // Constraint is enforced here, never trusted to the prompt.
    std::vector<std::string> out;
    for (const std::string& t : raw) {
        std::string norm = normalize_tag(t);
        if (norm.empty()) continue;
        if (cfg.vocabulary_constraint && !cfg.vocabulary_constraint->count(norm)) continue;
        if (std::find(out.begin(), out.end(), norm) != out.end()) continue;
        out.push_back(norm);
        if (out.size() >= cfg.max_tags) break;
    }
    if (out.empty() && cfg.vocabulary_constraint)
        throw NoTagsFound("no in-vocabulary tags returned");
    return out;
}

} // namespace bambookg
