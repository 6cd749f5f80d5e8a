#include "bambookg/chunker.hpp"
#include "bambookg/errors.hpp"

#include <cctype>

namespace bambookg {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

struct Token {
    std::size_t begin;
    std::size_t end; // one past last byte
    bool sentence_end;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t begin = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        char tail = text[i - 1];
        bool sentence = (tail == '.' || tail == '!' || tail == '?');
        // a newline immediately after the token also ends a sentence
        for (std::size_t k = i; !sentence && k < text.size() && is_space(text[k]); ++k) {
            if (text[k] == '\n') sentence = true;
        }
        tokens.push_back(Token{begin, i, sentence});
    }
    return tokens;
}

} // namespace

void ChunkingConfig::validate() const {
    if (chunk_tokens < 200 || chunk_tokens > 1200)
        throw InvalidConfig("chunk_tokens must be in [200, 1200]");
}

std::uint32_t count_tokens(std::string_view text) {
    std::uint32_t n = 0;
    bool in_token = false;
    for (char c : text) {
        if (is_space(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++n;
        }
    }
    return n;
}

std::vector<RawChunk> chunk_text(std::string_view doc_text, const ChunkingConfig& cfg) {
    cfg.validate();
    std::vector<Token> tokens = tokenize(doc_text);
    if (tokens.empty()) throw EmptyDocument("document has no tokens");

    std::vector<RawChunk> chunks;
    std::size_t pos = 0;
    while (pos < tokens.size()) {
        std::size_t end = std::min(pos + cfg.chunk_tokens, tokens.size());
        if (end < tokens.size() && !tokens[end - 1].sentence_end) {
            std::size_t limit = std::min(end + cfg.snap_window, tokens.size());
            for (std::size_t k = end; k < limit; ++k) {
                if (tokens[k].sentence_end) {
                    end = k + 1;
                    break;
                }
            }
        }
        std::size_t begin_byte = tokens[pos].begin;
        std::size_t end_byte = tokens[end - 1].end;
        chunks.push_back(RawChunk{std::string(doc_text.substr(begin_byte, end_byte - begin_byte)),
                                  static_cast<std::uint32_t>(end - pos)});
        pos = end;
    }
    return chunks;
}

} // namespace bambookg
