#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bambookg {

struct ChunkingConfig {
    std::uint32_t chunk_tokens = 300; // allowed band: 200..1200
    std::uint32_t snap_window = 30;   // max extra tokens to reach a sentence end

    void validate() const; // throws InvalidConfig
};

struct RawChunk {
    std::string text;
    std::uint32_t token_count;
};

/// Whitespace-delimited token count; runs of whitespace collapse.
std::uint32_t count_tokens(std::string_view text);

/// Splits a document into consecutive non-overlapping chunks of
/// cfg.chunk_tokens tokens. A boundary extends forward by up to
/// cfg.snap_window tokens to the first sentence end ('.', '!', '?' at a
/// token's tail, or a newline right after it). The final chunk takes
/// whatever remains. Throws EmptyDocument for whitespace-only input.
std::vector<RawChunk> chunk_text(std::string_view doc_text, const ChunkingConfig& cfg);

} // namespace bambookg
