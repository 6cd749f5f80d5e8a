#pragma once

#include "bambookg/store.hpp"
#include "bambookg/tagger.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bambookg {

struct RetrievalParams {
    std::size_t x = 5;  // first-degree neighbors per query tag
    std::size_t y = 3;  // second-degree neighbors per query tag
    double decay = 0.5; // (0, 1]
    std::optional<std::size_t> max_context_tokens;

    void validate() const; // throws InvalidConfig
};

struct TagExpansion {
    TagId tag;
    std::vector<Neighbor> first;
    std::vector<ScoredNeighbor> second;
};

struct RetrievedEdge {
    TagId a; // a < b
    TagId b;
    double score; // edge weight for 1-hop / query-pair edges, path score for 2-hop
};

struct QuerySubgraph {
    std::vector<TagId> query_tags;
    std::vector<TagExpansion> expansions;
    std::vector<RetrievedEdge> edges; // de-duplicated, sorted by (a, b)
};

struct ContextChunk {
    ChunkId id;
    std::string text;
    std::uint32_t token_count;
    double score;
    std::vector<std::pair<TagId, TagId>> provenance; // retrieved edges that selected it
};

struct RecallContext {
    std::vector<ContextChunk> chunks; // (descending score, ascending chunk id)
    std::size_t total_tokens = 0;
};

/// Expands each query tag to its top-x first-degree and top-y second-degree
/// neighbors and collects the spanned edges: every (query tag, first) edge,
/// every (first, second) edge within one tag's expansion, and any edge
/// joining two query tags. Throws NoKnownTags for an empty tag list.
QuerySubgraph build_query_subgraph(const Store& store, std::vector<TagId> query_tags,
                                   const RetrievalParams& params);

/// Union of chunks_for_edge over the subgraph's edges. A chunk's relevance
/// is the sum of the scores of the retrieved edges that selected it.
/// Optionally truncated to max_context_tokens.
RecallContext collect_context(const Store& store, const QuerySubgraph& subgraph,
                              const RetrievalParams& params);

struct RecallResult {
    RecallContext context;
    QuerySubgraph subgraph;
    std::vector<std::string> query_tags; // surfaces, in tagging order
    double tagging_ms = 0.0;
    double traversal_ms = 0.0;
    std::uint64_t traversal_external_calls = 0; // must be 0: traversal is LLM-free
};

/// End-to-end recall: query tagging restricted to the store's vocabulary,
/// then pure graph traversal. Tagging and traversal are timed separately,
/// and the tagger's network-call counter is sampled around the traversal
/// to prove it makes no external calls.
RecallResult recall(const Store& store, std::string_view query_text,
                    const RetrievalParams& params, const TaggerConfig& tagger_cfg,
                    Tagger& tagger);

} // namespace bambookg
