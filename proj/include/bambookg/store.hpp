#pragma once

#include "bambookg/graph.hpp"
#include "bambookg/tag.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bambookg {

using DocId = std::uint32_t;

struct ChunkId {
    DocId doc;
    std::uint32_t ordinal;

    bool operator==(const ChunkId&) const = default;
};

struct Chunk {
    ChunkId id;
    std::string text;
    std::uint32_t token_count;
    std::vector<TagId> tags; // sorted, unique
};

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::uint64_t total_weight = 0;
    std::size_t chunks = 0;
    std::size_t docs = 0;
    std::size_t max_degree = 0;
};

/// The full knowledge store: the tag interner, the frequency-weighted tag
/// graph, and the tag->chunk index (postings + chunk texts). Single writer,
/// many readers; all recall-path queries are const.
class Store {
public:
    // --- tags ---
    TagId intern_tag(std::string_view raw) {
        TagId id = tags_.intern(raw);
        graph_.ensure_node(id); // every known tag is a node, even at degree 0
        return id;
    }
    std::optional<TagId> find_tag(std::string_view raw) const { return tags_.find(raw); }
    const std::string& tag_surface(TagId id) const { return tags_.surface(id); }
    std::size_t tag_count() const { return tags_.size(); }
    const std::vector<std::string>& tag_surfaces() const { return tags_.surfaces(); }

    // --- documents ---
    /// Registers a document name; throws DuplicateDocument on re-use.
    DocId add_document(std::string_view name);
    bool has_document(std::string_view name) const;
    const std::string& doc_name(DocId id) const;
    std::size_t doc_count() const { return doc_names_.size(); }
    const std::vector<std::string>& doc_names() const { return doc_names_; }

    // --- chunks / co-occurrence ---
    /// Stores a chunk, updates postings, and records one co-occurrence
    /// increment per unordered tag pair. `tags` is de-duplicated here.
    /// Throws DuplicateChunk if this (doc, ordinal) was already added.
    std::vector<EdgeDelta> add_chunk(ChunkId id, std::string text,
                                     std::uint32_t token_count,
                                     std::vector<TagId> tags);

    const Chunk& chunk(ChunkId id) const;
    std::size_t chunk_count() const { return chunks_.size(); }
    const std::vector<Chunk>& chunks() const { return chunks_; }

    /// Chunks in which both tags co-occurred: the postings intersection.
    /// Result is sorted by (doc name, ordinal). Throws InvalidPair for
    /// a == b; unknown tags yield an empty result.
    std::vector<ChunkId> chunks_for_edge(TagId a, TagId b) const;

    /// Postings for one tag, sorted by (doc name, ordinal).
    std::vector<ChunkId> postings(TagId t) const;

    const TagGraph& graph() const { return graph_; }
    GraphStats stats() const;

    /// (doc name, ordinal) order — the observable, ingest-order-invariant
    /// ordering of chunk ids.
    bool chunk_less(ChunkId a, ChunkId b) const;

    // --- persistence hooks (see snapshot.cpp) ---
    /// Restores a chunk without touching the tag graph; edges are loaded
    /// separately from the snapshot's edge table.
    void load_chunk(ChunkId id, std::string text, std::uint32_t token_count,
                    std::vector<TagId> tags);
    void load_edge(TagId a, TagId b, std::uint32_t w) { graph_.load_edge(a, b, w); }

private:
    std::size_t chunk_slot(ChunkId id) const; // index into chunks_, or npos
    void index_chunk(std::size_t slot);

    TagInterner tags_;
    std::vector<std::string> doc_names_;
    std::unordered_map<std::string, DocId> doc_ids_;
    TagGraph graph_;
    std::vector<Chunk> chunks_; // insertion order
    std::unordered_map<std::uint64_t, std::size_t> chunk_slots_; // key(doc,ordinal) -> index
    std::vector<std::vector<std::size_t>> postings_; // per tag, chunk slots sorted by chunk_less
};

} // namespace bambookg
