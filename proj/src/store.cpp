#include "bambookg/store.hpp"
#include "bambookg/errors.hpp"

#include <algorithm>

namespace bambookg {

namespace {
std::uint64_t chunk_key(ChunkId id) {
    return (static_cast<std::uint64_t>(id.doc) << 32) | id.ordinal;
}
} // namespace

DocId Store::add_document(std::string_view name) {
    std::string key(name);
    if (doc_ids_.count(key)) throw DuplicateDocument("document already ingested: " + key);
    DocId id = static_cast<DocId>(doc_names_.size());
    doc_ids_.emplace(key, id);
    doc_names_.push_back(std::move(key));
    return id;
}

bool Store::has_document(std::string_view name) const {
    return doc_ids_.count(std::string(name)) != 0;
}

const std::string& Store::doc_name(DocId id) const {
    if (id >= doc_names_.size()) throw Error("doc id out of range");
    return doc_names_[id];
}

bool Store::chunk_less(ChunkId a, ChunkId b) const {
    if (a.doc != b.doc) return doc_name(a.doc) < doc_name(b.doc);
    return a.ordinal < b.ordinal;
}

std::size_t Store::chunk_slot(ChunkId id) const {
    auto it = chunk_slots_.find(chunk_key(id));
    return it == chunk_slots_.end() ? static_cast<std::size_t>(-1) : it->second;
}

void Store::index_chunk(std::size_t slot) {
    const Chunk& c = chunks_[slot];
    for (TagId t : c.tags) {
        if (t >= postings_.size()) postings_.resize(t + 1);
        auto& list = postings_[t];
        auto it = std::lower_bound(list.begin(), list.end(), slot, [&](std::size_t s, std::size_t v) {
            return chunk_less(chunks_[s].id, chunks_[v].id);
        });
        list.insert(it, slot);
    }
}

std::vector<EdgeDelta> Store::add_chunk(ChunkId id, std::string text,
                                        std::uint32_t token_count,
                                        std::vector<TagId> tags) {
    if (chunk_slot(id) != static_cast<std::size_t>(-1))
        throw DuplicateChunk("chunk already recorded");
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (TagId t : tags) graph_.ensure_node(t);

    std::size_t slot = chunks_.size();
    chunks_.push_back(Chunk{id, std::move(text), token_count, std::move(tags)});
    chunk_slots_.emplace(chunk_key(id), slot);
    index_chunk(slot);
    return graph_.record_cooccurrence(chunks_[slot].tags);
}

void Store::load_chunk(ChunkId id, std::string text, std::uint32_t token_count,
                       std::vector<TagId> tags) {
    if (chunk_slot(id) != static_cast<std::size_t>(-1))
        throw CorruptSnapshot("duplicate chunk in snapshot");
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (TagId t : tags) graph_.ensure_node(t);
    std::size_t slot = chunks_.size();
    chunks_.push_back(Chunk{id, std::move(text), token_count, std::move(tags)});
    chunk_slots_.emplace(chunk_key(id), slot);
    index_chunk(slot);
}

const Chunk& Store::chunk(ChunkId id) const {
    std::size_t slot = chunk_slot(id);
    if (slot == static_cast<std::size_t>(-1)) throw Error("unknown chunk");
    return chunks_[slot];
}

std::vector<ChunkId> Store::postings(TagId t) const {
    std::vector<ChunkId> out;
    if (t >= postings_.size()) return out;
    out.reserve(postings_[t].size());
    for (std::size_t slot : postings_[t]) out.push_back(chunks_[slot].id);
    return out;
}

std::vector<ChunkId> Store::chunks_for_edge(TagId a, TagId b) const {
    if (a == b) throw InvalidPair("self-pair has no edge");
    std::vector<ChunkId> out;
    if (a >= postings_.size() || b >= postings_.size()) return out;
    const auto& pa = postings_[a];
    const auto& pb = postings_[b];
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i] == pb[j]) {
            out.push_back(chunks_[pa[i]].id);
            ++i;
            ++j;
        } else if (chunk_less(chunks_[pa[i]].id, chunks_[pb[j]].id)) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

GraphStats Store::stats() const {
    GraphStats s;
    s.nodes = tags_.size();
    s.edges = graph_.edge_count();
    s.total_weight = graph_.total_weight();
    s.chunks = chunks_.size();
    s.docs = doc_names_.size();
    s.max_degree = graph_.max_degree();
    return s;
}

} // namespace bambookg
