#include "bambookg/recall.hpp"
#include "bambookg/errors.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace bambookg {

namespace {

std::pair<TagId, TagId> canonical(TagId a, TagId b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

} // namespace

void RetrievalParams::validate() const {
    if (decay <= 0.0 || decay > 1.0) throw InvalidConfig("decay must be in (0, 1]");
}

QuerySubgraph build_query_subgraph(const Store& store, std::vector<TagId> query_tags,
                                   const RetrievalParams& params) {
    params.validate();
    if (query_tags.empty()) throw NoKnownTags("no known tags in query");

    QuerySubgraph out;
    out.query_tags = std::move(query_tags);

    // pair -> best score; 1-hop and query-pair edges carry the raw weight,
    // 2-hop edges carry the decayed path score.
    std::map<std::pair<TagId, TagId>, double> edge_scores;
    auto upsert = [&](TagId a, TagId b, double score) {
        auto key = canonical(a, b);
        auto [it, inserted] = edge_scores.try_emplace(key, score);
        if (!inserted) it->second = std::max(it->second, score);
    };

    // Break top-k ties on the tag surface, not the id: ids depend on ingest
    // order while surfaces do not, so recall stays permutation-invariant.
    TagGraph::TieLess surface_less = [&store](TagId a, TagId b) {
        return store.tag_surface(a) < store.tag_surface(b);
    };

    for (TagId q : out.query_tags) {
        TagExpansion exp;
        exp.tag = q;
        exp.first = store.graph().top_first_degree(q, params.x, surface_less);
        std::vector<TagId> first_ids;
        first_ids.reserve(exp.first.size());
        for (const Neighbor& n : exp.first) {
            first_ids.push_back(n.id);
            upsert(q, n.id, static_cast<double>(n.weight));
        }
        exp.second = store.graph().top_second_degree(q, first_ids, params.y,
                                                     params.decay, surface_less);
        for (const ScoredNeighbor& s : exp.second) {
            // every (first, second) edge is spanned, scored via its own path
            for (TagId m : first_ids) {
                std::uint32_t wms = store.graph().weight(m, s.id);
                if (wms == 0) continue;
                double path = static_cast<double>(store.graph().weight(q, m)) * wms *
                              params.decay;
                upsert(m, s.id, path);
            }
        }
        out.expansions.push_back(std::move(exp));
    }

    // edges joining two query tags
    for (std::size_t i = 0; i < out.query_tags.size(); ++i) {
        for (std::size_t j = i + 1; j < out.query_tags.size(); ++j) {
            std::uint32_t w = store.graph().weight(out.query_tags[i], out.query_tags[j]);
            if (w > 0) upsert(out.query_tags[i], out.query_tags[j], static_cast<double>(w));
        }
    }

    out.edges.reserve(edge_scores.size());
    for (const auto& [pair, score] : edge_scores) {
        out.edges.push_back(RetrievedEdge{pair.first, pair.second, score});
    }
    return out;
}

RecallContext collect_context(const Store& store, const QuerySubgraph& subgraph,
                              const RetrievalParams& params) {
    struct Accum {
        double score = 0.0;
        std::vector<std::pair<TagId, TagId>> provenance;
    };
    std::map<std::uint64_t, std::pair<ChunkId, Accum>> by_chunk;
    auto key = [](ChunkId id) {
        return (static_cast<std::uint64_t>(id.doc) << 32) | id.ordinal;
    };

    for (const RetrievedEdge& e : subgraph.edges) {
        for (ChunkId c : store.chunks_for_edge(e.a, e.b)) {
            auto& entry = by_chunk[key(c)];
            entry.first = c;
            entry.second.score += e.score;
            entry.second.provenance.emplace_back(e.a, e.b);
        }
    }

    std::vector<ContextChunk> chunks;
    chunks.reserve(by_chunk.size());
    for (auto& [k, v] : by_chunk) {
        const Chunk& c = store.chunk(v.first);
        chunks.push_back(ContextChunk{c.id, c.text, c.token_count, v.second.score,
                                      std::move(v.second.provenance)});
    }
    std::sort(chunks.begin(), chunks.end(), [&](const ContextChunk& a, const ContextChunk& b) {
        if (a.score != b.score) return a.score > b.score;
        return store.chunk_less(a.id, b.id);
    });

    RecallContext out;
    for (ContextChunk& c : chunks) {
        if (params.max_context_tokens &&
            out.total_tokens + c.token_count > *params.max_context_tokens) {
            break; // prefix truncation under the score order
        }
        out.total_tokens += c.token_count;
        out.chunks.push_back(std::move(c));
    }
    return out;
}

RecallResult recall(const Store& store, std::string_view query_text,
                    const RetrievalParams& params, const TaggerConfig& tagger_cfg,
                    Tagger& tagger) {
    using clock = std::chrono::steady_clock;

    std::set<std::string> vocabulary(store.tag_surfaces().begin(),
                                     store.tag_surfaces().end());

    RecallResult result;
    auto t0 = clock::now();
    std::vector<std::string> surfaces;
    try {
        surfaces = tag_query(tagger, query_text, vocabulary, tagger_cfg);
    } catch (const NoTagsFound& e) {
        throw NoKnownTags(e.what());
    }
    auto t1 = clock::now();
    result.tagging_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.query_tags = surfaces;

    std::vector<TagId> ids;
    for (const std::string& s : surfaces) {
        auto id = store.find_tag(s);
        if (id) ids.push_back(*id);
    }

    std::uint64_t calls_before = tagger.external_calls();
    auto t2 = clock::now();
    result.subgraph = build_query_subgraph(store, std::move(ids), params);
    result.context = collect_context(store, result.subgraph, params);
    auto t3 = clock::now();
    result.traversal_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();
    result.traversal_external_calls = tagger.external_calls() - calls_before;
    return result;
}

} // namespace bambookg
