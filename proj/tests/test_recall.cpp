#include "bambookg/errors.hpp"
#include "bambookg/recall.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace bambookg;

namespace {

// chain a--b (w=4), b--c (w=3), built from explicit chunks
Store chain_store() {
    Store s;
    TagId a = s.intern_tag("a");
    TagId b = s.intern_tag("b");
    TagId c = s.intern_tag("c");
    DocId d = s.add_document("doc");
    std::uint32_t ord = 0;
    for (int i = 0; i < 4; ++i) s.add_chunk(ChunkId{d, ord++}, "ab", 2, {a, b});
    for (int i = 0; i < 3; ++i) s.add_chunk(ChunkId{d, ord++}, "bc", 2, {b, c});
    return s;
}

RetrievalParams params(std::size_t x, std::size_t y, double decay = 0.5) {
    RetrievalParams p;
    p.x = x;
    p.y = y;
    p.decay = decay;
    return p;
}

bool has_edge(const QuerySubgraph& sg, TagId a, TagId b) {
    if (a > b) std::swap(a, b);
    for (const auto& e : sg.edges) {
        if (e.a == a && e.b == b) return true;
    }
    return false;
}

} // namespace

TEST_CASE("chain expansion: first, second, and retrieved edges") {
    Store s = chain_store();
    auto sg = build_query_subgraph(s, {0}, params(1, 1));
    REQUIRE(sg.expansions.size() == 1);
    REQUIRE(sg.expansions[0].first.size() == 1);
    CHECK(sg.expansions[0].first[0].id == 1);
    CHECK(sg.expansions[0].first[0].weight == 4);
    REQUIRE(sg.expansions[0].second.size() == 1);
    CHECK(sg.expansions[0].second[0].id == 2);
    CHECK(sg.expansions[0].second[0].score == doctest::Approx(6.0)); // 4*3*0.5
    CHECK(sg.expansions[0].second[0].via == 1);
    CHECK(sg.edges.size() == 2);
    CHECK(has_edge(sg, 0, 1));
    CHECK(has_edge(sg, 1, 2));
}

TEST_CASE("isolated query tag yields an empty expansion, not an error") {
    Store s;
    s.intern_tag("loner");
    DocId d = s.add_document("doc");
    s.add_chunk(ChunkId{d, 0}, "x", 1, {0});
    auto sg = build_query_subgraph(s, {0}, params(5, 5));
    CHECK(sg.expansions[0].first.empty());
    CHECK(sg.edges.empty());
    auto ctx = collect_context(s, sg, params(5, 5));
    CHECK(ctx.chunks.empty());
}

TEST_CASE("empty query tag list is NoKnownTags") {
    Store s = chain_store();
    CHECK_THROWS_AS(build_query_subgraph(s, {}, params(1, 1)), NoKnownTags);
}

TEST_CASE("context chunks come from retrieved-edge provenance") {
    // c1:{a,b}, c2:{a,c}; edge (a,b) retrieved -> only c1
    Store s;
    TagId a = s.intern_tag("a"), b = s.intern_tag("b"), c = s.intern_tag("c");
    DocId d = s.add_document("doc");
    s.add_chunk(ChunkId{d, 0}, "c1", 2, {a, b});
    s.add_chunk(ChunkId{d, 1}, "c2", 2, {a, c});
    QuerySubgraph sg;
    sg.query_tags = {a};
    sg.edges = {RetrievedEdge{a, b, 1.0}};
    auto ctx = collect_context(s, sg, params(5, 5));
    REQUIRE(ctx.chunks.size() == 1);
    CHECK(ctx.chunks[0].id.ordinal == 0);
}

TEST_CASE("overlapping edge selections merge and score higher") {
    // chunk0 contains a,b,c -> selected by both (a,b) and (a,c)
    Store s;
    TagId a = s.intern_tag("a"), b = s.intern_tag("b"), c = s.intern_tag("c");
    DocId d = s.add_document("doc");
    s.add_chunk(ChunkId{d, 0}, "abc", 3, {a, b, c});
    s.add_chunk(ChunkId{d, 1}, "ab", 2, {a, b});
    QuerySubgraph sg;
    sg.query_tags = {a};
    sg.edges = {RetrievedEdge{a, b, 2.0}, RetrievedEdge{a, c, 1.0}};
    auto ctx = collect_context(s, sg, params(5, 5));
    REQUIRE(ctx.chunks.size() == 2);
    CHECK(ctx.chunks[0].id.ordinal == 0); // 2.0 + 1.0 = 3.0 beats 2.0
    CHECK(ctx.chunks[0].score == doctest::Approx(3.0));
    CHECK(ctx.chunks[0].provenance.size() == 2);
    CHECK(ctx.chunks[1].score == doctest::Approx(2.0));
}

TEST_CASE("soundness: every returned chunk contains both endpoints of a retrieved edge") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 20; ++round) {
        auto corpus = oracle::random_corpus(rng, 40, 8, 15);
        Store store = oracle::build_store(corpus, 15);
        std::vector<TagId> query{static_cast<TagId>(rng() % 15),
                                 static_cast<TagId>(rng() % 15)};
        std::sort(query.begin(), query.end());
        query.erase(std::unique(query.begin(), query.end()), query.end());
        auto sg = build_query_subgraph(store, query, params(3, 2));
        auto ctx = collect_context(store, sg, params(3, 2));
        for (const auto& chunk : ctx.chunks) {
            const Chunk& stored = store.chunk(chunk.id);
            bool witnessed = false;
            for (const auto& e : sg.edges) {
                bool has_a = std::count(stored.tags.begin(), stored.tags.end(), e.a) > 0;
                bool has_b = std::count(stored.tags.begin(), stored.tags.end(), e.b) > 0;
                if (has_a && has_b) {
                    witnessed = true;
                    break;
                }
            }
            CHECK(witnessed);
        }
    }
}

TEST_CASE("completeness at full width equals the 2-hop BFS oracle") {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 20; ++round) {
        auto corpus = oracle::random_corpus(rng, 30, 6, 12);
        Store store = oracle::build_store(corpus, 12);
        std::vector<TagId> query{static_cast<TagId>(rng() % 12)};
        std::size_t wide = store.tag_count() + 1;
        auto sg = build_query_subgraph(store, query, params(wide, wide));

        std::set<TagId> got{query.begin(), query.end()};
        for (const auto& exp : sg.expansions) {
            for (const auto& n : exp.first) got.insert(n.id);
            for (const auto& n : exp.second) got.insert(n.id);
        }
        CHECK(got == oracle::two_hop_nodes(store.graph(), query));
    }
}

TEST_CASE("determinism: identical store + query + params give identical context") {
    Store s = chain_store();
    DeterministicTagger tagger;
    auto r1 = recall(s, "a and c", params(2, 2), TaggerConfig{}, tagger);
    auto r2 = recall(s, "a and c", params(2, 2), TaggerConfig{}, tagger);
    REQUIRE(r1.context.chunks.size() == r2.context.chunks.size());
    for (std::size_t i = 0; i < r1.context.chunks.size(); ++i) {
        CHECK(r1.context.chunks[i].id == r2.context.chunks[i].id);
        CHECK(r1.context.chunks[i].score == r2.context.chunks[i].score);
    }
    CHECK(r1.traversal_external_calls == 0);
}

TEST_CASE("partial pattern matching: unknown words do not block recall") {
    Store s = chain_store();
    DeterministicTagger tagger;
    auto r = recall(s, "what about a and axolotl?", params(2, 2), TaggerConfig{}, tagger);
    REQUIRE(r.query_tags.size() == 1);
    CHECK(r.query_tags[0] == "a");
    CHECK_FALSE(r.context.chunks.empty());
}

TEST_CASE("zero known tags is NoKnownTags") {
    Store s = chain_store();
    DeterministicTagger tagger;
    RetrievalParams p = params(2, 2);
    CHECK_THROWS_AS(recall(s, "axolotl quantum", p, TaggerConfig{}, tagger), NoKnownTags);
    Store empty;
    CHECK_THROWS_AS(recall(empty, "anything", p, TaggerConfig{}, tagger), NoKnownTags);
}

TEST_CASE("query-tag pair edges are retrieved even with x = y = 0") {
    Store s = chain_store();
    auto sg = build_query_subgraph(s, {0, 1}, params(0, 0));
    REQUIRE(sg.edges.size() == 1);
    CHECK(has_edge(sg, 0, 1));
    auto ctx = collect_context(s, sg, params(0, 0));
    CHECK(ctx.chunks.size() == 4); // the four {a,b} chunks
}

TEST_CASE("max_context_tokens truncates the ranked list as a prefix") {
    Store s = chain_store();
    RetrievalParams p = params(2, 2);
    auto sg = build_query_subgraph(s, {0}, p);
    auto full = collect_context(s, sg, p);
    REQUIRE(full.chunks.size() == 7);
    p.max_context_tokens = 6; // three 2-token chunks
    auto cut = collect_context(s, sg, p);
    CHECK(cut.chunks.size() == 3);
    CHECK(cut.total_tokens == 6);
    for (std::size_t i = 0; i < cut.chunks.size(); ++i) {
        CHECK(cut.chunks[i].id == full.chunks[i].id);
    }
}
