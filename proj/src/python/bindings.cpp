// Python bindings for the main operations: ingest, recall, stats,
// persistence. Thin dict-shaped wrappers over the C++ core.
#include "bambookg/errors.hpp"
#include "bambookg/pipeline.hpp"
#include "bambookg/recall.hpp"
#include "bambookg/snapshot.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace bambookg;

namespace {

struct PyStore {
    Store store;
    StoreConfig config;
    DeterministicTagger tagger;

    py::dict ingest(const std::string& text, const std::string& doc_id) {
        ChunkingConfig chunk_cfg{config.chunk_tokens, 30};
        TaggerConfig tag_cfg;
        tag_cfg.max_tags = config.max_tags;
        IngestReport r = ingest_document(store, text, doc_id, chunk_cfg, tag_cfg, tagger);
        py::dict out;
        out["doc_id"] = r.doc_id;
        out["chunks"] = r.chunks_created;
        out["new_tags"] = r.tags_created;
        out["edges_created"] = r.edges_created;
        out["edges_reinforced"] = r.edges_reinforced;
        return out;
    }

    py::dict query(const std::string& text, std::optional<std::size_t> x,
                   std::optional<std::size_t> y, std::optional<double> decay,
                   std::optional<std::size_t> max_context_tokens) {
        RetrievalParams params;
        params.x = x.value_or(config.x);
        params.y = y.value_or(config.y);
        params.decay = decay.value_or(config.decay);
        params.max_context_tokens = max_context_tokens;
        TaggerConfig tag_cfg;
        tag_cfg.max_tags = config.max_tags;
        RecallResult r = recall(store, text, params, tag_cfg, tagger);

        py::list chunks;
        for (const ContextChunk& c : r.context.chunks) {
            py::dict chunk;
            chunk["doc"] = store.doc_name(c.id.doc);
            chunk["ordinal"] = c.id.ordinal;
            chunk["score"] = c.score;
            chunk["token_count"] = c.token_count;
            chunk["text"] = c.text;
            py::list prov;
            for (const auto& [a, b] : c.provenance) {
                prov.append(py::make_tuple(store.tag_surface(a), store.tag_surface(b)));
            }
            chunk["provenance"] = prov;
            chunks.append(chunk);
        }
        py::dict out;
        out["query_tags"] = r.query_tags;
        out["chunks"] = chunks;
        out["total_tokens"] = r.context.total_tokens;
        out["tagging_ms"] = r.tagging_ms;
        out["traversal_ms"] = r.traversal_ms;
        return out;
    }

    py::dict stats() const {
        GraphStats s = store.stats();
        py::dict out;
        out["nodes"] = s.nodes;
        out["edges"] = s.edges;
        out["total_weight"] = s.total_weight;
        out["chunks"] = s.chunks;
        out["docs"] = s.docs;
        out["max_degree"] = s.max_degree;
        return out;
    }

    void save(const std::string& path) const { save_snapshot(store, config, path); }
};

std::unique_ptr<PyStore> load_store(const std::string& path) {
    Snapshot snap = load_snapshot(path);
    auto out = std::make_unique<PyStore>();
    out->store = std::move(snap.store);
    out->config = snap.config;
    return out;
}

} // namespace

PYBIND11_MODULE(_bambookg, m) {
    m.doc() = "Frequency-weighted tag co-occurrence graph with LLM-free recall";

    // translators run newest-first: register the base before the subclass
    // so NoKnownTags is not swallowed by the generic handler
    py::register_exception<Error>(m, "BambooError");
    py::register_exception<NoKnownTags>(m, "NoKnownTagsError");

    py::class_<PyStore>(m, "Store")
        .def(py::init<>())
        .def("ingest", &PyStore::ingest, py::arg("text"), py::arg("doc_id"),
             "Chunk, tag, and merge one document; returns an ingest report dict.")
        .def("query", &PyStore::query, py::arg("text"), py::arg("x") = py::none(),
             py::arg("y") = py::none(), py::arg("decay") = py::none(),
             py::arg("max_context_tokens") = py::none(),
             "LLM-free recall: returns the ranked context chunks with provenance.")
        .def("stats", &PyStore::stats)
        .def("save", &PyStore::save, py::arg("path"))
        .def_static("load", &load_store, py::arg("path"));
}
