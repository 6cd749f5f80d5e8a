#pragma once

#include "bambookg/chunker.hpp"
#include "bambookg/store.hpp"
#include "bambookg/tagger.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bambookg {

struct IngestReport {
    std::string doc_id;
    std::size_t chunks_created = 0;
    std::size_t tags_created = 0;     // new interns
    std::size_t edges_created = 0;    // weight went 0 -> 1
    std::size_t edges_reinforced = 0; // weight incremented past 1
};

/// Chunks, tags, and merges one document into the store. Atomic: all
/// chunks are tagged before anything is written, so a tagger failure
/// leaves the store untouched. Exactly one tagger call per chunk.
IngestReport ingest_document(Store& store, std::string_view doc_text,
                             std::string_view doc_id, const ChunkingConfig& chunk_cfg,
                             const TaggerConfig& tagger_cfg, Tagger& tagger);

struct CorpusDocument {
    std::string doc_id;
    std::string text;
};

struct CorpusError {
    std::string doc_id;
    std::string message;
};

struct CorpusReport {
    std::vector<IngestReport> reports;
    std::vector<CorpusError> errors;
};

/// Sequential ingest of many documents; per-document errors are collected
/// and the run continues.
CorpusReport ingest_corpus(Store& store, const std::vector<CorpusDocument>& documents,
                           const ChunkingConfig& chunk_cfg, const TaggerConfig& tagger_cfg,
                           Tagger& tagger);

} // namespace bambookg
