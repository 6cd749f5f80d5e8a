#include "bambookg/pipeline.hpp"
#include "bambookg/errors.hpp"

namespace bambookg {

IngestReport ingest_document(Store& store, std::string_view doc_text,
                             std::string_view doc_id, const ChunkingConfig& chunk_cfg,
                             const TaggerConfig& tagger_cfg, Tagger& tagger) {
    if (store.has_document(doc_id))
        throw DuplicateDocument("document already ingested: " + std::string(doc_id));

    // Stage everything before touching the store: chunking and tagging can
    // fail, and a partial merge would corrupt the co-occurrence counts.
    std::vector<RawChunk> raw = chunk_text(doc_text, chunk_cfg);
    std::vector<std::vector<std::string>> chunk_tags(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        try {
            chunk_tags[i] = tagger.tag_chunk(raw[i].text, tagger_cfg);
        } catch (const NoTagsFound&) {
            // a chunk with no salient terms is stored untagged
        }
    }

    IngestReport report;
    report.doc_id = std::string(doc_id);
    std::size_t tags_before = store.tag_count();

    DocId doc = store.add_document(doc_id);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        std::vector<TagId> ids;
        ids.reserve(chunk_tags[i].size());
        for (const std::string& t : chunk_tags[i]) ids.push_back(store.intern_tag(t));
        auto deltas = store.add_chunk(ChunkId{doc, static_cast<std::uint32_t>(i)},
                                      std::move(raw[i].text), raw[i].token_count,
                                      std::move(ids));
        for (const EdgeDelta& d : deltas) {
            if (d.new_weight == 1)
                ++report.edges_created;
            else
                ++report.edges_reinforced;
        }
        ++report.chunks_created;
    }
    report.tags_created = store.tag_count() - tags_before;
    return report;
}

CorpusReport ingest_corpus(Store& store, const std::vector<CorpusDocument>& documents,
                           const ChunkingConfig& chunk_cfg, const TaggerConfig& tagger_cfg,
                           Tagger& tagger) {
    CorpusReport out;
    for (const CorpusDocument& doc : documents) {
        try {
            out.reports.push_back(
                ingest_document(store, doc.text, doc.doc_id, chunk_cfg, tagger_cfg, tagger));
        } catch (const Error& e) {
            out.errors.push_back(CorpusError{doc.doc_id, e.what()});
        }
    }
    return out;
}

} // namespace bambookg
