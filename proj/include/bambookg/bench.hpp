#pragma once

#include "bambookg/chunker.hpp"
#include "bambookg/recall.hpp"
#include "bambookg/tagger.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bambookg {

enum class DatasetFormat { HotPotQA, MuSiQue };

struct QaDocument {
    std::string title;
    std::string text;
    bool is_supporting = false;
};

struct QaInstance {
    std::string id;
    std::string question;
    std::vector<QaDocument> docs; // supporting + distractor context documents
    std::vector<std::string> gold_titles;
    int hops = 0; // 0 when the dataset does not encode hop count
};

/// Parses a HotPotQA distractor-setting JSON array or MuSiQue JSON-lines
/// file (field shapes in docs/datasets.md). With `sample`, draws that many
/// instances deterministically under `seed`. Validates that every gold
/// title appears among the context documents.
std::vector<QaInstance> load_dataset(const std::string& path, DatasetFormat format,
                                     std::optional<std::size_t> sample = std::nullopt,
                                     std::uint64_t seed = 0);

struct BenchConfig {
    RetrievalParams params;
    ChunkingConfig chunking;
    TaggerConfig tagger_cfg;
    bool include_timings = true; // false pins the timing columns to 0 for
                                 // byte-reproducible CSVs
    bool shared_corpus = false;  // one store for all questions instead of
                                 // per-question isolation
    std::uint64_t seed = 0;      // echoed into the CSV header
};

struct QuestionResult {
    std::string question_id;
    int hops = 0;
    double recall = 0.0; // supporting-document recall
    std::size_t context_tokens = 0;
    double traversal_ms = 0.0;
    double tagging_ms = 0.0;
    std::string status; // ok | no_known_tags | error:<what>
};

struct BenchReport {
    std::vector<QuestionResult> rows;
    double mean_recall = 0.0;
    double mean_context_tokens = 0.0;
    double mean_traversal_ms = 0.0;

    /// Per-question rows followed by per-hop and overall aggregate rows.
    std::string to_csv() const;
};

/// Per question: fresh store (unless shared_corpus), ingest every context
/// document, recall with the question text, score supporting-document
/// recall. Per-question failures become error rows; the run continues.
BenchReport run_benchmark(const std::vector<QaInstance>& instances,
                          const BenchConfig& cfg, Tagger& tagger);

} // namespace bambookg
