// bambookg: ingest corpora, query the graph, inspect and export stores.
#include "bambookg/bench.hpp"
#include "bambookg/errors.hpp"
#include "bambookg/pipeline.hpp"
#include "bambookg/recall.hpp"
#include "bambookg/snapshot.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace bambookg;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoKnownTags = 3;

struct EffectiveConfig {
    std::string store_path = "bambookg.snapshot";
    std::string config_path;
    std::string format = "human"; // human | json
    std::string tagger_mode = "det"; // det | llm
    std::string stoplist_path;
    StoreConfig store_cfg;
    std::optional<std::size_t> max_context_tokens;
    LlmEndpoint llm;
};

// flags > config file > built-in defaults
void apply_config_file(EffectiveConfig& cfg) {
    if (cfg.config_path.empty()) return;
    std::ifstream in(cfg.config_path);
    if (!in) throw IoError("cannot open config: " + cfg.config_path);
    json j;
    in >> j;
    cfg.store_cfg.chunk_tokens = j.value("chunk_tokens", cfg.store_cfg.chunk_tokens);
    cfg.store_cfg.max_tags = j.value("max_tags", cfg.store_cfg.max_tags);
    cfg.store_cfg.x = j.value("x", cfg.store_cfg.x);
    cfg.store_cfg.y = j.value("y", cfg.store_cfg.y);
    cfg.store_cfg.decay = j.value("decay", cfg.store_cfg.decay);
    if (j.contains("max_context_tokens"))
        cfg.max_context_tokens = j["max_context_tokens"].get<std::size_t>();
    cfg.tagger_mode = j.value("tagger", cfg.tagger_mode);
    cfg.stoplist_path = j.value("stoplist", cfg.stoplist_path);
    if (j.contains("llm")) {
        cfg.llm.base_url = j["llm"].value("base_url", cfg.llm.base_url);
        cfg.llm.model_name = j["llm"].value("model", cfg.llm.model_name);
        cfg.llm.timeout_s = j["llm"].value("timeout_s", cfg.llm.timeout_s);
    }
}

std::unique_ptr<Tagger> make_tagger(const EffectiveConfig& cfg) {
    if (cfg.tagger_mode == "llm") {
        LlmEndpoint ep = cfg.llm;
        if (const char* key = std::getenv("BAMBOOKG_API_KEY")) ep.api_key = key;
        return std::make_unique<LlmTagger>(ep, LlmTagger::default_prompt_template());
    }
    if (!cfg.stoplist_path.empty()) {
        return std::make_unique<DeterministicTagger>(
            DeterministicTagger::load_stoplist(cfg.stoplist_path));
    }
    return std::make_unique<DeterministicTagger>();
}

TaggerConfig tagger_config(const EffectiveConfig& cfg) {
    TaggerConfig tc;
    tc.max_tags = cfg.store_cfg.max_tags;
    return tc;
}

RetrievalParams retrieval_params(const EffectiveConfig& cfg) {
    RetrievalParams p;
    p.x = cfg.store_cfg.x;
    p.y = cfg.store_cfg.y;
    p.decay = cfg.store_cfg.decay;
    p.max_context_tokens = cfg.max_context_tokens;
    return p;
}

Snapshot load_store_or_die(const EffectiveConfig& cfg) {
    if (!fs::exists(cfg.store_path)) throw IoError("store not found: " + cfg.store_path);
    return load_snapshot(cfg.store_path);
}

json stats_json(const Store& store) {
    GraphStats s = store.stats();
    return json{{"nodes", s.nodes},        {"edges", s.edges},
                {"total_weight", s.total_weight}, {"chunks", s.chunks},
                {"docs", s.docs},          {"max_degree", s.max_degree}};
}

void print_stats(const Store& store, const std::string& format) {
    if (format == "json") {
        std::cout << stats_json(store).dump(2) << "\n";
        return;
    }
    GraphStats s = store.stats();
    std::cout << "nodes         " << s.nodes << "\n"
              << "edges         " << s.edges << "\n"
              << "total weight  " << s.total_weight << "\n"
              << "chunks        " << s.chunks << "\n"
              << "docs          " << s.docs << "\n"
              << "max degree    " << s.max_degree << "\n";
}

int cmd_ingest(const EffectiveConfig& cfg, const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& input : inputs) {
        fs::path p(input);
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::recursive_directory_iterator(p)) {
                if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                    files.push_back(entry.path());
                }
            }
        } else if (fs::is_regular_file(p)) {
            files.push_back(p);
        } else {
            std::cerr << "error: no such file or directory: " << input << "\n";
            return kExitRuntime;
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "error: no documents found\n";
        return kExitRuntime;
    }

    Snapshot snap;
    if (fs::exists(cfg.store_path)) {
        snap = load_snapshot(cfg.store_path);
    }
    snap.config = cfg.store_cfg;

    auto tagger = make_tagger(cfg);
    ChunkingConfig chunk_cfg{cfg.store_cfg.chunk_tokens, 30};
    TaggerConfig tag_cfg = tagger_config(cfg);

    std::vector<CorpusDocument> docs;
    for (const fs::path& f : files) {
        std::ifstream in(f);
        if (!in) {
            std::cerr << "error: cannot read " << f << "\n";
            return kExitRuntime;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        docs.push_back({f.generic_string(), ss.str()});
    }
    CorpusReport report = ingest_corpus(snap.store, docs, chunk_cfg, tag_cfg, *tagger);

    save_snapshot(snap.store, snap.config, cfg.store_path);

    if (cfg.format == "json") {
        json out;
        out["documents"] = json::array();
        for (const IngestReport& r : report.reports) {
            out["documents"].push_back({{"doc_id", r.doc_id},
                                        {"chunks", r.chunks_created},
                                        {"new_tags", r.tags_created},
                                        {"edges_created", r.edges_created},
                                        {"edges_reinforced", r.edges_reinforced}});
        }
        out["errors"] = json::array();
        for (const CorpusError& e : report.errors) {
            out["errors"].push_back({{"doc_id", e.doc_id}, {"message", e.message}});
        }
        out["stats"] = stats_json(snap.store);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const IngestReport& r : report.reports) {
            std::cout << "ingested " << r.doc_id << ": " << r.chunks_created
                      << " chunks, " << r.tags_created << " new tags, "
                      << r.edges_created << " edges created, " << r.edges_reinforced
                      << " reinforced\n";
        }
        for (const CorpusError& e : report.errors) {
            std::cerr << "error: " << e.doc_id << ": " << e.message << "\n";
        }
        print_stats(snap.store, cfg.format);
    }
    return report.errors.empty() ? kExitOk : kExitRuntime;
}

json subgraph_json(const Store& store, const QuerySubgraph& sg) {
    json out;
    out["query_tags"] = json::array();
    for (TagId t : sg.query_tags) out["query_tags"].push_back(store.tag_surface(t));
    out["expansions"] = json::array();
    for (const TagExpansion& e : sg.expansions) {
        json first = json::array();
        for (const Neighbor& n : e.first) {
            first.push_back({{"tag", store.tag_surface(n.id)}, {"weight", n.weight}});
        }
        json second = json::array();
        for (const ScoredNeighbor& n : e.second) {
            second.push_back({{"tag", store.tag_surface(n.id)},
                              {"score", n.score},
                              {"via", store.tag_surface(n.via)}});
        }
        out["expansions"].push_back({{"tag", store.tag_surface(e.tag)},
                                     {"first_degree", first},
                                     {"second_degree", second}});
    }
    out["retrieved_edges"] = json::array();
    for (const RetrievedEdge& e : sg.edges) {
        out["retrieved_edges"].push_back({{"a", store.tag_surface(e.a)},
                                          {"b", store.tag_surface(e.b)},
                                          {"score", e.score}});
    }
    return out;
}

int cmd_query(const EffectiveConfig& cfg, const std::string& query_text) {
    Snapshot snap = load_store_or_die(cfg);
    auto tagger = make_tagger(cfg);
    RecallResult result;
    try {
        result = recall(snap.store, query_text, retrieval_params(cfg),
                        tagger_config(cfg), *tagger);
    } catch (const NoKnownTags& e) {
        std::cerr << "no known tags: " << e.what() << "\n";
        return kExitNoKnownTags;
    }

    if (cfg.format == "json") {
        json chunks = json::array();
        for (const ContextChunk& c : result.context.chunks) {
            json prov = json::array();
            for (const auto& [a, b] : c.provenance) {
                prov.push_back({snap.store.tag_surface(a), snap.store.tag_surface(b)});
            }
            chunks.push_back({{"doc", snap.store.doc_name(c.id.doc)},
                              {"ordinal", c.id.ordinal},
                              {"score", c.score},
                              {"token_count", c.token_count},
                              {"provenance", prov},
                              {"text", c.text}});
        }
        json out = {{"query", query_text},
                    {"query_tags", result.query_tags},
                    {"subgraph", subgraph_json(snap.store, result.subgraph)},
                    {"context", {{"chunks", chunks},
                                 {"total_tokens", result.context.total_tokens}}},
                    {"timing", {{"tagging_ms", result.tagging_ms},
                                {"traversal_ms", result.traversal_ms},
                                {"traversal_external_calls",
                                 result.traversal_external_calls}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "query tags:";
        for (const auto& t : result.query_tags) std::cout << ' ' << t;
        std::cout << "\n";
        for (const ContextChunk& c : result.context.chunks) {
            std::cout << "[" << c.score << "] " << snap.store.doc_name(c.id.doc) << "#"
                      << c.id.ordinal << " (" << c.token_count << " tokens, via";
            for (const auto& [a, b] : c.provenance) {
                std::cout << " " << snap.store.tag_surface(a) << "--"
                          << snap.store.tag_surface(b);
            }
            std::cout << ")\n  " << c.text << "\n";
        }
        std::cout << "total tokens: " << result.context.total_tokens << "\n";
        std::cout << "tagging: " << result.tagging_ms << " ms, traversal: "
                  << result.traversal_ms << " ms (external calls: "
                  << result.traversal_external_calls << ")\n";
    }
    return kExitOk;
}

int cmd_bench(const EffectiveConfig& cfg, const std::string& dataset_path,
              const std::string& format_name, std::optional<std::size_t> sample,
              std::uint64_t seed, const std::string& csv_path, bool no_timings) {
    DatasetFormat format;
    if (format_name == "hotpotqa") {
        format = DatasetFormat::HotPotQA;
    } else if (format_name == "musique") {
        format = DatasetFormat::MuSiQue;
    } else {
        std::cerr << "error: unknown dataset format: " << format_name << "\n";
        return kExitUsage;
    }
    auto instances = load_dataset(dataset_path, format, sample, seed);
    auto tagger = make_tagger(cfg);
    BenchConfig bc;
    bc.params = retrieval_params(cfg);
    bc.chunking = ChunkingConfig{cfg.store_cfg.chunk_tokens, 30};
    bc.tagger_cfg = tagger_config(cfg);
    bc.include_timings = !no_timings;
    bc.seed = seed;
    BenchReport report = run_benchmark(instances, bc, *tagger);

    std::string csv = "# seed=" + std::to_string(seed) + "\n" + report.to_csv();
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw IoError("cannot write " + csv_path);
        out << csv;
    } else {
        std::cout << csv;
    }
    std::cerr << "questions: " << report.rows.size()
              << "  mean recall: " << report.mean_recall
              << "  mean context tokens: " << report.mean_context_tokens << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BambooKG: frequency-weighted tag co-occurrence graph with LLM-free recall"};
    app.require_subcommand(1);

    EffectiveConfig cfg;
    app.add_option("--store", cfg.store_path, "Store snapshot path");
    app.add_option("--config", cfg.config_path, "JSON config file");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"human", "json"}));

    // parameter overrides shared by subcommands
    std::optional<std::uint32_t> chunk_tokens, max_tags, x, y;
    std::optional<double> decay;
    std::optional<std::size_t> max_ctx;
    std::optional<std::string> tagger_mode, stoplist;
    app.add_option("--chunk-tokens", chunk_tokens, "Chunk size in tokens (200-1200)");
    app.add_option("--max-tags", max_tags, "Tags per chunk");
    app.add_option("--x", x, "First-degree neighbors per query tag");
    app.add_option("--y", y, "Second-degree neighbors per query tag");
    app.add_option("--decay", decay, "Second-degree decay factor in (0,1]");
    app.add_option("--max-context-tokens", max_ctx, "Context token cap");
    app.add_option("--tagger", tagger_mode, "Tagger mode")
        ->check(CLI::IsMember({"det", "llm"}));
    app.add_option("--stoplist", stoplist, "Stoplist file for the deterministic tagger");
    std::string llm_url, llm_model;
    app.add_option("--llm-url", llm_url, "LLM tagger base url");
    app.add_option("--llm-model", llm_model, "LLM tagger model name");

    auto* ingest = app.add_subcommand("ingest", "Ingest text files or directories");
    std::vector<std::string> inputs;
    ingest->add_option("paths", inputs, "Files or directories")->required();

    auto* query = app.add_subcommand("query", "Recall context for a query");
    std::string query_text;
    query->add_option("text", query_text, "Query text")->required();

    auto* stats = app.add_subcommand("stats", "Print store statistics");

    auto* exp = app.add_subcommand("export", "Export the store as JSON lines");
    std::string export_path;
    exp->add_option("output", export_path, "Output .jsonl path")->required();

    auto* imp = app.add_subcommand("import", "Import a JSON-lines dump into a new store");
    std::string import_path;
    imp->add_option("input", import_path, "Input .jsonl path")->required();

    auto* bench = app.add_subcommand("bench", "Run the retrieval benchmark harness");
    std::string dataset_path, dataset_format = "hotpotqa", csv_path;
    std::optional<std::size_t> sample;
    std::uint64_t seed = 0;
    bool no_timings = false;
    bench->add_option("dataset", dataset_path, "Dataset file")->required();
    bench->add_option("--dataset-format", dataset_format, "hotpotqa | musique");
    bench->add_option("--sample", sample, "Random sample size");
    bench->add_option("--seed", seed, "Sampling seed (echoed into the CSV)");
    bench->add_option("--csv", csv_path, "Write CSV here instead of stdout");
    bench->add_flag("--no-timings", no_timings, "Zero the timing columns for reproducible CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        apply_config_file(cfg);
        if (chunk_tokens) cfg.store_cfg.chunk_tokens = *chunk_tokens;
        if (max_tags) cfg.store_cfg.max_tags = *max_tags;
        if (x) cfg.store_cfg.x = *x;
        if (y) cfg.store_cfg.y = *y;
        if (decay) cfg.store_cfg.decay = *decay;
        if (max_ctx) cfg.max_context_tokens = *max_ctx;
        if (tagger_mode) cfg.tagger_mode = *tagger_mode;
        if (stoplist) cfg.stoplist_path = *stoplist;
        if (!llm_url.empty()) cfg.llm.base_url = llm_url;
        if (!llm_model.empty()) cfg.llm.model_name = llm_model;

        if (ingest->parsed()) return cmd_ingest(cfg, inputs);
        if (query->parsed()) return cmd_query(cfg, query_text);
        if (stats->parsed()) {
            Snapshot snap = load_store_or_die(cfg);
            print_stats(snap.store, cfg.format);
            return kExitOk;
        }
        if (exp->parsed()) {
            Snapshot snap = load_store_or_die(cfg);
            export_jsonl(snap.store, snap.config, export_path);
            return kExitOk;
        }
        if (imp->parsed()) {
            Snapshot snap = import_jsonl(import_path);
            save_snapshot(snap.store, snap.config, cfg.store_path);
            std::cout << "imported into " << cfg.store_path << "\n";
            return kExitOk;
        }
        if (bench->parsed()) {
            return cmd_bench(cfg, dataset_path, dataset_format, sample, seed, csv_path,
                             no_timings);
        }
    } catch (const InvalidConfig& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
