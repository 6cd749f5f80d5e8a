#include "bambookg/bench.hpp"
#include "bambookg/errors.hpp"
#include "bambookg/pipeline.hpp"
#include "bambookg/store.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace bambookg {

namespace {

void validate_gold(const QaInstance& qa) {
    std::set<std::string> titles;
    for (const QaDocument& d : qa.docs) titles.insert(d.title);
    for (const std::string& g : qa.gold_titles) {
        if (!titles.count(g)) {
            throw ParseError("record " + qa.id + ": gold title '" + g +
                             "' missing from context");
        }
    }
}

QaInstance parse_hotpotqa_record(const nlohmann::json& rec) {
    QaInstance qa;
    qa.id = rec.at("_id").get<std::string>();
    qa.question = rec.at("question").get<std::string>();
    qa.hops = 2; // HotPotQA questions are two-hop by construction
    std::set<std::string> gold;
    for (const auto& sf : rec.at("supporting_facts")) {
        gold.insert(sf.at(0).get<std::string>());
    }
    for (const auto& ctx : rec.at("context")) {
        QaDocument doc;
        doc.title = ctx.at(0).get<std::string>();
        std::string text;
        for (const auto& sent : ctx.at(1)) {
            if (!text.empty()) text.push_back(' ');
            text += sent.get<std::string>();
        }
        doc.text = std::move(text);
        doc.is_supporting = gold.count(doc.title) != 0;
        qa.docs.push_back(std::move(doc));
    }
    qa.gold_titles.assign(gold.begin(), gold.end());
    return qa;
}

QaInstance parse_musique_record(const nlohmann::json& rec) {
    QaInstance qa;
    qa.id = rec.at("id").get<std::string>();
    qa.question = rec.at("question").get<std::string>();
    // ids look like "2hop__1234_5678"
    if (!qa.id.empty() && qa.id[0] >= '2' && qa.id[0] <= '9' &&
        qa.id.find("hop") != std::string::npos) {
        qa.hops = qa.id[0] - '0';
    }
    for (const auto& p : rec.at("paragraphs")) {
        QaDocument doc;
        doc.title = p.at("title").get<std::string>();
        doc.text = p.at("paragraph_text").get<std::string>();
        doc.is_supporting = p.value("is_supporting", false);
        if (doc.is_supporting) qa.gold_titles.push_back(doc.title);
        qa.docs.push_back(std::move(doc));
    }
    std::sort(qa.gold_titles.begin(), qa.gold_titles.end());
    qa.gold_titles.erase(std::unique(qa.gold_titles.begin(), qa.gold_titles.end()),
                         qa.gold_titles.end());
    return qa;
}

// mt19937_64 with modulo: deterministic across platforms, unlike
// std::uniform_int_distribution.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    k = std::min(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

std::vector<QaInstance> load_dataset(const std::string& path, DatasetFormat format,
                                     std::optional<std::size_t> sample,
                                     std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset: " + path);

    std::vector<QaInstance> all;
    if (format == DatasetFormat::HotPotQA) {
        nlohmann::json root;
        try {
            in >> root;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid HotPotQA JSON: ") + e.what());
        }
        if (!root.is_array()) throw ParseError("HotPotQA file must be a JSON array");
        for (const auto& rec : root) {
            std::string id = rec.contains("_id") ? rec["_id"].get<std::string>() : "<no id>";
            try {
                all.push_back(parse_hotpotqa_record(rec));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("record " + id + ": " + e.what());
            }
        }
    } else {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                all.push_back(parse_musique_record(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
    }
    for (const QaInstance& qa : all) validate_gold(qa);

    if (!sample || *sample >= all.size()) return all;
    std::vector<QaInstance> picked;
    for (std::size_t i : sample_indices(all.size(), *sample, seed)) {
        picked.push_back(all[i]);
    }
    return picked;
}

BenchReport run_benchmark(const std::vector<QaInstance>& instances,
                          const BenchConfig& cfg, Tagger& tagger) {
    BenchReport report;

    Store shared_store;
    std::set<std::string> shared_docs;
    if (cfg.shared_corpus) {
        for (const QaInstance& qa : instances) {
            for (const QaDocument& d : qa.docs) {
                if (!shared_docs.insert(d.title).second) continue;
                try {
                    ingest_document(shared_store, d.text, d.title, cfg.chunking,
                                    cfg.tagger_cfg, tagger);
                } catch (const Error&) {
                    // empty or duplicate documents do not sink the run
                }
            }
        }
    }

    for (const QaInstance& qa : instances) {
        QuestionResult row;
        row.question_id = qa.id;
        row.hops = qa.hops;
        row.status = "ok";
        try {
            Store local;
            Store& store = cfg.shared_corpus ? shared_store : local;
            if (!cfg.shared_corpus) {
                for (const QaDocument& d : qa.docs) {
                    try {
                        ingest_document(store, d.text, d.title, cfg.chunking,
                                        cfg.tagger_cfg, tagger);
                    } catch (const EmptyDocument&) {
                    } catch (const DuplicateDocument&) {
                    }
                }
            }
            RecallResult rr = recall(store, qa.question, cfg.params, cfg.tagger_cfg, tagger);
            row.context_tokens = rr.context.total_tokens;
            row.traversal_ms = rr.traversal_ms;
            row.tagging_ms = rr.tagging_ms;

            std::set<std::string> hit_docs;
            for (const ContextChunk& c : rr.context.chunks) {
                hit_docs.insert(store.doc_name(c.id.doc));
            }
            std::size_t hit = 0;
            for (const std::string& g : qa.gold_titles) {
                if (hit_docs.count(g)) ++hit;
            }
            row.recall = qa.gold_titles.empty()
                             ? 0.0
                             : static_cast<double>(hit) / qa.gold_titles.size();
        } catch (const NoKnownTags&) {
            row.status = "no_known_tags";
        } catch (const Error& e) {
            row.status = std::string("error:") + e.what();
        }
        if (!cfg.include_timings) {
            row.traversal_ms = 0.0;
            row.tagging_ms = 0.0;
        }
        report.rows.push_back(std::move(row));
    }

    if (!report.rows.empty()) {
        double r = 0, t = 0, ms = 0;
        for (const QuestionResult& row : report.rows) {
            r += row.recall;
            t += static_cast<double>(row.context_tokens);
            ms += row.traversal_ms;
        }
        report.mean_recall = r / report.rows.size();
        report.mean_context_tokens = t / report.rows.size();
        report.mean_traversal_ms = ms / report.rows.size();
    }
    return report;
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "question_id,hops,recall,context_tokens,traversal_ms,tagging_ms,status\n";
    for (const QuestionResult& row : rows) {
        std::string status = row.status;
        std::replace(status.begin(), status.end(), ',', ';');
        out << row.question_id << ',' << row.hops << ',' << format_double(row.recall)
            << ',' << row.context_tokens << ',' << format_double(row.traversal_ms) << ','
            << format_double(row.tagging_ms) << ',' << status << "\n";
    }

    // aggregate rows: recomputable means per hop count, then overall
    std::map<int, std::vector<const QuestionResult*>> by_hops;
    for (const QuestionResult& row : rows) by_hops[row.hops].push_back(&row);
    auto emit_mean = [&](const std::string& label,
                         const std::vector<const QuestionResult*>& group) {
        double r = 0, t = 0, trav = 0, tag = 0;
        for (const QuestionResult* q : group) {
            r += q->recall;
            t += static_cast<double>(q->context_tokens);
            trav += q->traversal_ms;
            tag += q->tagging_ms;
        }
        std::size_t n = group.size();
        out << label << ',' << format_double(r / n) << ','
            << format_double(t / n) << ',' << format_double(trav / n) << ','
            << format_double(tag / n) << ",aggregate\n";
    };
    for (const auto& [hops, group] : by_hops) {
        emit_mean("__mean__," + std::to_string(hops), group);
    }
    if (!rows.empty()) {
        std::vector<const QuestionResult*> all;
        for (const QuestionResult& row : rows) all.push_back(&row);
        emit_mean("__mean_all__,", all);
    }
    return out.str();
}

} // namespace bambookg
