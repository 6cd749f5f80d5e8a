#include "bambookg/snapshot.hpp"
#include "bambookg/errors.hpp"

#include <nlohmann/json.hpp>
#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bambookg {

namespace {

constexpr char kMagic[8] = {'B', 'A', 'M', 'B', 'O', 'O', 'K', 'G'};

class Writer {
public:
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    void raw(const void* p, std::size_t n) {
        const char* c = static_cast<const char*>(p);
        buf_.insert(buf_.end(), c, c + n);
    }
    const std::string& buffer() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    std::uint32_t u32() {
        std::uint32_t v;
        raw(&v, sizeof v);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v;
        raw(&v, sizeof v);
        return v;
    }
    double f64() {
        double v;
        raw(&v, sizeof v);
        return v;
    }
    std::string str() {
        std::uint32_t n = u32();
        if (pos_ + n > data_.size()) throw CorruptSnapshot("truncated string");
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    void raw(void* p, std::size_t n) {
        if (pos_ + n > data_.size()) throw CorruptSnapshot("truncated snapshot");
        std::memcpy(p, data_.data() + pos_, n);
        pos_ += n;
    }
    std::size_t remaining() const { return data_.size() - pos_; }
    const std::string& data() const { return data_; }

private:
    std::string data_;
    std::size_t pos_ = 0;
};

std::uint32_t checksum(const std::string& bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uInt>(bytes.size())));
}

struct EdgeRow {
    TagId a, b;
    std::uint32_t w;
};

std::vector<EdgeRow> edge_table(const Store& store) {
    std::vector<EdgeRow> rows;
    for (TagId a = 0; a < store.graph().node_count(); ++a) {
        for (const Neighbor& n : store.graph().neighbors(a)) {
            if (n.id > a) rows.push_back(EdgeRow{a, n.id, n.weight});
        }
    }
    // already sorted by (a, b) given adjacency id order
    return rows;
}

void atomic_write(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("rename failed: " + ec.message());
    }
}

} // namespace

std::size_t save_snapshot(const Store& store, const StoreConfig& config,
                          const std::string& path) {
    Writer w;
    w.raw(kMagic, sizeof kMagic);
    w.u32(kSnapshotVersion);

    const auto& tags = store.tag_surfaces();
    w.u64(tags.size());
    for (const std::string& t : tags) w.str(t);

    const auto& docs = store.doc_names();
    w.u64(docs.size());
    for (const std::string& d : docs) w.str(d);

    const auto& chunks = store.chunks();
    w.u64(chunks.size());
    for (const Chunk& c : chunks) {
        w.u32(c.id.doc);
        w.u32(c.id.ordinal);
        w.u32(c.token_count);
        w.u32(static_cast<std::uint32_t>(c.tags.size()));
        for (TagId t : c.tags) w.u32(t);
        w.str(c.text);
    }

    auto edges = edge_table(store);
    w.u64(edges.size());
    for (const EdgeRow& e : edges) {
        w.u32(e.a);
        w.u32(e.b);
        w.u32(e.w);
    }

    w.u32(config.chunk_tokens);
    w.u32(config.max_tags);
    w.u32(config.x);
    w.u32(config.y);
    w.f64(config.decay);

    std::string payload = w.buffer();
    std::uint32_t crc = checksum(payload);
    payload.append(reinterpret_cast<const char*>(&crc), sizeof crc);

    atomic_write(path, payload);
    return payload.size();
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();

    if (bytes.size() < sizeof(kMagic) + sizeof(std::uint32_t) * 2)
        throw CorruptSnapshot("file too small");
    std::uint32_t stored_crc;
    std::memcpy(&stored_crc, bytes.data() + bytes.size() - sizeof stored_crc,
                sizeof stored_crc);
    std::string payload = bytes.substr(0, bytes.size() - sizeof stored_crc);
    if (checksum(payload) != stored_crc) throw CorruptSnapshot("checksum mismatch");

    Reader r(std::move(payload));
    char magic[8];
    r.raw(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw CorruptSnapshot("bad magic");
    std::uint32_t version = r.u32();
    if (version != kSnapshotVersion)
        throw VersionMismatch("unsupported snapshot version " + std::to_string(version));

    Snapshot snap;
    Store& store = snap.store;

    std::uint64_t ntags = r.u64();
    for (std::uint64_t i = 0; i < ntags; ++i) {
        std::string surface = r.str();
        TagId id = store.intern_tag(surface);
        if (id != i) throw CorruptSnapshot("tag table not dense / not normalized");
    }

    std::uint64_t ndocs = r.u64();
    for (std::uint64_t i = 0; i < ndocs; ++i) {
        DocId id = store.add_document(r.str());
        if (id != i) throw CorruptSnapshot("doc table not dense");
    }

    std::uint64_t nchunks = r.u64();
    for (std::uint64_t i = 0; i < nchunks; ++i) {
        ChunkId id{r.u32(), r.u32()};
        std::uint32_t token_count = r.u32();
        std::uint32_t nt = r.u32();
        std::vector<TagId> tags(nt);
        for (auto& t : tags) {
            t = r.u32();
            if (t >= ntags) throw CorruptSnapshot("chunk tag id out of range");
        }
        if (id.doc >= ndocs) throw CorruptSnapshot("chunk doc id out of range");
        store.load_chunk(id, r.str(), token_count, std::move(tags));
    }

    std::uint64_t nedges = r.u64();
    TagId prev_a = 0, prev_b = 0;
    bool have_prev = false;
    for (std::uint64_t i = 0; i < nedges; ++i) {
        TagId a = r.u32(), b = r.u32();
        std::uint32_t wgt = r.u32();
        if (a >= b) throw CorruptSnapshot("edge endpoints not canonical (a < b)");
        if (b >= ntags) throw CorruptSnapshot("edge tag id out of range");
        if (have_prev && !(a > prev_a || (a == prev_a && b > prev_b)))
            throw CorruptSnapshot("edge table not sorted");
        store.load_edge(a, b, wgt);
        prev_a = a;
        prev_b = b;
        have_prev = true;
    }

    snap.config.chunk_tokens = r.u32();
    snap.config.max_tags = r.u32();
    snap.config.x = r.u32();
    snap.config.y = r.u32();
    snap.config.decay = r.f64();
    if (r.remaining() != 0) throw CorruptSnapshot("trailing bytes");
    return snap;
}

void export_jsonl(const Store& store, const StoreConfig& config, const std::string& path) {
    std::ostringstream out;
    nlohmann::json cfg = {{"type", "config"},
                          {"format_version", kSnapshotVersion},
                          {"chunk_tokens", config.chunk_tokens},
                          {"max_tags", config.max_tags},
                          {"x", config.x},
                          {"y", config.y},
                          {"decay", config.decay}};
    out << cfg.dump() << "\n";

    const auto& tags = store.tag_surfaces();
    for (TagId id = 0; id < tags.size(); ++id) {
        out << nlohmann::json{{"type", "tag"}, {"id", id}, {"surface", tags[id]}}.dump()
            << "\n";
    }
    const auto& docs = store.doc_names();
    for (DocId id = 0; id < docs.size(); ++id) {
        out << nlohmann::json{{"type", "doc"}, {"id", id}, {"name", docs[id]}}.dump()
            << "\n";
    }
    for (const Chunk& c : store.chunks()) {
        out << nlohmann::json{{"type", "chunk"},
                              {"doc", c.id.doc},
                              {"ordinal", c.id.ordinal},
                              {"token_count", c.token_count},
                              {"tags", c.tags},
                              {"text", c.text}}
                   .dump()
            << "\n";
    }
    for (const EdgeRow& e : edge_table(store)) {
        out << nlohmann::json{{"type", "edge"}, {"a", e.a}, {"b", e.b}, {"weight", e.w}}.dump()
            << "\n";
    }
    atomic_write(path, out.str());
}

Snapshot import_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open jsonl: " + path);

    Snapshot snap;
    Store& store = snap.store;
    std::string line;
    std::size_t lineno = 0;
    try {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto rec = nlohmann::json::parse(line);
            std::string type = rec.at("type").get<std::string>();
            if (type == "config") {
                if (rec.at("format_version").get<std::uint32_t>() != kSnapshotVersion)
                    throw VersionMismatch("unsupported jsonl format_version");
                snap.config.chunk_tokens = rec.at("chunk_tokens").get<std::uint32_t>();
                snap.config.max_tags = rec.at("max_tags").get<std::uint32_t>();
                snap.config.x = rec.at("x").get<std::uint32_t>();
                snap.config.y = rec.at("y").get<std::uint32_t>();
                snap.config.decay = rec.at("decay").get<double>();
            } else if (type == "tag") {
                TagId id = store.intern_tag(rec.at("surface").get<std::string>());
                if (id != rec.at("id").get<TagId>())
                    throw CorruptSnapshot("tag ids not dense in jsonl");
            } else if (type == "doc") {
                DocId id = store.add_document(rec.at("name").get<std::string>());
                if (id != rec.at("id").get<DocId>())
                    throw CorruptSnapshot("doc ids not dense in jsonl");
            } else if (type == "chunk") {
                store.load_chunk(ChunkId{rec.at("doc").get<DocId>(),
                                         rec.at("ordinal").get<std::uint32_t>()},
                                 rec.at("text").get<std::string>(),
                                 rec.at("token_count").get<std::uint32_t>(),
                                 rec.at("tags").get<std::vector<TagId>>());
            } else if (type == "edge") {
                TagId a = rec.at("a").get<TagId>();
                TagId b = rec.at("b").get<TagId>();
                if (a >= b) throw CorruptSnapshot("edge endpoints not canonical");
                store.load_edge(a, b, rec.at("weight").get<std::uint32_t>());
            } else {
                throw CorruptSnapshot("unknown record type: " + type);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("jsonl line " + std::to_string(lineno) + ": " + e.what());
    }
    return snap;
}

} // namespace bambookg
