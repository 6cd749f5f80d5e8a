#include "bambookg/errors.hpp"
#include "bambookg/recall.hpp"
#include "bambookg/snapshot.hpp"

#include "oracle.hpp"

#include <doctest.h>
#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace bambookg;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Store toy_store() {
    Store s;
    TagId cat = s.intern_tag("cat");
    TagId pet = s.intern_tag("pet");
    TagId dog = s.intern_tag("dog");
    DocId d = s.add_document("animals.txt");
    s.add_chunk(ChunkId{d, 0}, "the cat is a pet", 5, {cat, pet});
    s.add_chunk(ChunkId{d, 1}, "the dog is a pet", 5, {dog, pet});
    return s;
}

bool stores_equal(const Store& a, const Store& b) {
    if (a.tag_surfaces() != b.tag_surfaces()) return false;
    if (a.doc_names() != b.doc_names()) return false;
    if (a.chunk_count() != b.chunk_count()) return false;
    for (std::size_t i = 0; i < a.chunk_count(); ++i) {
        const Chunk& ca = a.chunks()[i];
        const Chunk& cb = b.chunks()[i];
        if (!(ca.id == cb.id) || ca.text != cb.text || ca.token_count != cb.token_count ||
            ca.tags != cb.tags)
            return false;
    }
    for (TagId t = 0; t < a.tag_count(); ++t) {
        for (TagId u = 0; u < a.tag_count(); ++u) {
            if (a.graph().weight(t, u) != b.graph().weight(t, u)) return false;
        }
        if (a.postings(t) != b.postings(t)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("empty store snapshot round-trips") {
    Store empty;
    std::string path = temp_path("bkg_empty.snapshot");
    std::size_t bytes = save_snapshot(empty, StoreConfig{}, path);
    CHECK(bytes > 0);
    Snapshot snap = load_snapshot(path);
    CHECK(snap.store.tag_count() == 0);
    CHECK(snap.store.chunk_count() == 0);
    CHECK(snap.config == StoreConfig{});
}

TEST_CASE("repeated saves are byte-identical, including after a load") {
    Store s = toy_store();
    std::string p1 = temp_path("bkg_a.snapshot");
    std::string p2 = temp_path("bkg_b.snapshot");
    save_snapshot(s, StoreConfig{}, p1);
    save_snapshot(s, StoreConfig{}, p2);
    CHECK(read_file(p1) == read_file(p2));

    Snapshot reloaded = load_snapshot(p1);
    std::string p3 = temp_path("bkg_c.snapshot");
    save_snapshot(reloaded.store, reloaded.config, p3);
    CHECK(read_file(p1) == read_file(p3));
}

TEST_CASE("round-trip: random stores answer identically after reload") {
    std::mt19937_64 rng(55);
    for (int round = 0; round < 25; ++round) {
        auto corpus = oracle::random_corpus(rng, 20, 6, 10);
        Store store = oracle::build_store(corpus, 10);
        std::string path = temp_path("bkg_rt.snapshot");
        save_snapshot(store, StoreConfig{}, path);
        Snapshot snap = load_snapshot(path);
        CHECK(stores_equal(store, snap.store));
    }
}

TEST_CASE("truncated file is CorruptSnapshot") {
    Store s = toy_store();
    std::string path = temp_path("bkg_trunc.snapshot");
    save_snapshot(s, StoreConfig{}, path);
    std::string bytes = read_file(path);
    write_file(path, bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_snapshot(path), CorruptSnapshot);
}

TEST_CASE("any single-byte payload corruption is detected") {
    Store s = toy_store();
    std::string path = temp_path("bkg_flip.snapshot");
    save_snapshot(s, StoreConfig{}, path);
    std::string original = read_file(path);
    std::mt19937_64 rng(77);
    for (int i = 0; i < 64; ++i) {
        std::string mutated = original;
        std::size_t pos = rng() % (mutated.size() - 4); // stay in the payload
        mutated[pos] = static_cast<char>(mutated[pos] ^ (1 + rng() % 255));
        write_file(path, mutated);
        CHECK_THROWS(load_snapshot(path));
    }
}

TEST_CASE("hand-crafted invariant violations are rejected") {
    // rebuild a snapshot with a zero-weight edge by editing the payload and
    // re-stamping the checksum is fiddly; instead drive the loader's
    // invariant checks through the jsonl importer, which shares them
    std::string path = temp_path("bkg_bad.jsonl");

    SUBCASE("edge weight zero") {
        write_file(path,
                   "{\"type\":\"tag\",\"id\":0,\"surface\":\"a\"}\n"
                   "{\"type\":\"tag\",\"id\":1,\"surface\":\"b\"}\n"
                   "{\"type\":\"edge\",\"a\":0,\"b\":1,\"weight\":0}\n");
        CHECK_THROWS_AS(import_jsonl(path), CorruptSnapshot);
    }
    SUBCASE("non-canonical edge (a >= b)") {
        write_file(path,
                   "{\"type\":\"tag\",\"id\":0,\"surface\":\"a\"}\n"
                   "{\"type\":\"tag\",\"id\":1,\"surface\":\"b\"}\n"
                   "{\"type\":\"edge\",\"a\":1,\"b\":0,\"weight\":2}\n");
        CHECK_THROWS_AS(import_jsonl(path), CorruptSnapshot);
    }
}

TEST_CASE("unknown snapshot version is VersionMismatch") {
    Store s = toy_store();
    std::string path = temp_path("bkg_ver.snapshot");
    save_snapshot(s, StoreConfig{}, path);
    std::string bytes = read_file(path);
    // bump the version field (offset 8) and re-stamp the crc32
    bytes[8] = 99;
    std::string payload = bytes.substr(0, bytes.size() - 4);
    std::uint32_t crc = static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const unsigned char*>(payload.data()),
                static_cast<unsigned>(payload.size())));
    payload.append(reinterpret_cast<const char*>(&crc), 4);
    write_file(path, payload);
    CHECK_THROWS_AS(load_snapshot(path), VersionMismatch);
}

TEST_CASE("jsonl export/import round-trips observably") {
    Store s = toy_store();
    StoreConfig cfg;
    cfg.x = 7;
    cfg.decay = 0.25;
    std::string path = temp_path("bkg_export.jsonl");
    export_jsonl(s, cfg, path);
    Snapshot snap = import_jsonl(path);
    CHECK(stores_equal(s, snap.store));
    CHECK(snap.config == cfg);
}

TEST_CASE("golden fixture loads to the documented toy store") {
    Snapshot snap = load_snapshot(std::string(BAMBOOKG_FIXTURE_DIR) + "/golden_store.snapshot");
    const Store& s = snap.store;
    CHECK(s.tag_count() == 3);
    CHECK(s.tag_surface(0) == "cat");
    CHECK(s.tag_surface(1) == "pet");
    CHECK(s.tag_surface(2) == "dog");
    CHECK(s.doc_count() == 1);
    CHECK(s.chunk_count() == 2);
    CHECK(s.graph().weight(0, 1) == 1); // cat--pet
    CHECK(s.graph().weight(2, 1) == 1); // dog--pet
    CHECK(s.graph().weight(0, 2) == 0);
}
