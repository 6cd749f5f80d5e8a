#pragma once

#include "bambookg/store.hpp"

#include <cstdint>
#include <string>

namespace bambookg {

/// Effective configuration echoed into snapshots so a reloaded store keeps
/// its ingest/recall defaults.
struct StoreConfig {
    std::uint32_t chunk_tokens = 300;
    std::uint32_t max_tags = 8;
    std::uint32_t x = 5;
    std::uint32_t y = 3;
    double decay = 0.5;

    bool operator==(const StoreConfig&) const = default;
};

struct Snapshot {
    Store store;
    StoreConfig config;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

/// Writes the store as a length-prefixed binary snapshot with a trailing
/// CRC32 (layout in docs/snapshot_format.md). Atomic: temp file + rename.
/// Returns bytes written.
std::size_t save_snapshot(const Store& store, const StoreConfig& config,
                          const std::string& path);

/// Throws IoError, CorruptSnapshot (checksum or invariant failure), or
/// VersionMismatch.
Snapshot load_snapshot(const std::string& path);

/// Line-delimited JSON interchange: one record per config/tag/doc/chunk/edge
/// (schema in docs/jsonl_schema.md). Import round-trips observably.
void export_jsonl(const Store& store, const StoreConfig& config, const std::string& path);
Snapshot import_jsonl(const std::string& path);

} // namespace bambookg
