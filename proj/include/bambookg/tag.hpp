#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bambookg {

using TagId = std::uint32_t;

/// Canonical tag form: lowercased (ASCII), trimmed, internal whitespace
/// runs collapsed to single spaces. Idempotent.
std::string normalize_tag(std::string_view raw);

/// Dense TagId allocator. Ids are assigned in first-seen order and are
/// stable for the lifetime of the store (persistence preserves them).
class TagInterner {
public:
    /// Returns the existing id for the normalized form of `raw`, or
    /// allocates the next dense id. Throws EmptyTag when normalization
    /// yields an empty string.
    TagId intern(std::string_view raw);

    /// Lookup without allocation; `raw` is normalized first.
    std::optional<TagId> find(std::string_view raw) const;

    const std::string& surface(TagId id) const;
    std::size_t size() const { return surfaces_.size(); }

    const std::vector<std::string>& surfaces() const { return surfaces_; }

private:
    std::unordered_map<std::string, TagId> ids_;
    std::vector<std::string> surfaces_;
};

} // namespace bambookg
