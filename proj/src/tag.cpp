#include "bambookg/tag.hpp"
#include "bambookg/errors.hpp"

#include <cctype>

namespace bambookg {

std::string normalize_tag(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        // ASCII-only case folding and whitespace; multi-byte UTF-8 passes through.
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        out.push_back(static_cast<char>(c));
    }
    return out;
}

TagId TagInterner::intern(std::string_view raw) {
    std::string norm = normalize_tag(raw);
    if (norm.empty()) throw EmptyTag("tag normalizes to empty string");
    auto it = ids_.find(norm);
    if (it != ids_.end()) return it->second;
    TagId id = static_cast<TagId>(surfaces_.size());
    ids_.emplace(norm, id);
    surfaces_.push_back(std::move(norm));
    return id;
}

std::optional<TagId> TagInterner::find(std::string_view raw) const {
    std::string norm = normalize_tag(raw);
    auto it = ids_.find(norm);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& TagInterner::surface(TagId id) const {
    if (id >= surfaces_.size()) throw UnknownTag("tag id out of range");
    return surfaces_[id];
}

} // namespace bambookg
