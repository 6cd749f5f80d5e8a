#pragma once

#include "bambookg/tag.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bambookg {

struct Neighbor {
    TagId id;
    std::uint32_t weight;
};

struct EdgeDelta {
    TagId a; // a < b
    TagId b;
    std::uint32_t new_weight;
};

struct ScoredNeighbor {
    TagId id;
    double score;
    TagId via; // intermediary on the best-scoring path
};

/// Undirected frequency-weighted tag co-occurrence graph. Edge weight
/// counts the chunks in which both endpoints appeared together. Adjacency
/// is mirrored; each list is kept sorted by neighbor id for lookup, and
/// top-k queries apply the (descending weight, ascending id) contract.
class TagGraph {
public:
    /// Strict total order over tag ids used to break weight/score ties in
    /// top-k selection. Empty means ascending id. Callers that need results
    /// independent of id assignment (recall: tag ids vary with ingest
    /// order) pass an order over a stable key such as the tag surface.
    using TieLess = std::function<bool(TagId, TagId)>;

    /// Grows the node table so `id` is addressable.
    void ensure_node(TagId id);

    /// Increments every unordered pair of `tags` by one. `tags` must be
    /// de-duplicated; pairs (a,a) are skipped by construction. Returns one
    /// delta per pair with the post-increment weight.
    std::vector<EdgeDelta> record_cooccurrence(std::span<const TagId> tags);

    /// Top `x` direct neighbors of `seed` under (descending weight,
    /// tie_less). Throws UnknownTag for out-of-range seeds.
    std::vector<Neighbor> top_first_degree(TagId seed, std::size_t x,
                                           const TieLess& tie_less = {}) const;

    /// Top `y` two-hop neighbors reachable through `first`, excluding
    /// `seed` and `first` themselves. Each candidate is scored
    /// weight(seed,m) * weight(m,c) * decay, maximized over intermediaries
    /// m; ties on score break toward the tie_less-smaller candidate, then
    /// the tie_less-smaller intermediary.
    std::vector<ScoredNeighbor> top_second_degree(TagId seed,
                                                  std::span<const TagId> first,
                                                  std::size_t y, double decay,
                                                  const TieLess& tie_less = {}) const;

    /// 0 when the edge does not exist.
    std::uint32_t weight(TagId a, TagId b) const;

    const std::vector<Neighbor>& neighbors(TagId id) const;

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::uint64_t total_weight() const { return total_weight_; }
    std::size_t max_degree() const;

    /// Persistence path: installs an edge with an explicit weight.
    /// The edge must not already exist.
    void load_edge(TagId a, TagId b, std::uint32_t w);

private:
    std::uint32_t bump(TagId a, TagId b); // returns new weight of (a,b)

    std::vector<std::vector<Neighbor>> adjacency_; // sorted by id
    std::size_t edge_count_ = 0;
    std::uint64_t total_weight_ = 0;
};

} // namespace bambookg
