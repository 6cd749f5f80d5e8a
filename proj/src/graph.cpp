#include "bambookg/graph.hpp"
#include "bambookg/errors.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>

namespace bambookg {

namespace {

bool id_less(TagId a, TagId b) { return a < b; }

} // namespace

void TagGraph::ensure_node(TagId id) {
    if (id >= adjacency_.size()) adjacency_.resize(id + 1);
}

std::uint32_t TagGraph::bump(TagId a, TagId b) {
    auto& list = adjacency_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& n, TagId id) { return n.id < id; });
    if (it != list.end() && it->id == b) {
        return ++it->weight;
    }
    list.insert(it, Neighbor{b, 1});
    return 1;
}

std::vector<EdgeDelta> TagGraph::record_cooccurrence(std::span<const TagId> tags) {
    std::vector<TagId> sorted(tags.begin(), tags.end());
    std::sort(sorted.begin(), sorted.end());
    assert(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

    for (TagId t : sorted) ensure_node(t);

    std::vector<EdgeDelta> deltas;
    deltas.reserve(sorted.size() * (sorted.size() - 1) / 2);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            TagId a = sorted[i], b = sorted[j];
            std::uint32_t w = bump(a, b);
            bump(b, a);
            if (w == 1) ++edge_count_;
            ++total_weight_;
            deltas.push_back(EdgeDelta{a, b, w});
        }
    }
    return deltas;
}

std::vector<Neighbor> TagGraph::top_first_degree(TagId seed, std::size_t x,
                                                 const TieLess& tie_less) const {
    if (seed >= adjacency_.size()) throw UnknownTag("unknown seed tag");
    const auto& tie = tie_less ? tie_less : TieLess(id_less);
    auto rank_less = [&](const Neighbor& a, const Neighbor& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return tie(a.id, b.id);
    };
    std::vector<Neighbor> ranked = adjacency_[seed];
    if (x < ranked.size()) {
        std::partial_sort(ranked.begin(), ranked.begin() + x, ranked.end(), rank_less);
        ranked.resize(x);
    } else {
        std::sort(ranked.begin(), ranked.end(), rank_less);
    }
    return ranked;
}

std::vector<ScoredNeighbor> TagGraph::top_second_degree(TagId seed,
                                                        std::span<const TagId> first,
                                                        std::size_t y, double decay,
                                                        const TieLess& tie_less) const {
    if (seed >= adjacency_.size()) throw UnknownTag("unknown seed tag");
    const auto& tie = tie_less ? tie_less : TieLess(id_less);
    std::unordered_set<TagId> excluded(first.begin(), first.end());
    excluded.insert(seed);

    std::unordered_map<TagId, ScoredNeighbor> best;
    for (TagId m : first) {
        std::uint32_t wm = weight(seed, m);
        if (wm == 0) continue;
        for (const Neighbor& nb : adjacency_[m]) {
            if (excluded.count(nb.id)) continue;
            double score = static_cast<double>(wm) * nb.weight * decay;
            auto [it, inserted] = best.try_emplace(nb.id, ScoredNeighbor{nb.id, score, m});
            if (!inserted && (score > it->second.score ||
                              (score == it->second.score && tie(m, it->second.via)))) {
                it->second.score = score;
                it->second.via = m;
            }
        }
    }

    std::vector<ScoredNeighbor> ranked;
    ranked.reserve(best.size());
    for (auto& [id, sn] : best) ranked.push_back(sn);
    std::sort(ranked.begin(), ranked.end(),
              [&](const ScoredNeighbor& a, const ScoredNeighbor& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return tie(a.id, b.id);
              });
    if (ranked.size() > y) ranked.resize(y);
    return ranked;
}

std::uint32_t TagGraph::weight(TagId a, TagId b) const {
    if (a >= adjacency_.size()) return 0;
    const auto& list = adjacency_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& n, TagId id) { return n.id < id; });
    if (it != list.end() && it->id == b) return it->weight;
    return 0;
}

const std::vector<Neighbor>& TagGraph::neighbors(TagId id) const {
    if (id >= adjacency_.size()) throw UnknownTag("unknown tag");
    return adjacency_[id];
}

std::size_t TagGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& list : adjacency_) d = std::max(d, list.size());
    return d;
}

void TagGraph::load_edge(TagId a, TagId b, std::uint32_t w) {
    if (a == b) throw CorruptSnapshot("self-loop edge");
    if (w == 0) throw CorruptSnapshot("edge with weight 0");
    ensure_node(std::max(a, b));
    auto insert = [&](TagId u, TagId v) {
        auto& list = adjacency_[u];
        auto it = std::lower_bound(list.begin(), list.end(), v,
                                   [](const Neighbor& n, TagId id) { return n.id < id; });
        if (it != list.end() && it->id == v) throw CorruptSnapshot("duplicate edge");
        list.insert(it, Neighbor{v, w});
    };
    insert(a, b);
    insert(b, a);
    ++edge_count_;
    total_weight_ += w;
}

} // namespace bambookg
