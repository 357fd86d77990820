/*
 * Copyright 2026 The citemap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/// The directed citation graph and the classic bibliometric link
/// constructions on top of it: direct citation, co-citation (two papers
/// cited together by a third) and bibliographic coupling (two papers citing
/// a common third).
///
/// Edges run from the citing paper to the cited paper throughout, so In(v)
/// is the set of papers citing v and Out(v) the set of papers v cites.
/// Graphs are immutable once built; node ids are kept sorted, which makes
/// every traversal and every emitted file deterministic.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "citemap/corpus.hpp"

namespace citemap {

using NodeIndex = std::uint32_t;

class CitationGraph {
public:
    CitationGraph() = default;

    /// Builds from parallel arrays of (id, year) nodes and (citing, cited)
    /// id pairs. Unknown endpoints are rejected; duplicate edges and
    /// self-loops are silently dropped (the parser already counts them).
    static CitationGraph from_edges(std::vector<std::pair<std::string, int>> nodes,
                                    const std::vector<std::pair<std::string, std::string>>& edges) {
        CitationGraph g;
        std::sort(nodes.begin(), nodes.end());
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (nodes[i].first == nodes[i - 1].first)
                throw std::runtime_error("graph: duplicate node id \"" + nodes[i].first + "\"");
        g.ids_.reserve(nodes.size());
        g.years_.reserve(nodes.size());
        for (auto& [id, year] : nodes) {
            g.ids_.push_back(std::move(id));
            g.years_.push_back(year);
        }
        g.out_.assign(g.ids_.size(), {});
        g.in_.assign(g.ids_.size(), {});
        for (const auto& [citing, cited] : edges) {
            NodeIndex u = g.index_of(citing);
            NodeIndex v = g.index_of(cited);
            if (u == v) continue;
            g.out_[u].push_back(v);
        }
        g.finalize_adjacency();
        return g;
    }

    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id_of(NodeIndex v) const { return ids_[v]; }
    int year_of(NodeIndex v) const { return years_[v]; }

    bool contains(const std::string& id) const {
        return std::binary_search(ids_.begin(), ids_.end(), id);
    }

    /// Index of a node id; ids are sorted so this is a binary search.
    NodeIndex index_of(const std::string& id) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
        if (it == ids_.end() || *it != id)
            throw std::runtime_error("graph: unknown node id \"" + id + "\"");
        return static_cast<NodeIndex>(it - ids_.begin());
    }

    /// Out(v): the papers v cites. Sorted, duplicate-free.
    const std::vector<NodeIndex>& out_neighbors(NodeIndex v) const { return out_[v]; }
    /// In(v): the papers citing v. Sorted, duplicate-free.
    const std::vector<NodeIndex>& in_neighbors(NodeIndex v) const { return in_[v]; }

    /// Same nodes, every edge flipped.
    CitationGraph reversed() const {
        CitationGraph g;
        g.ids_ = ids_;
        g.years_ = years_;
        g.out_ = in_;
        g.in_ = out_;
        g.edge_count_ = edge_count_;
        return g;
    }

private:
    void finalize_adjacency() {
        edge_count_ = 0;
        for (NodeIndex u = 0; u < out_.size(); ++u) {
            auto& nb = out_[u];
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            edge_count_ += nb.size();
            for (NodeIndex v : nb) in_[v].push_back(u);
        }
        // in-lists are filled in ascending source order, already sorted
    }

    std::vector<std::string> ids_;  // sorted
    std::vector<int> years_;
    std::vector<std::vector<NodeIndex>> out_;
    std::vector<std::vector<NodeIndex>> in_;
    std::size_t edge_count_ = 0;
};

/// One node per paper, one edge per surviving citation, deduplicated.
inline CitationGraph build_graph(const Corpus& corpus) {
    std::vector<std::pair<std::string, int>> nodes;
    nodes.reserve(corpus.papers.size());
    for (const auto& [id, rec] : corpus.papers) nodes.emplace_back(id, rec.year);
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(corpus.citations.size());
    for (const auto& c : corpus.citations) edges.emplace_back(c.citing_id, c.cited_id);
    return CitationGraph::from_edges(std::move(nodes), edges);
}

/// Induced subgraph on the largest weakly connected component (direction is
/// ignored for connectivity, preserved in the output). A size tie goes to
/// the component containing the smallest node id. Empty in, empty out.
inline CitationGraph largest_component(const CitationGraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) return g;

    std::vector<int> comp(n, -1);
    int comp_count = 0;
    std::vector<std::size_t> comp_size;
    for (NodeIndex s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int c = comp_count++;
        comp_size.push_back(0);
        std::queue<NodeIndex> q;
        q.push(s);
        comp[s] = c;
        while (!q.empty()) {
            NodeIndex v = q.front();
            q.pop();
            ++comp_size[c];
            for (const auto* nbrs : {&g.out_neighbors(v), &g.in_neighbors(v)})
                for (NodeIndex w : *nbrs)
                    if (comp[w] < 0) {
                        comp[w] = c;
                        q.push(w);
                    }
        }
    }

    // components are discovered in ascending order of their smallest node
    // index, so the first maximal one wins the tie
    int best = 0;
    for (int c = 1; c < comp_count; ++c)
        if (comp_size[c] > comp_size[best]) best = c;

    std::vector<std::pair<std::string, int>> nodes;
    for (NodeIndex v = 0; v < n; ++v)
        if (comp[v] == best) nodes.emplace_back(g.id_of(v), g.year_of(v));
    std::vector<std::pair<std::string, std::string>> edges;
    for (NodeIndex u = 0; u < n; ++u) {
        if (comp[u] != best) continue;
        for (NodeIndex v : g.out_neighbors(u)) edges.emplace_back(g.id_of(u), g.id_of(v));
    }
    return CitationGraph::from_edges(std::move(nodes), edges);
}

/// Symmetric co-occurrence network. Keys are index pairs (a < b) into ids.
struct UndirectedProjection {
    std::vector<std::string> ids;  // all nodes of the source graph, sorted
    std::map<std::pair<NodeIndex, NodeIndex>, int> weights;

    bool has_edge(const std::string& a, const std::string& b) const {
        auto ia = index(a), ib = index(b);
        if (ia > ib) std::swap(ia, ib);
        return weights.count({ia, ib}) != 0;
    }
    int weight(const std::string& a, const std::string& b) const {
        auto ia = index(a), ib = index(b);
        if (ia > ib) std::swap(ia, ib);
        auto it = weights.find({ia, ib});
        return it == weights.end() ? 0 : it->second;
    }

private:
    NodeIndex index(const std::string& id) const {
        auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id)
            throw std::runtime_error("projection: unknown node id \"" + id + "\"");
        return static_cast<NodeIndex>(it - ids.begin());
    }
};

namespace detail {

// Every unordered pair inside each neighbor list gains +1 weight. Neighbor
// lists are sorted, so pairs come out with a < b directly.
inline UndirectedProjection project_pairs(const CitationGraph& g, bool use_out) {
    UndirectedProjection p;
    p.ids = g.ids();
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto& nbrs = use_out ? g.out_neighbors(v) : g.in_neighbors(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                ++p.weights[{nbrs[i], nbrs[j]}];
    }
    return p;
}

}  // namespace detail

/// Links papers that appear together in some paper's reference list, with
/// the number of co-citing papers as the weight.
inline UndirectedProjection co_citation_projection(const CitationGraph& g) {
    return detail::project_pairs(g, /*use_out=*/true);
}

/// Links papers whose reference lists share a paper, weighted by the number
/// of shared references.
inline UndirectedProjection bibliographic_coupling_projection(const CitationGraph& g) {
    return detail::project_pairs(g, /*use_out=*/false);
}

/// Simple undirected view used by the clustering algorithms: direction
/// dropped, parallel edges merged.
struct UndirectedGraph {
    std::vector<std::string> ids;
    std::vector<std::vector<NodeIndex>> adj;               // sorted neighbor lists
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;    // a < b, sorted

    std::size_t node_count() const { return ids.size(); }
    std::size_t edge_count() const { return edges.size(); }
    std::size_t degree(NodeIndex v) const { return adj[v].size(); }
};

inline UndirectedGraph undirected_view(const CitationGraph& g) {
    UndirectedGraph u;
    u.ids = g.ids();
    u.adj.assign(g.node_count(), {});
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        for (NodeIndex w : g.out_neighbors(v)) {
            NodeIndex a = std::min(v, w), b = std::max(v, w);
            u.edges.emplace_back(a, b);
        }
    std::sort(u.edges.begin(), u.edges.end());
    u.edges.erase(std::unique(u.edges.begin(), u.edges.end()), u.edges.end());
    for (auto [a, b] : u.edges) {
        u.adj[a].push_back(b);
        u.adj[b].push_back(a);
    }
    for (auto& nb : u.adj) std::sort(nb.begin(), nb.end());
    return u;
}

inline UndirectedGraph undirected_view(const UndirectedProjection& p) {
    UndirectedGraph u;
    u.ids = p.ids;
    u.adj.assign(p.ids.size(), {});
    u.edges.reserve(p.weights.size());
    for (const auto& [e, w] : p.weights) {
        u.edges.push_back(e);
        u.adj[e.first].push_back(e.second);
        u.adj[e.second].push_back(e.first);
    }
    for (auto& nb : u.adj) std::sort(nb.begin(), nb.end());
    return u;
}

/// A citation graph whose edges carry the variance weight of their cited
/// endpoint: every edge j -> i has weight w = s2(i).
struct WeightedGraph {
    CitationGraph graph;
    std::vector<double> node_s2;  // indexed like graph ids

    double weight(NodeIndex /*citing*/, NodeIndex cited) const { return node_s2[cited]; }
    double s2_of(NodeIndex v) const { return node_s2[v]; }
};

/// Attaches explicit per-node variance values; weights must be non-negative
/// and cover every node.
inline WeightedGraph make_weighted(const CitationGraph& g, const std::map<std::string, double>& s2) {
    WeightedGraph w{g, std::vector<double>(g.node_count(), 0.0)};
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        auto it = s2.find(g.id_of(v));
        if (it != s2.end()) {
            if (it->second < 0)
                throw std::invalid_argument("weighted graph: negative variance for \"" + g.id_of(v) + "\"");
            w.node_s2[v] = it->second;
        }
    }
    return w;
}

}  // namespace citemap
