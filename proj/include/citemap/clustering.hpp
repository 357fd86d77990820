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

/// Community detection on the undirected view of the citation graph.
///
/// Two methods, both driven by modularity Q = sum_c (e_c/m - (d_c/2m)^2):
///  - girvan_newman: removes the edge of highest betweenness (recomputed
///    after every removal) and keeps the component partition of maximal
///    modularity, or stops once a requested component count is reached.
///  - fast_greedy: agglomerative merging of the community pair with the
///    greatest modularity gain until no positive gain remains.
///
/// All ties (edge betweenness, merge gain) break toward the smallest index
/// pair so results are reproducible. Isolated nodes keep their own cluster.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "citemap/graph.hpp"

namespace citemap {

enum class ClusterMethod { girvan_newman, fast_greedy };

inline const char* to_string(ClusterMethod m) {
    return m == ClusterMethod::girvan_newman ? "girvan_newman" : "fast_greedy";
}

struct ClusterPartition {
    std::vector<std::uint32_t> assignment;  // node index -> cluster in [0, cluster_count)
    std::uint32_t cluster_count = 0;
    double modularity = 0.0;
    ClusterMethod method = ClusterMethod::fast_greedy;

    std::uint32_t cluster_of(NodeIndex v) const { return assignment[v]; }
};

/// Newman-Girvan modularity of a total assignment. Undefined (throws) on an
/// edgeless graph.
inline double modularity(const UndirectedGraph& g, const std::vector<std::uint32_t>& assignment) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("modularity: undefined on a graph with no edges");
    if (assignment.size() != g.node_count())
        throw std::invalid_argument("modularity: assignment does not cover all nodes");

    std::uint32_t k = 0;
    for (auto c : assignment) k = std::max(k, c + 1);
    std::vector<double> intra(k, 0.0), degree_sum(k, 0.0);
    for (auto [a, b] : g.edges)
        if (assignment[a] == assignment[b]) intra[assignment[a]] += 1.0;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        degree_sum[assignment[v]] += static_cast<double>(g.degree(v));

    const double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (std::uint32_t c = 0; c < k; ++c) {
        double frac = degree_sum[c] / (2.0 * m);
        q += intra[c] / m - frac * frac;
    }
    return q;
}

namespace detail {

// Renumbers clusters by first appearance in node order, so equal partitions
// compare equal regardless of how they were produced.
inline std::pair<std::vector<std::uint32_t>, std::uint32_t>
normalize_assignment(const std::vector<std::uint32_t>& raw) {
    std::map<std::uint32_t, std::uint32_t> remap;
    std::vector<std::uint32_t> out(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        auto [it, inserted] = remap.emplace(raw[v], static_cast<std::uint32_t>(remap.size()));
        out[v] = it->second;
    }
    return {out, static_cast<std::uint32_t>(remap.size())};
}

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

inline std::pair<std::vector<std::uint32_t>, std::uint32_t>
components_of(std::size_t n, const EdgeList& edges) {
    std::vector<std::vector<NodeIndex>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
    std::uint32_t count = 0;
    for (NodeIndex s = 0; s < n; ++s) {
        if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
        std::uint32_t c = count++;
        std::queue<NodeIndex> q;
        q.push(s);
        comp[s] = c;
        while (!q.empty()) {
            NodeIndex v = q.front();
            q.pop();
            for (NodeIndex w : adj[v])
                if (comp[w] == std::numeric_limits<std::uint32_t>::max()) {
                    comp[w] = c;
                    q.push(w);
                }
        }
    }
    return {comp, count};
}

// Brandes' accumulation, extended to edges. Unweighted shortest paths; each
// undirected edge is counted from both endpoints, hence the final halving.
inline std::map<std::pair<NodeIndex, NodeIndex>, double>
edge_betweenness(std::size_t n, const EdgeList& edges) {
    std::vector<std::vector<NodeIndex>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    std::map<std::pair<NodeIndex, NodeIndex>, double> eb;
    for (auto [a, b] : edges) eb[{a, b}] = 0.0;

    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeIndex> order;
    order.reserve(n);

    for (NodeIndex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();

        std::queue<NodeIndex> q;
        dist[s] = 0;
        sigma[s] = 1.0;
        q.push(s);
        while (!q.empty()) {
            NodeIndex v = q.front();
            q.pop();
            order.push_back(v);
            for (NodeIndex w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeIndex w = *it;
            for (NodeIndex v : adj[w]) {
                if (dist[v] != dist[w] - 1) continue;
                double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                eb[{std::min(v, w), std::max(v, w)}] += c;
                delta[v] += c;
            }
        }
    }
    for (auto& [e, v] : eb) v /= 2.0;
    return eb;
}

}  // namespace detail

/// Stopping rule for girvan_newman: either the partition of maximal
/// modularity seen while dismantling the graph, or the first partition with
/// at least k components.
struct GnTarget {
    enum class Kind { max_modularity, k_clusters };
    Kind kind = Kind::max_modularity;
    std::uint32_t k = 0;

    static GnTarget max_modularity() { return {}; }
    static GnTarget k_clusters(std::uint32_t k) { return {Kind::k_clusters, k}; }
};

inline ClusterPartition girvan_newman(const UndirectedGraph& g,
                                      GnTarget target = GnTarget::max_modularity()) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("girvan_newman: graph has no edges");

    detail::EdgeList work = g.edges;

    auto evaluate = [&](const detail::EdgeList& remaining) {
        auto [raw, count] = detail::components_of(g.node_count(), remaining);
        auto [assignment, k] = detail::normalize_assignment(raw);
        double q = modularity(g, assignment);
        return std::tuple(assignment, k, q);
    };

    auto [best_assign, best_k, best_q] = evaluate(work);
    if (target.kind == GnTarget::Kind::k_clusters && best_k >= target.k)
        return {best_assign, best_k, best_q, ClusterMethod::girvan_newman};

    while (!work.empty()) {
        auto eb = detail::edge_betweenness(g.node_count(), work);
        // highest betweenness wins; ties go to the smallest (a, b) pair,
        // which is the map's iteration order
        auto victim = eb.begin()->first;
        double best_eb = eb.begin()->second;
        for (const auto& [e, v] : eb)
            if (v > best_eb) {
                best_eb = v;
                victim = e;
            }
        work.erase(std::find(work.begin(), work.end(), victim));

        auto [assignment, k, q] = evaluate(work);
        if (target.kind == GnTarget::Kind::k_clusters) {
            if (k >= target.k) return {assignment, k, q, ClusterMethod::girvan_newman};
        } else if (q > best_q) {
            best_assign = assignment;
            best_k = k;
            best_q = q;
        }
    }
    if (target.kind == GnTarget::Kind::k_clusters) {
        // fewer nodes than requested clusters: all edges gone, return what's left
        auto [assignment, k, q] = evaluate(work);
        return {assignment, k, q, ClusterMethod::girvan_newman};
    }
    return {best_assign, best_k, best_q, ClusterMethod::girvan_newman};
}

/// Agglomerative modularity maximization. Starts from singletons and keeps
/// applying the merge with the greatest gain while one exists. When
/// `trajectory` is given, every intermediate assignment is recorded.
inline ClusterPartition fast_greedy(const UndirectedGraph& g,
                                    std::vector<std::vector<std::uint32_t>>* trajectory = nullptr) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("fast_greedy: graph has no edges");

    const std::size_t n = g.node_count();
    const double m = static_cast<double>(g.edge_count());
    const double m2 = 2.0 * m;

    std::vector<bool> alive(n, true);
    std::vector<double> degree_sum(n);
    std::vector<std::map<std::uint32_t, double>> conn(n);  // edges between communities
    std::vector<std::uint32_t> community(n);
    for (NodeIndex v = 0; v < n; ++v) {
        degree_sum[v] = static_cast<double>(g.degree(v));
        community[v] = v;
    }
    for (auto [a, b] : g.edges) {
        conn[a][b] += 1.0;
        conn[b][a] += 1.0;
    }

    auto record = [&]() {
        if (trajectory) trajectory->push_back(detail::normalize_assignment(community).first);
    };
    record();

    while (true) {
        double best_dq = 0.0;
        std::uint32_t best_i = 0, best_j = 0;
        bool found = false;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, between] : conn[i]) {
                if (j <= i) continue;
                double dq = between / m - 2.0 * (degree_sum[i] / m2) * (degree_sum[j] / m2);
                if (dq > best_dq) {
                    best_dq = dq;
                    best_i = i;
                    best_j = j;
                    found = true;
                }
            }
        }
        if (!found) break;

        // merge j into i (i < j by scan order)
        degree_sum[best_i] += degree_sum[best_j];
        conn[best_i].erase(best_j);
        for (const auto& [k, w] : conn[best_j]) {
            if (k == best_i) continue;
            conn[best_i][k] += w;
            conn[k][best_i] += w;
            conn[k].erase(best_j);
        }
        conn[best_j].clear();
        alive[best_j] = false;
        for (auto& c : community)
            if (c == best_j) c = best_i;
        record();
    }

    auto [assignment, k] = detail::normalize_assignment(community);
    return {assignment, k, modularity(g, assignment), ClusterMethod::fast_greedy};
}

}  // namespace citemap
