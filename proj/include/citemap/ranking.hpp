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

/// Fixed-point ranking of papers.
///
/// pagerank iterates the unnormalized recurrence
///     x(i) = (1 - d) + d * sum over citers j of x(j) / |Out(j)|
/// and hal_rank its variance-weighted counterpart, where citer j splits its
/// mass over its references in proportion to their citation-year variance:
///     x(i) = (1 - d) + d * sum over citers j of x(j) * s2(i) / sum_{k in Out(j)} s2(k).
/// When all of j's references have zero variance the split falls back to
/// uniform, which also makes hal_rank collapse to pagerank whenever all
/// variances are equal. Papers citing nothing contribute no mass.
///
/// Both iterations are synchronous (Jacobi) from the all-ones vector, stop
/// when the L1 change drops below the tolerance, and are fully deterministic.

#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "citemap/graph.hpp"
#include "citemap/util.hpp"

namespace citemap {

struct RankOptions {
    double damping = 0.85;
    double tolerance = 1e-10;
    int max_iterations = 200;

    void validate() const {
        if (!(damping > 0.0 && damping < 1.0))
            throw std::invalid_argument("ranking: damping must lie strictly between 0 and 1");
        if (!(tolerance > 0.0)) throw std::invalid_argument("ranking: tolerance must be positive");
        if (max_iterations < 1) throw std::invalid_argument("ranking: max_iterations must be >= 1");
    }
};

struct RankVector {
    std::map<std::string, double> scores;
    std::string algorithm;  // "pagerank" or "hal"
    double damping = 0.85;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;  // L1 change of the final iteration

    double at(const std::string& id) const {
        auto it = scores.find(id);
        if (it == scores.end()) throw std::runtime_error("rank: no score for \"" + id + "\"");
        return it->second;
    }
};

namespace detail {

// (target, share) lists per source; shares of a non-dangling source sum to 1.
using ShareLists = std::vector<std::vector<std::pair<NodeIndex, double>>>;

inline RankVector power_iterate(const CitationGraph& g, const ShareLists& shares,
                                std::string algorithm, const RankOptions& opt) {
    opt.validate();
    const std::size_t n = g.node_count();
    std::vector<double> cur(n, 1.0), next(n);

    RankVector result;
    result.algorithm = std::move(algorithm);
    result.damping = opt.damping;

    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        std::fill(next.begin(), next.end(), 1.0 - opt.damping);
        for (NodeIndex j = 0; j < n; ++j)
            for (auto [target, share] : shares[j]) next[target] += opt.damping * share * cur[j];

        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - cur[i]);
        cur.swap(next);
        result.iterations = iter;
        result.residual = change;
        if (change < opt.tolerance) {
            result.converged = true;
            break;
        }
    }

    for (NodeIndex v = 0; v < n; ++v) result.scores.emplace(g.id_of(v), cur[v]);
    return result;
}

}  // namespace detail

inline RankVector pagerank(const CitationGraph& g, const RankOptions& opt = {}) {
    detail::ShareLists shares(g.node_count());
    for (NodeIndex j = 0; j < g.node_count(); ++j) {
        const auto& out = g.out_neighbors(j);
        if (out.empty()) continue;
        const double share = 1.0 / static_cast<double>(out.size());
        for (NodeIndex t : out) shares[j].emplace_back(t, share);
    }
    return detail::power_iterate(g, shares, "pagerank", opt);
}

inline RankVector hal_rank(const WeightedGraph& wg, const RankOptions& opt = {}) {
    const CitationGraph& g = wg.graph;
    if (wg.node_s2.size() != g.node_count())
        throw std::invalid_argument("hal_rank: weight vector does not cover the graph");
    for (double s2 : wg.node_s2)
        if (s2 < 0.0) throw std::invalid_argument("hal_rank: negative variance weight");

    detail::ShareLists shares(g.node_count());
    for (NodeIndex j = 0; j < g.node_count(); ++j) {
        const auto& out = g.out_neighbors(j);
        if (out.empty()) continue;
        double denom = 0.0;
        for (NodeIndex t : out) denom += wg.node_s2[t];
        if (denom == 0.0) {
            const double share = 1.0 / static_cast<double>(out.size());
            for (NodeIndex t : out) shares[j].emplace_back(t, share);
        } else {
            for (NodeIndex t : out) shares[j].emplace_back(t, wg.node_s2[t] / denom);
        }
    }
    return detail::power_iterate(g, shares, "hal", opt);
}

/// id<TAB>score<TAB>algorithm, descending score, ties by id.
inline void write_rank_tsv(const RankVector& rank, std::ostream& out) {
    std::vector<std::pair<std::string, double>> rows(rank.scores.begin(), rank.scores.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [id, score] : rows)
        out << id << '\t' << format_double(score) << '\t' << rank.algorithm << '\n';
}

inline RankVector read_rank_tsv(std::istream& in) {
    RankVector rank;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3) throw std::runtime_error("rank: malformed TSV line: " + line);
        rank.scores[fields[0]] = std::stod(fields[1]);
        rank.algorithm = fields[2];
    }
    return rank;
}

/// 1-based position of every paper under a rank vector (descending score,
/// ties by id).
inline std::map<std::string, int> rank_positions(const RankVector& rank) {
    std::vector<std::pair<std::string, double>> rows(rank.scores.begin(), rank.scores.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i].first] = static_cast<int>(i) + 1;
    return pos;
}

}  // namespace citemap
