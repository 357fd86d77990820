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

/// Final outputs: the per-cluster key-paper report, the PageRank-vs-HAL
/// comparison table, and visualization-ready graph exports (GraphML, DOT,
/// JSON) where node size is an affine map of the chosen score onto
/// [4, 40]. Everything is emitted in sorted order so outputs are
/// byte-reproducible.

#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "citemap/clustering.hpp"
#include "citemap/corpus.hpp"
#include "citemap/ranking.hpp"
#include "citemap/temporal.hpp"

namespace citemap {

struct KeyPaperRow {
    std::string id;
    std::string title;
    int year = 0;
    int in_degree = 0;
    double s2 = 0.0;
    double pr = 0.0;
    double hal = 0.0;
    int pr_rank = 0;   // global 1-based position under pagerank
    int hal_rank = 0;  // global 1-based position under hal
};

struct KeyPaperReport {
    std::vector<std::vector<KeyPaperRow>> clusters;  // one ordered list per cluster
    std::string ordered_by;                          // "pagerank" or "hal"
    int k = 0;
};

/// For each cluster, the k highest-scoring papers under `order_by`
/// (descending score, ties by id), fewer if the cluster is smaller.
inline KeyPaperReport top_k_per_cluster(const CitationGraph& g, const ClusterPartition& partition,
                                        const RankVector& pr, const RankVector& hal,
                                        const std::map<std::string, TemporalProfile>& profiles,
                                        const Corpus& corpus, int k,
                                        const std::string& order_by = "hal") {
    if (k < 1) throw std::invalid_argument("top_k_per_cluster: k must be >= 1");
    if (order_by != "hal" && order_by != "pagerank")
        throw std::invalid_argument("top_k_per_cluster: unknown ordering \"" + order_by + "\"");
    if (partition.assignment.size() != g.node_count())
        throw std::invalid_argument("top_k_per_cluster: partition does not cover the graph");

    auto pr_pos = rank_positions(pr);
    auto hal_pos = rank_positions(hal);

    KeyPaperReport report;
    report.ordered_by = order_by;
    report.k = k;
    report.clusters.resize(partition.cluster_count);

    std::vector<std::vector<NodeIndex>> members(partition.cluster_count);
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        members[partition.assignment[v]].push_back(v);

    for (std::uint32_t c = 0; c < partition.cluster_count; ++c) {
        std::vector<KeyPaperRow> rows;
        for (NodeIndex v : members[c]) {
            const std::string& id = g.id_of(v);
            KeyPaperRow row;
            row.id = id;
            row.year = g.year_of(v);
            row.in_degree = static_cast<int>(g.in_neighbors(v).size());
            if (auto it = corpus.papers.find(id); it != corpus.papers.end())
                row.title = it->second.title;
            if (auto it = profiles.find(id); it != profiles.end()) row.s2 = it->second.s2;
            row.pr = pr.at(id);
            row.hal = hal.at(id);
            row.pr_rank = pr_pos.at(id);
            row.hal_rank = hal_pos.at(id);
            rows.push_back(std::move(row));
        }
        const bool by_hal = order_by == "hal";
        std::sort(rows.begin(), rows.end(), [&](const KeyPaperRow& a, const KeyPaperRow& b) {
            double sa = by_hal ? a.hal : a.pr, sb = by_hal ? b.hal : b.pr;
            if (sa != sb) return sa > sb;
            return a.id < b.id;
        });
        if (rows.size() > static_cast<std::size_t>(k)) rows.resize(k);
        report.clusters[c] = std::move(rows);
    }
    return report;
}

/// cluster<TAB>rank<TAB>id<TAB>title<TAB>year<TAB>indeg<TAB>s2<TAB>pr<TAB>hal
inline void write_report_tsv(const KeyPaperReport& report, std::ostream& out) {
    for (std::size_t c = 0; c < report.clusters.size(); ++c)
        for (std::size_t i = 0; i < report.clusters[c].size(); ++i) {
            const auto& row = report.clusters[c][i];
            out << c << '\t' << (i + 1) << '\t' << row.id << '\t' << tsv_sanitize(row.title)
                << '\t' << row.year << '\t' << row.in_degree << '\t' << format_double(row.s2)
                << '\t' << format_double(row.pr) << '\t' << format_double(row.hal) << '\n';
        }
}

struct ComparisonRow {
    std::string id;
    int citations = 0;  // in-degree
    double s2 = 0.0;
    double pr = 0.0;
    double hal = 0.0;
    double score_delta = 0.0;  // hal - pr
    int rank_delta = 0;        // pr position - hal position; positive = hal promotes
};

/// Per-paper comparison of the two algorithms, sorted by id. Both vectors
/// must cover the same papers.
inline std::vector<ComparisonRow> compare_scores(const RankVector& pr, const RankVector& hal,
                                                 const std::map<std::string, TemporalProfile>& profiles) {
    if (pr.scores.size() != hal.scores.size())
        throw std::invalid_argument("compare_scores: rank vectors cover different node sets");
    for (const auto& [id, _] : pr.scores)
        if (!hal.scores.count(id))
            throw std::invalid_argument("compare_scores: rank vectors cover different node sets");

    auto pr_pos = rank_positions(pr);
    auto hal_pos = rank_positions(hal);

    std::vector<ComparisonRow> rows;
    rows.reserve(pr.scores.size());
    for (const auto& [id, pr_score] : pr.scores) {
        ComparisonRow row;
        row.id = id;
        row.pr = pr_score;
        row.hal = hal.at(id);
        row.score_delta = row.hal - row.pr;
        row.rank_delta = pr_pos.at(id) - hal_pos.at(id);
        if (auto it = profiles.find(id); it != profiles.end()) {
            row.s2 = it->second.s2;
            row.citations = it->second.histogram.total();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// id<TAB>citations<TAB>s2<TAB>pr<TAB>hal<TAB>score_delta<TAB>rank_delta
inline void write_comparison_tsv(const std::vector<ComparisonRow>& rows, std::ostream& out) {
    for (const auto& r : rows)
        out << r.id << '\t' << r.citations << '\t' << format_double(r.s2) << '\t'
            << format_double(r.pr) << '\t' << format_double(r.hal) << '\t'
            << format_double(r.score_delta) << '\t' << r.rank_delta << '\n';
}

enum class ExportFormat { graphml, dot, json };

inline ExportFormat export_format_from_string(const std::string& s) {
    if (s == "graphml") return ExportFormat::graphml;
    if (s == "dot") return ExportFormat::dot;
    if (s == "json") return ExportFormat::json;
    throw std::invalid_argument("unknown export format \"" + s + "\"");
}

struct ExportOptions {
    ExportFormat format = ExportFormat::graphml;
    std::string size_by = "hal";  // "pr" or "hal"
    double size_min = 4.0;
    double size_max = 40.0;
};

namespace detail {

// Affine map of scores onto [size_min, size_max]; a flat score range puts
// every node at size_min.
inline std::vector<double> node_sizes(const std::vector<double>& scores, double size_min,
                                      double size_max) {
    double lo = scores.empty() ? 0.0 : *std::min_element(scores.begin(), scores.end());
    double hi = scores.empty() ? 0.0 : *std::max_element(scores.begin(), scores.end());
    std::vector<double> sizes(scores.size(), size_min);
    if (hi > lo)
        for (std::size_t i = 0; i < scores.size(); ++i)
            sizes[i] = size_min + (size_max - size_min) * (scores[i] - lo) / (hi - lo);
    return sizes;
}

}  // namespace detail

/// Emits the weighted graph with per-node label, year, cluster, both scores
/// and a score-proportional size attribute.
inline void export_graph(const WeightedGraph& wg, const ClusterPartition& partition,
                         const RankVector& pr, const RankVector& hal, const Corpus& corpus,
                         const ExportOptions& opt, std::ostream& out) {
    const CitationGraph& g = wg.graph;
    if (partition.assignment.size() != g.node_count())
        throw std::invalid_argument("export_graph: partition does not cover the graph");
    if (opt.size_by != "pr" && opt.size_by != "hal")
        throw std::invalid_argument("export_graph: unknown size-by \"" + opt.size_by + "\"");

    const std::size_t n = g.node_count();
    std::vector<double> pr_score(n), hal_score(n);
    for (NodeIndex v = 0; v < n; ++v) {
        pr_score[v] = pr.at(g.id_of(v));
        hal_score[v] = hal.at(g.id_of(v));
    }
    auto sizes = detail::node_sizes(opt.size_by == "pr" ? pr_score : hal_score, opt.size_min,
                                    opt.size_max);
    auto title_of = [&](NodeIndex v) -> std::string {
        auto it = corpus.papers.find(g.id_of(v));
        return it == corpus.papers.end() ? g.id_of(v) : it->second.title;
    };

    switch (opt.format) {
        case ExportFormat::graphml: {
            out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
                << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
                << "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns\n"
                << "         http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
            const char* node_keys[][2] = {{"label", "string"}, {"year", "int"},
                                          {"cluster", "int"},  {"pr", "double"},
                                          {"hal", "double"},   {"size", "double"}};
            for (const auto& [name, type] : node_keys)
                out << "  <key id=\"" << name << "\" for=\"node\" attr.name=\"" << name
                    << "\" attr.type=\"" << type << "\"/>\n";
            out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
            out << "  <graph id=\"G\" edgedefault=\"directed\">\n";
            for (NodeIndex v = 0; v < n; ++v) {
                out << "    <node id=\"" << xml_escape(g.id_of(v)) << "\">\n"
                    << "      <data key=\"label\">" << xml_escape(title_of(v)) << "</data>\n"
                    << "      <data key=\"year\">" << g.year_of(v) << "</data>\n"
                    << "      <data key=\"cluster\">" << partition.assignment[v] << "</data>\n"
                    << "      <data key=\"pr\">" << format_double(pr_score[v]) << "</data>\n"
                    << "      <data key=\"hal\">" << format_double(hal_score[v]) << "</data>\n"
                    << "      <data key=\"size\">" << format_double(sizes[v]) << "</data>\n"
                    << "    </node>\n";
            }
            for (NodeIndex u = 0; u < n; ++u)
                for (NodeIndex v : g.out_neighbors(u))
                    out << "    <edge source=\"" << xml_escape(g.id_of(u)) << "\" target=\""
                        << xml_escape(g.id_of(v)) << "\">\n"
                        << "      <data key=\"weight\">" << format_double(wg.weight(u, v))
                        << "</data>\n    </edge>\n";
            out << "  </graph>\n</graphml>\n";
            break;
        }
        case ExportFormat::dot: {
            auto quote = [](const std::string& s) {
                std::string q = "\"";
                for (char c : s) {
                    if (c == '"' || c == '\\') q += '\\';
                    q += c;
                }
                return q + "\"";
            };
            out << "digraph citations {\n";
            for (NodeIndex v = 0; v < n; ++v)
                out << "  " << quote(g.id_of(v)) << " [width=" << format_double(sizes[v])
                    << ", label=" << quote(title_of(v)) << ", year=" << g.year_of(v)
                    << ", cluster=" << partition.assignment[v] << ", pr="
                    << format_double(pr_score[v]) << ", hal=" << format_double(hal_score[v])
                    << "];\n";
            for (NodeIndex u = 0; u < n; ++u)
                for (NodeIndex v : g.out_neighbors(u))
                    out << "  " << quote(g.id_of(u)) << " -> " << quote(g.id_of(v))
                        << " [weight=" << format_double(wg.weight(u, v)) << "];\n";
            out << "}\n";
            break;
        }
        case ExportFormat::json: {
            nlohmann::json doc;
            auto nodes = nlohmann::json::array();
            for (NodeIndex v = 0; v < n; ++v) {
                nlohmann::json jn;
                jn["id"] = g.id_of(v);
                jn["label"] = title_of(v);
                jn["year"] = g.year_of(v);
                jn["cluster"] = partition.assignment[v];
                jn["pr"] = pr_score[v];
                jn["hal"] = hal_score[v];
                jn["size"] = sizes[v];
                nodes.push_back(std::move(jn));
            }
            auto edges = nlohmann::json::array();
            for (NodeIndex u = 0; u < n; ++u)
                for (NodeIndex v : g.out_neighbors(u)) {
                    nlohmann::json je;
                    je["source"] = g.id_of(u);
                    je["target"] = g.id_of(v);
                    je["weight"] = wg.weight(u, v);
                    edges.push_back(std::move(je));
                }
            doc["nodes"] = std::move(nodes);
            doc["edges"] = std::move(edges);
            out << doc.dump(2) << '\n';
            break;
        }
    }
}

/// id<TAB>cluster, sorted by id.
inline void write_clusters_tsv(const CitationGraph& g, const ClusterPartition& partition,
                               std::ostream& out) {
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        out << g.id_of(v) << '\t' << partition.assignment[v] << '\n';
}

/// Reads the cluster table back against a graph with the same node set.
inline ClusterPartition read_clusters_tsv(const CitationGraph& g, std::istream& in) {
    ClusterPartition partition;
    partition.assignment.assign(g.node_count(), 0);
    std::vector<bool> seen(g.node_count(), false);
    std::string line;
    std::uint32_t max_cluster = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2) throw std::runtime_error("clusters: malformed TSV line: " + line);
        NodeIndex v = g.index_of(fields[0]);
        std::uint32_t c = static_cast<std::uint32_t>(std::stoul(fields[1]));
        partition.assignment[v] = c;
        seen[v] = true;
        max_cluster = std::max(max_cluster, c);
        ++rows;
    }
    if (rows != g.node_count() || std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::runtime_error("clusters: table does not cover the graph");
    partition.cluster_count = max_cluster + 1;
    return partition;
}

}  // namespace citemap
