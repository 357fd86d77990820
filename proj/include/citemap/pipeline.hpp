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

/// Staged pipeline behind the command line tool:
///   ingest -> largest component -> cluster -> temporal -> rank -> report/export
/// Each stage writes its artifact under the output directory and later
/// stages read those artifacts back, so stages can run separately:
///   corpus.jsonl, clusters.tsv, profiles.json, pagerank.tsv, hal.tsv,
///   report.tsv, compare.tsv, graph.{graphml|dot|json}
/// Identical configuration and inputs give byte-identical artifacts.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "citemap/clustering.hpp"
#include "citemap/corpus.hpp"
#include "citemap/graph.hpp"
#include "citemap/ranking.hpp"
#include "citemap/report.hpp"
#include "citemap/synth.hpp"
#include "citemap/temporal.hpp"

namespace citemap {

struct PipelineConfig {
    std::string input;
    std::string format = "jsonl";  // jsonl | tsv
    bool keyword_filter = true;
    std::string cluster_method = "fast";  // fast | gn
    VarianceMode variance_mode = VarianceMode::citing_years;
    double damping = 0.85;
    double tolerance = 1e-10;
    int max_iterations = 200;
    int top_k = 5;
    std::string out_dir = ".";
    std::string export_format = "graphml";
    std::string size_by = "hal";
    std::uint64_t seed = 42;
    bool seed_set = false;  // true when --seed was given explicitly

    /// Rejects bad parameters before any artifact is written.
    void validate() const {
        RankOptions{damping, tolerance, max_iterations}.validate();
        if (format != "jsonl" && format != "tsv")
            throw std::invalid_argument("pipeline: unknown input format \"" + format + "\"");
        if (cluster_method != "fast" && cluster_method != "gn")
            throw std::invalid_argument("pipeline: unknown cluster method \"" + cluster_method + "\"");
        if (top_k < 1) throw std::invalid_argument("pipeline: top-k must be >= 1");
        if (size_by != "pr" && size_by != "hal")
            throw std::invalid_argument("pipeline: size-by must be pr or hal");
        export_format_from_string(export_format);
    }

    RankOptions rank_options() const { return {damping, tolerance, max_iterations}; }
};

namespace detail {

inline std::filesystem::path artifact(const PipelineConfig& cfg, const std::string& name) {
    return std::filesystem::path(cfg.out_dir) / name;
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pipeline: cannot write " + path.string());
    out << bytes;
}

inline std::ifstream open_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pipeline: cannot read " + path.string());
    return in;
}

}  // namespace detail

/// Loads a corpus from disk. For the tsv format the input names a directory
/// holding records.tsv and edges.tsv.
inline Corpus load_corpus(const std::string& input, const std::string& format) {
    if (format == "tsv") {
        auto dir = std::filesystem::path(input);
        auto records = detail::open_file(dir / "records.tsv");
        auto edges = detail::open_file(dir / "edges.tsv");
        return parse_records_tsv(records, edges, input);
    }
    auto in = detail::open_file(input);
    return parse_records(in, input);
}

/// Parses, optionally filters, and writes corpus.jsonl. Returns the corpus.
inline Corpus run_ingest(const PipelineConfig& cfg, std::ostream& log = std::cout) {
    cfg.validate();
    Corpus corpus = load_corpus(cfg.input, cfg.format);
    const auto& stats = corpus.provenance.stats;
    log << "ingest: " << corpus.papers.size() << " papers pre-filter, " << corpus.citations.size()
        << " citations (" << stats.records_dropped << " records and " << stats.citations_dropped
        << " citations dropped)\n";
    if (cfg.keyword_filter) {
        std::size_t before = corpus.papers.size();
        corpus = filter_keywordless(corpus);
        log << "ingest: keyword filter kept " << corpus.papers.size() << " of " << before
            << " papers\n";
    }
    std::filesystem::create_directories(cfg.out_dir);
    detail::write_file(detail::artifact(cfg, "corpus.jsonl"), serialize_jsonl(corpus));
    return corpus;
}

inline Corpus read_corpus_artifact(const PipelineConfig& cfg) {
    auto in = detail::open_file(detail::artifact(cfg, "corpus.jsonl"));
    return parse_records(in, detail::artifact(cfg, "corpus.jsonl").string());
}

/// The analysis graph: direct-citation graph restricted to its largest
/// weakly connected component.
inline CitationGraph analysis_graph(const Corpus& corpus) {
    return largest_component(build_graph(corpus));
}

inline ClusterPartition run_cluster(const PipelineConfig& cfg, const Corpus& corpus,
                                    std::ostream& log = std::cout) {
    cfg.validate();
    CitationGraph graph = analysis_graph(corpus);
    UndirectedGraph undirected = undirected_view(graph);
    ClusterPartition partition = cfg.cluster_method == "gn" ? girvan_newman(undirected)
                                                            : fast_greedy(undirected);
    log << "cluster: " << graph.node_count() << " nodes, " << graph.edge_count()
        << " edges in largest component; " << partition.cluster_count << " clusters, modularity "
        << format_double(partition.modularity, 6) << " (" << to_string(partition.method) << ")\n";
    std::filesystem::create_directories(cfg.out_dir);
    std::ostringstream os;
    write_clusters_tsv(graph, partition, os);
    detail::write_file(detail::artifact(cfg, "clusters.tsv"), os.str());
    return partition;
}

struct RankArtifacts {
    std::map<std::string, TemporalProfile> profiles;
    WeightedGraph weighted;
    RankVector pagerank;
    RankVector hal;
};

inline RankArtifacts run_rank(const PipelineConfig& cfg, const Corpus& corpus,
                              std::ostream& log = std::cout) {
    cfg.validate();
    RankArtifacts art;
    CitationGraph graph = analysis_graph(corpus);
    art.profiles = build_profiles(graph, cfg.variance_mode);
    art.weighted = annotate_weights(graph, art.profiles);
    art.pagerank = citemap::pagerank(graph, cfg.rank_options());
    art.hal = hal_rank(art.weighted, cfg.rank_options());

    for (const auto* rank : {&art.pagerank, &art.hal})
        log << "rank: " << rank->algorithm << " " << (rank->converged ? "converged" : "DID NOT converge")
            << " after " << rank->iterations << " iterations (residual "
            << format_double(rank->residual, 3) << ")\n";

    std::filesystem::create_directories(cfg.out_dir);
    auto profiles = nlohmann::json::array();
    for (const auto& [id, profile] : art.profiles) profiles.push_back(profile_to_json(profile));
    detail::write_file(detail::artifact(cfg, "profiles.json"), profiles.dump(1) + "\n");

    std::ostringstream pr_os, hal_os;
    write_rank_tsv(art.pagerank, pr_os);
    write_rank_tsv(art.hal, hal_os);
    detail::write_file(detail::artifact(cfg, "pagerank.tsv"), pr_os.str());
    detail::write_file(detail::artifact(cfg, "hal.tsv"), hal_os.str());
    return art;
}

inline std::map<std::string, TemporalProfile> read_profiles_artifact(const PipelineConfig& cfg) {
    auto in = detail::open_file(detail::artifact(cfg, "profiles.json"));
    nlohmann::json j;
    in >> j;
    std::map<std::string, TemporalProfile> profiles;
    for (const auto& entry : j) {
        TemporalProfile p = profile_from_json(entry);
        profiles.emplace(p.owner, std::move(p));
    }
    return profiles;
}

/// Builds report.tsv and compare.tsv from previously written artifacts.
inline void run_report(const PipelineConfig& cfg, const Corpus& corpus,
                       std::ostream& log = std::cout) {
    cfg.validate();
    CitationGraph graph = analysis_graph(corpus);
    auto clusters_in = detail::open_file(detail::artifact(cfg, "clusters.tsv"));
    ClusterPartition partition = read_clusters_tsv(graph, clusters_in);
    auto pr_in = detail::open_file(detail::artifact(cfg, "pagerank.tsv"));
    auto hal_in = detail::open_file(detail::artifact(cfg, "hal.tsv"));
    RankVector pr = read_rank_tsv(pr_in);
    RankVector hal = read_rank_tsv(hal_in);
    auto profiles = read_profiles_artifact(cfg);

    KeyPaperReport report =
        top_k_per_cluster(graph, partition, pr, hal, profiles, corpus, cfg.top_k, "hal");
    std::ostringstream report_os;
    write_report_tsv(report, report_os);
    detail::write_file(detail::artifact(cfg, "report.tsv"), report_os.str());

    auto comparison = compare_scores(pr, hal, profiles);
    std::ostringstream cmp_os;
    write_comparison_tsv(comparison, cmp_os);
    detail::write_file(detail::artifact(cfg, "compare.tsv"), cmp_os.str());

    log << "report: top " << cfg.top_k << " papers for " << partition.cluster_count
        << " clusters\n";
}

inline void run_export(const PipelineConfig& cfg, const Corpus& corpus,
                       std::ostream& log = std::cout) {
    cfg.validate();
    CitationGraph graph = analysis_graph(corpus);
    auto clusters_in = detail::open_file(detail::artifact(cfg, "clusters.tsv"));
    ClusterPartition partition = read_clusters_tsv(graph, clusters_in);
    auto pr_in = detail::open_file(detail::artifact(cfg, "pagerank.tsv"));
    auto hal_in = detail::open_file(detail::artifact(cfg, "hal.tsv"));
    RankVector pr = read_rank_tsv(pr_in);
    RankVector hal = read_rank_tsv(hal_in);
    WeightedGraph weighted = annotate_weights(graph, read_profiles_artifact(cfg));

    ExportOptions opt;
    opt.format = export_format_from_string(cfg.export_format);
    opt.size_by = cfg.size_by;
    std::ostringstream os;
    export_graph(weighted, partition, pr, hal, corpus, opt, os);
    const std::string name = "graph." + cfg.export_format;
    detail::write_file(detail::artifact(cfg, name), os.str());
    log << "export: wrote " << detail::artifact(cfg, name).string() << "\n";
}

/// Generates a corpus from a JSON spec file and writes corpus.jsonl.
inline Corpus run_synth(const PipelineConfig& cfg, std::ostream& log = std::cout) {
    cfg.validate();
    auto in = detail::open_file(cfg.input);
    nlohmann::json j;
    in >> j;
    if (cfg.seed_set || !j.contains("seed")) j["seed"] = cfg.seed;
    SynthSpecFile spec = parse_synth_spec(j);
    Corpus corpus = generate(spec.targets, spec.shared);
    std::filesystem::create_directories(cfg.out_dir);
    detail::write_file(detail::artifact(cfg, "corpus.jsonl"), serialize_jsonl(corpus));
    log << "synth: " << corpus.papers.size() << " papers, " << corpus.citations.size()
        << " citations\n";
    return corpus;
}

/// Full pipeline; prints a one-line summary per stage.
inline void run_all(const PipelineConfig& cfg, std::ostream& log = std::cout) {
    cfg.validate();
    Corpus corpus = run_ingest(cfg, log);
    run_cluster(cfg, corpus, log);
    run_rank(cfg, corpus, log);
    run_report(cfg, corpus, log);
    run_export(cfg, corpus, log);
}

}  // namespace citemap
