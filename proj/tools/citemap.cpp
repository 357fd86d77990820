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

// Command line driver. `citemap run` executes the whole pipeline; the other
// subcommands run single stages against the artifacts in --out-dir.

#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "citemap/pipeline.hpp"

namespace {

struct StageSpec {
    CLI::App* app = nullptr;
    std::function<void(const citemap::PipelineConfig&)> body;
};

void add_input_flags(CLI::App* app, citemap::PipelineConfig& cfg) {
    app->add_option("--input", cfg.input, "Input file (jsonl) or directory (tsv)")->required();
    app->add_option("--format", cfg.format, "Input format")
        ->check(CLI::IsMember({"jsonl", "tsv"}));
}

void add_rank_flags(CLI::App* app, citemap::PipelineConfig& cfg) {
    std::map<std::string, citemap::VarianceMode> modes{
        {"citing_years", citemap::VarianceMode::citing_years},
        {"citing_years_in_periods", citemap::VarianceMode::citing_years_in_periods},
        {"period_lengths", citemap::VarianceMode::period_lengths}};
    app->add_option("--variance-mode", cfg.variance_mode, "Variance sample used as edge weight")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    app->add_option("--damping", cfg.damping, "Damping factor, strictly between 0 and 1");
    app->add_option("--tol", cfg.tolerance, "Convergence tolerance on the L1 change");
    app->add_option("--max-iter", cfg.max_iterations, "Iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Key-paper extraction from citation networks"};
    app.require_subcommand(1);

    citemap::PipelineConfig cfg;
    bool no_keyword_filter = false;

    std::vector<StageSpec> stages;

    auto* run = app.add_subcommand("run", "Full pipeline: ingest, cluster, rank, report, export");
    add_input_flags(run, cfg);
    add_rank_flags(run, cfg);
    run->add_flag("--no-keyword-filter", no_keyword_filter, "Keep papers without keywords");
    run->add_option("--cluster-method", cfg.cluster_method, "Community detection method")
        ->check(CLI::IsMember({"gn", "fast"}));
    run->add_option("--top-k", cfg.top_k, "Key papers per cluster");
    run->add_option("--export", cfg.export_format, "Graph export format")
        ->check(CLI::IsMember({"graphml", "dot", "json"}));
    run->add_option("--size-by", cfg.size_by, "Score driving node size")
        ->check(CLI::IsMember({"pr", "hal"}));
    stages.push_back({run, [&](const citemap::PipelineConfig& c) { citemap::run_all(c); }});

    auto* ingest = app.add_subcommand("ingest", "Parse and validate a corpus into corpus.jsonl");
    add_input_flags(ingest, cfg);
    ingest->add_flag("--no-keyword-filter", no_keyword_filter, "Keep papers without keywords");
    stages.push_back({ingest, [&](const citemap::PipelineConfig& c) { citemap::run_ingest(c); }});

    auto* cluster = app.add_subcommand("cluster", "Cluster the largest component into clusters.tsv");
    add_input_flags(cluster, cfg);
    cluster->add_option("--cluster-method", cfg.cluster_method, "Community detection method")
        ->check(CLI::IsMember({"gn", "fast"}));
    stages.push_back({cluster, [&](const citemap::PipelineConfig& c) {
                          citemap::run_cluster(c, citemap::load_corpus(c.input, c.format));
                      }});

    auto* rank = app.add_subcommand(
        "rank", "Temporal profiles plus both rankings: profiles.json, pagerank.tsv, hal.tsv");
    add_input_flags(rank, cfg);
    add_rank_flags(rank, cfg);
    stages.push_back({rank, [&](const citemap::PipelineConfig& c) {
                          citemap::run_rank(c, citemap::load_corpus(c.input, c.format));
                      }});

    auto* report = app.add_subcommand(
        "report", "Key papers and score comparison from prior artifacts: report.tsv, compare.tsv");
    add_input_flags(report, cfg);
    report->add_option("--top-k", cfg.top_k, "Key papers per cluster");
    stages.push_back({report, [&](const citemap::PipelineConfig& c) {
                          citemap::run_report(c, citemap::load_corpus(c.input, c.format));
                      }});

    auto* exp = app.add_subcommand("export", "Graph file with scores and cluster attributes");
    add_input_flags(exp, cfg);
    exp->add_option("--export", cfg.export_format, "Graph export format")
        ->check(CLI::IsMember({"graphml", "dot", "json"}));
    exp->add_option("--size-by", cfg.size_by, "Score driving node size")
        ->check(CLI::IsMember({"pr", "hal"}));
    stages.push_back({exp, [&](const citemap::PipelineConfig& c) {
                          citemap::run_export(c, citemap::load_corpus(c.input, c.format));
                      }});

    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus from a JSON spec file");
    synth->add_option("--input", cfg.input, "Synthesis spec file")->required();
    auto* seed_opt = synth->add_option("--seed", cfg.seed, "Override the spec file seed");
    stages.push_back({synth, [&](const citemap::PipelineConfig& c) { citemap::run_synth(c); }});

    for (auto& stage : stages)
        stage.app->add_option("--out-dir", cfg.out_dir, "Directory for artifacts");

    CLI11_PARSE(app, argc, argv);

    cfg.keyword_filter = !no_keyword_filter;
    cfg.seed_set = seed_opt->count() > 0;

    try {
        for (auto& stage : stages)
            if (stage.app->parsed()) {
                cfg.validate();  // fail before touching the output directory
                stage.body(cfg);
            }
    } catch (const std::exception& e) {
        for (auto& stage : stages)
            if (stage.app->parsed())
                std::cerr << "citemap " << stage.app->get_name() << ": error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
