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

#include <doctest.h>

#include <sstream>

#include "citemap/corpus.hpp"
#include "citemap/graph.hpp"
#include "oracles.hpp"

using namespace citemap;

namespace {

// Five papers: A and B are cited by C; C is cited by D and E.
CitationGraph classic_five() {
    return CitationGraph::from_edges(
        {{"A", 1990}, {"B", 1991}, {"C", 1995}, {"D", 2000}, {"E", 2001}},
        {{"C", "A"}, {"C", "B"}, {"D", "C"}, {"E", "C"}});
}

}  // namespace

TEST_CASE("build_graph: one node per paper, deduplicated edges") {
    std::istringstream in(
        R"({"id": "A", "year": 1990, "cites": []}
{"id": "C", "year": 1995, "cites": ["A", "A"]}
)");
    Corpus corpus = parse_records(in, "<test>");
    CitationGraph g = build_graph(corpus);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.out_neighbors(g.index_of("C")).size() == 1);
    CHECK(g.in_neighbors(g.index_of("A")).size() == 1);
    CHECK(g.year_of(g.index_of("A")) == 1990);
}

TEST_CASE("the five-paper direct-citation fixture has five nodes and four links") {
    CitationGraph g = classic_five();
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 4);
    // orientation: citing -> cited
    CHECK(g.in_neighbors(g.index_of("A")) == std::vector<NodeIndex>{g.index_of("C")});
    CHECK(g.out_neighbors(g.index_of("D")) == std::vector<NodeIndex>{g.index_of("C")});
}

TEST_CASE("largest_component picks the bigger weak component") {
    CitationGraph g = CitationGraph::from_edges({{"a", 2000},
                                                 {"b", 2000},
                                                 {"c", 2000},
                                                 {"d", 2000},
                                                 {"x", 2000},
                                                 {"y", 2000}},
                                                {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"x", "y"}});
    CitationGraph lc = largest_component(g);
    CHECK(lc.node_count() == 4);
    CHECK(lc.edge_count() == 3);
    CHECK(lc.contains("a"));
    CHECK_FALSE(lc.contains("x"));
}

TEST_CASE("largest_component of a connected graph is the graph itself") {
    CitationGraph g = classic_five();
    CitationGraph lc = largest_component(g);
    CHECK(lc.node_count() == g.node_count());
    CHECK(lc.edge_count() == g.edge_count());
    CHECK(lc.ids() == g.ids());
}

TEST_CASE("component size ties go to the smallest node id") {
    CitationGraph g = CitationGraph::from_edges(
        {{"a", 2000}, {"b", 2000}, {"c", 2000}, {"p", 2000}, {"q", 2000}, {"r", 2000}},
        {{"p", "q"}, {"q", "r"}, {"a", "b"}, {"b", "c"}});
    CitationGraph lc = largest_component(g);
    CHECK(lc.node_count() == 3);
    CHECK(lc.contains("a"));
}

TEST_CASE("empty graph passes through largest_component") {
    CitationGraph g;
    CHECK(largest_component(g).node_count() == 0);
}

TEST_CASE("largest_component size matches a union-find oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto g = oracle::random_graph(seed, {.nodes = 40, .max_out_degree = 2});
        CHECK(largest_component(g).node_count() == oracle::largest_weak_component_size(g));
    }
}

TEST_CASE("co-citation links papers cited together") {
    UndirectedProjection p = co_citation_projection(classic_five());
    CHECK(p.weights.size() == 1);
    CHECK(p.weight("A", "B") == 1);
    CHECK(p.ids.size() == 5);  // nodes without projected edges are retained
}

TEST_CASE("bibliographic coupling links papers citing a common reference") {
    UndirectedProjection p = bibliographic_coupling_projection(classic_five());
    CHECK(p.weights.size() == 1);
    CHECK(p.weight("D", "E") == 1);
}

TEST_CASE("a paper citing one reference contributes no co-citation pairs") {
    CitationGraph g = CitationGraph::from_edges({{"A", 1990}, {"C", 1995}}, {{"C", "A"}});
    CHECK(co_citation_projection(g).weights.empty());
    CHECK(bibliographic_coupling_projection(g).weights.empty());
}

TEST_CASE("citing three references yields the full triangle") {
    CitationGraph g = CitationGraph::from_edges(
        {{"A", 1990}, {"B", 1991}, {"X", 1992}, {"C", 1995}},
        {{"C", "A"}, {"C", "B"}, {"C", "X"}});
    UndirectedProjection p = co_citation_projection(g);
    CHECK(p.weights.size() == 3);
    CHECK(p.weight("A", "B") == 1);
    CHECK(p.weight("A", "X") == 1);
    CHECK(p.weight("B", "X") == 1);
}

TEST_CASE("two shared references double the coupling weight") {
    CitationGraph g = CitationGraph::from_edges(
        {{"C1", 1990}, {"C2", 1991}, {"D", 2000}, {"E", 2001}},
        {{"D", "C1"}, {"D", "C2"}, {"E", "C1"}, {"E", "C2"}});
    UndirectedProjection p = bibliographic_coupling_projection(g);
    CHECK(p.weight("D", "E") == 2);
}

TEST_CASE("co-citation equals coupling on the reversed graph") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto g = oracle::random_graph(seed, {.nodes = 25, .max_out_degree = 4});
        auto co = co_citation_projection(g);
        auto coupled = bibliographic_coupling_projection(g.reversed());
        CHECK(co.weights == coupled.weights);
    }
}

TEST_CASE("undirected view merges antiparallel edges") {
    CitationGraph g = CitationGraph::from_edges({{"A", 1990}, {"B", 1991}},
                                                {{"A", "B"}, {"B", "A"}});
    UndirectedGraph u = undirected_view(g);
    CHECK(u.edge_count() == 1);
    CHECK(u.degree(0) == 1);
}

TEST_CASE("unknown node lookups throw") {
    CitationGraph g = classic_five();
    CHECK_THROWS_AS(g.index_of("nope"), std::runtime_error);
}
