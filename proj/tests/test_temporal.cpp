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

#include "citemap/temporal.hpp"
#include "oracles.hpp"

using namespace citemap;

namespace {

CitationHistogram hist_of(std::map<int, int> counts) {
    return CitationHistogram{"paper", std::move(counts)};
}

// target cited once by a paper published in each listed year
CitationGraph cited_in_years(const std::vector<int>& years) {
    std::vector<std::pair<std::string, int>> nodes{{"T", 1980}};
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < years.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "c%03zu", i);
        nodes.emplace_back(buf, years[i]);
        edges.emplace_back(buf, "T");
    }
    return CitationGraph::from_edges(std::move(nodes), edges);
}

}  // namespace

TEST_CASE("citation_histogram counts citing papers by publication year") {
    CitationGraph g = cited_in_years({2000, 2000, 2001});
    CitationHistogram h = citation_histogram(g, "T");
    CHECK(h.counts == std::map<int, int>{{2000, 2}, {2001, 1}});
    CHECK(h.total() == 3);
}

TEST_CASE("histogram of an uncited paper is empty") {
    CitationGraph g = cited_in_years({1999});
    CHECK(citation_histogram(g, "c000").empty());
    CHECK_THROWS_AS(citation_histogram(g, "nope"), std::runtime_error);
}

TEST_CASE("histogram totals equal in-degree on random graphs") {
    for (std::uint64_t seed = 300; seed < 305; ++seed) {
        auto g = oracle::random_graph(seed, {.nodes = 30, .max_out_degree = 4});
        for (const auto& id : g.ids()) {
            auto h = citation_histogram(g, id);
            CHECK(h.total() == static_cast<int>(g.in_neighbors(g.index_of(id)).size()));
        }
    }
}

TEST_CASE("max_year returns the peak, earliest year on ties") {
    CHECK(max_year(hist_of({{2000, 2}, {2001, 5}, {2002, 1}})) == std::pair{2001, 5});
    CHECK(max_year(hist_of({{2000, 3}, {2003, 3}})) == std::pair{2000, 3});
    CHECK(max_year(hist_of({{1999, 1}})) == std::pair{1999, 1});
    CHECK_THROWS_AS(max_year(hist_of({})), std::invalid_argument);
}

TEST_CASE("detect_periods: a single spike spans spike year plus the closing year") {
    auto periods = detect_periods(hist_of({{2005, 10}}));
    REQUIRE(periods.size() == 1);
    CHECK(periods[0] == CitationPeriod{2005, 2006, 2});
}

TEST_CASE("detect_periods: a flat run closes at the first silent year") {
    auto periods = detect_periods(
        hist_of({{2000, 5}, {2001, 5}, {2002, 5}, {2003, 5}, {2004, 5}}));
    REQUIRE(periods.size() == 1);
    CHECK(periods[0] == CitationPeriod{2000, 2005, 6});
}

TEST_CASE("detect_periods: two mountains give two periods") {
    std::map<int, int> counts;
    for (int y = 1999; y <= 2005; ++y) counts[y] = 8;  // first trend
    counts[2006] = 0;                                  // the gap
    for (int y = 2007; y <= 2010; ++y) counts[y] = 6;  // second trend
    counts[1999] = 10;                                 // peak; threshold = 1.0
    auto periods = detect_periods(hist_of(counts));
    REQUIRE(periods.size() == 2);
    CHECK(periods[0] == CitationPeriod{1999, 2006, 8});
    CHECK(periods[1] == CitationPeriod{2007, 2011, 5});
}

TEST_CASE("counts exactly at the threshold neither open nor close a period") {
    // peak 10 -> threshold 1.0; the year at exactly 1 keeps the period open
    auto one = detect_periods(hist_of({{2000, 10}, {2001, 1}, {2002, 5}}));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == CitationPeriod{2000, 2003, 4});
    // and a leading year at exactly the threshold does not open one
    auto lead = detect_periods(hist_of({{1998, 1}, {2000, 10}}));
    REQUIRE(lead.size() == 1);
    CHECK(lead[0].start_year == 2000);
}

TEST_CASE("every emitted period satisfies the scan and length rules") {
    for (std::uint64_t seed = 500; seed < 520; ++seed) {
        SplitMix64 rng(seed);
        std::map<int, int> counts;
        int years = 3 + static_cast<int>(rng.next_below(20));
        for (int i = 0; i < years; ++i)
            counts[1990 + static_cast<int>(rng.next_below(30))] +=
                static_cast<int>(rng.next_below(12));
        bool any = false;
        for (auto [y, c] : counts) any |= c > 0;
        if (!any) continue;
        CitationHistogram h = hist_of(counts);
        // drop zero-count entries the generator may have produced
        for (auto it = h.counts.begin(); it != h.counts.end();)
            it = it->second == 0 ? h.counts.erase(it) : std::next(it);
        auto periods = detect_periods(h);
        double t = 0.10 * max_year(h).second;
        REQUIRE(!periods.empty());
        int previous_end = -100000;
        for (const auto& p : periods) {
            CHECK(p.length == (p.last_year + 1) - p.start_year);
            CHECK(p.start_year <= p.last_year);
            CHECK(p.start_year > previous_end);  // disjoint and ordered
            auto at = [&](int y) {
                auto it = h.counts.find(y);
                return it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
            };
            CHECK(at(p.start_year) > t);
            CHECK(at(p.last_year) < t);
            previous_end = p.last_year;
        }
    }
}

TEST_CASE("citation_variance in citing_years mode") {
    CitationGraph constant = cited_in_years({2000, 2000, 2000});
    TemporalProfile p = build_profile(constant, "T", VarianceMode::citing_years);
    CHECK(p.s2 == 0.0);

    CitationGraph pair = cited_in_years({1999, 2001});
    TemporalProfile q = build_profile(pair, "T", VarianceMode::citing_years);
    CHECK(q.s2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("citation_variance is translation and permutation invariant") {
    std::vector<int> years{1991, 1993, 1993, 2000, 2004, 2004, 2004, 2011};
    auto s2_of = [](std::vector<int> ys) {
        CitationGraph g = cited_in_years(ys);
        return build_profile(g, "T", VarianceMode::citing_years).s2;
    };
    double base = s2_of(years);
    std::vector<int> shifted;
    for (int y : years) shifted.push_back(y + 7);
    CHECK(s2_of(shifted) == doctest::Approx(base).epsilon(1e-12));
    std::vector<int> permuted{2004, 1993, 2011, 2004, 1991, 2000, 2004, 1993};
    CHECK(s2_of(permuted) == base);
}

TEST_CASE("variance modes draw different samples") {
    // two bursts: 1999-2001 dense, 2008-2009 dense
    CitationGraph g = cited_in_years({1999, 1999, 2000, 2000, 2001, 2008, 2008, 2009});
    auto hist = citation_histogram(g, "T");
    auto periods = detect_periods(hist);
    REQUIRE(periods.size() == 2);

    double by_years = citation_variance(hist, periods, VarianceMode::citing_years);
    double in_periods = citation_variance(hist, periods, VarianceMode::citing_years_in_periods);
    double by_lengths = citation_variance(hist, periods, VarianceMode::period_lengths);

    CHECK(by_years == in_periods);  // every citing year falls inside a period here
    // period lengths are 4 and 3: mean 3.5, variance 0.25
    CHECK(by_lengths == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(by_years > 10.0);  // decade-scale spread

    // a single-trend paper has exactly one period, so period_lengths collapses to 0
    CitationGraph single = cited_in_years({2000, 2000, 2001});
    auto sh = citation_histogram(single, "T");
    CHECK(citation_variance(sh, detect_periods(sh), VarianceMode::period_lengths) == 0.0);
}

TEST_CASE("profiles of uncited papers are empty with zero variance") {
    CitationGraph g = cited_in_years({2000});
    TemporalProfile p = build_profile(g, "c000", VarianceMode::citing_years);
    CHECK(p.histogram.empty());
    CHECK(p.periods.empty());
    CHECK(p.s2 == 0.0);
}

TEST_CASE("annotate_weights puts the cited paper's variance on every in-edge") {
    CitationGraph g = CitationGraph::from_edges(
        {{"A", 1990}, {"X", 2000}, {"Y", 2004}}, {{"X", "A"}, {"Y", "A"}});
    auto profiles = build_profiles(g, VarianceMode::citing_years);
    WeightedGraph w = annotate_weights(g, profiles);
    NodeIndex a = g.index_of("A");
    CHECK(w.weight(g.index_of("X"), a) == doctest::Approx(4.0));  // years 2000, 2004
    CHECK(w.weight(g.index_of("Y"), a) == doctest::Approx(4.0));
    CHECK(w.s2_of(g.index_of("X")) == 0.0);
}

TEST_CASE("annotate_weights names the node missing a profile") {
    CitationGraph g = CitationGraph::from_edges({{"A", 1990}, {"X", 2000}}, {{"X", "A"}});
    std::map<std::string, TemporalProfile> none;
    CHECK_THROWS_WITH_AS(annotate_weights(g, none), doctest::Contains("A"), std::runtime_error);
}

TEST_CASE("profile JSON round-trips") {
    CitationGraph g = cited_in_years({1999, 1999, 2000, 2008});
    TemporalProfile p = build_profile(g, "T", VarianceMode::citing_years);
    TemporalProfile q = profile_from_json(profile_to_json(p));
    CHECK(q.owner == p.owner);
    CHECK(q.histogram.counts == p.histogram.counts);
    CHECK(q.my_year == p.my_year);
    CHECK(q.my_count == p.my_count);
    CHECK(q.periods == p.periods);
    CHECK(q.s2 == p.s2);
    CHECK(q.mode == p.mode);
}
