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

/// Citation-year analysis per paper: the histogram of the citing papers'
/// publication years, its peak (MaxYear), the citation periods found by a
/// 10%-of-peak threshold scan, and the variance S2 that ends up as the edge
/// weight of every citation pointing at the paper.
///
/// Period detection walks the years in ascending order with threshold
/// T = 0.10 * MaxYear count: a period opens at the first year whose count
/// strictly exceeds T (StartYear) and closes at the next year whose count is
/// strictly below T (LastYear); counts exactly equal to T neither open nor
/// close. The scan continues past the close, so a histogram with several
/// separate mountains yields several periods, and it runs one year past the
/// last citation so every opened period closes. A period's length is
/// (LastYear + 1) - StartYear.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "citemap/graph.hpp"

namespace citemap {

struct CitationHistogram {
    std::string owner;
    std::map<int, int> counts;  // year -> citations received that year

    int total() const {
        int t = 0;
        for (auto [y, c] : counts) t += c;
        return t;
    }
    bool empty() const { return counts.empty(); }
};

struct CitationPeriod {
    int start_year = 0;
    int last_year = 0;
    int length = 0;  // (last_year + 1) - start_year

    bool operator==(const CitationPeriod&) const = default;
};

enum class VarianceMode { citing_years, citing_years_in_periods, period_lengths };

inline const char* to_string(VarianceMode m) {
    switch (m) {
        case VarianceMode::citing_years: return "citing_years";
        case VarianceMode::citing_years_in_periods: return "citing_years_in_periods";
        default: return "period_lengths";
    }
}

inline VarianceMode variance_mode_from_string(const std::string& s) {
    if (s == "citing_years") return VarianceMode::citing_years;
    if (s == "citing_years_in_periods") return VarianceMode::citing_years_in_periods;
    if (s == "period_lengths") return VarianceMode::period_lengths;
    throw std::invalid_argument("unknown variance mode \"" + s + "\"");
}

struct TemporalProfile {
    std::string owner;
    CitationHistogram histogram;
    int my_year = 0;   // year of the histogram peak; meaningless if histogram empty
    int my_count = 0;  // peak count; 0 iff histogram empty
    std::vector<CitationPeriod> periods;
    double s2 = 0.0;
    VarianceMode mode = VarianceMode::citing_years;
};

/// counts[y] = number of papers citing `node` that were published in year y.
inline CitationHistogram citation_histogram(const CitationGraph& g, const std::string& node) {
    NodeIndex v = g.index_of(node);  // throws on unknown node
    CitationHistogram hist;
    hist.owner = node;
    for (NodeIndex u : g.in_neighbors(v)) ++hist.counts[g.year_of(u)];
    return hist;
}

/// The year with the largest count and that count; an earlier year wins ties.
inline std::pair<int, int> max_year(const CitationHistogram& hist) {
    if (hist.empty())
        throw std::invalid_argument("max_year: empty histogram for \"" + hist.owner + "\"");
    auto best = hist.counts.begin();
    for (auto it = hist.counts.begin(); it != hist.counts.end(); ++it)
        if (it->second > best->second) best = it;
    return {best->first, best->second};
}

inline std::vector<CitationPeriod> detect_periods(const CitationHistogram& hist) {
    if (hist.empty())
        throw std::invalid_argument("detect_periods: empty histogram for \"" + hist.owner + "\"");
    const double threshold = 0.10 * max_year(hist).second;

    const int first = hist.counts.begin()->first;
    const int last = hist.counts.rbegin()->first;

    std::vector<CitationPeriod> periods;
    bool open = false;
    int start = 0;
    for (int year = first; year <= last + 1; ++year) {
        auto it = hist.counts.find(year);
        const double count = it == hist.counts.end() ? 0.0 : it->second;
        if (!open && count > threshold) {
            open = true;
            start = year;
        } else if (open && count < threshold) {
            periods.push_back({start, year, (year + 1) - start});
            open = false;
        }
    }
    // the peak year itself exceeds the threshold, so at least one period
    // opened, and the year past the histogram closed anything still open
    return periods;
}

/// Population variance (divide by n) of a sample; fewer than two values
/// yield 0.
inline double population_variance(const std::vector<double>& sample) {
    if (sample.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(sample.size());
    double acc = 0.0;
    for (double x : sample) acc += (mean - x) * (mean - x);
    return acc / static_cast<double>(sample.size());
}

/// S2 of a paper's citation history. The sample depends on the mode:
/// citing_years takes every citing paper's publication year,
/// citing_years_in_periods keeps only years inside a detected period
/// (inclusive of its boundary years), period_lengths takes the period
/// lengths themselves. Degenerate samples give 0.
inline double citation_variance(const CitationHistogram& hist,
                                const std::vector<CitationPeriod>& periods, VarianceMode mode) {
    std::vector<double> sample;
    switch (mode) {
        case VarianceMode::citing_years:
            for (auto [year, count] : hist.counts)
                sample.insert(sample.end(), count, static_cast<double>(year));
            break;
        case VarianceMode::citing_years_in_periods:
            for (auto [year, count] : hist.counts) {
                bool inside = std::any_of(periods.begin(), periods.end(), [&](const CitationPeriod& p) {
                    return p.start_year <= year && year <= p.last_year;
                });
                if (inside) sample.insert(sample.end(), count, static_cast<double>(year));
            }
            break;
        case VarianceMode::period_lengths:
            for (const auto& p : periods) sample.push_back(static_cast<double>(p.length));
            break;
    }
    return population_variance(sample);
}

/// Full temporal profile of one paper. Papers nobody cites get an empty
/// histogram, no periods and S2 = 0.
inline TemporalProfile build_profile(const CitationGraph& g, const std::string& node,
                                     VarianceMode mode) {
    TemporalProfile p;
    p.owner = node;
    p.mode = mode;
    p.histogram = citation_histogram(g, node);
    if (!p.histogram.empty()) {
        std::tie(p.my_year, p.my_count) = max_year(p.histogram);
        p.periods = detect_periods(p.histogram);
        p.s2 = citation_variance(p.histogram, p.periods, mode);
    }
    return p;
}

inline std::map<std::string, TemporalProfile> build_profiles(const CitationGraph& g,
                                                             VarianceMode mode) {
    std::map<std::string, TemporalProfile> out;
    for (const auto& id : g.ids()) out.emplace(id, build_profile(g, id, mode));
    return out;
}

/// Attaches each paper's S2 to all edges pointing at it. Every cited node
/// must have a profile; papers nobody cites need none.
inline WeightedGraph annotate_weights(const CitationGraph& g,
                                      const std::map<std::string, TemporalProfile>& profiles) {
    WeightedGraph w{g, std::vector<double>(g.node_count(), 0.0)};
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (g.in_neighbors(v).empty()) continue;
        auto it = profiles.find(g.id_of(v));
        if (it == profiles.end())
            throw std::runtime_error("annotate_weights: no profile for cited paper \"" +
                                     g.id_of(v) + "\"");
        w.node_s2[v] = it->second.s2;
    }
    return w;
}

inline nlohmann::json profile_to_json(const TemporalProfile& p) {
    nlohmann::json j;
    j["id"] = p.owner;
    auto hist = nlohmann::json::object();
    for (auto [year, count] : p.histogram.counts) hist[std::to_string(year)] = count;
    j["histogram"] = std::move(hist);
    if (p.histogram.empty())
        j["my"] = nullptr;
    else
        j["my"] = nlohmann::json::array({p.my_year, p.my_count});
    auto periods = nlohmann::json::array();
    for (const auto& per : p.periods)
        periods.push_back(nlohmann::json::array({per.start_year, per.last_year, per.length}));
    j["periods"] = std::move(periods);
    j["s2"] = p.s2;
    j["mode"] = to_string(p.mode);
    return j;
}

inline TemporalProfile profile_from_json(const nlohmann::json& j) {
    TemporalProfile p;
    p.owner = j.at("id").get<std::string>();
    p.histogram.owner = p.owner;
    for (const auto& [year, count] : j.at("histogram").items())
        p.histogram.counts[std::stoi(year)] = count.get<int>();
    if (!j.at("my").is_null()) {
        p.my_year = j["my"][0].get<int>();
        p.my_count = j["my"][1].get<int>();
    }
    for (const auto& per : j.at("periods"))
        p.periods.push_back({per[0].get<int>(), per[1].get<int>(), per[2].get<int>()});
    p.s2 = j.at("s2").get<double>();
    p.mode = variance_mode_from_string(j.at("mode").get<std::string>());
    return p;
}

}  // namespace citemap
