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

/// Synthetic citation corpora with controlled temporal citation profiles:
/// a target paper can be cited in a tight burst, uniformly over a span of
/// years, or in two separate bursts. Useful for exercising the ranking
/// pipeline without a real bibliographic database.
///
/// Generation is reproducible across platforms and languages: years are
/// drawn with SplitMix64 (Steele, Lea & Flood's 64-bit mix generator) and
/// rejection-sampled into their range, so a seed pins the corpus bytes.
///
/// Besides the per-target citers (each citing exactly its target) a spec may
/// add shared citers that reference several targets at once. Splitting rank
/// mass across references is where variance weighting acts, so comparisons
/// between HAL and PageRank need at least a few of these.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "citemap/corpus.hpp"

namespace citemap {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("SplitMix64: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    /// Uniform integer in [lo, hi], inclusive.
    int next_in_range(int lo, int hi) {
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

struct BurstShape {
    int center_year = 0;
    int width = 0;  // years drawn uniformly from [center - width, center + width]
};

struct UniformShape {
    int start_year = 0;
    int end_year = 0;
};

struct BimodalShape {
    BurstShape first;
    BurstShape second;  // citers alternate between the two bursts
};

using ProfileShape = std::variant<BurstShape, UniformShape, BimodalShape>;

struct ProfileSpec {
    int total_citations = 0;
    ProfileShape shape;
    std::uint64_t seed = 0;
};

struct SynthTarget {
    PaperRecord paper;
    ProfileSpec profile;
};

/// A group of citers that each cite every listed target, all published in
/// the same year.
struct SharedCiterSpec {
    int count = 0;
    int year = 0;
    std::vector<std::string> targets;
};

namespace detail {

inline void check_year_range(int lo, int hi, const std::string& what) {
    if (lo > hi) throw std::invalid_argument("synth: empty year range in " + what);
    if (lo < kMinYear || hi > kMaxYear)
        throw std::invalid_argument("synth: years outside sanity bounds in " + what);
}

inline int draw_year(SplitMix64& rng, const ProfileShape& shape, int citer_index) {
    if (const auto* b = std::get_if<BurstShape>(&shape))
        return rng.next_in_range(b->center_year - b->width, b->center_year + b->width);
    if (const auto* u = std::get_if<UniformShape>(&shape))
        return rng.next_in_range(u->start_year, u->end_year);
    const auto& bi = std::get<BimodalShape>(shape);
    const BurstShape& b = citer_index % 2 == 0 ? bi.first : bi.second;
    return rng.next_in_range(b.center_year - b.width, b.center_year + b.width);
}

inline void validate_shape(const ProfileShape& shape, const std::string& target) {
    if (const auto* b = std::get_if<BurstShape>(&shape)) {
        if (b->width < 0) throw std::invalid_argument("synth: negative burst width for " + target);
        check_year_range(b->center_year - b->width, b->center_year + b->width, target);
    } else if (const auto* u = std::get_if<UniformShape>(&shape)) {
        check_year_range(u->start_year, u->end_year, target);
    } else {
        const auto& bi = std::get<BimodalShape>(shape);
        validate_shape(bi.first, target);
        validate_shape(bi.second, target);
    }
}

}  // namespace detail

/// Builds a corpus in which each target is cited by exactly
/// profile.total_citations synthetic papers whose publication years follow
/// the profile shape, plus any shared-citer groups. Deterministic per seed.
inline Corpus generate(const std::vector<SynthTarget>& targets,
                       const std::vector<SharedCiterSpec>& shared = {}) {
    Corpus corpus;
    corpus.provenance = {"<synthetic>", "jsonl", {}, {}};

    for (const auto& t : targets) {
        if (t.paper.id.empty()) throw std::invalid_argument("synth: target with empty id");
        if (t.profile.total_citations < 0)
            throw std::invalid_argument("synth: negative citation count for " + t.paper.id);
        detail::validate_shape(t.profile.shape, t.paper.id);
        if (corpus.papers.count(t.paper.id))
            throw std::invalid_argument("synth: duplicate target id " + t.paper.id);
        corpus.papers.emplace(t.paper.id, t.paper);
    }

    for (const auto& t : targets) {
        SplitMix64 rng(t.profile.seed);
        for (int i = 0; i < t.profile.total_citations; ++i) {
            PaperRecord citer;
            char suffix[16];
            std::snprintf(suffix, sizeof(suffix), "-c%04d", i);
            citer.id = t.paper.id + suffix;
            citer.title = "Citing paper " + std::to_string(i) + " of " + t.paper.id;
            citer.year = detail::draw_year(rng, t.profile.shape, i);
            citer.keywords = {"synthetic"};
            if (corpus.papers.count(citer.id))
                throw std::invalid_argument("synth: citer id collision at " + citer.id);
            corpus.citations.push_back({citer.id, t.paper.id});
            corpus.papers.emplace(citer.id, std::move(citer));
        }
    }

    int group_index = 0;
    for (const auto& s : shared) {
        if (s.count < 0) throw std::invalid_argument("synth: negative shared-citer count");
        detail::check_year_range(s.year, s.year, "shared citers");
        if (s.targets.empty())
            throw std::invalid_argument("synth: shared citers with no targets");
        for (const auto& target : s.targets)
            if (!corpus.papers.count(target))
                throw std::invalid_argument("synth: shared citers reference unknown target " + target);
        for (int i = 0; i < s.count; ++i) {
            PaperRecord citer;
            char name[32];
            std::snprintf(name, sizeof(name), "shared-%02d-c%04d", group_index, i);
            citer.id = name;
            citer.title = "Shared citing paper " + std::to_string(i);
            citer.year = s.year;
            citer.keywords = {"synthetic"};
            if (corpus.papers.count(citer.id))
                throw std::invalid_argument("synth: citer id collision at " + citer.id);
            for (const auto& target : s.targets) corpus.citations.push_back({citer.id, target});
            corpus.papers.emplace(citer.id, std::move(citer));
        }
        ++group_index;
    }

    std::sort(corpus.citations.begin(), corpus.citations.end());
    return corpus;
}

/// Spec file schema:
/// {
///   "seed": 42,
///   "targets": [
///     {"id": "T1", "year": 1990, "title"?, "keywords"?, "seed"?,
///      "citations": 100,
///      "shape": {"kind": "burst", "center": 2005, "width": 1}
///              | {"kind": "uniform", "start": 1990, "end": 2010}
///              | {"kind": "bimodal", "first": {...burst...}, "second": {...burst...}}}
///   ],
///   "shared_citers"?: [{"count": 10, "year": 2005, "cites": ["T1", "T2"]}]
/// }
/// A target without its own seed uses file seed + its position.
struct SynthSpecFile {
    std::vector<SynthTarget> targets;
    std::vector<SharedCiterSpec> shared;
};

inline SynthSpecFile parse_synth_spec(const nlohmann::json& j) {
    SynthSpecFile spec;
    const std::uint64_t file_seed = j.value("seed", 0ULL);

    auto parse_burst = [](const nlohmann::json& b) {
        return BurstShape{b.at("center").get<int>(), b.at("width").get<int>()};
    };

    std::size_t index = 0;
    for (const auto& t : j.at("targets")) {
        SynthTarget target;
        target.paper.id = t.at("id").get<std::string>();
        target.paper.year = t.at("year").get<int>();
        target.paper.title = t.value("title", target.paper.id);
        target.paper.keywords = t.value("keywords", std::vector<std::string>{"synthetic"});
        target.profile.total_citations = t.at("citations").get<int>();
        target.profile.seed = t.contains("seed") ? t["seed"].get<std::uint64_t>()
                                                 : file_seed + index;
        const auto& shape = t.at("shape");
        const std::string kind = shape.at("kind").get<std::string>();
        if (kind == "burst")
            target.profile.shape = parse_burst(shape);
        else if (kind == "uniform")
            target.profile.shape = UniformShape{shape.at("start").get<int>(),
                                                shape.at("end").get<int>()};
        else if (kind == "bimodal")
            target.profile.shape = BimodalShape{parse_burst(shape.at("first")),
                                                parse_burst(shape.at("second"))};
        else
            throw std::invalid_argument("synth: unknown shape kind \"" + kind + "\"");
        spec.targets.push_back(std::move(target));
        ++index;
    }

    if (j.contains("shared_citers"))
        for (const auto& s : j["shared_citers"]) {
            SharedCiterSpec group;
            group.count = s.at("count").get<int>();
            group.year = s.at("year").get<int>();
            group.targets = s.at("cites").get<std::vector<std::string>>();
            spec.shared.push_back(std::move(group));
        }
    return spec;
}

inline SynthSpecFile parse_synth_spec(std::istream& in) {
    nlohmann::json j;
    in >> j;
    return parse_synth_spec(j);
}

}  // namespace citemap
