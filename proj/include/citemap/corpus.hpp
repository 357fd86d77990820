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

/// Parsing of citation-record exports into a validated in-memory corpus.
///
/// Two formats are supported:
///  - JSON lines: one record object per line,
///      {"id": str, "title": str, "authors": [str], "year": int,
///       "keywords": [str], "venue": str?, "cites": [str]}
///  - TSV pair: records.tsv with columns
///      id<TAB>year<TAB>title<TAB>authors(;-joined)<TAB>keywords(;-joined)
///    plus edges.tsv with columns citing_id<TAB>cited_id.
///
/// Malformed input is dropped and counted, never silently ignored. A
/// duplicate record id is a hard error. Citations whose endpoints are not in
/// the surviving record set are dropped as dangling; self-citations are
/// dropped as noise. Parsing is deterministic: the same bytes produce the
/// same corpus, statistics included.

#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "citemap/util.hpp"

namespace citemap {

struct PaperRecord {
    std::string id;
    std::string title;
    std::vector<std::string> authors;
    int year = 0;
    std::vector<std::string> keywords;
    std::optional<std::string> venue;

    bool operator==(const PaperRecord&) const = default;
};

struct CitationRecord {
    std::string citing_id;
    std::string cited_id;

    auto operator<=>(const CitationRecord&) const = default;
};

struct ParseStats {
    std::size_t records_read = 0;
    std::size_t records_dropped = 0;
    std::size_t citations_read = 0;
    std::size_t citations_dropped = 0;
    std::map<std::string, std::size_t> drop_reasons;

    bool operator==(const ParseStats&) const = default;
};

struct Provenance {
    std::string source;
    std::string format;
    ParseStats stats;
    std::vector<std::string> filters;  // post-parse filters applied, in order
};

struct Corpus {
    std::map<std::string, PaperRecord> papers;
    std::vector<CitationRecord> citations;  // sorted by (citing, cited)
    Provenance provenance;
};

enum class CorpusFormat { jsonl, tsv };

inline const char* to_string(CorpusFormat f) {
    return f == CorpusFormat::jsonl ? "jsonl" : "tsv";
}

// Publication years outside this window are treated as data errors.
inline constexpr int kMinYear = 1000;
inline constexpr int kMaxYear = 3000;

namespace detail {

inline void drop_record(ParseStats& stats, const std::string& reason) {
    ++stats.records_dropped;
    ++stats.drop_reasons[reason];
}

// Validates collected citations against the surviving record set, counts the
// drops, sorts, and fills provenance. Shared tail of both parsers.
inline Corpus finish_corpus(std::map<std::string, PaperRecord> papers,
                            std::vector<CitationRecord> pending, ParseStats stats,
                            std::string source, CorpusFormat format) {
    if (papers.empty())
        throw std::runtime_error("corpus: no valid records in " + source);

    Corpus corpus;
    corpus.papers = std::move(papers);
    stats.citations_read = pending.size();
    for (auto& c : pending) {
        if (c.citing_id == c.cited_id) {
            ++stats.citations_dropped;
            ++stats.drop_reasons["self_citation"];
            continue;
        }
        if (!corpus.papers.count(c.citing_id) || !corpus.papers.count(c.cited_id)) {
            ++stats.citations_dropped;
            ++stats.drop_reasons["dangling_citation"];
            continue;
        }
        corpus.citations.push_back(std::move(c));
    }
    std::sort(corpus.citations.begin(), corpus.citations.end());
    corpus.provenance = Provenance{std::move(source), to_string(format), std::move(stats), {}};
    return corpus;
}

}  // namespace detail

/// Parses the JSON-lines format. Throws on an unreadable stream, on a
/// duplicate record id (named in the message), and when no valid record
/// survives.
inline Corpus parse_records(std::istream& in, const std::string& source = "<stream>") {
    if (!in) throw std::runtime_error("corpus: cannot read " + source);

    std::map<std::string, PaperRecord> papers;
    std::vector<CitationRecord> pending;
    ParseStats stats;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++stats.records_read;

        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            detail::drop_record(stats, "malformed_line");
            continue;
        }

        // The cites array is salvaged even when the record itself is invalid,
        // so its citations surface in the dangling count rather than vanish.
        if (j.contains("cites") && j["cites"].is_array()) {
            std::string citing = j.value("id", std::string());
            for (const auto& c : j["cites"])
                if (c.is_string()) pending.push_back({citing, c.get<std::string>()});
        }

        if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
            detail::drop_record(stats, "malformed_line");
            continue;
        }
        PaperRecord rec;
        rec.id = j["id"].get<std::string>();
        if (!j.contains("year") || !j["year"].is_number_integer()) {
            detail::drop_record(stats, "invalid_year");
            continue;
        }
        rec.year = j["year"].get<int>();
        if (rec.year < kMinYear || rec.year > kMaxYear) {
            detail::drop_record(stats, "invalid_year");
            continue;
        }
        bool bad_field = false;
        auto get_string_list = [&](const char* key, std::vector<std::string>& out) {
            if (!j.contains(key)) return;
            if (!j[key].is_array()) { bad_field = true; return; }
            for (const auto& v : j[key]) {
                if (!v.is_string()) { bad_field = true; return; }
                out.push_back(v.get<std::string>());
            }
        };
        get_string_list("authors", rec.authors);
        get_string_list("keywords", rec.keywords);
        if (j.contains("title")) {
            if (j["title"].is_string()) rec.title = j["title"].get<std::string>();
            else bad_field = true;
        }
        if (j.contains("venue") && !j["venue"].is_null()) {
            if (j["venue"].is_string()) rec.venue = j["venue"].get<std::string>();
            else bad_field = true;
        }
        if (bad_field) {
            detail::drop_record(stats, "malformed_line");
            continue;
        }
        if (papers.count(rec.id))
            throw std::runtime_error("corpus: duplicate record id \"" + rec.id + "\" in " + source);
        papers.emplace(rec.id, std::move(rec));
    }

    return detail::finish_corpus(std::move(papers), std::move(pending), std::move(stats),
                                 source, CorpusFormat::jsonl);
}

/// Parses the two-file TSV variant (records table + edge list).
inline Corpus parse_records_tsv(std::istream& records, std::istream& edges,
                                const std::string& source = "<stream>") {
    if (!records || !edges) throw std::runtime_error("corpus: cannot read " + source);

    std::map<std::string, PaperRecord> papers;
    std::vector<CitationRecord> pending;
    ParseStats stats;

    std::string line;
    while (std::getline(records, line)) {
        if (line.empty()) continue;
        ++stats.records_read;
        auto fields = split(line, '\t');
        if (fields.size() != 5 || fields[0].empty()) {
            detail::drop_record(stats, "malformed_line");
            continue;
        }
        PaperRecord rec;
        rec.id = fields[0];
        int year = 0;
        auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), year);
        if (ec != std::errc() || ptr != fields[1].data() + fields[1].size() ||
            year < kMinYear || year > kMaxYear) {
            detail::drop_record(stats, "invalid_year");
            continue;
        }
        rec.year = year;
        rec.title = fields[2];
        rec.authors = split_list(fields[3], ';');
        rec.keywords = split_list(fields[4], ';');
        if (papers.count(rec.id))
            throw std::runtime_error("corpus: duplicate record id \"" + rec.id + "\" in " + source);
        papers.emplace(rec.id, std::move(rec));
    }

    while (std::getline(edges, line)) {
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            ++stats.citations_dropped;
            ++stats.drop_reasons["malformed_edge"];
            continue;
        }
        pending.push_back({fields[0], fields[1]});
    }
    // malformed edge lines were already counted as dropped; finish_corpus
    // counts only the pending ones as read, so add them back here
    std::size_t malformed = stats.citations_dropped;
    Corpus corpus = detail::finish_corpus(std::move(papers), std::move(pending), std::move(stats),
                                          source, CorpusFormat::tsv);
    corpus.provenance.stats.citations_read += malformed;
    return corpus;
}

/// Writes the corpus back out as JSON lines (sorted by id). parse_records of
/// the result reproduces the papers and citations exactly.
inline void serialize_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& [id, rec] : corpus.papers) {
        nlohmann::json j;
        j["id"] = rec.id;
        j["title"] = rec.title;
        j["authors"] = rec.authors;
        j["year"] = rec.year;
        j["keywords"] = rec.keywords;
        if (rec.venue) j["venue"] = *rec.venue;
        auto cites = nlohmann::json::array();
        // citations are sorted by citing id, so each paper's block is contiguous
        auto it = std::lower_bound(corpus.citations.begin(), corpus.citations.end(),
                                   CitationRecord{id, std::string()});
        for (; it != corpus.citations.end() && it->citing_id == id; ++it)
            cites.push_back(it->cited_id);
        j["cites"] = std::move(cites);
        out << j.dump() << '\n';
    }
}

inline std::string serialize_jsonl(const Corpus& corpus) {
    std::ostringstream os;
    serialize_jsonl(corpus, os);
    return os.str();
}

/// Keeps only papers that carry at least one keyword; citations touching a
/// removed paper go with it. May return an empty corpus.
inline Corpus filter_keywordless(const Corpus& corpus) {
    Corpus out;
    out.provenance = corpus.provenance;
    for (const auto& [id, rec] : corpus.papers)
        if (!rec.keywords.empty()) out.papers.emplace(id, rec);
    std::size_t removed_citations = 0;
    for (const auto& c : corpus.citations) {
        if (out.papers.count(c.citing_id) && out.papers.count(c.cited_id))
            out.citations.push_back(c);
        else
            ++removed_citations;
    }
    out.provenance.filters.push_back(
        "keyword_filter: removed " + std::to_string(corpus.papers.size() - out.papers.size()) +
        " papers, " + std::to_string(removed_citations) + " citations");
    return out;
}

}  // namespace citemap
