#include "gazeaug/gaze.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <utility>

#include "gazeaug/errors.hpp"
#include "gazeaug/util.hpp"

namespace gazeaug {

namespace {

constexpr const char* kCsvHeader = "snippet_id,seq,line,column,duration_ms";

std::vector<std::string> splitCsvRow(const std::string& row) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = row.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(row.substr(start));
            break;
        }
        fields.push_back(row.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

int parseIntField(const std::string& s, const char* name, long row) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(std::string("non-numeric ") + name + " field '" + s + "'", row);
    }
    return value;
}

std::string stripCr(std::string s) {
    if (!s.empty() && s.back() == '\r') {
        s.pop_back();
    }
    return s;
}

} // namespace

std::vector<FixationRecord> parseFixationCsv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty fixation CSV, expected header", 1);
    }
    if (stripCr(line) != kCsvHeader) {
        throw ParseError(std::string("bad header, expected '") + kCsvHeader + "'", 1);
    }

    std::vector<FixationRecord> records;
    std::set<std::pair<std::string, int>> seen;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = stripCr(line);
        if (line.empty()) {
            continue;
        }
        auto fields = splitCsvRow(line);
        if (fields.size() != 5) {
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), row);
        }
        FixationRecord rec;
        rec.snippet_id = fields[0];
        if (rec.snippet_id.empty()) {
            throw ParseError("empty snippet_id", row);
        }
        rec.seq = parseIntField(fields[1], "seq", row);
        rec.line = parseIntField(fields[2], "line", row);
        rec.column = parseIntField(fields[3], "column", row);
        rec.duration_ms = parseIntField(fields[4], "duration_ms", row);
        if (rec.seq < 0) {
            throw ParseError("negative seq", row);
        }
        if (rec.line < 1 || rec.column < 1) {
            throw ParseError("line and column are 1-based", row);
        }
        if (rec.duration_ms < 0) {
            throw ParseError("negative duration_ms", row);
        }
        if (!seen.emplace(rec.snippet_id, rec.seq).second) {
            throw ParseError("duplicate (snippet_id, seq) pair '" + rec.snippet_id + "', " +
                                 std::to_string(rec.seq),
                             row);
        }
        records.push_back(std::move(rec));
    }

    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.snippet_id != b.snippet_id) {
            return a.snippet_id < b.snippet_id;
        }
        return a.seq < b.seq;
    });
    return records;
}

void writeFixationCsv(const std::vector<FixationRecord>& records, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& r : records) {
        out << r.snippet_id << ',' << r.seq << ',' << r.line << ',' << r.column << ','
            << r.duration_ms << "\n";
    }
}

Scanpath mapFixationsToTokens(const std::vector<FixationRecord>& records, const Snippet& snippet) {
    Scanpath path;
    path.snippet_id = snippet.id;

    std::map<int, std::vector<const SourceToken*>> by_line;
    for (const auto& t : snippet.tokens) {
        by_line[t.line].push_back(&t);
    }

    std::vector<const FixationRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& r : records) {
        if (r.snippet_id != snippet.id) {
            throw ValidationError("fixation for snippet '" + r.snippet_id +
                                  "' passed with snippet '" + snippet.id + "'");
        }
        ordered.push_back(&r);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->seq < b->seq; });

    for (const auto* r : ordered) {
        auto it = by_line.find(r->line);
        if (it == by_line.end()) {
            ++path.unmapped_count;
            continue;
        }
        const SourceToken* best = nullptr;
        long best_dist = 0;
        for (const SourceToken* t : it->second) {
            long dist = 0;
            if (r->column < t->col_start) {
                dist = t->col_start - r->column;
            } else if (r->column > t->col_end) {
                dist = r->column - t->col_end;
            }
            if (!best || dist < best_dist) {
                best = t;
                best_dist = dist;
            }
            if (dist == 0) {
                break; // containment, spans do not overlap
            }
        }
        path.events.push_back({best->index, r->duration_ms});
    }
    return path;
}

std::vector<Scanpath> mapCorpusFixations(const std::vector<FixationRecord>& records,
                                         const Corpus& corpus) {
    std::map<std::string, std::vector<FixationRecord>> grouped;
    for (const auto& r : records) {
        grouped[r.snippet_id].push_back(r);
    }
    std::vector<Scanpath> paths;
    paths.reserve(grouped.size());
    for (const auto& [id, recs] : grouped) {
        auto it = corpus.find(id);
        if (it == corpus.end()) {
            throw ValidationError("fixations reference unknown snippet '" + id + "'");
        }
        paths.push_back(mapFixationsToTokens(recs, it->second));
    }
    return paths;
}

std::set<int> fixatedSet(const Scanpath& scanpath) {
    std::set<int> out;
    for (const auto& e : scanpath.events) {
        out.insert(e.token_index);
    }
    return out;
}

std::map<int, int> readingOrder(const Scanpath& scanpath, int cap) {
    std::map<int, int> order;
    int next = 0;
    for (const auto& e : scanpath.events) {
        if (next >= cap) {
            break;
        }
        if (order.emplace(e.token_index, next).second) {
            ++next;
        }
    }
    return order;
}

LocalityReport localityStats(const std::vector<Scanpath>& scanpaths, const Corpus& corpus) {
    std::array<long, kLocalityWindows> within{};
    long transitions = 0;

    std::vector<const Scanpath*> ordered;
    ordered.reserve(scanpaths.size());
    for (const auto& s : scanpaths) {
        ordered.push_back(&s);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->snippet_id < b->snippet_id; });

    for (const auto* path : ordered) {
        auto it = corpus.find(path->snippet_id);
        if (it == corpus.end()) {
            throw ValidationError("scanpath references unknown snippet '" + path->snippet_id + "'");
        }
        const auto& tokens = it->second.tokens;
        for (std::size_t i = 1; i < path->events.size(); ++i) {
            int prev_line = tokens.at(path->events[i - 1].token_index).line;
            int next_line = tokens.at(path->events[i].token_index).line;
            int delta = std::abs(next_line - prev_line);
            ++transitions;
            for (int n = 0; n < kLocalityWindows; ++n) {
                if (delta <= n) {
                    ++within[n];
                }
            }
        }
    }

    if (transitions == 0) {
        throw ValidationError("no fixation transitions, locality fractions undefined");
    }

    LocalityReport report;
    report.transitions = transitions;
    for (int n = 0; n < kLocalityWindows; ++n) {
        report.fraction[n] = static_cast<double>(within[n]) / static_cast<double>(transitions);
    }
    return report;
}

void writeLocalityCsv(const LocalityReport& report, std::ostream& out) {
    out << "window,fraction,transitions\n";
    for (int n = 0; n < kLocalityWindows; ++n) {
        out << n << ',' << formatDouble(report.fraction[n]) << ',' << report.transitions << "\n";
    }
}

} // namespace gazeaug
