#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gazeaug/code_model.hpp"

namespace gazeaug {

struct FixationRecord {
    std::string snippet_id;
    int seq = 0;         // 0-based fixation order within a snippet
    int line = 1;        // 1-based
    int column = 1;      // 1-based
    int duration_ms = 0; // >= 0
};

struct ScanEvent {
    int token_index = 0;
    int duration_ms = 0;
};

struct Scanpath {
    std::string snippet_id;
    std::vector<ScanEvent> events;
    int unmapped_count = 0;
};

constexpr int kLocalityWindows = 6; // windows 0..5

// Fraction of consecutive fixation pairs whose line distance is <= N,
// for N = 0..5.
struct LocalityReport {
    std::array<double, kLocalityWindows> fraction{};
    long transitions = 0;
};

// Reads the fixation CSV (header: snippet_id,seq,line,column,duration_ms).
// Returns records sorted by (snippet_id, seq), i.e. grouped per snippet.
// Throws ParseError with the offending physical line number.
std::vector<FixationRecord> parseFixationCsv(std::istream& in);

void writeFixationCsv(const std::vector<FixationRecord>& records, std::ostream& out);

// Resolves each fixation to a token: containment on its line first, then the
// nearest token on that line by column distance (ties to the leftmost).
// Fixations on token-free lines are dropped and counted in unmapped_count.
Scanpath mapFixationsToTokens(const std::vector<FixationRecord>& records, const Snippet& snippet);

// All scanpaths for a corpus, keyed and ordered by snippet id.
std::vector<Scanpath> mapCorpusFixations(const std::vector<FixationRecord>& records,
                                         const Corpus& corpus);

std::set<int> fixatedSet(const Scanpath& scanpath);

// Reading index by first-fixation order, starting at 0. Only the first `cap`
// distinct tokens are indexed; later ones get none.
std::map<int, int> readingOrder(const Scanpath& scanpath, int cap = 100);

// Line-distance distribution over consecutive fixation pairs across all
// scanpaths. Throws ValidationError when there are no transitions.
LocalityReport localityStats(const std::vector<Scanpath>& scanpaths, const Corpus& corpus);

void writeLocalityCsv(const LocalityReport& report, std::ostream& out);

} // namespace gazeaug
