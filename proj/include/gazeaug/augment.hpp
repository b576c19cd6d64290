#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gazeaug/code_model.hpp"
#include "gazeaug/gaze.hpp"

namespace gazeaug {

// Line window for same-label neighborhood expansion. The supported sweep
// range is 0..3; wider windows need the explicit research override.
struct AdjacencyConfig {
    int window_lines = 3;
    bool allow_wide_window = false;

    void validate() const; // throws ValidationError
};

enum class TokenOrigin { Fixated, Expanded };

// One member of the expanded set: either a directly fixated token or a
// same-label neighbor, which records the fixated token that pulled it in.
struct AugMember {
    int token_index = 0;
    TokenOrigin origin = TokenOrigin::Fixated;
    int anchor_index = -1; // valid when origin == Expanded
};

struct KGramPattern {
    std::vector<SemanticLabel> labels; // length 2 or 3
    std::uint64_t frequency = 0;
    int numeric_label = 0; // 1-based rank
};

struct PatternTable {
    std::vector<KGramPattern> patterns; // rank order, numeric_label == position + 1
};

// Dataset row: everything the trainer needs, self-contained so the JSONL
// round-trips without the source corpus.
struct AugmentedToken {
    int token_index = 0;
    std::string text;
    int line = 1;
    SemanticLabel label = SemanticLabel::Other;
    TokenOrigin origin = TokenOrigin::Fixated;
    int anchor_index = -1;
    std::optional<int> pattern_label;  // 1..top_k
    std::optional<int> reading_index;  // 0..cap-1
};

struct AugmentedSnippet {
    std::string id;
    std::vector<AugmentedToken> tokens; // source order
};

struct AugmentedDataset {
    std::vector<AugmentedSnippet> snippets; // id order
    PatternTable table;
};

enum class KGramOrder { Scanpath, Source };

struct AugmentOptions {
    AdjacencyConfig adjacency;
    int top_k_patterns = 20;
    int reading_index_cap = 100;
    KGramOrder kgram_order = KGramOrder::Scanpath;
};

// Closure of F under "same label within +-window_lines of a fixated token".
// Fixated members keep origin Fixated; each added token records the fixated
// anchor with the smallest line distance (ties to the smaller token index).
// Result is sorted by token index.
std::vector<AugMember> expandAdjacency(const std::set<int>& fixated, const Snippet& snippet,
                                       const AdjacencyConfig& config);

// Labels of fixated tokens in fixation order, consecutive refixations of the
// same token collapsed.
std::vector<SemanticLabel> fixationLabelSequence(const Scanpath& scanpath, const Snippet& snippet);

// Temporal ordering of the expanded set used for pattern mining/matching:
// the collapsed fixation sequence, with each token's expanded neighbors
// inserted (in index order) right after its first occurrence.
std::vector<int> fixationExtendedOrder(const Scanpath& scanpath,
                                       const std::vector<AugMember>& members);

// Counts every contiguous window of each requested length across all
// sequences.
std::map<std::vector<SemanticLabel>, std::uint64_t> mineKGrams(
    const std::vector<std::vector<SemanticLabel>>& sequences,
    const std::set<int>& k_values = {2, 3});

// Ranks patterns by frequency (descending), longer k first on ties, then
// lexicographic label order; keeps the top `limit` and assigns 1-based
// numeric labels by rank. Throws ValidationError on empty counts.
PatternTable selectTopPatterns(const std::map<std::vector<SemanticLabel>, std::uint64_t>& counts,
                               int limit = 20);

// Matches table patterns over an ordered token sequence: at each position a
// table trigram wins over a bigram; a token covered by several matches keeps
// the highest-ranked (then leftmost) one. Returns token_index -> numeric label.
std::map<int, int> assignPatternLabels(const Snippet& snippet,
                                       const std::vector<int>& ordered_tokens,
                                       const PatternTable& table);

// Reading index per expanded-set token: fixated tokens take their own index,
// expanded tokens inherit their anchor's; absent entries (reading cap
// overflow) stay unset.
std::map<int, int> attachReadingIndices(const std::vector<AugMember>& members,
                                        const std::map<int, int>& reading_order);

// Full per-corpus pipeline: fixated sets, adjacency expansion, corpus-wide
// pattern mining and ranking, per-token pattern/reading labels. Snippets
// without a scanpath contribute no rows. Deterministic given inputs.
AugmentedDataset buildAugmentedDataset(const Corpus& corpus,
                                       const std::vector<Scanpath>& scanpaths,
                                       const AugmentOptions& options = {});

void writeAugmentedJsonl(const AugmentedDataset& dataset, std::ostream& out);
AugmentedDataset loadAugmentedJsonl(std::istream& in); // table left empty

void writePatternTableJson(const PatternTable& table, std::ostream& out);
PatternTable loadPatternTableJson(std::istream& in);

} // namespace gazeaug
