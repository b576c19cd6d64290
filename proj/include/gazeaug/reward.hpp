#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gazeaug/augment.hpp"

namespace gazeaug {

// Per-token (pattern, reading) labels for one snippet; prediction and ground
// truth share this shape.
struct LabeledSequence {
    std::vector<std::optional<int>> pattern;  // numeric pattern label, 1..top_k
    std::vector<std::optional<int>> reading;  // reading index, 0..cap-1

    std::size_t size() const { return pattern.size(); }
};

LabeledSequence goldLabels(const AugmentedSnippet& snippet);

struct RewardWeights {
    double lambda_pattern = 0.5;
    double lambda_position = 0.5;

    void validate() const; // throws ValidationError
};

// Misalignment penalty in [0, 1]: 0 means predictions match the attention
// labels exactly, 1 means nothing matches.
struct RewardScore {
    double value = 0.0;
    double pattern_acc = 0.0;
    double position_acc = 0.0;
};

// Exact-match alignment over gold tokens that carry a label. A component
// with no labeled gold tokens scores 1 and its weight is renormalized away.
RewardScore hardReward(const LabeledSequence& pred, const LabeledSequence& gold,
                       const RewardWeights& weights = {});

// Differentiable surrogate: mean gold-class probability instead of exact
// match. Row r of pattern_probs/position_probs holds the class distribution
// for token r (class 0 = no label, class c = pattern c / reading index c-1).
// Matches hardReward on one-hot rows.
double softReward(const std::vector<std::vector<double>>& pattern_probs,
                  const std::vector<std::vector<double>>& position_probs,
                  const LabeledSequence& gold, const RewardWeights& weights = {});

// Label files for scoring: JSONL rows with snippet_id, token_index,
// pattern_label, reading_index (extra fields ignored). Returns sequences in
// snippet-id order; both files of a comparison must cover identical tokens.
std::vector<std::pair<std::string, LabeledSequence>> loadLabelFileJsonl(std::istream& in);

// Pools two parallel label files into single sequences and scores them.
RewardScore scoreLabelFiles(const std::vector<std::pair<std::string, LabeledSequence>>& pred,
                            const std::vector<std::pair<std::string, LabeledSequence>>& gold,
                            const RewardWeights& weights = {});

} // namespace gazeaug
