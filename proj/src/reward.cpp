#include "gazeaug/reward.hpp"

#include <cmath>
#include <istream>

#include <json.hpp>

#include "gazeaug/errors.hpp"

namespace gazeaug {

LabeledSequence goldLabels(const AugmentedSnippet& snippet) {
    LabeledSequence seq;
    seq.pattern.reserve(snippet.tokens.size());
    seq.reading.reserve(snippet.tokens.size());
    for (const auto& t : snippet.tokens) {
        seq.pattern.push_back(t.pattern_label);
        seq.reading.push_back(t.reading_index);
    }
    return seq;
}

void RewardWeights::validate() const {
    if (lambda_pattern < 0.0 || lambda_position < 0.0) {
        throw ValidationError("reward weights must be non-negative");
    }
    if (std::abs(lambda_pattern + lambda_position - 1.0) > 1e-9) {
        throw ValidationError("reward weights must sum to 1");
    }
}

namespace {

struct ComponentAcc {
    double acc = 1.0;  // defined as 1 when there is nothing to score
    long scored = 0;
};

ComponentAcc exactMatch(const std::vector<std::optional<int>>& pred,
                        const std::vector<std::optional<int>>& gold) {
    ComponentAcc out;
    long hits = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (!gold[i]) {
            continue;
        }
        ++out.scored;
        if (pred[i] && *pred[i] == *gold[i]) {
            ++hits;
        }
    }
    if (out.scored > 0) {
        out.acc = static_cast<double>(hits) / static_cast<double>(out.scored);
    }
    return out;
}

// Convex combination with weight renormalization when a component has no
// scorable gold tokens. Both components empty means there is no attention
// signal at all, which counts as zero penalty.
double combine(double pattern_acc, long pattern_scored, double position_acc, long position_scored,
               const RewardWeights& w) {
    double wp = pattern_scored > 0 ? w.lambda_pattern : 0.0;
    double wq = position_scored > 0 ? w.lambda_position : 0.0;
    double s = wp + wq;
    if (s <= 0.0) {
        return 0.0;
    }
    return 1.0 - (wp * pattern_acc + wq * position_acc) / s;
}

} // namespace

RewardScore hardReward(const LabeledSequence& pred, const LabeledSequence& gold,
                       const RewardWeights& weights) {
    weights.validate();
    if (pred.pattern.size() != gold.pattern.size() || pred.reading.size() != gold.reading.size() ||
        pred.pattern.size() != pred.reading.size()) {
        throw ValidationError("prediction/gold length mismatch");
    }
    auto pat = exactMatch(pred.pattern, gold.pattern);
    auto pos = exactMatch(pred.reading, gold.reading);

    RewardScore score;
    score.pattern_acc = pat.acc;
    score.position_acc = pos.acc;
    score.value = combine(pat.acc, pat.scored, pos.acc, pos.scored, weights);
    return score;
}

namespace {

// Mean probability assigned to the gold class over labeled gold tokens.
// gold value v maps to class v for patterns and v+1 for reading indices
// (class 0 is the no-label class).
ComponentAcc meanGoldProb(const std::vector<std::vector<double>>& probs,
                          const std::vector<std::optional<int>>& gold, int class_offset) {
    ComponentAcc out;
    double total = 0.0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const auto& row = probs[i];
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= -1e-9) || !std::isfinite(p)) {
                throw ValidationError("malformed probability row: negative or non-finite entry");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-6) {
            throw ValidationError("malformed probability row: entries sum to " +
                                  std::to_string(sum));
        }
        if (!gold[i]) {
            continue;
        }
        int cls = *gold[i] + class_offset;
        if (cls < 0 || cls >= static_cast<int>(row.size())) {
            throw ValidationError("gold label " + std::to_string(*gold[i]) +
                                  " outside the class range");
        }
        total += row[cls];
        ++out.scored;
    }
    if (out.scored > 0) {
        out.acc = total / static_cast<double>(out.scored);
    }
    return out;
}

} // namespace

double softReward(const std::vector<std::vector<double>>& pattern_probs,
                  const std::vector<std::vector<double>>& position_probs,
                  const LabeledSequence& gold, const RewardWeights& weights) {
    weights.validate();
    if (pattern_probs.size() != gold.pattern.size() ||
        position_probs.size() != gold.reading.size()) {
        throw ValidationError("probability/gold length mismatch");
    }
    auto pat = meanGoldProb(pattern_probs, gold.pattern, 0);
    auto pos = meanGoldProb(position_probs, gold.reading, 1);
    return combine(pat.acc, pat.scored, pos.acc, pos.scored, weights);
}

std::vector<std::pair<std::string, LabeledSequence>> loadLabelFileJsonl(std::istream& in) {
    struct Row {
        std::optional<int> pattern;
        std::optional<int> reading;
    };
    std::map<std::string, std::map<int, Row>> rows;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("snippet_id") ||
            !j.contains("token_index") || !j.contains("pattern_label") ||
            !j.contains("reading_index")) {
            throw ParseError("malformed label record, expected snippet_id, token_index, "
                             "pattern_label, reading_index",
                             line_no);
        }
        Row r;
        if (!j["pattern_label"].is_null()) {
            r.pattern = j["pattern_label"].get<int>();
        }
        if (!j["reading_index"].is_null()) {
            r.reading = j["reading_index"].get<int>();
        }
        std::string id = j["snippet_id"].get<std::string>();
        int idx = j["token_index"].get<int>();
        if (!rows[id].emplace(idx, r).second) {
            throw ParseError("duplicate token (" + id + ", " + std::to_string(idx) + ")", line_no);
        }
    }
    std::vector<std::pair<std::string, LabeledSequence>> out;
    for (const auto& [id, tokens] : rows) {
        LabeledSequence seq;
        for (const auto& [idx, r] : tokens) {
            seq.pattern.push_back(r.pattern);
            seq.reading.push_back(r.reading);
        }
        out.emplace_back(id, std::move(seq));
    }
    return out;
}

RewardScore scoreLabelFiles(const std::vector<std::pair<std::string, LabeledSequence>>& pred,
                            const std::vector<std::pair<std::string, LabeledSequence>>& gold,
                            const RewardWeights& weights) {
    if (pred.size() != gold.size()) {
        throw ValidationError("label files cover different snippet sets");
    }
    LabeledSequence pooled_pred;
    LabeledSequence pooled_gold;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i].first != gold[i].first ||
            pred[i].second.size() != gold[i].second.size()) {
            throw ValidationError("label files disagree on snippet '" + gold[i].first + "'");
        }
        auto append = [](LabeledSequence& dst, const LabeledSequence& src) {
            dst.pattern.insert(dst.pattern.end(), src.pattern.begin(), src.pattern.end());
            dst.reading.insert(dst.reading.end(), src.reading.begin(), src.reading.end());
        };
        append(pooled_pred, pred[i].second);
        append(pooled_gold, gold[i].second);
    }
    return hardReward(pooled_pred, pooled_gold, weights);
}

} // namespace gazeaug
