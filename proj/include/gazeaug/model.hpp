#pragma once

<string>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gazeaug/augment.hpp"
#include "gazeaug/reward.hpp"
#include "gazeaug/rng.hpp"

namespace gazeaug {

// Two-head sequence labeler over semantic-label ids: embedding + learned
// positions, pre-norm self-attention block(s) with a feed-forward stage, and
// linear classification heads for pattern and reading-order labels.
struct ModelConfig {
    int embed_dim = 64;
    int attention_heads = 4;
    int attention_layers = 1;
    int max_seq_len = 256;
    int pattern_classes = 21;   // no-label class + 20 pattern ranks
    int position_classes = 101; // no-label class + reading indices 0..99
    double init_scale = 0.02;
    std::uint64_t seed = 42;

    int ffnHidden() const { return 4 * embed_dim; }
    int vocabSize() const { return kSemanticLabelCount + 1; } // labels + padding id
    int padId() const { return kSemanticLabelCount; }

    void validate() const; // throws ValidationError
};

struct Tensor {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Tensor() = default;
    Tensor(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
    std::size_t size() const { return v.size(); }
    void zero() { std::fill(v.begin(), v.end(), 0.0); }
};

struct AttentionBlockParams {
    Tensor ln1_gain, ln1_bias;
    Tensor wq, bq, wk, bk, wv, bv, wo, bo;
    Tensor ln2_gain, ln2_bias;
    Tensor w1, b1, w2, b2;
};

struct MiniLabeler {
    ModelConfig config;
    Tensor tok_embed; // [vocab][D]
    Tensor pos_embed; // [max_seq_len][D]
    std::vector<AttentionBlockParams> blocks;
    Tensor w_pattern, b_pattern;   // [D][C_pat], [1][C_pat]
    Tensor w_position, b_position; // [D][C_pos], [1][C_pos]

    // Fixed-order named views over every parameter tensor; the order defines
    // the serialization and optimizer-state layout.
    std::vector<std::pair<std::string, Tensor*>> namedTensors();
    std::vector<std::pair<std::string, const Tensor*>> namedTensors() const;
};

// Seeded Gaussian init for embeddings and weights, zeros for biases, ones
// for norm gains.
MiniLabeler initModel(const ModelConfig& config);

// Same tensor shapes as `model`, all zeros; holds gradients.
MiniLabeler zerosLike(const MiniLabeler& model);

// Snippets encoded as padded id/label matrices. Row-major [batch][seq].
struct EncodedBatch {
    int batch = 0;
    int seq = 0;
    std::vector<int> ids;             // semantic-label id, or pad id
    std::vector<std::uint8_t> mask;   // 1 = real token
    std::vector<int> gold_pattern;    // class id, 0 = no label
    std::vector<int> gold_position;   // class id, 0 = no label (v+1 for index v)
    int truncated_snippets = 0;

    std::size_t at(int b, int t) const { return static_cast<std::size_t>(b) * seq + t; }
};

// Builds a batch from augmented snippets; snippets longer than max_seq_len
// are truncated (counted in truncated_snippets). Empty snippets are skipped;
// throws ValidationError when nothing remains.
EncodedBatch encodeBatch(const std::vector<const AugmentedSnippet*>& snippets,
                         const ModelConfig& config);

// Per-position class distributions, rows sum to 1. Row layout matches
// EncodedBatch::at.
struct HeadProbabilities {
    int batch = 0;
    int seq = 0;
    std::vector<double> pattern;  // [B*S][pattern_classes]
    std::vector<double> position; // [B*S][position_classes]
};

HeadProbabilities forward(const MiniLabeler& model, const EncodedBatch& batch);

enum class PassKind { CrossEntropy, Reward };

struct PassLoss {
    double ce = 0.0;
    double reward = 0.0; // soft misalignment penalty; 0 on CE passes
    double total = 0.0;
};

// Masked mean cross-entropy over both heads, plus alpha * soft reward on
// reward passes. Throws DivergenceError when the loss is non-finite.
PassLoss lossOnly(const MiniLabeler& model, const EncodedBatch& batch, PassKind kind,
                  double alpha, const RewardWeights& weights);

// Same loss together with gradients for every parameter tensor (written into
// `grads`, which must be zerosLike(model)).
PassLoss lossAndGradients(const MiniLabeler& model, const EncodedBatch& batch, PassKind kind,
                          double alpha, const RewardWeights& weights, MiniLabeler& grads);

// Argmax labels for one snippet, ties to the lowest class id. Class 0 maps
// to an unset label.
LabeledSequence predict(const MiniLabeler& model, const AugmentedSnippet& snippet);

// Versioned binary format with an embedded config header.
void saveModel(const MiniLabeler& model, const std::string& path);
MiniLabeler loadModel(const std::string& path);

} // namespace gazeaug
