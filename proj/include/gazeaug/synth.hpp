#pragma once

#include <cstdint>
#include <vector>

#include "gazeaug/code_model.hpp"
#include "gazeaug/gaze.hpp"
#include "gazeaug/rng.hpp"

namespace gazeaug {

// Controls for synthetic scanpath generation. Defaults match the measured
// reading behavior the adjacency window is calibrated against: ~95% of
// consecutive fixations stay within 3 lines.
struct SynthConfig {
    double locality_prob = 0.95;
    int window_lines = 3;
    int fixations_per_snippet = 60;
    std::uint64_t seed = 42;

    void validate() const; // throws ValidationError
};

// Seeded random walk over a snippet's tokens: the first fixation is uniform;
// each later one stays within +-window_lines of the current line with
// probability locality_prob, otherwise jumps uniformly anywhere. Durations
// are uniform in [100, 400] ms. Fully determined by (snippet, config, rng).
Scanpath synthesizeScanpath(const Snippet& snippet, const SynthConfig& config, Rng& rng);

// One scanpath per snippet, in id order, each seeded with
// config.seed ^ fnv1a64(id) so snippets are independent of corpus order.
std::vector<Scanpath> synthesizeCorpus(const Corpus& corpus, const SynthConfig& config);

// Converts token-level scanpaths back to (line, column) fixation records;
// columns point at each token's first column, so re-ingesting maps back to
// the same tokens.
std::vector<FixationRecord> scanpathsToRecords(const std::vector<Scanpath>& scanpaths,
                                               const Corpus& corpus);

} // namespace gazeaug
