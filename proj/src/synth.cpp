#include "gazeaug/synth.hpp"

#include <algorithm>

#include "gazeaug/errors.hpp"

namespace gazeaug {

void SynthConfig::validate() const {
    if (locality_prob < 0.0 || locality_prob > 1.0) {
        throw ValidationError("locality_prob must be in [0, 1]");
    }
    if (window_lines < 0) {
        throw ValidationError("window_lines must be >= 0");
    }
    if (fixations_per_snippet < 1) {
        throw ValidationError("fixations_per_snippet must be >= 1");
    }
}

Scanpath synthesizeScanpath(const Snippet& snippet, const SynthConfig& config, Rng& rng) {
    config.validate();
    const auto& tokens = snippet.tokens;
    if (tokens.empty()) {
        throw ValidationError("cannot synthesize a scanpath over snippet '" + snippet.id +
                              "' with no tokens");
    }

    const int n = static_cast<int>(tokens.size());

    // Tokens are sorted by (line, col), so a line window maps to a contiguous
    // index range.
    auto lineRange = [&](int center) {
        int lo_line = center - config.window_lines;
        int hi_line = center + config.window_lines;
        auto lo = std::lower_bound(tokens.begin(), tokens.end(), lo_line,
                                   [](const SourceToken& t, int l) { return t.line < l; });
        auto hi = std::upper_bound(tokens.begin(), tokens.end(), hi_line,
                                   [](int l, const SourceToken& t) { return l < t.line; });
        return std::pair<int, int>(static_cast<int>(lo - tokens.begin()),
                                   static_cast<int>(hi - tokens.begin()));
    };

    Scanpath path;
    path.snippet_id = snippet.id;
    path.events.reserve(config.fixations_per_snippet);

    int current = static_cast<int>(rng.below(n));
    path.events.push_back({current, rng.intIn(100, 400)});

    for (int i = 1; i < config.fixations_per_snippet; ++i) {
        bool local = rng.real01() < config.locality_prob;
        int next;
        if (local) {
            auto [lo, hi] = lineRange(tokens[current].line);
            next = lo + static_cast<int>(rng.below(hi - lo));
        } else {
            next = static_cast<int>(rng.below(n));
        }
        path.events.push_back({next, rng.intIn(100, 400)});
        current = next;
    }
    return path;
}

std::vector<Scanpath> synthesizeCorpus(const Corpus& corpus, const SynthConfig& config) {
    std::vector<Scanpath> paths;
    paths.reserve(corpus.size());
    for (const auto& [id, snippet] : corpus) {
        Rng rng(config.seed ^ fnv1a64(id));
        paths.push_back(synthesizeScanpath(snippet, config, rng));
    }
    return paths;
}

std::vector<FixationRecord> scanpathsToRecords(const std::vector<Scanpath>& scanpaths,
                                               const Corpus& corpus) {
    std::vector<const Scanpath*> ordered;
    ordered.reserve(scanpaths.size());
    for (const auto& s : scanpaths) {
        ordered.push_back(&s);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->snippet_id < b->snippet_id; });

    std::vector<FixationRecord> records;
    for (const auto* path : ordered) {
        auto it = corpus.find(path->snippet_id);
        if (it == corpus.end()) {
            throw ValidationError("scanpath references unknown snippet '" + path->snippet_id + "'");
        }
        const auto& tokens = it->second.tokens;
        int seq = 0;
        for (const auto& e : path->events) {
            const auto& t = tokens.at(e.token_index);
            records.push_back({path->snippet_id, seq++, t.line, t.col_start, e.duration_ms});
        }
    }
    return records;
}

} // namespace gazeaug
