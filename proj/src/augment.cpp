#include "gazeaug/augment.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "gazeaug/errors.hpp"

namespace gazeaug {

void AdjacencyConfig::validate() const {
    if (window_lines < 0) {
        throw ValidationError("window_lines must be >= 0");
    }
    if (window_lines > 3 && !allow_wide_window) {
        throw ValidationError("window_lines " + std::to_string(window_lines) +
                              " outside the supported range 0..3 (set the wide-window "
                              "override to go wider)");
    }
}

std::vector<AugMember> expandAdjacency(const std::set<int>& fixated, const Snippet& snippet,
                                       const AdjacencyConfig& config) {
    config.validate();
    const int n = static_cast<int>(snippet.tokens.size());
    for (int idx : fixated) {
        if (idx < 0 || idx >= n) {
            throw ValidationError("fixated token index " + std::to_string(idx) +
                                  " out of range for snippet '" + snippet.id + "'");
        }
    }

    // Minimum fixated token index per (label, line); lets each candidate
    // token find its closest-line anchor without scanning all of F.
    std::map<std::pair<int, int>, int> anchor_by_label_line;
    for (int idx : fixated) {
        const auto& t = snippet.tokens[idx];
        auto key = std::make_pair(static_cast<int>(t.label), t.line);
        auto it = anchor_by_label_line.find(key);
        if (it == anchor_by_label_line.end() || idx < it->second) {
            anchor_by_label_line[key] = idx;
        }
    }

    std::vector<AugMember> members;
    for (int j = 0; j < n; ++j) {
        if (fixated.count(j)) {
            members.push_back({j, TokenOrigin::Fixated, -1});
            continue;
        }
        const auto& t = snippet.tokens[j];
        int label = static_cast<int>(t.label);
        int anchor = -1;
        for (int d = 0; d <= config.window_lines && anchor < 0; ++d) {
            auto lo = anchor_by_label_line.find({label, t.line - d});
            if (lo != anchor_by_label_line.end()) {
                anchor = lo->second;
            }
            if (d > 0) {
                auto hi = anchor_by_label_line.find({label, t.line + d});
                if (hi != anchor_by_label_line.end() && (anchor < 0 || hi->second < anchor)) {
                    anchor = hi->second;
                }
            }
        }
        if (anchor >= 0) {
            members.push_back({j, TokenOrigin::Expanded, anchor});
        }
    }
    return members;
}

std::vector<SemanticLabel> fixationLabelSequence(const Scanpath& scanpath, const Snippet& snippet) {
    std::vector<SemanticLabel> labels;
    int prev = -1;
    for (const auto& e : scanpath.events) {
        if (e.token_index == prev) {
            continue;
        }
        labels.push_back(snippet.tokens.at(e.token_index).label);
        prev = e.token_index;
    }
    return labels;
}

std::vector<int> fixationExtendedOrder(const Scanpath& scanpath,
                                       const std::vector<AugMember>& members) {
    std::map<int, std::vector<int>> expansions; // anchor -> expanded indices, ascending
    for (const auto& m : members) {
        if (m.origin == TokenOrigin::Expanded) {
            expansions[m.anchor_index].push_back(m.token_index);
        }
    }

    std::vector<int> order;
    std::set<int> seen;
    int prev = -1;
    for (const auto& e : scanpath.events) {
        if (e.token_index == prev) {
            continue;
        }
        prev = e.token_index;
        order.push_back(e.token_index);
        if (seen.insert(e.token_index).second) {
            auto it = expansions.find(e.token_index);
            if (it != expansions.end()) {
                order.insert(order.end(), it->second.begin(), it->second.end());
            }
        }
    }
    return order;
}

std::map<std::vector<SemanticLabel>, std::uint64_t> mineKGrams(
    const std::vector<std::vector<SemanticLabel>>& sequences, const std::set<int>& k_values) {
    std::map<std::vector<SemanticLabel>, std::uint64_t> counts;
    for (const auto& seq : sequences) {
        for (int k : k_values) {
            if (k < 1 || seq.size() < static_cast<std::size_t>(k)) {
                continue;
            }
            for (std::size_t i = 0; i + k <= seq.size(); ++i) {
                std::vector<SemanticLabel> window(seq.begin() + i, seq.begin() + i + k);
                ++counts[std::move(window)];
            }
        }
    }
    return counts;
}

PatternTable selectTopPatterns(const std::map<std::vector<SemanticLabel>, std::uint64_t>& counts,
                               int limit) {
    if (counts.empty()) {
        throw ValidationError("cannot rank patterns over empty counts");
    }
    if (limit < 1) {
        throw ValidationError("pattern limit must be >= 1");
    }

    std::vector<KGramPattern> all;
    all.reserve(counts.size());
    for (const auto& [labels, freq] : counts) {
        all.push_back({labels, freq, 0});
    }
    std::sort(all.begin(), all.end(), [](const KGramPattern& a, const KGramPattern& b) {
        if (a.frequency != b.frequency) {
            return a.frequency > b.frequency;
        }
        if (a.labels.size() != b.labels.size()) {
            return a.labels.size() > b.labels.size(); // longer k first
        }
        return a.labels < b.labels;
    });

    PatternTable table;
    int keep = std::min<int>(limit, static_cast<int>(all.size()));
    table.patterns.assign(all.begin(), all.begin() + keep);
    for (int i = 0; i < keep; ++i) {
        table.patterns[i].numeric_label = i + 1;
    }
    return table;
}

std::map<int, int> assignPatternLabels(const Snippet& snippet,
                                       const std::vector<int>& ordered_tokens,
                                       const PatternTable& table) {
    std::map<std::vector<SemanticLabel>, int> trigrams;
    std::map<std::vector<SemanticLabel>, int> bigrams;
    for (const auto& p : table.patterns) {
        if (p.labels.size() == 3) {
            trigrams[p.labels] = p.numeric_label;
        } else if (p.labels.size() == 2) {
            bigrams[p.labels] = p.numeric_label;
        }
    }

    std::vector<SemanticLabel> labels;
    labels.reserve(ordered_tokens.size());
    for (int idx : ordered_tokens) {
        labels.push_back(snippet.tokens.at(idx).label);
    }

    // token -> (numeric label, match position); lower wins on both.
    std::map<int, std::pair<int, std::size_t>> best;
    auto offer = [&](int token, int numeric, std::size_t pos) {
        auto it = best.find(token);
        if (it == best.end() || std::make_pair(numeric, pos) < it->second) {
            best[token] = {numeric, pos};
        }
    };

    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i + 3 <= labels.size()) {
            std::vector<SemanticLabel> tri(labels.begin() + i, labels.begin() + i + 3);
            auto it = trigrams.find(tri);
            if (it != trigrams.end()) {
                for (std::size_t j = i; j < i + 3; ++j) {
                    offer(ordered_tokens[j], it->second, i);
                }
                continue; // trigram takes the position
            }
        }
        if (i + 2 <= labels.size()) {
            std::vector<SemanticLabel> bi(labels.begin() + i, labels.begin() + i + 2);
            auto it = bigrams.find(bi);
            if (it != bigrams.end()) {
                for (std::size_t j = i; j < i + 2; ++j) {
                    offer(ordered_tokens[j], it->second, i);
                }
            }
        }
    }

    std::map<int, int> out;
    for (const auto& [token, hit] : best) {
        out[token] = hit.first;
    }
    return out;
}

std::map<int, int> attachReadingIndices(const std::vector<AugMember>& members,
                                        const std::map<int, int>& reading_order) {
    std::map<int, int> out;
    for (const auto& m : members) {
        int source = m.origin == TokenOrigin::Fixated ? m.token_index : m.anchor_index;
        auto it = reading_order.find(source);
        if (it != reading_order.end()) {
            out[m.token_index] = it->second;
        }
    }
    return out;
}

namespace {

std::vector<int> sourceOrderTokens(const std::vector<AugMember>& members) {
    std::vector<int> out;
    out.reserve(members.size());
    for (const auto& m : members) {
        out.push_back(m.token_index);
    }
    return out;
}

} // namespace

AugmentedDataset buildAugmentedDataset(const Corpus& corpus,
                                       const std::vector<Scanpath>& scanpaths,
                                       const AugmentOptions& options) {
    options.adjacency.validate();
    if (options.top_k_patterns < 1) {
        throw ValidationError("top_k_patterns must be >= 1");
    }
    if (options.reading_index_cap < 1) {
        throw ValidationError("reading_index_cap must be >= 1");
    }

    std::map<std::string, const Scanpath*> by_id;
    for (const auto& s : scanpaths) {
        if (corpus.find(s.snippet_id) == corpus.end()) {
            throw ValidationError("scanpath references unknown snippet '" + s.snippet_id + "'");
        }
        if (!by_id.emplace(s.snippet_id, &s).second) {
            throw ValidationError("multiple scanpaths for snippet '" + s.snippet_id + "'");
        }
    }

    struct PerSnippet {
        const Snippet* snippet;
        const Scanpath* scanpath;
        std::vector<AugMember> members;
        std::vector<int> ordered;
    };
    static const Scanpath kEmptyPath{};

    std::vector<PerSnippet> work;
    std::vector<std::vector<SemanticLabel>> sequences;
    for (const auto& [id, snippet] : corpus) {
        auto it = by_id.find(id);
        const Scanpath* path = it == by_id.end() ? &kEmptyPath : it->second;
        PerSnippet ps{&snippet, path, {}, {}};
        ps.members = expandAdjacency(fixatedSet(*path), snippet, options.adjacency);
        ps.ordered = options.kgram_order == KGramOrder::Scanpath
                         ? fixationExtendedOrder(*path, ps.members)
                         : sourceOrderTokens(ps.members);

        std::vector<SemanticLabel> labels;
        labels.reserve(ps.ordered.size());
        for (int idx : ps.ordered) {
            labels.push_back(snippet.tokens[idx].label);
        }
        sequences.push_back(std::move(labels));
        work.push_back(std::move(ps));
    }

    auto counts = mineKGrams(sequences);

    AugmentedDataset dataset;
    // An all-empty corpus of scanpaths mines nothing; the dataset then simply
    // carries no patterns instead of failing.
    if (!counts.empty()) {
        dataset.table = selectTopPatterns(counts, options.top_k_patterns);
    }

    for (const auto& ps : work) {
        AugmentedSnippet snip;
        snip.id = ps.snippet->id;
        auto pattern_labels = assignPatternLabels(*ps.snippet, ps.ordered, dataset.table);
        auto reading = attachReadingIndices(
            ps.members, readingOrder(*ps.scanpath, options.reading_index_cap));
        for (const auto& m : ps.members) {
            const auto& t = ps.snippet->tokens[m.token_index];
            AugmentedToken row;
            row.token_index = m.token_index;
            row.text = t.text;
            row.line = t.line;
            row.label = t.label;
            row.origin = m.origin;
            row.anchor_index = m.anchor_index;
            auto pit = pattern_labels.find(m.token_index);
            if (pit != pattern_labels.end()) {
                row.pattern_label = pit->second;
            }
            auto rit = reading.find(m.token_index);
            if (rit != reading.end()) {
                row.reading_index = rit->second;
            }
            snip.tokens.push_back(std::move(row));
        }
        dataset.snippets.push_back(std::move(snip));
    }
    return dataset;
}

void writeAugmentedJsonl(const AugmentedDataset& dataset, std::ostream& out) {
    for (const auto& snip : dataset.snippets) {
        for (const auto& t : snip.tokens) {
            nlohmann::json j;
            j["snippet_id"] = snip.id;
            j["token_index"] = t.token_index;
            j["text"] = t.text;
            j["line"] = t.line;
            j["semantic_label"] = labelName(t.label);
            j["origin"] = t.origin == TokenOrigin::Fixated ? "fixated" : "expanded";
            if (t.origin == TokenOrigin::Expanded) {
                j["anchor_index"] = t.anchor_index;
            } else {
                j["anchor_index"] = nullptr;
            }
            if (t.pattern_label) {
                j["pattern_label"] = *t.pattern_label;
            } else {
                j["pattern_label"] = nullptr;
            }
            if (t.reading_index) {
                j["reading_index"] = *t.reading_index;
            } else {
                j["reading_index"] = nullptr;
            }
            out << j.dump() << "\n";
        }
    }
}

AugmentedDataset loadAugmentedJsonl(std::istream& in) {
    AugmentedDataset dataset;
    std::map<std::string, AugmentedSnippet> by_id;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw ParseError("malformed augmented dataset record", line_no);
        }
        try {
            AugmentedToken t;
            std::string id = j.at("snippet_id").get<std::string>();
            t.token_index = j.at("token_index").get<int>();
            t.text = j.at("text").get<std::string>();
            t.line = j.at("line").get<int>();
            t.label = labelFromName(j.at("semantic_label").get<std::string>());
            std::string origin = j.at("origin").get<std::string>();
            if (origin == "fixated") {
                t.origin = TokenOrigin::Fixated;
            } else if (origin == "expanded") {
                t.origin = TokenOrigin::Expanded;
            } else {
                throw ValidationError("unknown origin '" + origin + "'");
            }
            t.anchor_index = j.at("anchor_index").is_null() ? -1 : j.at("anchor_index").get<int>();
            if (!j.at("pattern_label").is_null()) {
                t.pattern_label = j.at("pattern_label").get<int>();
            }
            if (!j.at("reading_index").is_null()) {
                t.reading_index = j.at("reading_index").get<int>();
            }
            auto [it, inserted] = by_id.try_emplace(id);
            if (inserted) {
                it->second.id = id;
            }
            it->second.tokens.push_back(std::move(t));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad augmented dataset field: ") + e.what(), line_no);
        }
    }
    for (auto& [id, snip] : by_id) {
        std::stable_sort(snip.tokens.begin(), snip.tokens.end(),
                         [](const auto& a, const auto& b) { return a.token_index < b.token_index; });
        dataset.snippets.push_back(std::move(snip));
    }
    return dataset;
}

void writePatternTableJson(const PatternTable& table, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : table.patterns) {
        nlohmann::json j;
        j["rank"] = p.numeric_label;
        nlohmann::json labels = nlohmann::json::array();
        for (auto l : p.labels) {
            labels.push_back(labelName(l));
        }
        j["labels"] = labels;
        j["frequency"] = p.frequency;
        arr.push_back(j);
    }
    nlohmann::json root;
    root["patterns"] = arr;
    out << root.dump(2) << "\n";
}

PatternTable loadPatternTableJson(std::istream& in) {
    nlohmann::json root = nlohmann::json::parse(in, nullptr, false);
    if (root.is_discarded() || !root.is_object() || !root.contains("patterns") ||
        !root["patterns"].is_array()) {
        throw ValidationError("malformed pattern table JSON");
    }
    PatternTable table;
    for (const auto& j : root["patterns"]) {
        KGramPattern p;
        p.numeric_label = j.at("rank").get<int>();
        p.frequency = j.at("frequency").get<std::uint64_t>();
        for (const auto& name : j.at("labels")) {
            p.labels.push_back(labelFromName(name.get<std::string>()));
        }
        table.patterns.push_back(std::move(p));
    }
    return table;
}

} // namespace gazeaug
