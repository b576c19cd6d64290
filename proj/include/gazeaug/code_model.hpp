#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace gazeaug {

// Syntactic category of a token. Keyword, Identifier and Literal are the
// load-bearing categories; the rest keep the labeling total.
enum class SemanticLabel : int {
    Keyword = 0,
    Identifier = 1,
    Literal = 2,
    Operator = 3,
    Separator = 4,
    Comment = 5,
    Other = 6,
};

constexpr int kSemanticLabelCount = 7;

const char* labelName(SemanticLabel label);
SemanticLabel labelFromName(const std::string& name); // throws ValidationError on unknown name

struct SourceToken {
    int index = 0;      // 0-based position in the token stream
    std::string text;   // exact source substring
    int line = 1;       // 1-based
    int col_start = 1;  // 1-based, inclusive
    int col_end = 1;    // 1-based, inclusive
    SemanticLabel label = SemanticLabel::Other;
};

struct Snippet {
    std::string id;
    std::string source;
    std::vector<SourceToken> tokens;
};

// Token classification tables. Defaults cover Java; entries can be swapped
// out for other curly-brace languages without touching the lexer.
struct LabelRules {
    std::set<std::string> keywords;
    std::set<std::string> literal_words; // true / false / null
    std::set<std::string> operators;
    std::set<std::string> separators;

    static const LabelRules& javaDefaults();
};

// Span-accurate lexical scan. Whitespace is dropped, comments are kept
// (one token per line for block comments so every token stays on a single
// line). Tokens come out labeled Comment or Other; labelTokens refines them.
// Throws ParseError for unterminated strings, chars and block comments.
std::vector<SourceToken> tokenize(const std::string& source);

// Assigns each token its SemanticLabel from the rule tables. Total: anything
// unmatched becomes Other.
std::vector<SourceToken> labelTokens(std::vector<SourceToken> tokens,
                                     const LabelRules& rules = LabelRules::javaDefaults());

Snippet parseSnippet(const std::string& id, const std::string& source,
                     const LabelRules& rules = LabelRules::javaDefaults());

// Snippet corpus keyed by id (deterministic iteration order).
using Corpus = std::map<std::string, Snippet>;

// Directory of source files, one snippet per file, filename stem = id.
Corpus loadCorpusDir(const std::string& dir_path);

// JSONL file with one {"id": ..., "source": ...} object per line.
Corpus loadCorpusJsonl(const std::string& file_path);

// Dispatches on path type: directory vs .jsonl file.
Corpus loadCorpus(const std::string& path);

} // namespace gazeaug
