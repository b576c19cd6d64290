#include "gazeaug/code_model.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gazeaug/errors.hpp"

namespace fs = std::filesystem;

namespace gazeaug {

const char* labelName(SemanticLabel label) {
    switch (label) {
        case SemanticLabel::Keyword: return "keyword";
        case SemanticLabel::Identifier: return "identifier";
        case SemanticLabel::Literal: return "literal";
        case SemanticLabel::Operator: return "operator";
        case SemanticLabel::Separator: return "separator";
        case SemanticLabel::Comment: return "comment";
        case SemanticLabel::Other: return "other";
    }
    return "other";
}

SemanticLabel labelFromName(const std::string& name) {
    for (int i = 0; i < kSemanticLabelCount; ++i) {
        SemanticLabel l = static_cast<SemanticLabel>(i);
        if (name == labelName(l)) {
            return l;
        }
    }
    throw ValidationError("unknown semantic label name: '" + name + "'");
}

const LabelRules& LabelRules::javaDefaults() {
    static const LabelRules rules = [] {
        LabelRules r;
        r.keywords = {
            "abstract", "assert", "boolean", "break", "byte", "case", "catch",
            "char", "class", "const", "continue", "default", "do", "double",
            "else", "enum", "extends", "final", "finally", "float", "for",
            "goto", "if", "implements", "import", "instanceof", "int",
            "interface", "long", "native", "new", "package", "private",
            "protected", "public", "return", "short", "static", "strictfp",
            "super", "switch", "synchronized", "this", "throw", "throws",
            "transient", "try", "void", "volatile", "while"};
        r.literal_words = {"true", "false", "null"};
        r.operators = {
            ">>>=", ">>>", "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||",
            "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<",
            ">>", "->", "::", "+", "-", "*", "/", "%", "=", "<", ">", "!",
            "~", "&", "|", "^", "?", ":"};
        r.separators = {"(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "..."};
        return r;
    }();
    return rules;
}

namespace {

bool isIdentStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool isIdentPart(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool isDigit(char c) { return c >= '0' && c <= '9'; }

// Multi-char punctuation, longest first for maximal munch.
const std::vector<std::string>& punctTable() {
    static const std::vector<std::string> table = [] {
        std::vector<std::string> t = {
            ">>>=", "...", ">>>", "<<=", ">>=", "==", "!=", "<=", ">=", "&&",
            "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
            "<<", ">>", "->", "::", "+", "-", "*", "/", "%", "=", "<", ">",
            "!", "~", "&", "|", "^", "?", ":", ";", ",", ".", "(", ")", "{",
            "}", "[", "]", "@"};
        std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return a.size() > b.size();
        });
        return t;
    }();
    return table;
}

struct Cursor {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
};

void emit(std::vector<SourceToken>& out, const Cursor& c, std::size_t start_pos,
          int start_line, int start_col, SemanticLabel label) {
    SourceToken t;
    t.index = static_cast<int>(out.size());
    t.text = c.src.substr(start_pos, c.pos - start_pos);
    t.line = start_line;
    t.col_start = start_col;
    t.col_end = c.col - 1;
    t.label = label;
    out.push_back(std::move(t));
}

} // namespace

std::vector<SourceToken> tokenize(const std::string& source) {
    std::vector<SourceToken> out;
    Cursor c{source};

    while (!c.done()) {
        char ch = c.peek();
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v') {
            c.advance();
            continue;
        }

        std::size_t start_pos = c.pos;
        int start_line = c.line;
        int start_col = c.col;

        if (ch == '/' && c.peek(1) == '/') {
            while (!c.done() && c.peek() != '\n') {
                c.advance();
            }
            emit(out, c, start_pos, start_line, start_col, SemanticLabel::Comment);
            continue;
        }

        if (ch == '/' && c.peek(1) == '*') {
            // Block comments are split into one token per line so spans never
            // cross line boundaries.
            c.advance();
            c.advance();
            bool closed = false;
            while (!c.done()) {
                if (c.peek() == '*' && c.peek(1) == '/') {
                    c.advance();
                    c.advance();
                    closed = true;
                    break;
                }
                if (c.peek() == '\n') {
                    if (c.pos > start_pos) {
                        emit(out, c, start_pos, start_line, start_col, SemanticLabel::Comment);
                    }
                    c.advance();
                    start_pos = c.pos;
                    start_line = c.line;
                    start_col = c.col;
                    continue;
                }
                c.advance();
            }
            if (!closed) {
                throw ParseError("unterminated block comment", start_line, start_col);
            }
            if (c.pos > start_pos) {
                emit(out, c, start_pos, start_line, start_col, SemanticLabel::Comment);
            }
            continue;
        }

        if (ch == '"' || ch == '\'') {
            char quote = ch;
            c.advance();
            bool closed = false;
            while (!c.done() && c.peek() != '\n') {
                if (c.peek() == '\\' && c.pos + 1 < source.size() && c.peek(1) != '\n') {
                    c.advance();
                    c.advance();
                    continue;
                }
                if (c.peek() == quote) {
                    c.advance();
                    closed = true;
                    break;
                }
                c.advance();
            }
            if (!closed) {
                throw ParseError(quote == '"' ? "unterminated string literal"
                                              : "unterminated character literal",
                                 start_line, start_col);
            }
            emit(out, c, start_pos, start_line, start_col, SemanticLabel::Other);
            continue;
        }

        if (isDigit(ch) || (ch == '.' && isDigit(c.peek(1)))) {
            // Covers ints, floats, hex/binary forms, underscores, suffixes
            // and signed exponents (1e-5, 0x1p+3).
            while (!c.done()) {
                char d = c.peek();
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.') {
                    if ((d == 'e' || d == 'E' || d == 'p' || d == 'P') &&
                        (c.peek(1) == '+' || c.peek(1) == '-')) {
                        c.advance();
                        c.advance();
                        continue;
                    }
                    c.advance();
                    continue;
                }
                break;
            }
            emit(out, c, start_pos, start_line, start_col, SemanticLabel::Other);
            continue;
        }

        if (isIdentStart(ch)) {
            while (!c.done() && isIdentPart(c.peek())) {
                c.advance();
            }
            emit(out, c, start_pos, start_line, start_col, SemanticLabel::Other);
            continue;
        }

        bool matched = false;
        for (const auto& p : punctTable()) {
            if (source.compare(c.pos, p.size(), p) == 0) {
                for (std::size_t i = 0; i < p.size(); ++i) {
                    c.advance();
                }
                emit(out, c, start_pos, start_line, start_col, SemanticLabel::Other);
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }

        // Unknown byte: keep it as a single-character token.
        c.advance();
        emit(out, c, start_pos, start_line, start_col, SemanticLabel::Other);
    }

    return out;
}

std::vector<SourceToken> labelTokens(std::vector<SourceToken> tokens, const LabelRules& rules) {
    for (auto& t : tokens) {
        if (t.label == SemanticLabel::Comment) {
            continue;
        }
        const std::string& s = t.text;
        char first = s.empty() ? '\0' : s[0];
        if (rules.keywords.count(s)) {
            t.label = SemanticLabel::Keyword;
        } else if (rules.literal_words.count(s) || isDigit(first) || first == '"' || first == '\'' ||
                   (first == '.' && s.size() > 1 && isDigit(s[1]))) {
            t.label = SemanticLabel::Literal;
        } else if (isIdentStart(first)) {
            t.label = SemanticLabel::Identifier;
        } else if (rules.operators.count(s)) {
            t.label = SemanticLabel::Operator;
        } else if (rules.separators.count(s)) {
            t.label = SemanticLabel::Separator;
        } else {
            t.label = SemanticLabel::Other;
        }
    }
    return tokens;
}

Snippet parseSnippet(const std::string& id, const std::string& source, const LabelRules& rules) {
    Snippet s;
    s.id = id;
    s.source = source;
    s.tokens = labelTokens(tokenize(source), rules);
    return s;
}

namespace {

std::string readFile(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void insertSnippet(Corpus& corpus, Snippet snippet) {
    auto [it, inserted] = corpus.emplace(snippet.id, std::move(snippet));
    if (!inserted) {
        throw ValidationError("duplicate snippet id in corpus: '" + it->first + "'");
    }
}

} // namespace

Corpus loadCorpusDir(const std::string& dir_path) {
    fs::path dir(dir_path);
    if (!fs::is_directory(dir)) {
        throw IoError("not a directory: " + dir_path);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    Corpus corpus;
    for (const auto& f : files) {
        insertSnippet(corpus, parseSnippet(f.stem().string(), readFile(f)));
    }
    return corpus;
}

Corpus loadCorpusJsonl(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) {
        throw IoError("cannot open file: " + file_path);
    }
    Corpus corpus;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("source") ||
            !j["id"].is_string() || !j["source"].is_string()) {
            throw ParseError("malformed snippet record, expected {\"id\", \"source\"}", line_no);
        }
        insertSnippet(corpus, parseSnippet(j["id"].get<std::string>(), j["source"].get<std::string>()));
    }
    return corpus;
}

Corpus loadCorpus(const std::string& path) {
    if (fs::is_directory(path)) {
        return loadCorpusDir(path);
    }
    return loadCorpusJsonl(path);
}

} // namespace gazeaug
