#include "repolabel/lexing.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include "repolabel/errors.hpp"
#include "repolabel/util.hpp"

namespace repolabel {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }

}  // namespace

std::vector<std::string> split_fragments(std::string_view identifier) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = identifier.size();
    while (i < n) {
        if (!is_alpha(identifier[i])) {
            ++i;  // digits and punctuation are split points, dropped
            continue;
        }
        std::size_t j = i + 1;
        if (is_upper(identifier[i])) {
            // Run of capitals: acronym unless a lowercase letter follows the
            // next capital, in which case the acronym ends one earlier.
            while (j < n && is_upper(identifier[j])) ++j;
            if (j < n && is_lower(identifier[j]) && j - i > 1) --j;
        }
        while (j < n && is_lower(identifier[j])) ++j;
        out.emplace_back(identifier.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split_identifier(std::string_view identifier) {
    std::vector<std::string> out = split_fragments(identifier);
    for (auto& frag : out) frag = ascii_lower(frag);
    return out;
}

// ---------------------------------------------------------------------------
// Stopwords
// ---------------------------------------------------------------------------

namespace {

// Standard English list, trimmed to multi-character entries so that
// single-letter terms ("A.java" -> {a:1}) survive tokenization. Deliberately
// excludes "via".
constexpr const char* kDefaultStopwords[] = {
    "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "cannot", "could", "did", "do", "does", "doing", "down", "during",
    "each", "few", "for", "from", "further", "had", "has", "have", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "if", "in", "into", "is",
    "it", "its", "itself", "just", "me", "more", "most", "my", "myself", "no", "nor", "not",
    "of", "off", "on", "once", "only", "or", "other", "ought", "our", "ours", "ourselves",
    "out", "over", "own", "same", "she", "should", "so", "some", "such", "than", "that",
    "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "very", "was", "we",
    "were", "what", "when", "where", "which", "while", "who", "whom", "why", "will", "with",
    "would", "you", "your", "yours", "yourself", "yourselves",
};

}  // namespace

const Stopwords& Stopwords::default_english() {
    static const Stopwords instance = [] {
        std::vector<std::string> words(std::begin(kDefaultStopwords), std::end(kDefaultStopwords));
        return from_words(std::move(words));
    }();
    return instance;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (!line.empty()) words.push_back(ascii_lower(line));
    }
    return from_words(std::move(words));
}

Stopwords Stopwords::from_words(std::vector<std::string> words) {
    Stopwords sw;
    for (auto& w : words) sw.words_.insert(ascii_lower(w));
    return sw;
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

int Document::total() const {
    int n = 0;
    for (const auto& [term, freq] : terms) n += freq;
    return n;
}

namespace {

void add_terms(Document& doc, std::string_view text, const Stopwords& stopwords) {
    for (const auto& term : split_identifier(text))
        if (!stopwords.contains(term)) ++doc.terms[term];
}

}  // namespace

Document file_name_document(std::string_view relative_path, const Stopwords& stopwords) {
    Document doc;
    std::size_t start = 0;
    while (start <= relative_path.size()) {
        std::size_t slash = relative_path.find('/', start);
        std::string_view segment = relative_path.substr(
            start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        bool last = slash == std::string_view::npos;
        if (last) {
            // Strip the extension from the base name; a leading dot is a
            // hidden-file marker, not an extension separator.
            std::size_t dot = segment.rfind('.');
            if (dot != std::string_view::npos && dot > 0) segment = segment.substr(0, dot);
        }
        add_terms(doc, segment, stopwords);
        if (last) break;
        start = slash + 1;
    }
    return doc;
}

Document identifiers_document(const std::vector<std::string>& identifiers,
                              const Stopwords& stopwords) {
    Document doc;
    for (const auto& id : identifiers) add_terms(doc, id, stopwords);
    return doc;
}

// ---------------------------------------------------------------------------
// Java declaration scanner
// ---------------------------------------------------------------------------

namespace {

enum class TokKind { Ident, Keyword, Punct, Number, Literal };

struct Token {
    TokKind kind;
    std::string text;  // empty for Literal (string/char contents are dropped)
};

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> kw = {
        "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
        "const", "continue", "default", "do", "double", "else", "enum", "extends", "false",
        "final", "finally", "float", "for", "goto", "if", "implements", "import",
        "instanceof", "int", "interface", "long", "native", "new", "null", "package",
        "private", "protected", "public", "return", "short", "static", "strictfp", "super",
        "switch", "synchronized", "this", "throw", "throws", "transient", "true", "try",
        "void", "volatile", "while",
    };
    return kw;
}

bool is_primitive_type(const std::string& s) {
    static const std::set<std::string> prim = {"boolean", "byte", "char", "short", "int",
                                               "long", "float", "double", "void"};
    return prim.count(s) > 0;
}

bool is_ident_start(char c) {
    return is_alpha(c) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

struct LexResult {
    std::vector<Token> tokens;
    bool damaged = false;  // unterminated comment or literal
};

LexResult lex_java(std::string_view src) {
    LexResult out;
    std::size_t i = 0;
    const std::size_t n = src.size();
    while (i < n) {
        char c = src[i];
        if (c == '\0') throw DataError("undecodable source: NUL byte");
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            i = src.find('\n', i);
            if (i == std::string_view::npos) break;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            std::size_t end = src.find("*/", i + 2);
            if (end == std::string_view::npos) {
                out.damaged = true;
                break;
            }
            i = end + 2;
            continue;
        }
        if (c == '"' || c == '\'') {
            // Text blocks ("""..."""), plain strings and char literals.
            if (c == '"' && i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
                std::size_t end = src.find("\"\"\"", i + 3);
                if (end == std::string_view::npos) {
                    out.damaged = true;
                    break;
                }
                i = end + 3;
            } else {
                std::size_t j = i + 1;
                bool closed = false;
                while (j < n) {
                    if (src[j] == '\\' && j + 1 < n) {
                        j += 2;
                        continue;
                    }
                    if (src[j] == c) {
                        closed = true;
                        break;
                    }
                    if (src[j] == '\n') break;  // strings don't span lines
                    ++j;
                }
                if (!closed) {
                    out.damaged = true;
                    break;
                }
                i = j + 1;
            }
            out.tokens.push_back({TokKind::Literal, ""});
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < n && is_ident_char(src[j])) ++j;
            std::string word(src.substr(i, j - i));
            TokKind kind =
                reserved_words().count(word) > 0 ? TokKind::Keyword : TokKind::Ident;
            out.tokens.push_back({kind, std::move(word)});
            i = j;
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::size_t j = i + 1;
            while (j < n && (is_ident_char(src[j]) || src[j] == '.')) ++j;
            out.tokens.push_back({TokKind::Number, std::string(src.substr(i, j - i))});
            i = j;
            continue;
        }
        out.tokens.push_back({TokKind::Punct, std::string(1, c)});
        ++i;
    }
    return out;
}

bool is_punct(const std::vector<Token>& t, std::size_t i, const char* p) {
    return i < t.size() && t[i].kind == TokKind::Punct && t[i].text == p;
}
bool is_ident(const std::vector<Token>& t, std::size_t i) {
    return i < t.size() && t[i].kind == TokKind::Ident;
}

// Matches a type reference starting at `i`: a primitive keyword or a dotted
// identifier chain, optional balanced generic arguments, optional [] pairs and
// varargs dots. Returns the index just past it.
std::optional<std::size_t> match_type_ref(const std::vector<Token>& t, std::size_t i) {
    if (i >= t.size()) return std::nullopt;
    bool prim = t[i].kind == TokKind::Keyword && is_primitive_type(t[i].text);
    if (!prim && t[i].kind != TokKind::Ident) return std::nullopt;
    std::size_t j = i + 1;
    if (!prim) {
        while (is_punct(t, j, ".") && is_ident(t, j + 1)) j += 2;
        if (is_punct(t, j, "<")) {
            // Balanced generic arguments; abort (and treat the '<' as a
            // comparison) when a statement boundary shows up first.
            std::size_t k = j + 1;
            int depth = 1;
            bool ok = false;
            while (k < t.size()) {
                const Token& tk = t[k];
                if (tk.kind == TokKind::Punct) {
                    if (tk.text == "<") ++depth;
                    else if (tk.text == ">" && --depth == 0) {
                        ok = true;
                        ++k;
                        break;
                    } else if (tk.text == ";" || tk.text == "{" || tk.text == "}" ||
                               tk.text == "(" || tk.text == ")")
                        break;
                }
                ++k;
            }
            if (ok) j = k;
        }
    }
    while (is_punct(t, j, "[") && is_punct(t, j + 1, "]")) j += 2;
    if (is_punct(t, j, ".") && is_punct(t, j + 1, ".") && is_punct(t, j + 2, "."))
        j += 3;  // varargs
    return j;
}

enum class Ctx { Top, Class, Method };

class DeclScanner {
public:
    explicit DeclScanner(const std::vector<Token>& tokens) : t_(tokens) {}

    // Returns false when structure is too damaged (brace underflow).
    bool run(std::vector<std::string>& out) {
        out_ = &out;
        while (i_ < t_.size()) {
            if (!step()) return false;
        }
        return true;
    }

private:
    const std::vector<Token>& t_;
    std::vector<Ctx> stack_{Ctx::Top};
    bool pending_class_ = false;
    bool pending_method_ = false;
    std::size_t i_ = 0;
    std::vector<std::string>* out_ = nullptr;

    Ctx cur() const { return stack_.back(); }
    void declare(const std::string& name) { out_->push_back(name); }

    bool step() {
        const Token& tk = t_[i_];
        if (tk.kind == TokKind::Punct) {
            if (tk.text == "{") {
                if (pending_class_) stack_.push_back(Ctx::Class);
                else if (pending_method_) stack_.push_back(Ctx::Method);
                else if (cur() == Ctx::Class) stack_.push_back(Ctx::Method);  // initializer
                else stack_.push_back(cur());
                pending_class_ = pending_method_ = false;
                ++i_;
                return true;
            }
            if (tk.text == "}") {
                if (stack_.size() == 1) return false;  // underflow -> fallback
                stack_.pop_back();
                ++i_;
                return true;
            }
            if (tk.text == ";") {
                pending_method_ = false;
                ++i_;
                return true;
            }
            if (tk.text == "@") {
                skip_annotation();
                return true;
            }
            ++i_;
            return true;
        }
        if (tk.kind == TokKind::Keyword) {
            if (tk.text == "class" || tk.text == "interface" || tk.text == "enum") {
                if (is_ident(t_, i_ + 1)) {
                    declare(t_[i_ + 1].text);
                    pending_class_ = true;
                    i_ += 2;
                } else {
                    ++i_;
                }
                return true;
            }
            if (is_primitive_type(tk.text)) return try_declaration();
            ++i_;
            return true;
        }
        if (tk.kind == TokKind::Ident) {
            if (tk.text == "record" && is_ident(t_, i_ + 1) &&
                (is_punct(t_, i_ + 2, "(") || is_punct(t_, i_ + 2, "<"))) {
                return record_declaration();
            }
            return try_declaration();
        }
        ++i_;
        return true;
    }

    void skip_annotation() {
        ++i_;  // '@'
        if (i_ < t_.size() && t_[i_].kind == TokKind::Keyword && t_[i_].text == "interface")
            return;  // @interface: let the keyword branch declare it
        while (is_ident(t_, i_)) {
            ++i_;
            if (is_punct(t_, i_, ".")) ++i_;
            else break;
        }
        if (is_punct(t_, i_, "(")) skip_balanced_parens();
    }

    void skip_balanced_parens() {
        int depth = 0;
        while (i_ < t_.size()) {
            if (is_punct(t_, i_, "(")) ++depth;
            else if (is_punct(t_, i_, ")")) {
                if (--depth == 0) {
                    ++i_;
                    return;
                }
            }
            ++i_;
        }
    }

    bool record_declaration() {
        declare(t_[i_ + 1].text);
        i_ += 2;
        if (is_punct(t_, i_, "<")) {
            int depth = 0;
            while (i_ < t_.size()) {
                if (is_punct(t_, i_, "<")) ++depth;
                else if (is_punct(t_, i_, ">") && --depth == 0) {
                    ++i_;
                    break;
                }
                ++i_;
            }
        }
        if (is_punct(t_, i_, "(")) parse_params();
        pending_class_ = true;
        return true;
    }

    // Parameter list starting at '('; declares the trailing identifier of each
    // comma-separated segment. Tracks paren and angle depth so generic
    // arguments and annotation arguments don't split segments.
    void parse_params() {
        std::size_t i = i_ + 1;
        int depth = 1;
        int angle = 0;
        std::string last;
        while (i < t_.size() && depth > 0) {
            const Token& tk = t_[i];
            if (tk.kind == TokKind::Punct) {
                if (tk.text == "(") ++depth;
                else if (tk.text == ")") {
                    if (--depth == 0) {
                        if (!last.empty()) declare(last);
                        ++i;
                        break;
                    }
                } else if (tk.text == "<") ++angle;
                else if (tk.text == ">") angle = std::max(0, angle - 1);
                else if (tk.text == "," && depth == 1 && angle == 0) {
                    if (!last.empty()) declare(last);
                    last.clear();
                }
            } else if (tk.kind == TokKind::Ident && depth == 1 && angle == 0) {
                last = tk.text;
            }
            ++i;
        }
        i_ = i;
    }

    // Walks a declarator tail starting after the first declared name, catching
    // `int a = f(x, y), b;` style continuations. Stops at the terminating ';'
    // (depth 0) or when the statement's surrounding bracket closes.
    void walk_declarator_tail(std::size_t from) {
        std::size_t i = from;
        int depth = 0;
        while (i < t_.size()) {
            const Token& tk = t_[i];
            if (tk.kind == TokKind::Punct) {
                if (tk.text == "(" || tk.text == "[" || tk.text == "{") ++depth;
                else if (tk.text == ")" || tk.text == "]" || tk.text == "}") {
                    if (depth == 0) break;  // closing bracket of the enclosing construct
                    --depth;
                } else if (tk.text == ";" && depth == 0) {
                    break;
                } else if (tk.text == "," && depth == 0 && is_ident(t_, i + 1) &&
                           (is_punct(t_, i + 2, ",") || is_punct(t_, i + 2, ";") ||
                            is_punct(t_, i + 2, "="))) {
                    declare(t_[i + 1].text);
                }
            }
            ++i;
        }
        i_ = i;
    }

    bool try_declaration() {
        auto end = match_type_ref(t_, i_);
        if (end && is_ident(t_, *end)) {
            std::size_t name_at = *end;
            if (is_punct(t_, name_at + 1, "(") && cur() == Ctx::Class) {
                declare(t_[name_at].text);  // method
                i_ = name_at + 1;
                parse_params();
                pending_method_ = true;
                return true;
            }
            if (is_punct(t_, name_at + 1, ";") || is_punct(t_, name_at + 1, ":") ||
                is_punct(t_, name_at + 1, ")")) {
                declare(t_[name_at].text);
                i_ = name_at + 2;
                return true;
            }
            if (is_punct(t_, name_at + 1, "=") || is_punct(t_, name_at + 1, ",")) {
                declare(t_[name_at].text);
                walk_declarator_tail(name_at + 1);
                return true;
            }
            ++i_;
            return true;
        }
        // Constructor (or enum constant with arguments) at class level.
        if (cur() == Ctx::Class && t_[i_].kind == TokKind::Ident && is_punct(t_, i_ + 1, "(")) {
            declare(t_[i_].text);
            i_ += 1;
            parse_params();
            pending_method_ = true;
            return true;
        }
        ++i_;
        return true;
    }
};

std::string collect_dotted(const std::vector<Token>& t, std::size_t& i) {
    std::string dotted;
    while (is_ident(t, i)) {
        dotted += t[i].text;
        ++i;
        if (is_punct(t, i, ".")) {
            ++i;
            if (is_punct(t, i, "*")) {
                ++i;
                return "";  // wildcard import: dropped
            }
            dotted += '.';
        } else {
            break;
        }
    }
    return dotted;
}

}  // namespace

ParsedSource parse_java_source(std::string_view source) {
    ParsedSource out;
    LexResult lex = lex_java(source);
    const auto& t = lex.tokens;

    // Header scan: package declaration and imports live before the first '{'.
    std::size_t i = 0;
    while (i < t.size() && !is_punct(t, i, "{")) {
        if (t[i].kind == TokKind::Keyword && t[i].text == "package") {
            ++i;
            out.package_decl = collect_dotted(t, i);
        } else if (t[i].kind == TokKind::Keyword && t[i].text == "import") {
            ++i;
            if (i < t.size() && t[i].kind == TokKind::Keyword && t[i].text == "static") ++i;
            std::string dotted = collect_dotted(t, i);
            if (!dotted.empty()) out.imports.push_back(std::move(dotted));
        } else {
            ++i;
        }
    }

    bool structural_ok = false;
    if (!lex.damaged) {
        DeclScanner scanner(t);
        std::vector<std::string> ids;
        structural_ok = scanner.run(ids);
        if (structural_ok) out.identifiers = std::move(ids);
    }
    if (!structural_ok) {
        out.used_fallback = true;
        out.identifiers.clear();
        for (const auto& tok : t)
            if (tok.kind == TokKind::Ident) out.identifiers.push_back(tok.text);
    }
    return out;
}

std::vector<std::string> extract_identifiers(std::string_view source) {
    return parse_java_source(source).identifiers;
}

}  // namespace repolabel
