#include "djhp/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace djhp {

int Quiver::vertex_index(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        if (vertices[i] == label) return i;
    return -1;
}

int Quiver::arrow_index(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
        if (arrows[i].label == label) return i;
    return -1;
}

std::string PathWord::str() const {
    if (trivial()) return "e(" + source + ")";
    std::string out;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        if (i) out += "*";
        out += arrows[i];
    }
    return out;
}

PathWord make_path(const Quiver& q, const std::vector<std::string>& labels) {
    if (labels.empty()) throw std::invalid_argument("empty path needs a vertex; use trivial_path");
    PathWord p;
    p.arrows = labels;
    const Arrow* prev = nullptr;
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) { // traversal order
        int ai = q.arrow_index(*it);
        if (ai < 0) throw std::invalid_argument("unknown arrow '" + *it + "'");
        const Arrow& a = q.arrows[ai];
        if (prev && a.src != prev->tgt)
            throw std::invalid_argument("non-composable path at '" + *it + "': needs source " +
                                        prev->tgt + ", has " + a.src);
        if (!prev) p.source = a.src;
        prev = &a;
    }
    p.target = prev->tgt;
    return p;
}

PathWord trivial_path(const Quiver& q, const std::string& vertex) {
    if (q.vertex_index(vertex) < 0) throw std::invalid_argument("unknown vertex '" + vertex + "'");
    PathWord p;
    p.source = p.target = vertex;
    return p;
}

void validate_presentation(const Presentation& p) {
    std::set<std::string> seen;
    for (const auto& v : p.quiver.vertices)
        if (!seen.insert(v).second)
            throw std::invalid_argument("duplicate vertex label '" + v + "'");
    std::set<std::string> aseen;
    for (const auto& a : p.quiver.arrows) {
        if (!aseen.insert(a.label).second)
            throw std::invalid_argument("duplicate arrow label '" + a.label + "'");
        if (p.quiver.vertex_index(a.src) < 0)
            throw std::invalid_argument("arrow '" + a.label + "' has undeclared source '" + a.src + "'");
        if (p.quiver.vertex_index(a.tgt) < 0)
            throw std::invalid_argument("arrow '" + a.label + "' has undeclared target '" + a.tgt + "'");
    }
    for (const auto& r : p.relations) {
        if (r.terms.empty()) throw std::invalid_argument("empty relation");
        std::set<std::vector<std::string>> paths;
        for (const auto& t : r.terms) {
            if (t.coeff == 0) throw std::invalid_argument("zero coefficient in relation");
            if (t.path.length() < 2)
                throw std::invalid_argument("relation path '" + t.path.str() +
                                            "' has length < 2 (not admissible)");
            PathWord check = make_path(p.quiver, t.path.arrows);
            if (check.source != t.path.source || check.target != t.path.target)
                throw std::invalid_argument("path '" + t.path.str() + "' has wrong endpoints");
            if (t.path.source != r.terms.front().path.source ||
                t.path.target != r.terms.front().path.target)
                throw std::invalid_argument("relation terms not parallel: '" + t.path.str() +
                                            "' vs '" + r.terms.front().path.str() + "'");
            if (!paths.insert(t.path.arrows).second)
                throw std::invalid_argument("duplicate path '" + t.path.str() + "' in relation");
        }
    }
}

// ---------------------------------------------------------------------------
// DSL parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Ident, Number, Star, Plus, Minus, Colon, ArrowSym, End } kind;
    std::string text;
    int line;
    int col;
};

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

class Lexer {
public:
    Lexer(const std::string& line, int lineno) : s_(line), line_(lineno) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] == '#') break;
            int col = static_cast<int>(pos_) + 1;
            char c = s_[pos_];
            if (c == '*') { out.push_back({Token::Star, "*", line_, col}); ++pos_; }
            else if (c == '+') { out.push_back({Token::Plus, "+", line_, col}); ++pos_; }
            else if (c == ':') { out.push_back({Token::Colon, ":", line_, col}); ++pos_; }
            else if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
                out.push_back({Token::ArrowSym, "->", line_, col});
                pos_ += 2;
            } else if (c == '-') { out.push_back({Token::Minus, "-", line_, col}); ++pos_; }
            else if (ident_char(c)) {
                std::size_t start = pos_;
                while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
                std::string text = s_.substr(start, pos_ - start);
                // numeric token may continue as a fraction n/d
                if (all_digits(text) && pos_ < s_.size() && s_[pos_] == '/') {
                    std::size_t dstart = pos_ + 1;
                    std::size_t dpos = dstart;
                    while (dpos < s_.size() && s_[dpos] >= '0' && s_[dpos] <= '9') ++dpos;
                    if (dpos > dstart) {
                        text += s_.substr(pos_, dpos - pos_);
                        pos_ = dpos;
                        out.push_back({Token::Number, text, line_, col});
                        continue;
                    }
                }
                out.push_back({all_digits(text) ? Token::Number : Token::Ident, text, line_, col});
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
            }
        }
        out.push_back({Token::End, "", line_, static_cast<int>(s_.size()) + 1});
        return out;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }

    const std::string& s_;
    int line_;
    std::size_t pos_ = 0;
};

Scalar parse_number(const Field& f, const std::string& text, int line, int col) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return f.from_fraction(BigInt(text), 1);
        return f.from_fraction(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad number: ") + e.what(), line, col);
    }
}

struct LineTokens {
    std::vector<Token> toks;
    std::size_t i = 0;

    const Token& peek() const { return toks[i]; }
    const Token& next() { return toks[i++]; }
    bool at_end() const { return toks[i].kind == Token::End; }
};

Relation parse_relation_line(const Presentation& p, LineTokens& lt) {
    Relation rel;
    bool negative = false;
    if (lt.peek().kind == Token::Minus) { negative = true; lt.next(); }
    while (true) {
        const Token& first = lt.peek();
        Scalar coeff = p.field.one();
        std::vector<std::string> arrows;
        if (first.kind == Token::Number) {
            coeff = parse_number(p.field, first.text, first.line, first.col);
            lt.next();
            if (lt.peek().kind != Token::Star)
                throw ParseError("expected '*' after coefficient", lt.peek().line, lt.peek().col);
            lt.next();
        } else if (first.kind != Token::Ident) {
            throw ParseError("expected a relation term", first.line, first.col);
        }
        while (true) {
            const Token& t = lt.peek();
            if (t.kind != Token::Ident)
                throw ParseError("expected an arrow label", t.line, t.col);
            if (p.quiver.arrow_index(t.text) < 0)
                throw ParseError("unknown arrow '" + t.text + "'", t.line, t.col);
            arrows.push_back(t.text);
            lt.next();
            if (lt.peek().kind == Token::Star) { lt.next(); continue; }
            break;
        }
        PathWord path;
        try {
            path = make_path(p.quiver, arrows);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), first.line, first.col);
        }
        if (negative) coeff = p.field.neg(coeff);
        rel.terms.push_back({coeff, path});
        if (lt.at_end()) break;
        const Token& sep = lt.next();
        if (sep.kind == Token::Plus) negative = false;
        else if (sep.kind == Token::Minus) negative = true;
        else throw ParseError("expected '+' or '-' between relation terms", sep.line, sep.col);
    }
    return rel;
}

} // namespace

Presentation parse_presentation(const std::string& text) {
    Presentation p;
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }

    enum Section { None, Vertices, Arrows, Relations } section = None;
    bool have_header = false;

    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        LineTokens lt{Lexer(lines[ln], ln + 1).run()};
        if (lt.at_end()) continue;

        if (!have_header) {
            const Token& t = lt.next();
            if (t.kind != Token::Ident || t.text != "algebra")
                throw ParseError("expected 'algebra <name> over <Q|F<p>>' header", t.line, t.col);
            const Token& name = lt.next();
            if (name.kind != Token::Ident && name.kind != Token::Number)
                throw ParseError("expected algebra name", name.line, name.col);
            p.name = name.text;
            const Token& over = lt.next();
            if (over.kind != Token::Ident || over.text != "over")
                throw ParseError("expected 'over'", over.line, over.col);
            const Token& fld = lt.next();
            if (fld.kind == Token::Ident && fld.text == "Q") {
                p.field = Field::rationals();
            } else if (fld.kind == Token::Ident && fld.text.size() > 1 && fld.text[0] == 'F' &&
                       all_digits(fld.text.substr(1))) {
                try {
                    p.field = Field::prime(std::stoull(fld.text.substr(1)));
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), fld.line, fld.col);
                }
            } else {
                throw ParseError("expected field 'Q' or 'F<p>'", fld.line, fld.col);
            }
            if (!lt.at_end())
                throw ParseError("unexpected text after header", lt.peek().line, lt.peek().col);
            have_header = true;
            continue;
        }

        // section keyword?
        if (lt.peek().kind == Token::Ident &&
            (lt.peek().text == "vertices" || lt.peek().text == "arrows" ||
             lt.peek().text == "relations") &&
            lt.toks.size() >= 2 && lt.toks[lt.i + 1].kind == Token::Colon) {
            const std::string kw = lt.next().text;
            lt.next(); // colon
            section = kw == "vertices" ? Vertices : kw == "arrows" ? Arrows : Relations;
            if (section == Vertices) {
                while (!lt.at_end()) {
                    const Token& t = lt.next();
                    if (t.kind != Token::Ident && t.kind != Token::Number)
                        throw ParseError("expected vertex label", t.line, t.col);
                    p.quiver.vertices.push_back(t.text);
                }
            } else if (!lt.at_end()) {
                throw ParseError("section contents start on the next line", lt.peek().line,
                                 lt.peek().col);
            }
            continue;
        }

        switch (section) {
        case Vertices:
            while (!lt.at_end()) {
                const Token& t = lt.next();
                if (t.kind != Token::Ident && t.kind != Token::Number)
                    throw ParseError("expected vertex label", t.line, t.col);
                p.quiver.vertices.push_back(t.text);
            }
            break;
        case Arrows: {
            const Token& label = lt.next();
            if (label.kind != Token::Ident)
                throw ParseError("expected arrow label (must not be purely numeric)", label.line,
                                 label.col);
            if (lt.next().kind != Token::Colon)
                throw ParseError("expected ':' after arrow label", label.line, label.col);
            const Token& src = lt.next();
            if (src.kind != Token::Ident && src.kind != Token::Number)
                throw ParseError("expected source vertex", src.line, src.col);
            if (lt.next().kind != Token::ArrowSym)
                throw ParseError("expected '->'", src.line, src.col);
            const Token& tgt = lt.next();
            if (tgt.kind != Token::Ident && tgt.kind != Token::Number)
                throw ParseError("expected target vertex", tgt.line, tgt.col);
            if (!lt.at_end())
                throw ParseError("unexpected text after arrow", lt.peek().line, lt.peek().col);
            if (p.quiver.vertex_index(src.text) < 0)
                throw ParseError("unknown vertex '" + src.text + "'", src.line, src.col);
            if (p.quiver.vertex_index(tgt.text) < 0)
                throw ParseError("unknown vertex '" + tgt.text + "'", tgt.line, tgt.col);
            p.quiver.arrows.push_back({label.text, src.text, tgt.text});
            break;
        }
        case Relations: {
            Relation rel = parse_relation_line(p, lt);
            int line = lt.toks.front().line;
            for (const auto& t : rel.terms)
                if (t.coeff == 0)
                    throw ParseError("zero coefficient in relation", line, 1);
            p.relations.push_back(std::move(rel));
            break;
        }
        case None:
            throw ParseError("expected a section ('vertices:', 'arrows:', 'relations:')",
                             lt.peek().line, lt.peek().col);
        }
    }

    if (!have_header) throw ParseError("empty document", 1, 1);
    try {
        validate_presentation(p);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), static_cast<int>(lines.size()), 1);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

namespace {

std::string field_str(const Field& f) {
    if (f.is_rational()) return "Q";
    return "F" + std::to_string(f.characteristic());
}

std::string term_str(const Field& f, const RelationTerm& t, bool first) {
    Scalar c = t.coeff;
    std::string sign;
    if (f.is_rational() && c < 0) {
        sign = first ? "-" : "- ";
        c = -c;
    } else if (!first) {
        sign = "+ ";
    }
    std::string body;
    if (c != f.one()) body = f.str(c) + "*";
    body += t.path.str();
    return sign + body;
}

} // namespace

std::string emit_presentation(const Presentation& p, EmitFormat format) {
    std::ostringstream out;
    if (format == EmitFormat::DSL) {
        out << "algebra " << p.name << " over " << field_str(p.field) << "\n\n";
        out << "vertices:";
        for (const auto& v : p.quiver.vertices) out << " " << v;
        out << "\narrows:\n";
        for (const auto& a : p.quiver.arrows)
            out << "  " << a.label << ": " << a.src << " -> " << a.tgt << "\n";
        out << "relations:\n";
        for (const auto& r : p.relations) {
            out << "  ";
            for (std::size_t i = 0; i < r.terms.size(); ++i) {
                if (i) out << " ";
                out << term_str(p.field, r.terms[i], i == 0);
            }
            out << "\n";
        }
        return out.str();
    }

    out << "digraph " << p.name << " {\n";
    for (const auto& v : p.quiver.vertices) out << "  \"" << v << "\";\n";
    for (const auto& a : p.quiver.arrows)
        out << "  \"" << a.src << "\" -> \"" << a.tgt << "\" [label=\"" << a.label << "\"];\n";
    if (!p.relations.empty()) {
        out << "  // relations:\n";
        for (const auto& r : p.relations) {
            out << "  //   ";
            for (std::size_t i = 0; i < r.terms.size(); ++i) {
                if (i) out << " ";
                out << term_str(p.field, r.terms[i], i == 0);
            }
            out << "\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace djhp
