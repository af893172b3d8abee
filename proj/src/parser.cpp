#include "pml/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>

namespace pml {

namespace {

// ---------------------------------------------------------------------------
// Lexing

struct Token {
    enum class Kind { Ident, Int, Symbol, Eof };
    Kind kind = Kind::Eof;
    std::string text; // canonical ASCII spelling
    int line = 1;
    int column = 1;
};

bool is_keyword(std::string_view s) {
    static const char* kw[] = {"spec", "end",    "sort", "powersort", "of",   "const",
                               "rel",  "axiom",  "ordered", "forall", "exists", "not",
                               "in",   "model",  "for",  "elem",      "coll", "fact"};
    return std::find(std::begin(kw), std::end(kw), s) != std::end(kw);
}

uint32_t decode_utf8(std::string_view s, size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    uint32_t cp = b0 & (0x7Fu >> len);
    for (int k = 1; k < len; ++k) {
        unsigned char bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    i += len;
    return cp;
}

std::vector<Token> lex(std::string_view src, std::vector<ParseDiagnostic>& diags) {
    std::vector<Token> tokens;
    size_t i = 0;
    int line = 1, column = 1;

    auto push = [&](Token::Kind kind, std::string text, int l, int c) {
        tokens.push_back(Token{kind, std::move(text), l, c});
    };

    while (i < src.size()) {
        char ch = src[i];
        int tl = line, tc = column;
        if (ch == '\n') {
            ++i;
            ++line;
            column = 1;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            ++column;
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t start = i;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '_'))
                ++i;
            std::string word(src.substr(start, i - start));
            column += int(i - start);
            push(Token::Kind::Ident, std::move(word), tl, tc);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t start = i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            column += int(i - start);
            push(Token::Kind::Int, std::string(src.substr(start, i - start)), tl, tc);
            continue;
        }
        switch (ch) {
        case '(': case ')': case '{': case '}': case ':': case ',': case '.': case '*':
        case '=':
            push(Token::Kind::Symbol, std::string(1, ch), tl, tc);
            ++i;
            ++column;
            continue;
        case '<':
            if (src.substr(i, 3) == "<->") {
                push(Token::Kind::Symbol, "<->", tl, tc);
                i += 3;
                column += 3;
            } else if (src.substr(i, 2) == "<=") {
                push(Token::Kind::Symbol, "<=", tl, tc);
                i += 2;
                column += 2;
            } else {
                push(Token::Kind::Symbol, "<", tl, tc);
                ++i;
                ++column;
            }
            continue;
        case '-':
            if (src.substr(i, 2) == "->") {
                push(Token::Kind::Symbol, "->", tl, tc);
                i += 2;
                column += 2;
                continue;
            }
            break;
        case '/':
            if (src.substr(i, 2) == "/\\") {
                push(Token::Kind::Symbol, "/\\", tl, tc);
                i += 2;
                column += 2;
                continue;
            }
            break;
        case '\\':
            if (src.substr(i, 2) == "\\/") {
                push(Token::Kind::Symbol, "\\/", tl, tc);
                i += 2;
                column += 2;
                continue;
            }
            break;
        default:
            break;
        }
        if (static_cast<unsigned char>(ch) < 0x80) {
            diags.push_back({tl, tc, std::string("unexpected character '") + ch + "'", "error"});
            ++i;
            ++column;
            continue;
        }
        uint32_t cp = decode_utf8(src, i);
        ++column;
        switch (cp) {
        case 0x2200: push(Token::Kind::Ident, "forall", tl, tc); break;
        case 0x2203: push(Token::Kind::Ident, "exists", tl, tc); break;
        case 0x00AC: push(Token::Kind::Ident, "not", tl, tc); break;
        case 0x2208: push(Token::Kind::Ident, "in", tl, tc); break;
        case 0x2227: push(Token::Kind::Symbol, "/\\", tl, tc); break;
        case 0x2228: push(Token::Kind::Symbol, "\\/", tl, tc); break;
        case 0x2192: push(Token::Kind::Symbol, "->", tl, tc); break;
        case 0x2194: push(Token::Kind::Symbol, "<->", tl, tc); break;
        case 0x2264: push(Token::Kind::Symbol, "<=", tl, tc); break;
        default:
            diags.push_back({tl, tc, "unexpected character", "error"});
            break;
        }
    }
    push(Token::Kind::Eof, "", line, column);
    return tokens;
}

// ---------------------------------------------------------------------------
// Recursive descent

struct ParseAbort {};

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    std::vector<ParseDiagnostic> diags;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    bool at_word(std::string_view word) const {
        return peek().kind == Token::Kind::Ident && peek().text == word;
    }
    bool at_symbol(std::string_view sym) const {
        return peek().kind == Token::Kind::Symbol && peek().text == sym;
    }
    bool accept_word(std::string_view word) {
        if (!at_word(word)) return false;
        advance();
        return true;
    }
    bool accept_symbol(std::string_view sym) {
        if (!at_symbol(sym)) return false;
        advance();
        return true;
    }

    static std::string describe(const Token& t) {
        if (t.kind == Token::Kind::Eof) return "end of input";
        return "'" + t.text + "'";
    }

    [[noreturn]] void fail(const Token& at, std::string message) {
        diags.push_back({at.line, at.column, std::move(message), "error"});
        throw ParseAbort{};
    }
    [[noreturn]] void fail_expected(std::string_view what) {
        fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    }

    void expect_word(std::string_view word) {
        if (!accept_word(word)) fail_expected("'" + std::string(word) + "'");
    }
    void expect_symbol(std::string_view sym) {
        if (!accept_symbol(sym)) fail_expected("'" + std::string(sym) + "'");
    }

    /// A non-keyword identifier.
    std::string expect_name(std::string_view what) {
        if (peek().kind != Token::Kind::Ident || is_keyword(peek().text)) fail_expected(what);
        return advance().text;
    }
    /// An identifier or an integer literal (fact-file element positions).
    std::string expect_name_or_int(std::string_view what) {
        if (peek().kind == Token::Kind::Int) return advance().text;
        return expect_name(what);
    }

    SourceLoc loc() const { return SourceLoc{peek().line, peek().column}; }

    void expect_eof(std::string_view after) {
        if (peek().kind != Token::Kind::Eof)
            fail(peek(), "expected end of input after " + std::string(after) + ", found " +
                             describe(peek()));
    }

    // ---- formulas ----

    Term resolve(const std::string& name, const std::vector<std::string>& scope) {
        if (std::find(scope.rbegin(), scope.rend(), name) != scope.rend())
            return Variable{name};
        return Constant{name};
    }

    FormulaPtr parse_formula(std::vector<std::string>& scope) {
        if (at_word("forall") || at_word("exists")) return parse_quantified(scope);
        return parse_iff(scope);
    }

    FormulaPtr parse_quantified(std::vector<std::string>& scope) {
        SourceLoc at = loc();
        QuantifierKind kind =
            advance().text == "forall" ? QuantifierKind::Forall : QuantifierKind::Exists;
        std::vector<std::string> vars;
        vars.push_back(expect_name("a variable name"));
        while (accept_symbol(",")) vars.push_back(expect_name("a variable name"));
        expect_symbol(":");
        std::string sort = expect_name("a sort name");
        expect_symbol(".");

        for (const std::string& v : vars) scope.push_back(v);
        FormulaPtr body = parse_formula(scope);
        scope.resize(scope.size() - vars.size());

        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = make_quantifier(kind, *it, sort, std::move(body), at);
        return body;
    }

    FormulaPtr parse_iff(std::vector<std::string>& scope) {
        FormulaPtr lhs = parse_implies(scope);
        if (!at_symbol("<->")) return lhs;
        SourceLoc at = loc();
        advance();
        return make_iff(std::move(lhs), parse_iff(scope), at); // right-assoc
    }
    FormulaPtr parse_implies(std::vector<std::string>& scope) {
        FormulaPtr lhs = parse_or(scope);
        if (!at_symbol("->")) return lhs;
        SourceLoc at = loc();
        advance();
        return make_implies(std::move(lhs), parse_implies(scope), at); // right-assoc
    }
    FormulaPtr parse_or(std::vector<std::string>& scope) {
        FormulaPtr lhs = parse_and(scope);
        while (at_symbol("\\/")) {
            SourceLoc at = loc();
            advance();
            lhs = make_or(std::move(lhs), parse_and(scope), at);
        }
        return lhs;
    }
    FormulaPtr parse_and(std::vector<std::string>& scope) {
        FormulaPtr lhs = parse_unary(scope);
        while (at_symbol("/\\")) {
            SourceLoc at = loc();
            advance();
            lhs = make_and(std::move(lhs), parse_unary(scope), at);
        }
        return lhs;
    }
    FormulaPtr parse_unary(std::vector<std::string>& scope) {
        if (at_word("not")) {
            SourceLoc at = loc();
            advance();
            return make_not(parse_unary(scope), at);
        }
        if (accept_symbol("(")) {
            FormulaPtr f = parse_formula(scope);
            expect_symbol(")");
            return f;
        }
        if (at_word("forall") || at_word("exists"))
            fail(peek(), "a quantified formula must be parenthesized in this position");
        return parse_atom(scope);
    }
    FormulaPtr parse_atom(std::vector<std::string>& scope) {
        SourceLoc at = loc();
        std::string name = expect_name("a formula");
        if (accept_symbol("(")) {
            std::vector<Term> args;
            args.push_back(resolve(expect_name("a term"), scope));
            while (accept_symbol(",")) args.push_back(resolve(expect_name("a term"), scope));
            expect_symbol(")");
            return make_atom(std::move(name), std::move(args), at);
        }
        Term lhs = resolve(name, scope);
        std::string rel;
        if (accept_word("in"))
            rel = "in";
        else if (accept_symbol("<="))
            rel = "<=";
        else if (accept_symbol("="))
            rel = "=";
        else
            fail_expected("'in', '<=' or '=' after a term");
        Term rhs = resolve(expect_name("a term"), scope);
        return make_atom(std::move(rel), {std::move(lhs), std::move(rhs)}, at);
    }

    // ---- spec files ----

    SpecDocument parse_spec_document(std::vector<std::pair<std::string, SourceLoc>>& axiom_locs) {
        SpecDocument doc;
        if (!accept_word("spec")) fail_expected("'spec'");
        doc.name = expect_name("a specification name");

        for (;;) {
            SourceLoc at = loc();
            if (accept_word("sort")) {
                SortDecl d;
                d.loc = at;
                d.name = expect_name("a sort name");
                if (accept_symbol("<")) d.supersort = expect_name("a sort name");
                d.ordered = accept_word("ordered");
                doc.declarations.push_back(std::move(d));
            } else if (accept_word("powersort")) {
                PowerSortDecl d;
                d.loc = at;
                d.name = expect_name("a sort name");
                expect_word("of");
                d.base = expect_name("a sort name");
                doc.declarations.push_back(std::move(d));
            } else if (accept_word("const")) {
                ConstantDecl d;
                d.loc = at;
                d.name = expect_name("a constant name");
                expect_symbol(":");
                d.sort = expect_name("a sort name");
                doc.declarations.push_back(std::move(d));
            } else if (accept_word("rel")) {
                RelationDecl d;
                d.loc = at;
                d.name = expect_name("a relation name");
                expect_symbol(":");
                d.arg_sorts.push_back(expect_name("a sort name"));
                while (accept_symbol("*")) d.arg_sorts.push_back(expect_name("a sort name"));
                doc.declarations.push_back(std::move(d));
            } else {
                break;
            }
        }
        while (at_word("axiom")) {
            SourceLoc at = loc();
            advance();
            std::string name = expect_name("an axiom name");
            expect_symbol(":");
            std::vector<std::string> scope;
            FormulaPtr f = parse_formula(scope);
            doc.axioms.push_back({name, std::move(f)});
            axiom_locs.emplace_back(std::move(name), at);
        }
        if (!at_word("end")) fail_expected("a declaration, 'axiom' or 'end'");
        advance();
        expect_eof("'end'");
        return doc;
    }

    // ---- fact files ----

    FactDocument parse_fact_document() {
        FactDocument doc;
        if (!accept_word("model")) fail_expected("'model'");
        doc.name = expect_name("a model name");
        expect_word("for");
        doc.spec_name = expect_name("a specification name");

        for (;;) {
            SourceLoc at = loc();
            if (accept_word("elem")) {
                std::vector<std::string> names;
                names.push_back(expect_name_or_int("an element name"));
                while (accept_symbol(",")) names.push_back(expect_name_or_int("an element name"));
                expect_symbol(":");
                std::string sort = expect_name("a sort name");
                for (std::string& n : names)
                    doc.elements.push_back({std::move(n), sort, at});
            } else if (accept_word("coll")) {
                CollectionEntry c;
                c.loc = at;
                c.name = expect_name("a collection name");
                expect_symbol(":");
                c.sort = expect_name("a sort name");
                expect_symbol("=");
                expect_symbol("{");
                c.members.push_back(expect_name("a member name"));
                while (accept_symbol(",")) c.members.push_back(expect_name("a member name"));
                expect_symbol("}");
                doc.collections.push_back(std::move(c));
            } else if (accept_word("fact")) {
                FactEntry f;
                f.loc = at;
                f.relation = expect_name("a relation name");
                expect_symbol("(");
                f.args.push_back(expect_name_or_int("an argument"));
                while (accept_symbol(",")) f.args.push_back(expect_name_or_int("an argument"));
                expect_symbol(")");
                doc.facts.push_back(std::move(f));
            } else {
                break;
            }
        }
        if (!at_word("end")) fail_expected("'elem', 'coll', 'fact' or 'end'");
        advance();
        expect_eof("'end'");
        return doc;
    }

private:
    const std::vector<Token>& toks_;
    size_t pos_ = 0;
};

ParseDiagnostic from_sort_diag(const SortDiagnostic& d, const std::string& prefix = "") {
    ParseDiagnostic out;
    out.line = d.loc.known() ? d.loc.line : 1;
    out.column = d.loc.known() ? d.loc.column : 1;
    out.message = prefix + d.message;
    return out;
}

bool numeric_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

} // namespace

// ---------------------------------------------------------------------------
// Entry points

Result<SpecDocument, ParseDiagnostic> parse_spec(std::string_view text) {
    std::vector<ParseDiagnostic> diags;
    std::vector<Token> tokens = lex(text, diags);
    if (!diags.empty()) return diags;

    Parser parser(tokens);
    SpecDocument doc;
    std::vector<std::pair<std::string, SourceLoc>> axiom_locs;
    try {
        doc = parser.parse_spec_document(axiom_locs);
    } catch (const ParseAbort&) {
        return parser.diags;
    }

    for (size_t i = 0; i < axiom_locs.size(); ++i)
        for (size_t j = i + 1; j < axiom_locs.size(); ++j)
            if (axiom_locs[i].first == axiom_locs[j].first)
                diags.push_back({axiom_locs[j].second.line, axiom_locs[j].second.column,
                                 "duplicate axiom name '" + axiom_locs[j].first + "'", "error"});
    if (!diags.empty()) return diags;

    auto sig = build_signature(doc.declarations);
    if (!sig.ok()) {
        for (const SortDiagnostic& d : sig.errors()) diags.push_back(from_sort_diag(d));
        return diags;
    }
    doc.signature = sig.take();

    for (const NamedAxiom& ax : doc.axioms)
        for (const SortDiagnostic& d : check_formula(doc.signature, {}, ax.formula))
            diags.push_back(from_sort_diag(d, "in axiom " + ax.name + ": "));
    if (!diags.empty()) return diags;
    return doc;
}

Result<FactDocument, ParseDiagnostic> parse_facts(std::string_view text) {
    std::vector<ParseDiagnostic> diags;
    std::vector<Token> tokens = lex(text, diags);
    if (!diags.empty()) return diags;

    Parser parser(tokens);
    try {
        return parser.parse_fact_document();
    } catch (const ParseAbort&) {
        return parser.diags;
    }
}

Result<FactDocument, ParseDiagnostic> parse_facts(std::string_view text,
                                                  const SpecDocument& spec) {
    auto parsed = parse_facts(text);
    if (!parsed.ok()) return parsed;
    const FactDocument& doc = parsed.value();
    const Signature& sig = spec.signature;
    std::vector<ParseDiagnostic> diags;

    auto report = [&](SourceLoc at, std::string message) {
        diags.push_back({at.known() ? at.line : 1, at.known() ? at.column : 1,
                         std::move(message), "error"});
    };

    if (doc.spec_name != spec.name)
        report({1, 1}, "fact document targets '" + doc.spec_name +
                           "' but the specification is '" + spec.name + "'");

    std::map<std::string, std::string> element_sort;
    for (const ElementEntry& e : doc.elements) {
        const Sort* s = sig.find_sort(e.sort);
        if (!s) {
            report(e.loc, "unknown sort '" + e.sort + "'");
            continue;
        }
        if (s->kind == SortKind::Power) {
            report(e.loc, "elements of " + display_name(*s) + " are declared with 'coll'");
            continue;
        }
        bool numeric = numeric_name(e.name);
        if (numeric && s->kind != SortKind::Ordered)
            report(e.loc, "integer element '" + e.name + "' requires an ordered sort, '" +
                              e.sort + "' is not ordered");
        if (!numeric && s->kind == SortKind::Ordered)
            report(e.loc, "elements of ordered sort '" + e.sort + "' must be integers, found '" +
                              e.name + "'");
        element_sort[e.name] = e.sort;
    }
    for (const CollectionEntry& c : doc.collections) {
        const Sort* s = sig.find_sort(c.sort);
        if (!s) {
            report(c.loc, "unknown sort '" + c.sort + "'");
            continue;
        }
        if (s->kind != SortKind::Power) {
            report(c.loc, "'" + c.sort + "' is not a power sort");
            continue;
        }
        for (const std::string& m : c.members) {
            auto it = element_sort.find(m);
            if (it == element_sort.end()) {
                report(c.loc, "collection member '" + m + "' is not a declared element");
            } else if (!sig.is_subsort(it->second, s->base)) {
                report(c.loc, "collection member '" + m + "' has sort '" + it->second +
                                  "', expected a subsort of '" + s->base + "'");
            }
        }
    }
    for (const FactEntry& f : doc.facts) {
        const RelationDecl* rel = sig.find_relation(f.relation);
        if (!rel) {
            report(f.loc, "unknown relation '" + f.relation + "'");
            continue;
        }
        if (rel->arg_sorts.size() != f.args.size())
            report(f.loc, f.relation + " expects " + std::to_string(rel->arg_sorts.size()) +
                              " arguments, got " + std::to_string(f.args.size()));
    }

    if (!diags.empty()) return diags;
    return parsed;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const FormulaPtr& f) {
    if (std::holds_alternative<Atom>(f->node)) return 6;
    if (std::holds_alternative<Not>(f->node)) return 5;
    if (std::holds_alternative<Quantifier>(f->node)) return 0;
    switch (std::get<Binary>(f->node).op) {
    case BinaryOp::And: return 4;
    case BinaryOp::Or: return 3;
    case BinaryOp::Implies: return 2;
    case BinaryOp::Iff: return 1;
    }
    return 0;
}

void render_rec(std::ostringstream& os, const FormulaPtr& f, int min_prec) {
    int p = precedence(f);
    bool parens = p < min_prec;
    if (parens) os << "(";
    if (const auto* atom = std::get_if<Atom>(&f->node)) {
        os << atom_to_string(*atom);
    } else if (const auto* neg = std::get_if<Not>(&f->node)) {
        os << "not ";
        render_rec(os, neg->body, 5);
    } else if (const auto* bin = std::get_if<Binary>(&f->node)) {
        const char* sym = nullptr;
        int lhs_min = 0, rhs_min = 0;
        switch (bin->op) {
        case BinaryOp::And: sym = " /\\ "; lhs_min = 4; rhs_min = 5; break;
        case BinaryOp::Or: sym = " \\/ "; lhs_min = 3; rhs_min = 4; break;
        case BinaryOp::Implies: sym = " -> "; lhs_min = 3; rhs_min = 2; break;
        case BinaryOp::Iff: sym = " <-> "; lhs_min = 2; rhs_min = 1; break;
        }
        render_rec(os, bin->lhs, lhs_min);
        os << sym;
        render_rec(os, bin->rhs, rhs_min);
    } else {
        const auto* q = &std::get<Quantifier>(f->node);
        os << (q->kind == QuantifierKind::Forall ? "forall " : "exists ") << q->var;
        // fold consecutive binders of the same kind and sort into one group
        while (const auto* inner = std::get_if<Quantifier>(&q->body->node)) {
            if (inner->kind != q->kind || inner->sort != q->sort) break;
            os << ", " << inner->var;
            q = inner;
        }
        os << ": " << q->sort << " . ";
        render_rec(os, q->body, 0);
    }
    if (parens) os << ")";
}

} // namespace

std::string render_formula(const FormulaPtr& f) {
    std::ostringstream os;
    render_rec(os, f, 0);
    return os.str();
}

std::string render_spec(const SpecDocument& doc) {
    std::ostringstream os;
    os << "spec " << doc.name << "\n";
    for (const Declaration& d : doc.declarations) {
        if (const auto* sd = std::get_if<SortDecl>(&d)) {
            os << "  sort " << sd->name;
            if (!sd->supersort.empty()) os << " < " << sd->supersort;
            if (sd->ordered) os << " ordered";
            os << "\n";
        } else if (const auto* pd = std::get_if<PowerSortDecl>(&d)) {
            os << "  powersort " << pd->name << " of " << pd->base << "\n";
        } else if (const auto* cd = std::get_if<ConstantDecl>(&d)) {
            os << "  const " << cd->name << " : " << cd->sort << "\n";
        } else if (const auto* rd = std::get_if<RelationDecl>(&d)) {
            os << "  rel " << rd->name << " : ";
            for (size_t i = 0; i < rd->arg_sorts.size(); ++i) {
                if (i) os << " * ";
                os << rd->arg_sorts[i];
            }
            os << "\n";
        }
    }
    for (const NamedAxiom& ax : doc.axioms)
        os << "  axiom " << ax.name << ": " << render_formula(ax.formula) << "\n";
    os << "end\n";
    return os.str();
}

std::string render_facts(const FactDocument& doc) {
    std::ostringstream os;
    os << "model " << doc.name << " for " << doc.spec_name << "\n";
    for (size_t i = 0; i < doc.elements.size();) {
        size_t j = i;
        while (j + 1 < doc.elements.size() && doc.elements[j + 1].sort == doc.elements[i].sort)
            ++j;
        os << "  elem ";
        for (size_t k = i; k <= j; ++k) {
            if (k > i) os << ", ";
            os << doc.elements[k].name;
        }
        os << " : " << doc.elements[i].sort << "\n";
        i = j + 1;
    }
    for (const CollectionEntry& c : doc.collections) {
        os << "  coll " << c.name << " : " << c.sort << " = { ";
        for (size_t i = 0; i < c.members.size(); ++i) {
            if (i) os << ", ";
            os << c.members[i];
        }
        os << " }\n";
    }
    for (const FactEntry& f : doc.facts) {
        os << "  fact " << f.relation << "(";
        for (size_t i = 0; i < f.args.size(); ++i) {
            if (i) os << ", ";
            os << f.args[i];
        }
        os << ")\n";
    }
    os << "end\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Structural equality

bool spec_documents_equal(const SpecDocument& a, const SpecDocument& b) {
    if (a.name != b.name || a.declarations != b.declarations ||
        a.axioms.size() != b.axioms.size())
        return false;
    for (size_t i = 0; i < a.axioms.size(); ++i) {
        if (a.axioms[i].name != b.axioms[i].name) return false;
        if (!alpha_equal(a.axioms[i].formula, b.axioms[i].formula)) return false;
    }
    return true;
}

bool fact_documents_equal(const FactDocument& a, const FactDocument& b) {
    return a.name == b.name && a.spec_name == b.spec_name && a.elements == b.elements &&
           a.collections == b.collections && a.facts == b.facts;
}

} // namespace pml
