// S-expression reader and printer for terms and formulas.
//
//   formula := atom | (not f) | (and f f ...) | (or f f ...) | (-> f f)
//            | (forall v f) | (exists v f) | true | false
//   atom    := (= t t) | (REL t ...) | REL            ; bare REL when nullary
//   term    := v | (FUN t ...) | FUN                  ; bare FUN when nullary
//
// Family members are written `name#index`. `;` starts a comment. The printer
// emits binary `and`/`or`; the reader also accepts longer chains, nested to
// the right.
#pragma once

#include "weakarith/syntax.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace weakarith {

namespace detail {

struct Token {
    enum class Kind { open, close, atom, end };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline bool atom_char(char c) {
    if (std::isalnum(static_cast<unsigned char>(c))) return true;
    return std::string_view("_'#=<>+*-/~!&|^.:?@").find(c) != std::string_view::npos;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        std::size_t line = line_, col = col_;
        if (pos_ >= src_.size()) return {Token::Kind::end, "", line, col};
        char c = src_[pos_];
        if (c == '(') {
            advance();
            return {Token::Kind::open, "(", line, col};
        }
        if (c == ')') {
            advance();
            return {Token::Kind::close, ")", line, col};
        }
        std::string text;
        while (pos_ < src_.size()) {
            char d = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
            if (!atom_char(d))
                throw ParseError(ParseError::Kind::lexical, line_, col_, std::string("unexpected character '") + d + "'");
            text.push_back(d);
            advance();
        }
        return {Token::Kind::atom, text, line, col};
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

inline bool is_keyword(const std::string& s) {
    return s == "true" || s == "false" || s == "not" || s == "and" || s == "or" || s == "->" || s == "forall" ||
           s == "exists" || s == "=";
}

inline bool is_variable_name(const std::string& s) {
    if (s.empty() || is_keyword(s)) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

class Reader {
public:
    Reader(std::string_view src, const Language& lang) : lex_(src), lang_(lang) { look_ = lex_.next(); }

    bool at_end() const { return look_.kind == Token::Kind::end; }

    Formula formula() {
        Token t = take();
        if (t.kind == Token::Kind::atom) {
            if (t.text == "true") return build::top();
            if (t.text == "false") return build::bottom();
            SymbolRef ref = symbol_ref(t);
            auto sig = lang_.lookup(ref);
            if (!sig) throw unknown(t);
            if (sig->kind != SymbolKind::relation)
                throw ParseError(ParseError::Kind::syntax, t.line, t.column, "function symbol '" + t.text + "' where a formula is expected");
            if (sig->arity != 0)
                throw ParseError(ParseError::Kind::arity_mismatch, t.line, t.column,
                                 "'" + t.text + "' expects " + std::to_string(sig->arity) + " arguments, got 0");
            return build::rel(ref);
        }
        if (t.kind != Token::Kind::open)
            throw ParseError(ParseError::Kind::syntax, t.line, t.column, t.kind == Token::Kind::end ? "unexpected end of input" : "unexpected ')'");
        Token head = take();
        if (head.kind != Token::Kind::atom)
            throw ParseError(ParseError::Kind::syntax, head.line, head.column, "expected an operator or relation symbol");
        const std::string& h = head.text;
        if (h == "not") {
            Formula a = formula();
            close(head);
            return build::neg(std::move(a));
        }
        if (h == "and" || h == "or") {
            std::vector<Formula> parts;
            while (look_.kind != Token::Kind::close) {
                if (at_end()) throw ParseError(ParseError::Kind::syntax, look_.line, look_.column, "unexpected end of input");
                parts.push_back(formula());
            }
            if (parts.size() < 2)
                throw ParseError(ParseError::Kind::arity_mismatch, head.line, head.column, "'" + h + "' expects at least 2 operands");
            close(head);
            return h == "and" ? build::conj_all(std::move(parts)) : build::disj_all(std::move(parts));
        }
        if (h == "->") {
            Formula a = formula();
            Formula b = formula();
            close(head);
            return build::implies(std::move(a), std::move(b));
        }
        if (h == "forall" || h == "exists") {
            Token v = take();
            if (v.kind != Token::Kind::atom || !is_variable_name(v.text) || lang_.lookup(SymbolRef(v.text)))
                throw ParseError(ParseError::Kind::syntax, v.line, v.column, "expected a bound variable after '" + h + "'");
            Formula body = formula();
            close(head);
            return h == "forall" ? build::forall(v.text, std::move(body)) : build::exists(v.text, std::move(body));
        }
        if (h == "=") {
            std::vector<Term> args = term_list();
            if (args.size() != 2)
                throw ParseError(ParseError::Kind::arity_mismatch, head.line, head.column,
                                 "'=' expects 2 arguments, got " + std::to_string(args.size()));
            return build::eq(std::move(args[0]), std::move(args[1]));
        }
        if (is_keyword(h)) throw ParseError(ParseError::Kind::syntax, head.line, head.column, "misplaced keyword '" + h + "'");
        SymbolRef ref = symbol_ref(head);
        auto sig = lang_.lookup(ref);
        if (!sig) throw unknown(head);
        if (sig->kind != SymbolKind::relation)
            throw ParseError(ParseError::Kind::syntax, head.line, head.column, "function symbol '" + h + "' where a formula is expected");
        std::vector<Term> args = term_list();
        if (static_cast<int>(args.size()) != sig->arity)
            throw ParseError(ParseError::Kind::arity_mismatch, head.line, head.column,
                             "'" + h + "' expects " + std::to_string(sig->arity) + " arguments, got " + std::to_string(args.size()));
        return build::rel(ref, std::move(args));
    }

    Term term() {
        Token t = take();
        if (t.kind == Token::Kind::atom) {
            if (t.text.find('#') != std::string::npos) {
                SymbolRef ref = symbol_ref(t);
                auto sig = lang_.lookup(ref);
                if (!sig) throw unknown(t);
                return constant(t, ref, *sig);
            }
            if (auto sig = lang_.lookup(SymbolRef(t.text))) return constant(t, SymbolRef(t.text), *sig);
            if (!is_variable_name(t.text)) throw unknown(t);
            return Term::variable(t.text);
        }
        if (t.kind != Token::Kind::open)
            throw ParseError(ParseError::Kind::syntax, t.line, t.column, t.kind == Token::Kind::end ? "unexpected end of input" : "unexpected ')'");
        Token head = take();
        if (head.kind != Token::Kind::atom)
            throw ParseError(ParseError::Kind::syntax, head.line, head.column, "expected a function symbol");
        SymbolRef ref = symbol_ref(head);
        auto sig = lang_.lookup(ref);
        if (!sig) throw unknown(head);
        if (sig->kind != SymbolKind::function)
            throw ParseError(ParseError::Kind::syntax, head.line, head.column, "relation symbol '" + head.text + "' where a term is expected");
        std::vector<Term> args = term_list();
        if (static_cast<int>(args.size()) != sig->arity)
            throw ParseError(ParseError::Kind::arity_mismatch, head.line, head.column,
                             "'" + head.text + "' expects " + std::to_string(sig->arity) + " arguments, got " + std::to_string(args.size()));
        return Term::apply(ref, std::move(args));
    }

    void expect_end() {
        if (!at_end()) throw ParseError(ParseError::Kind::syntax, look_.line, look_.column, "trailing input '" + look_.text + "'");
    }

private:
    Token take() {
        Token t = look_;
        if (t.kind != Token::Kind::end) look_ = lex_.next();
        return t;
    }

    void close(const Token& opener) {
        Token t = take();
        if (t.kind != Token::Kind::close)
            throw ParseError(ParseError::Kind::arity_mismatch, opener.line, opener.column,
                             "too many operands for '" + opener.text + "'");
    }

    std::vector<Term> term_list() {
        std::vector<Term> args;
        while (look_.kind != Token::Kind::close) {
            if (at_end()) throw ParseError(ParseError::Kind::syntax, look_.line, look_.column, "unexpected end of input");
            args.push_back(term());
        }
        take();
        return args;
    }

    Term constant(const Token& t, const SymbolRef& ref, const Signature& sig) {
        if (sig.kind != SymbolKind::function)
            throw ParseError(ParseError::Kind::syntax, t.line, t.column, "relation symbol '" + t.text + "' where a term is expected");
        if (sig.arity != 0)
            throw ParseError(ParseError::Kind::arity_mismatch, t.line, t.column,
                             "'" + t.text + "' expects " + std::to_string(sig.arity) + " arguments, got 0");
        return Term::apply(ref);
    }

    SymbolRef symbol_ref(const Token& t) const {
        auto hash = t.text.rfind('#');
        if (hash == std::string::npos) return SymbolRef(t.text);
        std::string name = t.text.substr(0, hash);
        std::string digits = t.text.substr(hash + 1);
        if (name.empty() || digits.empty() || digits.size() > 18 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(ParseError::Kind::lexical, t.line, t.column, "malformed family index in '" + t.text + "'");
        if (!lang_.has_family(name))
            throw ParseError(ParseError::Kind::unbound_family_index, t.line, t.column, "'" + name + "' is not a symbol family");
        return SymbolRef(name, std::stoull(digits));
    }

    ParseError unknown(const Token& t) const {
        if (lang_.has_family(t.text))
            return ParseError(ParseError::Kind::unbound_family_index, t.line, t.column, "'" + t.text + "' needs an index");
        return ParseError(ParseError::Kind::unknown_symbol, t.line, t.column, "'" + t.text + "'");
    }

    Lexer lex_;
    const Language& lang_;
    Token look_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const Language& lang) {
    detail::Reader r(text, lang);
    Formula f = r.formula();
    r.expect_end();
    return f;
}

inline Term parse_term(std::string_view text, const Language& lang) {
    detail::Reader r(text, lang);
    Term t = r.term();
    r.expect_end();
    return t;
}

/// Every top-level formula in `text`, in order.
inline std::vector<Formula> parse_formulas(std::string_view text, const Language& lang) {
    detail::Reader r(text, lang);
    std::vector<Formula> out;
    while (!r.at_end()) out.push_back(r.formula());
    return out;
}

// Printing ------------------------------------------------------------------

inline void print_term(const Term& t, std::string& out) {
    if (t.is_variable()) {
        out += t.var;
        return;
    }
    if (t.args.empty()) {
        out += t.symbol.key();
        return;
    }
    out += '(';
    out += t.symbol.key();
    for (const auto& a : t.args) {
        out += ' ';
        print_term(a, out);
    }
    out += ')';
}

inline std::string print_term(const Term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

inline void print_formula(const Formula& f, std::string& out) {
    auto wrap = [&](const char* op) {
        out += '(';
        out += op;
        for (const auto& c : f.children) {
            out += ' ';
            print_formula(c, out);
        }
        out += ')';
    };
    switch (f.op) {
    case Connective::verum: out += "true"; return;
    case Connective::falsum: out += "false"; return;
    case Connective::equals:
        out += "(=";
        for (const auto& t : f.terms) {
            out += ' ';
            print_term(t, out);
        }
        out += ')';
        return;
    case Connective::relation:
        if (f.terms.empty()) {
            out += f.symbol.key();
            return;
        }
        out += '(';
        out += f.symbol.key();
        for (const auto& t : f.terms) {
            out += ' ';
            print_term(t, out);
        }
        out += ')';
        return;
    case Connective::negation: wrap("not"); return;
    case Connective::conjunction: wrap("and"); return;
    case Connective::disjunction: wrap("or"); return;
    case Connective::implication: wrap("->"); return;
    case Connective::forall:
    case Connective::exists:
        out += f.op == Connective::forall ? "(forall " : "(exists ";
        out += f.var;
        out += ' ';
        print_formula(f.body(), out);
        out += ')';
        return;
    }
}

inline std::string print_formula(const Formula& f) {
    std::string out;
    print_formula(f, out);
    return out;
}

}  // namespace weakarith
