// First-order syntax: languages, terms, formulas, variables and substitution.
#pragma once

#include "weakarith/core.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace weakarith {

enum class SymbolKind { relation, function };

/// Reference to a symbol: a base symbol `name`, or member `name#index` of a family.
struct SymbolRef {
    std::string name;
    std::optional<std::uint64_t> index;

    SymbolRef() = default;
    SymbolRef(std::string n) : name(std::move(n)) {}  // NOLINT: implicit from names is the common case
    SymbolRef(const char* n) : name(n) {}             // NOLINT
    SymbolRef(std::string n, std::uint64_t i) : name(std::move(n)), index(i) {}

    std::string key() const { return index ? name + "#" + std::to_string(*index) : name; }

    friend bool operator==(const SymbolRef&, const SymbolRef&) = default;
    friend auto operator<=>(const SymbolRef&, const SymbolRef&) = default;
};

struct SymbolDecl {
    std::string name;
    SymbolKind kind;
    int arity;
};

struct SymbolFamily {
    std::string name;
    SymbolKind kind;
    std::function<int(std::uint64_t)> arity;
};

struct Signature {
    SymbolKind kind;
    int arity;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// A first-order signature. Finite base symbols plus indexed families for
/// infinite languages.
class Language {
public:
    Language() = default;

    Language& add(const std::string& name, SymbolKind kind, int arity) {
        if (arity < 0) throw Error("negative arity for symbol " + name);
        if (name_taken(name)) throw Error("duplicate symbol " + name);
        symbols_.push_back({name, kind, arity});
        return *this;
    }
    Language& relation(const std::string& name, int arity) { return add(name, SymbolKind::relation, arity); }
    Language& function(const std::string& name, int arity) { return add(name, SymbolKind::function, arity); }
    Language& constant(const std::string& name) { return add(name, SymbolKind::function, 0); }

    Language& add_family(const std::string& name, SymbolKind kind, std::function<int(std::uint64_t)> arity) {
        if (name_taken(name)) throw Error("duplicate symbol " + name);
        families_.push_back({name, kind, std::move(arity)});
        return *this;
    }

    std::optional<Signature> lookup(const SymbolRef& ref) const {
        if (ref.index) {
            for (const auto& f : families_)
                if (f.name == ref.name) return Signature{f.kind, f.arity(*ref.index)};
            return std::nullopt;
        }
        for (const auto& s : symbols_)
            if (s.name == ref.name) return Signature{s.kind, s.arity};
        return std::nullopt;
    }

    bool has_family(const std::string& name) const {
        return std::any_of(families_.begin(), families_.end(), [&](const auto& f) { return f.name == name; });
    }
    bool has_symbol(const std::string& name) const {
        return std::any_of(symbols_.begin(), symbols_.end(), [&](const auto& s) { return s.name == name; });
    }
    bool name_taken(const std::string& name) const { return has_symbol(name) || has_family(name); }

    const std::vector<SymbolDecl>& symbols() const { return symbols_; }
    const std::vector<SymbolFamily>& families() const { return families_; }

    /// Union of two languages. Shared names must agree on kind and arity.
    static Language merge(const Language& a, const Language& b) {
        Language out = a;
        for (const auto& s : b.symbols_) {
            if (auto sig = out.lookup(SymbolRef(s.name))) {
                if (!(*sig == Signature{s.kind, s.arity}))
                    throw Error("conflicting declarations of " + s.name);
                continue;
            }
            out.add(s.name, s.kind, s.arity);
        }
        for (const auto& f : b.families_) {
            if (out.has_family(f.name)) continue;
            out.add_family(f.name, f.kind, f.arity);
        }
        return out;
    }

private:
    std::vector<SymbolDecl> symbols_;
    std::vector<SymbolFamily> families_;
};

// ---------------------------------------------------------------------------

struct Term {
    enum class Kind { variable, application };

    Kind kind = Kind::variable;
    std::string var;
    SymbolRef symbol;
    std::vector<Term> args;

    static Term variable(std::string name) {
        Term t;
        t.kind = Kind::variable;
        t.var = std::move(name);
        return t;
    }
    static Term apply(SymbolRef symbol, std::vector<Term> args = {}) {
        Term t;
        t.kind = Kind::application;
        t.symbol = std::move(symbol);
        t.args = std::move(args);
        return t;
    }

    bool is_variable() const { return kind == Kind::variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

enum class Connective { relation, equals, verum, falsum, negation, conjunction, disjunction, implication, forall, exists };

struct Formula {
    Connective op = Connective::verum;
    SymbolRef symbol;            // relation
    std::vector<Term> terms;     // relation, equals
    std::vector<Formula> children;
    std::string var;             // forall, exists

    bool is(Connective c) const { return op == c; }
    bool is_atomic() const { return op == Connective::relation || op == Connective::equals; }
    bool is_quantifier() const { return op == Connective::forall || op == Connective::exists; }
    bool is_binary() const {
        return op == Connective::conjunction || op == Connective::disjunction || op == Connective::implication;
    }

    const Formula& left() const { return children.at(0); }
    const Formula& right() const { return children.at(1); }
    const Formula& body() const { return children.at(0); }

    friend bool operator==(const Formula&, const Formula&) = default;
};

// Builders ------------------------------------------------------------------

namespace build {

inline Term var(std::string name) { return Term::variable(std::move(name)); }
inline Term app(SymbolRef s, std::vector<Term> args = {}) { return Term::apply(std::move(s), std::move(args)); }

inline Formula rel(SymbolRef s, std::vector<Term> args = {}) {
    Formula f;
    f.op = Connective::relation;
    f.symbol = std::move(s);
    f.terms = std::move(args);
    return f;
}
inline Formula eq(Term a, Term b) {
    Formula f;
    f.op = Connective::equals;
    f.terms.reserve(2);
    f.terms.push_back(std::move(a));
    f.terms.push_back(std::move(b));
    return f;
}
inline Formula top() { return Formula{}; }
inline Formula bottom() {
    Formula f;
    f.op = Connective::falsum;
    return f;
}
inline Formula unary(Connective op, Formula a) {
    Formula f;
    f.op = op;
    f.children.push_back(std::move(a));
    return f;
}
inline Formula binary(Connective op, Formula a, Formula b) {
    Formula f;
    f.op = op;
    f.children.reserve(2);
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}
inline Formula neg(Formula a) { return unary(Connective::negation, std::move(a)); }
inline Formula conj(Formula a, Formula b) { return binary(Connective::conjunction, std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return binary(Connective::disjunction, std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) { return binary(Connective::implication, std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) {
    auto ab = implies(a, b);
    auto ba = implies(std::move(b), std::move(a));
    return conj(std::move(ab), std::move(ba));
}
inline Formula neq(Term a, Term b) { return neg(eq(std::move(a), std::move(b))); }

inline Formula quantifier(Connective op, std::string v, Formula body) {
    Formula f;
    f.op = op;
    f.var = std::move(v);
    f.children.push_back(std::move(body));
    return f;
}
inline Formula forall(std::string v, Formula body) { return quantifier(Connective::forall, std::move(v), std::move(body)); }
inline Formula exists(std::string v, Formula body) { return quantifier(Connective::exists, std::move(v), std::move(body)); }

inline Formula forall(const std::vector<std::string>& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, std::move(body));
    return body;
}
inline Formula exists(const std::vector<std::string>& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, std::move(body));
    return body;
}
inline Formula forall(std::initializer_list<const char*> vs, Formula body) {
    return forall(std::vector<std::string>(vs.begin(), vs.end()), std::move(body));
}
inline Formula exists(std::initializer_list<const char*> vs, Formula body) {
    return exists(std::vector<std::string>(vs.begin(), vs.end()), std::move(body));
}

/// Right-nested conjunction; the empty conjunction is `true`.
inline Formula conj_all(std::vector<Formula> parts) {
    if (parts.empty()) return top();
    Formula acc = std::move(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj(std::move(parts[i]), std::move(acc));
    return acc;
}
/// Right-nested disjunction; the empty disjunction is `false`.
inline Formula disj_all(std::vector<Formula> parts) {
    if (parts.empty()) return bottom();
    Formula acc = std::move(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = disj(std::move(parts[i]), std::move(acc));
    return acc;
}

}  // namespace build

// Variables -----------------------------------------------------------------

inline void collect_variables(const Term& t, std::set<std::string>& out) {
    if (t.is_variable()) {
        out.insert(t.var);
        return;
    }
    for (const auto& a : t.args) collect_variables(a, out);
}

inline std::set<std::string> variables(const Term& t) {
    std::set<std::string> out;
    collect_variables(t, out);
    return out;
}

namespace detail {
inline void free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.op) {
    case Connective::relation:
    case Connective::equals:
        for (const auto& t : f.terms) {
            std::set<std::string> vs;
            collect_variables(t, vs);
            for (const auto& v : vs)
                if (!bound.count(v)) out.insert(v);
        }
        return;
    case Connective::forall:
    case Connective::exists: {
        bool fresh = bound.insert(f.var).second;
        free_vars(f.body(), bound, out);
        if (fresh) bound.erase(f.var);
        return;
    }
    default:
        for (const auto& c : f.children) free_vars(c, bound, out);
    }
}
}  // namespace detail

inline std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    detail::free_vars(f, bound, out);
    return out;
}

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

/// Every variable name occurring in `f`, free or bound.
inline void collect_all_variables(const Formula& f, std::set<std::string>& out) {
    for (const auto& t : f.terms) collect_variables(t, out);
    if (f.is_quantifier()) out.insert(f.var);
    for (const auto& c : f.children) collect_all_variables(c, out);
}

inline std::set<std::string> all_variables(const Formula& f) {
    std::set<std::string> out;
    collect_all_variables(f, out);
    return out;
}

/// Deterministic fresh name: strips a trailing `_<digits>` from `base` and
/// appends the smallest counter that avoids `taken`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    std::string root = base;
    auto us = root.rfind('_');
    if (us != std::string::npos && us + 1 < root.size() &&
        std::all_of(root.begin() + static_cast<std::ptrdiff_t>(us) + 1, root.end(), [](char c) { return c >= '0' && c <= '9'; }))
        root.erase(us);
    if (root.empty()) root = "v";
    for (std::size_t i = 1;; ++i) {
        std::string candidate = root + "_" + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

// Substitution --------------------------------------------------------------

using Substitution = std::map<std::string, Term>;

inline Term substitute(const Term& t, const Substitution& s) {
    if (t.is_variable()) {
        auto it = s.find(t.var);
        return it == s.end() ? t : it->second;
    }
    Term out = Term::apply(t.symbol);
    out.args.reserve(t.args.size());
    for (const auto& a : t.args) out.args.push_back(substitute(a, s));
    return out;
}

/// Simultaneous capture-avoiding substitution of free occurrences.
inline Formula substitute(const Formula& f, const Substitution& s) {
    if (s.empty()) return f;
    switch (f.op) {
    case Connective::relation:
    case Connective::equals: {
        Formula out = f;
        for (auto& t : out.terms) t = substitute(t, s);
        return out;
    }
    case Connective::verum:
    case Connective::falsum:
        return f;
    case Connective::forall:
    case Connective::exists: {
        auto body_free = free_variables(f.body());
        Substitution inner;
        std::set<std::string> range_vars;
        for (const auto& [v, t] : s) {
            if (v == f.var || !body_free.count(v)) continue;
            inner.emplace(v, t);
            collect_variables(t, range_vars);
        }
        if (inner.empty()) return f;
        if (!range_vars.count(f.var))
            return build::quantifier(f.op, f.var, substitute(f.body(), inner));
        std::set<std::string> taken = all_variables(f.body());
        taken.insert(range_vars.begin(), range_vars.end());
        for (const auto& [v, t] : inner) taken.insert(v);
        std::string renamed = fresh_name(f.var, taken);
        inner.emplace(f.var, Term::variable(renamed));
        return build::quantifier(f.op, renamed, substitute(f.body(), inner));
    }
    default: {
        Formula out;
        out.op = f.op;
        out.children.reserve(f.children.size());
        for (const auto& c : f.children) out.children.push_back(substitute(c, s));
        return out;
    }
    }
}

inline Formula substitute(const Formula& f, const std::string& var, const Term& t) {
    return substitute(f, Substitution{{var, t}});
}

// Symbols and well-formedness ----------------------------------------------

struct SymbolUse {
    SymbolRef symbol;
    SymbolKind kind;
    int arity;
    friend bool operator==(const SymbolUse&, const SymbolUse&) = default;
};

namespace detail {
inline void note_use(std::vector<SymbolUse>& out, const SymbolRef& s, SymbolKind kind, int arity) {
    for (const auto& u : out)
        if (u.symbol == s && u.kind == kind) {
            if (u.arity != arity) throw Error("symbol " + s.key() + " used with inconsistent arities");
            return;
        }
    out.push_back({s, kind, arity});
}
inline void term_symbols(const Term& t, std::vector<SymbolUse>& out) {
    if (t.is_variable()) return;
    for (const auto& a : t.args) term_symbols(a, out);
    note_use(out, t.symbol, SymbolKind::function, static_cast<int>(t.args.size()));
}
inline void formula_symbols(const Formula& f, std::vector<SymbolUse>& out) {
    if (f.op == Connective::relation)
        note_use(out, f.symbol, SymbolKind::relation, static_cast<int>(f.terms.size()));
    for (const auto& t : f.terms) term_symbols(t, out);
    for (const auto& c : f.children) formula_symbols(c, out);
}
}  // namespace detail

/// Non-logical symbols used by `f`, in first-use order (innermost terms first).
inline std::vector<SymbolUse> symbols_of(const Formula& f) {
    std::vector<SymbolUse> out;
    detail::formula_symbols(f, out);
    return out;
}

inline std::vector<SymbolUse> symbols_of(const std::vector<Formula>& fs) {
    std::vector<SymbolUse> out;
    for (const auto& f : fs) detail::formula_symbols(f, out);
    return out;
}

/// Throws if `f` uses a symbol absent from `lang` or with the wrong arity.
inline void check_well_formed(const Formula& f, const Language& lang) {
    for (const auto& use : symbols_of(f)) {
        auto sig = lang.lookup(use.symbol);
        if (!sig) throw UnmappedSymbol(use.symbol.key());
        if (sig->kind != use.kind || sig->arity != use.arity)
            throw Error("symbol " + use.symbol.key() + " used with wrong kind or arity");
    }
}

inline int quantifier_rank(const Formula& f) {
    int best = 0;
    for (const auto& c : f.children) best = std::max(best, quantifier_rank(c));
    return f.is_quantifier() ? best + 1 : best;
}

inline std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    for (const auto& c : f.children) n += formula_size(c);
    return n;
}

}  // namespace weakarith
