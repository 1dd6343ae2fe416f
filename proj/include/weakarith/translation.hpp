// Relative interpretations: the translation phi -> phi^I, interpretation
// obligations, semantic verification on finite models, and composition.
//
// A translation maps
//   - the domain to a formula in v0 (absent = the whole universe, no guards),
//   - each k-ary relation to a formula in v0..v{k-1},
//   - each k-ary function to a formula in v0..vk describing its graph
//     (vk is the value), or to itself (`identity`), in which case its
//     applications are kept as terms.
//
// Translating an atom flattens graph-mapped applications innermost-first,
// left to right: each becomes a fresh variable w introduced by
// exists w (delta(w) and (F_I(args, w) and ...)) around the mapped atom.
// Quantifiers are relativized: forall x (delta(x) -> ...), exists x (delta(x) and ...).
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/sexpr.hpp"
#include "weakarith/structure.hpp"
#include "weakarith/syntax.hpp"
#include "weakarith/theory.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace weakarith {

inline std::string designated(std::size_t i) { return "v" + std::to_string(i); }

/// Image of one source symbol. `formula` is empty for identity maps.
struct SymbolImage {
    SymbolKind kind = SymbolKind::relation;
    int arity = 0;
    std::optional<Formula> formula;

    bool identity() const { return !formula; }
};

class TranslationError : public Error {
public:
    using Error::Error;
};

struct Translation {
    std::string name;
    std::string source_id;
    std::string target_id;
    Language source;
    Language target;
    std::optional<Formula> domain;
    std::map<SymbolRef, SymbolImage> images;
    bool one_dimensional = true;
    bool parameter_free = true;
    bool one_piece = true;

    Translation& map_relation(const SymbolRef& s, int arity, Formula f) {
        images[s] = {SymbolKind::relation, arity, std::move(f)};
        return *this;
    }
    Translation& map_function(const SymbolRef& s, int arity, Formula graph) {
        images[s] = {SymbolKind::function, arity, std::move(graph)};
        return *this;
    }
    Translation& map_identity(const SymbolRef& s, SymbolKind kind, int arity) {
        images[s] = {kind, arity, std::nullopt};
        return *this;
    }

    /// Throws unless the data describes a one-dimensional, parameter-free,
    /// one-piece translation whose formulas lie in the target language.
    void validate() const {
        if (!one_dimensional || !parameter_free || !one_piece)
            throw TranslationError("only one-dimensional, parameter-free, one-piece translations are supported");
        if (domain) {
            auto fv = free_variables(*domain);
            if (fv.size() > 1 || (fv.size() == 1 && !fv.count(designated(0))))
                throw TranslationError("domain formula must have exactly the free variable v0");
            check_well_formed(*domain, target);
        }
        for (const auto& [sym, img] : images) {
            auto sig = source.lookup(sym);
            if (!sig) throw TranslationError("mapped symbol " + sym.key() + " is not in the source language");
            if (sig->kind != img.kind || sig->arity != img.arity)
                throw TranslationError("image of " + sym.key() + " has the wrong kind or arity");
            if (img.identity()) {
                auto tsig = target.lookup(sym);
                if (!tsig || !(*tsig == *sig))
                    throw TranslationError("identity image of " + sym.key() + " is not in the target language");
                continue;
            }
            std::size_t k = static_cast<std::size_t>(img.arity) + (img.kind == SymbolKind::function ? 1 : 0);
            std::set<std::string> allowed;
            for (std::size_t i = 0; i < k; ++i) allowed.insert(designated(i));
            for (const auto& v : free_variables(*img.formula))
                if (!allowed.count(v))
                    throw TranslationError("image of " + sym.key() + " has free variable " + v +
                                           " outside v0..v" + std::to_string(k - 1));
            check_well_formed(*img.formula, target);
        }
    }

    const SymbolImage& image(const SymbolRef& s) const {
        auto it = images.find(s);
        if (it == images.end()) throw UnmappedSymbol(s.key());
        return it->second;
    }

    Formula delta(const Term& t) const {
        if (!domain) return build::top();
        return substitute(*domain, designated(0), t);
    }

    /// Graph formula of a function image with v0..vk replaced by `args`, `value`.
    Formula graph(const SymbolRef& s, const std::vector<Term>& args, const Term& value) const {
        const SymbolImage& img = image(s);
        if (img.identity()) return build::eq(Term::apply(s, args), value);
        Substitution sub;
        for (std::size_t i = 0; i < args.size(); ++i) sub.emplace(designated(i), args[i]);
        sub.emplace(designated(args.size()), value);
        return substitute(*img.formula, sub);
    }

    Formula relation(const SymbolRef& s, const std::vector<Term>& args) const {
        const SymbolImage& img = image(s);
        if (img.identity()) return build::rel(s, args);
        Substitution sub;
        for (std::size_t i = 0; i < args.size(); ++i) sub.emplace(designated(i), args[i]);
        return substitute(*img.formula, sub);
    }
};

namespace detail {

struct Flattener {
    const Translation& tr;
    std::set<std::string>& taken;
    std::vector<std::pair<std::string, Formula>> guards;

    Term flatten(const Term& t) {
        if (t.is_variable()) return t;
        std::vector<Term> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(flatten(a));
        const SymbolImage& img = tr.image(t.symbol);
        if (img.kind != SymbolKind::function) throw TranslationError(t.symbol.key() + " is not a function symbol");
        if (img.identity()) return Term::apply(t.symbol, std::move(args));
        std::string w = fresh_name("w", taken);
        taken.insert(w);
        guards.emplace_back(w, tr.graph(t.symbol, args, Term::variable(w)));
        return Term::variable(w);
    }
};

inline Formula guarded_exists(const Translation& tr, const std::string& w, Formula body) {
    using namespace build;
    if (!tr.domain) return exists(w, std::move(body));
    return exists(w, conj(tr.delta(var(w)), std::move(body)));
}

inline Formula translate(const Translation& tr, const Formula& f, std::set<std::string>& taken) {
    using namespace build;
    switch (f.op) {
    case Connective::verum:
    case Connective::falsum:
        return f;
    case Connective::relation:
    case Connective::equals: {
        Flattener fl{tr, taken, {}};
        std::vector<Term> terms;
        for (const auto& t : f.terms) terms.push_back(fl.flatten(t));
        Formula core;
        if (f.op == Connective::equals) {
            core = eq(terms[0], terms[1]);
        } else {
            const SymbolImage& img = tr.image(f.symbol);
            if (img.kind != SymbolKind::relation) throw TranslationError(f.symbol.key() + " is not a relation symbol");
            core = tr.relation(f.symbol, terms);
        }
        for (auto it = fl.guards.rbegin(); it != fl.guards.rend(); ++it)
            core = guarded_exists(tr, it->first, conj(it->second, std::move(core)));
        return core;
    }
    case Connective::negation: return neg(translate(tr, f.body(), taken));
    case Connective::conjunction:
    case Connective::disjunction:
    case Connective::implication: {
        Formula a = translate(tr, f.left(), taken);
        Formula b = translate(tr, f.right(), taken);
        return binary(f.op, std::move(a), std::move(b));
    }
    case Connective::forall: {
        Formula body = translate(tr, f.body(), taken);
        if (!tr.domain) return forall(f.var, std::move(body));
        return forall(f.var, implies(tr.delta(var(f.var)), std::move(body)));
    }
    case Connective::exists: {
        Formula body = translate(tr, f.body(), taken);
        if (!tr.domain) return exists(f.var, std::move(body));
        return exists(f.var, conj(tr.delta(var(f.var)), std::move(body)));
    }
    }
    throw Error("unreachable");
}

}  // namespace detail

/// phi^I. Fresh flattening variables are `w_1`, `w_2`, ... avoiding every
/// variable of phi.
inline Formula translate_formula(const Translation& tr, const Formula& f) {
    std::set<std::string> taken = all_variables(f);
    return detail::translate(tr, f, taken);
}

// Obligations ---------------------------------------------------------------

struct Obligation {
    enum class Kind { totality, axiom, congruence };
    Kind kind;
    std::string label;
    Formula sentence;
    std::optional<std::uint64_t> axiom_index;
};

inline std::string obligation_kind_name(Obligation::Kind k) {
    switch (k) {
    case Obligation::Kind::totality: return "totality";
    case Obligation::Kind::axiom: return "axiom";
    case Obligation::Kind::congruence: return "congruence";
    }
    return "?";
}

namespace detail {
inline std::vector<std::string> names(const std::string& base, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(base + std::to_string(i));
    return out;
}
inline std::vector<Term> vars_of(const std::vector<std::string>& ns) {
    std::vector<Term> out;
    for (const auto& n : ns) out.push_back(Term::variable(n));
    return out;
}

/// forall xs (delta(x1) and ... -> body), with no guards when the domain is the universe.
inline Formula relativized_forall(const Translation& tr, const std::vector<std::string>& xs, Formula body) {
    using namespace build;
    if (tr.domain && !xs.empty()) {
        std::vector<Formula> guards;
        for (const auto& x : xs) guards.push_back(tr.delta(var(x)));
        body = implies(conj_all(std::move(guards)), std::move(body));
    }
    return forall(xs, std::move(body));
}
}  // namespace detail

/// Totality of F_I on the domain: forall x (delta(x) -> exists y (delta(y) and F_I(x, y))).
inline Formula totality_sentence(const Translation& tr, const SymbolRef& s, int arity) {
    using namespace build;
    auto xs = detail::names("x", static_cast<std::size_t>(arity));
    Formula inner = tr.graph(s, detail::vars_of(xs), var("y"));
    Formula ex = tr.domain ? exists("y", conj(tr.delta(var("y")), std::move(inner))) : exists("y", std::move(inner));
    return detail::relativized_forall(tr, xs, std::move(ex));
}

/// Source-language equality congruence for one symbol.
inline Formula congruence_axiom(const SymbolRef& s, SymbolKind kind, int arity) {
    using namespace build;
    auto xs = detail::names("x", static_cast<std::size_t>(arity));
    auto ys = detail::names("y", static_cast<std::size_t>(arity));
    std::vector<Formula> eqs;
    for (std::size_t i = 0; i < xs.size(); ++i) eqs.push_back(eq(var(xs[i]), var(ys[i])));
    Formula concl = kind == SymbolKind::function
                        ? eq(app(s, detail::vars_of(xs)), app(s, detail::vars_of(ys)))
                        : implies(rel(s, detail::vars_of(xs)), rel(s, detail::vars_of(ys)));
    if (arity == 0) return concl;
    std::vector<std::string> all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    return forall(all, implies(conj_all(std::move(eqs)), std::move(concl)));
}

/// Totality sentences for the function symbols of the first k axioms, then the
/// translated axioms, then translated congruence axioms once per symbol.
inline std::vector<Obligation> obligations(const Translation& tr, const Theory& t, std::size_t first_k) {
    std::vector<Obligation> out;
    auto axioms = t.first(first_k);
    auto uses = symbols_of(axioms);
    for (const auto& u : uses)
        if (u.kind == SymbolKind::function)
            out.push_back({Obligation::Kind::totality, "totality " + u.symbol.key(),
                           totality_sentence(tr, u.symbol, u.arity), std::nullopt});
    for (std::size_t i = 0; i < axioms.size(); ++i)
        out.push_back({Obligation::Kind::axiom, "axiom " + std::to_string(i), translate_formula(tr, axioms[i]), i});
    for (const auto& u : uses)
        out.push_back({Obligation::Kind::congruence, "congruence " + u.symbol.key(),
                       translate_formula(tr, congruence_axiom(u.symbol, u.kind, u.arity)), std::nullopt});
    return out;
}

struct VerificationReport {
    std::size_t checked = 0;
    std::vector<Obligation> failures;
    bool ok() const { return failures.empty(); }
};

inline VerificationReport verify_semantic(const Translation& tr, const Theory& t, const FiniteStructure& m,
                                          std::size_t first_k) {
    VerificationReport rep;
    for (auto& ob : obligations(tr, t, first_k)) {
        ++rep.checked;
        if (!eval_formula(m, ob.sentence)) rep.failures.push_back(std::move(ob));
    }
    return rep;
}

// Induced structures --------------------------------------------------------

/// M^I: the source structure defined inside M by I. Domain elements are
/// renumbered in increasing order. Throws unless the domain is nonempty and
/// every graph is functional and total on it.
inline FiniteStructure induced_structure(const Translation& tr, const FiniteStructure& m,
                                         const std::vector<SymbolUse>& symbols) {
    std::vector<int> dom;
    for (int d = 0; d < m.size; ++d)
        if (!tr.domain || eval_formula(m, *tr.domain, {{designated(0), d}})) dom.push_back(d);
    if (dom.empty()) throw TranslationError("domain is empty in the target structure");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < dom.size(); ++i) pos[dom[i]] = static_cast<int>(i);
    FiniteStructure out(static_cast<int>(dom.size()));
    for (const auto& u : symbols) {
        Table& tab = out.declare(u.symbol, u.kind, u.arity, 0);
        for (std::size_t idx = 0; idx < tab.data.size(); ++idx) {
            auto tup = detail::tuple_of(idx, u.arity, out.size);
            std::vector<Term> args;
            Assignment sigma;
            for (std::size_t i = 0; i < tup.size(); ++i) {
                args.push_back(Term::variable(designated(i)));
                sigma[designated(i)] = dom[static_cast<std::size_t>(tup[i])];
            }
            if (u.kind == SymbolKind::relation) {
                tab.data[idx] = eval_formula(m, tr.relation(u.symbol, args), sigma) ? 1 : 0;
                continue;
            }
            Formula g = tr.graph(u.symbol, args, Term::variable(designated(tup.size())));
            int value = -1;
            for (int d : dom) {
                sigma[designated(tup.size())] = d;
                if (!eval_formula(m, g, sigma)) continue;
                if (value >= 0) throw TranslationError("graph of " + u.symbol.key() + " is not functional");
                value = pos[d];
            }
            if (value < 0) throw TranslationError("graph of " + u.symbol.key() + " is not total on the domain");
            tab.data[idx] = value;
        }
    }
    return out;
}

// Composition ---------------------------------------------------------------

inline bool same_language(const Language& a, const Language& b) {
    auto covers = [](const Language& x, const Language& y) {
        for (const auto& s : x.symbols()) {
            auto sig = y.lookup(SymbolRef(s.name));
            if (!sig || !(*sig == Signature{s.kind, s.arity})) return false;
        }
        for (const auto& f : x.families())
            if (!y.has_family(f.name)) return false;
        return true;
    };
    return covers(a, b) && covers(b, a);
}

/// J after I. The domain is delta_J and (delta_I)^J; symbol images are the
/// J-translations of I's images. Symbols identical under both stay identical.
inline Translation compose(const Translation& i, const Translation& j) {
    if (!same_language(i.target, j.source))
        throw TranslationError("cannot compose: target of " + i.name + " is not the source of " + j.name);
    Translation k;
    k.name = j.name + "." + i.name;
    k.source_id = i.source_id;
    k.target_id = j.target_id;
    k.source = i.source;
    k.target = j.target;
    if (i.domain) {
        Formula di = translate_formula(j, *i.domain);
        k.domain = j.domain ? build::conj(*j.domain, std::move(di)) : std::move(di);
    } else {
        k.domain = j.domain;
    }
    for (const auto& [sym, img] : i.images) {
        std::vector<Term> args;
        for (int a = 0; a < img.arity; ++a) args.push_back(Term::variable(designated(static_cast<std::size_t>(a))));
        if (img.kind == SymbolKind::relation) {
            if (img.identity() && j.image(sym).identity()) {
                k.map_identity(sym, img.kind, img.arity);
                continue;
            }
            k.map_relation(sym, img.arity, translate_formula(j, i.relation(sym, args)));
        } else {
            if (img.identity() && j.image(sym).identity()) {
                k.map_identity(sym, img.kind, img.arity);
                continue;
            }
            Term value = Term::variable(designated(args.size()));
            k.map_function(sym, img.arity, translate_formula(j, i.graph(sym, args, value)));
        }
    }
    return k;
}

// Catalog -------------------------------------------------------------------

inline Translation identity_translation(const Language& lang, const std::string& id) {
    if (!lang.families().empty()) throw TranslationError("identity translations need a finite language");
    Translation t;
    t.name = "identity:" + id;
    t.source_id = t.target_id = id;
    t.source = t.target = lang;
    for (const auto& s : lang.symbols()) t.map_identity(SymbolRef(s.name), s.kind, s.arity);
    return t;
}

/// S (x) T -> T: P as false, the symbols of T as themselves, the remaining
/// relations of S as false and the remaining functions of S as the constant 0.
inline Translation product_to_theory(const Theory& s, const Theory& t, const std::string& t_id = "R") {
    using namespace build;
    Theory prod = make_product(s, t);
    std::string p = product_predicate(prod);
    if (!t.language.lookup(SymbolRef("0")))
        throw TranslationError("product translation needs a constant 0 in the target");
    Translation tr;
    tr.name = "product-to-" + t_id;
    tr.source_id = prod.name;
    tr.target_id = t_id;
    tr.source = prod.language;
    tr.target = t.language;
    for (const auto& sym : prod.language.symbols()) {
        SymbolRef ref(sym.name);
        if (sym.name == p) {
            tr.map_relation(ref, 0, bottom());
        } else if (t.language.lookup(ref)) {
            tr.map_identity(ref, sym.kind, sym.arity);
        } else if (sym.kind == SymbolKind::relation) {
            tr.map_relation(ref, sym.arity, bottom());
        } else {
            tr.map_function(ref, sym.arity, eq(var(designated(static_cast<std::size_t>(sym.arity))), app("0")));
        }
    }
    return tr;
}

inline const std::vector<std::string>& identity_catalog_ids() {
    static const std::vector<std::string> ids{"R", "R0", "R1", "R2", "Q", "Q+", "Q-", "PA-", "TC", "AS", "T-set"};
    return ids;
}

/// Default S for the catalog entry `product-to-R`.
inline constexpr const char* kDefaultProductFactor = "TC";

/// Named translations: `identity:<id>` for every fixed-language catalog theory
/// (plus `identity:U`, `identity:E`), `product-to-R` (S = TC) and
/// `product-to-R:<id>` for any catalog S.
inline std::optional<Translation> builtin_translation(const std::string& name) {
    if (name.rfind("identity:", 0) == 0) {
        std::string id = name.substr(9);
        if (id == "U") return identity_translation(languages::u_theory(), "U");
        if (id == "E") return identity_translation(languages::equivalence(), "E");
        for (const auto& known : identity_catalog_ids())
            if (known == id) return identity_translation(theory_from_id(id).language, id);
        return std::nullopt;
    }
    if (name == "product-to-R") return product_to_theory(theory_from_id(kDefaultProductFactor), theory_R());
    if (name.rfind("product-to-R:", 0) == 0) {
        try {
            auto tr = product_to_theory(theory_from_id(name.substr(13)), theory_R());
            tr.name = name;
            return tr;
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

inline std::vector<std::string> builtin_translation_names() {
    std::vector<std::string> out;
    for (const auto& id : identity_catalog_ids()) out.push_back("identity:" + id);
    out.push_back("identity:U");
    out.push_back("identity:E");
    out.push_back("product-to-R");
    return out;
}

// Translation files ---------------------------------------------------------
//
//   source: product:TC,R
//   target: R
//   domain: (= v0 v0)
//   rel P: false
//   fun cat: (= v2 0)
//   fun S: identity
//
// `;` starts a comment line. A symbol without a line is unmapped.

inline Translation parse_translation(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<std::string> src, tgt;
    Translation tr;
    auto fail = [&](const std::string& why) {
        return ParseError(ParseError::Kind::syntax, static_cast<std::size_t>(lineno), 1, "translation file: " + why);
    };
    std::vector<std::pair<int, std::string>> body_lines;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == ';') continue;
        if (s.rfind("source:", 0) == 0) {
            src = detail::trim(s.substr(7));
        } else if (s.rfind("target:", 0) == 0) {
            tgt = detail::trim(s.substr(7));
        } else {
            body_lines.emplace_back(lineno, s);
        }
    }
    if (!src || !tgt) throw ParseError(ParseError::Kind::syntax, 1, 1, "translation file: needs source: and target: lines");
    tr.source_id = *src;
    tr.target_id = *tgt;
    tr.name = "file:" + *src + "->" + *tgt;
    tr.source = theory_from_id(*src).language;
    tr.target = theory_from_id(*tgt).language;
    for (const auto& [ln, s] : body_lines) {
        lineno = ln;
        auto colon = s.find(':');
        if (colon == std::string::npos) throw fail("expected 'domain:', 'rel NAME:' or 'fun NAME:'");
        std::string head = detail::trim(s.substr(0, colon));
        std::string rhs = detail::trim(s.substr(colon + 1));
        if (head == "domain") {
            tr.domain = parse_formula(rhs, tr.target);
            continue;
        }
        bool is_rel = head.rfind("rel ", 0) == 0, is_fun = head.rfind("fun ", 0) == 0;
        if (!is_rel && !is_fun) throw fail("unknown line head '" + head + "'");
        SymbolRef sym = detail::parse_symbol_ref(detail::trim(head.substr(4)));
        auto sig = tr.source.lookup(sym);
        if (!sig) throw fail("symbol " + sym.key() + " is not in the source language");
        if ((sig->kind == SymbolKind::function) != is_fun) throw fail("symbol " + sym.key() + " has the other kind");
        if (rhs == "identity") {
            tr.map_identity(sym, sig->kind, sig->arity);
        } else if (is_rel) {
            tr.map_relation(sym, sig->arity, parse_formula(rhs, tr.target));
        } else {
            tr.map_function(sym, sig->arity, parse_formula(rhs, tr.target));
        }
    }
    tr.validate();
    return tr;
}

inline std::string print_translation(const Translation& tr) {
    std::ostringstream out;
    out << "source: " << tr.source_id << "\n";
    out << "target: " << tr.target_id << "\n";
    if (tr.domain) out << "domain: " << print_formula(*tr.domain) << "\n";
    for (const auto& [sym, img] : tr.images) {
        out << (img.kind == SymbolKind::relation ? "rel " : "fun ") << sym.key() << ": "
            << (img.identity() ? std::string("identity") : print_formula(*img.formula)) << "\n";
    }
    return out.str();
}

}  // namespace weakarith
