// Axiom systems as total axiom enumerators with (optionally) decidable
// membership, scheme instantiators, and the theory-id catalog.
//
// Symbols: arithmetic uses `0`, `S`, `+`, `*` and the relation `<=`;
// concatenation `cat`, `alpha`, `beta`; set theory `in`; Shoenfield's theory
// the binary relation `E`; U<A,B> the unary relation `P`; Q- the ternary
// relations `A` and `M`; Rep_PRF the constant family `c#n` and the unary
// function family `f#e` (machine e of the counter-machine indexing).
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/machine.hpp"
#include "weakarith/sexpr.hpp"
#include "weakarith/syntax.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace weakarith {

class MembershipUndecidable : public Error {
public:
    explicit MembershipUndecidable(const std::string& theory)
        : Error("axiom membership is not decidable for theory " + theory) {}
};

/// A language plus a total axiom enumerator. `membership`, when present,
/// decides literal axiomhood and may throw MembershipUndecidable for
/// formulas whose status hangs on an enumerative oracle.
struct Theory {
    std::string name;
    Language language;
    std::function<Formula(std::uint64_t)> enumerate;
    std::function<bool(const Formula&)> membership;
    std::optional<std::size_t> finite_size;  // set for finitely axiomatized theories

    Formula axiom_of(std::uint64_t i) const { return enumerate(i); }

    bool has_membership() const { return static_cast<bool>(membership); }

    bool is_axiom(const Formula& f) const {
        if (!membership) throw MembershipUndecidable(name);
        return membership(f);
    }

    std::vector<Formula> first(std::uint64_t k) const {
        std::vector<Formula> out;
        out.reserve(k);
        for (std::uint64_t i = 0; i < k; ++i) out.push_back(enumerate(i));
        return out;
    }
};

// Languages -----------------------------------------------------------------

namespace languages {
inline Language arithmetic() {
    Language l;
    l.constant("0").function("S", 1).function("+", 2).function("*", 2);
    return l;
}
inline Language ordered_arithmetic() {
    Language l = arithmetic();
    l.relation("<=", 2);
    return l;
}
inline Language q_minus() {
    Language l;
    l.constant("0").function("S", 1).relation("A", 3).relation("M", 3);
    return l;
}
inline Language concatenation() {
    Language l;
    l.function("cat", 2).constant("alpha").constant("beta");
    return l;
}
inline Language set_membership() {
    Language l;
    l.relation("in", 2);
    return l;
}
inline Language equivalence() {
    Language l;
    l.relation("E", 2);
    return l;
}
inline Language u_theory() {
    Language l;
    l.constant("0").function("S", 1).relation("P", 1);
    return l;
}
inline Language rep_prf() {
    Language l;
    l.add_family("c", SymbolKind::function, [](std::uint64_t) { return 0; });
    l.add_family("f", SymbolKind::function, [](std::uint64_t) { return 1; });
    return l;
}
}  // namespace languages

// Numerals ------------------------------------------------------------------

inline Term numeral(std::uint64_t n) {
    Term t = Term::apply("0");
    for (std::uint64_t i = 0; i < n; ++i) {
        std::vector<Term> args;
        args.push_back(std::move(t));
        t = Term::apply("S", std::move(args));
    }
    return t;
}

inline std::optional<std::uint64_t> numeral_value(const Term& t) {
    std::uint64_t n = 0;
    const Term* cur = &t;
    while (!cur->is_variable() && cur->symbol == SymbolRef("S") && cur->args.size() == 1) {
        ++n;
        cur = &cur->args[0];
    }
    if (!cur->is_variable() && cur->symbol == SymbolRef("0") && cur->args.empty()) return n;
    return std::nullopt;
}

inline std::size_t term_depth(const Term& t) {
    std::size_t d = 0;
    for (const auto& a : t.args) d = std::max(d, term_depth(a));
    return d + 1;
}

inline Formula padding_axiom() {
    using namespace build;
    return forall("x", eq(var("x"), var("x")));
}

// Schemes -------------------------------------------------------------------

enum class SchemeId {
    ax1, ax2, ax3, ax4, ax4_prime, ax5,
    induction, collection,
    phi_existence, phi_uniqueness, equivalence, t_set
};

inline std::string scheme_name(SchemeId s) {
    switch (s) {
    case SchemeId::ax1: return "Ax1";
    case SchemeId::ax2: return "Ax2";
    case SchemeId::ax3: return "Ax3";
    case SchemeId::ax4: return "Ax4";
    case SchemeId::ax4_prime: return "Ax4'";
    case SchemeId::ax5: return "Ax5";
    case SchemeId::induction: return "induction";
    case SchemeId::collection: return "collection";
    case SchemeId::phi_existence: return "Phi-existence";
    case SchemeId::phi_uniqueness: return "Phi-uniqueness";
    case SchemeId::equivalence: return "equivalence";
    case SchemeId::t_set: return "T-set";
    }
    return "?";
}

/// Scheme parameters. Numeric schemes read `numbers`; induction reads
/// `formula` and `variables[0]`; collection reads `formula` and
/// `variables[0..1]` (the bounded and the witnessed variable).
struct SchemeParams {
    std::vector<std::uint64_t> numbers;
    std::optional<Formula> formula;
    std::vector<std::string> variables;

    static SchemeParams nums(std::vector<std::uint64_t> ns) { return {std::move(ns), std::nullopt, {}}; }
};

class SignatureMismatch : public Error {
public:
    explicit SignatureMismatch(const std::string& what) : Error("scheme signature mismatch: " + what) {}
};

namespace schemes {
using namespace build;

inline Formula le(Term a, Term b) { return rel("<=", {std::move(a), std::move(b)}); }
inline Term plus(Term a, Term b) { return app("+", {std::move(a), std::move(b)}); }
inline Term times(Term a, Term b) { return app("*", {std::move(a), std::move(b)}); }
inline Term succ(Term a) { return app("S", {std::move(a)}); }
inline Term zero() { return app("0"); }

inline Formula ax1(std::uint64_t m, std::uint64_t n) { return eq(plus(numeral(m), numeral(n)), numeral(m + n)); }
inline Formula ax2(std::uint64_t m, std::uint64_t n) { return eq(times(numeral(m), numeral(n)), numeral(m * n)); }
inline Formula ax3(std::uint64_t m, std::uint64_t n) { return neq(numeral(m), numeral(n)); }

inline Formula numeral_disjunction(const Term& x, std::uint64_t n) {
    std::vector<Formula> parts;
    for (std::uint64_t i = 0; i <= n; ++i) parts.push_back(eq(x, numeral(i)));
    return disj_all(std::move(parts));
}
inline Formula ax4(std::uint64_t n) {
    return forall("x", implies(le(var("x"), numeral(n)), numeral_disjunction(var("x"), n)));
}
inline Formula ax4_prime(std::uint64_t n) {
    return forall("x", iff(le(var("x"), numeral(n)), numeral_disjunction(var("x"), n)));
}
inline Formula ax5(std::uint64_t n) { return forall("x", disj(le(var("x"), numeral(n)), le(numeral(n), var("x")))); }

inline Formula E(const std::string& a, const std::string& b) { return rel("E", {var(a), var(b)}); }

/// "The E-class of `x` has exactly n elements", with bound variables
/// `<tag>2..<tag>n` and `<tag>0`. Constraints are pushed inward so evaluation
/// only explores the class of `x`.
inline Formula class_of_size(const std::string& x, std::uint64_t n, const std::string& tag) {
    std::vector<std::string> members{x};
    for (std::uint64_t k = 2; k <= n; ++k) members.push_back(tag + std::to_string(k));
    std::string y = tag + "0";
    std::vector<Formula> covers;
    for (const auto& m : members) covers.push_back(eq(var(y), var(m)));
    Formula inner = forall(y, implies(E(x, y), disj_all(std::move(covers))));
    for (std::uint64_t k = n; k >= 2; --k) {
        const std::string& xk = members[k - 1];
        std::vector<Formula> parts;
        for (std::uint64_t j = 0; j + 1 < k; ++j) parts.push_back(neq(var(xk), var(members[j])));
        parts.push_back(E(x, xk));
        parts.push_back(std::move(inner));
        inner = exists(xk, conj_all(std::move(parts)));
    }
    return inner;
}

/// Phi_n: some E-class has exactly n elements. Phi_0 is `false`.
inline Formula phi(std::uint64_t n) {
    if (n == 0) return bottom();
    std::vector<std::string> members;
    for (std::uint64_t k = 1; k <= n; ++k) members.push_back("x" + std::to_string(k));
    // Same shape as class_of_size but with the conventional names x1..xn, y.
    std::vector<Formula> covers;
    for (const auto& m : members) covers.push_back(eq(var("y"), var(m)));
    Formula inner = forall("y", implies(E("x1", "y"), disj_all(std::move(covers))));
    for (std::uint64_t k = n; k >= 2; --k) {
        const std::string& xk = members[k - 1];
        std::vector<Formula> parts;
        for (std::uint64_t j = 0; j + 1 < k; ++j) parts.push_back(neq(var(xk), var(members[j])));
        parts.push_back(E("x1", xk));
        parts.push_back(std::move(inner));
        inner = exists(xk, conj_all(std::move(parts)));
    }
    return exists("x1", std::move(inner));
}

/// At most one E-class has exactly n elements.
inline Formula phi_uniqueness(std::uint64_t n) {
    return forall("x", forall("y", implies(conj(class_of_size("x", n, "u"), class_of_size("y", n, "w")), E("x", "y"))));
}

inline Formula equivalence_axiom(std::uint64_t which) {
    switch (which % 3) {
    case 0: return forall("x", E("x", "x"));
    case 1: return forall("x", forall("y", implies(E("x", "y"), E("y", "x"))));
    default:
        return forall("x", forall("y", forall("z", implies(conj(E("x", "y"), E("y", "z")), E("x", "z")))));
    }
}

inline Formula t_set(std::uint64_t n) {
    std::vector<std::string> xs;
    for (std::uint64_t i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i));
    std::vector<Formula> parts;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = i + 1; j < n; ++j) parts.push_back(neq(var(xs[i]), var(xs[j])));
    std::vector<Formula> members;
    for (const auto& x : xs) members.push_back(eq(var("y"), var(x)));
    parts.push_back(forall("y", iff(rel("in", {var("y"), var("z")}), disj_all(std::move(members)))));
    std::vector<std::string> prefix{"z"};
    prefix.insert(prefix.end(), xs.begin(), xs.end());
    return exists(prefix, conj_all(std::move(parts)));
}

/// Universal closure over the free variables of `f`, in name order.
inline Formula universal_closure(Formula f) {
    auto fv = free_variables(f);
    std::vector<std::string> vs(fv.begin(), fv.end());
    return forall(vs, std::move(f));
}

inline Formula induction(const Formula& phi_x, const std::string& x) {
    if (!free_variables(phi_x).count(x)) throw SignatureMismatch("induction formula lacks free variable " + x);
    Formula base = substitute(phi_x, x, zero());
    Formula step = forall(x, implies(phi_x, substitute(phi_x, x, succ(var(x)))));
    return universal_closure(implies(conj(std::move(base), std::move(step)), forall(x, phi_x)));
}

/// (forall x < u)(exists y) phi -> (exists v)(forall x < u)(exists y < v) phi,
/// closed over u and the parameters. Strict order is x <= u and x != u.
inline Formula collection(const Formula& phi_xy, const std::string& x, const std::string& y) {
    auto fv = free_variables(phi_xy);
    if (!fv.count(x) || !fv.count(y) || x == y)
        throw SignatureMismatch("collection formula needs distinct free variables " + x + ", " + y);
    auto taken = all_variables(phi_xy);
    std::string u = fresh_name("u", taken);
    taken.insert(u);
    std::string v = fresh_name("v", taken);
    auto less = [](const std::string& a, const std::string& b) { return conj(le(var(a), var(b)), neq(var(a), var(b))); };
    Formula lhs = forall(x, implies(less(x, u), exists(y, phi_xy)));
    Formula rhs = exists(v, forall(x, implies(less(x, u), exists(y, conj(less(y, v), phi_xy)))));
    return universal_closure(implies(std::move(lhs), std::move(rhs)));
}

}  // namespace schemes

inline Formula scheme_instance(SchemeId s, const SchemeParams& p) {
    auto need_numbers = [&](std::size_t k) {
        if (p.numbers.size() != k)
            throw SignatureMismatch(scheme_name(s) + " takes " + std::to_string(k) + " numeral parameter(s)");
    };
    switch (s) {
    case SchemeId::ax1: need_numbers(2); return schemes::ax1(p.numbers[0], p.numbers[1]);
    case SchemeId::ax2: need_numbers(2); return schemes::ax2(p.numbers[0], p.numbers[1]);
    case SchemeId::ax3:
        need_numbers(2);
        if (p.numbers[0] == p.numbers[1]) throw SignatureMismatch("Ax3 needs m != n");
        return schemes::ax3(p.numbers[0], p.numbers[1]);
    case SchemeId::ax4: need_numbers(1); return schemes::ax4(p.numbers[0]);
    case SchemeId::ax4_prime: need_numbers(1); return schemes::ax4_prime(p.numbers[0]);
    case SchemeId::ax5: need_numbers(1); return schemes::ax5(p.numbers[0]);
    case SchemeId::phi_existence: need_numbers(1); return schemes::phi(p.numbers[0]);
    case SchemeId::phi_uniqueness: need_numbers(1); return schemes::phi_uniqueness(p.numbers[0]);
    case SchemeId::equivalence:
        need_numbers(1);
        if (p.numbers[0] > 2) throw SignatureMismatch("equivalence axioms are numbered 0..2");
        return schemes::equivalence_axiom(p.numbers[0]);
    case SchemeId::t_set: need_numbers(1); return schemes::t_set(p.numbers[0]);
    case SchemeId::induction:
        if (!p.formula || p.variables.size() != 1 || !p.numbers.empty())
            throw SignatureMismatch("induction takes a formula and one variable");
        return schemes::induction(*p.formula, p.variables[0]);
    case SchemeId::collection:
        if (!p.formula || p.variables.size() != 2 || !p.numbers.empty())
            throw SignatureMismatch("collection takes a formula and two variables");
        return schemes::collection(*p.formula, p.variables[0], p.variables[1]);
    }
    throw SignatureMismatch("unknown scheme");
}

// Scheme-enumerated theories ------------------------------------------------
//
// Axiom i belongs to scheme schemes[i mod k] with parameter code j = i div k.
// Two-numeral schemes read j = pair(m, n); Ax3 reads j = pair(m, n') with
// n = n' if n' < m, else n' + 1 (so m != n always); one-numeral schemes read n = j.

namespace detail {

inline std::size_t scheme_arity(SchemeId s) {
    return (s == SchemeId::ax1 || s == SchemeId::ax2 || s == SchemeId::ax3) ? 2 : 1;
}

inline std::vector<std::uint64_t> scheme_params_of(SchemeId s, std::uint64_t j) {
    if (scheme_arity(s) == 1) return {j};
    auto [m, n] = cantor_unpair(j);
    if (s == SchemeId::ax3) return {m, n < m ? n : n + 1};
    return {m, n};
}

inline std::uint64_t scheme_code_of(SchemeId s, const std::vector<std::uint64_t>& params) {
    if (scheme_arity(s) == 1) return params.at(0);
    std::uint64_t m = params.at(0), n = params.at(1);
    if (s == SchemeId::ax3) {
        if (m == n) throw SignatureMismatch("Ax3 needs m != n");
        return cantor_pair(m, n < m ? n : n - 1);
    }
    return cantor_pair(m, n);
}

inline void collect_numerals(const Term& t, std::set<std::uint64_t>& out) {
    if (auto v = numeral_value(t)) {
        out.insert(*v);
        return;
    }
    for (const auto& a : t.args) collect_numerals(a, out);
}
inline void collect_numerals(const Formula& f, std::set<std::uint64_t>& out) {
    for (const auto& t : f.terms) collect_numerals(t, out);
    for (const auto& c : f.children) collect_numerals(c, out);
}

/// Literal membership in a numeric scheme: regenerate from every candidate
/// parameter tuple drawn from the numerals (or, for the E-class schemes,
/// quantifier ranks) visible in `f`.
inline bool matches_scheme(SchemeId s, const Formula& f) {
    if (s == SchemeId::ax1 || s == SchemeId::ax2) {
        if (!f.is(Connective::equals)) return false;
        const Term& lhs = f.terms[0];
        const char* op = s == SchemeId::ax1 ? "+" : "*";
        if (lhs.is_variable() || lhs.symbol != SymbolRef(op) || lhs.args.size() != 2) return false;
        auto m = numeral_value(lhs.args[0]), n = numeral_value(lhs.args[1]), k = numeral_value(f.terms[1]);
        if (!m || !n || !k) return false;
        return s == SchemeId::ax1 ? *m + *n == *k : *m * *n == *k;
    }
    if (s == SchemeId::ax3) {
        if (!f.is(Connective::negation) || !f.body().is(Connective::equals)) return false;
        auto m = numeral_value(f.body().terms[0]), n = numeral_value(f.body().terms[1]);
        return m && n && *m != *n;
    }
    std::set<std::uint64_t> candidates;
    if (s == SchemeId::phi_existence || s == SchemeId::phi_uniqueness || s == SchemeId::t_set ||
        s == SchemeId::equivalence) {
        int r = quantifier_rank(f);
        for (int k = std::max(0, r - 3); k <= r + 1; ++k) candidates.insert(static_cast<std::uint64_t>(k));
    } else {
        collect_numerals(f, candidates);
        // Ax4, Ax4' and Ax5 mention 0..n, so n is the largest numeral.
        if (scheme_arity(s) == 1 && !candidates.empty()) candidates = {*candidates.rbegin()};
    }
    if (scheme_arity(s) == 1) {
        for (auto n : candidates) {
            try {
                if (scheme_instance(s, SchemeParams::nums({n})) == f) return true;
            } catch (const SignatureMismatch&) {
            }
        }
        return false;
    }
    for (auto m : candidates)
        for (auto n : candidates) {
            try {
                if (scheme_instance(s, SchemeParams::nums({m, n})) == f) return true;
            } catch (const SignatureMismatch&) {
            }
        }
    return false;
}

}  // namespace detail

inline Theory scheme_theory(std::string name, Language lang, std::vector<SchemeId> schemes) {
    Theory t;
    t.name = std::move(name);
    t.language = std::move(lang);
    t.enumerate = [schemes](std::uint64_t i) {
        SchemeId s = schemes[i % schemes.size()];
        return scheme_instance(s, SchemeParams::nums(detail::scheme_params_of(s, i / schemes.size())));
    };
    t.membership = [schemes](const Formula& f) {
        for (auto s : schemes)
            if (detail::matches_scheme(s, f)) return true;
        return false;
    };
    return t;
}

/// Index of a scheme instance in a scheme-enumerated theory.
inline std::uint64_t scheme_axiom_index(const std::vector<SchemeId>& schemes, SchemeId s,
                                        const std::vector<std::uint64_t>& params) {
    for (std::size_t pos = 0; pos < schemes.size(); ++pos)
        if (schemes[pos] == s) return detail::scheme_code_of(s, params) * schemes.size() + pos;
    throw Error("scheme " + scheme_name(s) + " is not part of this theory");
}

inline const std::vector<SchemeId>& r_schemes() {
    static const std::vector<SchemeId> s{SchemeId::ax1, SchemeId::ax2, SchemeId::ax3, SchemeId::ax4, SchemeId::ax5};
    return s;
}
inline const std::vector<SchemeId>& r0_schemes() {
    static const std::vector<SchemeId> s{SchemeId::ax1, SchemeId::ax2, SchemeId::ax3, SchemeId::ax4};
    return s;
}
inline const std::vector<SchemeId>& r1_schemes() {
    static const std::vector<SchemeId> s{SchemeId::ax1, SchemeId::ax2, SchemeId::ax3, SchemeId::ax4_prime};
    return s;
}
inline const std::vector<SchemeId>& r2_schemes() {
    static const std::vector<SchemeId> s{SchemeId::ax2, SchemeId::ax3, SchemeId::ax4_prime};
    return s;
}

inline Theory theory_R() { return scheme_theory("R", languages::ordered_arithmetic(), r_schemes()); }
inline Theory theory_R0() { return scheme_theory("R0", languages::ordered_arithmetic(), r0_schemes()); }
inline Theory theory_R1() { return scheme_theory("R1", languages::ordered_arithmetic(), r1_schemes()); }
inline Theory theory_R2() { return scheme_theory("R2", languages::ordered_arithmetic(), r2_schemes()); }

/// Every Ax1-Ax5 instance with all numeral parameters <= max_param, scheme by scheme.
inline std::vector<Formula> r_fragment(std::uint64_t max_param) {
    std::vector<Formula> out;
    for (std::uint64_t m = 0; m <= max_param; ++m)
        for (std::uint64_t n = 0; n <= max_param; ++n) out.push_back(schemes::ax1(m, n));
    for (std::uint64_t m = 0; m <= max_param; ++m)
        for (std::uint64_t n = 0; n <= max_param; ++n) out.push_back(schemes::ax2(m, n));
    for (std::uint64_t m = 0; m <= max_param; ++m)
        for (std::uint64_t n = 0; n <= max_param; ++n)
            if (m != n) out.push_back(schemes::ax3(m, n));
    for (std::uint64_t n = 0; n <= max_param; ++n) out.push_back(schemes::ax4(n));
    for (std::uint64_t n = 0; n <= max_param; ++n) out.push_back(schemes::ax5(n));
    return out;
}

// Finitely axiomatized theories ---------------------------------------------

inline Theory finite_theory(std::string name, Language lang, std::vector<Formula> axioms) {
    Theory t;
    t.name = std::move(name);
    t.language = std::move(lang);
    t.finite_size = axioms.size();
    auto shared = std::make_shared<const std::vector<Formula>>(std::move(axioms));
    t.enumerate = [shared](std::uint64_t i) { return (*shared)[i % shared->size()]; };
    t.membership = [shared](const Formula& f) { return std::find(shared->begin(), shared->end(), f) != shared->end(); };
    return t;
}

namespace axioms {
using namespace build;
using schemes::le;
using schemes::plus;
using schemes::succ;
using schemes::times;
using schemes::zero;

inline Term v(const char* n) { return var(n); }

inline std::vector<Formula> q_base() {
    return {
        forall({"x", "y"}, implies(eq(succ(v("x")), succ(v("y"))), eq(v("x"), v("y")))),
        forall("x", neq(succ(v("x")), zero())),
        forall("x", implies(neq(v("x"), zero()), exists("y", eq(v("x"), succ(v("y")))))),
    };
}

inline std::vector<Formula> q() {
    auto ax = q_base();
    ax.push_back(forall("x", eq(plus(v("x"), zero()), v("x"))));
    ax.push_back(forall({"x", "y"}, eq(plus(v("x"), succ(v("y"))), succ(plus(v("x"), v("y"))))));
    ax.push_back(forall("x", eq(times(v("x"), zero()), zero())));
    ax.push_back(forall({"x", "y"}, eq(times(v("x"), succ(v("y"))), plus(times(v("x"), v("y")), v("x")))));
    return ax;
}

inline std::vector<Formula> q_plus() {
    auto ax = q();
    ax.push_back(forall({"x", "y", "z"}, eq(plus(plus(v("x"), v("y")), v("z")), plus(v("x"), plus(v("y"), v("z"))))));
    ax.push_back(forall({"x", "y", "z"},
                        eq(times(v("x"), plus(v("y"), v("z"))), plus(times(v("x"), v("y")), times(v("x"), v("z"))))));
    ax.push_back(forall({"x", "y", "z"}, eq(times(times(v("x"), v("y")), v("z")), times(v("x"), times(v("y"), v("z"))))));
    ax.push_back(forall({"x", "y"}, eq(plus(v("x"), v("y")), plus(v("y"), v("x")))));
    ax.push_back(forall({"x", "y"}, eq(times(v("x"), v("y")), times(v("y"), v("x")))));
    ax.push_back(forall({"x", "y"}, iff(le(v("x"), v("y")), exists("z", eq(plus(v("x"), v("z")), v("y"))))));
    return ax;
}

inline std::vector<Formula> pa_minus() {
    Term one = succ(zero());
    return {
        forall("x", eq(plus(v("x"), zero()), v("x"))),
        forall({"x", "y"}, eq(plus(v("x"), v("y")), plus(v("y"), v("x")))),
        forall({"x", "y", "z"}, eq(plus(plus(v("x"), v("y")), v("z")), plus(v("x"), plus(v("y"), v("z"))))),
        forall("x", eq(times(v("x"), one), v("x"))),
        forall({"x", "y"}, eq(times(v("x"), v("y")), times(v("y"), v("x")))),
        forall({"x", "y", "z"}, eq(times(times(v("x"), v("y")), v("z")), times(v("x"), times(v("y"), v("z"))))),
        forall({"x", "y", "z"},
               eq(times(v("x"), plus(v("y"), v("z"))), plus(times(v("x"), v("y")), times(v("x"), v("z"))))),
        forall({"x", "y"}, disj(le(v("x"), v("y")), le(v("y"), v("x")))),
        forall({"x", "y", "z"}, implies(conj(le(v("x"), v("y")), le(v("y"), v("z"))), le(v("x"), v("z")))),
        forall("x", neg(le(plus(v("x"), one), v("x")))),
        forall({"x", "y"}, implies(le(v("x"), v("y")), disj(eq(v("x"), v("y")), le(plus(v("x"), one), v("y"))))),
        forall({"x", "y", "z"}, implies(le(v("x"), v("y")), le(plus(v("x"), v("z")), plus(v("y"), v("z"))))),
        forall({"x", "y", "z"}, implies(le(v("x"), v("y")), le(times(v("x"), v("z")), times(v("y"), v("z"))))),
        forall({"x", "y"}, implies(le(v("x"), v("y")), exists("z", eq(plus(v("x"), v("z")), v("y"))))),
    };
}

inline std::vector<Formula> q_minus() {
    auto A = [](Term a, Term b, Term c) { return rel("A", {std::move(a), std::move(b), std::move(c)}); };
    auto M = [](Term a, Term b, Term c) { return rel("M", {std::move(a), std::move(b), std::move(c)}); };
    auto ax = q_base();
    ax.push_back(forall({"x", "y", "z1", "z2"},
                        implies(conj(A(v("x"), v("y"), v("z1")), A(v("x"), v("y"), v("z2"))), eq(v("z1"), v("z2")))));
    ax.push_back(forall({"x", "y", "z1", "z2"},
                        implies(conj(M(v("x"), v("y"), v("z1")), M(v("x"), v("y"), v("z2"))), eq(v("z1"), v("z2")))));
    ax.push_back(forall("x", A(v("x"), zero(), v("x"))));
    ax.push_back(forall({"x", "y", "z"}, implies(exists("u", conj(A(v("x"), v("y"), v("u")), eq(v("z"), succ(v("u"))))),
                                                 A(v("x"), succ(v("y")), v("z")))));
    ax.push_back(forall("x", M(v("x"), zero(), zero())));
    ax.push_back(forall({"x", "y", "z"}, implies(exists("u", conj(M(v("x"), v("y"), v("u")), A(v("u"), v("x"), v("z")))),
                                                 M(v("x"), succ(v("y")), v("z")))));
    return ax;
}

inline std::vector<Formula> tc() {
    auto c = [](Term a, Term b) { return app("cat", {std::move(a), std::move(b)}); };
    Term alpha = app("alpha"), beta = app("beta");
    Formula tc2_rhs = disj(conj(eq(v("x"), v("u")), eq(v("y"), v("v"))),
                           exists("w", disj(conj(eq(v("u"), c(v("x"), v("w"))), eq(c(v("w"), v("v")), v("y"))),
                                            conj(eq(v("x"), c(v("u"), v("w"))), eq(c(v("w"), v("y")), v("v"))))));
    return {
        forall({"x", "y", "z"}, eq(c(v("x"), c(v("y"), v("z"))), c(c(v("x"), v("y")), v("z")))),
        forall({"x", "y", "u", "v"}, implies(eq(c(v("x"), v("y")), c(v("u"), v("v"))), tc2_rhs)),
        forall({"x", "y"}, neq(alpha, c(v("x"), v("y")))),
        forall({"x", "y"}, neq(beta, c(v("x"), v("y")))),
        neq(alpha, beta),
    };
}

inline std::vector<Formula> as() {
    auto in = [](const char* a, const char* b) { return rel("in", {var(a), var(b)}); };
    return {
        exists("x", forall("y", neg(in("y", "x")))),
        forall({"x", "y"}, exists("z", forall("u", iff(in("u", "z"), disj(eq(v("u"), v("x")), eq(v("u"), v("y"))))))),
    };
}

}  // namespace axioms

inline Theory theory_Q() { return finite_theory("Q", languages::arithmetic(), axioms::q()); }
inline Theory theory_Q_plus() { return finite_theory("Q+", languages::ordered_arithmetic(), axioms::q_plus()); }
inline Theory theory_Q_minus() { return finite_theory("Q-", languages::q_minus(), axioms::q_minus()); }
inline Theory theory_PA_minus() { return finite_theory("PA-", languages::ordered_arithmetic(), axioms::pa_minus()); }
inline Theory theory_TC() { return finite_theory("TC", languages::concatenation(), axioms::tc()); }
inline Theory theory_AS() { return finite_theory("AS", languages::set_membership(), axioms::as()); }

/// The theory T of finite sets: axiom n says some set has exactly n distinct elements.
inline Theory theory_T_set() {
    Theory t;
    t.name = "T-set";
    t.language = languages::set_membership();
    t.enumerate = [](std::uint64_t n) { return schemes::t_set(n); };
    t.membership = [](const Formula& f) { return detail::matches_scheme(SchemeId::t_set, f); };
    return t;
}

// Oracle-parametric theories -----------------------------------------------
//
// A staged fact slot j decodes as (stage s, slot k) = unpair(j): the k-th
// smallest member of the side enumerated by stage s, or the padding sentence
// forall x (x = x) when the stage has fewer than k+1 members.

namespace detail {
inline std::optional<std::uint64_t> staged_fact(const OraclePair& pair, Side side, std::uint64_t j) {
    auto [stage, slot] = cantor_unpair(j);
    auto members = pair.side(side, stage);
    if (slot < members.size()) return members[slot];
    return std::nullopt;
}

inline std::pair<std::uint64_t, std::uint64_t> distinct_pair(std::uint64_t j) {
    auto [m, n] = cantor_unpair(j);
    return {m, n < m ? n : n + 1};
}
}  // namespace detail

/// Index of the staged-fact slot (stage, k) for side `side` of U<A,B>.
inline std::uint64_t u_fact_index(Side side, std::uint64_t stage, std::uint64_t k) {
    return 3 * cantor_pair(stage, k) + (side == Side::left ? 1 : 2);
}
/// Index of the distinctness axiom m != n in U<A,B>.
inline std::uint64_t u_distinct_index(std::uint64_t m, std::uint64_t n) {
    return 3 * detail::scheme_code_of(SchemeId::ax3, {m, n});
}

/// U<A,B> over {0, S, P}: numerals pairwise distinct, P(n) for n in A,
/// not P(n) for n in B. Axiom 3j is a distinctness axiom, 3j+1 an A-fact
/// slot, 3j+2 a B-fact slot.
inline Theory theory_U(const OraclePair& pair, std::string name = "U") {
    using namespace build;
    Theory t;
    t.name = std::move(name);
    t.language = languages::u_theory();
    t.enumerate = [pair](std::uint64_t i) -> Formula {
        std::uint64_t j = i / 3;
        switch (i % 3) {
        case 0: {
            auto [m, n] = detail::distinct_pair(j);
            return schemes::ax3(m, n);
        }
        case 1:
            if (auto n = detail::staged_fact(pair, Side::left, j)) return rel("P", {numeral(*n)});
            return padding_axiom();
        default:
            if (auto n = detail::staged_fact(pair, Side::right, j)) return neg(rel("P", {numeral(*n)}));
            return padding_axiom();
        }
    };
    std::string theory_name = t.name;
    t.membership = [pair, theory_name](const Formula& f) {
        if (detail::matches_scheme(SchemeId::ax3, f)) return true;
        const Formula* atom = &f;
        Side side = Side::left;
        if (f.is(Connective::negation)) {
            atom = &f.body();
            side = Side::right;
        }
        if (!atom->is(Connective::relation) || atom->symbol != SymbolRef("P") || atom->terms.size() != 1) return false;
        auto n = numeral_value(atom->terms[0]);
        if (!n) return false;
        if (pair.mode() == OraclePair::Mode::finite) return pair.contains(side, *n, 0);
        throw MembershipUndecidable(theory_name);
    };
    return t;
}

/// Index of the staged-fact slot (stage, k) of E<B,C>.
inline std::uint64_t e_fact_index(Side side, std::uint64_t stage, std::uint64_t k) {
    return 4 * cantor_pair(stage, k) + (side == Side::left ? 1 : 2);
}
inline std::uint64_t e_uniqueness_index(std::uint64_t n) { return 4 * (n - 1) + 3; }
inline std::uint64_t e_equivalence_index(std::uint64_t which) { return 4 * which; }

/// Shoenfield's theory E<B,C> over one binary relation E. Axiom 4j is
/// equivalence axiom j mod 3, 4j+1 a Phi_n slot for B, 4j+2 a not-Phi_n slot
/// for C, 4j+3 the uniqueness axiom for classes of size j+1.
inline Theory theory_E(const OraclePair& pair, std::string name = "E") {
    using namespace build;
    Theory t;
    t.name = std::move(name);
    t.language = languages::equivalence();
    t.enumerate = [pair](std::uint64_t i) -> Formula {
        std::uint64_t j = i / 4;
        switch (i % 4) {
        case 0: return schemes::equivalence_axiom(j);
        case 1:
            if (auto n = detail::staged_fact(pair, Side::left, j)) return schemes::phi(*n);
            return padding_axiom();
        case 2:
            if (auto n = detail::staged_fact(pair, Side::right, j)) return neg(schemes::phi(*n));
            return padding_axiom();
        default: return schemes::phi_uniqueness(j + 1);
        }
    };
    std::string theory_name = t.name;
    t.membership = [pair, theory_name](const Formula& f) {
        for (std::uint64_t k = 0; k < 3; ++k)
            if (f == schemes::equivalence_axiom(k)) return true;
        int r = quantifier_rank(f);
        if (r >= 3 && f == schemes::phi_uniqueness(static_cast<std::uint64_t>(r - 2))) return true;
        Side side = Side::left;
        const Formula* core = &f;
        if (f.is(Connective::negation)) {
            side = Side::right;
            core = &f.body();
        }
        int rc = quantifier_rank(*core);
        std::optional<std::uint64_t> n;
        if (rc >= 2 && *core == schemes::phi(static_cast<std::uint64_t>(rc - 1))) n = static_cast<std::uint64_t>(rc - 1);
        if (core->is(Connective::falsum)) n = 0;
        if (!n) return false;
        if (pair.mode() == OraclePair::Mode::finite) return pair.contains(side, *n, 0);
        throw MembershipUndecidable(theory_name);
    };
    return t;
}

/// Rep_PRF restricted to counter-machine functions: c#m != c#n for m != n
/// (even indices), f#e(c#n) = c#m when machine e maps n to m within s steps,
/// for (e, (n, s)) = unpair(j) at odd index 2j+1 (padding otherwise).
inline Theory theory_RepPRF() {
    using namespace build;
    Theory t;
    t.name = "RepPRF";
    t.language = languages::rep_prf();
    t.enumerate = [](std::uint64_t i) -> Formula {
        std::uint64_t j = i / 2;
        if (i % 2 == 0) {
            auto [m, n] = detail::distinct_pair(j);
            return neq(app(SymbolRef("c", m)), app(SymbolRef("c", n)));
        }
        auto [e, rest] = cantor_unpair(j);
        auto [n, s] = cantor_unpair(rest);
        if (auto m = run_bounded(decode_program(e), n, s))
            return eq(app(SymbolRef("f", e), {app(SymbolRef("c", n))}), app(SymbolRef("c", *m)));
        return padding_axiom();
    };
    return t;
}

/// S (x) T: axioms P -> X for S-axioms (even indices) and not P -> Y for
/// T-axioms (odd indices), over the union language plus a fresh nullary P.
inline Theory make_product(const Theory& s, const Theory& t) {
    using namespace build;
    Language lang = Language::merge(s.language, t.language);
    std::string p = "P";
    if (lang.name_taken(p)) {
        std::set<std::string> taken;
        for (const auto& d : lang.symbols()) taken.insert(d.name);
        for (const auto& f : lang.families()) taken.insert(f.name);
        p = fresh_name(p, taken);
    }
    lang.relation(p, 0);
    Theory out;
    out.name = "product:" + s.name + "," + t.name;
    out.language = std::move(lang);
    out.enumerate = [s, t, p](std::uint64_t i) {
        if (i % 2 == 0) return implies(rel(p), s.axiom_of(i / 2));
        return implies(neg(rel(p)), t.axiom_of(i / 2));
    };
    if (s.has_membership() && t.has_membership()) {
        out.membership = [s, t, p](const Formula& f) {
            if (!f.is(Connective::implication)) return false;
            if (f.left() == rel(p)) return s.is_axiom(f.right());
            if (f.left() == neg(rel(p))) return t.is_axiom(f.right());
            return false;
        };
    }
    return out;
}

/// Name of the fresh nullary predicate of a product theory.
inline std::string product_predicate(const Theory& product) {
    for (auto it = product.language.symbols().rbegin(); it != product.language.symbols().rend(); ++it)
        if (it->kind == SymbolKind::relation && it->arity == 0) return it->name;
    throw Error(product.name + " has no nullary predicate");
}

// Theory ids ----------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A pair argument is either inline (`canonical`, `finite ...`, `shift K ...`) or a pair-file path.
inline OraclePair load_pair(const std::string& arg) {
    if (arg == "canonical" || arg.rfind("finite", 0) == 0 || arg.rfind("shift ", 0) == 0) return parse_pair(arg);
    return parse_pair(read_text_file(arg));
}

/// Ids: R, R0, R1, R2, Q, Q+, Q-, PA-, TC, AS, T-set, RepPRF, U:<pair>,
/// E:<pair>, product:<id>,<id>.
inline Theory theory_from_id(const std::string& id) {
    if (id == "R") return theory_R();
    if (id == "R0") return theory_R0();
    if (id == "R1") return theory_R1();
    if (id == "R2") return theory_R2();
    if (id == "Q") return theory_Q();
    if (id == "Q+") return theory_Q_plus();
    if (id == "Q-") return theory_Q_minus();
    if (id == "PA-") return theory_PA_minus();
    if (id == "TC") return theory_TC();
    if (id == "AS") return theory_AS();
    if (id == "T-set") return theory_T_set();
    if (id == "RepPRF") return theory_RepPRF();
    if (id.rfind("U:", 0) == 0) return theory_U(load_pair(id.substr(2)), id);
    if (id.rfind("E:", 0) == 0) return theory_E(load_pair(id.substr(2)), id);
    if (id.rfind("product:", 0) == 0) {
        std::string rest = id.substr(8);
        int depth = 0;
        std::size_t split = std::string::npos;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] == '{') ++depth;
            if (rest[i] == '}') --depth;
            if (rest[i] == ',' && depth == 0) split = i;
        }
        if (split == std::string::npos) throw Error("product id needs two comma-separated theory ids");
        Theory p = make_product(theory_from_id(rest.substr(0, split)), theory_from_id(rest.substr(split + 1)));
        p.name = id;
        return p;
    }
    throw Error("unknown theory id '" + id + "'");
}

}  // namespace weakarith
