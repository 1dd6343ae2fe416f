// Arithmetical-hierarchy classification of formulas.
#pragma once

#include "weakarith/syntax.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace weakarith {

struct FormulaClass {
    enum class Kind { delta0, sigma, pi, unclassified };
    Kind kind = Kind::unclassified;
    int level = 0;

    std::string str() const {
        switch (kind) {
        case Kind::delta0: return "Delta0";
        case Kind::sigma: return "Sigma" + std::to_string(level);
        case Kind::pi: return "Pi" + std::to_string(level);
        case Kind::unclassified: return "unclassified";
        }
        return "unclassified";
    }
    friend bool operator==(const FormulaClass&, const FormulaClass&) = default;
};

/// Least levels n with the formula in Sigma_n / Pi_n (0 means Delta0).
struct HierarchyLevels {
    int sigma = 0;
    int pi = 0;
};

namespace detail {

/// Recognizes `x <= t -> body` / `x <= t and body` guards where x is not free in t.
inline const Formula* bounded_body(const Formula& f, const std::string& order_symbol) {
    if (!f.is_quantifier()) return nullptr;
    const Formula& g = f.body();
    Connective expected = f.op == Connective::forall ? Connective::implication : Connective::conjunction;
    if (g.op != expected) return nullptr;
    const Formula& guard = g.left();
    if (guard.op != Connective::relation || guard.symbol != SymbolRef(order_symbol) || guard.terms.size() != 2)
        return nullptr;
    if (!guard.terms[0].is_variable() || guard.terms[0].var != f.var) return nullptr;
    if (variables(guard.terms[1]).count(f.var)) return nullptr;
    return &g.right();
}

inline HierarchyLevels levels(const Formula& f, const std::string& order_symbol) {
    switch (f.op) {
    case Connective::relation:
    case Connective::equals:
    case Connective::verum:
    case Connective::falsum:
        return {0, 0};
    case Connective::negation: {
        auto a = levels(f.body(), order_symbol);
        return {a.pi, a.sigma};
    }
    case Connective::conjunction:
    case Connective::disjunction: {
        auto a = levels(f.left(), order_symbol);
        auto b = levels(f.right(), order_symbol);
        return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
    }
    case Connective::implication: {
        auto a = levels(f.left(), order_symbol);
        auto b = levels(f.right(), order_symbol);
        return {std::max(a.pi, b.sigma), std::max(a.sigma, b.pi)};
    }
    case Connective::forall:
    case Connective::exists: {
        if (const Formula* body = bounded_body(f, order_symbol)) {
            auto b = levels(*body, order_symbol);
            if (b.sigma == 0 && b.pi == 0) return {0, 0};
        }
        auto b = levels(f.body(), order_symbol);
        if (f.op == Connective::exists) {
            int s = std::max(1, std::min(b.sigma, b.pi + 1));
            return {s, s + 1};
        }
        int p = std::max(1, std::min(b.pi, b.sigma + 1));
        return {p + 1, p};
    }
    }
    return {0, 0};
}

}  // namespace detail

inline HierarchyLevels hierarchy_levels(const Formula& f, const std::string& order_symbol = "<=") {
    return detail::levels(f, order_symbol);
}

/// Classification up to prenex equivalence: negation swaps Sigma and Pi, and
/// bounded quantifiers over Delta0 bodies stay Delta0. Returns the least
/// level, preferring Sigma on ties. When the language has no order symbol,
/// quantified formulas are reported unclassified.
inline FormulaClass classify_formula(const Formula& f, const Language* lang = nullptr,
                                     const std::string& order_symbol = "<=") {
    if (lang) {
        auto sig = lang->lookup(SymbolRef(order_symbol));
        bool has_order = sig && sig->kind == SymbolKind::relation && sig->arity == 2;
        if (!has_order && quantifier_rank(f) > 0) return {FormulaClass::Kind::unclassified, 0};
    }
    auto lv = detail::levels(f, order_symbol);
    if (lv.sigma == 0) return {FormulaClass::Kind::delta0, 0};
    if (lv.sigma <= lv.pi) return {FormulaClass::Kind::sigma, lv.sigma};
    return {FormulaClass::Kind::pi, lv.pi};
}

inline bool in_sigma(const Formula& f, int n, const std::string& order_symbol = "<=") {
    return detail::levels(f, order_symbol).sigma <= n;
}
inline bool in_pi(const Formula& f, int n, const std::string& order_symbol = "<=") {
    return detail::levels(f, order_symbol).pi <= n;
}

}  // namespace weakarith
