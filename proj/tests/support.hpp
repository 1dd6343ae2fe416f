// Seeded generators shared by the test binaries.
#pragma once

#include "weakarith.hpp"

#include <random>
#include <string>
#include <vector>

namespace wtest {

using namespace weakarith;

class Gen {
public:
    explicit Gen(std::uint64_t seed, Language lang) : rng_(seed), lang_(std::move(lang)) {
        for (const auto& s : lang_.symbols()) {
            if (s.kind == SymbolKind::function) (s.arity == 0 ? constants_ : functions_).push_back(s);
            else relations_.push_back(s);
        }
    }

    std::mt19937_64& rng() { return rng_; }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Term term(int depth, const std::vector<std::string>& vars) {
        bool leaf = depth <= 0 || functions_.empty() || uniform(0, 2) == 0;
        if (leaf) {
            int options = static_cast<int>(vars.size() + constants_.size());
            if (options == 0) throw Error("generator: no leaf terms available");
            int k = uniform(0, options - 1);
            if (k < static_cast<int>(vars.size())) return build::var(vars[static_cast<std::size_t>(k)]);
            return build::app(constants_[static_cast<std::size_t>(k) - vars.size()].name);
        }
        const auto& f = functions_[static_cast<std::size_t>(uniform(0, static_cast<int>(functions_.size()) - 1))];
        std::vector<Term> args;
        for (int i = 0; i < f.arity; ++i) args.push_back(term(depth - 1, vars));
        return build::app(f.name, std::move(args));
    }

    Formula atom(const std::vector<std::string>& vars, int term_depth) {
        int choice = uniform(0, static_cast<int>(relations_.size()) + 1);
        if (choice >= static_cast<int>(relations_.size())) {
            if (vars.empty() && constants_.empty()) return uniform(0, 1) ? build::top() : build::bottom();
            return build::eq(term(term_depth, vars), term(term_depth, vars));
        }
        const auto& r = relations_[static_cast<std::size_t>(choice)];
        std::vector<Term> args;
        for (int i = 0; i < r.arity; ++i) args.push_back(term(term_depth, vars));
        return build::rel(r.name, std::move(args));
    }

    /// Random formula with free variables among `vars`; quantifiers bind
    /// names drawn from `pool` (possibly shadowing).
    Formula formula(int depth, std::vector<std::string> vars, const std::vector<std::string>& pool, int term_depth = 1) {
        if (depth <= 0 || uniform(0, 4) == 0) {
            if (vars.empty() && constants_.empty()) {
                std::string v = pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
                return build::exists(v, atom({v}, term_depth));
            }
            return atom(vars, term_depth);
        }
        switch (uniform(0, 5)) {
        case 0: return build::neg(formula(depth - 1, vars, pool, term_depth));
        case 1: return build::conj(formula(depth - 1, vars, pool, term_depth), formula(depth - 1, vars, pool, term_depth));
        case 2: return build::disj(formula(depth - 1, vars, pool, term_depth), formula(depth - 1, vars, pool, term_depth));
        case 3: return build::implies(formula(depth - 1, vars, pool, term_depth), formula(depth - 1, vars, pool, term_depth));
        default: {
            std::string v = pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
            auto inner = vars;
            if (std::find(inner.begin(), inner.end(), v) == inner.end()) inner.push_back(v);
            Formula body = formula(depth - 1, inner, pool, term_depth);
            return uniform(0, 1) ? build::forall(v, std::move(body)) : build::exists(v, std::move(body));
        }
        }
    }

    Formula sentence(int depth, const std::vector<std::string>& pool, int term_depth = 1) {
        return formula(depth, {}, pool, term_depth);
    }

    /// Random total structure of the given size interpreting every base symbol.
    FiniteStructure structure(int size) {
        FiniteStructure m(size);
        for (const auto& s : lang_.symbols()) {
            Table& t = m.declare(s.name, s.kind, s.arity, 0);
            for (auto& cell : t.data) cell = s.kind == SymbolKind::function ? uniform(0, size - 1) : uniform(0, 1);
        }
        return m;
    }

private:
    std::mt19937_64 rng_;
    Language lang_;
    std::vector<SymbolDecl> constants_, functions_, relations_;
};

/// Random one-dimensional translation of `source` into `target`. Function
/// images are mostly term graphs (v_k = t), so many cases induce a
/// well-defined structure; the rest are filtered by the caller.
inline Translation random_translation(Gen& g, const Language& source, const Language& target) {
    Translation tr;
    tr.name = "random";
    tr.source = source;
    tr.target = target;
    if (g.uniform(0, 2) > 0) tr.domain = g.formula(1, {designated(0)}, {"u"});
    for (const auto& s : source.symbols()) {
        std::vector<std::string> vs;
        for (int i = 0; i < s.arity; ++i) vs.push_back(designated(static_cast<std::size_t>(i)));
        bool can_identity = target.lookup(SymbolRef(s.name)) == Signature{s.kind, s.arity};
        if (can_identity && g.uniform(0, 3) == 0) {
            tr.map_identity(SymbolRef(s.name), s.kind, s.arity);
        } else if (s.kind == SymbolKind::relation) {
            tr.map_relation(SymbolRef(s.name), s.arity, g.formula(2, vs, {"u"}));
        } else if (g.uniform(0, 4) > 0) {
            Term value = g.term(1, vs);
            tr.map_function(SymbolRef(s.name), s.arity,
                            build::eq(build::var(designated(vs.size())), value));
        } else {
            auto with_value = vs;
            with_value.push_back(designated(vs.size()));
            tr.map_function(SymbolRef(s.name), s.arity, g.formula(1, with_value, {"u"}));
        }
    }
    tr.validate();
    return tr;
}

struct SoundnessStats {
    int cases = 0;
    int skipped = 0;
    int failures = 0;
    std::string first_failure;
};

/// eval(M, phi^I) against eval(M^I, phi) on random translations into ordered
/// arithmetic, random target structures of size <= 4 and source sentences of
/// depth <= 3. Cases whose M^I is undefined are skipped, not counted.
inline SoundnessStats translation_soundness(std::uint64_t seed, int wanted) {
    const Language target = languages::ordered_arithmetic();
    const Language sources[] = {languages::ordered_arithmetic(), languages::set_membership(), languages::u_theory()};
    Gen tg(seed, target);
    SoundnessStats st;
    for (int attempt = 0; st.cases < wanted && attempt < wanted * 100; ++attempt) {
        const Language& src = sources[attempt % 3];
        Gen sg(seed * 7919 + static_cast<std::uint64_t>(attempt), src);
        Translation tr = random_translation(tg, src, target);
        FiniteStructure m = tg.structure(tg.uniform(1, 4));
        Formula phi = sg.sentence(3, {"x", "y"});
        FiniteStructure mi;
        try {
            mi = induced_structure(tr, m, symbols_of(phi));
        } catch (const TranslationError&) {
            ++st.skipped;
            continue;
        }
        ++st.cases;
        bool lhs = eval_formula(m, translate_formula(tr, phi));
        bool rhs = eval_formula(mi, phi);
        if (lhs != rhs && st.failures++ == 0)
            st.first_failure = print_formula(phi) + "\n" + print_translation(tr) + print_structure(m);
    }
    return st;
}

struct GoldenGoal {
    std::string theory;
    std::string goal;
    std::uint64_t budget;
};

/// Goals search_proof must find within the budget.
inline const std::vector<GoldenGoal>& golden_goals() {
    static const std::vector<GoldenGoal> goals{
        {"R", "(= (+ (S 0) (S 0)) (S (S 0)))", 100},
        {"R", "(or (<= (S 0) (S 0)) (<= (S 0) (S 0)))", 100},
        {"R", "(= 0 0)", 10},
        {"R", "(not (= 0 (S (S 0))))", 200},
        {"R", "(= (* (S (S 0)) (S 0)) (S (S 0)))", 200},
        {"R", "(-> (<= 0 (S 0)) (or (= 0 0) (= 0 (S 0))))", 500},
        {"Q", "(not (= (S 0) 0))", 200},
        {"Q", "(= (+ 0 0) 0)", 300},
    };
    return goals;
}

/// Exhaustive rank <= 2 corpus over one binary relation E. Literals are the
/// atoms E(x,x), E(x,y), E(y,x), E(y,y), x=y and their negations; a matrix is
/// a literal or an and/or of two distinct literals. The corpus holds every
/// Q1 x Q2 y M, every Q x L with L a literal in x alone, and every
/// Q1 x (L op Q2 y M) with L a literal in x alone.
inline std::vector<Formula> rank2_corpus() {
    using namespace build;
    auto E = [](const char* a, const char* b) { return rel("E", {var(a), var(b)}); };
    std::vector<Formula> atoms{E("x", "x"), E("x", "y"), E("y", "x"), E("y", "y"), eq(var("x"), var("y"))};
    std::vector<Formula> lits;
    for (const auto& a : atoms) {
        lits.push_back(a);
        lits.push_back(neg(a));
    }
    std::vector<Formula> matrices = lits;
    for (std::size_t i = 0; i < lits.size(); ++i)
        for (std::size_t j = i + 1; j < lits.size(); ++j) {
            matrices.push_back(conj(lits[i], lits[j]));
            matrices.push_back(disj(lits[i], lits[j]));
        }
    const std::vector<Formula> xlits{E("x", "x"), neg(E("x", "x"))};
    auto quant = [](bool universal, const char* v, Formula body) {
        return universal ? forall(v, std::move(body)) : exists(v, std::move(body));
    };
    std::vector<Formula> out;
    for (bool q1 : {false, true}) {
        for (const auto& l : xlits) out.push_back(quant(q1, "x", l));
        for (bool q2 : {false, true})
            for (const auto& m : matrices) {
                out.push_back(quant(q1, "x", quant(q2, "y", m)));
                for (const auto& l : xlits) {
                    out.push_back(quant(q1, "x", conj(l, quant(q2, "y", m))));
                    out.push_back(quant(q1, "x", disj(l, quant(q2, "y", m))));
                }
            }
    }
    return out;
}

/// Variables with values in a structure: every assignment of `vars` over m.
inline std::vector<Assignment> all_assignments(const std::vector<std::string>& vars, int size) {
    std::vector<Assignment> out{{}};
    for (const auto& v : vars) {
        std::vector<Assignment> next;
        for (const auto& a : out)
            for (int d = 0; d < size; ++d) {
                auto b = a;
                b[v] = d;
                next.push_back(std::move(b));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace wtest
