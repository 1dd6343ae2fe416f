// Hilbert-style proofs: checker, bounded forward search, tautology test.
//
// Logical axiom schemas (metavariables A, B, C formulas; x a variable;
// s, t, u and s1.., t1.. terms; sym a symbol name):
//
//   A1   A -> (B -> A)
//   A2   (A -> (B -> C)) -> ((A -> B) -> (A -> C))
//   A3   (not B -> not A) -> (A -> B)
//   C1   (A and B) -> A          C2  (A and B) -> B      C3  A -> (B -> (A and B))
//   D1   A -> (A or B)           D2  B -> (A or B)
//   D3   (A -> C) -> ((B -> C) -> ((A or B) -> C))
//   T    true                    F   false -> A
//   Q-inst   forall x A -> A[x := t]
//   Q-dist   forall x (A -> B) -> (A -> forall x B)      x not free in A
//   X1   exists x A -> not forall x not A
//   X2   not forall x not A -> exists x A
//   X-intro  A[x := t] -> exists x A
//   E-refl   t = t
//   E-sym    s = t -> t = s
//   E-trans  s = t -> (t = u -> s = u)
//   E-cong   s1 = t1 -> ... -> sym(s..) = sym(t..)      (functions)
//            s1 = t1 -> ... -> (sym(s..) -> sym(t..))   (relations)
//
// Rules: modus ponens and generalization.
//
// Proof files, one step per line (steps numbered from 0, `;` comments):
//   ax <theory> <index>
//   logic <schema> name=value ...      value: a symbol, variable or s-expression
//   mp <i> <j>                         step i is A, step j is A -> B
//   gen <i> <var>
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/sexpr.hpp"
#include "weakarith/structure.hpp"
#include "weakarith/syntax.hpp"
#include "weakarith/theory.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace weakarith {

class InvalidStep : public Error {
public:
    InvalidStep(std::size_t index, const std::string& reason)
        : Error("invalid step " + std::to_string(index) + ": " + reason), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class TooManyAtoms : public Error {
public:
    explicit TooManyAtoms(std::size_t n) : Error("too many propositional atoms: " + std::to_string(n) + " > 20") {}
};

/// Instantiation of a schema: formula, term and name parameters.
struct SchemaArgs {
    std::map<std::string, Formula> formulas;
    std::map<std::string, Term> terms;
    std::map<std::string, std::string> names;

    friend bool operator==(const SchemaArgs&, const SchemaArgs&) = default;
};

struct ProofStep {
    enum class Kind { theory_axiom, logical_axiom, equality_axiom, modus_ponens, generalization };
    Kind kind = Kind::theory_axiom;
    std::string theory;
    std::uint64_t axiom_index = 0;
    std::string schema;
    SchemaArgs args;
    std::size_t premise = 0;
    std::size_t implication = 0;
    std::string var;

    static ProofStep axiom(std::string theory, std::uint64_t i) {
        ProofStep s;
        s.kind = Kind::theory_axiom;
        s.theory = std::move(theory);
        s.axiom_index = i;
        return s;
    }
    static ProofStep logic(std::string schema, SchemaArgs args) {
        ProofStep s;
        s.kind = schema.rfind("E-", 0) == 0 ? Kind::equality_axiom : Kind::logical_axiom;
        s.schema = std::move(schema);
        s.args = std::move(args);
        return s;
    }
    static ProofStep mp(std::size_t premise, std::size_t implication) {
        ProofStep s;
        s.kind = Kind::modus_ponens;
        s.premise = premise;
        s.implication = implication;
        return s;
    }
    static ProofStep gen(std::size_t i, std::string v) {
        ProofStep s;
        s.kind = Kind::generalization;
        s.premise = i;
        s.var = std::move(v);
        return s;
    }
};

struct Proof {
    std::vector<ProofStep> steps;
    std::size_t size() const { return steps.size(); }
};

inline const std::vector<std::string>& schema_ids() {
    static const std::vector<std::string> ids{"A1", "A2", "A3", "C1", "C2", "C3", "D1", "D2", "D3", "T", "F",
                                              "Q-inst", "Q-dist", "X1", "X2", "X-intro",
                                              "E-refl", "E-sym", "E-trans", "E-cong"};
    return ids;
}

/// The instance of `schema` under `a`. Throws Error on missing parameters or
/// violated side conditions.
inline Formula schema_instance(const std::string& schema, const SchemaArgs& a, const Language& lang) {
    using namespace build;
    auto F = [&](const char* n) -> const Formula& {
        auto it = a.formulas.find(n);
        if (it == a.formulas.end()) throw Error("schema " + schema + " needs formula parameter " + n);
        return it->second;
    };
    auto T = [&](const std::string& n) -> const Term& {
        auto it = a.terms.find(n);
        if (it == a.terms.end()) throw Error("schema " + schema + " needs term parameter " + n);
        return it->second;
    };
    auto N = [&](const char* n) -> const std::string& {
        auto it = a.names.find(n);
        if (it == a.names.end()) throw Error("schema " + schema + " needs parameter " + n);
        return it->second;
    };
    if (schema == "A1") return implies(F("A"), implies(F("B"), F("A")));
    if (schema == "A2")
        return implies(implies(F("A"), implies(F("B"), F("C"))),
                       implies(implies(F("A"), F("B")), implies(F("A"), F("C"))));
    if (schema == "A3") return implies(implies(neg(F("B")), neg(F("A"))), implies(F("A"), F("B")));
    if (schema == "C1") return implies(conj(F("A"), F("B")), F("A"));
    if (schema == "C2") return implies(conj(F("A"), F("B")), F("B"));
    if (schema == "C3") return implies(F("A"), implies(F("B"), conj(F("A"), F("B"))));
    if (schema == "D1") return implies(F("A"), disj(F("A"), F("B")));
    if (schema == "D2") return implies(F("B"), disj(F("A"), F("B")));
    if (schema == "D3")
        return implies(implies(F("A"), F("C")), implies(implies(F("B"), F("C")), implies(disj(F("A"), F("B")), F("C"))));
    if (schema == "T") return top();
    if (schema == "F") return implies(bottom(), F("A"));
    if (schema == "Q-inst") return implies(forall(N("x"), F("A")), substitute(F("A"), N("x"), T("t")));
    if (schema == "Q-dist") {
        if (free_variables(F("A")).count(N("x"))) throw Error("Q-dist: " + N("x") + " is free in A");
        return implies(forall(N("x"), implies(F("A"), F("B"))), implies(F("A"), forall(N("x"), F("B"))));
    }
    if (schema == "X1") return implies(exists(N("x"), F("A")), neg(forall(N("x"), neg(F("A")))));
    if (schema == "X2") return implies(neg(forall(N("x"), neg(F("A")))), exists(N("x"), F("A")));
    if (schema == "X-intro") return implies(substitute(F("A"), N("x"), T("t")), exists(N("x"), F("A")));
    if (schema == "E-refl") return eq(T("t"), T("t"));
    if (schema == "E-sym") return implies(eq(T("s"), T("t")), eq(T("t"), T("s")));
    if (schema == "E-trans") return implies(eq(T("s"), T("t")), implies(eq(T("t"), T("u")), eq(T("s"), T("u"))));
    if (schema == "E-cong") {
        SymbolRef sym = detail::parse_symbol_ref(N("sym"));
        auto sig = lang.lookup(sym);
        if (!sig) throw UnmappedSymbol(sym.key());
        std::vector<Term> ss, ts;
        for (int i = 1; i <= sig->arity; ++i) {
            ss.push_back(T("s" + std::to_string(i)));
            ts.push_back(T("t" + std::to_string(i)));
        }
        Formula concl = sig->kind == SymbolKind::function ? eq(app(sym, ss), app(sym, ts))
                                                          : implies(rel(sym, ss), rel(sym, ts));
        for (int i = sig->arity; i >= 1; --i)
            concl = implies(eq(ss[static_cast<std::size_t>(i - 1)], ts[static_cast<std::size_t>(i - 1)]), std::move(concl));
        return concl;
    }
    throw Error("unknown schema '" + schema + "'");
}

/// Formulas of all steps. Throws InvalidStep at the first bad step.
inline std::vector<Formula> check_proof_steps(const Proof& p, const Theory& t) {
    std::vector<Formula> lines;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const ProofStep& s = p.steps[i];
        auto earlier = [&](std::size_t j) -> const Formula& {
            if (j >= i) throw InvalidStep(i, "reference to step " + std::to_string(j) + " is not to an earlier step");
            return lines[j];
        };
        switch (s.kind) {
        case ProofStep::Kind::theory_axiom:
            if (s.theory != t.name) throw InvalidStep(i, "cites theory " + s.theory + ", checking against " + t.name);
            lines.push_back(t.axiom_of(s.axiom_index));
            break;
        case ProofStep::Kind::logical_axiom:
        case ProofStep::Kind::equality_axiom:
            try {
                Formula f = schema_instance(s.schema, s.args, t.language);
                check_well_formed(f, t.language);
                lines.push_back(std::move(f));
            } catch (const InvalidStep&) {
                throw;
            } catch (const Error& e) {
                throw InvalidStep(i, e.what());
            }
            break;
        case ProofStep::Kind::modus_ponens: {
            const Formula& a = earlier(s.premise);
            const Formula& imp = earlier(s.implication);
            if (!imp.is(Connective::implication))
                throw InvalidStep(i, "step " + std::to_string(s.implication) + " is not an implication");
            if (!(imp.left() == a))
                throw InvalidStep(i, "antecedent of step " + std::to_string(s.implication) + " is not step " +
                                         std::to_string(s.premise));
            lines.push_back(imp.right());
            break;
        }
        case ProofStep::Kind::generalization: {
            if (!detail::is_variable_name(s.var)) throw InvalidStep(i, "'" + s.var + "' is not a variable");
            lines.push_back(build::forall(s.var, earlier(s.premise)));
            break;
        }
        }
    }
    return lines;
}

inline Formula check_proof(const Proof& p, const Theory& t) {
    if (p.steps.empty()) throw InvalidStep(0, "empty proof");
    return check_proof_steps(p, t).back();
}

// Tautologies ---------------------------------------------------------------

namespace detail {
inline void collect_atoms(const Formula& f, std::vector<Formula>& atoms) {
    switch (f.op) {
    case Connective::verum:
    case Connective::falsum: return;
    case Connective::negation:
    case Connective::conjunction:
    case Connective::disjunction:
    case Connective::implication:
        for (const auto& c : f.children) collect_atoms(c, atoms);
        return;
    default:
        if (std::find(atoms.begin(), atoms.end(), f) == atoms.end()) atoms.push_back(f);
    }
}
inline bool prop_eval(const Formula& f, const std::vector<Formula>& atoms, std::uint32_t bits) {
    switch (f.op) {
    case Connective::verum: return true;
    case Connective::falsum: return false;
    case Connective::negation: return !prop_eval(f.body(), atoms, bits);
    case Connective::conjunction: return prop_eval(f.left(), atoms, bits) && prop_eval(f.right(), atoms, bits);
    case Connective::disjunction: return prop_eval(f.left(), atoms, bits) || prop_eval(f.right(), atoms, bits);
    case Connective::implication: return !prop_eval(f.left(), atoms, bits) || prop_eval(f.right(), atoms, bits);
    default: {
        auto it = std::find(atoms.begin(), atoms.end(), f);
        return (bits >> static_cast<std::size_t>(it - atoms.begin())) & 1U;
    }
    }
}
}  // namespace detail

/// Truth-table test with atomic and quantified subformulas as opaque atoms.
inline bool is_tautology(const Formula& f) {
    std::vector<Formula> atoms;
    detail::collect_atoms(f, atoms);
    if (atoms.size() > 20) throw TooManyAtoms(atoms.size());
    std::uint32_t n = 1U << atoms.size();
    for (std::uint32_t bits = 0; bits < n; ++bits)
        if (!detail::prop_eval(f, atoms, bits)) return false;
    return true;
}

// Search --------------------------------------------------------------------

struct SearchOptions {
    std::uint64_t numeral_bound = 3;   // numerals 0..bound are instantiation candidates
    std::uint64_t axiom_window = 64;   // axioms added before saturation starts
};

struct SearchResult {
    std::optional<Proof> proof;
    std::uint64_t events = 0;
};

namespace detail {

/// Forward saturation. Every new pool formula costs one event; the event
/// stream does not depend on the budget, which only truncates it.
class Saturator {
public:
    Saturator(const Theory& t, const Formula& goal, std::uint64_t budget, SearchOptions opts)
        : t_(t), goal_(goal), budget_(budget), opts_(opts) {
        for (std::uint64_t n = 0; n <= opts_.numeral_bound; ++n) add_candidate(numeral(n));
        collect_terms(goal);
    }

    SearchResult run() {
        SearchResult res;
        std::uint64_t next_axiom = 0;
        auto axiom_limit = [&]() -> std::uint64_t {
            return t_.finite_size ? static_cast<std::uint64_t>(*t_.finite_size) : UINT64_MAX;
        };
        for (const auto& c : candidates_)
            if (!done() && contains_no_variables(c)) add(build::eq(c, c), ProofStep::logic("E-refl", refl_args(c)), {});
        while (!done() && next_axiom < opts_.axiom_window && next_axiom < axiom_limit()) {
            add(t_.axiom_of(next_axiom), ProofStep::axiom(t_.name, next_axiom), {});
            ++next_axiom;
        }
        std::size_t instantiated_upto = 0;
        while (!done()) {
            std::size_t before = pool_.size();
            if (next_axiom < axiom_limit()) {
                add(t_.axiom_of(next_axiom), ProofStep::axiom(t_.name, next_axiom), {});
                ++next_axiom;
            }
            std::size_t snapshot = pool_.size();
            for (std::size_t id = instantiated_upto; id < snapshot && !done(); ++id) instantiate(id);
            instantiated_upto = snapshot;
            if (pool_.size() == before && next_axiom >= axiom_limit()) break;
        }
        res.events = events_;
        if (found_) res.proof = extract(*found_);
        return res;
    }

private:
    struct Entry {
        Formula f;
        ProofStep how;
        std::vector<std::size_t> parents;  // pool ids: mp (premise, implication)
    };

    const Theory& t_;
    Formula goal_;
    std::uint64_t budget_;
    SearchOptions opts_;
    std::uint64_t events_ = 0;
    std::vector<Entry> pool_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_antecedent_;
    std::vector<Term> candidates_;
    std::optional<std::size_t> found_;

    bool done() const { return found_.has_value() || events_ >= budget_; }

    static bool contains_no_variables(const Term& t) { return variables(t).empty(); }

    static SchemaArgs refl_args(const Term& t) {
        SchemaArgs a;
        a.terms.emplace("t", t);
        return a;
    }

    void add_candidate(const Term& t) {
        if (std::find(candidates_.begin(), candidates_.end(), t) == candidates_.end()) candidates_.push_back(t);
    }
    void collect_terms(const Term& t) {
        for (const auto& a : t.args) collect_terms(a);
        add_candidate(t);
    }
    void collect_terms(const Formula& f) {
        for (const auto& t : f.terms) collect_terms(t);
        for (const auto& c : f.children) collect_terms(c);
    }

    void add(Formula f, ProofStep how, std::vector<std::size_t> parents) {
        std::vector<std::size_t> queue;
        auto push = [&](Formula g, ProofStep h, std::vector<std::size_t> ps) {
            if (done()) return;
            std::string key = print_formula(g);
            if (index_.count(key)) return;
            ++events_;
            std::size_t id = pool_.size();
            index_.emplace(key, id);
            pool_.push_back({std::move(g), std::move(h), std::move(ps)});
            if (pool_[id].f == goal_) found_ = id;
            queue.push_back(id);
        };
        push(std::move(f), std::move(how), std::move(parents));
        // Close under modus ponens.
        while (!queue.empty() && !done()) {
            std::size_t id = queue.front();
            queue.erase(queue.begin());
            const Formula g = pool_[id].f;
            std::string gkey = print_formula(g);
            if (g.is(Connective::implication)) {
                std::string akey = print_formula(g.left());
                by_antecedent_[akey].push_back(id);
                if (auto it = index_.find(akey); it != index_.end())
                    push(g.right(), ProofStep::mp(0, 0), {it->second, id});
            }
            if (auto it = by_antecedent_.find(gkey); it != by_antecedent_.end()) {
                auto imps = it->second;
                for (std::size_t imp : imps) {
                    if (imp == id) continue;
                    push(pool_[imp].f.right(), ProofStep::mp(0, 0), {id, imp});
                }
            }
        }
    }

    void instantiate(std::size_t id) {
        if (!pool_[id].f.is(Connective::forall)) return;
        const Formula f = pool_[id].f;
        for (const auto& c : candidates_) {
            if (done()) return;
            SchemaArgs a;
            a.names.emplace("x", f.var);
            a.formulas.emplace("A", f.body());
            a.terms.emplace("t", c);
            add(schema_instance("Q-inst", a, t_.language), ProofStep::logic("Q-inst", a), {});
        }
    }

    Proof extract(std::size_t goal) const {
        std::set<std::size_t> needed;
        std::vector<std::size_t> stack{goal};
        while (!stack.empty()) {
            std::size_t id = stack.back();
            stack.pop_back();
            if (!needed.insert(id).second) continue;
            for (std::size_t p : pool_[id].parents) stack.push_back(p);
        }
        std::map<std::size_t, std::size_t> step_of;
        Proof p;
        for (std::size_t id : needed) {
            ProofStep s = pool_[id].how;
            if (s.kind == ProofStep::Kind::modus_ponens) {
                s.premise = step_of.at(pool_[id].parents[0]);
                s.implication = step_of.at(pool_[id].parents[1]);
            }
            step_of[id] = p.steps.size();
            p.steps.push_back(std::move(s));
        }
        return p;
    }
};

}  // namespace detail

/// Bounded, deterministic, sound proof search. Budget counts derived formulas.
inline SearchResult search_proof(const Theory& t, const Formula& goal, std::uint64_t budget, SearchOptions opts = {}) {
    return detail::Saturator(t, goal, budget, opts).run();
}

// Proof files ---------------------------------------------------------------

namespace detail {
inline std::vector<std::string> split_step_tokens(const std::string& line, std::size_t lineno) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        int depth = 0;
        while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
            if (line[i] == '(') ++depth;
            if (line[i] == ')') {
                if (--depth < 0) throw ParseError(ParseError::Kind::syntax, lineno, i + 1, "unbalanced ')'");
            }
            ++i;
        }
        if (depth != 0) throw ParseError(ParseError::Kind::syntax, lineno, start + 1, "unbalanced '('");
        out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline bool is_formula_param(const std::string& n) { return n == "A" || n == "B" || n == "C"; }
inline bool is_name_param(const std::string& n) { return n == "x" || n == "sym"; }
}  // namespace detail

inline Proof parse_proof(const std::string& text, const Language& lang) {
    Proof p;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto number = [&](const std::string& tok) -> std::uint64_t {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(ParseError::Kind::syntax, lineno, 1, "expected a number, got '" + tok + "'");
        return std::stoull(tok);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == ';') continue;
        auto toks = detail::split_step_tokens(s, lineno);
        const std::string& op = toks[0];
        auto need = [&](std::size_t n) {
            if (toks.size() != n) throw ParseError(ParseError::Kind::syntax, lineno, 1, "'" + op + "' takes " + std::to_string(n - 1) + " arguments");
        };
        if (op == "ax") {
            need(3);
            p.steps.push_back(ProofStep::axiom(toks[1], number(toks[2])));
        } else if (op == "mp") {
            need(3);
            p.steps.push_back(ProofStep::mp(number(toks[1]), number(toks[2])));
        } else if (op == "gen") {
            need(3);
            p.steps.push_back(ProofStep::gen(number(toks[1]), toks[2]));
        } else if (op == "logic") {
            if (toks.size() < 2) throw ParseError(ParseError::Kind::syntax, lineno, 1, "'logic' needs a schema id");
            SchemaArgs args;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto eqpos = toks[i].find('=');
                if (eqpos == std::string::npos || eqpos == 0)
                    throw ParseError(ParseError::Kind::syntax, lineno, 1, "expected name=value, got '" + toks[i] + "'");
                std::string name = toks[i].substr(0, eqpos), value = toks[i].substr(eqpos + 1);
                if (detail::is_formula_param(name))
                    args.formulas.emplace(name, parse_formula(value, lang));
                else if (detail::is_name_param(name))
                    args.names.emplace(name, value);
                else
                    args.terms.emplace(name, parse_term(value, lang));
            }
            p.steps.push_back(ProofStep::logic(toks[1], std::move(args)));
        } else {
            throw ParseError(ParseError::Kind::syntax, lineno, 1, "unknown step '" + op + "'");
        }
    }
    return p;
}

inline std::string print_proof(const Proof& p) {
    std::ostringstream out;
    for (const auto& s : p.steps) {
        switch (s.kind) {
        case ProofStep::Kind::theory_axiom: out << "ax " << s.theory << " " << s.axiom_index; break;
        case ProofStep::Kind::logical_axiom:
        case ProofStep::Kind::equality_axiom:
            out << "logic " << s.schema;
            for (const auto& [k, v] : s.args.names) out << " " << k << "=" << v;
            for (const auto& [k, v] : s.args.terms) out << " " << k << "=" << print_term(v);
            for (const auto& [k, v] : s.args.formulas) out << " " << k << "=" << print_formula(v);
            break;
        case ProofStep::Kind::modus_ponens: out << "mp " << s.premise << " " << s.implication; break;
        case ProofStep::Kind::generalization: out << "gen " << s.premise << " " << s.var; break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace weakarith
