// Independence search and essential-undecidability stress harness, driven by
// black-box deciders.
#pragma once

#include "weakarith/equivalence.hpp"
#include "weakarith/machine.hpp"
#include "weakarith/proof.hpp"
#include "weakarith/syntax.hpp"
#include "weakarith/theory.hpp"

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace weakarith {

enum class Answer { provable, refutable, dont_know };

inline std::string answer_name(Answer a) {
    switch (a) {
    case Answer::provable: return "Provable";
    case Answer::refutable: return "Refutable";
    case Answer::dont_know: return "DontKnow";
    }
    return "?";
}

struct DeciderHandle {
    std::string engine;
    std::uint64_t budget = 0;
    std::function<Answer(const Formula&)> run;

    Answer operator()(const Formula& f) const { return run(f); }
};

class DeciderInconsistent : public Error {
public:
    explicit DeciderInconsistent(const std::string& evidence) : Error("decider inconsistent: " + evidence) {}
};

namespace detail {
/// n when f is P(n) or Phi_n (n >= 1), with `negated` set for a leading not.
inline std::optional<std::uint64_t> family_index(const Formula& f, bool& negated) {
    negated = f.is(Connective::negation);
    const Formula& core = negated ? f.body() : f;
    if (core.is(Connective::relation) && core.symbol.key() == "P" && core.terms.size() == 1)
        return numeral_value(core.terms[0]);
    int r = quantifier_rank(core);
    if (r >= 2 && core == schemes::phi(static_cast<std::uint64_t>(r - 1))) return static_cast<std::uint64_t>(r - 1);
    return std::nullopt;
}
}  // namespace detail

/// Looks P(n) and Phi_n up in the pair as enumerated by `stage`.
inline DeciderHandle table_decider(const OraclePair& pair, std::uint64_t stage) {
    DeciderHandle d;
    d.engine = "table";
    d.budget = stage;
    d.run = [pair, stage](const Formula& f) {
        bool negated = false;
        auto n = detail::family_index(f, negated);
        if (!n) return Answer::dont_know;
        Answer a = Answer::dont_know;
        if (pair.contains(Side::left, *n, stage)) a = Answer::provable;
        else if (pair.contains(Side::right, *n, stage)) a = Answer::refutable;
        if (negated && a != Answer::dont_know) a = a == Answer::provable ? Answer::refutable : Answer::provable;
        return a;
    };
    return d;
}

/// Bounded proof search for f, then for not f.
inline DeciderHandle proof_search_decider(Theory t, std::uint64_t budget, SearchOptions opts = {}) {
    DeciderHandle d;
    d.engine = "proof-search";
    d.budget = budget;
    d.run = [t = std::move(t), budget, opts](const Formula& f) {
        if (search_proof(t, f, budget, opts).proof) return Answer::provable;
        if (search_proof(t, build::neg(f), budget, opts).proof) return Answer::refutable;
        return Answer::dont_know;
    };
    return d;
}

inline DeciderHandle equivalence_decider(const OraclePair& pair, std::uint64_t stage) {
    DeciderHandle d;
    d.engine = "equivalence-decision";
    d.budget = stage;
    d.run = [pair, stage](const Formula& f) {
        auto st = decide(f, pair, stage);
        if (st.kind == DecisionStatus::Kind::provable) return Answer::provable;
        if (st.kind == DecisionStatus::Kind::refutable) return Answer::refutable;
        return Answer::dont_know;
    };
    return d;
}

struct IndependenceReport {
    std::optional<std::uint64_t> witness;
    std::optional<Formula> sentence;   // P(n)
    std::optional<Formula> negation;   // not P(n)
    std::string engine;
    std::uint64_t budget = 0;
    std::uint64_t stage = 0;
    std::uint64_t n_max = 0;
    std::set<std::uint64_t> X, Y;

    bool exhausted() const { return !witness.has_value(); }
    bool valid() const { return !witness || (!X.count(*witness) && !Y.count(*witness)); }
};

inline Formula u_sentence(std::uint64_t n) { return build::rel("P", {numeral(n)}); }

/// X = {n <= n_max : D proves P(n)}, Y = {n <= n_max : D proves not P(n)};
/// the least n outside both. Throws DeciderInconsistent when D proves both
/// P(n) and not P(n), or contradicts a fact the pair has enumerated by `stage`.
inline IndependenceReport independence_search(const OraclePair& pair, const DeciderHandle& d, std::uint64_t n_max,
                                              std::uint64_t stage = 0) {
    IndependenceReport rep;
    rep.engine = d.engine;
    rep.budget = d.budget;
    rep.stage = stage;
    rep.n_max = n_max;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        Formula p = u_sentence(n), np = build::neg(p);
        bool in_x = d(p) == Answer::provable;
        bool in_y = d(np) == Answer::provable;
        if (in_x && in_y) throw DeciderInconsistent("proves both " + print_formula(p) + " and " + print_formula(np));
        if (in_x && pair.contains(Side::right, n, stage))
            throw DeciderInconsistent("proves " + print_formula(p) + " but " + print_formula(np) + " is an axiom by stage " + std::to_string(stage));
        if (in_y && pair.contains(Side::left, n, stage))
            throw DeciderInconsistent("proves " + print_formula(np) + " but " + print_formula(p) + " is an axiom by stage " + std::to_string(stage));
        if (in_x) rep.X.insert(n);
        if (in_y) rep.Y.insert(n);
        if (!in_x && !in_y && !rep.witness) {
            rep.witness = n;
            rep.sentence = p;
            rep.negation = np;
        }
    }
    return rep;
}

inline std::string print_independence_report(const IndependenceReport& r) {
    auto list = [](const std::set<std::uint64_t>& s) {
        std::string out = "{";
        for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ",") + std::to_string(*it);
        return out + "}";
    };
    std::ostringstream out;
    out << "engine  " << r.engine << "\n";
    out << "budget  " << r.budget << "\n";
    out << "stage   " << r.stage << "\n";
    out << "n_max   " << r.n_max << "\n";
    out << "X       " << list(r.X) << "\n";
    out << "Y       " << list(r.Y) << "\n";
    if (r.witness) {
        out << "witness " << *r.witness << "\n";
        out << "undecided " << print_formula(*r.sentence) << "\n";
        out << "undecided " << print_formula(*r.negation) << "\n";
    } else {
        out << "witness none (exhausted)\n";
    }
    return out.str();
}

enum class Family { u, e };

struct StressRow {
    std::uint64_t n = 0;
    Answer answer = Answer::dont_know;
    Membership3 fact;           // what the pair says about n at the stage
    std::string status;         // "ok", "unanswered", "inconsistent"
};

struct StressReport {
    Family family = Family::u;
    std::string engine;
    std::uint64_t stage = 0;
    std::vector<StressRow> rows;

    std::vector<std::uint64_t> listed() const {
        std::vector<std::uint64_t> out;
        for (const auto& r : rows)
            if (r.status != "ok") out.push_back(r.n);
        return out;
    }
};

inline Formula family_sentence(Family f, std::uint64_t n) { return f == Family::u ? u_sentence(n) : schemes::phi(n); }

/// Drives D over P(n) (n = 0..count-1) or Phi_n (n = 1..count) and lists every
/// n where D gives no answer or contradicts the pair's facts at `stage`.
inline StressReport stress(Family fam, const OraclePair& pair, std::uint64_t stage, const DeciderHandle& d,
                           std::uint64_t count) {
    StressReport rep;
    rep.family = fam;
    rep.engine = d.engine;
    rep.stage = stage;
    std::uint64_t first = fam == Family::u ? 0 : 1;
    for (std::uint64_t n = first; n < first + count; ++n) {
        StressRow row;
        row.n = n;
        row.answer = d(family_sentence(fam, n));
        if (pair.contains(Side::left, n, stage))
            row.fact = Membership3::in();
        else if (pair.contains(Side::right, n, stage))
            row.fact = Membership3::out();
        else
            row.fact = Membership3::unknown(stage);
        bool contradicts = (row.fact.kind == Membership3::Kind::in && row.answer == Answer::refutable) ||
                           (row.fact.kind == Membership3::Kind::out && row.answer == Answer::provable);
        row.status = contradicts ? "inconsistent" : row.answer == Answer::dont_know ? "unanswered" : "ok";
        rep.rows.push_back(row);
    }
    return rep;
}

inline std::string print_stress_report(const StressReport& r) {
    std::ostringstream out;
    out << "n\tsentence\tanswer\tfact\tstatus\n";
    for (const auto& row : r.rows) {
        std::string fact = row.fact.kind == Membership3::Kind::in    ? "left"
                           : row.fact.kind == Membership3::Kind::out ? "right"
                                                                     : "none";
        out << row.n << "\t" << (r.family == Family::u ? "P(" : "Phi_") << row.n << (r.family == Family::u ? ")" : "")
            << "\t" << answer_name(row.answer) << "\t" << fact << "\t" << row.status << "\n";
    }
    return out.str();
}

}  // namespace weakarith
