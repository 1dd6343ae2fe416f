// Decision procedure for sentences over one equivalence relation E, relative
// to an oracle pair (B, C): decide truth in all models of E<B,C> by counting
// classes of each small size, capped at the quantifier rank.
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/machine.hpp"
#include "weakarith/sexpr.hpp"
#include "weakarith/structure.hpp"
#include "weakarith/syntax.hpp"
#include "weakarith/theory.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace weakarith {

class WrongLanguage : public Error {
public:
    explicit WrongLanguage(const std::string& what) : Error("wrong language: " + what) {}
};

class NotAnEquivalence : public Error {
public:
    explicit NotAnEquivalence(const std::string& what) : Error("not an equivalence relation: " + what) {}
};

/// counts[s-1] = number of classes of size s (1 <= s <= r), capped at r;
/// large = number of classes of size > r, capped at r.
struct SizeProfile {
    int rank = 0;
    std::vector<int> counts;
    int large = 0;

    int count(int s) const { return counts.at(static_cast<std::size_t>(s - 1)); }
    bool empty() const {
        return large == 0 && std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
    }
    friend bool operator==(const SizeProfile&, const SizeProfile&) = default;
};

inline std::string print_profile(const SizeProfile& p) {
    std::ostringstream out;
    out << "r=" << p.rank << " [";
    for (std::size_t i = 0; i < p.counts.size(); ++i) out << (i ? " " : "") << (i + 1) << ":" << p.counts[i];
    out << (p.counts.empty() ? "" : " ") << ">" << p.rank << ":" << p.large << "]";
    return out.str();
}

struct DecisionStatus {
    enum class Kind { provable, refutable, independent, unknown };
    Kind kind = Kind::unknown;
    std::uint64_t stage = 0;
    std::optional<SizeProfile> satisfying;  // an admissible profile where the sentence holds
    std::optional<SizeProfile> falsifying;  // and one where it fails
    std::size_t admissible = 0;

    std::string str() const {
        switch (kind) {
        case Kind::provable: return "Provable";
        case Kind::refutable: return "Refutable";
        case Kind::independent: return "Independent";
        case Kind::unknown: return "Unknown(" + std::to_string(stage) + ")";
        }
        return "?";
    }
};

namespace detail {
inline void require_equivalence_language(const Formula& f) {
    for (const auto& u : symbols_of(f))
        if (u.symbol.key() != "E" || u.kind != SymbolKind::relation || u.arity != 2)
            throw WrongLanguage("symbol " + u.symbol.key() + " (only the binary relation E is allowed)");
}
}  // namespace detail

inline int rank(const Formula& f) {
    detail::require_equivalence_language(f);
    return quantifier_rank(f);
}

/// Equivalence structure whose classes have the given sizes, consecutive blocks.
inline FiniteStructure equivalence_structure(const std::vector<int>& block_sizes) {
    int n = 0;
    for (int b : block_sizes) n += b;
    if (n == 0) throw Error("equivalence structure must be nonempty");
    FiniteStructure m(n);
    m.relation("E", 2);
    int start = 0;
    for (int b : block_sizes) {
        for (int i = start; i < start + b; ++i)
            for (int j = start; j < start + b; ++j) m.set("E", {i, j}, 1);
        start += b;
    }
    return m;
}

/// Class sizes of E in m. Throws NotAnEquivalence.
inline std::vector<int> class_sizes(const FiniteStructure& m) {
    const Table* t = m.find("E");
    if (!t || t->kind != SymbolKind::relation || t->arity != 2) throw NotAnEquivalence("no binary relation E");
    auto E = [&](int a, int b) { return m.get("E", {a, b}) == 1; };
    for (int a = 0; a < m.size; ++a) {
        if (!E(a, a)) throw NotAnEquivalence("not reflexive at " + std::to_string(a));
        for (int b = 0; b < m.size; ++b) {
            if (E(a, b) != E(b, a)) throw NotAnEquivalence("not symmetric at (" + std::to_string(a) + "," + std::to_string(b) + ")");
            if (!E(a, b)) continue;
            for (int c = 0; c < m.size; ++c)
                if (E(b, c) && !E(a, c))
                    throw NotAnEquivalence("not transitive at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
    }
    std::vector<int> seen(static_cast<std::size_t>(m.size), 0), sizes;
    for (int a = 0; a < m.size; ++a) {
        if (seen[static_cast<std::size_t>(a)]) continue;
        int s = 0;
        for (int b = 0; b < m.size; ++b)
            if (E(a, b)) {
                seen[static_cast<std::size_t>(b)] = 1;
                ++s;
            }
        sizes.push_back(s);
    }
    return sizes;
}

inline SizeProfile profile_of_sizes(const std::vector<int>& sizes, int r) {
    SizeProfile p;
    p.rank = r;
    p.counts.assign(static_cast<std::size_t>(r), 0);
    for (int s : sizes) {
        if (s <= r)
            p.counts[static_cast<std::size_t>(s - 1)] = std::min(r, p.counts[static_cast<std::size_t>(s - 1)] + 1);
        else
            p.large = std::min(r, p.large + 1);
    }
    return p;
}

inline SizeProfile profile_of(const FiniteStructure& m, int r) { return profile_of_sizes(class_sizes(m), r); }

/// Canonical witness: count(s) blocks of size s, `large` blocks of size r+1.
/// At rank 0 the profile carries no information and is realized by one point.
inline FiniteStructure realize_profile(const SizeProfile& p) {
    if (p.rank == 0) return equivalence_structure({1});
    std::vector<int> blocks;
    for (int s = 1; s <= p.rank; ++s)
        for (int k = 0; k < p.count(s); ++k) blocks.push_back(s);
    for (int k = 0; k < p.large; ++k) blocks.push_back(p.rank + 1);
    return equivalence_structure(blocks);
}

/// All nonempty profiles of rank r, in lexicographic order of (counts, large).
inline std::vector<SizeProfile> all_profiles(int r) {
    std::vector<SizeProfile> out;
    SizeProfile p;
    p.rank = r;
    p.counts.assign(static_cast<std::size_t>(r), 0);
    if (r == 0) return {p};
    std::size_t digits = static_cast<std::size_t>(r) + 1;
    std::vector<int> d(digits, 0);
    while (true) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) p.counts[i] = d[i];
        p.large = d[digits - 1];
        if (!p.empty()) out.push_back(p);
        std::size_t i = digits;
        while (i > 0 && d[i - 1] == r) d[--i] = 0;
        if (i == 0) break;
        ++d[i - 1];
    }
    return out;
}

/// Oracle knowledge at a stage: which sizes are known to be in B or in C,
/// and whether membership outside the known sets is settled (finite mode).
struct OracleKnowledge {
    std::vector<std::uint64_t> b_known;
    std::vector<std::uint64_t> c_known;
    bool complete = false;
};

inline OracleKnowledge knowledge_at(const OraclePair& pair, std::uint64_t stage) {
    return {pair.left(stage), pair.right(stage), pair.mode() == OraclePair::Mode::finite};
}

/// Whether some model of E<B,C> has profile p, given what the oracle says.
inline bool admissible(const SizeProfile& p, const OracleKnowledge& k) {
    const int r = p.rank;
    for (int s = 1; s <= r; ++s)
        if (p.count(s) > 1) return false;
    std::uint64_t large_b = 0;
    for (auto n : k.b_known) {
        if (n == 0) return false;  // Phi_0 is false: B containing 0 has no model
        if (n <= static_cast<std::uint64_t>(r)) {
            if (p.count(static_cast<int>(n)) != 1) return false;
        } else {
            ++large_b;
        }
    }
    for (auto n : k.c_known)
        if (n >= 1 && n <= static_cast<std::uint64_t>(r) && p.count(static_cast<int>(n)) != 0) return false;
    if (p.large < static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(r), large_b))) return false;
    return true;
}

inline DecisionStatus decide(const Formula& phi, const OraclePair& pair, std::uint64_t stage) {
    detail::require_equivalence_language(phi);
    if (!is_sentence(phi)) throw Error("decide expects a sentence");
    const int r = quantifier_rank(phi);
    OracleKnowledge k = knowledge_at(pair, stage);
    if (std::find(k.b_known.begin(), k.b_known.end(), 0) != k.b_known.end())
        throw Error("0 is in B and Phi_0 is false, so E<B,C> is inconsistent (for the canonical pair use 'shift 1 canonical')");
    DecisionStatus st;
    st.stage = stage;
    for (const auto& p : all_profiles(r)) {
        if (!admissible(p, k)) continue;
        ++st.admissible;
        bool v = eval_formula(realize_profile(p), phi);
        if (v && !st.satisfying) st.satisfying = p;
        if (!v && !st.falsifying) st.falsifying = p;
    }
    if (st.admissible == 0) throw Error("no admissible profile: E<B,C> is inconsistent at this stage");
    if (!st.falsifying)
        st.kind = DecisionStatus::Kind::provable;
    else if (!st.satisfying)
        st.kind = DecisionStatus::Kind::refutable;
    else
        st.kind = k.complete ? DecisionStatus::Kind::independent : DecisionStatus::Kind::unknown;
    return st;
}

/// Disjunction of the profiles (all of them, no admissibility) whose
/// realization satisfies the sentence.
struct NormalForm {
    int rank = 0;
    std::vector<SizeProfile> disjuncts;

    bool holds_in(const FiniteStructure& m) const {
        SizeProfile p = profile_of(m, rank);
        return std::find(disjuncts.begin(), disjuncts.end(), p) != disjuncts.end();
    }
};

inline NormalForm normal_form(const Formula& phi, int r) {
    detail::require_equivalence_language(phi);
    if (!is_sentence(phi)) throw Error("normal_form expects a sentence");
    if (r < quantifier_rank(phi)) throw Error("normal_form: r is below the rank of the sentence");
    NormalForm nf;
    nf.rank = r;
    for (const auto& p : all_profiles(r))
        if (eval_formula(realize_profile(p), phi)) nf.disjuncts.push_back(p);
    return nf;
}

/// Literals of one disjunct: "exactly k classes of size s", "at least r
/// classes of size s" at the cap, and the same for "size > r".
inline std::vector<std::string> profile_literals(const SizeProfile& p) {
    std::vector<std::string> lits;
    auto lit = [&](int k, const std::string& what) {
        std::string q = (k == p.rank) ? "at least " : "exactly ";
        lits.push_back(q + std::to_string(k) + " classes of size " + what);
    };
    for (int s = 1; s <= p.rank; ++s) lit(p.count(s), std::to_string(s));
    if (p.rank > 0) lit(p.large, "> " + std::to_string(p.rank));
    return lits;
}

inline std::string print_normal_form(const NormalForm& nf) {
    std::ostringstream out;
    if (nf.disjuncts.empty()) return "false\n";
    for (std::size_t i = 0; i < nf.disjuncts.size(); ++i) {
        out << (i ? "or " : "   ");
        auto lits = profile_literals(nf.disjuncts[i]);
        if (lits.empty()) out << "true";
        for (std::size_t j = 0; j < lits.size(); ++j) out << (j ? " and " : "") << "(" << lits[j] << ")";
        out << "\n";
    }
    return out.str();
}

/// All integer partitions of n, parts in nonincreasing order.
inline std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int max_part) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Whether the class sizes describe a model of the finite part of E<B,C>
/// known at the stage: at most one class per size, known B sizes present,
/// known C sizes absent.
inline bool is_model_of_E(const std::vector<int>& sizes, const OracleKnowledge& k) {
    std::vector<int> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (auto n : k.b_known)
        if (!std::binary_search(sorted.begin(), sorted.end(), static_cast<int>(n))) return false;
    for (auto n : k.c_known)
        if (std::binary_search(sorted.begin(), sorted.end(), static_cast<int>(n))) return false;
    return true;
}

}  // namespace weakarith
