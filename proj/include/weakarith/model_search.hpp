// Exhaustive finite-model search (Mace style) and local finite satisfiability.
//
// Sizes are tried in increasing order. Within a size, table entries are
// filled depth-first: function symbols before relation symbols, symbols in
// order of first occurrence in the axioms, tuples lexicographically, values
// ascending (relations: false before true). The first complete structure
// satisfying every axiom is therefore the lexicographically least one.
//
// With pruning on, every partial structure is evaluated in Kleene logic; a
// subtree is cut as soon as some axiom is already false, and its leaves are
// added to the counter without being visited. Either way `structures_counted`
// equals the number of complete structures accounted for, so an exhausted
// search reports exactly the closed-form count.
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/structure.hpp"
#include "weakarith/syntax.hpp"
#include "weakarith/theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weakarith {

struct ModelSearchOptions {
    int min_size = 1;
    bool prune = true;
};

struct ModelSearchResult {
    std::optional<FiniteStructure> model;
    Natural structures_counted = 0;  // complete structures accounted for, all sizes
    std::uint64_t nodes_visited = 0;
    std::vector<Natural> per_size;   // counted per size, from min_size

    explicit operator bool() const { return model.has_value(); }
};

/// Number of complete structures of size k for the symbols used by `axioms`.
inline Natural structure_count(const std::vector<SymbolUse>& symbols, int k) {
    Natural total = 1;
    for (const auto& s : symbols) {
        Natural entries = boost::multiprecision::pow(Natural(k), static_cast<unsigned>(s.arity));
        Natural choices = s.kind == SymbolKind::function ? Natural(k) : Natural(2);
        total *= boost::multiprecision::pow(choices, static_cast<unsigned>(entries));
    }
    return total;
}

inline Natural structure_count(const std::vector<Formula>& axioms, int min_size, int max_size) {
    auto syms = symbols_of(axioms);
    Natural total = 0;
    for (int k = min_size; k <= max_size; ++k) total += structure_count(syms, k);
    return total;
}

namespace detail {

class ModelSearcher {
public:
    ModelSearcher(const std::vector<Formula>& axioms, int k, bool prune) : prune_(prune), m_(k) {
        auto uses = symbols_of(axioms);
        for (const auto& u : uses)
            if (u.kind == SymbolKind::function) m_.declare(u.symbol, u.kind, u.arity, -1);
        for (const auto& u : uses)
            if (u.kind == SymbolKind::relation) m_.declare(u.symbol, u.kind, u.arity, -1);
        for (std::size_t t = 0; t < m_.tables.size(); ++t)
            for (std::size_t e = 0; e < m_.tables[t].data.size(); ++e) cells_.push_back({t, e});
        for (const auto& a : axioms) {
            compiled_.emplace_back(a, m_);
            env_size_ = std::max(env_size_, compiled_.back().slot_count());
        }
        env_.assign(static_cast<std::size_t>(env_size_), 0);
        // suffix[i] = number of completions of cells i..end
        suffix_.assign(cells_.size() + 1, Natural(1));
        for (std::size_t i = cells_.size(); i-- > 0;)
            suffix_[i] = suffix_[i + 1] * Natural(choices(i));
    }

    bool run() { return dfs(0); }

    const FiniteStructure& model() const { return m_; }
    const Natural& counted() const { return counted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    struct Cell {
        std::size_t table;
        std::size_t entry;
    };

    bool prune_;
    FiniteStructure m_;
    std::vector<Cell> cells_;
    std::vector<CompiledFormula> compiled_;
    std::vector<Natural> suffix_;
    std::vector<int> env_;
    int env_size_ = 0;
    Natural counted_ = 0;
    std::uint64_t nodes_ = 0;

    int choices(std::size_t i) const {
        return m_.tables[cells_[i].table].kind == SymbolKind::function ? m_.size : 2;
    }

    Truth status() {
        bool unknown = false;
        for (const auto& c : compiled_) {
            Truth r = c.eval3(m_, env_);
            if (r == Truth::f) return r;
            if (r == Truth::unknown) unknown = true;
        }
        return unknown ? Truth::unknown : Truth::t;
    }

    bool dfs(std::size_t i) {
        ++nodes_;
        if (i == cells_.size()) {
            counted_ += 1;
            return status() == Truth::t;
        }
        if (prune_) {
            Truth s = status();
            if (s == Truth::f) {
                counted_ += suffix_[i];
                return false;
            }
            if (s == Truth::t) {
                // Every completion is a model; the least one fills zeros.
                for (std::size_t j = i; j < cells_.size(); ++j) m_.tables[cells_[j].table].data[cells_[j].entry] = 0;
                counted_ += 1;
                return true;
            }
        }
        auto& slot = m_.tables[cells_[i].table].data[cells_[i].entry];
        for (int v = 0; v < choices(i); ++v) {
            slot = v;
            if (dfs(i + 1)) return true;
        }
        slot = -1;
        return false;
    }
};

}  // namespace detail

/// Least model of `axioms` of size at most `max_size`, or absent.
/// Only the symbols occurring in `axioms` are interpreted.
inline ModelSearchResult find_model(const std::vector<Formula>& axioms, int max_size, ModelSearchOptions opts = {}) {
    for (const auto& a : axioms)
        if (!is_sentence(a)) throw Error("find_model expects sentences; got open formula " + print_formula(a));
    ModelSearchResult res;
    for (int k = std::max(1, opts.min_size); k <= max_size; ++k) {
        detail::ModelSearcher s(axioms, k, opts.prune);
        bool found = s.run();
        res.structures_counted += s.counted();
        res.per_size.push_back(s.counted());
        res.nodes_visited += s.nodes();
        if (found) {
            res.model = s.model();
            return res;
        }
    }
    return res;
}

struct PrefixReport {
    std::size_t prefix_length = 0;
    std::optional<int> witness_size;
    Natural structures_counted = 0;
};

struct LocalFinsatReport {
    std::string theory;
    int max_size = 0;
    std::vector<PrefixReport> prefixes;
    std::optional<FiniteStructure> last_witness;

    bool all_witnessed() const {
        for (const auto& p : prefixes)
            if (!p.witness_size) return false;
        return true;
    }
    std::vector<std::size_t> failures() const {
        std::vector<std::size_t> out;
        for (const auto& p : prefixes)
            if (!p.witness_size) out.push_back(p.prefix_length);
        return out;
    }
};

/// Runs find_model on the prefixes of length 1..first_k of an axiom list.
/// Least witness sizes are monotone in the prefix, so each search starts at
/// the previous witness size.
inline LocalFinsatReport check_local_finsat(const std::vector<Formula>& axioms, int max_size, std::string name = "") {
    LocalFinsatReport rep;
    rep.theory = std::move(name);
    rep.max_size = max_size;
    int start = 1;
    bool dead = false;
    for (std::size_t p = 1; p <= axioms.size(); ++p) {
        PrefixReport pr;
        pr.prefix_length = p;
        if (!dead) {
            std::vector<Formula> prefix(axioms.begin(), axioms.begin() + static_cast<std::ptrdiff_t>(p));
            auto r = find_model(prefix, max_size, {start, true});
            pr.structures_counted = r.structures_counted;
            if (r.model) {
                pr.witness_size = r.model->size;
                start = r.model->size;
                rep.last_witness = r.model;
            } else {
                dead = true;  // longer prefixes have no smaller models
            }
        }
        rep.prefixes.push_back(std::move(pr));
    }
    return rep;
}

inline LocalFinsatReport check_local_finsat(const Theory& t, std::size_t first_k, int max_size) {
    return check_local_finsat(t.first(first_k), max_size, t.name);
}

}  // namespace weakarith
