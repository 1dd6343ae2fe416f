// Finite structures, Tarskian evaluation, and the structure file format.
//
//   size 3
//   fun 0 = [0]
//   fun S = [1,2,2]
//   rel <= = {(0,0),(0,1),(1,1)}
//   rel P = {()}
//
// Function tables list values in lexicographic tuple order; relation tables
// list the tuples that hold. Lines starting with `;` are comments.
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/syntax.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace weakarith {

class UninterpretedSymbol : public Error {
public:
    explicit UninterpretedSymbol(const std::string& s) : Error("uninterpreted symbol " + s) {}
};

class MissingAssignment : public Error {
public:
    explicit MissingAssignment(const std::string& v) : Error("no value assigned to free variable " + v) {}
};

/// Interpretation of one symbol. Entries equal to -1 are undefined
/// (partial tables occur only during model search).
struct Table {
    SymbolRef symbol;
    SymbolKind kind = SymbolKind::relation;
    int arity = 0;
    std::vector<int> data;
};

struct FiniteStructure {
    int size = 1;
    std::vector<Table> tables;

    FiniteStructure() = default;
    explicit FiniteStructure(int k) : size(k) {
        if (k < 1) throw Error("structure size must be at least 1");
    }

    std::size_t entries(int arity) const {
        std::size_t n = 1;
        for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(size);
        return n;
    }

    int index_of(const SymbolRef& s) const {
        for (std::size_t i = 0; i < tables.size(); ++i)
            if (tables[i].symbol == s) return static_cast<int>(i);
        return -1;
    }
    const Table* find(const SymbolRef& s) const {
        int i = index_of(s);
        return i < 0 ? nullptr : &tables[static_cast<std::size_t>(i)];
    }
    Table* find(const SymbolRef& s) {
        int i = index_of(s);
        return i < 0 ? nullptr : &tables[static_cast<std::size_t>(i)];
    }

    Table& declare(const SymbolRef& s, SymbolKind kind, int arity, int fill = -1) {
        if (find(s)) throw Error("symbol " + s.key() + " interpreted twice");
        tables.push_back({s, kind, arity, std::vector<int>(entries(arity), fill)});
        return tables.back();
    }

    std::size_t tuple_index(const std::vector<int>& args) const {
        std::size_t idx = 0;
        for (int a : args) idx = idx * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
        return idx;
    }

    Table& relation(const SymbolRef& s, int arity) { return declare(s, SymbolKind::relation, arity, 0); }
    Table& function(const SymbolRef& s, int arity) { return declare(s, SymbolKind::function, arity, 0); }

    void set(const SymbolRef& s, const std::vector<int>& args, int value) {
        Table* t = find(s);
        if (!t) throw UninterpretedSymbol(s.key());
        t->data.at(tuple_index(args)) = value;
    }
    int get(const SymbolRef& s, const std::vector<int>& args) const {
        const Table* t = find(s);
        if (!t) throw UninterpretedSymbol(s.key());
        return t->data.at(tuple_index(args));
    }

    bool total() const {
        for (const auto& t : tables)
            for (int v : t.data)
                if (v < 0) return false;
        return true;
    }

    friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
        if (a.size != b.size || a.tables.size() != b.tables.size()) return false;
        for (const auto& t : a.tables) {
            const Table* u = b.find(t.symbol);
            if (!u || u->kind != t.kind || u->arity != t.arity || u->data != t.data) return false;
        }
        return true;
    }
};

using Assignment = std::map<std::string, int>;

/// Three-valued truth: Kleene logic over partial tables.
enum class Truth : std::uint8_t { f = 0, t = 1, unknown = 2 };

inline Truth truth_not(Truth a) { return a == Truth::unknown ? a : (a == Truth::t ? Truth::f : Truth::t); }

/// A formula compiled against a structure's table layout: variables become
/// slots and symbols become table indices. A compiled formula may be
/// evaluated on any structure whose tables are declared in the same order.
class CompiledFormula {
public:
    CompiledFormula() = default;

    CompiledFormula(const Formula& f, const FiniteStructure& layout, const std::vector<std::string>& free_order = {}) {
        std::map<std::string, std::vector<int>> scope;
        for (const auto& v : free_order) {
            scope[v].push_back(slots_);
            free_slots_.emplace_back(v, slots_);
            ++slots_;
        }
        for (const auto& v : free_variables(f)) {
            if (scope.count(v)) continue;
            scope[v].push_back(slots_);
            free_slots_.emplace_back(v, slots_);
            ++slots_;
        }
        root_ = compile(f, layout, scope);
    }

    int slot_count() const { return slots_; }
    const std::vector<std::pair<std::string, int>>& free_slots() const { return free_slots_; }

    /// Kleene evaluation; `env` must have slot_count() entries with free slots set.
    Truth eval3(const FiniteStructure& m, std::vector<int>& env) const { return eval_node(root_, m, env); }

    bool eval(const FiniteStructure& m, std::vector<int>& env) const {
        Truth r = eval3(m, env);
        if (r == Truth::unknown) throw Error("evaluation touched an undefined table entry");
        return r == Truth::t;
    }

    bool eval(const FiniteStructure& m, const Assignment& sigma = {}) const {
        std::vector<int> env(static_cast<std::size_t>(slots_), 0);
        for (const auto& [name, slot] : free_slots_) {
            auto it = sigma.find(name);
            if (it == sigma.end()) throw MissingAssignment(name);
            if (it->second < 0 || it->second >= m.size) throw Error("assignment of " + name + " is outside the universe");
            env[static_cast<std::size_t>(slot)] = it->second;
        }
        return eval(m, env);
    }

private:
    struct TermNode {
        int slot = -1;   // variable when >= 0
        int table = -1;  // application otherwise
        std::vector<int> args;
    };
    struct Node {
        Connective op = Connective::verum;
        int table = -1;
        std::vector<int> terms;
        std::vector<int> kids;
        int slot = -1;
    };

    std::vector<TermNode> tnodes_;
    std::vector<Node> nodes_;
    int root_ = 0;
    int slots_ = 0;
    std::vector<std::pair<std::string, int>> free_slots_;

    int compile_term(const Term& t, const FiniteStructure& layout, const std::map<std::string, std::vector<int>>& scope) {
        TermNode n;
        if (t.is_variable()) {
            auto it = scope.find(t.var);
            if (it == scope.end() || it->second.empty()) throw MissingAssignment(t.var);
            n.slot = it->second.back();
        } else {
            n.table = layout.index_of(t.symbol);
            if (n.table < 0) throw UninterpretedSymbol(t.symbol.key());
            const Table& tab = layout.tables[static_cast<std::size_t>(n.table)];
            if (tab.kind != SymbolKind::function || tab.arity != static_cast<int>(t.args.size()))
                throw UninterpretedSymbol(t.symbol.key() + "/" + std::to_string(t.args.size()));
            for (const auto& a : t.args) n.args.push_back(compile_term(a, layout, scope));
        }
        tnodes_.push_back(std::move(n));
        return static_cast<int>(tnodes_.size()) - 1;
    }

    int compile(const Formula& f, const FiniteStructure& layout, std::map<std::string, std::vector<int>>& scope) {
        Node n;
        n.op = f.op;
        switch (f.op) {
        case Connective::relation: {
            n.table = layout.index_of(f.symbol);
            if (n.table < 0) throw UninterpretedSymbol(f.symbol.key());
            const Table& tab = layout.tables[static_cast<std::size_t>(n.table)];
            if (tab.kind != SymbolKind::relation || tab.arity != static_cast<int>(f.terms.size()))
                throw UninterpretedSymbol(f.symbol.key() + "/" + std::to_string(f.terms.size()));
            for (const auto& t : f.terms) n.terms.push_back(compile_term(t, layout, scope));
            break;
        }
        case Connective::equals:
            for (const auto& t : f.terms) n.terms.push_back(compile_term(t, layout, scope));
            break;
        case Connective::forall:
        case Connective::exists:
            n.slot = slots_++;
            scope[f.var].push_back(n.slot);
            n.kids.push_back(compile(f.body(), layout, scope));
            scope[f.var].pop_back();
            break;
        default:
            for (const auto& c : f.children) n.kids.push_back(compile(c, layout, scope));
        }
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    int eval_term(int id, const FiniteStructure& m, const std::vector<int>& env) const {
        const TermNode& n = tnodes_[static_cast<std::size_t>(id)];
        if (n.slot >= 0) return env[static_cast<std::size_t>(n.slot)];
        const Table& tab = m.tables[static_cast<std::size_t>(n.table)];
        std::size_t idx = 0;
        for (int a : n.args) {
            int v = eval_term(a, m, env);
            if (v < 0) return -1;
            idx = idx * static_cast<std::size_t>(m.size) + static_cast<std::size_t>(v);
        }
        return tab.data[idx];
    }

    Truth eval_node(int id, const FiniteStructure& m, std::vector<int>& env) const {
        const Node& n = nodes_[static_cast<std::size_t>(id)];
        switch (n.op) {
        case Connective::verum: return Truth::t;
        case Connective::falsum: return Truth::f;
        case Connective::equals: {
            int a = eval_term(n.terms[0], m, env);
            int b = eval_term(n.terms[1], m, env);
            if (a < 0 || b < 0) return Truth::unknown;
            return a == b ? Truth::t : Truth::f;
        }
        case Connective::relation: {
            const Table& tab = m.tables[static_cast<std::size_t>(n.table)];
            std::size_t idx = 0;
            for (int t : n.terms) {
                int v = eval_term(t, m, env);
                if (v < 0) return Truth::unknown;
                idx = idx * static_cast<std::size_t>(m.size) + static_cast<std::size_t>(v);
            }
            int v = tab.data[idx];
            return v < 0 ? Truth::unknown : (v ? Truth::t : Truth::f);
        }
        case Connective::negation: return truth_not(eval_node(n.kids[0], m, env));
        case Connective::conjunction: {
            Truth a = eval_node(n.kids[0], m, env);
            if (a == Truth::f) return a;
            Truth b = eval_node(n.kids[1], m, env);
            if (b == Truth::f) return b;
            return (a == Truth::t && b == Truth::t) ? Truth::t : Truth::unknown;
        }
        case Connective::disjunction: {
            Truth a = eval_node(n.kids[0], m, env);
            if (a == Truth::t) return a;
            Truth b = eval_node(n.kids[1], m, env);
            if (b == Truth::t) return b;
            return (a == Truth::f && b == Truth::f) ? Truth::f : Truth::unknown;
        }
        case Connective::implication: {
            Truth a = eval_node(n.kids[0], m, env);
            if (a == Truth::f) return Truth::t;
            Truth b = eval_node(n.kids[1], m, env);
            if (b == Truth::t) return b;
            return (a == Truth::t && b == Truth::f) ? Truth::f : Truth::unknown;
        }
        case Connective::forall:
        case Connective::exists: {
            bool universal = n.op == Connective::forall;
            Truth decisive = universal ? Truth::f : Truth::t;
            bool unknown = false;
            auto& slot = env[static_cast<std::size_t>(n.slot)];
            for (int d = 0; d < m.size; ++d) {
                slot = d;
                Truth r = eval_node(n.kids[0], m, env);
                if (r == decisive) return r;
                if (r == Truth::unknown) unknown = true;
            }
            if (unknown) return Truth::unknown;
            return universal ? Truth::t : Truth::f;
        }
        }
        return Truth::unknown;
    }
};

/// Tarskian truth of `f` in `m` under `sigma`.
inline bool eval_formula(const FiniteStructure& m, const Formula& f, const Assignment& sigma = {}) {
    return CompiledFormula(f, m).eval(m, sigma);
}

inline int eval_term(const FiniteStructure& m, const Term& t, const Assignment& sigma = {}) {
    if (t.is_variable()) {
        auto it = sigma.find(t.var);
        if (it == sigma.end()) throw MissingAssignment(t.var);
        return it->second;
    }
    const Table* tab = m.find(t.symbol);
    if (!tab || tab->kind != SymbolKind::function || tab->arity != static_cast<int>(t.args.size()))
        throw UninterpretedSymbol(t.symbol.key());
    std::vector<int> args;
    for (const auto& a : t.args) args.push_back(eval_term(m, a, sigma));
    int v = tab->data[m.tuple_index(args)];
    if (v < 0) throw Error("undefined entry in table of " + t.symbol.key());
    return v;
}

// Structure files -----------------------------------------------------------

namespace detail {
inline std::vector<int> tuple_of(std::size_t idx, int arity, int size) {
    std::vector<int> out(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(size));
        idx /= static_cast<std::size_t>(size);
    }
    return out;
}

inline SymbolRef parse_symbol_ref(const std::string& tok) {
    auto hash = tok.find('#');
    if (hash == std::string::npos || hash == 0 || hash + 1 == tok.size()) return SymbolRef(tok);
    std::string digits = tok.substr(hash + 1);
    for (char c : digits)
        if (c < '0' || c > '9') return SymbolRef(tok);
    return SymbolRef(tok.substr(0, hash), std::stoull(digits));
}

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace detail

inline std::string print_structure(const FiniteStructure& m) {
    std::ostringstream out;
    out << "size " << m.size << "\n";
    for (const auto& t : m.tables) {
        if (t.kind == SymbolKind::function) {
            out << "fun " << t.symbol.key();
            if (m.size == 1 && t.arity > 0) out << "/" << t.arity;
            out << " = [";
            for (std::size_t i = 0; i < t.data.size(); ++i) out << (i ? "," : "") << t.data[i];
            out << "]\n";
        } else {
            bool empty = std::none_of(t.data.begin(), t.data.end(), [](int v) { return v > 0; });
            out << "rel " << t.symbol.key();
            if (empty) out << "/" << t.arity;
            out << " = {";
            bool first = true;
            for (std::size_t i = 0; i < t.data.size(); ++i) {
                if (t.data[i] <= 0) continue;
                out << (first ? "" : ",") << "(";
                auto tup = detail::tuple_of(i, t.arity, m.size);
                for (std::size_t j = 0; j < tup.size(); ++j) out << (j ? "," : "") << tup[j];
                out << ")";
                first = false;
            }
            out << "}\n";
        }
    }
    return out.str();
}

/// Parses the structure format. Relation arity is read off the tuples;
/// a relation with no tuples needs an explicit `rel NAME/ARITY = {}`.
/// Function arity is the k with size^k table entries, or the declared
/// `NAME/ARITY` at size 1.
inline FiniteStructure parse_structure(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<FiniteStructure> m;
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError(ParseError::Kind::syntax, lineno, 1, "structure file: " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == ';') continue;
        if (s.rfind("size", 0) == 0) {
            if (m) throw fail("duplicate size line");
            int k = 0;
            try {
                k = std::stoi(s.substr(4));
            } catch (const std::exception&) {
                throw fail("bad size");
            }
            if (k < 1) throw fail("size must be at least 1");
            m = FiniteStructure(k);
            continue;
        }
        if (!m) throw fail("size line must come first");
        bool is_fun = s.rfind("fun ", 0) == 0;
        bool is_rel = s.rfind("rel ", 0) == 0;
        if (!is_fun && !is_rel) throw fail("expected 'fun' or 'rel'");
        auto eqpos = s.find(" = ");
        if (eqpos == std::string::npos) throw fail("expected ' = '");
        std::string name = detail::trim(s.substr(4, eqpos - 4));
        std::string body = detail::trim(s.substr(eqpos + 3));
        std::optional<int> declared_arity;
        if (auto slash = name.rfind('/'); slash != std::string::npos && slash > 0) {
            try {
                declared_arity = std::stoi(name.substr(slash + 1));
            } catch (const std::exception&) {
                throw fail("bad arity suffix");
            }
            name = name.substr(0, slash);
        }
        SymbolRef sym = detail::parse_symbol_ref(name);
        if (is_fun) {
            if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw fail("function table must be [..]");
            std::vector<int> vals;
            std::string inner = body.substr(1, body.size() - 2);
            std::istringstream vs(inner);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                tok = detail::trim(tok);
                try {
                    vals.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw fail("bad table value '" + tok + "'");
                }
                if (vals.back() < 0 || vals.back() >= m->size) throw fail("table value out of range");
            }
            int arity = 0;
            std::size_t n = 1;
            while (n < vals.size()) {
                n *= static_cast<std::size_t>(m->size);
                ++arity;
            }
            if (m->size == 1 && declared_arity) arity = *declared_arity;
            if (n != vals.size()) throw fail("function table length is not a power of the size");
            if (declared_arity && *declared_arity != arity) throw fail("table length does not match declared arity");
            if (m->find(sym)) throw fail("symbol interpreted twice");
            m->declare(sym, SymbolKind::function, arity).data = vals;
        } else {
            if (body.size() < 2 || body.front() != '{' || body.back() != '}') throw fail("relation table must be {..}");
            std::string inner = detail::trim(body.substr(1, body.size() - 2));
            std::vector<std::vector<int>> tuples;
            std::size_t pos = 0;
            while (pos < inner.size()) {
                auto open = inner.find('(', pos);
                if (open == std::string::npos) {
                    if (!detail::trim(inner.substr(pos)).empty()) throw fail("junk in relation table");
                    break;
                }
                auto close = inner.find(')', open);
                if (close == std::string::npos) throw fail("unclosed tuple");
                std::string tup = detail::trim(inner.substr(open + 1, close - open - 1));
                std::vector<int> vals;
                if (!tup.empty()) {
                    std::istringstream ts(tup);
                    std::string tok;
                    while (std::getline(ts, tok, ',')) {
                        try {
                            vals.push_back(std::stoi(detail::trim(tok)));
                        } catch (const std::exception&) {
                            throw fail("bad tuple entry");
                        }
                        if (vals.back() < 0 || vals.back() >= m->size) throw fail("tuple entry out of range");
                    }
                }
                tuples.push_back(std::move(vals));
                pos = close + 1;
            }
            int arity = declared_arity ? *declared_arity : (tuples.empty() ? -1 : static_cast<int>(tuples[0].size()));
            if (arity < 0) throw fail("empty relation needs an explicit arity, e.g. 'rel E/2 = {}'");
            if (m->find(sym)) throw fail("symbol interpreted twice");
            Table& t = m->declare(sym, SymbolKind::relation, arity, 0);
            for (const auto& tup : tuples) {
                if (static_cast<int>(tup.size()) != arity) throw fail("tuple arity mismatch");
                t.data[m->tuple_index(tup)] = 1;
            }
        }
    }
    if (!m) throw ParseError(ParseError::Kind::syntax, 1, 1, "structure file: missing size line");
    return *m;
}

}  // namespace weakarith
