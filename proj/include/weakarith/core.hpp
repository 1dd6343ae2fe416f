// Shared primitives: error types, natural-number pairing, big naturals.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weakarith {

using Natural = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Base class of every error raised by the workbench.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column.
class ParseError : public Error {
public:
    enum class Kind { lexical, unknown_symbol, arity_mismatch, unbound_family_index, syntax };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
        : Error(describe(kind) + " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          kind_(kind), line_(line), column_(column) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

    static std::string describe(Kind kind) {
        switch (kind) {
        case Kind::lexical: return "lexical error";
        case Kind::unknown_symbol: return "unknown symbol";
        case Kind::arity_mismatch: return "arity mismatch";
        case Kind::unbound_family_index: return "unbound family index";
        case Kind::syntax: return "syntax error";
        }
        return "parse error";
    }

private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

/// A symbol is used that a structure, translation or language does not provide.
class UnmappedSymbol : public Error {
public:
    explicit UnmappedSymbol(const std::string& symbol)
        : Error("symbol not interpreted: " + symbol), symbol_(symbol) {}
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

// ---------------------------------------------------------------------------
// Cantor pairing. Used by the Gödel codec, machine indexing, and every
// axiom enumerator.

inline Natural cantor_pair(const Natural& a, const Natural& b) {
    Natural s = a + b;
    return s * (s + 1) / 2 + b;
}

inline std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
    // w = floor((sqrt(8z+1) - 1) / 2)
    Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
    Natural t = w * (w + 1) / 2;
    Natural b = z - t;
    return {w - b, b};
}

inline std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(cantor_pair(Natural(a), Natural(b)));
}

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
    auto [a, b] = cantor_unpair(Natural(z));
    return {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)};
}

/// Bijection between naturals and finite lists of naturals:
/// [] -> 0, x :: rest -> 1 + pair(x, code(rest)).
inline Natural encode_list(const std::vector<Natural>& items) {
    Natural code = 0;
    for (auto it = items.rbegin(); it != items.rend(); ++it)
        code = 1 + cantor_pair(*it, code);
    return code;
}

inline std::vector<Natural> decode_list(Natural code) {
    std::vector<Natural> items;
    while (code != 0) {
        auto [head, rest] = cantor_unpair(Natural(code - 1));
        items.push_back(head);
        code = rest;
    }
    return items;
}

}  // namespace weakarith
