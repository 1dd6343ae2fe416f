// Gödel numbering of terms and formulas by iterated Cantor pairing.
//
// Every object is coded as pair(tag, payload):
//
//   term     0 variable      payload = str(name)
//            1 application   payload = pair(sym, list(args))
//   formula  0 relation      payload = pair(sym, list(terms))
//            1 equals        payload = pair(lhs, rhs)
//            2 true, 3 false payload = 0
//            4 not           payload = code(body)
//            5 and, 6 or, 7 ->   payload = pair(left, right)
//            8 forall, 9 exists  payload = pair(str(var), body)
//
//   sym  = pair(str(name), 0 for base symbols | index+1 for family members)
//   str  = list of byte values;  list = [] -> 0, x::xs -> 1 + pair(x, list(xs))
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/sexpr.hpp"
#include "weakarith/syntax.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace weakarith {

struct GodelCode {
    Natural value;
    friend bool operator==(const GodelCode&, const GodelCode&) = default;
    friend bool operator<(const GodelCode& a, const GodelCode& b) { return a.value < b.value; }
    std::string str() const { return value.str(); }
};

class NotACode : public Error {
public:
    explicit NotACode(const std::string& why) : Error("not a code: " + why) {}
};

namespace godel_detail {

inline Natural encode_string(const std::string& s) {
    std::vector<Natural> bytes;
    bytes.reserve(s.size());
    for (unsigned char c : s) bytes.emplace_back(static_cast<unsigned>(c));
    return encode_list(bytes);
}

inline std::string decode_string(const Natural& code) {
    std::string out;
    for (const auto& b : decode_list(code)) {
        if (b < 0x21 || b > 0x7e) throw NotACode("character out of range");
        char c = static_cast<char>(static_cast<unsigned>(b));
        if (c == '(' || c == ')' || c == ';') throw NotACode("reserved character in name");
        out.push_back(c);
    }
    if (out.empty()) throw NotACode("empty name");
    return out;
}

inline Natural encode_symbol(const SymbolRef& s) {
    return cantor_pair(encode_string(s.name), s.index ? Natural(*s.index) + 1 : Natural(0));
}

inline SymbolRef decode_symbol(const Natural& code) {
    auto [name, idx] = cantor_unpair(code);
    SymbolRef s(decode_string(name));
    if (s.name.find('#') != std::string::npos) throw NotACode("'#' in symbol name");
    if (idx != 0) {
        if (idx > Natural(std::numeric_limits<std::uint64_t>::max())) throw NotACode("family index too large");
        s.index = static_cast<std::uint64_t>(idx - 1);
    }
    return s;
}

inline Natural encode(const Term& t) {
    if (t.is_variable()) return cantor_pair(Natural(0), encode_string(t.var));
    std::vector<Natural> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(encode(a));
    return cantor_pair(Natural(1), cantor_pair(encode_symbol(t.symbol), encode_list(args)));
}

inline Term decode_term(const Natural& code) {
    auto [tag, payload] = cantor_unpair(code);
    if (tag == 0) {
        std::string name = decode_string(payload);
        if (!detail::is_variable_name(name)) throw NotACode("invalid variable name");
        return Term::variable(name);
    }
    if (tag == 1) {
        auto [sym, args] = cantor_unpair(payload);
        Term t = Term::apply(decode_symbol(sym));
        for (const auto& a : decode_list(args)) t.args.push_back(decode_term(a));
        return t;
    }
    throw NotACode("unknown term tag");
}

inline Natural encode(const Formula& f) {
    switch (f.op) {
    case Connective::relation: {
        std::vector<Natural> ts;
        for (const auto& t : f.terms) ts.push_back(encode(t));
        return cantor_pair(Natural(0), cantor_pair(encode_symbol(f.symbol), encode_list(ts)));
    }
    case Connective::equals:
        return cantor_pair(Natural(1), cantor_pair(encode(f.terms[0]), encode(f.terms[1])));
    case Connective::verum: return cantor_pair(Natural(2), Natural(0));
    case Connective::falsum: return cantor_pair(Natural(3), Natural(0));
    case Connective::negation: return cantor_pair(Natural(4), encode(f.body()));
    case Connective::conjunction: return cantor_pair(Natural(5), cantor_pair(encode(f.left()), encode(f.right())));
    case Connective::disjunction: return cantor_pair(Natural(6), cantor_pair(encode(f.left()), encode(f.right())));
    case Connective::implication: return cantor_pair(Natural(7), cantor_pair(encode(f.left()), encode(f.right())));
    case Connective::forall: return cantor_pair(Natural(8), cantor_pair(encode_string(f.var), encode(f.body())));
    case Connective::exists: return cantor_pair(Natural(9), cantor_pair(encode_string(f.var), encode(f.body())));
    }
    throw Error("unreachable");
}

inline Formula decode_formula(const Natural& code) {
    auto [tag, payload] = cantor_unpair(code);
    if (tag > 9) throw NotACode("unknown formula tag");
    switch (static_cast<int>(tag)) {
    case 0: {
        auto [sym, ts] = cantor_unpair(payload);
        Formula f = build::rel(decode_symbol(sym));
        for (const auto& t : decode_list(ts)) f.terms.push_back(decode_term(t));
        return f;
    }
    case 1: {
        auto [a, b] = cantor_unpair(payload);
        return build::eq(decode_term(a), decode_term(b));
    }
    case 2:
    case 3:
        if (payload != 0) throw NotACode("nonzero payload on a constant");
        return tag == 2 ? build::top() : build::bottom();
    case 4: return build::neg(decode_formula(payload));
    case 5:
    case 6:
    case 7: {
        auto [a, b] = cantor_unpair(payload);
        Connective op = tag == 5 ? Connective::conjunction : tag == 6 ? Connective::disjunction : Connective::implication;
        return build::binary(op, decode_formula(a), decode_formula(b));
    }
    default: {
        auto [v, body] = cantor_unpair(payload);
        std::string name = decode_string(v);
        if (!detail::is_variable_name(name)) throw NotACode("invalid bound variable name");
        return build::quantifier(tag == 8 ? Connective::forall : Connective::exists, name, decode_formula(body));
    }
    }
}

}  // namespace godel_detail

inline GodelCode godel_encode(const Formula& f) { return {godel_detail::encode(f)}; }
inline GodelCode godel_encode(const Term& t) { return {godel_detail::encode(t)}; }

/// Structural inverse of godel_encode. Throws NotACode outside the range.
inline Formula godel_decode(const GodelCode& c) {
    if (c.value < 0) throw NotACode("negative");
    return godel_detail::decode_formula(c.value);
}

/// Decode and check the result against `lang`.
inline Formula godel_decode(const GodelCode& c, const Language& lang) {
    Formula f = godel_decode(c);
    try {
        check_well_formed(f, lang);
    } catch (const Error& e) {
        throw NotACode(e.what());
    }
    return f;
}

inline GodelCode parse_godel_code(const std::string& digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw NotACode("'" + digits + "' is not a decimal numeral");
    return {Natural(digits)};
}

}  // namespace weakarith
