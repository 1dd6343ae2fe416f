// Counter machines, bounded evaluation, staged enumeration of r.e. sets, and
// oracle pairs with three-valued queries.
#pragma once

#include "weakarith/core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace weakarith {

/// Registers r0..r31 are addressable; decoded programs naming larger registers
/// are normalized to the immediate-halt program.
inline constexpr std::uint32_t kMaxRegisters = 32;

struct Instruction {
    enum class Op { halt, inc, decjz };
    Op op = Op::halt;
    std::uint32_t reg = 0;
    std::uint32_t target = 0;  // decjz: jump here when the register is zero

    static Instruction halt() { return {}; }
    static Instruction inc(std::uint32_t r) { return {Op::inc, r, 0}; }
    static Instruction decjz(std::uint32_t r, std::uint32_t label) { return {Op::decjz, r, label}; }

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Input is placed in r1, output is read from r0. Falling off the end halts.
struct Program {
    std::vector<Instruction> code;

    bool valid() const {
        for (const auto& ins : code) {
            if (ins.reg >= kMaxRegisters) return false;
            if (ins.op == Instruction::Op::decjz && ins.target >= code.size()) return false;
        }
        return true;
    }

    std::uint32_t register_count() const {
        std::uint32_t n = 2;
        for (const auto& ins : code) n = std::max(n, ins.reg + 1);
        return n;
    }

    friend bool operator==(const Program&, const Program&) = default;
};

/// Resumable small-step execution. Every executed instruction, including
/// `halt`, costs one step.
class Execution {
public:
    Execution(const Program& p, std::uint64_t input) : program_(p), regs_(p.register_count(), 0) {
        regs_[1] = input;
        if (program_.code.empty()) halted_ = true;
    }

    bool halted() const { return halted_; }
    std::uint64_t steps() const { return steps_; }
    std::uint64_t output() const { return regs_[0]; }

    /// Runs until halted or `total_budget` steps have been spent in total.
    void run_until(std::uint64_t total_budget) {
        while (!halted_ && steps_ < total_budget) step();
    }

private:
    void step() {
        const Instruction& ins = program_.code[pc_];
        ++steps_;
        switch (ins.op) {
        case Instruction::Op::halt:
            halted_ = true;
            return;
        case Instruction::Op::inc:
            ++regs_[ins.reg];
            ++pc_;
            break;
        case Instruction::Op::decjz:
            if (regs_[ins.reg] == 0) {
                pc_ = ins.target;
            } else {
                --regs_[ins.reg];
                ++pc_;
            }
            break;
        }
        if (pc_ >= program_.code.size()) halted_ = true;
    }

    Program program_;
    std::vector<std::uint64_t> regs_;
    std::size_t pc_ = 0;
    std::uint64_t steps_ = 0;
    bool halted_ = false;
};

inline std::optional<std::uint64_t> run_bounded(const Program& p, std::uint64_t input, std::uint64_t steps) {
    Execution ex(p, input);
    ex.run_until(steps);
    if (!ex.halted()) return std::nullopt;
    return ex.output();
}

// Indexing ------------------------------------------------------------------
//
// instruction code: halt -> 0, inc r -> 1 + 2r, decjz r l -> 2 + 2*pair(r, l)
// program index: the list code of the instruction codes.

inline Natural encode_instruction(const Instruction& ins) {
    switch (ins.op) {
    case Instruction::Op::halt: return 0;
    case Instruction::Op::inc: return 1 + 2 * Natural(ins.reg);
    case Instruction::Op::decjz: return 2 + 2 * cantor_pair(Natural(ins.reg), Natural(ins.target));
    }
    return 0;
}

inline Natural encode_program(const Program& p) {
    std::vector<Natural> codes;
    codes.reserve(p.code.size());
    for (const auto& ins : p.code) codes.push_back(encode_instruction(ins));
    return encode_list(codes);
}

/// Total: codes that do not denote a valid program decode to the empty
/// (immediately halting) program.
inline Program decode_program(const Natural& index) {
    Program p;
    for (const auto& c : decode_list(index)) {
        if (c == 0) {
            p.code.push_back(Instruction::halt());
            continue;
        }
        Natural q = (c - 1) / 2;
        if ((c - 1) % 2 == 0) {
            if (q >= kMaxRegisters) return {};
            p.code.push_back(Instruction::inc(static_cast<std::uint32_t>(q)));
        } else {
            auto [r, l] = cantor_unpair(q);
            if (r >= kMaxRegisters || l > Natural(std::numeric_limits<std::uint32_t>::max())) return {};
            p.code.push_back(Instruction::decjz(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(l)));
        }
    }
    if (!p.valid()) return {};
    return p;
}

inline Program decode_program(std::uint64_t index) { return decode_program(Natural(index)); }

namespace golden_programs {
/// `halt`: output 0 after one step.
inline Program output_zero() { return {{Instruction::halt()}}; }
/// `inc r0; halt`: output 1 after two steps.
inline Program output_one() { return {{Instruction::inc(0), Instruction::halt()}}; }
/// `decjz r9 0`: r9 stays zero, so this jumps to itself forever.
inline Program loop() { return {{Instruction::decjz(9, 0)}}; }
}  // namespace golden_programs

/// Program text: one instruction per line (`halt`, `inc rN`, `decjz rN L`),
/// `#` comments, labels are 0-based instruction indices.
inline Program parse_program(const std::string& text) {
    Program p;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto reg = [&](const std::string& tok) -> std::uint32_t {
        if (tok.size() < 2 || tok[0] != 'r' || !std::all_of(tok.begin() + 1, tok.end(), ::isdigit))
            throw Error("program line " + std::to_string(lineno) + ": bad register '" + tok + "'");
        auto r = std::stoul(tok.substr(1));
        if (r >= kMaxRegisters) throw Error("program line " + std::to_string(lineno) + ": register out of range");
        return static_cast<std::uint32_t>(r);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string op;
        if (!(words >> op)) continue;
        std::string a, b, extra;
        words >> a >> b >> extra;
        if (!extra.empty()) throw Error("program line " + std::to_string(lineno) + ": trailing input");
        if (op == "halt" && a.empty()) {
            p.code.push_back(Instruction::halt());
        } else if (op == "inc" && !a.empty() && b.empty()) {
            p.code.push_back(Instruction::inc(reg(a)));
        } else if (op == "decjz" && !b.empty()) {
            if (!std::all_of(b.begin(), b.end(), ::isdigit) || b.size() > 9)
                throw Error("program line " + std::to_string(lineno) + ": bad label '" + b + "'");
            p.code.push_back(Instruction::decjz(reg(a), static_cast<std::uint32_t>(std::stoul(b))));
        } else {
            throw Error("program line " + std::to_string(lineno) + ": unrecognized instruction '" + line + "'");
        }
    }
    if (!p.valid()) throw Error("program has a jump label out of range");
    return p;
}

inline std::string print_program(const Program& p) {
    std::string out;
    for (const auto& ins : p.code) {
        switch (ins.op) {
        case Instruction::Op::halt: out += "halt\n"; break;
        case Instruction::Op::inc: out += "inc r" + std::to_string(ins.reg) + "\n"; break;
        case Instruction::Op::decjz:
            out += "decjz r" + std::to_string(ins.reg) + " " + std::to_string(ins.target) + "\n";
            break;
        }
    }
    return out;
}

// Oracles -------------------------------------------------------------------

struct Membership3 {
    enum class Kind { in, out, unknown };
    Kind kind = Kind::unknown;
    std::uint64_t stage = 0;

    static Membership3 in() { return {Kind::in, 0}; }
    static Membership3 out() { return {Kind::out, 0}; }
    static Membership3 unknown(std::uint64_t s) { return {Kind::unknown, s}; }

    std::string str() const {
        switch (kind) {
        case Kind::in: return "In";
        case Kind::out: return "Out";
        case Kind::unknown: return "Unknown(" + std::to_string(stage) + ")";
        }
        return "?";
    }
    friend bool operator==(const Membership3&, const Membership3&) = default;
};

enum class Side { left, right };

struct QueryRecord {
    Side side;
    std::uint64_t n;
    std::uint64_t stage;
    Membership3 answer;
};

class OraclePair {
public:
    enum class Mode { finite, enumerative };

    /// Finite oracle: both sets are fully enumerated at every stage and Out
    /// answers are exact.
    static OraclePair finite(std::set<std::uint64_t> left, std::set<std::uint64_t> right,
                             std::string left_name = "B", std::string right_name = "C") {
        for (auto n : left)
            if (right.count(n)) throw Error("oracle pair is not disjoint: " + std::to_string(n) + " on both sides");
        auto impl = std::make_shared<Finite>();
        impl->left = std::move(left);
        impl->right = std::move(right);
        impl->left_name = std::move(left_name);
        impl->right_name = std::move(right_name);
        return OraclePair(impl);
    }

    /// left(s) = {e <= s : machine e on input e halts within s steps with output 0},
    /// right(s) likewise with output 1.
    static OraclePair canonical() { return OraclePair(std::make_shared<Canonical>()); }

    /// The pair {n + k : n in left}, {n + k : n in right}.
    static OraclePair shifted(const OraclePair& base, std::uint64_t k) {
        auto impl = std::make_shared<Shifted>();
        impl->base = base.impl_;
        impl->k = k;
        return OraclePair(impl);
    }

    Mode mode() const { return impl_->mode(); }

    std::vector<std::uint64_t> left(std::uint64_t stage) const { return impl_->members(Side::left, stage); }
    std::vector<std::uint64_t> right(std::uint64_t stage) const { return impl_->members(Side::right, stage); }
    std::vector<std::uint64_t> side(Side s, std::uint64_t stage) const { return impl_->members(s, stage); }

    bool contains(Side s, std::uint64_t n, std::uint64_t stage) const { return impl_->contains(s, n, stage); }

    /// In when n is enumerated by `stage`; Out only in finite mode; otherwise Unknown(stage).
    Membership3 query(Side s, std::uint64_t n, std::uint64_t stage) const {
        Membership3 answer;
        if (impl_->contains(s, n, stage))
            answer = Membership3::in();
        else if (mode() == Mode::finite)
            answer = Membership3::out();
        else
            answer = Membership3::unknown(stage);
        std::lock_guard lock(trace_->mutex);
        trace_->records.push_back({s, n, stage, answer});
        return answer;
    }

    /// Throws if the two sides share an element at `stage`.
    void check_disjoint(std::uint64_t stage) const {
        auto a = left(stage);
        auto b = right(stage);
        std::vector<std::uint64_t> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        if (!both.empty())
            throw Error("oracle pair not disjoint at stage " + std::to_string(stage) + ": " + std::to_string(both.front()));
    }

    std::vector<QueryRecord> trace() const {
        std::lock_guard lock(trace_->mutex);
        return trace_->records;
    }
    void clear_trace() const {
        std::lock_guard lock(trace_->mutex);
        trace_->records.clear();
    }

    /// The pair-file form: `finite B={..} C={..}` or `canonical`.
    std::string describe() const { return impl_->describe(); }

private:
    struct Impl {
        virtual ~Impl() = default;
        virtual Mode mode() const = 0;
        virtual std::vector<std::uint64_t> members(Side, std::uint64_t stage) const = 0;
        virtual bool contains(Side, std::uint64_t n, std::uint64_t stage) const = 0;
        virtual std::string describe() const = 0;
    };

    struct Finite final : Impl {
        std::set<std::uint64_t> left, right;
        std::string left_name, right_name;

        Mode mode() const override { return Mode::finite; }
        std::vector<std::uint64_t> members(Side s, std::uint64_t) const override {
            const auto& set = s == Side::left ? left : right;
            return {set.begin(), set.end()};
        }
        bool contains(Side s, std::uint64_t n, std::uint64_t) const override {
            return (s == Side::left ? left : right).count(n) > 0;
        }
        std::string describe() const override {
            auto list = [](const std::set<std::uint64_t>& set) {
                std::string out = "{";
                bool first = true;
                for (auto n : set) {
                    if (!first) out += ",";
                    out += std::to_string(n);
                    first = false;
                }
                return out + "}";
            };
            return "finite " + left_name + "=" + list(left) + " " + right_name + "=" + list(right);
        }
    };

    struct Shifted final : Impl {
        std::shared_ptr<const Impl> base;
        std::uint64_t k = 0;

        Mode mode() const override { return base->mode(); }
        std::vector<std::uint64_t> members(Side s, std::uint64_t stage) const override {
            auto out = base->members(s, stage);
            for (auto& n : out) n += k;
            return out;
        }
        bool contains(Side s, std::uint64_t n, std::uint64_t stage) const override {
            return n >= k && base->contains(s, n - k, stage);
        }
        std::string describe() const override { return "shift " + std::to_string(k) + " " + base->describe(); }
    };

    struct Canonical final : Impl {
        struct Run {
            Execution exec;
        };
        mutable std::mutex mutex;
        mutable std::vector<Run> runs;  // runs[e] is machine e on input e

        Mode mode() const override { return Mode::enumerative; }

        // Brings machines 0..stage up to `stage` steps. Caller holds the mutex.
        void advance(std::uint64_t stage) const {
            while (runs.size() <= stage) {
                std::uint64_t e = runs.size();
                runs.push_back(Run{Execution(decode_program(e), e)});
            }
            for (std::uint64_t e = 0; e <= stage; ++e) runs[e].exec.run_until(stage);
        }

        bool enumerated(Side s, std::uint64_t e, std::uint64_t stage) const {
            const auto& ex = runs[e].exec;
            return ex.halted() && ex.steps() <= stage && ex.output() == (s == Side::left ? 0u : 1u);
        }

        std::vector<std::uint64_t> members(Side s, std::uint64_t stage) const override {
            std::lock_guard lock(mutex);
            advance(stage);
            std::vector<std::uint64_t> out;
            for (std::uint64_t e = 0; e <= stage; ++e)
                if (enumerated(s, e, stage)) out.push_back(e);
            return out;
        }
        bool contains(Side s, std::uint64_t n, std::uint64_t stage) const override {
            if (n > stage) return false;
            std::lock_guard lock(mutex);
            if (runs.size() <= n) {
                while (runs.size() <= n) {
                    std::uint64_t e = runs.size();
                    runs.push_back(Run{Execution(decode_program(e), e)});
                }
            }
            runs[n].exec.run_until(stage);
            return enumerated(s, n, stage);
        }
        std::string describe() const override { return "canonical"; }
    };

    struct Trace {
        std::mutex mutex;
        std::vector<QueryRecord> records;
    };

    explicit OraclePair(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)), trace_(std::make_shared<Trace>()) {}

    std::shared_ptr<const Impl> impl_;
    std::shared_ptr<Trace> trace_;
};

/// Parses `canonical` or `finite X={a,b,...} Y={...}`.
inline OraclePair parse_pair(const std::string& text) {
    std::string t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t start = t.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw Error("empty pair description");
    t = t.substr(start);
    if (t == "canonical") return OraclePair::canonical();
    if (t.rfind("shift ", 0) == 0) {
        std::size_t a = t.find_first_not_of(' ', 6);
        std::size_t b = a == std::string::npos ? a : t.find(' ', a);
        if (b == std::string::npos) throw Error("pair: expected 'shift K <pair>'");
        std::string k = t.substr(a, b - a);
        if (k.empty() || k.size() > 18 || !std::all_of(k.begin(), k.end(), ::isdigit)) throw Error("pair: bad shift '" + k + "'");
        return OraclePair::shifted(parse_pair(t.substr(b + 1)), std::stoull(k));
    }
    if (t.rfind("finite", 0) != 0) throw Error("pair must be 'canonical', 'shift K <pair>' or 'finite X={..} Y={..}'");
    std::vector<std::pair<std::string, std::set<std::uint64_t>>> sets;
    std::size_t pos = 6;
    while (pos < t.size()) {
        while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos >= t.size()) break;
        auto eq = t.find('=', pos);
        if (eq == std::string::npos) throw Error("pair: expected NAME={...}");
        std::string name = t.substr(pos, eq - pos);
        if (name.empty() || eq + 1 >= t.size() || t[eq + 1] != '{') throw Error("pair: expected NAME={...}");
        auto close = t.find('}', eq);
        if (close == std::string::npos) throw Error("pair: unterminated set");
        std::set<std::uint64_t> members;
        std::string body = t.substr(eq + 2, close - eq - 2);
        std::stringstream items(body);
        std::string item;
        while (std::getline(items, item, ',')) {
            auto a = item.find_first_not_of(" \t");
            if (a == std::string::npos) continue;
            auto b = item.find_last_not_of(" \t");
            item = item.substr(a, b - a + 1);
            if (item.empty() || item.size() > 18 || !std::all_of(item.begin(), item.end(), ::isdigit))
                throw Error("pair: bad set member '" + item + "'");
            members.insert(std::stoull(item));
        }
        sets.emplace_back(name, std::move(members));
        pos = close + 1;
    }
    if (sets.size() != 2) throw Error("pair: expected exactly two sets");
    return OraclePair::finite(sets[0].second, sets[1].second, sets[0].first, sets[1].first);
}

}  // namespace weakarith
