#include "support.hpp"

#include <gtest/gtest.h>

using namespace weakarith;

TEST(Machine, GoldenPrograms) {
    using namespace golden_programs;
    EXPECT_EQ(run_bounded(output_zero(), 7, 10), 0u);
    EXPECT_EQ(run_bounded(output_one(), 7, 10), 1u);
    EXPECT_EQ(run_bounded(output_one(), 7, 1), std::nullopt);
    EXPECT_EQ(run_bounded(loop(), 0, 100000), std::nullopt);
    EXPECT_EQ(encode_program(output_zero()), 1);
    EXPECT_EQ(encode_program(output_one()), 5);
    EXPECT_EQ(encode_program(loop()), 4279);
    EXPECT_EQ(decode_program(4279), loop());
}

TEST(Machine, EmptyProgramHaltsAtOnce) {
    Program p = decode_program(0);
    EXPECT_TRUE(p.code.empty());
    Execution ex(p, 3);
    EXPECT_TRUE(ex.halted());
    EXPECT_EQ(ex.steps(), 0u);
    EXPECT_EQ(run_bounded(p, 3, 0), 0u);
}

TEST(Machine, Addition) {
    // r0 := r1 by moving, with r2 as a zero register for the jump.
    Program p = parse_program(
        "decjz r1 3   # done when r1 is zero\n"
        "inc r0\n"
        "decjz r2 0\n"
        "halt\n");
    for (std::uint64_t n = 0; n < 20; ++n) EXPECT_EQ(run_bounded(p, n, 1000), n);
    EXPECT_EQ(print_program(p), "decjz r1 3\ninc r0\ndecjz r2 0\nhalt\n");
    Execution ex(p, 5);
    ex.run_until(4);
    EXPECT_FALSE(ex.halted());
    ex.run_until(1000);
    EXPECT_TRUE(ex.halted());
    EXPECT_EQ(ex.steps(), 17u);
}

TEST(Machine, ParseErrors) {
    EXPECT_THROW(parse_program("inc x1\n"), Error);
    EXPECT_THROW(parse_program("decjz r1 5\n"), Error);
    EXPECT_THROW(parse_program("jmp 0\n"), Error);
    EXPECT_THROW(parse_program("inc r99\n"), Error);
}

TEST(Codec, DecodeIsInverseOfEncode) {
    // Codes of invalid programs (a label past the end, a register >= 32) decode to the empty program.
    int exact = 0;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        Program p = decode_program(i);
        ASSERT_TRUE(p.valid()) << i;
        if (encode_program(p) == i) {
            ++exact;
            continue;
        }
        ASSERT_TRUE(p.code.empty()) << i;
        auto raw = decode_list(Natural(i));
        bool bad = false;
        for (const auto& c : raw) {
            if (c == 0) continue;
            Natural q = (c - 1) / 2;
            if ((c - 1) % 2 == 0) {
                bad = bad || q >= kMaxRegisters;
            } else {
                auto [r, l] = cantor_unpair(q);
                bad = bad || r >= kMaxRegisters || l >= raw.size();
            }
        }
        EXPECT_TRUE(bad) << i;
    }
    EXPECT_GT(exact, 1000);
}

TEST(Codec, SurjectiveOnSmallPrograms) {
    // Every valid program of at most two instructions over r0..r3 has an index.
    std::vector<Instruction> ins;
    for (std::uint32_t r = 0; r < 4; ++r) {
        ins.push_back(Instruction::inc(r));
        for (std::uint32_t l = 0; l < 2; ++l) ins.push_back(Instruction::decjz(r, l));
    }
    ins.push_back(Instruction::halt());
    std::vector<Program> programs{Program{}};
    for (const auto& a : ins) {
        programs.push_back(Program{{a}});
        for (const auto& b : ins) programs.push_back(Program{{a, b}});
    }
    int valid = 0;
    for (const auto& p : programs) {
        if (!p.valid()) continue;
        ++valid;
        ASSERT_EQ(decode_program(encode_program(p)), p) << print_program(p);
    }
    EXPECT_GT(valid, 150);
}

TEST(CanonicalPair, StageThirtyGolden) {
    OraclePair pair = OraclePair::canonical();
    EXPECT_EQ(pair.left(30), (std::vector<std::uint64_t>{0, 1, 3, 6, 7, 10, 11, 12, 15, 16, 17, 20, 21, 22, 23, 25, 28, 29, 30}));
    EXPECT_EQ(pair.right(30), (std::vector<std::uint64_t>{2, 5, 14, 18, 24}));
}

TEST(CanonicalPair, GoldenIndicesLandOnTheirSides) {
    OraclePair pair = OraclePair::canonical();
    EXPECT_TRUE(pair.contains(Side::left, 1, 10));
    EXPECT_FALSE(pair.contains(Side::right, 1, 10));
    EXPECT_TRUE(pair.contains(Side::right, 5, 10));
    EXPECT_FALSE(pair.contains(Side::left, 5, 10));
    EXPECT_FALSE(pair.contains(Side::right, 5, 1));  // needs two steps and index <= stage
}

TEST(CanonicalPair, LoopStaysUnknown) {
    OraclePair pair = OraclePair::canonical();
    EXPECT_EQ(pair.query(Side::left, 4279, 1000), Membership3::unknown(1000));
    EXPECT_EQ(pair.query(Side::right, 4279, 5000), Membership3::unknown(5000));
    EXPECT_EQ(pair.query(Side::left, 4279, 1000).str(), "Unknown(1000)");
    auto trace = pair.trace();
    ASSERT_EQ(trace.size(), 3u);
    EXPECT_EQ(trace[1].n, 4279u);
    EXPECT_EQ(trace[1].stage, 5000u);
    pair.clear_trace();
    EXPECT_TRUE(pair.trace().empty());
}

TEST(CanonicalPair, MonotoneAndDisjoint) {
    OraclePair pair = OraclePair::canonical();
    std::vector<std::uint64_t> prev_l, prev_r;
    for (std::uint64_t s = 0; s <= 400; ++s) {
        auto l = pair.left(s), r = pair.right(s);
        ASSERT_TRUE(std::includes(l.begin(), l.end(), prev_l.begin(), prev_l.end())) << s;
        ASSERT_TRUE(std::includes(r.begin(), r.end(), prev_r.begin(), prev_r.end())) << s;
        ASSERT_NO_THROW(pair.check_disjoint(s));
        prev_l = std::move(l);
        prev_r = std::move(r);
    }
}

TEST(CanonicalPair, AnswersNeverFlip) {
    OraclePair pair = OraclePair::canonical();
    const std::vector<std::uint64_t> ladder{10, 50, 100, 500, 1000, 2000};
    for (std::uint64_t n = 0; n < 60; ++n)
        for (Side side : {Side::left, Side::right}) {
            bool seen_in = false;
            for (auto s : ladder) {
                auto a = pair.query(side, n, s);
                EXPECT_NE(a.kind, Membership3::Kind::out);
                if (seen_in) EXPECT_EQ(a.kind, Membership3::Kind::in) << n << " at " << s;
                seen_in = seen_in || a.kind == Membership3::Kind::in;
            }
        }
}

TEST(FinitePair, ExactAnswers) {
    OraclePair pair = parse_pair("finite A={1,4} B={2}");
    EXPECT_EQ(pair.query(Side::left, 1, 0), Membership3::in());
    EXPECT_EQ(pair.query(Side::left, 2, 0), Membership3::out());
    EXPECT_EQ(pair.query(Side::right, 2, 0), Membership3::in());
    EXPECT_EQ(pair.query(Side::right, 7, 99), Membership3::out());
    EXPECT_EQ(pair.describe(), "finite A={1,4} B={2}");
    EXPECT_EQ(parse_pair(pair.describe()).describe(), pair.describe());
    EXPECT_THROW(parse_pair("finite A={1} B={1}"), Error);
    EXPECT_THROW(parse_pair("finite A={1}"), Error);
    EXPECT_THROW(parse_pair("finite A={x} B={}"), Error);
    EXPECT_THROW(parse_pair("random"), Error);
}

TEST(ShiftedPair, AddsOffset) {
    OraclePair pair = parse_pair("shift 1 canonical");
    EXPECT_EQ(pair.describe(), "shift 1 canonical");
    EXPECT_EQ(pair.mode(), OraclePair::Mode::enumerative);
    auto base = OraclePair::canonical().right(30);
    auto shifted = pair.right(30);
    ASSERT_EQ(base.size(), shifted.size());
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_EQ(shifted[i], base[i] + 1);
    EXPECT_FALSE(pair.contains(Side::left, 0, 100));
    EXPECT_TRUE(pair.contains(Side::left, 1, 100));
    EXPECT_EQ(parse_pair("shift 2 finite B={1} C={}").left(0), (std::vector<std::uint64_t>{3}));
}
