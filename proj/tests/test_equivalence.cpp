#include "support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace weakarith;

namespace {
Formula PE(const std::string& s) { return parse_formula(s, languages::equivalence()); }

std::vector<std::vector<int>> structures_up_to(int n) {
    std::vector<std::vector<int>> out;
    for (int k = 1; k <= n; ++k)
        for (auto& p : partitions(k)) out.push_back(std::move(p));
    return out;
}

OracleKnowledge finite_knowledge() { return knowledge_at(parse_pair("finite B={2} C={3}"), 0); }
}  // namespace

TEST(Profile, Examples) {
    EXPECT_EQ(print_profile(profile_of_sizes({1, 2, 2, 5}, 2)), "r=2 [1:1 2:2 >2:1]");
    EXPECT_EQ(print_profile(profile_of_sizes({1, 1, 1, 1}, 2)), "r=2 [1:2 2:0 >2:0]");  // capped at r
    EXPECT_EQ(print_profile(profile_of_sizes({7, 9, 4}, 1)), "r=1 [1:0 >1:1]");
    EXPECT_EQ(print_profile(profile_of_sizes({3}, 0)), "r=0 [>0:0]");
    EXPECT_EQ(all_profiles(2).size(), 26u);
    EXPECT_EQ(all_profiles(1).size(), 3u);
}

TEST(Profile, ClassSizesAndErrors) {
    auto sizes = class_sizes(equivalence_structure({3, 1, 2}));
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<int>{1, 2, 3}));
    FiniteStructure bad(2);
    bad.relation("E", 2).data = {1, 1, 0, 1};
    EXPECT_THROW(class_sizes(bad), NotAnEquivalence);
    EXPECT_THROW(class_sizes(FiniteStructure(2)), NotAnEquivalence);
}

TEST(Profile, RandomSixElementHistogram) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> label(6);
        for (auto& l : label) l = static_cast<int>(rng() % 4);
        FiniteStructure m(6);
        auto& t = m.relation("E", 2);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) t.data[m.tuple_index({a, b})] = label[static_cast<std::size_t>(a)] == label[static_cast<std::size_t>(b)];
        std::map<int, int> by_label;
        for (int l : label) ++by_label[l];
        std::vector<int> expected;
        for (auto [l, c] : by_label) expected.push_back(c);
        std::sort(expected.begin(), expected.end());
        auto got = class_sizes(m);
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, expected);
        EXPECT_EQ(profile_of(m, 2), profile_of_sizes(expected, 2));
    }
}

TEST(Profile, RealizationRoundTrip) {
    for (int r = 0; r <= 3; ++r)
        for (const auto& p : all_profiles(r)) ASSERT_EQ(profile_of(realize_profile(p), r), p) << print_profile(p);
}

TEST(Decide, Trichotomy) {
    OraclePair pair = parse_pair("finite B={2} C={3}");
    auto p2 = decide(schemes::phi(2), pair, 0);
    auto p3 = decide(schemes::phi(3), pair, 0);
    auto p5 = decide(schemes::phi(5), pair, 0);
    EXPECT_EQ(p2.str(), "Provable");
    EXPECT_EQ(p3.str(), "Refutable");
    EXPECT_EQ(p5.str(), "Independent");
    EXPECT_EQ(p2.admissible, 8u);
    EXPECT_EQ(p3.admissible, 20u);
    EXPECT_EQ(p5.admissible, 112u);
    ASSERT_TRUE(p5.satisfying && p5.falsifying);
    EXPECT_TRUE(eval_formula(realize_profile(*p5.satisfying), schemes::phi(5)));
    EXPECT_FALSE(eval_formula(realize_profile(*p5.falsifying), schemes::phi(5)));
}

TEST(Decide, BruteForceCrossCheck) {
    auto k = finite_knowledge();
    int models = 0, phi5_true = 0;
    for (const auto& sizes : structures_up_to(8)) {
        if (!is_model_of_E(sizes, k)) continue;
        ++models;
        FiniteStructure m = equivalence_structure(sizes);
        EXPECT_TRUE(eval_formula(m, schemes::phi(2)));
        EXPECT_FALSE(eval_formula(m, schemes::phi(3)));
        phi5_true += eval_formula(m, schemes::phi(5));
    }
    EXPECT_GT(models, 5);
    EXPECT_GT(phi5_true, 0);
    EXPECT_LT(phi5_true, models);
}

TEST(Decide, SoundOnCorpus) {
    OraclePair pair = parse_pair("finite B={2} C={3}");
    auto k = finite_knowledge();
    std::vector<FiniteStructure> models;
    for (const auto& sizes : structures_up_to(8))
        if (is_model_of_E(sizes, k)) models.push_back(equivalence_structure(sizes));
    int decided = 0;
    for (const auto& phi : wtest::rank2_corpus()) {
        auto st = decide(phi, pair, 0);
        if (st.kind == DecisionStatus::Kind::independent) continue;
        ++decided;
        bool want = st.kind == DecisionStatus::Kind::provable;
        for (const auto& m : models) ASSERT_EQ(eval_formula(m, phi), want) << print_formula(phi);
    }
    EXPECT_GT(decided, 100);
}

TEST(Decide, Errors) {
    EXPECT_THROW(decide(parse_formula("(= 0 0)", languages::arithmetic()), parse_pair("finite B={} C={}"), 0), WrongLanguage);
    EXPECT_THROW(decide(PE("(E x x)"), parse_pair("finite B={} C={}"), 0), Error);
    EXPECT_THROW(decide(schemes::phi(2), OraclePair::canonical(), 10), Error);  // 0 is in B
}

TEST(Decide, StageMonotone) {
    OraclePair pair = parse_pair("shift 1 canonical");
    EXPECT_EQ(decide(schemes::phi(2), pair, 100).str(), "Provable");
    EXPECT_EQ(decide(schemes::phi(2), pair, 0).str(), "Unknown(0)");
    std::vector<Formula> sentences{schemes::phi(1), schemes::phi(2), schemes::phi(3), schemes::phi(4)};
    auto corpus = wtest::rank2_corpus();
    for (std::size_t i = 0; i < corpus.size(); i += 37) sentences.push_back(corpus[i]);
    const std::vector<std::uint64_t> ladder{2, 5, 10, 30, 100, 300};
    for (const auto& phi : sentences) {
        std::optional<DecisionStatus::Kind> settled;
        for (auto s : ladder) {
            auto st = decide(phi, pair, s);
            EXPECT_NE(st.kind, DecisionStatus::Kind::independent);  // enumerative mode never says Independent
            if (settled) EXPECT_EQ(st.kind, *settled) << print_formula(phi) << " at " << s;
            if (st.kind != DecisionStatus::Kind::unknown) settled = st.kind;
        }
    }
}

TEST(NormalForm, Examples) {
    NormalForm nf = normal_form(schemes::phi(1), 2);
    for (const auto& p : nf.disjuncts) EXPECT_GE(p.count(1), 1);
    EXPECT_EQ(nf.disjuncts.size(), 18u);  // count(1) in {1,2}, count(2) and large free
    EXPECT_EQ(print_normal_form(normal_form(PE("(exists x (not (E x x)))"), 1)), "false\n");
    std::string text = print_normal_form(normal_form(PE("(forall x (forall y (E x y)))"), 2));
    EXPECT_EQ(text,
              "   (exactly 0 classes of size 1) and (exactly 0 classes of size 2) and (exactly 1 classes of size > 2)\n"
              "or (exactly 0 classes of size 1) and (exactly 1 classes of size 2) and (exactly 0 classes of size > 2)\n"
              "or (exactly 1 classes of size 1) and (exactly 0 classes of size 2) and (exactly 0 classes of size > 2)\n");
    EXPECT_THROW(normal_form(schemes::phi(2), 1), Error);
}

TEST(NormalForm, AgreesWithSentence) {
    auto corpus = wtest::rank2_corpus();
    auto structures = structures_up_to(7);
    for (std::size_t i = 0; i < corpus.size(); i += 11) {
        NormalForm nf = normal_form(corpus[i], 2);
        for (const auto& sizes : structures) {
            FiniteStructure m = equivalence_structure(sizes);
            ASSERT_EQ(nf.holds_in(m), eval_formula(m, corpus[i])) << print_formula(corpus[i]);
        }
    }
    NormalForm phi2 = normal_form(schemes::phi(2), 3);
    for (const auto& sizes : structures_up_to(8)) {
        FiniteStructure m = equivalence_structure(sizes);
        ASSERT_EQ(phi2.holds_in(m), eval_formula(m, schemes::phi(2)));
    }
}

TEST(RankSufficiency, ExhaustiveCorpus) {
    auto corpus = wtest::rank2_corpus();
    EXPECT_GT(corpus.size(), 1500u);
    std::map<std::string, std::vector<FiniteStructure>> groups;
    for (const auto& sizes : structures_up_to(8))
        groups[print_profile(profile_of_sizes(sizes, 2))].push_back(equivalence_structure(sizes));
    for (const auto& phi : corpus) {
        ASSERT_LE(quantifier_rank(phi), 2);
        for (const auto& [key, ms] : groups) {
            bool first = eval_formula(ms[0], phi);
            for (std::size_t i = 1; i < ms.size(); ++i) ASSERT_EQ(eval_formula(ms[i], phi), first) << print_formula(phi) << " " << key;
        }
    }
}

TEST(RankSufficiency, RankThreeNeedsMore) {
    // Phi_3 has rank 4: {3} and {4} share a rank-2 profile but differ on it.
    EXPECT_EQ(profile_of_sizes({3}, 2), profile_of_sizes({4}, 2));
    EXPECT_NE(eval_formula(equivalence_structure({3}), schemes::phi(3)), eval_formula(equivalence_structure({4}), schemes::phi(3)));
}
