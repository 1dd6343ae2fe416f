#include "support.hpp"

#include <gtest/gtest.h>

using namespace weakarith;

namespace {
Formula PR(const std::string& s) { return parse_formula(s, languages::ordered_arithmetic()); }
}  // namespace

TEST(Numeral, Shape) {
    EXPECT_EQ(print_term(numeral(0)), "0");
    EXPECT_EQ(print_term(numeral(3)), "(S (S (S 0)))");
    for (std::uint64_t m = 0; m < 50; ++m) {
        EXPECT_EQ(term_depth(numeral(m)), m + 1);
        EXPECT_EQ(numeral_value(numeral(m)), m);
    }
    EXPECT_FALSE(numeral_value(build::var("x")).has_value());
}

TEST(Q, Axioms) {
    Theory q = theory_Q();
    EXPECT_EQ(q.finite_size, 7u);
    EXPECT_EQ(print_formula(q.axiom_of(1)), "(forall x (not (= (S x) 0)))");
    for (std::uint64_t i = 0; i < 7; ++i) EXPECT_TRUE(q.is_axiom(q.axiom_of(i)));
}

TEST(R, EnumerationOrder) {
    // Diagonal order: scheme i mod 5, parameter code i / 5 unpaired by Cantor.
    Theory r = theory_R();
    std::vector<Formula> expected{schemes::ax1(0, 0), schemes::ax2(0, 0), schemes::ax3(0, 1), schemes::ax4(0),
                                  schemes::ax5(0),    schemes::ax1(1, 0), schemes::ax2(1, 0), schemes::ax3(1, 0),
                                  schemes::ax4(1),    schemes::ax5(1),    schemes::ax1(0, 1), schemes::ax2(0, 1)};
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(r.axiom_of(i), expected[i]) << i;
    EXPECT_EQ(r.axiom_of(20), PR("(= (+ (S 0) (S 0)) (S (S 0)))"));
}

TEST(R, Membership) {
    Theory r = theory_R();
    EXPECT_TRUE(r.is_axiom(PR("(= (+ (S 0) (S 0)) (S (S 0)))")));
    EXPECT_FALSE(r.is_axiom(PR("(= (+ (S 0) (S 0)) (S (S (S 0))))")));
    EXPECT_FALSE(r.is_axiom(PR("(not (= (S 0) (S 0)))")));
    EXPECT_FALSE(r.is_axiom(padding_axiom()));
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Formula f = r.axiom_of(i);
        ASSERT_TRUE(is_sentence(f)) << i;
        ASSERT_TRUE(r.is_axiom(f)) << i << ": " << print_formula(f);
    }
}

TEST(R, Ax4Instance) {
    EXPECT_EQ(schemes::ax4(1), PR("(forall x (-> (<= x (S 0)) (or (= x 0) (= x (S 0)))))"));
}

TEST(Catalog, CoherenceOnPrefixes) {
    for (const char* id : {"R0", "R1", "R2", "Q+", "Q-", "PA-", "TC", "AS", "T-set"}) {
        Theory t = theory_from_id(id);
        std::uint64_t n = t.finite_size ? *t.finite_size : 1000;
        if (std::string(id) == "T-set") n = 12;  // T-set axiom n has n+1 nested quantifiers
        for (std::uint64_t i = 0; i < n; ++i) {
            Formula f = t.axiom_of(i);
            ASSERT_TRUE(is_sentence(f)) << id << " " << i;
            ASSERT_TRUE(t.is_axiom(f)) << id << " " << i << ": " << print_formula(f);
            check_well_formed(f, t.language);
        }
    }
}

TEST(Catalog, DistinctNumeralsInRAndU) {
    Theory r = theory_R();
    Theory u = theory_U(parse_pair("finite A={1} B={2}"));
    for (std::uint64_t m = 0; m <= 20; ++m)
        for (std::uint64_t n = 0; n <= 20; ++n) {
            if (m == n) continue;
            Formula f = schemes::ax3(m, n);
            EXPECT_EQ(r.axiom_of(scheme_axiom_index(r_schemes(), SchemeId::ax3, {m, n})), f);
            EXPECT_EQ(u.axiom_of(u_distinct_index(m, n)), f);
            EXPECT_TRUE(r.is_axiom(f));
            EXPECT_TRUE(u.is_axiom(f));
        }
}

TEST(Schemes, Induction) {
    Formula phi = PR("(= x 0)");
    Formula inst = scheme_instance(SchemeId::induction, {{}, phi, {"x"}});
    EXPECT_EQ(print_formula(inst),
              "(-> (and (= 0 0) (forall x (-> (= x 0) (= (S x) 0)))) (forall x (= x 0)))");
    EXPECT_THROW(scheme_instance(SchemeId::induction, {{}, std::nullopt, {"x"}}), SignatureMismatch);
}

TEST(Schemes, SignatureMismatch) {
    EXPECT_THROW(scheme_instance(SchemeId::ax1, {{1}, std::nullopt, {}}), SignatureMismatch);
    EXPECT_EQ(scheme_instance(SchemeId::ax4, {{1}, std::nullopt, {}}), schemes::ax4(1));
}

TEST(Schemes, Collection) {
    Formula inst = scheme_instance(SchemeId::collection, {{}, PR("(= y (S x))"), {"x", "y"}});
    EXPECT_TRUE(is_sentence(inst));
    // True in the 1-element model where everything is 0.
    FiniteStructure m(1);
    m.function("0", 0);
    m.function("S", 1);
    m.relation("<=", 2).data = {1};
    EXPECT_TRUE(eval_formula(m, inst));
}

TEST(Schemes, PhiExistence) {
    Formula phi2 = scheme_instance(SchemeId::phi_existence, {{2}, std::nullopt, {}});
    EXPECT_EQ(phi2, schemes::phi(2));
    EXPECT_EQ(quantifier_rank(phi2), 3);
    // Holds exactly in equivalence structures with a class of size 2.
    EXPECT_TRUE(eval_formula(equivalence_structure({2}), phi2));
    EXPECT_TRUE(eval_formula(equivalence_structure({1, 2, 3}), phi2));
    EXPECT_FALSE(eval_formula(equivalence_structure({1, 3}), phi2));
    EXPECT_FALSE(eval_formula(equivalence_structure({1, 1}), phi2));
}

TEST(Product, Interleaving) {
    Theory s = theory_TC(), r = theory_R();
    Theory p = make_product(s, r);
    std::string pred = product_predicate(p);
    EXPECT_EQ(pred, "P");
    EXPECT_EQ(p.axiom_of(0), build::implies(build::rel(pred), s.axiom_of(0)));
    EXPECT_EQ(p.axiom_of(1), build::implies(build::neg(build::rel(pred)), r.axiom_of(0)));
    EXPECT_EQ(p.axiom_of(7), build::implies(build::neg(build::rel(pred)), r.axiom_of(3)));
    for (std::uint64_t i = 0; i < 40; ++i) EXPECT_TRUE(p.is_axiom(p.axiom_of(i)));
}

TEST(Product, FreshPredicateAvoidsCollision) {
    Theory u = theory_U(parse_pair("finite A={} B={}"));  // already has a unary P
    Theory p = make_product(u, theory_R());
    std::string pred = product_predicate(p);
    EXPECT_NE(pred, "P");
    EXPECT_EQ(pred, "P_1");
    EXPECT_TRUE(p.language.lookup(SymbolRef("P")).has_value());
}

TEST(UTheory, Facts) {
    OraclePair pair = parse_pair("finite A={1} B={2}");
    Theory u = theory_U(pair);
    EXPECT_EQ(u.axiom_of(u_distinct_index(1, 2)), parse_formula("(not (= (S 0) (S (S 0))))", u.language));
    EXPECT_EQ(u.axiom_of(u_fact_index(Side::left, 0, 0)), parse_formula("(P (S 0))", u.language));
    EXPECT_EQ(u.axiom_of(u_fact_index(Side::right, 0, 0)), parse_formula("(not (P (S (S 0))))", u.language));
    EXPECT_EQ(u.axiom_of(u_fact_index(Side::left, 0, 1)), padding_axiom());
    EXPECT_TRUE(u.is_axiom(parse_formula("(P (S 0))", u.language)));
    EXPECT_FALSE(u.is_axiom(parse_formula("(P (S (S 0)))", u.language)));
    EXPECT_FALSE(u.is_axiom(padding_axiom()));
}

TEST(UTheory, StagedFactsFromCanonicalPair) {
    OraclePair pair = OraclePair::canonical();
    Theory u = theory_U(pair);
    auto right = pair.right(10);
    ASSERT_FALSE(right.empty());
    for (std::size_t k = 0; k < right.size(); ++k)
        EXPECT_EQ(u.axiom_of(u_fact_index(Side::right, 10, k)), build::neg(build::rel("P", {numeral(right[k])})));
    EXPECT_THROW(u.is_axiom(parse_formula("(P 0)", u.language)), MembershipUndecidable);
    // Never both P(n) and not P(n) at a stage.
    for (std::uint64_t s = 0; s <= 200; ++s) {
        auto l = pair.left(s), r = pair.right(s);
        for (auto n : l) ASSERT_FALSE(std::binary_search(r.begin(), r.end(), n)) << s;
    }
}

TEST(ETheory, Axioms) {
    OraclePair pair = parse_pair("finite B={2} C={3}");
    Theory e = theory_E(pair);
    EXPECT_EQ(e.axiom_of(e_fact_index(Side::left, 0, 0)), schemes::phi(2));
    EXPECT_EQ(e.axiom_of(e_fact_index(Side::right, 0, 0)), build::neg(schemes::phi(3)));
    EXPECT_TRUE(e.is_axiom(schemes::phi_uniqueness(2)));
    EXPECT_EQ(e.axiom_of(e_uniqueness_index(2)), schemes::phi_uniqueness(2));
    EXPECT_TRUE(e.is_axiom(schemes::phi(2)));
    EXPECT_FALSE(e.is_axiom(schemes::phi(3)));
    EXPECT_TRUE(e.is_axiom(build::neg(schemes::phi(3))));
    for (std::uint64_t n = 1; n <= 12; ++n) EXPECT_EQ(e.axiom_of(e_uniqueness_index(n)), schemes::phi_uniqueness(n));
    for (std::uint64_t i = 0; i < 200; ++i) {
        Formula f = e.axiom_of(i);
        ASSERT_TRUE(is_sentence(f));
        if (f == padding_axiom()) continue;
        ASSERT_TRUE(e.is_axiom(f)) << i;
    }
}

TEST(ETheory, UniquenessFailsOnTwoSingletons) {
    EXPECT_FALSE(eval_formula(equivalence_structure({1, 1}), schemes::phi_uniqueness(1)));
    EXPECT_TRUE(eval_formula(equivalence_structure({1, 2}), schemes::phi_uniqueness(1)));
}

TEST(RepPRF, Facts) {
    Theory t = theory_RepPRF();
    for (std::uint64_t i = 0; i < 400; ++i) {
        Formula f = t.axiom_of(i);
        ASSERT_TRUE(is_sentence(f));
        check_well_formed(f, t.language);
        if (i % 2 == 1 && f != padding_axiom()) {
            // f#e(c#n) = c#m with machine e mapping n to m.
            std::uint64_t e = *f.terms[0].symbol.index;
            std::uint64_t n = *f.terms[0].args[0].symbol.index;
            std::uint64_t m = *f.terms[1].symbol.index;
            EXPECT_EQ(run_bounded(decode_program(e), n, 1000000), m);
        }
    }
    EXPECT_EQ(print_formula(t.axiom_of(0)), "(not (= c#0 c#1))");
}

TEST(TheoryIds, ParseAndReject) {
    EXPECT_EQ(theory_from_id("product:TC,R").name, "product:TC,R");
    EXPECT_EQ(theory_from_id("U:finite A={1,2} B={3}").name, "U:finite A={1,2} B={3}");
    EXPECT_THROW(theory_from_id("ZFC"), Error);
}
