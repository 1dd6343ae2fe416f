#include "support.hpp"

#include <gtest/gtest.h>

using namespace weakarith;

namespace {
const Language& LR() {
    static const Language l = languages::ordered_arithmetic();
    return l;
}
Formula PR(const std::string& s) { return parse_formula(s, LR()); }

std::vector<Formula> cited_axioms(const Proof& p, const Theory& t) {
    std::vector<Formula> out;
    for (const auto& s : p.steps)
        if (s.kind == ProofStep::Kind::theory_axiom) out.push_back(t.axiom_of(s.axiom_index));
    return out;
}
}  // namespace

TEST(Check, SingleAxiomProof) {
    Theory r = theory_R();
    Proof p{{ProofStep::axiom("R", 20)}};
    EXPECT_EQ(check_proof(p, r), schemes::ax1(1, 1));
}

TEST(Check, ParsedProof) {
    Theory r = theory_R();
    Proof p = parse_proof(
        "; instance of Ax5 at 1\n"
        "ax R 9\n"
        "logic Q-inst x=x t=(S 0) A=(or (<= x (S 0)) (<= (S 0) x))\n"
        "mp 0 1\n",
        r.language);
    EXPECT_EQ(check_proof(p, r), PR("(or (<= (S 0) (S 0)) (<= (S 0) (S 0)))"));
    EXPECT_EQ(parse_proof(print_proof(p), r.language).steps.size(), 3u);
    EXPECT_EQ(print_proof(parse_proof(print_proof(p), r.language)), print_proof(p));
}

TEST(Check, ModusPonensFaults) {
    Theory r = theory_R();
    try {
        check_proof(Proof{{ProofStep::axiom("R", 0), ProofStep::mp(0, 0)}}, r);
        FAIL();
    } catch (const InvalidStep& e) {
        EXPECT_EQ(e.index(), 1u);
        EXPECT_EQ(std::string(e.what()), "invalid step 1: step 0 is not an implication");
    }
    // Wrong antecedent.
    Proof wrong = parse_proof("ax R 0\nlogic A1 A=(= 0 0) B=(= 0 (S 0))\nmp 0 1\n", r.language);
    EXPECT_THROW(check_proof(wrong, r), InvalidStep);
    // Forward reference.
    EXPECT_THROW(check_proof(Proof{{ProofStep::mp(1, 2)}}, r), InvalidStep);
    EXPECT_THROW(check_proof(Proof{}, r), InvalidStep);
}

TEST(Check, TheoryMismatchAndBadSchemas) {
    Theory r = theory_R();
    EXPECT_THROW(check_proof(Proof{{ProofStep::axiom("Q", 0)}}, r), InvalidStep);
    EXPECT_THROW(check_proof(parse_proof("logic A1 A=(= 0 0)\n", r.language), r), InvalidStep);
    EXPECT_THROW(check_proof(parse_proof("logic Z9\n", r.language), r), InvalidStep);
    // Q-dist side condition: x free in A.
    EXPECT_THROW(check_proof(parse_proof("logic Q-dist x=x A=(= x 0) B=(= 0 0)\n", r.language), r), InvalidStep);
    EXPECT_NO_THROW(check_proof(parse_proof("logic Q-dist x=x A=(= y 0) B=(= x 0)\n", r.language), r));
    EXPECT_THROW(check_proof(parse_proof("gen 0 x\n", r.language), r), InvalidStep);
}

TEST(Check, Generalization) {
    Theory r = theory_R();
    Proof p = parse_proof("logic E-refl t=x\ngen 0 x\n", r.language);
    EXPECT_EQ(check_proof(p, r), PR("(forall x (= x x))"));
    EXPECT_EQ(p.steps[0].kind, ProofStep::Kind::equality_axiom);
}

TEST(Check, EqualityCongruence) {
    Theory r = theory_R();
    Proof p = parse_proof("logic E-cong sym=+ s1=x s2=y t1=u t2=v\n", r.language);
    EXPECT_EQ(check_proof(p, r), PR("(-> (= x u) (-> (= y v) (= (+ x y) (+ u v))))"));
    Proof q = parse_proof("logic E-cong sym=<= s1=x s2=y t1=u t2=v\n", r.language);
    EXPECT_EQ(check_proof(q, r), PR("(-> (= x u) (-> (= y v) (-> (<= x y) (<= u v))))"));
}

TEST(Check, ParseErrors) {
    EXPECT_THROW(parse_proof("ax R\n", LR()), ParseError);
    EXPECT_THROW(parse_proof("mp 0 x\n", LR()), ParseError);
    EXPECT_THROW(parse_proof("frob 1\n", LR()), ParseError);
    EXPECT_THROW(parse_proof("logic A1 A=(= 0 0\n", LR()), ParseError);
}

TEST(Check, LogicalAxiomsAreValid) {
    // Every propositional schema instance is a tautology; every instance is
    // true in random finite structures.
    wtest::Gen g(41, LR());
    Theory r = theory_R();
    for (int i = 0; i < 200; ++i) {
        SchemaArgs a;
        a.formulas = {{"A", g.formula(2, {"x"}, {"y"})}, {"B", g.formula(2, {"x"}, {"y"})}, {"C", g.formula(1, {"x"}, {"y"})}};
        a.names = {{"x", "x"}};
        a.terms = {{"t", g.term(2, {"y"})}, {"s", g.term(1, {"x"})}, {"u", g.term(1, {"x"})}};
        FiniteStructure m = g.structure(g.uniform(1, 3));
        for (const auto& id : schema_ids()) {
            if (id == "E-cong") continue;
            Formula f;
            try {
                f = schema_instance(id, a, r.language);
            } catch (const Error&) {
                continue;  // Q-dist side condition
            }
            if (id[0] == 'A' || id[0] == 'C' || id[0] == 'D' || id == "T" || id == "F")
                ASSERT_TRUE(is_tautology(f)) << id << " " << print_formula(f);
            Formula closed = schemes::universal_closure(f);
            ASSERT_TRUE(eval_formula(m, closed)) << id << " " << print_formula(f);
        }
    }
}

TEST(Tautology, Examples) {
    EXPECT_TRUE(is_tautology(PR("(-> false (= 0 (S 0)))")));
    EXPECT_TRUE(is_tautology(PR("(or (= x 0) (not (= x 0)))")));
    EXPECT_FALSE(is_tautology(PR("(or (= x 0) (= 0 x))")));  // distinct atoms
    EXPECT_TRUE(is_tautology(PR("(-> (forall x (= x 0)) (forall x (= x 0)))")));
    Formula big = PR("(= 0 0)");
    for (int i = 1; i <= 21; ++i) big = build::conj(big, build::eq(numeral(static_cast<std::uint64_t>(i)), numeral(0)));
    EXPECT_THROW(is_tautology(big), TooManyAtoms);
}

TEST(Search, FindsAx1Directly) {
    Theory r = theory_R();
    auto res = search_proof(r, schemes::ax1(1, 1), 100);
    ASSERT_TRUE(res.proof.has_value());
    EXPECT_EQ(print_proof(*res.proof), "ax R 20\n");
}

TEST(Search, Ax5InstanceIsBudgetMonotone) {
    Theory r = theory_R();
    Formula goal = PR("(or (<= (S 0) (S 0)) (<= (S 0) (S 0)))");
    auto a = search_proof(r, goal, 100);
    ASSERT_TRUE(a.proof.has_value());
    EXPECT_EQ(a.events, 97u);
    const std::string expected =
        "ax R 9\nlogic Q-inst x=x t=(S 0) A=(or (<= x (S 0)) (<= (S 0) x))\nmp 0 1\n";
    EXPECT_EQ(print_proof(*a.proof), expected);
    for (std::uint64_t b : {97u, 1000u, 5000u}) {
        auto res = search_proof(r, goal, b);
        ASSERT_TRUE(res.proof.has_value()) << b;
        EXPECT_EQ(print_proof(*res.proof), expected) << b;
    }
    EXPECT_FALSE(search_proof(r, goal, 96).proof.has_value());
}

TEST(Search, GoldenGoalsRevalidate) {
    for (const auto& gg : wtest::golden_goals()) {
        Theory t = theory_from_id(gg.theory);
        Formula goal = parse_formula(gg.goal, t.language);
        auto res = search_proof(t, goal, gg.budget);
        ASSERT_TRUE(res.proof.has_value()) << gg.goal;
        EXPECT_LE(res.events, gg.budget);
        EXPECT_EQ(check_proof(*res.proof, t), goal) << gg.goal;
    }
}

TEST(Search, SoundAgainstFiniteModels) {
    for (const auto& gg : wtest::golden_goals()) {
        Theory t = theory_from_id(gg.theory);
        Formula goal = parse_formula(gg.goal, t.language);
        auto res = search_proof(t, goal, gg.budget);
        ASSERT_TRUE(res.proof.has_value());
        auto cited = cited_axioms(*res.proof, t);
        if (cited.empty()) {
            wtest::Gen g(3, t.language);
            for (int i = 0; i < 20; ++i) EXPECT_TRUE(eval_formula(g.structure(g.uniform(1, 3)), goal));
            continue;
        }
        auto model = find_model(cited, 4);
        if (!model.model) continue;
        EXPECT_TRUE(eval_formula(*model.model, goal)) << gg.goal;
    }
}

TEST(Search, FalseGoalNotFound) {
    Theory r = theory_R();
    Formula goal = PR("(= (+ (S 0) (S 0)) (S (S (S 0))))");
    EXPECT_FALSE(search_proof(r, goal, 3000).proof.has_value());
    // R refutes it from 1+1=2 and 2 != 3.
    EXPECT_TRUE(r.is_axiom(schemes::ax1(1, 1)));
    EXPECT_TRUE(r.is_axiom(schemes::ax3(2, 3)));
}

TEST(Search, Deterministic) {
    Theory q = theory_Q();
    Formula goal = parse_formula("(not (= (S 0) 0))", q.language);
    auto a = search_proof(q, goal, 200), b = search_proof(q, goal, 200);
    ASSERT_TRUE(a.proof && b.proof);
    EXPECT_EQ(print_proof(*a.proof), print_proof(*b.proof));
    EXPECT_EQ(a.events, b.events);
}
