#include "support.hpp"

#include <gtest/gtest.h>

using namespace weakarith;

namespace {
Formula PR(const std::string& s) { return parse_formula(s, languages::ordered_arithmetic()); }

FiniteStructure standard_prefix(int k) {
    // 0..k-1 with successor, +, * and <= truncated at k-1.
    FiniteStructure m(k);
    m.function("0", 0).data = {0};
    auto& s = m.function("S", 1);
    for (int a = 0; a < k; ++a) s.data[static_cast<std::size_t>(a)] = std::min(a + 1, k - 1);
    m.function("+", 2);
    m.function("*", 2);
    m.relation("<=", 2);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            m.set("+", {a, b}, std::min(a + b, k - 1));
            m.set("*", {a, b}, std::min(a * b, k - 1));
            m.set("<=", {a, b}, a <= b ? 1 : 0);
        }
    return m;
}
}  // namespace

TEST(Eval, StandardPrefix) {
    FiniteStructure m = standard_prefix(5);
    EXPECT_TRUE(eval_formula(m, schemes::ax1(1, 1)));
    EXPECT_TRUE(eval_formula(m, schemes::ax2(1, 2)));
    EXPECT_TRUE(eval_formula(m, schemes::ax3(0, 3)));
    EXPECT_FALSE(eval_formula(m, schemes::ax3(4, 5)));  // 5 collapses onto 4
    EXPECT_TRUE(eval_formula(m, schemes::ax4(2)));
    EXPECT_TRUE(eval_formula(m, schemes::ax5(3)));
    EXPECT_EQ(eval_term(m, PR("(= (+ x (S 0)) y)").terms[0], {{"x", 2}}), 3);
}

TEST(Eval, OpenFormulaNeedsAssignment) {
    FiniteStructure m = standard_prefix(2);
    EXPECT_THROW(eval_formula(m, PR("(= x 0)")), MissingAssignment);
    EXPECT_TRUE(eval_formula(m, PR("(= x 0)"), {{"x", 0}}));
}

TEST(Eval, UninterpretedSymbol) {
    FiniteStructure m(2);
    m.function("0", 0);
    EXPECT_THROW(eval_formula(m, PR("(= (S 0) 0)")), UninterpretedSymbol);
}

TEST(Eval, QuantifiersAgainstBruteForce) {
    wtest::Gen g(5, languages::ordered_arithmetic());
    for (int i = 0; i < 300; ++i) {
        Formula body = g.formula(2, {"x"}, {"y"});
        FiniteStructure m = g.structure(g.uniform(1, 4));
        bool any = false, all = true;
        for (int d = 0; d < m.size; ++d) {
            bool v = eval_formula(m, body, {{"x", d}});
            any = any || v;
            all = all && v;
        }
        ASSERT_EQ(eval_formula(m, build::exists("x", body)), any) << print_formula(body);
        ASSERT_EQ(eval_formula(m, build::forall("x", body)), all) << print_formula(body);
    }
}

TEST(FindModel, AS1HasSingletonModel) {
    Theory as = theory_AS();
    auto r = find_model({as.axiom_of(0)}, 3);
    ASSERT_TRUE(r.model.has_value());
    EXPECT_EQ(r.model->size, 1);
    EXPECT_TRUE(eval_formula(*r.model, as.axiom_of(0)));
}

TEST(FindModel, ASHasNoSmallModel) {
    Theory as = theory_AS();
    auto r = find_model(as.first(*as.finite_size), 3);
    EXPECT_FALSE(r.model.has_value());
    // One binary relation: 2^1 + 2^4 + 2^9 structures.
    EXPECT_EQ(r.structures_counted, Natural(530));
    EXPECT_EQ(r.per_size.size(), 3u);
}

TEST(FindModel, QHasNoModelUpToTwo) {
    Theory q = theory_Q();
    auto r = find_model(q.first(7), 2);
    EXPECT_FALSE(r.model.has_value());
    // 0, S, +, *: size 1 gives 1, size 2 gives 2 * 2^2 * 2^4 * 2^4.
    EXPECT_EQ(r.structures_counted, Natural(2049));
    EXPECT_EQ(structure_count(q.first(7), 1, 3), Natural(std::string("31381061658")));
}

TEST(FindModel, PruningDoesNotChangeAnswers) {
    Theory q = theory_Q();
    for (std::size_t k = 1; k <= 7; ++k) {
        auto a = find_model(q.first(k), 2, {1, true});
        auto b = find_model(q.first(k), 2, {1, false});
        ASSERT_EQ(a.model.has_value(), b.model.has_value()) << k;
        EXPECT_EQ(a.structures_counted, b.structures_counted) << k;
        if (a.model) EXPECT_EQ(*a.model, *b.model) << k;
    }
}

TEST(FindModel, Deterministic) {
    auto frag = r_fragment(1);
    auto a = find_model(frag, 4), b = find_model(frag, 4);
    ASSERT_TRUE(a.model && b.model);
    EXPECT_EQ(print_structure(*a.model), print_structure(*b.model));
}

TEST(FindModel, RejectsOpenFormulas) {
    EXPECT_THROW(find_model({PR("(= x 0)")}, 2), Error);
}

TEST(LocalFinsat, RFragmentWitness) {
    auto frag = r_fragment(2);
    auto r = find_model(frag, 4);
    ASSERT_TRUE(r.model.has_value());
    EXPECT_LE(r.model->size, 4);
    for (const auto& ax : frag) EXPECT_TRUE(eval_formula(*r.model, ax)) << print_formula(ax);
}

TEST(LocalFinsat, RPrefixes) {
    auto rep = check_local_finsat(theory_R(), 25, 5);
    EXPECT_TRUE(rep.all_witnessed()) << rep.failures().size();
    ASSERT_TRUE(rep.last_witness.has_value());
    for (const auto& ax : theory_R().first(25)) EXPECT_TRUE(eval_formula(*rep.last_witness, ax));
    int prev = 0;
    for (const auto& p : rep.prefixes) {
        ASSERT_TRUE(p.witness_size.has_value());
        EXPECT_GE(*p.witness_size, prev);
        prev = *p.witness_size;
    }
}

TEST(LocalFinsat, UPrefixes) {
    Theory u = theory_U(parse_pair("finite A={1} B={2}"));
    auto rep = check_local_finsat(u, 21, 5);
    EXPECT_TRUE(rep.all_witnessed());
    ASSERT_TRUE(rep.last_witness.has_value());
    for (const auto& ax : u.first(21)) EXPECT_TRUE(eval_formula(*rep.last_witness, ax)) << print_formula(ax);
}

TEST(LocalFinsat, QPrefixesFailSomewhere) {
    auto rep = check_local_finsat(theory_Q(), 7, 2);
    EXPECT_TRUE(rep.prefixes[0].witness_size.has_value());
    EXPECT_FALSE(rep.all_witnessed());
    auto fails = rep.failures();
    ASSERT_FALSE(fails.empty());
    // Once a prefix fails, every longer prefix fails.
    for (std::size_t i = 1; i < fails.size(); ++i) EXPECT_EQ(fails[i], fails[i - 1] + 1);
    EXPECT_EQ(fails.back(), 7u);
}

TEST(StructureIO, RoundTrip) {
    wtest::Gen g(17, languages::ordered_arithmetic());
    for (int i = 0; i < 200; ++i) {
        FiniteStructure m = g.structure(g.uniform(1, 4));
        std::string text = print_structure(m);
        FiniteStructure back = parse_structure(text);
        ASSERT_EQ(back, m) << text;
        EXPECT_EQ(print_structure(back), text);
    }
}

TEST(StructureIO, EmptyRelationAndErrors) {
    FiniteStructure m(2);
    m.relation("E", 2);
    std::string text = print_structure(m);
    EXPECT_EQ(text, "size 2\nrel E/2 = {}\n");
    EXPECT_EQ(parse_structure(text), m);
    EXPECT_THROW(parse_structure("size 0\n"), ParseError);
    EXPECT_THROW(parse_structure("size 2\nsize 3\n"), ParseError);
}

TEST(StructureCount, ClosedForm) {
    auto uses = symbols_of(theory_AS().first(*theory_AS().finite_size));
    EXPECT_EQ(structure_count(uses, 3), Natural(512));
    auto quses = symbols_of(theory_Q().first(7));
    EXPECT_EQ(structure_count(quses, 3), boost::multiprecision::pow(Natural(3), 22));
}
