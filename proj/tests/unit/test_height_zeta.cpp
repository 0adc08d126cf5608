#include "mhz/height_zeta.hpp"

#include <gtest/gtest.h>

using namespace mhz;

namespace {

const MotClass L = MotClass::L();
const MotClass Linv = MotClass::L_pow(-1);

ToyGeometry toy(int q)
{
    ToyGeometry g;
    g.q = q;
    return g;
}

RationalMotSeries toy_Z()
{
    return RationalMotSeries(LaurentPolyMot::constant({"T"}, L), {}) +
           RationalMotSeries(LaurentPolyMot::monomial({"T"}, (L - 1) * L, {1}), {{1, {1}, 1}});
}

} // namespace

TEST(BruteForceSections, Examples)
{
    EXPECT_EQ(brute_force_sections(toy(3), 2)[0], Int(3));
    EXPECT_EQ(brute_force_sections(toy(3), 2)[2], Int(18));
    EXPECT_EQ(brute_force_sections(toy(2), 1)[1], Int(2));
    for (int q : {2, 3, 5}) {
        const auto c = brute_force_sections(toy(q), 5);
        for (int n = 1; n <= 5; ++n) {
            EXPECT_EQ(c[static_cast<std::size_t>(n)], Int(q - 1) * ipow(Int(q), n));
        }
    }
    EXPECT_THROW(brute_force_sections(toy(3), 9), CapExceeded);
    EXPECT_THROW(brute_force_sections(toy(7), 2), ValidationError);
}

TEST(AssembleTrivial, Toy)
{
    const RationalMotSeries Z = assemble_Z_trivial_term(toy(3));
    const RationalMotSeries want =
        RationalMotSeries(LaurentPolyMot::constant({"T"}, 1), {}) +
        RationalMotSeries(LaurentPolyMot::monomial({"T"}, (1 - Linv) * L, {1}), {{1, {1}, 1}});
    EXPECT_TRUE(Z.same_function(want)) << Z.str();
    ASSERT_EQ(Z.factors().size(), 1u);
    EXPECT_EQ(Z.factors()[0], (SeriesFactor{1, {1}, 1}));

    ToyGeometry g = toy(3);
    g.bad.insert(Place::finite(1));
    EXPECT_TRUE(assemble_Z_trivial_term(g).same_function(Z));

    EXPECT_TRUE(assemble_Z_symbolic(toy(3)).same_function(toy_Z()));
}

TEST(AssemblePoisson, ToyCoefficients)
{
    const auto r = assemble_Z_poisson(toy(3), 4);
    EXPECT_TRUE(r.match);
    EXPECT_EQ(r.values()[2], Rational(18));
    EXPECT_EQ(r.values(), (std::vector<Rational>{3, 6, 18, 54, 162}));
    // xi = 0 against the trivial-character term at L = q, times q^{(1-g)n}
    const auto sym = expand(assemble_Z_trivial_term(toy(3)), 4);
    for (int h = 0; h <= 4; ++h) {
        const auto& c = r.coeffs[static_cast<std::size_t>(h)];
        EXPECT_EQ(c.xi_zero.to_rational(), count_realize(sym[static_cast<std::size_t>(h)], 3) * Rational(3)) << h;
        EXPECT_TRUE(c.xi_rest.is_zero()) << h;
    }
}

TEST(AssemblePoisson, SlackAndEnlargedSigma)
{
    for (int q : {2, 3}) {
        ToyGeometry g = toy(q);
        g.slack_inf = 3;
        g.bad.insert(Place::finite(0));
        g.slack_finite = 1;
        const auto r = assemble_Z_poisson(g, 4);
        EXPECT_TRUE(r.match) << q;
        EXPECT_EQ(r.values(), assemble_Z_poisson(toy(q), 4).values());
        bool nontrivial = false;
        for (const auto& c : r.coeffs) {
            nontrivial = nontrivial || c.dim_E > 0;
            EXPECT_TRUE(c.xi_rest.is_zero());
        }
        EXPECT_TRUE(nontrivial);
    }
}

TEST(AssemblePoisson, MatchesSymbolicCounts)
{
    const auto coeffs = expand(assemble_Z_symbolic(toy(5)), 6);
    const auto brute = brute_force_sections(toy(5), 6);
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(count_realize(coeffs[static_cast<std::size_t>(n)], 5), Rational(brute[static_cast<std::size_t>(n)]));
    }
    EXPECT_TRUE(assemble_Z_poisson(toy(5), 6).match);
}

TEST(TheoremMain, Toy)
{
    EXPECT_EQ(toy_pole_order(toy(3)), 1);
    const MainCheck r = theorem_main_check(toy_Z(), 1, 1);
    EXPECT_EQ(r.P_at_Linv, L - 1);
    EXPECT_EQ(r.effectivity, Effectivity::Certified);
    EXPECT_TRUE(r.dagger);
    ASSERT_EQ(r.tauberian.classes.size(), 1u);
    EXPECT_EQ(r.tauberian.classes[0].tag, TauberCase::Case2);
    EXPECT_EQ(r.tauberian.classes[0].dim_minus_n, 1);
    EXPECT_EQ(r.tauberian.classes[0].log_nu_exponent, 0);
    EXPECT_TRUE(r.tauberian.verified);

    const MainCheck t = theorem_main_check(assemble_Z_trivial_term(toy(3)), 1, 1);
    EXPECT_EQ(t.P_at_Linv, 1 - Linv);

    EXPECT_THROW(theorem_main_check(toy_Z(), 1, 0), ValidationError);
    try {
        theorem_main_check(toy_Z(), 1, 0);
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
    }
}

TEST(TheoremMain, LeadingConstantAgrees)
{
    const auto lc = leading_constant({ToyGeometry::bad_datum()}, {}, 1);
    EXPECT_EQ(lc.value * L, theorem_main_check(toy_Z(), 1, 1).P_at_Linv);
}
