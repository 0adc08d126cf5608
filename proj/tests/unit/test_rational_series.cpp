#include "mhz/tauberian.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mhz;

namespace {

const MotClass L = MotClass::L();

RationalMotSeries series(const std::string& num, std::vector<SeriesFactor> f)
{
    return RationalMotSeries(parse_laurent(num), std::move(f));
}

/// Coefficient of T^n by direct convolution with prod sum_m binom(m + k - 1, k - 1) L^{am} T^{bm}.
MotClass convolution_oracle(const RationalMotSeries& r, int n)
{
    std::vector<MotClass> acc(static_cast<std::size_t>(n) + 1);
    acc[0] = 1;
    for (const auto& f : r.factors()) {
        std::vector<MotClass> next(acc.size());
        for (int i = 0; i <= n; ++i) {
            if (acc[static_cast<std::size_t>(i)].is_zero()) {
                continue;
            }
            for (int m = 0; i + m * f.b[0] <= n; ++m) {
                next[static_cast<std::size_t>(i + m * f.b[0])] +=
                    acc[static_cast<std::size_t>(i)] * MotClass(binomial(m + f.mult - 1, f.mult - 1)) * MotClass::L_pow(f.a * m);
            }
        }
        acc = std::move(next);
    }
    MotClass total;
    for (const auto& [e, c] : r.num().terms()) {
        if (e[0] <= n) {
            total += c * acc[static_cast<std::size_t>(n - e[0])];
        }
    }
    return total;
}

Rational numeric_value(const RationalMotSeries& r, std::int64_t q)
{
    const Rational T(1, q);
    Rational v = 0;
    for (const auto& [e, c] : r.num().terms()) {
        int s = 0;
        for (int x : e) {
            s += x;
        }
        v += count_realize(c, q) * rpow(T, s);
    }
    for (const auto& f : r.factors()) {
        v /= rpow(1 - rpow(Rational(q), f.a) * rpow(T, exponent_sum(f.b)), f.mult);
    }
    return v;
}

std::vector<SeriesFactor> random_factors(std::mt19937& rng, int count)
{
    std::uniform_int_distribution<int> ad(0, 3), bd(1, 3), md(1, 3);
    std::vector<SeriesFactor> out;
    while (static_cast<int>(out.size()) < count) {
        const SeriesFactor f{ad(rng), {bd(rng)}, md(rng)};
        bool ok = true;
        for (const auto& g : out) {
            ok = ok && !proportional(f.a, f.b[0], g.a, g.b[0]);
        }
        if (ok) {
            out.push_back(f);
        }
    }
    return out;
}

MotPoly random_poly(std::mt19937& rng, int deg)
{
    std::uniform_int_distribution<int> c(-3, 3), l(-1, 2);
    std::vector<MotClass> v;
    for (int i = 0; i <= deg; ++i) {
        v.push_back(MotClass(c(rng)) * MotClass::L_pow(l(rng)) + MotClass(c(rng)));
    }
    return MotPoly(v);
}

} // namespace

TEST(Expand, SpecExamples)
{
    const auto g = expand(series("1", {{1, {1}, 1}}), 3);
    EXPECT_EQ(g, (std::vector<MotClass>{1, L, L.pow(2), L.pow(3)}));
    const auto sq = expand(series("1", {{1, {1}, 2}}), 10);
    for (int n = 0; n <= 10; ++n) {
        EXPECT_EQ(sq[static_cast<std::size_t>(n)], MotClass(n + 1) * L.pow(n));
    }
    // L + (L - 1) L T / (1 - L T) = L (1 - T) / (1 - L T)
    const auto toy = expand(series("L - L*T", {{1, {1}, 1}}), 8);
    EXPECT_EQ(toy[0], L);
    for (int n = 1; n <= 8; ++n) {
        EXPECT_EQ(toy[static_cast<std::size_t>(n)], (L - 1) * L.pow(n));
    }
    EXPECT_EQ(expand(series("L^2 - 1", {}), 0), (std::vector<MotClass>{L.pow(2) - 1}));
}

TEST(Expand, MatchesBinomialConvolution)
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_factors(rng, 1 + trial % 3);
        const RationalMotSeries r(LaurentPolyMot::from_poly(random_poly(rng, 3)), f);
        const auto c = expand(r, 25);
        for (int n = 0; n <= 25; ++n) {
            EXPECT_EQ(c[static_cast<std::size_t>(n)], convolution_oracle(r, n));
        }
    }
}

TEST(Resultant, SpecExamples)
{
    EXPECT_EQ(resultant_closed_form(1, 1, 2, 1), L.pow(2) - L);
    EXPECT_TRUE(resultant_closed_form(1, 2, 1, 2).is_zero());
    EXPECT_EQ(resultant_closed_form(0, 1, 1, 2), 1 - L);
}

TEST(Resultant, ClosedFormMatchesSylvesterDeterminant)
{
    for (int a = 0; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            for (int a2 = 0; a2 <= 4; ++a2) {
                for (int b2 = 1; b2 <= 4; ++b2) {
                    const MotClass closed = resultant_closed_form(a, b, a2, b2);
                    const MotClass syl =
                        sylvester_resultant(MotPoly::binomial_factor(a, b), MotPoly::binomial_factor(a2, b2));
                    EXPECT_EQ(closed, syl) << a << " " << b << " " << a2 << " " << b2;
                    EXPECT_EQ(closed.is_unit(), !proportional(a, b, a2, b2));
                }
            }
        }
    }
}

TEST(Berkowitz, MatchesCofactorExpansionOverIntegers)
{
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<Int>> m(3, std::vector<Int>(3));
        for (auto& row : m) {
            for (auto& x : row) {
                x = c(rng);
            }
        }
        const Int expect = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        EXPECT_EQ(berkowitz_det(m), expect);
    }
}

TEST(PartialFractions, SpecExamples)
{
    const auto two = partial_fractions(MotPoly(1), {{1, {1}, 1}, {0, {1}, 1}});
    EXPECT_TRUE(two.Q.is_zero());
    EXPECT_EQ(two.Qij[0][0], MotPoly(L / (L - 1)));
    EXPECT_EQ(two.Qij[1][0], MotPoly(-(L - 1).inverse()));

    const auto sq = partial_fractions(MotPoly(1), {{1, {1}, 2}});
    EXPECT_TRUE(sq.Q.is_zero());
    EXPECT_TRUE(sq.Qij[0][0].is_zero());
    EXPECT_EQ(sq.Qij[0][1], MotPoly(1));

    const auto t = partial_fractions(MotPoly::monomial(1, 1), {{1, {1}, 1}});
    EXPECT_EQ(t.Q, MotPoly(-MotClass::L_pow(-1)));
    EXPECT_EQ(t.Qij[0][0], MotPoly(MotClass::L_pow(-1)));

    EXPECT_THROW(partial_fractions(MotPoly(1), {{1, {2}, 1}, {2, {4}, 1}}), ValidationError);
}

TEST(PartialFractions, RecombinesAndIsIdempotentOnRandomInstances)
{
    std::mt19937 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_factors(rng, 1 + trial % 3);
        const MotPoly P = random_poly(rng, trial % 7);
        const auto pf = partial_fractions(P, f);
        EXPECT_EQ(pf.recombined_numerator(), P);
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (const auto& q : pf.Qij[i]) {
                EXPECT_LT(q.degree(), f[i].b[0]);
            }
        }
        const auto again = partial_fractions(pf.recombined_numerator(), f);
        EXPECT_EQ(again.Q, pf.Q);
        EXPECT_EQ(again.Qij, pf.Qij);
        if (trial < 20) {
            const RationalMotSeries orig(LaurentPolyMot::from_poly(P), f);
            // sum of the simple elements, expanded term by term
            RationalMotSeries sum = RationalMotSeries::polynomial(LaurentPolyMot::from_poly(pf.Q));
            for (std::size_t i = 0; i < f.size(); ++i) {
                for (int j = 1; j <= f[i].mult; ++j) {
                    sum = sum + RationalMotSeries(LaurentPolyMot::from_poly(pf.Qij[i][static_cast<std::size_t>(j - 1)]),
                                                  {{f[i].a, f[i].b, j}});
                }
            }
            EXPECT_EQ(expand(sum, 100), expand(orig, 100));
        }
    }
}

TEST(Specialize, SpecExamples)
{
    const std::vector<std::string> vars{"Ta", "Tb"};
    const RationalMotSeries r(LaurentPolyMot::constant(vars, 1), {{1, {1, 0}, 1}});
    const auto s = specialize_lambda(r, {2, 1});
    EXPECT_EQ(s.factors(), (std::vector<SeriesFactor>{{1, {2}, 1}}));
    const RationalMotSeries m(parse_laurent("Ta*Tb", vars), {});
    EXPECT_EQ(specialize_lambda(m, {1, 3}).num(), parse_laurent("T^4"));
    // rho' specialization of 1/(1 - L^{rho-1} T_a) with rho = 3
    const RationalMotSeries rho(parse_laurent("1", {"Ta"}), {{2, {1}, 1}});
    EXPECT_EQ(specialize_lambda(rho, {2}).factors(), (std::vector<SeriesFactor>{{2, {2}, 1}}));
}

TEST(Dagger, SpecExamples)
{
    EXPECT_EQ(evaluate_dagger_at_Linv(series("1", {{0, {1}, 1}})), L / (L - 1));
    EXPECT_THROW(evaluate_dagger_at_Linv(series("(L - 1)*L*T", {{1, {1}, 1}})), ValidationError);
    EXPECT_EQ(evaluate_dagger_at_Linv(series("1", {{1, {2}, 1}})), L / (L - 1));
}

TEST(Dagger, CommutesWithCounting)
{
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> ad(0, 2), extra(1, 3), md(1, 2);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<SeriesFactor> f;
        for (int k = 0; k < 2; ++k) {
            const int a = ad(rng);
            f.push_back({a, {a + extra(rng)}, md(rng)});
        }
        const RationalMotSeries r(LaurentPolyMot::from_poly(random_poly(rng, 3)), f);
        const MotClass v = evaluate_dagger_at_Linv(r);
        for (int q : {2, 3, 5}) {
            EXPECT_EQ(count_realize(v, q), numeric_value(r, q));
        }
    }
}

TEST(MergeProportional, LiftsToLcmShape)
{
    const RationalMotSeries r = series("1", {{1, {2}, 1}, {2, {4}, 1}, {0, {1}, 1}});
    const auto m = merge_proportional(r);
    EXPECT_TRUE(m.same_function(r));
    EXPECT_EQ(m.factors().size(), 2u);
    EXPECT_EQ(expand(m, 30), expand(r, 30));
    const RationalMotSeries r3 = series("1 + T", {{1, {2}, 2}, {3, {6}, 1}});
    const auto m3 = merge_proportional(r3);
    EXPECT_EQ(m3.factors(), (std::vector<SeriesFactor>{{3, {6}, 3}}));
    EXPECT_EQ(expand(m3, 40), expand(r3, 40));
}

TEST(Serialization, TextRoundTrip)
{
    const RationalMotSeries r = series("L + (L - 1)*L*T - T^3/(L^2 - 1)", {{1, {1}, 2}});
    EXPECT_EQ(parse_laurent(r.num().str()), r.num());
}

TEST(Tauberian, SpecExamples)
{
    const auto r1 = tauberian_report(series("1", {{1, {1}, 1}}), 1, 1);
    ASSERT_EQ(r1.classes.size(), 1u);
    EXPECT_EQ(r1.classes[0].tag, TauberCase::Case2);
    EXPECT_EQ(r1.classes[0].dim_minus_n, 0);
    EXPECT_EQ(r1.classes[0].log_nu_exponent, 0);
    EXPECT_TRUE(r1.verified);

    const auto r2 = tauberian_report(series("1", {{1, {1}, 2}}), 1, 2);
    EXPECT_EQ(r2.classes[0].tag, TauberCase::Case2);
    EXPECT_EQ(r2.classes[0].dim_minus_n, 0);
    EXPECT_EQ(r2.classes[0].log_nu_exponent, 1);
    EXPECT_TRUE(r2.verified);

    const auto r3 = tauberian_report(series("1", {{2, {2}, 1}}), 2, 1);
    ASSERT_EQ(r3.classes.size(), 2u);
    EXPECT_EQ(r3.classes[0].tag, TauberCase::Case2);
    EXPECT_EQ(r3.classes[0].dim_minus_n, 0);
    EXPECT_EQ(r3.classes[1].tag, TauberCase::EmptyClass);
    EXPECT_TRUE(r3.verified);

    const auto toy = tauberian_report(series("L - L*T", {{1, {1}, 1}}), 1, 1);
    EXPECT_EQ(toy.classes[0].dim_minus_n, 1);
    EXPECT_EQ(toy.classes[0].log_nu_exponent, 0);
    EXPECT_EQ(toy.P_at_Linv, L - 1);
    EXPECT_EQ(toy.effectivity, Effectivity::Certified);
}

TEST(Tauberian, MixedFactorsAndCase1)
{
    // (1 - L^2 T^2)^-2 (1 - L T^3)^-1 (1 - T)^-1 with an odd numerator term
    const auto r = tauberian_report(series("1 + L*T", {{2, {2}, 2}, {1, {3}, 1}, {0, {1}, 1}}), 2, 2);
    EXPECT_TRUE(r.verified);
    for (const auto& c : r.classes) {
        EXPECT_EQ(c.tag, TauberCase::Case2);
        EXPECT_EQ(c.log_nu_exponent, 1);
    }
    // no T^odd contribution from the main factor: class 1 is Case1
    const auto c1 = tauberian_report(series("1", {{2, {2}, 1}, {0, {1}, 1}}), 2, 1);
    EXPECT_TRUE(c1.verified);
    EXPECT_EQ(c1.classes[1].tag, TauberCase::Case2);
    // 1/(1 - L^2 T^2) + T/(1 - T^2): odd coefficients stay of dimension 0
    const auto c2 = tauberian_report(series("1 + T - T^2 - L^2*T^3", {{2, {2}, 1}, {0, {2}, 1}}), 2, 1);
    EXPECT_TRUE(c2.verified);
    EXPECT_EQ(c2.classes[0].tag, TauberCase::Case2);
    EXPECT_EQ(c2.classes[1].tag, TauberCase::Case1);
    EXPECT_TRUE(c2.classes[1].witnesses[0].is_zero());
}

TEST(Tauberian, RejectsBadShapes)
{
    EXPECT_THROW(tauberian_report(series("1", {{1, {1}, 1}, {2, {2}, 1}}), 1, 1), ValidationError);
    EXPECT_THROW(tauberian_report(series("1", {{1, {1}, 1}}), 1, 2), ValidationError);
}
