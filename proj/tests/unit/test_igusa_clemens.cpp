#include "mhz/igusa_clemens.hpp"

#include <gtest/gtest.h>

using namespace mhz;

namespace {

const MotClass L = MotClass::L();
const MotClass Linv = MotClass::L_pow(-1);

BoundaryDatum toy_bad()
{
    BoundaryDatum D;
    D.n = 1;
    D.alphas = {"a"};
    D.rho["a"] = 2;
    D.betas = {{"E", 1, 0, {}}};
    D.strata[{{}, "E"}] = L;
    D.strata[{{"a"}, "E"}] = MotClass(1);
    return D;
}

BoundaryDatum toy_good()
{
    BoundaryDatum D;
    D.n = 1;
    D.alphas = {"a"};
    D.rho["a"] = 2;
    D.betas = {{"E", 1, 0, {}}};
    D.strata[{{}, "E"}] = L;
    D.integral = {"E"};
    return D;
}

BoundaryDatum two_divisors(bool meet)
{
    BoundaryDatum D;
    D.n = 2;
    D.alphas = {"a1", "a2"};
    D.rho["a1"] = 2;
    D.rho["a2"] = 3;
    D.betas = {{"E", 1, 0, {}}};
    D.strata[{{}, "E"}] = L * L - 2 * L + 1;
    D.strata[{{"a1"}, "E"}] = L - 1;
    D.strata[{{"a2"}, "E"}] = L - 1;
    if (meet) {
        D.strata[{{"a1", "a2"}, "E"}] = MotClass(1);
    }
    return D;
}

SymbolRegistry registry_with(const std::string& name, int dim)
{
    SymbolRegistry reg;
    IntPoly pc = IntPoly::monomial(1, 2 * dim);
    reg.add({name, dim, pc, {{2, Int(1) << dim}, {3, ipow(Int(3), dim)}}, true});
    return reg;
}

} // namespace

TEST(Clemens, Examples)
{
    const auto c1 = clemens(toy_bad());
    EXPECT_EQ(c1.dim, 0);
    EXPECT_EQ(c1.d(), 1);
    ASSERT_EQ(c1.maximal.size(), 1u);
    EXPECT_EQ(c1.maximal[0], Face{"a"});

    const auto c2 = clemens(two_divisors(true));
    EXPECT_EQ(c2.dim, 1);
    ASSERT_EQ(c2.maximal.size(), 1u);
    EXPECT_EQ(c2.maximal[0], (Face{"a1", "a2"}));
    EXPECT_TRUE(c2.contains({"a1"}));

    const auto c3 = clemens(two_divisors(false));
    EXPECT_EQ(c3.dim, 0);
    EXPECT_EQ(c3.maximal.size(), 2u);
}

TEST(Clemens, DownwardClosedAndIgnoresHigherMultiplicity)
{
    BoundaryDatum D = two_divisors(true);
    D.strata.erase({{"a1"}, "E"});
    const auto c = clemens(D);
    EXPECT_TRUE(c.contains({"a1"}));
    EXPECT_EQ(c.faces.size(), 3u);

    BoundaryDatum M = toy_bad();
    M.betas.push_back({"F", 2, 0, {}});
    M.strata.erase({{"a"}, "E"});
    M.strata[{{"a"}, "F"}] = MotClass(1);
    EXPECT_EQ(clemens(M).dim, -1);
    EXPECT_TRUE(local_Z_trivial(M).same_function(RationalMotSeries(LaurentPolyMot::constant({"T_a"}, 1), {})));
}

TEST(LocalZTrivial, Toy)
{
    const RationalMotSeries Z = local_Z_trivial(toy_bad());
    const RationalMotSeries want =
        RationalMotSeries(LaurentPolyMot::constant({"T_a"}, 1), {}) +
        RationalMotSeries(LaurentPolyMot::monomial({"T_a"}, (1 - Linv) * L, {1}), {{1, {1}, 1}});
    EXPECT_TRUE(Z.same_function(want)) << Z.str();
    const auto c = series_coefficients(Z, 4);
    EXPECT_EQ(c.at({0}), MotClass(1));
    for (int m = 1; m <= 4; ++m) {
        EXPECT_EQ(c.at({m}), (L - 1) * MotClass::L_pow(m - 1)) << m;
    }
}

TEST(LocalZTrivial, EmptyBoundary)
{
    BoundaryDatum D;
    D.n = 2;
    D.betas = {{"E1", 1, 1, {}}, {"E2", 1, 0, {}}};
    D.strata[{{}, "E1"}] = L * L;
    D.strata[{{}, "E2"}] = L * L - 1;
    const RationalMotSeries Z = local_Z_trivial(D);
    EXPECT_TRUE(Z.factors().empty());
    EXPECT_EQ(Z.num().eval_all(MotClass(1)), L * L * L * MotClass::L_pow(-2) + (L * L - 1) * MotClass::L_pow(-2));
}

TEST(LocalZTrivial, ConstantTermIsShellMeasure)
{
    const auto c = series_coefficients(local_Z_trivial(toy_bad()), 0);
    EXPECT_EQ(count_realize(c.at({0}), 3), Rational(1));
    // chart version: the T^0 coefficient is the measure of {x : x not in the boundary}
    MonomialChart chart{2, {0}, {2}, 0};
    const auto c2 = series_coefficients(local_Z_trivial(chart.datum()), 0);
    EXPECT_EQ(count_realize(c2.at({0}), 3), jet_count_oracle(chart, {0}, 1, 3));
}

TEST(LocalZTrivial, Errors)
{
    BoundaryDatum D = toy_bad();
    D.strata[{{"a"}, "E"}] = MotClass::symbol("P");
    EXPECT_THROW(local_Z_trivial(D), ValidationError);
    const SymbolRegistry reg = registry_with("P", 0);
    EXPECT_NO_THROW(local_Z_trivial(D, reg));

    BoundaryDatum bad_dim = toy_bad();
    bad_dim.strata[{{"a"}, "E"}] = L;
    EXPECT_THROW(local_Z_trivial(bad_dim), ValidationError);

    BoundaryDatum bad_rho = toy_bad();
    bad_rho.rho["a"] = 1;
    EXPECT_THROW(local_Z_trivial(bad_rho), ValidationError);
}

TEST(LocalZTrivial, GroupingIdentity)
{
    EXPECT_TRUE(grouping_identity(toy_bad()));
    EXPECT_TRUE(grouping_identity(two_divisors(true)));
    EXPECT_TRUE(grouping_identity(two_divisors(false)));
    BoundaryDatum E = two_divisors(true);
    E.betas.push_back({"F", 1, 1, {{"a2", 1}}});
    E.strata[{{}, "F"}] = L * L;
    E.strata[{{"a2"}, "F"}] = L;
    EXPECT_TRUE(grouping_identity(E));
    const GroupedZ g = local_Z_grouped(E);
    for (const auto& P : g.P) {
        EXPECT_TRUE(P.is_power_series());
    }
    EXPECT_TRUE(grouping_identity(MonomialChart{3, {0, 2}, {2, 4}, 1}.datum()));
}

TEST(LocalZIntegralPlace, Examples)
{
    const LaurentPolyMot Z = local_Z_integral_place(toy_good());
    EXPECT_EQ(Z, LaurentPolyMot::constant({"T_a"}, 1));
    const auto v = integral_place_value(toy_good());
    EXPECT_EQ(v.value, MotClass(1));
    EXPECT_EQ(v.effectivity, Effectivity::Certified);

    BoundaryDatum two = toy_good();
    const SymbolRegistry reg = registry_with("C", 1);
    two.betas.push_back({"F", 1, 1, {{"a", 2}}});
    two.strata[{{}, "F"}] = MotClass::symbol("C");
    two.integral.insert("F");
    const LaurentPolyMot Z2 = local_Z_integral_place(two, reg);
    EXPECT_EQ(Z2.terms().size(), 2u);
    EXPECT_EQ(Z2.coeff({2}), MotClass::symbol("C"));
    // T_a -> L^{-1}: 1 + L^{-2} C
    EXPECT_EQ(integral_place_value(two, reg).value, 1 + MotClass::L_pow(-2) * MotClass::symbol("C"));
    EXPECT_EQ(integral_place_value(two, reg).effectivity, Effectivity::Certified);

    BoundaryDatum none = toy_good();
    none.integral.clear();
    EXPECT_THROW(local_Z_integral_place(none), ValidationError);
}

TEST(IgusaExponential, ListedCases)
{
    const BoundaryDatum one = toy_bad();
    const auto r0 = igusa_with_exponential(one, {{"a", 0}});
    EXPECT_EQ(r0.poles, std::vector<std::string>{"a"});
    EXPECT_FALSE(r0.strict);
    const RationalMotSeries Z = local_Z_trivial(one);
    ASSERT_EQ(Z.factors().size(), r0.height.size());
    EXPECT_EQ(Z.factors()[0], r0.height[0]);

    const auto r1 = igusa_with_exponential(one, {{"a", 1}});
    EXPECT_TRUE(r1.poles.empty());
    EXPECT_TRUE(r1.strict);

    const auto r2 = igusa_with_exponential(two_divisors(true), {{"a1", 0}, {"a2", 1}});
    EXPECT_EQ(r2.poles, std::vector<std::string>{"a1"});
    ASSERT_EQ(r2.raw.size(), 1u);
    EXPECT_EQ(r2.raw[0].a, -1);
    EXPECT_EQ(r2.height[0].a, 1);
    EXPECT_TRUE(r2.strict);
    EXPECT_EQ(r2.sub.dim, 0);
}

TEST(IgusaExponential, BruteForceSupport)
{
    struct Case {
        std::vector<int> d;
        std::vector<int> poles;
    };
    for (const auto& c : {Case{{0}, {0}}, Case{{1}, {}}, Case{{0, 1}, {0}}, Case{{0, 0}, {0, 1}}, Case{{1, 1}, {}}}) {
        for (int q : {2, 3}) {
            const auto table = exponential_chart_brute(c.d, q, 3);
            const auto sup = exponential_support(table, static_cast<int>(c.d.size()), 3, q);
            EXPECT_EQ(sup.poles, c.poles) << q;
            EXPECT_TRUE(sup.cleared) << q;
        }
    }
    // d = 1 at q = 3: constant term is the unit integral of e(1/u), i.e. -1/3
    const auto t = exponential_chart_brute({1}, 3, 3);
    EXPECT_EQ(t.at({0}), CycValue::from_rational(3, Rational(-1, 3)));
    EXPECT_TRUE(t.at({1}).is_zero());
}

TEST(LeadingConstant, Examples)
{
    const auto toy = leading_constant({toy_bad()}, {toy_good()}, 1);
    EXPECT_EQ(toy.value, 1 - Linv);
    EXPECT_EQ(toy.effectivity, Effectivity::Certified);
    EXPECT_TRUE(toy.diagnostic.empty());
    EXPECT_EQ(toy.d_v, std::vector<int>{1});

    // matches (1 - LT) Z(T) at T = L^-1 for the toy
    const RationalMotSeries Zl = specialize_rho_prime(local_Z_trivial(toy_bad()), toy_bad());
    EXPECT_EQ(evaluate_dagger_at_Linv(Zl.times_factor({1, {1}, 1})), 1 - Linv);

    const auto two = leading_constant({toy_bad(), two_divisors(true)}, {}, 2);
    const auto first = leading_constant({toy_bad()}, {}, 2);
    const auto second = leading_constant({two_divisors(true)}, {}, 2);
    EXPECT_EQ(two.value, first.value * second.value);
    EXPECT_EQ(first.value, 2 * (1 - Linv));

    BoundaryDatum empty = toy_bad();
    empty.strata.erase({{"a"}, "E"});
    empty.strata.erase({{}, "E"});
    const auto z = leading_constant({empty}, {}, 1);
    EXPECT_TRUE(z.value.is_zero());
    EXPECT_FALSE(z.diagnostic.empty());

    EXPECT_THROW(leading_constant({two_divisors(true)}, {}, 1), ValidationError);
}

TEST(LeadingConstant, AgreesWithSpecializedPole)
{
    // (1 - L^a T^a)^d Z_lambda at T = L^-1, computed through the rational series
    for (const auto& D : {toy_bad(), two_divisors(true), two_divisors(false), MonomialChart{2, {0, 1}, {3, 3}, 0}.datum()}) {
        const int a = 2;
        const int d = clemens(D).d();
        const RationalMotSeries P = clear_main_pole(specialize_rho_prime(local_Z_trivial(D), D), a, d);
        const MotClass direct = evaluate_dagger_at_Linv(P);
        EXPECT_EQ(direct, leading_constant({D}, {}, a).value) << D.alphas.size();
    }
}

TEST(JetOracle, Examples)
{
    EXPECT_EQ(jet_count_oracle({1, {0}, {0}, 0}, {1}, 2, 3), Rational(2, 9));
    EXPECT_EQ(jet_count_oracle({1, {0}, {2}, 0}, {1}, 2, 3), Rational(2, 3) * Rational(3));
    const Rational x = jet_count_oracle({1, {0}, {2}, 0}, {1}, 2, 3);
    EXPECT_EQ(jet_count_oracle({2, {0, 1}, {2, 2}, 0}, {1, 1}, 2, 3), x * x);
    EXPECT_THROW(jet_count_oracle({1, {0}, {2}, 0}, {3}, 2, 3), ValidationError);
    EXPECT_THROW(jet_count_oracle({3, {0}, {2}, 0}, {1}, 6, 5), CapExceeded);
}

TEST(JetOracle, MatchesClosedForm)
{
    const std::vector<MonomialChart> charts{{1, {0}, {2}, 0}, {2, {0}, {2}, 0}, {2, {0, 1}, {2, 3}, 0},
                                            {2, {1, 0}, {3, 2}, 1}};
    for (const auto& chart : charts) {
        const BoundaryDatum D = chart.datum();
        const auto coeffs = series_coefficients(local_Z_trivial(D), 3);
        const int k = static_cast<int>(chart.coord.size());
        for (int q : {2, 3}) {
            std::vector<int> m(static_cast<std::size_t>(k), 0);
            for (;;) {
                int tot = 0;
                for (int x : m) {
                    tot += x;
                }
                if (tot <= 3) {
                    const auto it = coeffs.find(m);
                    const Rational closed = it == coeffs.end() ? Rational(0) : count_realize(it->second, q);
                    EXPECT_EQ(closed, jet_count_oracle(chart, m, tot + 1, q)) << q;
                }
                int i = 0;
                for (; i < k; ++i) {
                    if (++m[static_cast<std::size_t>(i)] <= 3) {
                        break;
                    }
                    m[static_cast<std::size_t>(i)] = 0;
                }
                if (i == k) {
                    break;
                }
            }
        }
    }
}
