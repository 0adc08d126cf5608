#include "mhz/io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/random_global.hpp"

using namespace mhz;

TEST(Io, SeriesRoundTrip)
{
    const RationalMotSeries r(parse_laurent("L^-1*T_a*T_b + (L^2 - 3)/(L + 1) - [X]*T_b^2", {"T_a", "T_b"}),
                              {{1, {1, 0}, 2}, {-1, {1, 1}, 1}});
    const Json j = io::to_json(r);
    const RationalMotSeries back = io::series_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.num(), r.num());
    EXPECT_EQ(back.factors(), r.factors());
    EXPECT_EQ(io::to_json(back).dump(), j.dump());
}

TEST(Io, SeriesRejects)
{
    EXPECT_THROW(io::series_from_json(Json::parse(R"({"num": "1", "extra": 0})")), ValidationError);
    EXPECT_THROW(io::series_from_json(Json::parse(R"({"num": "1", "factors": [[1, [1]]]})")), ValidationError);
    EXPECT_THROW(io::series_from_json(Json::parse(R"({"num": "1", "factors": [[1, [1], 1]], "dagger": true})")),
                 ValidationError);
    EXPECT_THROW(io::series_from_json(Json::parse(R"({"num": "1 + S"})")), ValidationError);
}

TEST(Io, DatumRoundTrip)
{
    BoundaryDatum D = MonomialChart{2, {0, 1}, {2, 3}, 1}.datum();
    D.betas.push_back({"F", 2, 0, {{"x1", 1}}});
    D.integral = {"E"};
    const BoundaryDatum back = io::datum_from_json(Json::parse(io::to_json(D).dump()));
    EXPECT_TRUE(io::same_datum(D, back));
    Json bad = io::to_json(D);
    bad["betas"][0]["weight"] = 1;
    EXPECT_THROW(io::datum_from_json(bad), ValidationError);
}

TEST(Io, LocalAndGlobalRoundTrip)
{
    std::mt19937 rng(7);
    for (int q : {2, 3, 5}) {
        for (int rep = 0; rep < 10; ++rep) {
            const GlobalSB Phi = mhz::testing::random_global_sb(q, 1 + rep % 2, rng, 2000);
            const GlobalSB back = io::global_from_json(Json::parse(io::to_json(Phi).dump()), q, Phi.n);
            ASSERT_EQ(back.factors.size(), Phi.factors.size());
            for (const auto& [s, phi] : Phi.factors) {
                EXPECT_TRUE(back.factor(s) == phi);
            }
        }
    }
    const FpLaurent a{-2, {1, 0, 4}};
    const FpLaurent b = io::laurent_from_json(io::to_json(a), "a");
    EXPECT_EQ(b.ord, a.ord);
    EXPECT_EQ(b.digits, a.digits);
}

TEST(Io, CycValueRoundTrip)
{
    const CycValue v = CycValue::zeta_pow(5, 2) * CycValue::from_rational(5, Rational(3, 25)) + CycValue(5, 1);
    EXPECT_EQ(io::cyc_from_json(Json::parse(io::to_json(v).dump()), 5, "v"), v);
    const CycValue r = CycValue::from_rational(3, Rational(-7, 9));
    EXPECT_EQ(io::to_json(r), Json("-7/9"));
    EXPECT_EQ(io::cyc_from_json(io::to_json(r), 3, "r"), r);
    EXPECT_THROW(io::cyc_from_json(Json("1/2"), 3, "r"), ValidationError);
}

TEST(Io, Registry)
{
    const SymbolRegistry reg = io::registry_from_json(Json::parse(
        R"([{"name": "C", "dim": 1, "poincare": [1, 0, 1], "counts": {"3": 4}, "effective": true}])"));
    EXPECT_TRUE(reg.frozen());
    EXPECT_EQ(count_realize(MotClass::symbol("C") * MotClass::L(), 3, reg), Rational(12));
    EXPECT_THROW(io::registry_from_json(Json::parse(R"([{"name": "C", "dim": 1, "poincare": [1, 0, 1], "x": 0}])")),
                 ValidationError);
    EXPECT_THROW(io::registry_from_json(Json::parse(R"([{"name": "C", "dim": 2, "poincare": [1, 0, 1]}])")),
                 ValidationError);
}
