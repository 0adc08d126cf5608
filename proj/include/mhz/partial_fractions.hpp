#pragma once

// Partial fractions over MotClass:
//   P / prod P_i^{n_i} = Q + sum_i sum_{j=1..n_i} Q_{i,j} / P_i^j,   P_i = 1 - L^{a_i} T^{b_i},
// with deg Q_{i,j} < b_i. Requires pairwise non-proportional shapes.

#include "rational_series.hpp"
#include "resultant.hpp"

#include <numeric>

namespace mhz {

struct PartialFractions {
    std::vector<SeriesFactor> factors;
    MotPoly Q;
    std::vector<std::vector<MotPoly>> Qij;   // Qij[i][j - 1]

    /// P = Q prod P_k^{n_k} + sum Q_{i,j} P_i^{n_i - j} prod_{k != i} P_k^{n_k}
    MotPoly recombined_numerator() const
    {
        MotPoly d = 1;
        for (const auto& f : factors) {
            d *= MotPoly::binomial_factor(f.a, f.b[0]).pow(f.mult);
        }
        MotPoly p = Q * d;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& fi = factors[i];
            MotPoly others = 1;
            for (std::size_t k = 0; k < factors.size(); ++k) {
                if (k != i) {
                    others *= MotPoly::binomial_factor(factors[k].a, factors[k].b[0]).pow(factors[k].mult);
                }
            }
            const MotPoly pi = MotPoly::binomial_factor(fi.a, fi.b[0]);
            for (int j = 1; j <= fi.mult; ++j) {
                p += Qij[i][static_cast<std::size_t>(j - 1)] * pi.pow(fi.mult - j) * others;
            }
        }
        return p;
    }

    RationalMotSeries as_series() const
    {
        return RationalMotSeries(LaurentPolyMot::from_poly(recombined_numerator()), factors);
    }

    /// q_{i,j,p}: coefficient of T^p in Q_{i,j}.
    MotClass q(std::size_t i, int j, int p) const { return Qij[i][static_cast<std::size_t>(j - 1)].coeff(p); }
};

namespace detail {

/// Inverse of 1 - L^{ak} T^{bk} modulo 1 - L^{ai} T^{bi}.
inline MotPoly binomial_inverse_mod(int ak, int bk, int ai, int bi)
{
    const MotPoly pi = MotPoly::binomial_factor(ai, bi);
    const int g = std::gcd(bi, bk);
    const int s = bi / g;
    const int e = (ak * bi - ai * bk) / g;
    if (e == 0) {
        throw ValidationError("proportional factors have no Bezout identity");
    }
    // (1 - u) sum_{j<s} u^j = 1 - u^s and u^s = L^e modulo P_i, u = L^ak T^bk
    MotPoly sum;
    for (int j = 0; j < s; ++j) {
        sum += MotPoly::monomial(MotClass::L_pow(ak * j), bk * j);
    }
    return (sum * MotPoly((1 - MotClass::L_pow(e)).inverse())).mod(pi);
}

} // namespace detail

inline PartialFractions partial_fractions(const MotPoly& P, const std::vector<SeriesFactor>& factors)
{
    for (const auto& f : factors) {
        if (f.b.size() != 1 || f.b[0] < 1 || f.mult < 1) {
            throw ValidationError("partial fractions need single-variable factors with b >= 1 and multiplicity >= 1");
        }
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t k = i + 1; k < factors.size(); ++k) {
            if (proportional(factors[i].a, factors[i].b[0], factors[k].a, factors[k].b[0])) {
                throw ValidationError("factors (" + std::to_string(factors[i].a) + "," + std::to_string(factors[i].b[0]) +
                                      ") and (" + std::to_string(factors[k].a) + "," + std::to_string(factors[k].b[0]) +
                                      ") are proportional: their resultant is not a unit");
            }
        }
    }
    PartialFractions out;
    out.factors = factors;
    MotPoly residual = P;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& fi = factors[i];
        const MotPoly pi = MotPoly::binomial_factor(fi.a, fi.b[0]);
        const MotPoly mi = pi.pow(fi.mult);
        MotPoly ri = 1;
        MotPoly v = 1;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k == i) {
                continue;
            }
            const auto& fk = factors[k];
            ri *= MotPoly::binomial_factor(fk.a, fk.b[0]).pow(fk.mult);
            v = (v * detail::binomial_inverse_mod(fk.a, fk.b[0], fi.a, fi.b[0]).pow(fk.mult)).mod(pi);
        }
        // Newton lifting from mod P_i to mod P_i^{n_i}
        const MotPoly ri_mod = ri.mod(mi);
        for (int prec = 1; prec < fi.mult; prec *= 2) {
            v = (v * (MotPoly(2) - (ri_mod * v).mod(mi))).mod(mi);
        }
        if (!((ri_mod * v).mod(mi) - MotPoly(1)).is_zero()) {
            throw InvariantError("Bezout inverse failed to lift");
        }
        MotPoly ai = (P.mod(mi) * v).mod(mi);
        residual -= ai * ri;
        // P_i-adic digits of A_i
        std::vector<MotPoly> digits;
        for (int k = 0; k < fi.mult; ++k) {
            auto [quot, rem] = ai.divmod(pi);
            digits.push_back(rem);
            ai = quot;
        }
        if (!ai.is_zero()) {
            throw InvariantError("P_i-adic expansion did not terminate");
        }
        std::vector<MotPoly> qij(static_cast<std::size_t>(fi.mult));
        for (int j = 1; j <= fi.mult; ++j) {
            qij[static_cast<std::size_t>(j - 1)] = digits[static_cast<std::size_t>(fi.mult - j)];
        }
        out.Qij.push_back(std::move(qij));
    }
    MotPoly d = 1;
    for (const auto& f : factors) {
        d *= MotPoly::binomial_factor(f.a, f.b[0]).pow(f.mult);
    }
    auto [q, rem] = residual.divmod(d);
    if (!rem.is_zero()) {
        throw InvariantError("polynomial part is not exact");
    }
    out.Q = q;
    return out;
}

inline PartialFractions partial_fractions(const RationalMotSeries& r)
{
    return partial_fractions(r.num().to_poly(), r.factors());
}

} // namespace mhz
