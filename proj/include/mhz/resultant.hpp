#pragma once

// Resultants of the binomials 1 - L^a T^b.

#include "linalg.hpp"
#include "mot_poly.hpp"

#include <numeric>

namespace mhz {

/// Res(1 - L^a T^b, 1 - L^a' T^b') = (-1)^b' L^{a b'} (1 - L^{(a' b - a b')/g})^g with g = gcd(b, b').
inline MotClass resultant_closed_form(int a, int b, int a2, int b2)
{
    if (b <= 0 || b2 <= 0) {
        throw ValidationError("resultant needs positive T-degrees");
    }
    const int g = std::gcd(b, b2);
    const MotClass base = 1 - MotClass::L_pow((a2 * b - a * b2) / g);
    MotClass r = MotClass::L_pow(a * b2) * base.pow(g);
    return b2 % 2 == 0 ? r : -r;
}

inline std::vector<std::vector<MotClass>> sylvester_matrix(const MotPoly& p, const MotPoly& q)
{
    const int m = p.degree();
    const int n = q.degree();
    if (m < 0 || n < 0) {
        throw ValidationError("Sylvester matrix of the zero polynomial");
    }
    const auto size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MotClass>> s(size, std::vector<MotClass>(size));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= m; ++k) {
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = p.coeff(m - k);
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k <= n; ++k) {
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = q.coeff(n - k);
        }
    }
    return s;
}

inline MotClass sylvester_resultant(const MotPoly& p, const MotPoly& q)
{
    return berkowitz_det(sylvester_matrix(p, q));
}

/// Shapes (a, b), (a', b') are proportional iff a b' = a' b.
inline bool proportional(int a, int b, int a2, int b2) { return a * b2 == a2 * b; }

} // namespace mhz
