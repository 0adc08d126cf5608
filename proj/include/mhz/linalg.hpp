#pragma once

// Division-free determinant over a commutative ring (Berkowitz).

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mhz {

template <class R>
R berkowitz_det(const std::vector<std::vector<R>>& a)
{
    const std::size_t n = a.size();
    for (const auto& row : a) {
        if (row.size() != n) {
            throw std::invalid_argument("berkowitz_det: matrix must be square");
        }
    }
    if (n == 0) {
        return R(1);
    }
    // char poly coefficients of the leading r x r block, det(xI - A_r) = sum c[i] x^(r-i)
    std::vector<R> c{R(1), -a[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<R> t;
        t.reserve(r + 2);
        t.push_back(R(1));
        t.push_back(-a[r][r]);
        std::vector<R> v(r);
        for (std::size_t i = 0; i < r; ++i) {
            v[i] = a[i][r];
        }
        for (std::size_t k = 0; k < r; ++k) {
            R dot(0);
            for (std::size_t i = 0; i < r; ++i) {
                dot = dot + a[r][i] * v[i];
            }
            t.push_back(-dot);
            if (k + 1 < r) {
                std::vector<R> w(r, R(0));
                for (std::size_t i = 0; i < r; ++i) {
                    for (std::size_t j = 0; j < r; ++j) {
                        w[i] = w[i] + a[i][j] * v[j];
                    }
                }
                v = std::move(w);
            }
        }
        std::vector<R> next(r + 2, R(0));
        for (std::size_t i = 0; i < r + 2; ++i) {
            for (std::size_t j = 0; j <= i && j < c.size(); ++j) {
                next[i] = next[i] + t[i - j] * c[j];
            }
        }
        c = std::move(next);
    }
    return n % 2 == 0 ? c[n] : -c[n];
}

} // namespace mhz
