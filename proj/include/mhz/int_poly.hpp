#pragma once

// Dense univariate polynomials with arbitrary-precision integer coefficients,
// plus the cyclotomic polynomials used to encode the S-denominators.

#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace mhz {

class IntPoly {
public:
    IntPoly() = default;
    IntPoly(Int c)
    {
        if (c != 0) {
            coeffs_.push_back(std::move(c));
        }
    }
    IntPoly(int c) : IntPoly(Int(c)) {}
    explicit IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPoly monomial(Int c, int degree)
    {
        std::vector<Int> v(static_cast<std::size_t>(degree) + 1);
        v.back() = std::move(c);
        return IntPoly(std::move(v));
    }
    static IntPoly x() { return monomial(1, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return coeffs_; }
    const Int& lead() const { return coeffs_.back(); }

    Int coeff(int i) const
    {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) {
            return 0;
        }
        return coeffs_[static_cast<std::size_t>(i)];
    }

    /// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
    int low_degree() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }

    /// Divide by x^k; the low k coefficients must be zero.
    IntPoly shift_down(int k) const
    {
        if (k <= 0) {
            return *this;
        }
        std::vector<Int> v(coeffs_.begin() + std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(coeffs_.size())),
                           coeffs_.end());
        return IntPoly(std::move(v));
    }

    IntPoly shift_up(int k) const
    {
        if (k <= 0 || is_zero()) {
            return *this;
        }
        std::vector<Int> v(static_cast<std::size_t>(k), Int(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return IntPoly(std::move(v));
    }

    Int content() const
    {
        Int g = 0;
        for (const auto& c : coeffs_) {
            g = gcd(g, c);
        }
        return g;
    }

    /// p(x) -> p(x^k)
    IntPoly inflate(int k) const
    {
        if (is_zero()) {
            return {};
        }
        std::vector<Int> v(static_cast<std::size_t>(degree() * k) + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            v[i * static_cast<std::size_t>(k)] = coeffs_[i];
        }
        return IntPoly(std::move(v));
    }

    Rational eval(const Rational& x) const
    {
        Rational r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            r = r * x + Rational(*it);
        }
        return r;
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b)
    {
        std::vector<Int> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            v[i] += a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            v[i] += b.coeffs_[i];
        }
        return IntPoly(std::move(v));
    }

    friend IntPoly operator-(const IntPoly& a)
    {
        IntPoly r = a;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Int> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return IntPoly(std::move(v));
    }

    IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
    IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    friend bool operator<(const IntPoly& a, const IntPoly& b)
    {
        if (a.coeffs_.size() != b.coeffs_.size()) {
            return a.coeffs_.size() < b.coeffs_.size();
        }
        return a.coeffs_ < b.coeffs_;
    }

    /// Division with remainder by a divisor whose leading coefficient is +-1.
    std::pair<IntPoly, IntPoly> divmod_unit(const IntPoly& d) const
    {
        if (d.is_zero() || (d.lead() != 1 && d.lead() != -1)) {
            throw std::invalid_argument("divmod_unit: divisor must have leading coefficient +-1");
        }
        std::vector<Int> rem = coeffs_;
        const int dd = d.degree();
        if (degree() < dd) {
            return {IntPoly{}, *this};
        }
        std::vector<Int> quot(static_cast<std::size_t>(degree() - dd) + 1);
        for (int i = degree(); i >= dd; --i) {
            Int c = rem[static_cast<std::size_t>(i)];
            if (c == 0) {
                continue;
            }
            if (d.lead() == -1) {
                c = -c;
            }
            quot[static_cast<std::size_t>(i - dd)] = c;
            for (int j = 0; j <= dd; ++j) {
                rem[static_cast<std::size_t>(i - dd + j)] -= c * d.coeffs_[static_cast<std::size_t>(j)];
            }
        }
        return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
    }

    /// Exact quotient by a unit-leading divisor, if it divides.
    std::optional<IntPoly> exact_div(const IntPoly& d) const
    {
        auto [q, r] = divmod_unit(d);
        if (!r.is_zero()) {
            return std::nullopt;
        }
        return q;
    }

    IntPoly div_scalar_exact(const Int& c) const
    {
        std::vector<Int> v = coeffs_;
        for (auto& x : v) {
            x /= c;
        }
        return IntPoly(std::move(v));
    }

    /// Renders with descending degree, e.g. "L^2 - 1".
    std::string str(const std::string& var = "L") const
    {
        if (is_zero()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            Int c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) {
                continue;
            }
            const bool neg = c < 0;
            if (neg) {
                c = -c;
            }
            if (first) {
                if (neg) {
                    os << "-";
                }
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            if (i == 0) {
                os << c;
            } else {
                if (c != 1) {
                    os << c << "*";
                }
                os << var;
                if (i != 1) {
                    os << "^" << i;
                }
            }
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Int> coeffs_;
};

inline IntPoly pow(const IntPoly& p, int e)
{
    IntPoly r = 1;
    for (int i = 0; i < e; ++i) {
        r *= p;
    }
    return r;
}

/// Euler's totient.
inline int totient(int n)
{
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            r -= r / p;
        }
    }
    if (n > 1) {
        r -= r / n;
    }
    return r;
}

/// The d-th cyclotomic polynomial, memoized.
inline const IntPoly& cyclotomic(int d)
{
    if (d < 1) {
        throw std::invalid_argument("cyclotomic: index must be positive");
    }
    static std::mutex mutex;
    static std::map<int, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) {
            return it->second;
        }
    }
    IntPoly p = IntPoly::monomial(1, d) - IntPoly(1);
    for (int e = 1; e < d; ++e) {
        if (d % e == 0) {
            p = *p.exact_div(cyclotomic(e));
        }
    }
    std::lock_guard lock(mutex);
    return cache.emplace(d, std::move(p)).first->second;
}

} // namespace mhz
