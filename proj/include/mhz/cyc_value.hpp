#pragma once

// Exact elements of Z[zeta_p][1/p]: an integer polynomial in zeta reduced modulo Phi_p,
// divided by p^e. Coefficients are int64 with overflow checks.

#include "numeric.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mhz {

class CycValue {
public:
    CycValue() = default;
    explicit CycValue(int p, std::int64_t n = 0) : p_(p), c_(basis_size(p), 0)
    {
        c_[0] = n;
        normalize();
    }

    static CycValue zeta_pow(int p, std::int64_t k)
    {
        CycValue r(p);
        r.add_zeta(k, 1);
        r.normalize();
        return r;
    }

    /// Rational with a denominator that is a power of p.
    static CycValue from_rational(int p, const Rational& r)
    {
        Int den = denominator(r);
        int e = 0;
        while (den % p == 0) {
            den /= p;
            ++e;
        }
        if (den != 1) {
            throw ValidationError("rational " + to_string(r) + " has a denominator prime to " + std::to_string(p));
        }
        const Int num = numerator(r);
        if (num > Int(INT64_MAX) || num < Int(INT64_MIN)) {
            throw std::overflow_error("rational numerator exceeds int64");
        }
        CycValue v(p, static_cast<std::int64_t>(num));
        v.e_ = e;
        v.normalize();
        return v;
    }

    /// Raw constructor: sum_j c[j] zeta^j / p^e for j < p (any length up to p).
    static CycValue from_coeffs(int p, const std::vector<std::int64_t>& c, int e)
    {
        if (static_cast<int>(c.size()) > p) {
            throw ValidationError("too many cyclotomic coefficients");
        }
        CycValue v(p);
        for (std::size_t j = 0; j < c.size(); ++j) {
            v.add_zeta(static_cast<std::int64_t>(j), c[j]);
        }
        v.e_ = e;
        v.normalize();
        return v;
    }

    int p() const { return p_; }
    int exponent() const { return e_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (auto x : c_) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }

    bool is_rational() const
    {
        for (std::size_t j = 1; j < c_.size(); ++j) {
            if (c_[j] != 0) {
                return false;
            }
        }
        return true;
    }

    Rational to_rational() const
    {
        if (!is_rational()) {
            throw ValidationError("cyclotomic value " + str() + " is not rational");
        }
        return Rational(Int(c_[0]), ipow(Int(p_), static_cast<unsigned>(e_)));
    }

    /// Multiply by p^k (k may be negative).
    CycValue scaled_p(int k) const
    {
        CycValue r = *this;
        r.e_ -= k;
        r.normalize();
        return r;
    }

    CycValue times_zeta(std::int64_t k) const
    {
        CycValue r(p_);
        r.e_ = e_;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            r.add_zeta(static_cast<std::int64_t>(j) + k, c_[j]);
        }
        r.normalize();
        return r;
    }

    friend CycValue operator+(const CycValue& a, const CycValue& b)
    {
        const int p = common_p(a, b);
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        const int e = std::max(a.e_, b.e_);
        const std::int64_t fa = ipow64(p, e - a.e_);
        const std::int64_t fb = ipow64(p, e - b.e_);
        CycValue r(p);
        r.e_ = e;
        for (std::size_t j = 0; j < r.c_.size(); ++j) {
            r.c_[j] = checked_add(checked_mul(a.c_[j], fa), checked_mul(b.c_[j], fb));
        }
        r.normalize();
        return r;
    }

    friend CycValue operator-(const CycValue& a)
    {
        CycValue r = a;
        for (auto& x : r.c_) {
            x = -x;
        }
        return r;
    }

    friend CycValue operator-(const CycValue& a, const CycValue& b) { return a + (-b); }

    friend CycValue operator*(const CycValue& a, const CycValue& b)
    {
        const int p = common_p(a, b);
        CycValue r(p);
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] != 0) {
                    r.add_zeta(static_cast<std::int64_t>(i + j), checked_mul(a.c_[i], b.c_[j]));
                }
            }
        }
        r.e_ = a.e_ + b.e_;
        r.normalize();
        return r;
    }

    friend CycValue operator*(const CycValue& a, std::int64_t k)
    {
        CycValue r = a;
        for (auto& x : r.c_) {
            x = checked_mul(x, k);
        }
        r.normalize();
        return r;
    }

    CycValue& operator+=(const CycValue& o) { return *this = *this + o; }
    CycValue& operator-=(const CycValue& o) { return *this = *this - o; }
    CycValue& operator*=(const CycValue& o) { return *this = *this * o; }

    friend bool operator==(const CycValue& a, const CycValue& b)
    {
        return a.p_ == b.p_ && a.e_ == b.e_ && a.c_ == b.c_;
    }

    std::string str() const
    {
        if (is_rational()) {
            return to_string(to_rational());
        }
        std::string s;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) {
                continue;
            }
            const std::int64_t v = c_[j];
            if (!s.empty()) {
                s += v < 0 ? " - " : " + ";
            } else if (v < 0) {
                s += "-";
            }
            const std::int64_t av = v < 0 ? -v : v;
            const std::string z = "z" + std::to_string(p_) + (j == 1 ? "" : "^" + std::to_string(j));
            if (j == 0) {
                s += std::to_string(av);
            } else {
                s += (av == 1 ? "" : std::to_string(av) + "*") + z;
            }
        }
        if (e_ == 0) {
            return s;
        }
        return "(" + s + ")/" + std::to_string(p_) + (e_ == 1 ? "" : "^" + std::to_string(e_));
    }

private:
    static std::size_t basis_size(int p)
    {
        if (!is_prime(p)) {
            throw ValidationError("cyclotomic values need a prime q, got " + std::to_string(p));
        }
        return static_cast<std::size_t>(p - 1);
    }

    static int common_p(const CycValue& a, const CycValue& b)
    {
        if (a.p_ != b.p_) {
            throw ValidationError("mixing cyclotomic values for different primes");
        }
        return a.p_;
    }

    // Adds v * zeta^k, using zeta^{p-1} = -(1 + ... + zeta^{p-2}).
    void add_zeta(std::int64_t k, std::int64_t v)
    {
        const auto j = static_cast<std::size_t>(((k % p_) + p_) % p_);
        if (j + 1 == static_cast<std::size_t>(p_)) {
            for (auto& x : c_) {
                x = checked_add(x, -v);
            }
        } else {
            c_[j] = checked_add(c_[j], v);
        }
    }

    void normalize()
    {
        if (is_zero()) {
            e_ = 0;
            return;
        }
        if (e_ < 0) {
            const std::int64_t f = ipow64(p_, -e_);
            for (auto& x : c_) {
                x = checked_mul(x, f);
            }
            e_ = 0;
        }
        while (e_ > 0) {
            for (auto x : c_) {
                if (x % p_ != 0) {
                    return;
                }
            }
            for (auto& x : c_) {
                x /= p_;
            }
            --e_;
        }
    }

    int p_ = 2;
    int e_ = 0;
    std::vector<std::int64_t> c_ = std::vector<std::int64_t>(1, 0);
};

inline std::ostream& operator<<(std::ostream& os, const CycValue& v) { return os << v.str(); }

} // namespace mhz
