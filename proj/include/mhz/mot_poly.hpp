#pragma once

// Dense univariate polynomials in T with MotClass coefficients.

#include "mot_class.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mhz {

class MotPoly {
public:
    MotPoly() = default;
    MotPoly(MotClass c)
    {
        if (!c.is_zero()) {
            c_.push_back(std::move(c));
        }
    }
    MotPoly(int c) : MotPoly(MotClass(c)) {}
    explicit MotPoly(std::vector<MotClass> c) : c_(std::move(c)) { trim(); }

    static MotPoly monomial(MotClass c, int deg)
    {
        std::vector<MotClass> v(static_cast<std::size_t>(deg) + 1);
        v.back() = std::move(c);
        return MotPoly(std::move(v));
    }

    /// 1 - L^a T^b
    static MotPoly binomial_factor(int a, int b) { return MotPoly(1) - monomial(MotClass::L_pow(a), b); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<MotClass>& coeffs() const { return c_; }
    const MotClass& lead() const { return c_.back(); }

    MotClass coeff(int i) const
    {
        if (i < 0 || i > degree()) {
            return {};
        }
        return c_[static_cast<std::size_t>(i)];
    }

    friend MotPoly operator+(const MotPoly& a, const MotPoly& b)
    {
        std::vector<MotClass> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            v[i] += a.c_[i];
        }
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            v[i] += b.c_[i];
        }
        return MotPoly(std::move(v));
    }

    friend MotPoly operator-(const MotPoly& a)
    {
        MotPoly r = a;
        for (auto& x : r.c_) {
            x = -x;
        }
        return r;
    }

    friend MotPoly operator-(const MotPoly& a, const MotPoly& b) { return a + (-b); }

    friend MotPoly operator*(const MotPoly& a, const MotPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<MotClass> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (!b.c_[j].is_zero()) {
                    v[i + j] += a.c_[i] * b.c_[j];
                }
            }
        }
        return MotPoly(std::move(v));
    }

    MotPoly& operator+=(const MotPoly& o) { return *this = *this + o; }
    MotPoly& operator-=(const MotPoly& o) { return *this = *this - o; }
    MotPoly& operator*=(const MotPoly& o) { return *this = *this * o; }

    friend bool operator==(const MotPoly& a, const MotPoly& b) { return a.c_ == b.c_; }

    MotPoly pow(int e) const
    {
        MotPoly r = 1;
        for (int i = 0; i < e; ++i) {
            r *= *this;
        }
        return r;
    }

    /// Euclidean division by a divisor whose leading coefficient is a unit.
    std::pair<MotPoly, MotPoly> divmod(const MotPoly& d) const
    {
        if (d.is_zero() || !d.lead().is_unit()) {
            throw ValidationError("polynomial division needs a unit leading coefficient");
        }
        const MotClass inv = d.lead().inverse();
        std::vector<MotClass> rem = c_;
        const int dd = d.degree();
        if (degree() < dd) {
            return {MotPoly{}, *this};
        }
        std::vector<MotClass> quot(static_cast<std::size_t>(degree() - dd) + 1);
        for (int i = degree(); i >= dd; --i) {
            const MotClass& top = rem[static_cast<std::size_t>(i)];
            if (top.is_zero()) {
                continue;
            }
            const MotClass c = top * inv;
            quot[static_cast<std::size_t>(i - dd)] = c;
            for (int j = 0; j <= dd; ++j) {
                rem[static_cast<std::size_t>(i - dd + j)] -= c * d.c_[static_cast<std::size_t>(j)];
            }
        }
        return {MotPoly(std::move(quot)), MotPoly(std::move(rem))};
    }

    MotPoly mod(const MotPoly& d) const { return divmod(d).second; }

    MotClass eval(const MotClass& x) const
    {
        MotClass r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = r * x + *it;
        }
        return r;
    }

    std::string str(const std::string& var = "T") const
    {
        if (is_zero()) {
            return "0";
        }
        std::string s;
        for (int i = 0; i <= degree(); ++i) {
            const MotClass& c = c_[static_cast<std::size_t>(i)];
            if (c.is_zero()) {
                continue;
            }
            if (!s.empty()) {
                s += " + ";
            }
            const std::string cs = "(" + c.str() + ")";
            if (i == 0) {
                s += cs;
            } else {
                s += (c == MotClass(1) ? "" : cs + "*") + var + (i == 1 ? "" : "^" + std::to_string(i));
            }
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) {
            c_.pop_back();
        }
    }

    std::vector<MotClass> c_;
};

inline std::ostream& operator<<(std::ostream& os, const MotPoly& p) { return os << p.str(); }

} // namespace mhz
