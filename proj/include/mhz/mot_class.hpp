#pragma once

// Exact arithmetic in Z[L, L^-1, (L^a - 1)^-1], optionally scaled by opaque stratum symbols.
//
// A symbol-free value is stored as  num(L) * L^lexp / prod_d Phi_d(L)^m_d  with
//   - num(0) != 0 (powers of L live in lexp),
//   - Phi_d does not divide num whenever m_d > 0.
// Every element of the denominator monoid S = <L, L^a - 1> factors this way, so two values are
// equal iff their stored forms are identical.

#include "int_poly.hpp"

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mhz {

class SFraction {
public:
    SFraction() = default;
    SFraction(Int c) : SFraction(IntPoly(std::move(c)), 0, {}) {}
    SFraction(int c) : SFraction(Int(c)) {}

    /// num * L^lexp / prod Phi_d^m_d, brought to canonical form.
    SFraction(IntPoly num, int lexp, std::map<int, int> cyclo)
        : num_(std::move(num)), lexp_(lexp), cyclo_(std::move(cyclo))
    {
        canonicalize();
    }

    /// Canonical form of num(L)/den(L); den must be a product of L and cyclotomic factors (up to sign).
    static SFraction from_quotient(const IntPoly& num, const IntPoly& den)
    {
        if (den.is_zero()) {
            throw ValidationError("division by zero");
        }
        IntPoly rest = den;
        int lpow = rest.low_degree();
        rest = rest.shift_down(lpow);
        std::map<int, int> cyclo;
        const int bound = 2 * rest.degree() * rest.degree() + 2;
        for (int d = 1; d <= bound && rest.degree() > 0; ++d) {
            if (totient(d) > rest.degree()) {
                continue;
            }
            while (rest.degree() > 0) {
                auto q = rest.exact_div(cyclotomic(d));
                if (!q) {
                    break;
                }
                rest = *q;
                ++cyclo[d];
            }
        }
        if (rest.degree() != 0 || (rest.lead() != 1 && rest.lead() != -1)) {
            throw ValidationError("denominator " + den.str() + " is not a product of L and (L^a - 1) factors");
        }
        IntPoly n = rest.lead() == -1 ? -num : num;
        return SFraction(std::move(n), -lpow, std::move(cyclo));
    }

    static SFraction L_pow(int k) { return SFraction(IntPoly(1), k, {}); }

    bool is_zero() const { return num_.is_zero(); }
    const IntPoly& num() const { return num_; }
    int lexp() const { return lexp_; }
    const std::map<int, int>& cyclo() const { return cyclo_; }

    /// Denominator as an expanded polynomial in L (the L-power only when lexp < 0).
    IntPoly denominator_poly() const
    {
        IntPoly d = IntPoly::monomial(1, lexp_ < 0 ? -lexp_ : 0);
        for (const auto& [k, m] : cyclo_) {
            d *= pow(cyclotomic(k), m);
        }
        return d;
    }

    IntPoly numerator_poly() const { return lexp_ > 0 ? num_.shift_up(lexp_) : num_; }

    bool is_polynomial() const { return lexp_ >= 0 && cyclo_.empty(); }

    /// Units of the localized ring: +-L^k prod Phi_d^(+-k_d).
    bool is_unit() const { return !is_zero() && factor_numerator().has_value(); }

    SFraction inverse() const
    {
        auto f = factor_numerator();
        if (is_zero() || !f) {
            throw ValidationError("element " + str() + " is not a unit of the localized ring");
        }
        IntPoly n = f->first < 0 ? IntPoly(-1) : IntPoly(1);
        for (const auto& [k, m] : cyclo_) {
            n *= pow(cyclotomic(k), m);
        }
        return SFraction(std::move(n), -lexp_, f->second);
    }

    friend SFraction operator+(const SFraction& a, const SFraction& b)
    {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        const int lexp = std::min(a.lexp_, b.lexp_);
        std::map<int, int> cyclo = a.cyclo_;
        for (const auto& [k, m] : b.cyclo_) {
            cyclo[k] = std::max(cyclo[k], m);
        }
        auto lift = [&](const SFraction& x) {
            IntPoly n = x.num_.shift_up(x.lexp_ - lexp);
            for (const auto& [k, m] : cyclo) {
                auto it = x.cyclo_.find(k);
                const int have = it == x.cyclo_.end() ? 0 : it->second;
                if (m > have) {
                    n *= pow(cyclotomic(k), m - have);
                }
            }
            return n;
        };
        IntPoly num = lift(a) + lift(b);
        return SFraction(std::move(num), lexp, std::move(cyclo));
    }

    friend SFraction operator-(const SFraction& a)
    {
        SFraction r = a;
        r.num_ = -r.num_;
        return r;
    }

    friend SFraction operator-(const SFraction& a, const SFraction& b) { return a + (-b); }

    friend SFraction operator*(const SFraction& a, const SFraction& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::map<int, int> cyclo = a.cyclo_;
        for (const auto& [k, m] : b.cyclo_) {
            cyclo[k] += m;
        }
        return SFraction(a.num_ * b.num_, a.lexp_ + b.lexp_, std::move(cyclo));
    }

    friend bool operator==(const SFraction& a, const SFraction& b)
    {
        return a.num_ == b.num_ && a.lexp_ == b.lexp_ && a.cyclo_ == b.cyclo_;
    }

    /// Value at L = q.
    Rational eval(const Rational& q) const
    {
        Rational r = num_.eval(q) * rpow(q, lexp_);
        for (const auto& [k, m] : cyclo_) {
            r /= rpow(cyclotomic(k).eval(q), m);
        }
        return r;
    }

    std::string str() const
    {
        const IntPoly d = denominator_poly();
        if (d == IntPoly(1)) {
            return numerator_poly().str("L");
        }
        return "(" + numerator_poly().str("L") + ")/(" + d.str("L") + ")";
    }

private:
    void canonicalize()
    {
        if (num_.is_zero()) {
            lexp_ = 0;
            cyclo_.clear();
            return;
        }
        const int k = num_.low_degree();
        num_ = num_.shift_down(k);
        lexp_ += k;
        for (auto it = cyclo_.begin(); it != cyclo_.end();) {
            if (it->second < 0) {
                num_ *= pow(cyclotomic(it->first), -it->second);
                it->second = 0;
            }
            while (it->second > 0) {
                auto q = num_.exact_div(cyclotomic(it->first));
                if (!q) {
                    break;
                }
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? cyclo_.erase(it) : std::next(it);
        }
    }

    /// num = sign * prod Phi_d^k_d, if it factors that way.
    std::optional<std::pair<int, std::map<int, int>>> factor_numerator() const
    {
        IntPoly rest = num_;
        std::map<int, int> f;
        const int deg = rest.degree();
        const int bound = 2 * deg * deg + 2;
        for (int d = 1; d <= bound && rest.degree() > 0; ++d) {
            if (totient(d) > rest.degree()) {
                continue;
            }
            while (rest.degree() > 0) {
                auto q = rest.exact_div(cyclotomic(d));
                if (!q) {
                    break;
                }
                rest = std::move(*q);
                ++f[d];
            }
        }
        if (rest.degree() != 0 || (rest.lead() != 1 && rest.lead() != -1)) {
            return std::nullopt;
        }
        return std::make_pair(rest.lead() == 1 ? 1 : -1, std::move(f));
    }

    IntPoly num_;
    int lexp_ = 0;
    std::map<int, int> cyclo_;
};

/// Monomial in stratum symbols: name -> positive power.
using SymbolMonomial = std::map<std::string, int>;

inline std::string monomial_str(const SymbolMonomial& m)
{
    std::string s;
    for (const auto& [name, pw] : m) {
        if (!s.empty()) {
            s += "*";
        }
        s += "[" + name + "]";
        if (pw != 1) {
            s += "^" + std::to_string(pw);
        }
    }
    return s;
}

/// Element of the localized ring tensored with the polynomial ring on stratum symbols.
class MotClass {
public:
    MotClass() = default;
    MotClass(int c) : MotClass(SFraction(c)) {}
    MotClass(Int c) : MotClass(SFraction(std::move(c))) {}
    MotClass(SFraction f)
    {
        if (!f.is_zero()) {
            terms_.emplace(SymbolMonomial{}, std::move(f));
        }
    }

    static MotClass L() { return SFraction::L_pow(1); }
    static MotClass L_pow(int k) { return SFraction::L_pow(k); }
    static MotClass symbol(const std::string& name)
    {
        MotClass r;
        r.terms_.emplace(SymbolMonomial{{name, 1}}, SFraction(1));
        return r;
    }
    /// normalize(): the canonical form of num(L)/den(L).
    static MotClass from_quotient(const IntPoly& num, const IntPoly& den)
    {
        return SFraction::from_quotient(num, den);
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_symbol_free() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    const std::map<SymbolMonomial, SFraction>& terms() const { return terms_; }

    /// The L-fragment part; throws if symbols are present.
    SFraction fraction() const
    {
        if (!is_symbol_free()) {
            throw ValidationError("class " + str() + " involves stratum symbols");
        }
        return terms_.empty() ? SFraction{} : terms_.begin()->second;
    }

    bool is_unit() const { return is_symbol_free() && fraction().is_unit(); }

    MotClass inverse() const
    {
        if (!is_symbol_free()) {
            throw ValidationError("class " + str() + " is not a unit: it involves stratum symbols");
        }
        return fraction().inverse();
    }

    friend MotClass operator+(const MotClass& a, const MotClass& b)
    {
        MotClass r = a;
        for (const auto& [m, f] : b.terms_) {
            r.add_term(m, f);
        }
        return r;
    }

    friend MotClass operator-(const MotClass& a)
    {
        MotClass r = a;
        for (auto& [m, f] : r.terms_) {
            f = -f;
        }
        return r;
    }

    friend MotClass operator-(const MotClass& a, const MotClass& b) { return a + (-b); }

    friend MotClass operator*(const MotClass& a, const MotClass& b)
    {
        MotClass r;
        for (const auto& [ma, fa] : a.terms_) {
            for (const auto& [mb, fb] : b.terms_) {
                SymbolMonomial m = ma;
                for (const auto& [name, pw] : mb) {
                    m[name] += pw;
                }
                r.add_term(m, fa * fb);
            }
        }
        return r;
    }

    friend MotClass operator/(const MotClass& a, const MotClass& b) { return a * b.inverse(); }

    MotClass& operator+=(const MotClass& o) { return *this = *this + o; }
    MotClass& operator-=(const MotClass& o) { return *this = *this - o; }
    MotClass& operator*=(const MotClass& o) { return *this = *this * o; }

    friend bool operator==(const MotClass& a, const MotClass& b) { return a.terms_ == b.terms_; }

    MotClass pow(int e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        MotClass r = 1;
        MotClass b = *this;
        while (e != 0) {
            if (e & 1) {
                r *= b;
            }
            e >>= 1;
            if (e != 0) {
                b *= b;
            }
        }
        return r;
    }

    /// Text form, e.g. "(L^2 - 1)/(L^2)" or "[D]*(L) + 1".
    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        if (is_symbol_free()) {
            return terms_.begin()->second.str();
        }
        std::string s;
        for (const auto& [m, f] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            std::string fs = f.str();
            if (m.empty()) {
                s += "(" + fs + ")";
            } else {
                s += monomial_str(m) + "*(" + fs + ")";
            }
        }
        return s;
    }

private:
    void add_term(const SymbolMonomial& m, const SFraction& f)
    {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!f.is_zero()) {
                terms_.emplace(m, f);
            }
            return;
        }
        it->second = it->second + f;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    std::map<SymbolMonomial, SFraction> terms_;
};

inline MotClass pow(const MotClass& x, int e) { return x.pow(e); }

inline std::ostream& operator<<(std::ostream& os, const MotClass& x) { return os << x.str(); }

} // namespace mhz
