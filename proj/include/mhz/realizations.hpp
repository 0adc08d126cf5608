#pragma once

// Realizations of MotClass values: Poincare series in t (L -> t^2), the dimension/leading
// coefficient read off from it, point counts (L -> q), and a one-sided effectivity certificate.

#include "mot_class.hpp"
#include "symbols.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace mhz {

/// Laurent series in t^-1 with finitely many positive exponents, known exactly at exponents >= floor.
class PoincareSeries {
public:
    explicit PoincareSeries(int floor = 0) : floor_(floor) {}

    int floor() const { return floor_; }
    const std::map<int, Int>& terms() const { return c_; }

    Int coeff(int e) const
    {
        if (e < floor_) {
            throw ValidationError("Poincare coefficient requested below the truncation floor");
        }
        auto it = c_.find(e);
        return it == c_.end() ? Int(0) : it->second;
    }

    void add_term(int e, const Int& v)
    {
        if (e < floor_ || v == 0) {
            return;
        }
        Int& slot = c_[e];
        slot += v;
        if (slot == 0) {
            c_.erase(e);
        }
    }

    /// Highest exponent carrying a nonzero coefficient, if any.
    std::optional<int> top() const
    {
        if (c_.empty()) {
            return std::nullopt;
        }
        return c_.rbegin()->first;
    }

    PoincareSeries truncated(int floor) const
    {
        PoincareSeries r(std::max(floor, floor_));
        for (const auto& [e, v] : c_) {
            r.add_term(e, v);
        }
        return r;
    }

    friend PoincareSeries operator+(const PoincareSeries& a, const PoincareSeries& b)
    {
        PoincareSeries r(std::max(a.floor_, b.floor_));
        for (const auto& [e, v] : a.c_) {
            r.add_term(e, v);
        }
        for (const auto& [e, v] : b.c_) {
            r.add_term(e, v);
        }
        return r;
    }

    friend PoincareSeries operator-(const PoincareSeries& a)
    {
        PoincareSeries r(a.floor_);
        for (const auto& [e, v] : a.c_) {
            r.c_[e] = -v;
        }
        return r;
    }

    friend PoincareSeries operator-(const PoincareSeries& a, const PoincareSeries& b) { return a + (-b); }

    /// The product is exact only where neither factor's unknown tail can reach.
    friend PoincareSeries operator*(const PoincareSeries& a, const PoincareSeries& b)
    {
        const int ta = a.top().value_or(a.floor_ - 1);
        const int tb = b.top().value_or(b.floor_ - 1);
        PoincareSeries r(std::max(a.floor_ + tb, b.floor_ + ta));
        for (const auto& [ea, va] : a.c_) {
            for (const auto& [eb, vb] : b.c_) {
                r.add_term(ea + eb, va * vb);
            }
        }
        return r;
    }

    /// Equality on the common range of validity.
    bool agrees_with(const PoincareSeries& o) const
    {
        const int f = std::max(floor_, o.floor_);
        return truncated(f).c_ == o.truncated(f).c_;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Int v = it->second;
            const bool neg = v < 0;
            if (neg) {
                v = -v;
            }
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            first = false;
            if (it->first == 0) {
                os << v;
                continue;
            }
            if (v != 1) {
                os << v << "*";
            }
            os << "t";
            if (it->first != 1) {
                os << "^" << it->first;
            }
        }
        if (first) {
            os << "0";
        }
        os << " + O(t^" << floor_ - 1 << ")";
        return os.str();
    }

private:
    std::map<int, Int> c_;
    int floor_;
};

namespace detail {

inline IntPoly symbol_poincare(const SymbolMonomial& m, const SymbolRegistry& reg)
{
    IntPoly p = 1;
    for (const auto& [name, pw] : m) {
        const auto sym = reg.find(name);
        if (!sym) {
            throw ValidationError("unregistered stratum symbol '" + name + "'");
        }
        p *= pow(sym->poincare, pw);
    }
    return p;
}

inline IntPoly cyclo_in_t(const std::map<int, int>& cyclo)
{
    IntPoly q = 1;
    for (const auto& [d, m] : cyclo) {
        q *= pow(cyclotomic(d).inflate(2), m);
    }
    return q;
}

/// Coefficients of 1/Q for monic Q as a series in t^-1, exponents down to floor.
inline std::map<int, Int> inverse_series(const IntPoly& q, int floor)
{
    const int deg = q.degree();
    std::map<int, Int> out;
    const int count = -deg - floor + 1;
    if (count <= 0) {
        return out;
    }
    // R(s) = s^deg Q(1/s) has R(0) = 1; 1/Q = s^deg / R(s).
    std::vector<Int> r(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i) {
        r[static_cast<std::size_t>(i)] = q.coeff(deg - i);
    }
    std::vector<Int> inv(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Int acc = k == 0 ? Int(1) : Int(0);
        for (int i = 1; i <= std::min(k, deg); ++i) {
            acc -= r[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
        }
        inv[static_cast<std::size_t>(k)] = acc;
        if (acc != 0) {
            out[-deg - k] = acc;
        }
    }
    return out;
}

} // namespace detail

/// PC(x) truncated below t^(-2K).
inline PoincareSeries poincare(const MotClass& x, int K, const SymbolRegistry& reg = {})
{
    if (K < 0) {
        throw ValidationError("Poincare precision must be nonnegative");
    }
    const int floor = -2 * K;
    PoincareSeries out(floor);
    for (const auto& [mono, frac] : x.terms()) {
        IntPoly poly = detail::symbol_poincare(mono, reg) * frac.num().inflate(2);
        const int shift = 2 * frac.lexp();
        const int poly_top = poly.degree() + shift;
        const auto inv = detail::inverse_series(detail::cyclo_in_t(frac.cyclo()), std::min(floor, floor - poly_top));
        for (int i = 0; i <= poly.degree(); ++i) {
            const Int& c = poly.coeffs()[static_cast<std::size_t>(i)];
            if (c == 0) {
                continue;
            }
            for (const auto& [e, v] : inv) {
                out.add_term(i + shift + e, c * v);
            }
        }
    }
    return out;
}

struct DimNu {
    bool minus_infinity = false;
    int dim = 0;
    Int nu = 0;
};

/// dim and leading coefficient of PC(x), computed exactly from PC(x) as a rational function of t.
inline DimNu dim_nu(const MotClass& x, const SymbolRegistry& reg = {})
{
    if (x.is_zero()) {
        return {true, 0, 0};
    }
    int min_lexp = 0;
    std::map<int, int> den;
    bool first = true;
    for (const auto& [mono, frac] : x.terms()) {
        min_lexp = first ? frac.lexp() : std::min(min_lexp, frac.lexp());
        first = false;
        for (const auto& [d, m] : frac.cyclo()) {
            den[d] = std::max(den[d], m);
        }
    }
    IntPoly num;
    for (const auto& [mono, frac] : x.terms()) {
        std::map<int, int> extra;
        for (const auto& [d, m] : den) {
            auto it = frac.cyclo().find(d);
            extra[d] = m - (it == frac.cyclo().end() ? 0 : it->second);
        }
        num += (detail::symbol_poincare(mono, reg) * frac.num().inflate(2) * detail::cyclo_in_t(extra))
                   .shift_up(2 * (frac.lexp() - min_lexp));
    }
    if (num.is_zero()) {
        return {true, 0, 0};
    }
    int den_deg = 0;
    for (const auto& [d, m] : den) {
        den_deg += 2 * totient(d) * m;
    }
    const int top = num.degree() + 2 * min_lexp - den_deg;
    const int dim = top >= 0 ? (top + 1) / 2 : -((-top) / 2);
    return {false, dim, num.lead()};
}

/// Point-count realization L -> q.
inline Rational count_realize(const MotClass& x, std::int64_t q, const SymbolRegistry& reg = {})
{
    if (q < 2) {
        throw ValidationError("count realization needs q >= 2");
    }
    Rational total = 0;
    for (const auto& [mono, frac] : x.terms()) {
        Rational v = frac.eval(Rational(q));
        for (const auto& [name, pw] : mono) {
            const auto sym = reg.find(name);
            if (!sym) {
                throw ValidationError("unregistered stratum symbol '" + name + "'");
            }
            auto it = sym->counts.find(q);
            if (it == sym->counts.end()) {
                throw ValidationError("stratum symbol '" + name + "' has no point count at q=" + std::to_string(q));
            }
            v *= rpow(Rational(it->second), pw);
        }
        total += v;
    }
    return total;
}

enum class Effectivity { Certified, NotCertified };

inline const char* to_string(Effectivity e) { return e == Effectivity::Certified ? "Certified" : "NotCertified"; }

struct EffectivityCertificate {
    Effectivity verdict = Effectivity::NotCertified;
    std::string reason;
    std::vector<std::string> multipliers;   // per term, the extra element of S used
};

namespace detail {

/// p(L) rewritten in the basis u = L - 1.
inline IntPoly in_u_basis(const IntPoly& p)
{
    IntPoly r;
    const IntPoly u_plus_one = IntPoly(std::vector<Int>{1, 1});
    for (int i = p.degree(); i >= 0; --i) {
        r = r * u_plus_one + IntPoly(p.coeff(i));
    }
    return r;
}

inline bool nonnegative(const IntPoly& p)
{
    for (const auto& c : p.coeffs()) {
        if (c < 0) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Clears the S-denominator of each term and looks for a nonnegative expansion in powers of
/// L - 1 (the class of G_m), trying a few further multipliers from S when the first attempt fails.
inline EffectivityCertificate effectivity_certificate(const MotClass& x, const SymbolRegistry& reg = {})
{
    EffectivityCertificate cert;
    if (x.is_zero()) {
        cert.verdict = Effectivity::Certified;
        return cert;
    }
    for (const auto& [mono, frac] : x.terms()) {
        for (const auto& [name, pw] : mono) {
            const auto sym = reg.find(name);
            if (!sym || !sym->effective) {
                cert.reason = "stratum symbol '" + name + "' is not declared effective";
                return cert;
            }
        }
        IntPoly cleared = frac.num();
        for (const auto& [d, m] : frac.cyclo()) {
            const IntPoly cofactor = *(IntPoly::monomial(1, d) - IntPoly(1)).exact_div(cyclotomic(d));
            cleared *= pow(cofactor, m);
        }
        bool ok = false;
        for (int j = 0; j <= 2 && !ok; ++j) {
            for (int combo = 0; combo < 27 && !ok; ++combo) {
                IntPoly trial = cleared.shift_up(j);
                std::string label = j == 0 ? "" : (j == 1 ? "L" : "L^2");
                int c = combo;
                for (int a = 2; a <= 4; ++a, c /= 3) {
                    const int k = c % 3;
                    if (k == 0) {
                        continue;
                    }
                    trial *= pow(IntPoly::monomial(1, a) - IntPoly(1), k);
                    label += (label.empty() ? "" : "*") + std::string("(L^") + std::to_string(a) + " - 1)";
                    if (k > 1) {
                        label += "^" + std::to_string(k);
                    }
                }
                if (detail::nonnegative(detail::in_u_basis(trial))) {
                    ok = true;
                    cert.multipliers.push_back(label.empty() ? "1" : label);
                }
            }
        }
        if (!ok) {
            cert.reason = "no nonnegative expansion in L - 1 found for term " + frac.str();
            cert.multipliers.clear();
            return cert;
        }
    }
    cert.verdict = Effectivity::Certified;
    return cert;
}

} // namespace mhz
