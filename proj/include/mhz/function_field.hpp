#pragma once

// The rational function field F_p(t): polynomials, rational functions, degree-one places of P^1,
// divisors, local expansions, Riemann-Roch bases and residues.

#include "local_harmonic.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mhz {

inline int inv_mod(int a, int p)
{
    a = mod_p(a, p);
    if (a == 0) {
        throw ValidationError("division by zero in F_" + std::to_string(p));
    }
    int r = 1;
    for (int e = p - 2; e > 0; --e) {
        r = static_cast<int>(static_cast<std::int64_t>(r) * a % p);
    }
    return r;
}

class FpPoly {
public:
    explicit FpPoly(int p = 2, std::vector<int> c = {}) : p_(p), c_(std::move(c))
    {
        for (auto& x : c_) {
            x = mod_p(x, p_);
        }
        trim();
    }

    static FpPoly constant(int p, int a) { return FpPoly(p, {a}); }
    /// t - c
    static FpPoly linear(int p, int c) { return FpPoly(p, {-c, 1}); }
    static FpPoly monomial(int p, int k, int a = 1)
    {
        std::vector<int> c(static_cast<std::size_t>(k) + 1, 0);
        c.back() = a;
        return FpPoly(p, std::move(c));
    }

    int p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<int>& coeffs() const { return c_; }
    int coeff(int i) const { return i < 0 || i > degree() ? 0 : c_[static_cast<std::size_t>(i)]; }
    int lead() const { return c_.back(); }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b)
    {
        std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        }
        return FpPoly(a.p_, std::move(c));
    }

    friend FpPoly operator-(const FpPoly& a)
    {
        std::vector<int> c = a.c_;
        for (auto& x : c) {
            x = -x;
        }
        return FpPoly(a.p_, std::move(c));
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return FpPoly(a.p_);
        }
        std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                c[i + j] = (c[i + j] + static_cast<std::int64_t>(a.c_[i]) * b.c_[j]) % a.p_;
            }
        }
        return FpPoly(a.p_, std::vector<int>(c.begin(), c.end()));
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const
    {
        if (d.is_zero()) {
            throw ValidationError("polynomial division by zero");
        }
        std::vector<int> r = c_;
        if (degree() < d.degree()) {
            return {FpPoly(p_), *this};
        }
        std::vector<int> quot(static_cast<std::size_t>(degree() - d.degree()) + 1, 0);
        const int li = inv_mod(d.lead(), p_);
        for (int i = degree(); i >= d.degree(); --i) {
            const int top = r[static_cast<std::size_t>(i)];
            if (top == 0) {
                continue;
            }
            const int f = static_cast<int>(static_cast<std::int64_t>(top) * li % p_);
            quot[static_cast<std::size_t>(i - d.degree())] = f;
            for (int j = 0; j <= d.degree(); ++j) {
                auto& x = r[static_cast<std::size_t>(i - d.degree() + j)];
                x = mod_p(x - static_cast<std::int64_t>(f) * d.c_[static_cast<std::size_t>(j)], p_);
            }
        }
        return {FpPoly(p_, std::move(quot)), FpPoly(p_, std::move(r))};
    }

    FpPoly monic() const
    {
        if (is_zero()) {
            return *this;
        }
        const int li = inv_mod(lead(), p_);
        std::vector<int> c = c_;
        for (auto& x : c) {
            x = static_cast<int>(static_cast<std::int64_t>(x) * li % p_);
        }
        return FpPoly(p_, std::move(c));
    }

    int eval(int x) const
    {
        std::int64_t r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = (r * mod_p(x, p_) + *it) % p_;
        }
        return static_cast<int>(r);
    }

    /// Coefficients of P(c + s) as a polynomial in s.
    FpPoly taylor_shift(int c) const
    {
        FpPoly r(p_);
        const FpPoly lin(p_, {c, 1});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = r * lin + FpPoly::constant(p_, *it);
        }
        return r;
    }

    /// u^{deg} P(1/u).
    FpPoly reversed() const { return FpPoly(p_, std::vector<int>(c_.rbegin(), c_.rend())); }

    /// Multiplicity of the root c.
    int root_multiplicity(int c) const
    {
        const FpPoly s = taylor_shift(c);
        int k = 0;
        while (k <= s.degree() && s.coeff(k) == 0) {
            ++k;
        }
        return k;
    }

    std::string str(const std::string& var = "t") const
    {
        if (is_zero()) {
            return "0";
        }
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const int a = coeff(i);
            if (a == 0) {
                continue;
            }
            if (!s.empty()) {
                s += " + ";
            }
            const std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            s += mono.empty() ? std::to_string(a) : (a == 1 ? "" : std::to_string(a) + "*") + mono;
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) {
            c_.pop_back();
        }
    }

    int p_;
    std::vector<int> c_;
};

inline FpPoly gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Rational function num/den in lowest terms with monic denominator.
class FpRational {
public:
    explicit FpRational(int p = 2) : num_(p), den_(FpPoly::constant(p, 1)) {}
    FpRational(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) {
            throw ValidationError("rational function with zero denominator");
        }
        if (num_.is_zero()) {
            den_ = FpPoly::constant(den_.p(), 1);
            return;
        }
        const FpPoly g = gcd(num_, den_);
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
        const int li = inv_mod(den_.lead(), den_.p());
        num_ = num_ * FpPoly::constant(num_.p(), li);
        den_ = den_.monic();
    }
    FpRational(FpPoly num) : FpRational(num, FpPoly::constant(num.p(), 1)) {}

    int p() const { return num_.p(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend FpRational operator+(const FpRational& a, const FpRational& b)
    {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend FpRational operator-(const FpRational& a) { return {-a.num_, a.den_}; }
    friend FpRational operator-(const FpRational& a, const FpRational& b) { return a + (-b); }
    friend FpRational operator*(const FpRational& a, const FpRational& b)
    {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    FpRational inverse() const
    {
        if (is_zero()) {
            throw ValidationError("inverting the zero function");
        }
        return {den_, num_};
    }
    friend bool operator==(const FpRational& a, const FpRational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const
    {
        if (den_.degree() == 0) {
            return num_.str();
        }
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    FpPoly num_;
    FpPoly den_;
};

/// Degree-one place of P^1: a point c of F_q (uniformizer t - c) or infinity (uniformizer 1/t).
struct Place {
    bool infinity = false;
    int c = 0;

    static Place finite(int c) { return {false, c}; }
    static Place inf() { return {true, 0}; }

    friend auto operator<=>(const Place&, const Place&) = default;

    std::string str() const { return infinity ? "inf" : std::to_string(c); }
};

using Divisor = std::map<Place, int>;

inline int degree(const Divisor& D)
{
    int d = 0;
    for (const auto& [s, m] : D) {
        d += m;
    }
    return d;
}

inline std::string to_string(const Divisor& D)
{
    std::string s;
    for (const auto& [pl, m] : D) {
        if (m == 0) {
            continue;
        }
        if (!s.empty()) {
            s += " + ";
        }
        s += std::to_string(m) + "[" + pl.str() + "]";
    }
    return s.empty() ? "0" : s;
}

inline int ord_at(const FpRational& x, const Place& s)
{
    if (x.is_zero()) {
        throw ValidationError("order of the zero function");
    }
    if (s.infinity) {
        return x.den().degree() - x.num().degree();
    }
    return x.num().root_multiplicity(s.c) - x.den().root_multiplicity(s.c);
}

namespace detail {

/// A/B to n terms as a power series, B(0) != 0.
inline std::vector<int> series_div(const FpPoly& A, const FpPoly& B, int n)
{
    const int p = A.p();
    const int b0 = inv_mod(B.coeff(0), p);
    std::vector<int> out(static_cast<std::size_t>(std::max(n, 0)), 0);
    for (int k = 0; k < n; ++k) {
        std::int64_t s = A.coeff(k);
        for (int j = 1; j <= k && j <= B.degree(); ++j) {
            s -= static_cast<std::int64_t>(B.coeff(j)) * out[static_cast<std::size_t>(k - j)];
        }
        out[static_cast<std::size_t>(k)] = static_cast<int>(mod_p(s, p) * static_cast<std::int64_t>(b0) % p);
    }
    return out;
}

inline FpPoly strip_low(const FpPoly& P, int k)
{
    return FpPoly(P.p(), std::vector<int>(P.coeffs().begin() + k, P.coeffs().end()));
}

} // namespace detail

/// Laurent expansion of x at s in the local uniformizer, with all coefficients of degree < order.
/// The returned digits start at ord_s(x); the result is empty when ord_s(x) >= order.
inline FpLaurent local_expand(const FpRational& x, const Place& s, int order)
{
    if (x.is_zero()) {
        return {0, {}};
    }
    FpPoly A(x.p()), B(x.p());
    int ord = 0;
    if (s.infinity) {
        A = x.num().reversed();
        B = x.den().reversed();
        ord = x.den().degree() - x.num().degree();
    } else {
        A = x.num().taylor_shift(s.c);
        B = x.den().taylor_shift(s.c);
        const int a = x.num().root_multiplicity(s.c);
        const int b = x.den().root_multiplicity(s.c);
        A = detail::strip_low(A, a);
        B = detail::strip_low(B, b);
        ord = a - b;
    }
    return {ord, detail::series_div(A, B, order - ord)};
}

/// A differential form f dt.
struct Differential {
    FpRational f;

    static Differential dt(int p) { return {FpRational(FpPoly::constant(p, 1))}; }
    int p() const { return f.p(); }
};

/// Expansion of omega = f dt as g(s) ds in the local uniformizer, coefficients of degree < order.
/// At infinity dt = -u^{-2} du.
inline FpLaurent local_expand(const Differential& w, const Place& s, int order)
{
    if (!s.infinity) {
        return local_expand(w.f, s, order);
    }
    FpLaurent e = local_expand(w.f, s, order + 2);
    e.ord -= 2;
    for (auto& d : e.digits) {
        d = mod_p(-d, w.p());
    }
    return e;
}

/// nu_s = ord_s(omega).
inline int ord_at(const Differential& w, const Place& s)
{
    return s.infinity ? ord_at(w.f, s) - 2 : ord_at(w.f, s);
}

namespace detail {

/// Roots in F_p with multiplicities; throws if P has an irreducible factor of degree > 1.
inline std::map<int, int> split_roots(const FpPoly& P, const std::string& what)
{
    std::map<int, int> roots;
    int total = 0;
    for (int c = 0; c < P.p(); ++c) {
        const int m = P.root_multiplicity(c);
        if (m > 0) {
            roots[c] = m;
            total += m;
        }
    }
    if (total != P.degree()) {
        throw ValidationError(what + " has a zero or pole at a place of degree > 1, which is not supported");
    }
    return roots;
}

} // namespace detail

inline Divisor divisor(const FpRational& x)
{
    if (x.is_zero()) {
        throw ValidationError("divisor of the zero function");
    }
    Divisor D;
    for (const auto& [c, m] : detail::split_roots(x.num(), "function " + x.str())) {
        D[Place::finite(c)] += m;
    }
    for (const auto& [c, m] : detail::split_roots(x.den(), "function " + x.str())) {
        D[Place::finite(c)] -= m;
    }
    if (const int o = ord_at(x, Place::inf()); o != 0) {
        D[Place::inf()] = o;
    }
    return D;
}

inline Divisor divisor(const Differential& w)
{
    Divisor D = divisor(w.f);
    D[Place::inf()] -= 2;
    if (D[Place::inf()] == 0) {
        D.erase(Place::inf());
    }
    return D;
}

/// div(y) + D >= 0. Poles must sit at degree-one places; zeros anywhere are allowed.
inline bool in_riemann_roch(const FpRational& y, const Divisor& D)
{
    if (y.is_zero()) {
        return true;
    }
    auto bound = [&](const Place& s) {
        const auto it = D.find(s);
        return it == D.end() ? 0 : it->second;
    };
    int split = 0;
    for (int c = 0; c < y.p(); ++c) {
        split += y.den().root_multiplicity(c);
        if (ord_at(y, Place::finite(c)) + bound(Place::finite(c)) < 0) {
            return false;
        }
    }
    return split == y.den().degree() && ord_at(y, Place::inf()) + bound(Place::inf()) >= 0;
}

struct RRBasis {
    Divisor D;
    std::vector<FpRational> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

/// L(D) = {y : div(y) + D >= 0} on P^1: basis t^i / prod_c (t - c)^{D_c}, 0 <= i <= deg D.
inline RRBasis riemann_roch_basis(const Divisor& D, int p)
{
    RRBasis r{D, {}};
    const int deg = degree(D);
    if (deg < 0) {
        return r;
    }
    FpPoly num = FpPoly::constant(p, 1), den = FpPoly::constant(p, 1);
    for (const auto& [s, m] : D) {
        if (s.infinity) {
            continue;
        }
        if (s.c < 0 || s.c >= p) {
            throw ValidationError("place " + s.str() + " is not a point of F_" + std::to_string(p));
        }
        const FpPoly lin = FpPoly::linear(p, s.c);
        for (int i = 0; i < std::abs(m); ++i) {
            (m > 0 ? den : num) = (m > 0 ? den : num) * lin;
        }
    }
    for (int i = 0; i <= deg; ++i) {
        r.basis.emplace_back(num * FpPoly::monomial(p, i), den);
    }
    for (const auto& y : r.basis) {
        if (!in_riemann_roch(y, D)) {
            throw InvariantError("Riemann-Roch basis element " + y.str() + " violates D = " + to_string(D));
        }
    }
    return r;
}

struct ResidueReport {
    std::map<Place, int> residues;
    bool sum_zero = true;
};

/// Sum of the residues of x * omega over all poles, which must be at degree-one places.
inline ResidueReport residue_theorem_check(const FpRational& x, const Differential& w)
{
    const int p = x.p();
    ResidueReport rep;
    if (x.is_zero()) {
        return rep;
    }
    const Differential xw{x * w.f};
    std::vector<Place> places{Place::inf()};
    for (const auto& [c, m] : detail::split_roots(xw.f.den(), "form x*omega")) {
        places.push_back(Place::finite(c));
    }
    int total = 0;
    for (const auto& s : places) {
        const int r = local_expand(xw, s, 0).coeff(-1);
        if (r != 0) {
            rep.residues[s] = r;
        }
        total = (total + r) % p;
    }
    rep.sum_zero = total == 0;
    return rep;
}

} // namespace mhz
