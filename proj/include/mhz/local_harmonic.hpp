#pragma once

// Schwartz-Bruhat functions on F_q((t))^n realized as finite tables, the residue pairing,
// the local Fourier transform, and brute-force oscillatory integrals.

#include "cyc_value.hpp"
#include "mot_class.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace mhz {

inline constexpr std::int64_t kWindowCap = 1'000'000;
inline constexpr std::int64_t kBruteCap = 50'000'000;

inline int mod_p(std::int64_t x, int p) { return static_cast<int>(((x % p) + p) % p); }

/// Finite Laurent polynomial over F_p: sum_i digits[i] t^(ord + i).
struct FpLaurent {
    int ord = 0;
    std::vector<int> digits;

    static FpLaurent monomial(int k, int c = 1) { return {k, {c}}; }

    FpLaurent normalized(int p) const
    {
        FpLaurent r{ord, {}};
        r.digits.reserve(digits.size());
        for (int d : digits) {
            r.digits.push_back(mod_p(d, p));
        }
        std::size_t lo = 0;
        while (lo < r.digits.size() && r.digits[lo] == 0) {
            ++lo;
        }
        r.digits.erase(r.digits.begin(), r.digits.begin() + static_cast<std::ptrdiff_t>(lo));
        r.ord += static_cast<int>(lo);
        while (!r.digits.empty() && r.digits.back() == 0) {
            r.digits.pop_back();
        }
        if (r.digits.empty()) {
            r.ord = 0;
        }
        return r;
    }

    bool is_zero() const
    {
        return std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; });
    }

    int coeff(int k) const
    {
        const int i = k - ord;
        return i < 0 || i >= static_cast<int>(digits.size()) ? 0 : digits[static_cast<std::size_t>(i)];
    }

    /// Valuation and angular component; the value must be normalized and nonzero.
    int val() const { return ord; }
    int ac() const { return digits.front(); }

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] == 0) {
                continue;
            }
            const int k = ord + static_cast<int>(i);
            if (!s.empty()) {
                s += " + ";
            }
            const std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
            if (mono.empty()) {
                s += std::to_string(digits[i]);
            } else {
                s += (digits[i] == 1 ? "" : std::to_string(digits[i]) + "*") + mono;
            }
        }
        return s.empty() ? "0" : s;
    }
};

inline FpLaurent checked_laurent(const FpLaurent& a, int p, const char* what)
{
    FpLaurent r = a.normalized(p);
    if (r.is_zero()) {
        throw ValidationError(std::string(what) + " must be nonzero");
    }
    return r;
}

/// The quotient t^M R^n / t^N R^n over F_q.
struct LocalWindow {
    int q = 2;
    int n = 1;
    int M = 0;
    int N = 0;

    int width() const { return N - M; }
    int digit_count() const { return n * width(); }

    std::int64_t size() const
    {
        std::int64_t s = 1;
        for (int i = 0; i < digit_count(); ++i) {
            s *= q;
            if (s > kWindowCap) {
                throw CapExceeded("window of " + std::to_string(q) + "^" + std::to_string(digit_count()) +
                                  " points exceeds the cap of " + std::to_string(kWindowCap));
            }
        }
        return s;
    }

    void validate() const
    {
        if (!is_prime(q)) {
            throw ValidationError("q must be prime, got " + std::to_string(q));
        }
        if (n < 0 || M > N) {
            throw ValidationError("window needs n >= 0 and M <= N");
        }
        (void)size();
    }

    /// Digit (i, k) for coordinate i and absolute degree k sits at position i*width + (k - M).
    std::vector<int> decode(std::int64_t idx) const
    {
        std::vector<int> d(static_cast<std::size_t>(digit_count()));
        for (auto& x : d) {
            x = static_cast<int>(idx % q);
            idx /= q;
        }
        return d;
    }

    std::int64_t encode(const std::vector<int>& d) const
    {
        std::int64_t idx = 0;
        for (auto it = d.rbegin(); it != d.rend(); ++it) {
            idx = idx * q + mod_p(*it, q);
        }
        return idx;
    }

    /// Valuation of coordinate i of a point, or N if the coordinate vanishes in the window.
    int ord(const std::vector<int>& d, int i) const
    {
        for (int k = 0; k < width(); ++k) {
            if (d[static_cast<std::size_t>(i * width() + k)] != 0) {
                return M + k;
            }
        }
        return N;
    }

    friend bool operator==(const LocalWindow&, const LocalWindow&) = default;

    std::string str() const
    {
        return "q=" + std::to_string(q) + " n=" + std::to_string(n) + " level (" + std::to_string(M) + "," +
               std::to_string(N) + ")";
    }
};

/// A function on a window, i.e. a Schwartz-Bruhat function of level (M, N).
struct SBLocal {
    LocalWindow window;
    std::vector<CycValue> values;

    static SBLocal from_function(const LocalWindow& w, const std::function<CycValue(const std::vector<int>&)>& f)
    {
        w.validate();
        SBLocal phi{w, {}};
        const std::int64_t s = w.size();
        phi.values.reserve(static_cast<std::size_t>(s));
        for (std::int64_t i = 0; i < s; ++i) {
            phi.values.push_back(f(w.decode(i)));
        }
        return phi;
    }

    static SBLocal constant(const LocalWindow& w, const CycValue& c)
    {
        return from_function(w, [&](const std::vector<int>&) { return c; });
    }

    /// Indicator of t^r R^n (every coordinate of valuation >= r).
    static SBLocal ball(const LocalWindow& w, int r)
    {
        return from_function(w, [&](const std::vector<int>& d) {
            bool in = true;
            for (int i = 0; i < w.n; ++i) {
                in = in && w.ord(d, i) >= r;
            }
            return CycValue(w.q, in ? 1 : 0);
        });
    }

    /// Indicator of the shell ord(x_i) = m for every coordinate.
    static SBLocal shell(const LocalWindow& w, int m)
    {
        if (m < w.M || m >= w.N) {
            throw ValidationError("shell ord=" + std::to_string(m) + " is not resolved by " + w.str());
        }
        return from_function(w, [&](const std::vector<int>& d) {
            bool in = true;
            for (int i = 0; i < w.n; ++i) {
                in = in && w.ord(d, i) == m;
            }
            return CycValue(w.q, in ? 1 : 0);
        });
    }

    static SBLocal point_mass(const LocalWindow& w)
    {
        return from_function(w, [&](const std::vector<int>& d) {
            const bool zero = std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
            return CycValue(w.q, zero ? 1 : 0);
        });
    }

    const CycValue& at(const std::vector<int>& d) const { return values[static_cast<std::size_t>(window.encode(d))]; }

    friend bool operator==(const SBLocal&, const SBLocal&) = default;

    friend SBLocal operator+(const SBLocal& a, const SBLocal& b)
    {
        if (!(a.window == b.window)) {
            throw ValidationError("adding functions on different windows");
        }
        SBLocal r = a;
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            r.values[i] += b.values[i];
        }
        return r;
    }

    SBLocal scaled(const CycValue& c) const
    {
        SBLocal r = *this;
        for (auto& v : r.values) {
            v *= c;
        }
        return r;
    }
};

inline CycValue integrate(const SBLocal& phi)
{
    CycValue s(phi.window.q);
    for (const auto& v : phi.values) {
        s += v;
    }
    return s.scaled_p(-phi.window.n * phi.window.N);
}

// Embeddings between levels. Points keep their digits; new positions are padded per coordinate.
namespace detail {

inline SBLocal relevel(const SBLocal& phi, int M2, int N2, bool sum_fibers)
{
    const LocalWindow& w = phi.window;
    const LocalWindow w2{w.q, w.n, M2, N2};
    w2.validate();
    SBLocal out = SBLocal::from_function(w2, [&](const std::vector<int>& d2) {
        // Restriction to the common range, zero if a digit below M is nonzero.
        std::vector<int> d(static_cast<std::size_t>(w.digit_count()), 0);
        for (int i = 0; i < w.n; ++i) {
            for (int k = M2; k < N2; ++k) {
                const int v = d2[static_cast<std::size_t>(i * w2.width() + (k - M2))];
                if (k < w.M) {
                    if (v != 0) {
                        return CycValue(w.q);
                    }
                } else if (k < w.N) {
                    d[static_cast<std::size_t>(i * w.width() + (k - w.M))] = v;
                }
            }
        }
        if (!sum_fibers || N2 >= w.N) {
            return phi.at(d);
        }
        // Sum over the digits k in [N2, N) of every coordinate.
        const int free = w.n * (w.N - N2);
        CycValue s(w.q);
        std::int64_t count = 1;
        for (int i = 0; i < free; ++i) {
            count *= w.q;
        }
        for (std::int64_t c = 0; c < count; ++c) {
            std::int64_t x = c;
            for (int i = 0; i < w.n; ++i) {
                for (int k = N2; k < w.N; ++k) {
                    d[static_cast<std::size_t>(i * w.width() + (k - w.M))] = static_cast<int>(x % w.q);
                    x /= w.q;
                }
            }
            s += phi.at(d);
        }
        return s;
    });
    return out;
}

} // namespace detail

/// iota_*: extension by zero to t^{M2} R^n with M2 <= M.
inline SBLocal extend_by_zero(const SBLocal& phi, int M2)
{
    if (M2 > phi.window.M) {
        throw ValidationError("extension by zero needs M2 <= M");
    }
    return detail::relevel(phi, M2, phi.window.N, false);
}

/// iota^*: restriction to t^{M2} R^n with M2 >= M.
inline SBLocal restrict_to(const SBLocal& phi, int M2)
{
    if (M2 < phi.window.M || M2 > phi.window.N) {
        throw ValidationError("restriction needs M <= M2 <= N");
    }
    return detail::relevel(phi, M2, phi.window.N, false);
}

/// pi^*: pullback to level N2 >= N (constant on fibers).
inline SBLocal pullback(const SBLocal& phi, int N2)
{
    if (N2 < phi.window.N) {
        throw ValidationError("pullback needs N2 >= N");
    }
    return detail::relevel(phi, phi.window.M, N2, false);
}

/// pi_*: sum over fibers down to level N2 with M <= N2 <= N.
inline SBLocal pushforward(const SBLocal& phi, int N2)
{
    if (N2 > phi.window.N || N2 < phi.window.M) {
        throw ValidationError("pushforward needs M <= N2 <= N");
    }
    return detail::relevel(phi, phi.window.M, N2, true);
}

/// x -> phi(-x).
inline SBLocal reflect(const SBLocal& phi)
{
    const LocalWindow& w = phi.window;
    return SBLocal::from_function(w, [&](std::vector<int> d) {
        for (auto& x : d) {
            x = mod_p(-x, w.q);
        }
        return phi.at(d);
    });
}

/// r(z) = res(z * omega) for omega = f dt with f a finite Laurent polynomial over F_q.
class ResiduePairing {
public:
    ResiduePairing(int q, const FpLaurent& f) : q_(q), f_(checked_laurent(f, q, "pairing form"))
    {
        if (!is_prime(q)) {
            throw ValidationError("q must be prime, got " + std::to_string(q));
        }
    }

    static ResiduePairing dt(int q) { return {q, FpLaurent::monomial(0)}; }
    static ResiduePairing dt_over_t(int q) { return {q, FpLaurent::monomial(-1)}; }
    /// omega = t^{-nu} dt.
    static ResiduePairing pole(int q, int nu) { return {q, FpLaurent::monomial(-nu)}; }

    int q() const { return q_; }
    int nu() const { return -f_.ord; }
    const FpLaurent& form() const { return f_; }
    int g(int k) const { return f_.coeff(k); }

    /// r applied to a finite Laurent polynomial.
    int r(const FpLaurent& z) const
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < z.digits.size(); ++i) {
            s += static_cast<std::int64_t>(z.digits[i]) * g(-1 - z.ord - static_cast<int>(i));
        }
        return mod_p(s, q_);
    }

    LocalWindow dual_window(const LocalWindow& w) const
    {
        return {w.q, w.n, nu() - w.N, nu() - w.M};
    }

    /// G[a][b] = g_{w-1-nu-a-b}: r(x y) = sum x_{M+a} y_{nu-N+b} G[a][b].
    std::vector<std::vector<int>> kernel(const LocalWindow& w) const
    {
        const int wd = w.width();
        std::vector<std::vector<int>> G(static_cast<std::size_t>(wd), std::vector<int>(static_cast<std::size_t>(wd)));
        for (int a = 0; a < wd; ++a) {
            for (int b = 0; b < wd; ++b) {
                G[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = g(wd - 1 - nu() - a - b);
            }
        }
        return G;
    }

private:
    int q_;
    FpLaurent f_;
};

namespace detail {

inline void check_pairing(const SBLocal& phi, const ResiduePairing& pr)
{
    phi.window.validate();
    if (pr.q() != phi.window.q) {
        throw ValidationError("pairing over F_" + std::to_string(pr.q()) + " applied to a window over F_" +
                              std::to_string(phi.window.q));
    }
}

/// eta(y)_{i,a} = sum_b G[a][b] y_{i,b}: the exponent vector paired with x.
inline std::vector<std::int64_t> eta_index(const LocalWindow& in, const LocalWindow& out,
                                           const std::vector<std::vector<int>>& G)
{
    const std::int64_t s = out.size();
    const int wd = in.width();
    std::vector<std::int64_t> idx(static_cast<std::size_t>(s));
    std::vector<int> eta(static_cast<std::size_t>(in.digit_count()));
    for (std::int64_t j = 0; j < s; ++j) {
        const std::vector<int> y = out.decode(j);
        for (int i = 0; i < in.n; ++i) {
            for (int a = 0; a < wd; ++a) {
                std::int64_t e = 0;
                for (int b = 0; b < wd; ++b) {
                    e += static_cast<std::int64_t>(G[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) *
                         y[static_cast<std::size_t>(i * wd + b)];
                }
                eta[static_cast<std::size_t>(i * wd + a)] = mod_p(e, in.q);
            }
        }
        idx[static_cast<std::size_t>(j)] = in.encode(eta);
    }
    return idx;
}

} // namespace detail

/// Reference transform: direct double sum over the window.
inline SBLocal fourier_naive(const SBLocal& phi, const ResiduePairing& pr)
{
    detail::check_pairing(phi, pr);
    const LocalWindow& w = phi.window;
    const LocalWindow out = pr.dual_window(w);
    const int q = w.q;
    return SBLocal::from_function(out, [&](const std::vector<int>& y) {
        std::vector<CycValue> acc(static_cast<std::size_t>(q), CycValue(q));
        for (std::int64_t xi = 0; xi < w.size(); ++xi) {
            const CycValue& v = phi.values[static_cast<std::size_t>(xi)];
            if (v.is_zero()) {
                continue;
            }
            const std::vector<int> x = w.decode(xi);
            int phase = 0;
            for (int i = 0; i < w.n; ++i) {
                FpLaurent xs{w.M, {x.begin() + i * w.width(), x.begin() + (i + 1) * w.width()}};
                FpLaurent ys{out.M, {y.begin() + i * w.width(), y.begin() + (i + 1) * w.width()}};
                FpLaurent z{xs.ord + ys.ord, std::vector<int>(xs.digits.size() + ys.digits.size(), 0)};
                for (std::size_t a = 0; a < xs.digits.size(); ++a) {
                    for (std::size_t b = 0; b < ys.digits.size(); ++b) {
                        z.digits[a + b] = (z.digits[a + b] + xs.digits[a] * ys.digits[b]) % q;
                    }
                }
                phase = (phase + pr.r(z)) % q;
            }
            acc[static_cast<std::size_t>(phase)] += v;
        }
        CycValue s(q);
        for (int k = 0; k < q; ++k) {
            s += acc[static_cast<std::size_t>(k)].times_zeta(k);
        }
        return s.scaled_p(-w.n * w.N);
    });
}

/// F phi(y) = int phi(x) psi(r(<x, y>)) dx, on the dual window (nu - N, nu - M).
/// Computed as a digit-wise DFT over (Z/p)^{n(N-M)} followed by the linear change y -> eta(y).
inline SBLocal fourier(const SBLocal& phi, const ResiduePairing& pr)
{
    detail::check_pairing(phi, pr);
    const LocalWindow& w = phi.window;
    const LocalWindow out = pr.dual_window(w);
    const int p = w.q;
    const std::int64_t S = w.size();
    const int D = w.digit_count();

    int E = 0;
    for (const auto& v : phi.values) {
        E = std::max(E, v.exponent());
    }
    // Overflow guard: |entries| grow by a factor p per digit, and by 2 in the final reduction.
    long double bound = 0;
    for (const auto& v : phi.values) {
        for (auto c : v.coeffs()) {
            bound = std::max(bound, std::abs(static_cast<long double>(c)) *
                                        std::pow(static_cast<long double>(p), E - v.exponent()));
        }
    }
    if (bound * std::pow(static_cast<long double>(p), D) * 2 * p > 4.0e18L) {
        return fourier_naive(phi, pr);
    }

    const auto P = static_cast<std::size_t>(p);
    std::vector<std::int64_t> A(static_cast<std::size_t>(S) * P, 0);
    for (std::int64_t x = 0; x < S; ++x) {
        const CycValue& v = phi.values[static_cast<std::size_t>(x)];
        const std::int64_t f = ipow64(p, E - v.exponent());
        for (std::size_t c = 0; c < v.coeffs().size(); ++c) {
            A[static_cast<std::size_t>(x) * P + c] = v.coeffs()[c] * f;
        }
    }
    std::vector<std::int64_t> tmp(P * P);
    std::int64_t stride = 1;
    for (int t = 0; t < D; ++t, stride *= p) {
        for (std::int64_t base = 0; base < S; ++base) {
            if ((base / stride) % p != 0) {
                continue;
            }
            std::fill(tmp.begin(), tmp.end(), 0);
            for (std::size_t u = 0; u < P; ++u) {
                const std::int64_t* v = &A[static_cast<std::size_t>(base + static_cast<std::int64_t>(u) * stride) * P];
                for (std::size_t k = 0; k < P; ++k) {
                    const std::size_t sh = (u * k) % P;
                    std::int64_t* o = &tmp[k * P];
                    for (std::size_t c = 0; c < P; ++c) {
                        o[(c + sh) % P] += v[c];
                    }
                }
            }
            for (std::size_t k = 0; k < P; ++k) {
                std::copy_n(&tmp[k * P], P,
                            &A[static_cast<std::size_t>(base + static_cast<std::int64_t>(k) * stride) * P]);
            }
        }
    }

    const std::vector<std::int64_t> eta = detail::eta_index(w, out, pr.kernel(w));
    SBLocal res{out, {}};
    res.values.reserve(static_cast<std::size_t>(S));
    std::vector<std::int64_t> c(P);
    for (std::int64_t y = 0; y < S; ++y) {
        const std::int64_t* v = &A[static_cast<std::size_t>(eta[static_cast<std::size_t>(y)]) * P];
        std::copy_n(v, P, c.begin());
        res.values.push_back(CycValue::from_coeffs(p, c, E + w.n * w.N));
    }
    return res;
}

/// Transform with an explicitly requested output window, which must be the dual window.
inline SBLocal fourier(const SBLocal& phi, const ResiduePairing& pr, const LocalWindow& requested)
{
    const LocalWindow expected = pr.dual_window(phi.window);
    if (!(requested == expected)) {
        throw ValidationError("requested output " + requested.str() + " does not match the dual window " +
                              expected.str() + " for conductor nu=" + std::to_string(pr.nu()));
    }
    return fourier(phi, pr);
}

/// F F phi == q^{-n nu} phi(-x).
inline bool inversion_check(const SBLocal& phi, const ResiduePairing& pr)
{
    const SBLocal ff = fourier(fourier(phi, pr), pr);
    const SBLocal expected = reflect(phi).scaled(CycValue(phi.window.q, 1).scaled_p(-phi.window.n * pr.nu()));
    return ff == expected;
}

/// sum_{x in F_q^dim} psi(f(x)) for a linear form f, by summation and by the closed form.
inline CycValue exp_sum_linear(int dim, const std::vector<int>& f, int q)
{
    if (static_cast<int>(f.size()) != dim) {
        throw ValidationError("linear form needs " + std::to_string(dim) + " coefficients");
    }
    const LocalWindow w{q, dim, 0, 1};
    w.validate();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    for (std::int64_t i = 0; i < w.size(); ++i) {
        const std::vector<int> x = w.decode(i);
        std::int64_t s = 0;
        for (int j = 0; j < dim; ++j) {
            s += static_cast<std::int64_t>(f[static_cast<std::size_t>(j)]) * x[static_cast<std::size_t>(j)];
        }
        ++counts[static_cast<std::size_t>(mod_p(s, q))];
    }
    const CycValue literal = CycValue::from_coeffs(q, counts, 0);
    const bool f_zero = std::all_of(f.begin(), f.end(), [q](int c) { return mod_p(c, q) == 0; });
    const CycValue closed = f_zero ? CycValue(q, ipow64(q, dim)) : CycValue(q);
    if (!(literal == closed)) {
        throw InvariantError("linear exponential sum " + literal.str() + " disagrees with closed form " +
                             closed.str());
    }
    return literal;
}

// Oscillatory integrals I(m, d, a) = int_{ord x = m} e(a x^d) dx with e(z) = psi(coefficient of t^0 of z).

struct NeedsBaseCase {
    int m = 0;
    int d = 1;
    int ord_b = 0;   // ord(a) + m d = 0
};

using OscClosed = std::variant<MotClass, NeedsBaseCase>;

inline OscClosed oscillatory_I_closed(int m, int d, int ord_a)
{
    if (d < 1) {
        throw ValidationError("d must be positive");
    }
    const int s = ord_a + m * d;
    if (s < 0) {
        return MotClass(0);
    }
    if (s > 0) {
        return MotClass::L_pow(-m) * (MotClass(1) - MotClass::L_pow(-1));
    }
    return NeedsBaseCase{m, d, 0};
}

/// Digits of u needed so that e(a t^{md} u^d) is constant on u + t^depth R.
inline int osc_required_depth(int m, int d, int ord_a) { return std::max(1, 1 - (ord_a + m * d)); }

namespace detail {

/// Counts phases of the t^0 coefficient of a * u^d over u = sum_{k < T} u_k t^k,
/// with digits below prefix.size() fixed and, if unit, u_0 != 0.
inline std::vector<std::int64_t> phase_counts(const FpLaurent& a, int d, const std::vector<int>& prefix, int T,
                                              bool unit, int q)
{
    const int F = static_cast<int>(prefix.size());
    long double pts = std::pow(static_cast<long double>(q), T - F);
    if (pts > static_cast<long double>(kBruteCap)) {
        throw CapExceeded("brute-force sum over " + std::to_string(q) + "^" + std::to_string(T - F) +
                          " points exceeds the cap");
    }
    std::vector<int> u(static_cast<std::size_t>(T), 0);
    for (int k = 0; k < F && k < T; ++k) {
        u[static_cast<std::size_t>(k)] = mod_p(prefix[static_cast<std::size_t>(k)], q);
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    std::vector<int> pw(static_cast<std::size_t>(T)), nxt(static_cast<std::size_t>(T));
    if (unit && F == 0 && T > 0) {
        u[0] = 1;
    }
    for (;;) {
        pw = u;
        for (int e = 1; e < d; ++e) {
            std::fill(nxt.begin(), nxt.end(), 0);
            for (int i = 0; i < T; ++i) {
                if (pw[static_cast<std::size_t>(i)] == 0) {
                    continue;
                }
                for (int j = 0; i + j < T; ++j) {
                    nxt[static_cast<std::size_t>(i + j)] += pw[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
                }
            }
            for (int i = 0; i < T; ++i) {
                pw[static_cast<std::size_t>(i)] = nxt[static_cast<std::size_t>(i)] % q;
            }
        }
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.digits.size(); ++i) {
            const int k = -(a.ord + static_cast<int>(i));
            if (k >= 0 && k < T) {
                s += static_cast<std::int64_t>(a.digits[i]) * pw[static_cast<std::size_t>(k)];
            }
        }
        ++counts[static_cast<std::size_t>(mod_p(s, q))];
        // Odometer over the free digits.
        int k = F;
        for (; k < T; ++k) {
            int& dk = u[static_cast<std::size_t>(k)];
            if (++dk < q) {
                break;
            }
            dk = (unit && k == 0) ? 1 : 0;
        }
        if (k >= T) {
            break;
        }
    }
    return counts;
}

inline FpLaurent shift(FpLaurent a, int k)
{
    a.ord += k;
    return a;
}

} // namespace detail

/// Brute-force I(m, d, a) at q: enumerate x = t^m (u_0 + ... + u_{depth-1} t^{depth-1}), u_0 != 0.
inline CycValue oscillatory_I_brute(int m, int d, const FpLaurent& a_in, int q, int depth)
{
    if (!is_prime(q)) {
        throw ValidationError("q must be prime, got " + std::to_string(q));
    }
    if (d < 1) {
        throw ValidationError("d must be positive");
    }
    const FpLaurent a = checked_laurent(a_in, q, "a");
    const int need = osc_required_depth(m, d, a.val());
    if (depth < need) {
        throw ValidationError("depth " + std::to_string(depth) + " is too small; need depth >= " +
                              std::to_string(need));
    }
    const auto counts = detail::phase_counts(detail::shift(a, m * d), d, {}, depth, true, q);
    return CycValue::from_coeffs(q, counts, m + depth);
}

/// Brute-force integral of e(a x^d) over xi + t^n R, for xi in R, without hypotheses.
inline CycValue ball_integral_brute(const FpLaurent& a_in, int n, int d, const FpLaurent& xi_in, int q)
{
    if (!is_prime(q)) {
        throw ValidationError("q must be prime, got " + std::to_string(q));
    }
    if (d < 1 || n < 0) {
        throw ValidationError("need d >= 1 and n >= 0");
    }
    const FpLaurent a = checked_laurent(a_in, q, "a");
    const FpLaurent xi = xi_in.normalized(q);
    if (!xi.is_zero() && xi.val() < 0) {
        throw ValidationError("xi must lie in R");
    }
    std::vector<int> prefix(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        prefix[static_cast<std::size_t>(k)] = xi.coeff(k);
    }
    const int T = std::max(n, 1 - a.val());
    const auto counts = detail::phase_counts(a, d, prefix, T, false, q);
    return CycValue::from_coeffs(q, counts, T);
}

inline bool shell_vanishing_hypothesis(int ord_a, int n) { return ord_a + n <= 0 && 0 < ord_a + 2 * n; }

/// Integral over xi + t^n R vanishes, given ord(a) + n <= 0 < ord(a) + 2n and |xi| = 1.
inline bool shell_vanishing_check(const FpLaurent& a_in, int n, int d, const FpLaurent& xi_in, int q)
{
    const FpLaurent a = checked_laurent(a_in, q, "a");
    const FpLaurent xi = checked_laurent(xi_in, q, "xi");
    if (xi.val() != 0) {
        throw ValidationError("xi must be a unit");
    }
    if (!shell_vanishing_hypothesis(a.val(), n)) {
        throw ValidationError("hypothesis ord(a) + n <= 0 < ord(a) + 2n fails for ord(a)=" +
                              std::to_string(a.val()) + ", n=" + std::to_string(n));
    }
    return ball_integral_brute(a, n, d, xi, q).is_zero();
}

} // namespace mhz
