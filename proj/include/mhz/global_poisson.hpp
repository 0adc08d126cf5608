#pragma once

// Global Schwartz-Bruhat functions on F_q(t)^n (product form over degree-one places of P^1),
// summation over rational points, the global Fourier transform and Poisson summation.

#include "function_field.hpp"

#include <map>
#include <string>
#include <vector>

namespace mhz {

inline constexpr std::int64_t kLatticeCap = 20'000'000;
inline constexpr int kGenusP1 = 0;

/// Indicator of center + t^N R^n on the window (M, N). Centers are given per coordinate.
inline SBLocal ball_factor(int q, int n, int M, int N, const std::vector<FpLaurent>& centers)
{
    if (static_cast<int>(centers.size()) != n) {
        throw ValidationError("ball needs one center per coordinate");
    }
    const LocalWindow w{q, n, M, N};
    std::vector<int> cd(static_cast<std::size_t>(w.digit_count()), 0);
    for (int i = 0; i < n; ++i) {
        const FpLaurent c = centers[static_cast<std::size_t>(i)].normalized(q);
        for (int k = c.ord; k < M; ++k) {
            if (c.coeff(k) != 0) {
                throw ValidationError("ball center " + c.str() + " has valuation below M=" + std::to_string(M));
            }
        }
        for (int k = M; k < N; ++k) {
            cd[static_cast<std::size_t>(i * w.width() + (k - M))] = c.coeff(k);
        }
    }
    return SBLocal::from_function(w, [&](const std::vector<int>& d) { return CycValue(q, d == cd ? 1 : 0); });
}

struct GlobalSB {
    int q = 2;
    int n = 1;
    std::map<Place, SBLocal> factors;   // every other place carries the indicator of R^n

    static GlobalSB unit(int q, int n) { return {q, n, {}}; }

    static SBLocal unit_factor(int q, int n) { return SBLocal::ball({q, n, 0, 0}, 0); }

    SBLocal factor(const Place& s) const
    {
        const auto it = factors.find(s);
        return it == factors.end() ? unit_factor(q, n) : it->second;
    }

    void set(const Place& s, SBLocal phi)
    {
        if (phi.window.q != q || phi.window.n != n) {
            throw ValidationError("factor at " + s.str() + " is over " + phi.window.str() + ", expected q=" +
                                  std::to_string(q) + " n=" + std::to_string(n));
        }
        if (!s.infinity && (s.c < 0 || s.c >= q)) {
            throw ValidationError("place " + s.str() + " is not a point of F_" + std::to_string(q));
        }
        factors[s] = std::move(phi);
    }

    /// D = -sum M_s [s]: the global elements in the support form L(D)^n.
    Divisor lattice_divisor() const
    {
        Divisor D;
        for (const auto& [s, phi] : factors) {
            if (phi.window.M != 0) {
                D[s] = -phi.window.M;
            }
        }
        return D;
    }

    std::string str() const
    {
        std::string s = "q=" + std::to_string(q) + " n=" + std::to_string(n);
        for (const auto& [pl, phi] : factors) {
            s += " [" + pl.str() + ": level (" + std::to_string(phi.window.M) + "," + std::to_string(phi.window.N) + ")]";
        }
        return s;
    }
};

/// Phi at a global point, by local expansion of every coordinate at every supported place.
inline CycValue evaluate(const GlobalSB& Phi, const std::vector<FpRational>& y)
{
    if (static_cast<int>(y.size()) != Phi.n) {
        throw ValidationError("point has the wrong dimension");
    }
    CycValue v(Phi.q, 1);
    for (const auto& [s, phi] : Phi.factors) {
        const LocalWindow& w = phi.window;
        std::vector<int> d(static_cast<std::size_t>(w.digit_count()), 0);
        for (int i = 0; i < w.n; ++i) {
            const FpRational& yi = y[static_cast<std::size_t>(i)];
            if (!yi.is_zero() && ord_at(yi, s) < w.M) {
                return CycValue(Phi.q);
            }
            const FpLaurent e = local_expand(yi, s, w.N);
            for (int k = w.M; k < w.N; ++k) {
                d[static_cast<std::size_t>(i * w.width() + (k - w.M))] = e.coeff(k);
            }
        }
        v *= phi.at(d);
    }
    // Outside the support the factor is the indicator of R^n.
    Divisor open;
    for (const auto& [s, phi] : Phi.factors) {
        open[s] = 1000000;
    }
    for (const auto& yi : y) {
        if (!in_riemann_roch(yi, open)) {
            return CycValue(Phi.q);
        }
    }
    return v;
}

inline std::int64_t lattice_points(const GlobalSB& Phi)
{
    const int dim = std::max(0, degree(Phi.lattice_divisor()) + 1);
    long double pts = std::pow(static_cast<long double>(Phi.q), Phi.n * dim);
    return pts > 9e18L ? INT64_MAX : static_cast<std::int64_t>(pts);
}

/// sum_{x in F^n} Phi(x), enumerated over L(D)^n with D = -sum M_s [s].
inline CycValue sum_over_rational_points(const GlobalSB& Phi, std::int64_t cap = kLatticeCap)
{
    const int q = Phi.q;
    const int n = Phi.n;
    const Divisor D = Phi.lattice_divisor();
    const RRBasis rr = riemann_roch_basis(D, q);
    const int dim = rr.dim();
    const std::int64_t total = lattice_points(Phi);
    if (total > cap) {
        throw CapExceeded("summation over L(D)^n with D = " + to_string(D) + " needs " + std::to_string(q) + "^" +
                          std::to_string(n * dim) + " points, above the cap of " + std::to_string(cap));
    }

    struct Local {
        const SBLocal* phi;
        int w;
        std::vector<std::vector<int>> B;   // B[j][k]: digit k of basis element j
        std::vector<int> acc;              // running digits, n * w
    };
    std::vector<Local> locs;
    for (const auto& [s, phi] : Phi.factors) {
        Local l{&phi, phi.window.width(), {}, std::vector<int>(static_cast<std::size_t>(n * phi.window.width()), 0)};
        for (const auto& b : rr.basis) {
            const FpLaurent e = local_expand(b, s, phi.window.N);
            if (!e.digits.empty() && e.ord < phi.window.M) {
                throw InvariantError("basis element " + b.str() + " leaves the window at " + s.str());
            }
            std::vector<int> digits(static_cast<std::size_t>(l.w));
            for (int k = 0; k < l.w; ++k) {
                digits[static_cast<std::size_t>(k)] = e.coeff(phi.window.M + k);
            }
            l.B.push_back(std::move(digits));
        }
        locs.push_back(std::move(l));
    }

    CycValue sum(q);
    std::vector<int> coef(static_cast<std::size_t>(n * dim), 0);
    for (std::int64_t it = 0; it < total; ++it) {
        CycValue v(q, 1);
        for (auto& l : locs) {
            const std::int64_t idx = l.phi->window.encode(l.acc);
            const CycValue& f = l.phi->values[static_cast<std::size_t>(idx)];
            if (f.is_zero()) {
                v = CycValue(q);
                break;
            }
            v *= f;
        }
        sum += v;
        // Odometer step on the coefficients; keep running digits in sync.
        for (int pos = 0; pos < n * dim; ++pos) {
            const int i = pos / dim;
            const int j = pos % dim;
            int& c = coef[static_cast<std::size_t>(pos)];
            const int delta = (c + 1 < q) ? 1 : -(q - 1);
            c = (c + 1) % q;
            for (auto& l : locs) {
                for (int k = 0; k < l.w; ++k) {
                    int& a = l.acc[static_cast<std::size_t>(i * l.w + k)];
                    a = mod_p(a + delta * l.B[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)], q);
                }
            }
            if (c != 0) {
                break;
            }
        }
    }
    return sum;
}

/// Local pairing of omega at s, with enough coefficients for windows of the given width.
inline ResiduePairing local_pairing(const Differential& w, const Place& s, int width)
{
    const int ord = ord_at(w, s);
    const int order = std::max(width + ord, ord + 1);
    return ResiduePairing(w.p(), local_expand(w, s, order));
}

/// Places where Phi is not the unit indicator or omega has a zero or pole.
inline std::vector<Place> fourier_support(const GlobalSB& Phi, const Differential& w)
{
    std::vector<Place> places;
    for (const auto& [s, phi] : Phi.factors) {
        places.push_back(s);
    }
    for (const auto& [s, m] : divisor(w)) {
        if (m != 0 && !Phi.factors.count(s)) {
            places.push_back(s);
        }
    }
    return places;
}

inline GlobalSB global_fourier(const GlobalSB& Phi, const Differential& w)
{
    if (w.p() != Phi.q) {
        throw ValidationError("form and function live over different fields");
    }
    if (w.f.is_zero()) {
        throw ValidationError("the form must be nonzero");
    }
    GlobalSB out{Phi.q, Phi.n, {}};
    for (const auto& s : fourier_support(Phi, w)) {
        const SBLocal phi = Phi.factor(s);
        out.set(s, fourier(phi, local_pairing(w, s, phi.window.width())));
    }
    return out;
}

/// Factorwise F F phi_s = q^{-n nu_s} phi_s(-x), with sum of nu_s = 2 - 2g, so the global factor is q^{n(2g-2)}.
inline bool global_inversion_check(const GlobalSB& Phi, const Differential& w)
{
    const GlobalSB F = global_fourier(Phi, w);
    const GlobalSB FF = global_fourier(F, w);
    int nu_total = 0;
    for (const auto& s : fourier_support(Phi, w)) {
        const int nu = -ord_at(w, s);
        nu_total += nu;
        const SBLocal phi = Phi.factor(s);
        const SBLocal expected = reflect(phi).scaled(CycValue(Phi.q, 1).scaled_p(-Phi.n * nu));
        if (!(FF.factor(s) == expected)) {
            return false;
        }
    }
    return nu_total == 2 - 2 * kGenusP1;
}

struct PoissonResult {
    CycValue lhs;
    CycValue rhs;
    bool equal = false;
};

/// sum Phi(x) against q^{(1-g)n} sum F Phi(y).
inline PoissonResult poisson_check(const GlobalSB& Phi, const Differential& w, std::int64_t cap = kLatticeCap)
{
    PoissonResult r;
    r.lhs = sum_over_rational_points(Phi, cap);
    r.rhs = sum_over_rational_points(global_fourier(Phi, w), cap).scaled_p((1 - kGenusP1) * Phi.n);
    r.equal = r.lhs == r.rhs;
    return r;
}

} // namespace mhz
