#pragma once

// The toy height zeta function of G_a in P^1 x P^1 over P^1: brute-force section counts,
// the symbolic trivial-character term, the Poisson assembly, and the main-theorem check.

#include "global_poisson.hpp"
#include "igusa_clemens.hpp"
#include "tauberian.hpp"

#include <set>
#include <string>
#include <vector>

namespace mhz {

struct ToyGeometry {
    int q = 3;
    int n = 1;
    int genus = kGenusP1;
    std::set<Place> bad{Place::inf()};   // Sigma, always containing S = {infinity}
    int slack_inf = 0;                    // extra digits on the window at infinity
    int slack_finite = 0;                 // window (0, slack) at the finite places of Sigma

    void validate() const
    {
        if (!is_prime(q) || q > 5) {
            throw ValidationError("toy geometry needs a prime q <= 5, got " + std::to_string(q));
        }
        if (n != 1 || genus != 0) {
            throw ValidationError("only the n = 1, genus 0 toy is wired end to end");
        }
        if (!bad.count(Place::inf())) {
            throw ValidationError("Sigma must contain the place at infinity");
        }
        for (const auto& s : bad) {
            if (!s.infinity && (s.c < 0 || s.c >= q)) {
                throw ValidationError("bad place " + s.str() + " is not a point of F_" + std::to_string(q));
            }
        }
        if (slack_inf < 0 || slack_finite < 0) {
            throw ValidationError("slack must be nonnegative");
        }
    }

    Differential omega() const { return Differential::dt(q); }

    /// rho_alpha = 2 from -div(dx) = 2 D_infinity; lambda = rho - 1.
    static BoundaryDatum bad_datum()
    {
        BoundaryDatum D;
        D.n = 1;
        D.alphas = {"inf"};
        D.rho["inf"] = 2;
        D.betas = {{"E", 1, 0, {}}};
        D.strata[{{}, "E"}] = MotClass::L();
        D.strata[{{"inf"}, "E"}] = MotClass(1);
        return D;
    }

    static BoundaryDatum good_datum()
    {
        BoundaryDatum D;
        D.n = 1;
        D.alphas = {"inf"};
        D.rho["inf"] = 2;
        D.betas = {{"E", 1, 0, {}}};
        D.strata[{{}, "E"}] = MotClass::L();
        D.integral = {"E"};
        return D;
    }
};

/// Counts of polynomials over F_q by degree (constants in degree 0), for degrees 0..n_max.
inline std::vector<Int> brute_force_sections(const ToyGeometry& geom, int n_max)
{
    geom.validate();
    if (n_max < 0 || n_max > 8) {
        throw CapExceeded("brute-force section count supports 0 <= n <= 8, got " + std::to_string(n_max));
    }
    const int q = geom.q;
    std::vector<Int> counts(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<int> c(static_cast<std::size_t>(n_max) + 1, 0);
    for (;;) {
        int deg = 0;
        for (int i = n_max; i > 0; --i) {
            if (c[static_cast<std::size_t>(i)] != 0) {
                deg = i;
                break;
            }
        }
        counts[static_cast<std::size_t>(deg)] += 1;
        int i = 0;
        for (; i <= n_max; ++i) {
            if (++c[static_cast<std::size_t>(i)] < q) {
                break;
            }
            c[static_cast<std::size_t>(i)] = 0;
        }
        if (i > n_max) {
            break;
        }
    }
    return counts;
}

/// Z(T, 0) = product over Sigma of the local trivial-character terms, lambda-specialized.
inline RationalMotSeries assemble_Z_trivial_term(const ToyGeometry& geom)
{
    geom.validate();
    RationalMotSeries Z(LaurentPolyMot::constant({"T"}, 1), {});
    for (const auto& s : geom.bad) {
        if (s.infinity) {
            const BoundaryDatum D = ToyGeometry::bad_datum();
            Z = Z * specialize_rho_prime(local_Z_trivial(D), D);
        } else {
            const BoundaryDatum D = ToyGeometry::good_datum();
            Z = Z * specialize_rho_prime(RationalMotSeries(local_Z_integral_place(D), {}), D);
        }
    }
    return Z;
}

/// L^{(1-g)n} Z(T, 0): the full symbolic series, the nontrivial characters contributing 0.
inline RationalMotSeries assemble_Z_symbolic(const ToyGeometry& geom)
{
    const RationalMotSeries Z = assemble_Z_trivial_term(geom);
    return RationalMotSeries(Z.num() * LaurentPolyMot::constant({"T"}, MotClass::L_pow((1 - geom.genus) * geom.n)),
                             Z.factors());
}

/// The global simple function whose sum over F is the T^h coefficient: integral at finite places,
/// pole order exactly h at infinity.
inline GlobalSB height_slice(const ToyGeometry& geom, int h)
{
    const int q = geom.q;
    GlobalSB Phi{q, geom.n, {}};
    if (h == 0) {
        Phi.set(Place::inf(), SBLocal::ball({q, geom.n, 0, geom.slack_inf}, 0));
    } else {
        Phi.set(Place::inf(), SBLocal::shell({q, geom.n, -h, -h + 1 + geom.slack_inf}, -h));
    }
    for (const auto& s : geom.bad) {
        if (!s.infinity) {
            Phi.set(s, SBLocal::ball({q, geom.n, 0, geom.slack_finite}, 0));
        }
    }
    return Phi;
}

struct PoissonCoefficient {
    int h = 0;
    int dim_E = 0;
    CycValue value;      // q^{(1-g)n} sum_xi prod_v F phi_v(xi)
    CycValue xi_zero;    // the xi = 0 term, with the global factor
    CycValue xi_rest;    // the xi != 0 terms, with the global factor
};

struct PoissonAssembly {
    std::vector<PoissonCoefficient> coeffs;
    std::vector<Int> brute;
    bool match = true;

    std::vector<Rational> values() const
    {
        std::vector<Rational> v;
        for (const auto& c : coeffs) {
            v.push_back(c.value.to_rational());
        }
        return v;
    }
};

/// Coefficients of Z_U(T) up to T^truncation via Poisson summation, compared with brute force.
inline PoissonAssembly assemble_Z_poisson(const ToyGeometry& geom, int truncation, std::int64_t cap = kLatticeCap)
{
    geom.validate();
    if (truncation < 0 || truncation > 8) {
        throw CapExceeded("Poisson assembly supports truncations 0..8, got " + std::to_string(truncation));
    }
    const int q = geom.q;
    const Differential w = geom.omega();
    PoissonAssembly out;
    for (int h = 0; h <= truncation; ++h) {
        const GlobalSB F = global_fourier(height_slice(geom, h), w);
        const Divisor D = F.lattice_divisor();
        const RRBasis E = riemann_roch_basis(D, q);
        if (E.dim() < 0) {
            throw InvariantError("dual lattice is not finite dimensional");
        }
        const std::int64_t pts = lattice_points(F);
        if (pts > cap) {
            throw CapExceeded("E = L(" + to_string(D) + ") has " + std::to_string(pts) + " points, above the cap");
        }
        PoissonCoefficient pc;
        pc.h = h;
        pc.dim_E = E.dim();
        pc.xi_zero = CycValue(q);
        pc.xi_rest = CycValue(q);
        std::vector<int> coef(static_cast<std::size_t>(E.dim()), 0);
        for (std::int64_t it = 0; it < pts; ++it) {
            FpRational xi(FpPoly::constant(q, 0), FpPoly::constant(q, 1));
            bool zero = true;
            for (int j = 0; j < E.dim(); ++j) {
                const int cj = coef[static_cast<std::size_t>(j)];
                if (cj != 0) {
                    zero = false;
                    xi = xi + FpRational(FpPoly::constant(q, cj), FpPoly::constant(q, 1)) * E.basis[static_cast<std::size_t>(j)];
                }
            }
            const CycValue v = evaluate(F, {xi});
            if (zero) {
                pc.xi_zero += v;
            } else {
                pc.xi_rest += v;
            }
            for (int j = 0; j < E.dim(); ++j) {
                int& cj = coef[static_cast<std::size_t>(j)];
                cj = (cj + 1) % q;
                if (cj != 0) {
                    break;
                }
            }
        }
        const int g = (1 - geom.genus) * geom.n;
        pc.xi_zero = pc.xi_zero.scaled_p(g);
        pc.xi_rest = pc.xi_rest.scaled_p(g);
        pc.value = pc.xi_zero + pc.xi_rest;
        out.coeffs.push_back(std::move(pc));
    }
    out.brute = brute_force_sections(geom, truncation);
    for (int h = 0; h <= truncation; ++h) {
        const CycValue& v = out.coeffs[static_cast<std::size_t>(h)].value;
        if (!v.is_rational() || v.to_rational() != Rational(out.brute[static_cast<std::size_t>(h)])) {
            out.match = false;
        }
    }
    return out;
}

/// d = sum over S of (1 + dim Cl_v).
inline int toy_pole_order(const ToyGeometry& geom)
{
    int d = 0;
    for (const auto& s : geom.bad) {
        if (s.infinity) {
            d += clemens(ToyGeometry::bad_datum()).d();
        }
    }
    return d;
}

struct MainCheck {
    int a = 1;
    int d = 1;
    RationalMotSeries P;
    bool dagger = false;
    MotClass P_at_Linv;
    Effectivity effectivity = Effectivity::NotCertified;
    TauberianReport tauberian;
};

/// (1 - L^a T^a)^d Z = P in the dagger ring, P(L^-1) effective and nonzero, and the asymptotic dichotomy.
inline MainCheck theorem_main_check(const RationalMotSeries& Z, int a, int d, const SymbolRegistry& reg = {},
                                    TauberianOptions opt = {})
{
    if (d < 1) {
        // clear_main_pole names the surviving factor
        clear_main_pole(Z, a, d);
        throw ValidationError("pole order d must be positive");
    }
    MainCheck r;
    r.a = a;
    r.d = d;
    r.P = clear_main_pole(Z, a, d);
    r.dagger = r.P.is_dagger();
    if (!r.dagger) {
        throw ValidationError("(1 - L^a T^a)^d Z = " + r.P.str() + " is not in the dagger ring");
    }
    r.P_at_Linv = evaluate_dagger_at_Linv(r.P);
    if (r.P_at_Linv.is_zero()) {
        throw InvariantError("P(L^-1) vanishes");
    }
    r.effectivity = effectivity_certificate(r.P_at_Linv, reg).verdict;
    r.tauberian = tauberian_report(merge_proportional(Z), a, d, opt, reg);
    return r;
}

} // namespace mhz
