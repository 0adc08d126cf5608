#pragma once

// Asymptotics of the coefficients M_n of Z(T) = P(T) / (1 - L^a T^a)^d, P dagger, read off from
// the partial fraction coefficients q_{1,j,p} of the (a, a) factor and checked against expand().

#include "partial_fractions.hpp"
#include "realizations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mhz {

enum class TauberCase { Case1, Case2, EmptyClass };

inline const char* to_string(TauberCase c)
{
    switch (c) {
    case TauberCase::Case1:
        return "Case1";
    case TauberCase::Case2:
        return "Case2";
    default:
        return "EmptyClass";
    }
}

struct ResidueClassReport {
    int p = 0;
    TauberCase tag = TauberCase::Case1;
    int dim_minus_n = 0;       // Case2: limit of dim(M_n) - n
    int log_nu_exponent = 0;   // Case2: limit of log nu(M_n) / log n, equals j_p - 1
    int j_p = 0;
    std::vector<MotClass> witnesses;   // q_{1,j,p}, j = 1..d
    bool verified = true;
    std::optional<int> first_mismatch;
    std::string note;
};

struct TauberianReport {
    int a = 1;
    int d = 1;
    int burn_in = 50;
    int horizon = 200;
    RationalMotSeries P;
    MotClass P_at_Linv;
    Effectivity effectivity = Effectivity::NotCertified;
    bool P_vanishes = false;
    std::vector<ResidueClassReport> classes;
    bool case2_present = false;
    bool verified = true;
};

struct TauberianOptions {
    int burn_in = 50;
    int horizon = 200;
};

inline TauberianReport tauberian_report(const RationalMotSeries& Z, int a, int d, TauberianOptions opt = {},
                                        const SymbolRegistry& reg = {})
{
    if (Z.vars().size() != 1) {
        throw ValidationError("tauberian report needs a single-variable series");
    }
    if (a < 1 || d < 1) {
        throw ValidationError("tauberian report needs a >= 1 and d >= 1");
    }
    if (!Z.num().is_power_series()) {
        throw ValidationError("tauberian report needs a power series numerator");
    }
    if (opt.burn_in < 0 || opt.horizon < opt.burn_in) {
        throw ValidationError("invalid burn-in/horizon");
    }
    std::vector<SeriesFactor> others;
    int diag_mult = 0;
    for (const auto& f : Z.factors()) {
        const int b = f.b[0];
        if (f.a == b) {
            if (f.a != a) {
                throw ValidationError("factor (1 - L^" + std::to_string(f.a) + " T^" + std::to_string(b) +
                                      ") is proportional to the main factor (1 - L^a T^a) with a=" +
                                      std::to_string(a) + "; merge it first");
            }
            diag_mult = f.mult;
        } else if (f.a > b || f.a < 0) {
            throw ValidationError("factor with a > b or a < 0 is outside M_k{T}");
        } else {
            others.push_back(f);
        }
    }
    if (diag_mult != d) {
        throw ValidationError("series has (1 - L^a T^a) with multiplicity " + std::to_string(diag_mult) +
                              ", expected d=" + std::to_string(d));
    }

    TauberianReport rep;
    rep.a = a;
    rep.d = d;
    rep.burn_in = opt.burn_in;
    rep.horizon = opt.horizon;
    rep.P = Z.times_factor({a, {a}, d});
    rep.P_at_Linv = evaluate_dagger_at_Linv(rep.P);
    rep.P_vanishes = rep.P_at_Linv.is_zero();
    rep.effectivity = effectivity_certificate(rep.P_at_Linv, reg).verdict;

    const RationalMotSeries merged_others = merge_proportional(RationalMotSeries(Z.num(), others));
    std::vector<SeriesFactor> shapes{{a, {a}, d}};
    shapes.insert(shapes.end(), merged_others.factors().begin(), merged_others.factors().end());
    const PartialFractions pf = partial_fractions(merged_others.num().to_poly(), shapes);
    const std::vector<MotClass> coeffs = expand(Z, opt.horizon);

    // Case1 bound: dim M_n <= max_i (a_i floor(n / b_i) + max dim q_{i,j,*}) for i >= 2.
    std::vector<std::optional<int>> other_dim(shapes.size());
    for (std::size_t i = 1; i < shapes.size(); ++i) {
        for (const auto& qj : pf.Qij[i]) {
            for (const auto& c : qj.coeffs()) {
                const auto dn = dim_nu(c, reg);
                if (!dn.minus_infinity) {
                    other_dim[i] = std::max(other_dim[i].value_or(dn.dim), dn.dim);
                }
            }
        }
    }
    auto case1_bound = [&](int n) -> std::optional<int> {
        std::optional<int> bound;
        for (std::size_t i = 1; i < shapes.size(); ++i) {
            if (other_dim[i]) {
                const int v = shapes[i].a * (n / shapes[i].b[0]) + *other_dim[i];
                bound = std::max(bound.value_or(v), v);
            }
        }
        if (n <= pf.Q.degree() && !pf.Q.coeff(n).is_zero()) {
            const int v = dim_nu(pf.Q.coeff(n), reg).dim;
            bound = std::max(bound.value_or(v), v);
        }
        return bound;
    };

    for (int p = 0; p < a; ++p) {
        ResidueClassReport cls;
        cls.p = p;
        std::optional<int> top;
        for (int j = 1; j <= d; ++j) {
            cls.witnesses.push_back(pf.q(0, j, p));
            const auto dn = dim_nu(cls.witnesses.back(), reg);
            if (!dn.minus_infinity && (!top || dn.dim >= *top)) {
                top = dn.dim;
                cls.j_p = j;
            }
        }
        if (top) {
            cls.tag = TauberCase::Case2;
            cls.dim_minus_n = *top - p;
            cls.log_nu_exponent = cls.j_p - 1;
            rep.case2_present = true;
            for (int n = opt.burn_in + ((p - opt.burn_in) % a + a) % a; n <= opt.horizon; n += a) {
                const int m = (n - p) / a;
                Int nu = 0;
                for (int j = 1; j <= d; ++j) {
                    const auto dn = dim_nu(cls.witnesses[static_cast<std::size_t>(j - 1)], reg);
                    if (!dn.minus_infinity && dn.dim == *top) {
                        nu += binomial(j + m - 1, j - 1) * dn.nu;
                    }
                }
                const auto got = dim_nu(coeffs[static_cast<std::size_t>(n)], reg);
                if (got.minus_infinity || got.dim - n != cls.dim_minus_n || got.nu != nu) {
                    cls.verified = false;
                    cls.first_mismatch = n;
                    cls.note = "expansion disagrees with the predicted leading term at n=" + std::to_string(n);
                    break;
                }
            }
        } else {
            bool all_zero = true;
            for (int n = p; n <= opt.horizon; n += a) {
                if (!coeffs[static_cast<std::size_t>(n)].is_zero()) {
                    all_zero = false;
                    break;
                }
            }
            cls.tag = all_zero ? TauberCase::EmptyClass : TauberCase::Case1;
            if (!all_zero) {
                for (int n = p; n <= opt.horizon; n += a) {
                    const auto got = dim_nu(coeffs[static_cast<std::size_t>(n)], reg);
                    if (got.minus_infinity) {
                        continue;
                    }
                    const auto bound = case1_bound(n);
                    if (!bound || got.dim > *bound) {
                        cls.verified = false;
                        cls.first_mismatch = n;
                        cls.note = "dimension exceeds the sub-linear bound at n=" + std::to_string(n);
                        break;
                    }
                }
            }
        }
        rep.verified = rep.verified && cls.verified;
        rep.classes.push_back(std::move(cls));
    }
    if (!rep.P_vanishes && rep.effectivity == Effectivity::Certified && !rep.case2_present) {
        rep.verified = false;
    }
    return rep;
}

} // namespace mhz
