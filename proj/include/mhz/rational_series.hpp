#pragma once

// Rational functions N(T) / prod (1 - L^a T^b)^n over MotClass, their expansions and
// evaluations.

#include "laurent_poly.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace mhz {

/// (1 - L^a T^b)^(-mult)
struct SeriesFactor {
    int a = 0;
    Exponent b;
    int mult = 1;

    friend bool operator==(const SeriesFactor&, const SeriesFactor&) = default;
    friend auto operator<=>(const SeriesFactor&, const SeriesFactor&) = default;
};

inline int exponent_sum(const Exponent& b) { return std::accumulate(b.begin(), b.end(), 0); }

class RationalMotSeries {
public:
    RationalMotSeries() : num_({"T"}) {}

    RationalMotSeries(LaurentPolyMot num, std::vector<SeriesFactor> factors)
        : num_(std::move(num))
    {
        for (auto& f : factors) {
            if (f.b.size() != num_.nvars()) {
                throw ValidationError("factor exponent does not match the variable set");
            }
            if (std::all_of(f.b.begin(), f.b.end(), [](int x) { return x == 0; })) {
                throw ValidationError("factor 1 - L^a T^b needs b != 0");
            }
            if (std::any_of(f.b.begin(), f.b.end(), [](int x) { return x < 0; })) {
                throw ValidationError("factor exponents must be nonnegative");
            }
            if (f.mult < 0) {
                throw ValidationError("factor multiplicity must be nonnegative");
            }
            if (f.mult == 0) {
                continue;
            }
            auto it = std::find_if(factors_.begin(), factors_.end(),
                                   [&](const SeriesFactor& g) { return g.a == f.a && g.b == f.b; });
            if (it == factors_.end()) {
                factors_.push_back(f);
            } else {
                it->mult += f.mult;
            }
        }
        std::sort(factors_.begin(), factors_.end());
    }

    static RationalMotSeries polynomial(LaurentPolyMot num) { return RationalMotSeries(std::move(num), {}); }

    const LaurentPolyMot& num() const { return num_; }
    const std::vector<SeriesFactor>& factors() const { return factors_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    /// Membership in M_k{T}: every factor has sum(b) >= a >= 0.
    bool in_MkT() const
    {
        return std::all_of(factors_.begin(), factors_.end(),
                           [](const SeriesFactor& f) { return f.a >= 0 && exponent_sum(f.b) >= f.a; });
    }

    /// Membership in the dagger ring: every factor has sum(b) > a.
    bool is_dagger() const
    {
        return std::all_of(factors_.begin(), factors_.end(),
                           [](const SeriesFactor& f) { return exponent_sum(f.b) > f.a; });
    }

    LaurentPolyMot factor_poly(const SeriesFactor& f) const
    {
        return LaurentPolyMot::constant(vars(), 1) - LaurentPolyMot::monomial(vars(), MotClass::L_pow(f.a), f.b);
    }

    LaurentPolyMot denominator() const
    {
        LaurentPolyMot d = LaurentPolyMot::constant(vars(), 1);
        for (const auto& f : factors_) {
            d = d * factor_poly(f).pow(f.mult);
        }
        return d;
    }

    friend RationalMotSeries operator*(const RationalMotSeries& x, const RationalMotSeries& y)
    {
        std::vector<SeriesFactor> f = x.factors_;
        f.insert(f.end(), y.factors_.begin(), y.factors_.end());
        return RationalMotSeries(x.num_ * y.num_, std::move(f));
    }

    friend RationalMotSeries operator+(const RationalMotSeries& x, const RationalMotSeries& y)
    {
        std::vector<SeriesFactor> common;
        auto mult_in = [](const RationalMotSeries& r, const SeriesFactor& f) {
            for (const auto& g : r.factors_) {
                if (g.a == f.a && g.b == f.b) {
                    return g.mult;
                }
            }
            return 0;
        };
        for (const auto* r : {&x, &y}) {
            for (const auto& f : r->factors_) {
                if (std::none_of(common.begin(), common.end(),
                                 [&](const SeriesFactor& g) { return g.a == f.a && g.b == f.b; })) {
                    common.push_back({f.a, f.b, std::max(mult_in(x, f), mult_in(y, f))});
                }
            }
        }
        auto lift = [&](const RationalMotSeries& r) {
            LaurentPolyMot n = r.num_;
            for (const auto& f : common) {
                n = n * r.factor_poly(f).pow(f.mult - mult_in(r, f));
            }
            return n;
        };
        LaurentPolyMot n = lift(x) + lift(y);
        return RationalMotSeries(std::move(n), std::move(common));
    }

    friend RationalMotSeries operator-(const RationalMotSeries& x)
    {
        return RationalMotSeries(-x.num_, x.factors_);
    }

    friend RationalMotSeries operator-(const RationalMotSeries& x, const RationalMotSeries& y) { return x + (-y); }

    /// Equality as rational functions (cross-multiplication).
    bool same_function(const RationalMotSeries& o) const
    {
        return num_ * o.denominator() == o.num_ * denominator();
    }

    /// Removes (1 - L^a T^b)^k from the denominator (multiplying the numerator if k exceeds the multiplicity).
    RationalMotSeries times_factor(const SeriesFactor& f) const
    {
        std::vector<SeriesFactor> rest;
        int remaining = f.mult;
        for (const auto& g : factors_) {
            if (g.a == f.a && g.b == f.b) {
                const int take = std::min(g.mult, remaining);
                remaining -= take;
                if (g.mult > take) {
                    rest.push_back({g.a, g.b, g.mult - take});
                }
            } else {
                rest.push_back(g);
            }
        }
        LaurentPolyMot n = num_;
        if (remaining > 0) {
            n = n * factor_poly(f).pow(remaining);
        }
        return RationalMotSeries(std::move(n), std::move(rest));
    }

    std::string str() const
    {
        std::string s = "(" + num_.str() + ")";
        if (factors_.empty()) {
            return s;
        }
        s += " / (";
        bool first = true;
        for (const auto& f : factors_) {
            if (!first) {
                s += " * ";
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < f.b.size(); ++i) {
                if (f.b[i] == 0) {
                    continue;
                }
                mono += (mono.empty() ? "" : "*") + vars()[i] + (f.b[i] == 1 ? "" : "^" + std::to_string(f.b[i]));
            }
            std::string lpart = f.a == 0 ? "" : (f.a == 1 ? "L*" : "L^" + std::to_string(f.a) + "*");
            s += "(1 - " + lpart + mono + ")";
            if (f.mult != 1) {
                s += "^" + std::to_string(f.mult);
            }
        }
        return s + ")";
    }

private:
    LaurentPolyMot num_;
    std::vector<SeriesFactor> factors_;
};

/// Coefficients of T^0..T^n_max of a single-variable power series.
inline std::vector<MotClass> expand(const RationalMotSeries& r, int n_max)
{
    if (r.vars().size() != 1) {
        throw ValidationError("expand needs a single-variable series");
    }
    if (!r.num().is_power_series()) {
        throw ValidationError("expand needs a numerator without negative powers of T");
    }
    if (n_max < 0) {
        return {};
    }
    std::vector<MotClass> c(static_cast<std::size_t>(n_max) + 1);
    for (const auto& [e, v] : r.num().terms()) {
        if (e[0] <= n_max) {
            c[static_cast<std::size_t>(e[0])] = v;
        }
    }
    for (const auto& f : r.factors()) {
        const int b = f.b[0];
        const MotClass la = MotClass::L_pow(f.a);
        for (int k = 0; k < f.mult; ++k) {
            for (int n = b; n <= n_max; ++n) {
                const MotClass& prev = c[static_cast<std::size_t>(n - b)];
                if (!prev.is_zero()) {
                    c[static_cast<std::size_t>(n)] += la * prev;
                }
            }
        }
    }
    return c;
}

/// T_alpha -> T^lambda_alpha.
inline RationalMotSeries specialize_lambda(const RationalMotSeries& r, const std::vector<int>& lambda)
{
    if (lambda.size() != r.vars().size()) {
        throw ValidationError("lambda needs one entry per variable");
    }
    for (int l : lambda) {
        if (l <= 0) {
            throw ValidationError("lambda entries must be positive");
        }
    }
    std::vector<Exponent> images;
    for (int l : lambda) {
        images.push_back({l});
    }
    std::vector<SeriesFactor> f;
    for (const auto& g : r.factors()) {
        int b = 0;
        for (std::size_t i = 0; i < g.b.size(); ++i) {
            b += lambda[i] * g.b[i];
        }
        f.push_back({g.a, {b}, g.mult});
    }
    return RationalMotSeries(r.num().substitute({"T"}, images), std::move(f));
}

/// P(L^-1): every variable set to L^-1; needs the dagger condition.
inline MotClass evaluate_dagger_at_Linv(const RationalMotSeries& r)
{
    if (!r.is_dagger()) {
        throw ValidationError("series " + r.str() + " is not in the dagger ring: some factor has b <= a");
    }
    MotClass v = r.num().eval_all(MotClass::L_pow(-1));
    for (const auto& f : r.factors()) {
        const MotClass unit = 1 - MotClass::L_pow(f.a - exponent_sum(f.b));
        v = v * unit.inverse().pow(f.mult);
    }
    return v;
}

/// Replaces proportional factor shapes by a single factor of lcm shape, adjusting the numerator.
inline RationalMotSeries merge_proportional(const RationalMotSeries& r)
{
    struct Group {
        std::vector<int> prim;   // (a, b...) primitive
        std::vector<std::pair<int, int>> scales;   // (g, mult)
    };
    std::vector<Group> groups;
    for (const auto& f : r.factors()) {
        std::vector<int> v{f.a};
        v.insert(v.end(), f.b.begin(), f.b.end());
        int g = 0;
        for (int x : v) {
            g = std::gcd(g, std::abs(x));
        }
        for (int& x : v) {
            x /= g;
        }
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& gr) { return gr.prim == v; });
        if (it == groups.end()) {
            groups.push_back({v, {{g, f.mult}}});
        } else {
            it->scales.emplace_back(g, f.mult);
        }
    }
    LaurentPolyMot num = r.num();
    std::vector<SeriesFactor> out;
    const auto& vars = r.vars();
    for (const auto& gr : groups) {
        int K = 1;
        int total = 0;
        for (const auto& [g, m] : gr.scales) {
            K = std::lcm(K, g);
            total += m;
        }
        const Exponent b0(gr.prim.begin() + 1, gr.prim.end());
        for (const auto& [g, m] : gr.scales) {
            // (1 - X^K) = (1 - X^g) * sum_{j < K/g} X^{gj}
            LaurentPolyMot s(vars);
            for (int j = 0; j < K / g; ++j) {
                Exponent e(b0.size());
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = b0[i] * g * j;
                }
                s.add_term(e, MotClass::L_pow(gr.prim[0] * g * j));
            }
            num = num * s.pow(m);
        }
        Exponent b(b0.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] = b0[i] * K;
        }
        out.push_back({gr.prim[0] * K, b, total});
    }
    return RationalMotSeries(std::move(num), std::move(out));
}

/// (1 - L^a T^a)^d Z for a single-variable Z, by exact division of the diagonal factors 1 - (LT)^r.
/// Throws, naming the residual factors, if a pole of the main family survives.
inline RationalMotSeries clear_main_pole(const RationalMotSeries& Z, int a, int d)
{
    if (Z.vars().size() != 1) {
        throw ValidationError("clearing the main pole needs a single-variable series");
    }
    if (a < 1 || d < 0) {
        throw ValidationError("need a >= 1 and d >= 0");
    }
    if (!Z.num().is_power_series()) {
        throw ValidationError("clearing the main pole needs a power series numerator");
    }
    MotPoly Q = Z.num().to_poly() * MotPoly::binomial_factor(a, a).pow(d);
    std::vector<SeriesFactor> rest;
    std::string residual;
    for (const auto& f : Z.factors()) {
        const int r = f.b[0];
        if (f.a != r) {
            rest.push_back(f);
            continue;
        }
        const MotPoly g = MotPoly::binomial_factor(r, r);
        for (int k = 0; k < f.mult; ++k) {
            auto [quo, rem] = Q.divmod(g);
            if (!rem.is_zero()) {
                residual += " (1 - L^" + std::to_string(r) + " T^" + std::to_string(r) + ")^" +
                            std::to_string(f.mult - k);
                break;
            }
            Q = std::move(quo);
        }
    }
    if (!residual.empty()) {
        throw ValidationError("(1 - L^" + std::to_string(a) + " T^" + std::to_string(a) + ")^" + std::to_string(d) +
                              " leaves residual factors:" + residual);
    }
    return RationalMotSeries(LaurentPolyMot::from_poly(Q, Z.vars()[0]), std::move(rest));
}

} // namespace mhz
