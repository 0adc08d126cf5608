#pragma once

// Boundary data of a local model, Clemens complexes, closed-form local zeta functions at
// trivial-character and integral places, pole support with an exponential twist, leading
// constants, and jet-counting oracles on monomial charts.

#include "function_field.hpp"
#include "rational_series.hpp"
#include "realizations.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mhz {

using Face = std::set<std::string>;

struct VerticalComponent {
    std::string name;
    int mu = 1;
    int rho = 0;
    std::map<std::string, int> e;   // e_{alpha,beta}, absent = 0

    int e_of(const std::string& alpha) const
    {
        const auto it = e.find(alpha);
        return it == e.end() ? 0 : it->second;
    }
};

struct BoundaryDatum {
    std::vector<std::string> alphas;
    std::map<std::string, int> rho;   // rho_alpha
    std::vector<VerticalComponent> betas;
    int n = 1;
    std::map<std::pair<Face, std::string>, MotClass> strata;   // (A, beta) -> [Delta(A, beta)]
    std::set<std::string> integral;                           // B^0

    std::vector<std::string> vars() const
    {
        std::vector<std::string> v;
        for (const auto& a : alphas) {
            v.push_back("T_" + a);
        }
        return v;
    }

    int index_of(const std::string& alpha) const
    {
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (alphas[i] == alpha) {
                return static_cast<int>(i);
            }
        }
        throw ValidationError("unknown boundary component '" + alpha + "'");
    }

    int rho_of(const std::string& alpha) const { return rho.at(alpha); }

    const VerticalComponent& beta(const std::string& name) const
    {
        for (const auto& b : betas) {
            if (b.name == name) {
                return b;
            }
        }
        throw ValidationError("unknown vertical component '" + name + "'");
    }

    MotClass stratum(const Face& A, const std::string& beta) const
    {
        const auto it = strata.find({A, beta});
        return it == strata.end() ? MotClass{} : it->second;
    }

    /// prod_alpha T_alpha^{e_{alpha,beta}}
    Exponent e_vector(const VerticalComponent& b) const
    {
        Exponent e(alphas.size(), 0);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            e[i] = b.e_of(alphas[i]);
        }
        return e;
    }

    void validate(const SymbolRegistry& reg) const
    {
        if (n < 0) {
            throw ValidationError("relative dimension must be nonnegative");
        }
        std::set<std::string> seen;
        for (const auto& a : alphas) {
            if (!seen.insert(a).second) {
                throw ValidationError("duplicate boundary component '" + a + "'");
            }
            const auto it = rho.find(a);
            if (it == rho.end() || it->second < 2) {
                throw ValidationError("boundary component '" + a + "' needs rho >= 2");
            }
        }
        std::set<std::string> bseen;
        for (const auto& b : betas) {
            if (!bseen.insert(b.name).second) {
                throw ValidationError("duplicate vertical component '" + b.name + "'");
            }
            if (b.mu < 1) {
                throw ValidationError("vertical component '" + b.name + "' needs mu >= 1");
            }
            for (const auto& [a, v] : b.e) {
                if (!seen.count(a)) {
                    throw ValidationError("e_{" + a + "," + b.name + "} refers to an unknown component");
                }
                if (v < 0) {
                    throw ValidationError("e_{" + a + "," + b.name + "} must be nonnegative");
                }
            }
        }
        for (const auto& name : integral) {
            if (!bseen.count(name)) {
                throw ValidationError("integral designation of unknown vertical component '" + name + "'");
            }
        }
        for (const auto& [key, cls] : strata) {
            const auto& [A, b] = key;
            for (const auto& a : A) {
                if (!seen.count(a)) {
                    throw ValidationError("stratum indexed by unknown component '" + a + "'");
                }
            }
            if (!bseen.count(b)) {
                throw ValidationError("stratum indexed by unknown vertical component '" + b + "'");
            }
            if (cls.is_zero()) {
                continue;
            }
            const DimNu dn = dim_nu(cls, reg);   // throws on unregistered symbols
            const int want = n - static_cast<int>(A.size());
            if (dn.minus_infinity || dn.dim != want) {
                throw ValidationError("stratum (" + face_str(A) + ", " + b + ") has dimension " +
                                      std::to_string(dn.dim) + ", expected n - |A| = " + std::to_string(want));
            }
        }
    }

    static std::string face_str(const Face& A)
    {
        std::string s = "{";
        for (const auto& a : A) {
            s += (s.size() > 1 ? "," : "") + a;
        }
        return s + "}";
    }
};

struct ClemensComplex {
    std::vector<std::string> vertices;
    std::set<Face> faces;   // nonempty faces, downward closed
    std::vector<Face> maximal;
    int dim = -1;

    /// 1 + dim: the number of vertices of a largest face.
    int d() const { return dim + 1; }

    bool contains(const Face& A) const { return A.empty() || faces.count(A) > 0; }
};

namespace detail {

inline void add_subfaces(const Face& A, std::set<Face>& out)
{
    if (A.empty() || !out.insert(A).second) {
        return;
    }
    for (const auto& a : A) {
        Face B = A;
        B.erase(a);
        add_subfaces(B, out);
    }
}

inline ClemensComplex complex_from_faces(std::vector<std::string> vertices, const std::set<Face>& generators)
{
    ClemensComplex c;
    c.vertices = std::move(vertices);
    for (const auto& A : generators) {
        add_subfaces(A, c.faces);
    }
    for (const auto& A : c.faces) {
        c.dim = std::max(c.dim, static_cast<int>(A.size()) - 1);
        const bool maximal = std::none_of(c.faces.begin(), c.faces.end(), [&](const Face& B) {
            return B.size() > A.size() && std::includes(B.begin(), B.end(), A.begin(), A.end());
        });
        if (maximal) {
            c.maximal.push_back(A);
        }
    }
    return c;
}

} // namespace detail

inline ClemensComplex clemens(const BoundaryDatum& datum)
{
    std::set<Face> gens;
    for (const auto& [key, cls] : datum.strata) {
        if (!cls.is_zero() && datum.beta(key.second).mu == 1) {
            gens.insert(key.first);
        }
    }
    return detail::complex_from_faces(datum.alphas, gens);
}

namespace detail {

/// L^{rho_beta} [Delta(A, beta)] L^{-n+|A|} (1 - L^-1)^{|A|} prod T^e prod_{alpha in A} L^{rho-1} T_alpha, no denominators.
inline LaurentPolyMot trivial_term_numerator(const BoundaryDatum& datum, const Face& A, const VerticalComponent& b)
{
    const MotClass cls = datum.stratum(A, b.name);
    if (cls.is_zero()) {
        return LaurentPolyMot(datum.vars());
    }
    const int k = static_cast<int>(A.size());
    MotClass c = MotClass::L_pow(b.rho - datum.n + k) * cls * (MotClass(1) - MotClass::L_pow(-1)).pow(k);
    Exponent e = datum.e_vector(b);
    for (const auto& a : A) {
        c *= MotClass::L_pow(datum.rho_of(a) - 1);
        e[static_cast<std::size_t>(datum.index_of(a))] += 1;
    }
    return LaurentPolyMot::monomial(datum.vars(), c, e);
}

inline SeriesFactor trivial_factor(const BoundaryDatum& datum, const std::string& a)
{
    Exponent b(datum.alphas.size(), 0);
    b[static_cast<std::size_t>(datum.index_of(a))] = 1;
    return {datum.rho_of(a) - 1, b, 1};
}

inline std::vector<Face> all_stratum_faces(const BoundaryDatum& datum)
{
    std::set<Face> out;
    for (const auto& [key, cls] : datum.strata) {
        if (!cls.is_zero()) {
            out.insert(key.first);
        }
    }
    return {out.begin(), out.end()};
}

} // namespace detail

/// Sum over (A, beta), beta in B_1, of the closed-form contribution of the stratum Delta(A, beta).
inline RationalMotSeries local_Z_trivial(const BoundaryDatum& datum, const SymbolRegistry& reg = {})
{
    datum.validate(reg);
    RationalMotSeries Z(LaurentPolyMot(datum.vars()), {});
    for (const auto& A : detail::all_stratum_faces(datum)) {
        std::vector<SeriesFactor> den;
        for (const auto& a : A) {
            den.push_back(detail::trivial_factor(datum, a));
        }
        for (const auto& b : datum.betas) {
            if (b.mu != 1) {
                continue;
            }
            const LaurentPolyMot num = detail::trivial_term_numerator(datum, A, b);
            if (!num.is_zero()) {
                Z = Z + RationalMotSeries(num, den);
            }
        }
    }
    return Z;
}

struct GroupedZ {
    std::vector<Face> faces;             // maximal faces
    std::vector<LaurentPolyMot> P;       // P_A, polynomial numerators
    std::vector<std::vector<SeriesFactor>> dens;

    RationalMotSeries term(std::size_t i) const { return RationalMotSeries(P[i], dens[i]); }

    RationalMotSeries sum(const std::vector<std::string>& vars) const
    {
        RationalMotSeries s(LaurentPolyMot(std::move(vars)), {});
        for (std::size_t i = 0; i < faces.size(); ++i) {
            s = s + term(i);
        }
        return s;
    }
};

/// Z(T, 0) = sum over maximal faces A of P_A(T) / prod_{alpha in A} (1 - L^{rho_alpha - 1} T_alpha).
/// Each stratum face is assigned to the first maximal face containing it.
inline GroupedZ local_Z_grouped(const BoundaryDatum& datum, const SymbolRegistry& reg = {})
{
    datum.validate(reg);
    const ClemensComplex cl = clemens(datum);
    GroupedZ g;
    g.faces = cl.maximal.empty() ? std::vector<Face>{Face{}} : cl.maximal;
    for (const auto& A0 : g.faces) {
        g.P.emplace_back(datum.vars());
        std::vector<SeriesFactor> den;
        for (const auto& a : A0) {
            den.push_back(detail::trivial_factor(datum, a));
        }
        g.dens.push_back(std::move(den));
    }
    for (const auto& A : detail::all_stratum_faces(datum)) {
        std::size_t slot = g.faces.size();
        for (std::size_t i = 0; i < g.faces.size(); ++i) {
            if (std::includes(g.faces[i].begin(), g.faces[i].end(), A.begin(), A.end())) {
                slot = i;
                break;
            }
        }
        for (const auto& b : datum.betas) {
            if (b.mu != 1) {
                continue;
            }
            const LaurentPolyMot num = detail::trivial_term_numerator(datum, A, b);
            if (num.is_zero()) {
                continue;
            }
            if (slot == g.faces.size()) {
                throw InvariantError("stratum face " + BoundaryDatum::face_str(A) + " lies in no maximal face");
            }
            LaurentPolyMot lifted = num;
            for (const auto& a : g.faces[slot]) {
                if (!A.count(a)) {
                    const SeriesFactor f = detail::trivial_factor(datum, a);
                    lifted = lifted * (LaurentPolyMot::constant(datum.vars(), 1) -
                                       LaurentPolyMot::monomial(datum.vars(), MotClass::L_pow(f.a), f.b));
                }
            }
            g.P[slot] = g.P[slot] + lifted;
        }
    }
    return g;
}

/// Cross-multiplied equality of the stratum sum and the maximal-face regrouping.
inline bool grouping_identity(const BoundaryDatum& datum, const SymbolRegistry& reg = {})
{
    return local_Z_trivial(datum, reg).same_function(local_Z_grouped(datum, reg).sum(datum.vars()));
}

/// sum_{beta in B^0} prod T^{e_{alpha,beta}} L^{rho_beta} [Delta(empty, beta)] L^{-n}
inline LaurentPolyMot local_Z_integral_place(const BoundaryDatum& datum, const SymbolRegistry& reg = {})
{
    datum.validate(reg);
    if (datum.integral.empty()) {
        throw ValidationError("integral place needs a nonempty B^0 designation");
    }
    LaurentPolyMot Z(datum.vars());
    for (const auto& b : datum.betas) {
        if (!datum.integral.count(b.name)) {
            continue;
        }
        const MotClass cls = datum.stratum({}, b.name);
        if (cls.is_zero()) {
            continue;
        }
        Z = Z + LaurentPolyMot::monomial(datum.vars(), MotClass::L_pow(b.rho - datum.n) * cls, datum.e_vector(b));
    }
    return Z;
}

/// T_alpha -> L^{1 - rho_alpha}: the value Z_lambda(L^-1, 0) at lambda = rho - 1.
inline std::vector<MotClass> lambda_point(const BoundaryDatum& datum)
{
    std::vector<MotClass> x;
    for (const auto& a : datum.alphas) {
        x.push_back(MotClass::L_pow(1 - datum.rho_of(a)));
    }
    return x;
}

inline MotClass eval_at(const LaurentPolyMot& p, const std::vector<MotClass>& x)
{
    MotClass v;
    for (const auto& [e, c] : p.terms()) {
        MotClass t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            t *= x[i].pow(e[i]);
        }
        v += t;
    }
    return v;
}

struct IntegralPlaceValue {
    MotClass value;
    Effectivity effectivity = Effectivity::NotCertified;
};

inline IntegralPlaceValue integral_place_value(const BoundaryDatum& datum, const SymbolRegistry& reg = {})
{
    IntegralPlaceValue r;
    r.value = eval_at(local_Z_integral_place(datum, reg), lambda_point(datum));
    r.effectivity = effectivity_certificate(r.value, reg).verdict;
    return r;
}

/// Lambda specialization T_alpha -> T^{rho_alpha - 1} of a series in the T_alpha.
inline RationalMotSeries specialize_rho_prime(const RationalMotSeries& r, const BoundaryDatum& datum)
{
    std::vector<int> lambda;
    for (const auto& a : datum.alphas) {
        lambda.push_back(datum.rho_of(a) - 1);
    }
    if (lambda.empty()) {
        RationalMotSeries out(LaurentPolyMot::constant({"T"}, r.num().eval_all(MotClass(1))), {});
        return out;
    }
    return specialize_lambda(r, lambda);
}

struct ExponentialPoles {
    ClemensComplex sub;                      // faces all of whose vertices have d_alpha = 0
    std::vector<std::string> poles;          // vertices of sub
    std::vector<std::string> trivial_poles;  // vertices of the full complex
    std::vector<SeriesFactor> raw;           // 1 - L^-1 T_alpha
    std::vector<SeriesFactor> height;        // 1 - L^{rho_alpha - 1} T_alpha
    bool strict = false;
};

/// Guaranteed denominator support of the local zeta function twisted by e(f), f with polar orders d_alpha.
inline ExponentialPoles igusa_with_exponential(const BoundaryDatum& datum, const std::map<std::string, int>& d,
                                               const SymbolRegistry& reg = {})
{
    datum.validate(reg);
    for (const auto& [a, v] : d) {
        datum.index_of(a);
        if (v < 0) {
            throw ValidationError("polar multiplicity of '" + a + "' must be nonnegative");
        }
    }
    auto d_of = [&](const std::string& a) {
        const auto it = d.find(a);
        return it == d.end() ? 0 : it->second;
    };
    const ClemensComplex full = clemens(datum);
    std::set<Face> keep;
    for (const auto& A : full.faces) {
        if (std::all_of(A.begin(), A.end(), [&](const std::string& a) { return d_of(a) == 0; })) {
            keep.insert(A);
        }
    }
    ExponentialPoles r;
    r.sub = detail::complex_from_faces(datum.alphas, keep);
    std::set<std::string> pv, tv;
    for (const auto& A : r.sub.faces) {
        pv.insert(A.begin(), A.end());
    }
    for (const auto& A : full.faces) {
        tv.insert(A.begin(), A.end());
    }
    for (const auto& a : datum.alphas) {
        if (pv.count(a)) {
            r.poles.push_back(a);
            SeriesFactor f = detail::trivial_factor(datum, a);
            r.height.push_back(f);
            f.a = -1;
            r.raw.push_back(f);
        }
        if (tv.count(a)) {
            r.trivial_poles.push_back(a);
        }
    }
    r.strict = r.poles.size() < r.trivial_poles.size();
    return r;
}

/// Coefficients of a multivariable power series up to total degree max_total.
inline std::map<Exponent, MotClass> series_coefficients(const RationalMotSeries& r, int max_total)
{
    if (!r.num().is_power_series()) {
        throw ValidationError("series has negative exponents in its numerator");
    }
    auto total = [](const Exponent& e) { return exponent_sum(e); };
    std::map<Exponent, MotClass> c;
    for (const auto& [e, v] : r.num().terms()) {
        if (total(e) <= max_total) {
            c[e] = v;
        }
    }
    for (const auto& f : r.factors()) {
        const MotClass la = MotClass::L_pow(f.a);
        const int bt = exponent_sum(f.b);
        for (int k = 0; k < f.mult; ++k) {
            // Multiply by 1/(1 - L^a T^b): c_new(e) = c(e) + L^a c_new(e - b), processed by total degree.
            std::vector<std::pair<Exponent, MotClass>> order(c.begin(), c.end());
            std::map<Exponent, MotClass> out;
            for (auto& [e, v] : order) {
                Exponent cur = e;
                MotClass w = v;
                while (total(cur) <= max_total) {
                    out[cur] += w;
                    for (std::size_t i = 0; i < cur.size(); ++i) {
                        cur[i] += f.b[i];
                    }
                    w = w * la;
                    if (bt == 0) {
                        break;
                    }
                }
            }
            c.clear();
            for (auto& [e, v] : out) {
                if (!v.is_zero()) {
                    c[e] = v;
                }
            }
        }
    }
    return c;
}

struct LeadingConstant {
    MotClass value;
    std::vector<MotClass> per_place;
    std::vector<MotClass> integral_values;
    std::vector<int> d_v;
    Effectivity effectivity = Effectivity::NotCertified;
    std::string diagnostic;
};

/// sum over maximal faces with |A_v| = d_v of prod_v P_{A_v}(L^-1) prod a/(rho_alpha - 1), times the C_0 constants.
inline LeadingConstant leading_constant(const std::vector<BoundaryDatum>& bad, const std::vector<BoundaryDatum>& good,
                                        int a, const SymbolRegistry& reg = {})
{
    if (a < 1) {
        throw ValidationError("a must be positive");
    }
    LeadingConstant r;
    r.value = MotClass(1);
    for (std::size_t v = 0; v < bad.size(); ++v) {
        const BoundaryDatum& datum = bad[v];
        for (const auto& al : datum.alphas) {
            if (a % (datum.rho_of(al) - 1) != 0) {
                throw ValidationError("a=" + std::to_string(a) + " is not a multiple of rho-1 for '" + al + "'");
            }
        }
        const GroupedZ g = local_Z_grouped(datum, reg);
        const ClemensComplex cl = clemens(datum);
        const int dv = cl.d();
        const std::vector<MotClass> pt = lambda_point(datum);
        MotClass place;
        for (std::size_t i = 0; i < g.faces.size(); ++i) {
            if (static_cast<int>(g.faces[i].size()) != dv) {
                continue;
            }
            MotClass term = eval_at(g.P[i], pt);
            for (const auto& al : g.faces[i]) {
                term *= MotClass(a / (datum.rho_of(al) - 1));
            }
            place += term;
        }
        if (place.is_zero() && r.diagnostic.empty()) {
            r.diagnostic = "place " + std::to_string(v) + ": no maximal face of size d_v=" + std::to_string(dv) +
                           " with nonempty strata contributes; the leading constant is 0";
        }
        r.d_v.push_back(dv);
        r.per_place.push_back(place);
        r.value *= place;
    }
    for (const auto& datum : good) {
        const MotClass c = integral_place_value(datum, reg).value;
        r.integral_values.push_back(c);
        r.value *= c;
    }
    if (r.value.is_zero() && r.diagnostic.empty()) {
        r.diagnostic = "an integral place contributes 0";
    }
    r.effectivity = effectivity_certificate(r.value, reg).verdict;
    return r;
}

/// Monomial chart A^n: boundary component i is {x_{coord[i]} = 0}.
struct MonomialChart {
    int n = 1;
    std::vector<int> coord;
    std::vector<int> rho;   // rho_alpha, one per component
    int rho_beta = 0;

    void validate() const
    {
        if (n < 1) {
            throw ValidationError("chart needs n >= 1");
        }
        if (coord.size() != rho.size()) {
            throw ValidationError("chart needs one rho per component");
        }
        std::set<int> used;
        for (int c : coord) {
            if (c < 0 || c >= n || !used.insert(c).second) {
                throw ValidationError("chart components must cut distinct coordinates of A^n");
            }
        }
    }

    /// Datum with one vertical component and strata Delta(A) = (L - 1)^{k - |A|} L^{n - k}.
    BoundaryDatum datum() const
    {
        validate();
        BoundaryDatum D;
        D.n = n;
        const int k = static_cast<int>(coord.size());
        for (int i = 0; i < k; ++i) {
            const std::string name = "x" + std::to_string(coord[static_cast<std::size_t>(i)]);
            D.alphas.push_back(name);
            D.rho[name] = rho[static_cast<std::size_t>(i)];
        }
        D.betas.push_back({"E", 1, rho_beta, {}});
        for (int mask = 0; mask < (1 << k); ++mask) {
            Face A;
            for (int i = 0; i < k; ++i) {
                if (mask & (1 << i)) {
                    A.insert(D.alphas[static_cast<std::size_t>(i)]);
                }
            }
            const int sz = static_cast<int>(A.size());
            D.strata[{A, "E"}] = (MotClass::L() - 1).pow(k - sz) * MotClass::L_pow(n - k);
        }
        return D;
    }
};

/// Jets mod t^{J+1} with ord x_{coord[i]} = m[i], counted over F_q and weighted by q^{rho_beta} prod q^{rho m}.
inline Rational jet_count_oracle(const MonomialChart& chart, const std::vector<int>& m, int J, int q,
                                 std::int64_t cap = kBruteCap)
{
    chart.validate();
    if (!is_prime(q)) {
        throw ValidationError("q must be prime");
    }
    if (m.size() != chart.coord.size()) {
        throw ValidationError("ord vector needs one entry per component");
    }
    for (int mi : m) {
        if (mi < 0) {
            throw ValidationError("ord entries must be nonnegative");
        }
        if (mi > J) {
            throw ValidationError("jet level " + std::to_string(J) + " cannot see ord " + std::to_string(mi));
        }
    }
    const int digits = chart.n * (J + 1);
    if (std::pow(static_cast<long double>(q), digits) > static_cast<long double>(cap)) {
        throw CapExceeded("jet space of size " + std::to_string(q) + "^" + std::to_string(digits) +
                          " exceeds the cap");
    }
    std::vector<int> want(static_cast<std::size_t>(chart.n), -1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        want[static_cast<std::size_t>(chart.coord[i])] = m[i];
    }
    std::vector<int> x(static_cast<std::size_t>(digits), 0);
    Int count = 0;
    for (;;) {
        bool ok = true;
        for (int c = 0; c < chart.n && ok; ++c) {
            const int w = want[static_cast<std::size_t>(c)];
            if (w < 0) {
                continue;
            }
            for (int k = 0; k <= w; ++k) {
                const int dig = x[static_cast<std::size_t>(c * (J + 1) + k)];
                if ((k < w && dig != 0) || (k == w && dig == 0)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            count += 1;
        }
        int pos = 0;
        for (; pos < digits; ++pos) {
            if (++x[static_cast<std::size_t>(pos)] < q) {
                break;
            }
            x[static_cast<std::size_t>(pos)] = 0;
        }
        if (pos == digits) {
            break;
        }
    }
    int lexp = chart.rho_beta - digits;
    for (std::size_t i = 0; i < m.size(); ++i) {
        lexp += chart.rho[i] * m[i];
    }
    return Rational(count) * rpow(Rational(q), lexp);
}

/// Brute-force coefficients of sum_m T^m int_{ord x = m} e(prod x_i^{-d_i}) dx on A^k, for m in [0, K]^k.
inline std::map<Exponent, CycValue> exponential_chart_brute(const std::vector<int>& d, int q, int K,
                                                            std::int64_t cap = kBruteCap)
{
    if (!is_prime(q)) {
        throw ValidationError("q must be prime");
    }
    const int k = static_cast<int>(d.size());
    if (k < 1 || K < 0) {
        throw ValidationError("need at least one coordinate and K >= 0");
    }
    for (int di : d) {
        if (di < 0) {
            throw ValidationError("polar orders must be nonnegative");
        }
    }
    std::map<Exponent, CycValue> table;
    Exponent m(static_cast<std::size_t>(k), 0);
    for (;;) {
        int S = 0;
        for (int i = 0; i < k; ++i) {
            S += d[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
        }
        const int T = S + 1;   // digits of each unit that can reach the t^0 coefficient
        if (std::pow(static_cast<long double>(q), k * T) > static_cast<long double>(cap)) {
            throw CapExceeded("exponential chart enumeration exceeds the cap");
        }
        // phase counts of the t^S coefficient of prod u_i^{-d_i}
        std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
        std::vector<std::vector<int>> u(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(T), 0));
        for (auto& ui : u) {
            ui[0] = 1;
        }
        auto mul = [&](const std::vector<int>& a, const std::vector<int>& b) {
            std::vector<int> c(static_cast<std::size_t>(T), 0);
            for (int i = 0; i < T; ++i) {
                if (a[static_cast<std::size_t>(i)] == 0) {
                    continue;
                }
                for (int j = 0; i + j < T; ++j) {
                    c[static_cast<std::size_t>(i + j)] =
                        (c[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % q;
                }
            }
            return c;
        };
        auto inv = [&](const std::vector<int>& a) {
            std::vector<int> r(static_cast<std::size_t>(T), 0);
            const int i0 = static_cast<int>(inv_mod(a[0], q));
            r[0] = i0;
            for (int n = 1; n < T; ++n) {
                int s = 0;
                for (int j = 1; j <= n; ++j) {
                    s = (s + a[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(n - j)]) % q;
                }
                r[static_cast<std::size_t>(n)] = mod_p(-s * i0, q);
            }
            return r;
        };
        for (;;) {
            std::vector<int> prod(static_cast<std::size_t>(T), 0);
            prod[0] = 1;
            for (int i = 0; i < k; ++i) {
                const std::vector<int> ui = inv(u[static_cast<std::size_t>(i)]);
                for (int e = 0; e < d[static_cast<std::size_t>(i)]; ++e) {
                    prod = mul(prod, ui);
                }
            }
            ++counts[static_cast<std::size_t>(prod[static_cast<std::size_t>(S)])];
            int i = 0;
            int pos = 0;
            for (;;) {
                if (i == k) {
                    break;
                }
                int& dig = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos)];
                if (++dig < q) {
                    break;
                }
                dig = pos == 0 ? 1 : 0;
                if (++pos == T) {
                    pos = 0;
                    ++i;
                }
            }
            if (i == k) {
                break;
            }
        }
        int e = 0;
        for (int i = 0; i < k; ++i) {
            e += m[static_cast<std::size_t>(i)] + T;
        }
        table[m] = CycValue::from_coeffs(q, counts, e);

        int i = 0;
        for (; i < k; ++i) {
            if (++m[static_cast<std::size_t>(i)] <= K) {
                break;
            }
            m[static_cast<std::size_t>(i)] = 0;
        }
        if (i == k) {
            break;
        }
    }
    return table;
}

struct ExponentialSupport {
    std::vector<int> poles;        // coordinates along which the coefficients do not terminate by K
    bool cleared = true;           // times prod_{poles} (1 - q^-1 T_i) the table has degree <= 1 in each variable
};

/// Reads the pole directions off a brute-force table and checks they account for all non-termination.
inline ExponentialSupport exponential_support(const std::map<Exponent, CycValue>& table, int k, int K, int q)
{
    if (K < 3) {
        throw ValidationError("need K >= 3 to separate poles from a degree-one numerator");
    }
    ExponentialSupport r;
    for (int i = 0; i < k; ++i) {
        for (const auto& [m, v] : table) {
            if (m[static_cast<std::size_t>(i)] == K && !v.is_zero()) {
                r.poles.push_back(i);
                break;
            }
        }
    }
    std::map<Exponent, CycValue> cur = table;
    const CycValue qinv = CycValue(q, 1).scaled_p(-1);
    for (int i : r.poles) {
        std::map<Exponent, CycValue> next;
        for (const auto& [m, v] : cur) {
            CycValue w = v;
            if (m[static_cast<std::size_t>(i)] > 0) {
                Exponent pm = m;
                --pm[static_cast<std::size_t>(i)];
                w = w - cur.at(pm) * qinv;
            }
            next.emplace(m, w);
        }
        cur = std::move(next);
    }
    for (const auto& [m, v] : cur) {
        if (std::any_of(m.begin(), m.end(), [](int x) { return x >= 2; }) && !v.is_zero()) {
            r.cleared = false;
        }
    }
    return r;
}

} // namespace mhz
