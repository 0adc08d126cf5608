#pragma once

// JSON forms of the workbench objects. Readers reject unknown fields.

#include "height_zeta.hpp"
#include "partial_fractions.hpp"

#include "json.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace mhz {

using Json = nlohmann::ordered_json;

namespace io {

inline void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what)
{
    if (!j.is_object()) {
        throw ValidationError(what + ": expected an object");
    }
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || k == a;
        }
        if (!ok) {
            throw ValidationError(what + ": unknown field '" + k + "'");
        }
    }
}

template <typename T>
T get(const Json& j, const char* key, const std::string& what)
{
    if (!j.contains(key)) {
        throw ValidationError(what + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(what + ": field '" + std::string(key) + "' has the wrong type");
    }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, const std::string& what)
{
    return j.contains(key) ? get<T>(j, key, what) : fallback;
}

// --- classes and series -------------------------------------------------------------

inline Json to_json(const MotClass& x) { return x.str(); }

inline MotClass mot_from_json(const Json& j, const std::string& what)
{
    if (j.is_number_integer()) {
        return MotClass(Int(j.get<std::int64_t>()));
    }
    if (!j.is_string()) {
        throw ValidationError(what + ": a class is written as a string");
    }
    return parse_mot(j.get<std::string>());
}

inline Json to_json(const RationalMotSeries& r)
{
    Json f = Json::array();
    for (const auto& s : r.factors()) {
        f.push_back(Json::array({s.a, s.b, s.mult}));
    }
    return Json{{"vars", r.vars()}, {"num", r.num().str()}, {"factors", f}, {"dagger", r.is_dagger()}};
}

inline RationalMotSeries series_from_json(const Json& j, const std::string& what = "series")
{
    check_keys(j, {"vars", "num", "factors", "dagger"}, what);
    const auto vars = get_or<std::vector<std::string>>(j, "vars", {"T"}, what);
    const LaurentPolyMot num = parse_laurent(get<std::string>(j, "num", what), vars);
    std::vector<SeriesFactor> factors;
    for (const auto& f : get_or<Json>(j, "factors", Json::array(), what)) {
        if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() || !f[2].is_number_integer()) {
            throw ValidationError(what + ": a factor is written [a, [b...], mult]");
        }
        Exponent b;
        if (f[1].is_number_integer()) {
            b = {f[1].get<int>()};
        } else {
            try {
                b = f[1].get<Exponent>();
            } catch (const nlohmann::json::exception&) {
                throw ValidationError(what + ": factor exponent must be an integer list");
            }
        }
        factors.push_back({f[0].get<int>(), b, f[2].get<int>()});
    }
    RationalMotSeries r(num, factors);
    if (j.contains("dagger") && get<bool>(j, "dagger", what) != r.is_dagger()) {
        throw ValidationError(what + ": 'dagger' disagrees with the factors");
    }
    return r;
}

inline Json to_json(const PartialFractions& pf)
{
    Json terms = Json::array();
    for (std::size_t i = 0; i < pf.factors.size(); ++i) {
        const auto& f = pf.factors[i];
        for (int j = 1; j <= f.mult; ++j) {
            terms.push_back({{"factor", Json::array({f.a, f.b, j})},
                             {"numerator", pf.Qij[i][static_cast<std::size_t>(j - 1)].str()}});
        }
    }
    return Json{{"polynomial", pf.Q.str()}, {"terms", terms}};
}

// --- symbols ------------------------------------------------------------------------

inline SymbolRegistry registry_from_json(const Json& j)
{
    SymbolRegistry reg;
    if (j.is_null()) {
        return reg;
    }
    if (!j.is_array()) {
        throw ValidationError("symbols: expected a list");
    }
    for (const auto& s : j) {
        const std::string what = "symbol";
        check_keys(s, {"name", "dim", "poincare", "counts", "effective"}, what);
        StratumSymbol sym;
        sym.name = get<std::string>(s, "name", what);
        sym.dim = get<int>(s, "dim", what);
        std::vector<Int> pc;
        for (auto c : get<std::vector<std::int64_t>>(s, "poincare", what)) {
            pc.emplace_back(c);
        }
        sym.poincare = IntPoly(pc);
        const Json counts = get_or<Json>(s, "counts", Json::object(), what);
        for (const auto& [q, c] : counts.items()) {
            try {
                sym.counts[std::stoll(q)] = Int(c.get<std::int64_t>());
            } catch (const std::exception&) {
                throw ValidationError("symbol '" + sym.name + "': counts map q to integers");
            }
        }
        sym.effective = get_or<bool>(s, "effective", true, what);
        reg.add(sym);
    }
    reg.freeze();
    return reg;
}

// --- local objects ------------------------------------------------------------------

inline Json to_json(const FpLaurent& a) { return Json{{"ord", a.ord}, {"digits", a.digits}}; }

inline FpLaurent laurent_from_json(const Json& j, const std::string& what)
{
    check_keys(j, {"ord", "digits"}, what);
    return FpLaurent{get<int>(j, "ord", what), get<std::vector<int>>(j, "digits", what)};
}

inline Json to_json(const CycValue& v)
{
    if (v.is_rational()) {
        return to_string(v.to_rational());
    }
    return Json{{"p", v.p()}, {"e", v.exponent()}, {"coeffs", v.coeffs()}};
}

inline CycValue cyc_from_json(const Json& j, int p, const std::string& what)
{
    if (j.is_number_integer()) {
        return CycValue(p, j.get<std::int64_t>());
    }
    if (j.is_string()) {
        try {
            return CycValue::from_rational(p, Rational(j.get<std::string>()));
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw ValidationError(what + ": cannot read '" + j.get<std::string>() + "' as a rational");
        }
    }
    check_keys(j, {"p", "e", "coeffs"}, what);
    if (get<int>(j, "p", what) != p) {
        throw ValidationError(what + ": value over the wrong cyclotomic field");
    }
    return CycValue::from_coeffs(p, get<std::vector<std::int64_t>>(j, "coeffs", what), get<int>(j, "e", what));
}

/// {"M", "N", "kind": ball|shell|point|table, "r"|"m"|"values"}
inline SBLocal sb_from_json(const Json& j, int q, int n, const std::string& what)
{
    check_keys(j, {"M", "N", "kind", "r", "m", "values"}, what);
    const LocalWindow w{q, n, get<int>(j, "M", what), get<int>(j, "N", what)};
    w.validate();
    const std::string kind = get_or<std::string>(j, "kind", "ball", what);
    if (kind == "ball") {
        return SBLocal::ball(w, get_or<int>(j, "r", w.M, what));
    }
    if (kind == "shell") {
        return SBLocal::shell(w, get<int>(j, "m", what));
    }
    if (kind == "point") {
        return SBLocal::point_mass(w);
    }
    if (kind == "table") {
        const Json vals = get<Json>(j, "values", what);
        if (!vals.is_array() || static_cast<std::int64_t>(vals.size()) != w.size()) {
            throw ValidationError(what + ": table needs " + std::to_string(w.size()) + " values");
        }
        SBLocal phi{w, {}};
        for (const auto& v : vals) {
            phi.values.push_back(cyc_from_json(v, q, what));
        }
        return phi;
    }
    throw ValidationError(what + ": unknown kind '" + kind + "'");
}

inline Json to_json(const SBLocal& phi)
{
    Json vals = Json::array();
    for (const auto& v : phi.values) {
        vals.push_back(to_json(v));
    }
    return Json{{"M", phi.window.M}, {"N", phi.window.N}, {"kind", "table"}, {"values", vals}};
}

inline Place place_from_json(const Json& j, const std::string& what)
{
    if (j.is_string() && j.get<std::string>() == "inf") {
        return Place::inf();
    }
    if (j.is_number_integer()) {
        return Place::finite(j.get<int>());
    }
    throw ValidationError(what + ": a place is \"inf\" or an element of F_q");
}

inline Json to_json(const Place& s) { return s.infinity ? Json("inf") : Json(s.c); }

inline FpPoly poly_from_json(const Json& j, int q, const std::string& what)
{
    try {
        return FpPoly(q, j.get<std::vector<int>>());
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(what + ": a polynomial is a coefficient list, constant term first");
    }
}

inline GlobalSB global_from_json(const Json& j, int q, int n)
{
    const std::string what = "global function";
    GlobalSB Phi{q, n, {}};
    if (!j.is_array()) {
        throw ValidationError(what + ": factors form a list");
    }
    for (const auto& f : j) {
        check_keys(f, {"place", "phi"}, what);
        const Place s = place_from_json(get<Json>(f, "place", what), what);
        Phi.set(s, sb_from_json(get<Json>(f, "phi", what), q, n, "factor at " + s.str()));
    }
    return Phi;
}

inline Json to_json(const GlobalSB& Phi)
{
    Json f = Json::array();
    for (const auto& [s, phi] : Phi.factors) {
        f.push_back({{"place", to_json(s)}, {"phi", to_json(phi)}});
    }
    return f;
}

// --- boundary data ------------------------------------------------------------------

inline BoundaryDatum datum_from_json(const Json& j)
{
    const std::string what = "boundary datum";
    check_keys(j, {"n", "alphas", "betas", "strata", "integral"}, what);
    BoundaryDatum D;
    D.n = get<int>(j, "n", what);
    for (const auto& a : get_or<Json>(j, "alphas", Json::array(), what)) {
        check_keys(a, {"name", "rho"}, "boundary component");
        const auto name = get<std::string>(a, "name", "boundary component");
        D.alphas.push_back(name);
        D.rho[name] = get<int>(a, "rho", "boundary component");
    }
    for (const auto& b : get<Json>(j, "betas", what)) {
        const std::string w = "vertical component";
        check_keys(b, {"name", "mu", "rho", "e"}, w);
        VerticalComponent v;
        v.name = get<std::string>(b, "name", w);
        v.mu = get_or<int>(b, "mu", 1, w);
        v.rho = get_or<int>(b, "rho", 0, w);
        v.e = get_or<std::map<std::string, int>>(b, "e", {}, w);
        D.betas.push_back(v);
    }
    for (const auto& s : get_or<Json>(j, "strata", Json::array(), what)) {
        const std::string w = "stratum";
        check_keys(s, {"A", "beta", "class"}, w);
        const auto A = get<std::vector<std::string>>(s, "A", w);
        D.strata[{Face(A.begin(), A.end()), get<std::string>(s, "beta", w)}] = mot_from_json(get<Json>(s, "class", w), w);
    }
    const auto integral = get_or<std::vector<std::string>>(j, "integral", {}, what);
    D.integral = {integral.begin(), integral.end()};
    return D;
}

inline Json to_json(const BoundaryDatum& D)
{
    Json alphas = Json::array();
    for (const auto& a : D.alphas) {
        alphas.push_back({{"name", a}, {"rho", D.rho_of(a)}});
    }
    Json betas = Json::array();
    for (const auto& b : D.betas) {
        betas.push_back({{"name", b.name}, {"mu", b.mu}, {"rho", b.rho}, {"e", b.e}});
    }
    Json strata = Json::array();
    for (const auto& [key, cls] : D.strata) {
        strata.push_back({{"A", std::vector<std::string>(key.first.begin(), key.first.end())},
                          {"beta", key.second},
                          {"class", cls.str()}});
    }
    return Json{{"n", D.n}, {"alphas", alphas}, {"betas", betas}, {"strata", strata},
                {"integral", std::vector<std::string>(D.integral.begin(), D.integral.end())}};
}

inline bool same_datum(const BoundaryDatum& a, const BoundaryDatum& b)
{
    if (a.n != b.n || a.alphas != b.alphas || a.rho != b.rho || a.strata != b.strata || a.integral != b.integral ||
        a.betas.size() != b.betas.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.betas.size(); ++i) {
        const auto& x = a.betas[i];
        const auto& y = b.betas[i];
        if (x.name != y.name || x.mu != y.mu || x.rho != y.rho || x.e != y.e) {
            return false;
        }
    }
    return true;
}

inline Json to_json(const ClemensComplex& c)
{
    Json faces = Json::array();
    for (const auto& A : c.faces) {
        faces.push_back(std::vector<std::string>(A.begin(), A.end()));
    }
    Json maximal = Json::array();
    for (const auto& A : c.maximal) {
        maximal.push_back(std::vector<std::string>(A.begin(), A.end()));
    }
    return Json{{"vertices", c.vertices}, {"faces", faces}, {"maximal", maximal}, {"dim", c.dim}};
}

inline Json to_json(const TauberianReport& r)
{
    Json classes = Json::array();
    for (const auto& c : r.classes) {
        Json w = Json::array();
        for (const auto& x : c.witnesses) {
            w.push_back(x.str());
        }
        classes.push_back({{"p", c.p},
                           {"case", to_string(c.tag)},
                           {"dim_minus_n", c.dim_minus_n},
                           {"log_nu_exponent", c.log_nu_exponent},
                           {"j_p", c.j_p},
                           {"witnesses", w},
                           {"verified", c.verified},
                           {"note", c.note}});
    }
    return Json{{"a", r.a},
                {"d", r.d},
                {"burn_in", r.burn_in},
                {"horizon", r.horizon},
                {"P", to_json(r.P)},
                {"P_at_Linv", r.P_at_Linv.str()},
                {"effectivity", to_string(r.effectivity)},
                {"classes", classes},
                {"verified", r.verified}};
}

} // namespace io
} // namespace mhz
