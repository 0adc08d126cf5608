// mhz: command-line workbench for the motivic height zeta library.

#include "mhz/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace mhz;
using mhz::io::get;
using mhz::io::get_or;

namespace {

struct Options {
    std::string config;
    bool json = false;
    std::optional<int> q;
    std::optional<int> depth;
    std::optional<int> precision;
};

Json load(const std::string& path)
{
    if (path.empty()) {
        throw ValidationError("--config is required");
    }
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

int field_q(const Json& j, const Options& o, const std::string& what)
{
    const int q = o.q ? *o.q : get<int>(j, "q", what);
    if (!is_prime(q)) {
        throw ValidationError("q must be prime, got " + std::to_string(q));
    }
    return q;
}

void emit(const Options& o, const Json& j, const std::string& text)
{
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string join(const std::vector<std::string>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + v[i];
    }
    return s + "]";
}

// --- series -------------------------------------------------------------------------

void cmd_series(const std::string& mode, const Options& o)
{
    const Json cfg = load(o.config);
    const std::string what = "series config";
    io::check_keys(cfg, {"series", "depth", "a", "d", "burn_in", "horizon", "symbols"}, what);
    const SymbolRegistry reg = io::registry_from_json(cfg.contains("symbols") ? cfg["symbols"] : Json());
    const RationalMotSeries r = io::series_from_json(get<Json>(cfg, "series", what));
    std::ostringstream out;
    Json j{{"series", io::to_json(r)}};
    if (mode == "expand") {
        const int depth = o.depth ? *o.depth : get_or<int>(cfg, "depth", 10, what);
        if (depth < 0 || depth > 10000) {
            throw ValidationError("depth must lie in 0..10000");
        }
        const auto c = expand(r, depth);
        std::vector<std::string> s;
        for (const auto& x : c) {
            s.push_back(x.str());
        }
        j["coefficients"] = s;
        for (std::size_t n = 0; n < c.size(); ++n) {
            out << "T^" << n << ": " << c[n].str() << "\n";
        }
    } else if (mode == "pfrac") {
        const PartialFractions pf = partial_fractions(r);
        if (!pf.as_series().same_function(r)) {
            throw InvariantError("partial fractions do not recombine to the input");
        }
        j["partial_fractions"] = io::to_json(pf);
        out << "polynomial: " << pf.Q.str() << "\n";
        for (std::size_t i = 0; i < pf.factors.size(); ++i) {
            const auto& f = pf.factors[i];
            for (int k = 1; k <= f.mult; ++k) {
                out << "(" << pf.Qij[i][static_cast<std::size_t>(k - 1)].str() << ") / (1 - L^" << f.a << "*T^"
                    << f.b[0] << ")^" << k << "\n";
            }
        }
        out << "recombines=true\n";
    } else {
        TauberianOptions opt;
        opt.burn_in = get_or<int>(cfg, "burn_in", opt.burn_in, what);
        opt.horizon = o.precision ? *o.precision : get_or<int>(cfg, "horizon", opt.horizon, what);
        const auto rep = tauberian_report(r, get_or<int>(cfg, "a", 1, what), get_or<int>(cfg, "d", 1, what), opt, reg);
        j["tauberian"] = io::to_json(rep);
        out << "P = " << rep.P.str() << "\n";
        out << "P(L^-1) = " << rep.P_at_Linv.str() << " " << to_string(rep.effectivity) << "\n";
        for (const auto& c : rep.classes) {
            out << "class " << c.p << ": " << to_string(c.tag);
            if (c.tag == TauberCase::Case2) {
                out << " dim-n -> " << c.dim_minus_n << ", nu-exponent -> " << c.log_nu_exponent;
            }
            out << " verified=" << (c.verified ? "true" : "false") << "\n";
        }
        out << "verified=" << (rep.verified ? "true" : "false") << "\n";
        if (!rep.verified) {
            emit(o, j, out.str());
            throw InvariantError("tauberian prediction disagrees with the expansion");
        }
    }
    emit(o, j, out.str());
}

// --- local --------------------------------------------------------------------------

void cmd_local(const std::string& mode, const Options& o)
{
    const Json cfg = load(o.config);
    const std::string what = "local config";
    std::ostringstream out;
    if (mode == "osc") {
        io::check_keys(cfg, {"q", "m", "d", "a", "depth"}, what);
        const int q = field_q(cfg, o, what);
        const int m = get<int>(cfg, "m", what);
        const int d = get<int>(cfg, "d", what);
        const FpLaurent a = checked_laurent(io::laurent_from_json(get<Json>(cfg, "a", what), "a"), q, "a");
        const int need = osc_required_depth(m, d, a.val());
        const int depth = o.depth ? *o.depth : get_or<int>(cfg, "depth", need, what);
        const CycValue brute = oscillatory_I_brute(m, d, a, q, depth);
        const OscClosed closed = oscillatory_I_closed(m, d, a.val());
        Json j{{"q", q}, {"m", m}, {"d", d}, {"a", io::to_json(a)}, {"depth", depth}, {"brute", io::to_json(brute)}};
        out << brute.str() << "\n";
        if (const auto* c = std::get_if<MotClass>(&closed)) {
            const Rational cv = count_realize(*c, q);
            const bool agree = (q % d != 0) ? brute == CycValue::from_rational(q, cv) : true;
            j["closed"] = c->str();
            j["closed_at_q"] = to_string(cv);
            out << "closed=" << c->str() << " at q: " << to_string(cv) << "\n";
            if (q % d != 0) {
                j["agree"] = agree;
                out << "agree=" << (agree ? "true" : "false") << "\n";
                if (!agree) {
                    emit(o, j, out.str());
                    throw InvariantError("closed form and brute force disagree");
                }
            }
        } else {
            j["closed"] = "base case ord(a) + m d = 0";
            out << "closed=base case ord(a) + m d = 0\n";
        }
        emit(o, j, out.str());
        return;
    }
    io::check_keys(cfg, {"q", "n", "form", "phi"}, what);
    const int q = field_q(cfg, o, what);
    const int n = get_or<int>(cfg, "n", 1, what);
    const FpLaurent f =
        cfg.contains("form") ? io::laurent_from_json(cfg["form"], "form") : FpLaurent::monomial(0, 1);
    const ResiduePairing pr(q, f);
    const SBLocal phi = io::sb_from_json(get<Json>(cfg, "phi", what), q, n, "phi");
    Json j{{"q", q}, {"n", n}, {"nu", pr.nu()}, {"phi", io::to_json(phi)}};
    if (mode == "fourier") {
        const SBLocal F = fourier(phi, pr);
        j["fourier"] = io::to_json(F);
        out << "window " << phi.window.str() << " -> " << F.window.str() << " (nu=" << pr.nu() << ")\n";
        for (std::int64_t i = 0; i < F.window.size(); ++i) {
            const auto d = F.window.decode(i);
            std::string ds;
            for (int x : d) {
                ds += std::to_string(x);
            }
            out << (ds.empty() ? "-" : ds) << ": " << F.values[static_cast<std::size_t>(i)].str() << "\n";
        }
    } else {
        const bool ok = inversion_check(phi, pr);
        j["inversion"] = ok;
        out << "FF phi = q^(-n nu) phi(-x): inversion=" << (ok ? "true" : "false") << "\n";
        if (!ok) {
            emit(o, j, out.str());
            throw InvariantError("Fourier inversion failed");
        }
    }
    emit(o, j, out.str());
}

// --- poisson ------------------------------------------------------------------------

void cmd_poisson(const Options& o)
{
    const Json cfg = load(o.config);
    const std::string what = "poisson config";
    io::check_keys(cfg, {"q", "n", "form", "factors"}, what);
    const int q = field_q(cfg, o, what);
    const int n = get_or<int>(cfg, "n", 1, what);
    Differential w = Differential::dt(q);
    if (cfg.contains("form")) {
        const Json& fj = cfg["form"];
        io::check_keys(fj, {"num", "den"}, "form");
        const FpPoly num = io::poly_from_json(get<Json>(fj, "num", "form"), q, "form");
        const FpPoly den = fj.contains("den") ? io::poly_from_json(fj["den"], q, "form") : FpPoly::constant(q, 1);
        w = Differential{FpRational(num, den)};
    }
    const GlobalSB Phi = io::global_from_json(get_or<Json>(cfg, "factors", Json::array(), what), q, n);
    const PoissonResult r = poisson_check(Phi, w);
    Json j{{"q", q}, {"n", n}, {"form", w.f.str() + " dt"}, {"lhs", io::to_json(r.lhs)},
           {"rhs", io::to_json(r.rhs)}, {"equal", r.equal}};
    std::ostringstream out;
    out << "lhs=" << r.lhs.str() << " rhs=" << r.rhs.str() << " equal=" << (r.equal ? "true" : "false") << "\n";
    emit(o, j, out.str());
    if (!r.equal) {
        throw InvariantError("Poisson summation failed");
    }
}

// --- igusa --------------------------------------------------------------------------

void cmd_igusa(const Options& o)
{
    const Json cfg = load(o.config);
    const std::string what = "igusa config";
    io::check_keys(cfg, {"datum", "symbols", "polar", "a", "integral_places"}, what);
    const SymbolRegistry reg = io::registry_from_json(cfg.contains("symbols") ? cfg["symbols"] : Json());
    const BoundaryDatum D = io::datum_from_json(get<Json>(cfg, "datum", what));
    const ClemensComplex cl = clemens(D);
    const RationalMotSeries Z = local_Z_trivial(D, reg);
    const GroupedZ g = local_Z_grouped(D, reg);
    const bool grouped_ok = Z.same_function(g.sum(D.vars()));
    Json j{{"clemens", io::to_json(cl)}, {"d_v", cl.d()}, {"Z", io::to_json(Z)}, {"grouping_identity", grouped_ok}};
    std::ostringstream out;
    out << "clemens dim=" << cl.dim << " d_v=" << cl.d() << " maximal faces=" << cl.maximal.size() << "\n";
    out << "Z(T,0) = " << Z.str() << "\n";
    Json grouped = Json::array();
    for (std::size_t i = 0; i < g.faces.size(); ++i) {
        grouped.push_back({{"face", std::vector<std::string>(g.faces[i].begin(), g.faces[i].end())},
                           {"term", io::to_json(g.term(i))}});
        out << "  face " << BoundaryDatum::face_str(g.faces[i]) << ": " << g.term(i).str() << "\n";
    }
    j["grouped"] = grouped;
    out << "grouping identity=" << (grouped_ok ? "true" : "false") << "\n";
    if (cfg.contains("polar")) {
        const auto polar = get<std::map<std::string, int>>(cfg, "polar", what);
        const ExponentialPoles ep = igusa_with_exponential(D, polar, reg);
        j["exponential"] = {{"poles", ep.poles}, {"trivial_poles", ep.trivial_poles}, {"strict", ep.strict}};
        out << "exponential poles=" << join(ep.poles) << " of " << join(ep.trivial_poles)
            << " strict=" << (ep.strict ? "true" : "false") << "\n";
    }
    if (!D.integral.empty()) {
        const IntegralPlaceValue v = integral_place_value(D, reg);
        j["integral_place"] = {{"Z", local_Z_integral_place(D, reg).str()}, {"value", v.value.str()},
                               {"effectivity", to_string(v.effectivity)}};
        out << "integral place value=" << v.value.str() << " " << to_string(v.effectivity) << "\n";
    }
    if (cfg.contains("a")) {
        std::vector<BoundaryDatum> good;
        for (const auto& x : get_or<Json>(cfg, "integral_places", Json::array(), what)) {
            good.push_back(io::datum_from_json(x));
        }
        const LeadingConstant lc = leading_constant({D}, good, get<int>(cfg, "a", what), reg);
        j["leading_constant"] = {{"value", lc.value.str()}, {"effectivity", to_string(lc.effectivity)},
                                 {"diagnostic", lc.diagnostic}};
        out << "leading constant=" << lc.value.str() << " " << to_string(lc.effectivity) << "\n";
        if (!lc.diagnostic.empty()) {
            out << "diagnostic: " << lc.diagnostic << "\n";
        }
    }
    emit(o, j, out.str());
    if (!grouped_ok) {
        throw InvariantError("maximal-face regrouping disagrees with the stratum sum");
    }
}

// --- height -------------------------------------------------------------------------

void cmd_height(const Options& o)
{
    const Json cfg = load(o.config);
    const std::string what = "height config";
    io::check_keys(cfg, {"q", "n_max", "slack_inf", "slack_finite", "extra_places", "burn_in", "horizon"}, what);
    ToyGeometry g;
    g.q = field_q(cfg, o, what);
    g.slack_inf = get_or<int>(cfg, "slack_inf", 0, what);
    g.slack_finite = get_or<int>(cfg, "slack_finite", 0, what);
    for (int c : get_or<std::vector<int>>(cfg, "extra_places", {}, what)) {
        g.bad.insert(Place::finite(c));
    }
    g.validate();
    const int n_max = o.depth ? *o.depth : get_or<int>(cfg, "n_max", 4, what);
    const PoissonAssembly pa = assemble_Z_poisson(g, n_max);
    std::vector<std::string> coeffs, brute;
    for (const auto& v : pa.values()) {
        coeffs.push_back(to_string(v));
    }
    for (const auto& v : pa.brute) {
        brute.push_back(v.str());
    }
    const RationalMotSeries Z = assemble_Z_symbolic(g);
    const int d = toy_pole_order(g);
    TauberianOptions opt;
    opt.burn_in = get_or<int>(cfg, "burn_in", opt.burn_in, what);
    opt.horizon = o.precision ? *o.precision : get_or<int>(cfg, "horizon", opt.horizon, what);
    const MainCheck mc = theorem_main_check(Z, 1, d, {}, opt);
    const auto& cls = mc.tauberian.classes.at(0);

    Json j{{"q", g.q},
           {"n_max", n_max},
           {"coefficients", coeffs},
           {"brute_force", brute},
           {"match", pa.match},
           {"Z", io::to_json(Z)},
           {"pole_order", d},
           {"P", io::to_json(mc.P)},
           {"P_at_Linv", mc.P_at_Linv.str()},
           {"effectivity", to_string(mc.effectivity)},
           {"tauberian", io::to_json(mc.tauberian)}};
    std::ostringstream out;
    out << "coefficients=" << join(coeffs) << "\n";
    out << "brute_force=" << join(brute) << "\n";
    out << "match=" << (pa.match ? "true" : "false") << "\n";
    out << "Z(T) = " << Z.str() << "\n";
    out << "pole order d=" << d << "\n";
    out << "P_U(L^-1) = " << mc.P_at_Linv.str() << " " << to_string(mc.effectivity) << "\n";
    out << "dim-n -> " << cls.dim_minus_n << ", nu-exponent -> " << cls.log_nu_exponent
        << " verified=" << (mc.tauberian.verified ? "true" : "false") << "\n";
    emit(o, j, out.str());
    if (!pa.match) {
        throw InvariantError("Poisson assembly disagrees with brute-force section counts");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mhz: motivic height zeta workbench"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON config file")->required();
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("--q", o.q, "override the field size");
        sub->add_option("--depth", o.depth, "expansion depth / truncation");
        sub->add_option("--precision", o.precision, "asymptotic check horizon");
    };
    std::string series_mode, local_mode;
    auto* series = app.add_subcommand("series", "expand, decompose or analyse a rational series");
    series->add_option("mode", series_mode, "expand | pfrac | taub")
        ->required()
        ->check(CLI::IsMember({"expand", "pfrac", "taub"}));
    add_common(series);
    auto* local = app.add_subcommand("local", "local Fourier transform, inversion, oscillatory integrals");
    local->add_option("mode", local_mode, "fourier | invert | osc")
        ->required()
        ->check(CLI::IsMember({"fourier", "invert", "osc"}));
    add_common(local);
    auto* poisson = app.add_subcommand("poisson", "Poisson summation on P^1");
    add_common(poisson);
    auto* igusa = app.add_subcommand("igusa", "Clemens complex and local zeta functions");
    add_common(igusa);
    auto* height = app.add_subcommand("height", "end-to-end toy height zeta function");
    add_common(height);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*series) {
            cmd_series(series_mode, o);
        } else if (*local) {
            cmd_local(local_mode, o);
        } else if (*poisson) {
            cmd_poisson(o);
        } else if (*igusa) {
            cmd_igusa(o);
        } else if (*height) {
            cmd_height(o);
        }
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
