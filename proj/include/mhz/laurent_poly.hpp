#pragma once

// Laurent polynomials in named variables T_alpha with MotClass coefficients.

#include "mot_parse.hpp"
#include "mot_poly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace mhz {

using Exponent = std::vector<int>;

class LaurentPolyMot {
public:
    explicit LaurentPolyMot(std::vector<std::string> vars = {"T"}) : vars_(std::move(vars)) {}

    static LaurentPolyMot constant(std::vector<std::string> vars, const MotClass& c)
    {
        LaurentPolyMot p(std::move(vars));
        p.add_term(Exponent(p.vars_.size(), 0), c);
        return p;
    }

    static LaurentPolyMot monomial(std::vector<std::string> vars, const MotClass& c, Exponent e)
    {
        LaurentPolyMot p(std::move(vars));
        p.check_exponent(e);
        p.add_term(e, c);
        return p;
    }

    static LaurentPolyMot from_poly(const MotPoly& f, std::string var = "T")
    {
        LaurentPolyMot p({std::move(var)});
        for (int i = 0; i <= f.degree(); ++i) {
            p.add_term({i}, f.coeff(i));
        }
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::map<Exponent, MotClass>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    MotClass coeff(const Exponent& e) const
    {
        auto it = c_.find(e);
        return it == c_.end() ? MotClass{} : it->second;
    }

    void add_term(const Exponent& e, const MotClass& c)
    {
        check_exponent(e);
        if (c.is_zero()) {
            return;
        }
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) {
            c_.erase(it);
        }
    }

    bool is_power_series() const
    {
        for (const auto& [e, c] : c_) {
            if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) {
                return false;
            }
        }
        return true;
    }

    /// Dense form of a single-variable polynomial with nonnegative exponents.
    MotPoly to_poly() const
    {
        if (vars_.size() != 1) {
            throw ValidationError("expected a single-variable polynomial");
        }
        if (!is_power_series()) {
            throw ValidationError("polynomial has negative exponents");
        }
        std::vector<MotClass> v;
        for (const auto& [e, c] : c_) {
            if (static_cast<int>(v.size()) <= e[0]) {
                v.resize(static_cast<std::size_t>(e[0]) + 1);
            }
            v[static_cast<std::size_t>(e[0])] = c;
        }
        return MotPoly(std::move(v));
    }

    friend LaurentPolyMot operator+(const LaurentPolyMot& a, const LaurentPolyMot& b)
    {
        a.check_compatible(b);
        LaurentPolyMot r = a;
        for (const auto& [e, c] : b.c_) {
            r.add_term(e, c);
        }
        return r;
    }

    friend LaurentPolyMot operator-(const LaurentPolyMot& a)
    {
        LaurentPolyMot r = a;
        for (auto& [e, c] : r.c_) {
            c = -c;
        }
        return r;
    }

    friend LaurentPolyMot operator-(const LaurentPolyMot& a, const LaurentPolyMot& b) { return a + (-b); }

    friend LaurentPolyMot operator*(const LaurentPolyMot& a, const LaurentPolyMot& b)
    {
        a.check_compatible(b);
        LaurentPolyMot r(a.vars_);
        for (const auto& [ea, ca] : a.c_) {
            for (const auto& [eb, cb] : b.c_) {
                Exponent e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const LaurentPolyMot& a, const LaurentPolyMot& b)
    {
        return a.vars_ == b.vars_ && a.c_ == b.c_;
    }

    /// Inverse of a single term with unit coefficient.
    LaurentPolyMot monomial_inverse() const
    {
        if (c_.size() != 1) {
            throw ValidationError("only single-term Laurent polynomials with unit coefficient are invertible");
        }
        const auto& [e, c] = *c_.begin();
        Exponent ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            ne[i] = -e[i];
        }
        return monomial(vars_, c.inverse(), ne);
    }

    LaurentPolyMot pow(int k) const
    {
        if (k < 0) {
            return monomial_inverse().pow(-k);
        }
        LaurentPolyMot r = constant(vars_, 1);
        for (int i = 0; i < k; ++i) {
            r = r * *this;
        }
        return r;
    }

    /// Substitute T_alpha -> prod_beta U_beta^{m[alpha][beta]}; exponent vectors map linearly.
    LaurentPolyMot substitute(const std::vector<std::string>& new_vars, const std::vector<Exponent>& images) const
    {
        if (images.size() != vars_.size()) {
            throw ValidationError("substitution needs one image per variable");
        }
        LaurentPolyMot r(new_vars);
        for (const auto& [e, c] : c_) {
            Exponent ne(new_vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                r.check_exponent(images[i]);
                for (std::size_t j = 0; j < ne.size(); ++j) {
                    ne[j] += e[i] * images[i][j];
                }
            }
            r.add_term(ne, c);
        }
        return r;
    }

    /// Evaluate with every variable set to x (x must be a unit if negative exponents occur).
    MotClass eval_all(const MotClass& x) const
    {
        MotClass r;
        for (const auto& [e, c] : c_) {
            int total = 0;
            for (int k : e) {
                total += k;
            }
            r += c * x.pow(total);
        }
        return r;
    }

    std::string str() const
    {
        if (c_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto& [e, c] : c_) {
            if (!s.empty()) {
                s += " + ";
            }
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += vars_[i];
                if (e[i] != 1) {
                    mono += "^" + std::to_string(e[i]);
                }
            }
            const std::string cs = "(" + c.str() + ")";
            if (mono.empty()) {
                s += cs;
            } else {
                s += (c == MotClass(1) ? "" : cs + "*") + mono;
            }
        }
        return s;
    }

private:
    void check_exponent(const Exponent& e) const
    {
        if (e.size() != vars_.size()) {
            throw ValidationError("exponent vector does not match the variable set");
        }
    }

    void check_compatible(const LaurentPolyMot& o) const
    {
        if (vars_ != o.vars_) {
            throw ValidationError("Laurent polynomials over different variable sets");
        }
    }

    std::vector<std::string> vars_;
    std::map<Exponent, MotClass> c_;
};

namespace detail {

struct LaurentPolicy {
    using value_type = LaurentPolyMot;
    std::vector<std::string> vars;

    LaurentPolyMot constant(const MotClass& c) const { return LaurentPolyMot::constant(vars, c); }
    LaurentPolyMot variable(const std::string& name) const
    {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
            throw ValidationError("unknown series variable '" + name + "'");
        }
        Exponent e(vars.size(), 0);
        e[static_cast<std::size_t>(it - vars.begin())] = 1;
        return LaurentPolyMot::monomial(vars, 1, e);
    }
    LaurentPolyMot divide(const LaurentPolyMot& a, const LaurentPolyMot& b) const { return a * b.monomial_inverse(); }
    LaurentPolyMot power(const LaurentPolyMot& a, int e) const { return a.pow(e); }
};

} // namespace detail

inline LaurentPolyMot parse_laurent(std::string_view text, std::vector<std::string> vars = {"T"})
{
    detail::LaurentPolicy policy{std::move(vars)};
    return detail::ExprParser<detail::LaurentPolicy>(text, policy).parse();
}

} // namespace mhz
