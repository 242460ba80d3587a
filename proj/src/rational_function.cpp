#include "heis/rational_function.hpp"

namespace heis {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw MathError("zero denominator");
    if (num_.is_zero()) {
        den_ = Polynomial::constant(GaussRational(1));
        return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
    }
    GaussRational lc = den_.leading_coeff();
    if (!lc.is_one()) {
        GaussRational inv = lc.inv();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

GaussRational RationalFunction::constant_value() const {
    if (!is_constant()) throw MathError("rational function is not constant: " + str());
    return num_.constant_value() / den_.constant_value();
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction &o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction &o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction &o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction &o) const {
    if (o.is_zero()) throw MathError("division by zero rational function");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::inv() const {
    if (is_zero()) throw MathError("inverse of zero");
    return RationalFunction(den_, num_);
}

namespace {

// simultaneous substitution, term by term; unbound variables pass through
RationalFunction subst_poly(const Polynomial &p, const std::map<std::string, RationalFunction> &bindings) {
    RationalFunction out;
    for (const auto &[exps, coeff] : p.terms()) {
        RationalFunction m{coeff};
        for (size_t k = 0; k < exps.size(); ++k) {
            if (exps[k] == 0) continue;
            auto it = bindings.find(p.vars()[k]);
            RationalFunction base =
                it != bindings.end() ? it->second : RationalFunction::variable(p.vars()[k]);
            for (int e = 0; e < exps[k]; ++e) m *= base;
        }
        out += m;
    }
    return out;
}

} // namespace

RationalFunction RationalFunction::substitute(const std::map<std::string, RationalFunction> &bindings) const {
    RationalFunction n = subst_poly(num_, bindings);
    RationalFunction d = subst_poly(den_, bindings);
    if (d.is_zero()) throw MathError("denominator vanishes identically under substitution");
    return n / d;
}

std::string RationalFunction::str() const {
    if (den_.is_constant() && den_.constant_value().is_one()) {
        if (num_.terms().size() > 1) return num_.str();
        return num_.str();
    }
    std::string n = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
    std::string d = den_.terms().size() > 1 ? "(" + den_.str() + ")" : den_.str();
    if (!num_.is_constant() && num_.terms().size() == 1 && n.find('*') != std::string::npos)
        n = "(" + n + ")";
    if (d.find('*') != std::string::npos && d.front() != '(') d = "(" + d + ")";
    return n + "/" + d;
}

Limit limit_at_zero(const RationalFunction &f, const std::string &var) {
    if (f.is_zero()) return {false, f};
    int vn = f.num().valuation(var);
    int vd = f.den().valuation(var);
    int v = vn - vd;
    if (v < 0) return {true, RationalFunction()};
    if (v > 0) return {false, RationalFunction()};
    Polynomial n0 = f.num().shift_down(var, vn).at_zero(var);
    Polynomial d0 = f.den().shift_down(var, vd).at_zero(var);
    return {false, RationalFunction(n0, d0)};
}

} // namespace heis
