#include "heis/polynomial.hpp"

#include <algorithm>
#include <cassert>

namespace heis {

int var_rank(const std::string &name) {
    if (name == kVarT) return 0;
    if (name == kVarLambda) return 1;
    if (name == kVarMu) return 2;
    return 3;
}

bool var_precedes(const std::string &a, const std::string &b) {
    int ra = var_rank(a), rb = var_rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

Polynomial Polynomial::constant(const GaussRational &c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_[{}] = c;
    return p;
}

Polynomial Polynomial::variable(const std::string &name) {
    Polynomial p;
    p.vars_ = {name};
    p.terms_[{1}] = GaussRational(1);
    return p;
}

GaussRational Polynomial::constant_value() const {
    if (terms_.empty()) return GaussRational(0);
    return terms_.begin()->second;
}

void Polynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto &[e, c] : terms_)
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0) used[k] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    for (size_t k = 0; k < vars_.size(); ++k)
        if (used[k]) nv.push_back(vars_[k]);
    TermMap nt;
    for (const auto &[e, c] : terms_) {
        Exponents ne;
        for (size_t k = 0; k < vars_.size(); ++k)
            if (used[k]) ne.push_back(e[k]);
        nt[ne] = c;
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

Polynomial Polynomial::remapped(const std::vector<std::string> &newvars) const {
    Polynomial r;
    r.vars_ = newvars;
    std::vector<int> pos(vars_.size());
    for (size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(newvars.begin(), newvars.end(), vars_[k]);
        assert(it != newvars.end());
        pos[k] = int(it - newvars.begin());
    }
    for (const auto &[e, c] : terms_) {
        Exponents ne(newvars.size(), 0);
        for (size_t k = 0; k < e.size(); ++k) ne[pos[k]] = e[k];
        r.terms_[ne] = c;
    }
    return r;
}

void Polynomial::align(const Polynomial &a, const Polynomial &b, Polynomial &ra, Polynomial &rb) {
    std::vector<std::string> merged = a.vars_;
    for (const auto &v : b.vars_)
        if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    std::sort(merged.begin(), merged.end(), var_precedes);
    ra = a.remapped(merged);
    rb = b.remapped(merged);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto &[e, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial &o) const {
    Polynomial a, b;
    align(*this, o, a, b);
    for (const auto &[e, c] : b.terms_) {
        auto it = a.terms_.find(e);
        if (it == a.terms_.end())
            a.terms_[e] = c;
        else
            it->second += c;
    }
    a.prune();
    return a;
}

Polynomial Polynomial::operator-(const Polynomial &o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial &o) const {
    Polynomial a, b;
    align(*this, o, a, b);
    Polynomial r;
    r.vars_ = a.vars_;
    for (const auto &[ea, ca] : a.terms_)
        for (const auto &[eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            GaussRational prod = ca * cb;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end())
                r.terms_[e] = prod;
            else
                it->second += prod;
        }
    r.prune();
    return r;
}

Polynomial Polynomial::operator*(const GaussRational &c) const {
    if (c.is_zero()) return Polynomial();
    Polynomial r = *this;
    for (auto &[e, v] : r.terms_) v *= c;
    return r;
}

Polynomial Polynomial::pow(int e) const {
    assert(e >= 0);
    Polynomial r = constant(GaussRational(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
}

GaussRational Polynomial::leading_coeff() const {
    if (terms_.empty()) return GaussRational(0);
    return terms_.begin()->second;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    return *this * leading_coeff().inv();
}

int Polynomial::degree(const std::string &var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t k = it - vars_.begin();
    int d = 0;
    for (const auto &[e, c] : terms_) d = std::max(d, e[k]);
    return d;
}

int Polynomial::valuation(const std::string &var) const {
    if (terms_.empty()) return 0;
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t k = it - vars_.begin();
    int v = -1;
    for (const auto &[e, c] : terms_) v = (v < 0) ? e[k] : std::min(v, e[k]);
    return v;
}

bool Polynomial::depends_on(const std::string &var) const {
    return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

Polynomial Polynomial::shift_down(const std::string &var, int k) const {
    if (k == 0) return *this;
    auto it = std::find(vars_.begin(), vars_.end(), var);
    assert(it != vars_.end());
    size_t idx = it - vars_.begin();
    Polynomial r;
    r.vars_ = vars_;
    for (const auto &[e, c] : terms_) {
        Exponents ne = e;
        assert(ne[idx] >= k);
        ne[idx] -= k;
        r.terms_[ne] = c;
    }
    r.prune();
    return r;
}

Polynomial Polynomial::at_zero(const std::string &var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return *this;
    size_t idx = it - vars_.begin();
    Polynomial r;
    r.vars_ = vars_;
    for (const auto &[e, c] : terms_)
        if (e[idx] == 0) r.terms_[e] = c;
    r.prune();
    return r;
}

Polynomial Polynomial::subst(const std::string &var, const Polynomial &value) const {
    auto coeffs = univariate_coeffs(var);
    // Horner
    Polynomial r;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * value + *it;
    return r;
}

std::vector<Polynomial> Polynomial::univariate_coeffs(const std::string &var) const {
    int d = degree(var);
    std::vector<Polynomial> out(size_t(d) + 1);
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        out[0] = *this;
        return out;
    }
    size_t idx = it - vars_.begin();
    for (const auto &[e, c] : terms_) {
        Exponents ne = e;
        ne[idx] = 0;
        Polynomial &dst = out[e[idx]];
        if (dst.vars_ != vars_) dst.vars_ = vars_;
        dst.terms_[ne] = c;
    }
    for (auto &p : out) p.prune();
    return out;
}

Polynomial Polynomial::from_univariate(const std::string &var, const std::vector<Polynomial> &coeffs) {
    Polynomial x = variable(var), r;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial &o) const {
    if (o.is_zero()) return std::nullopt;
    if (is_zero()) return Polynomial();
    Polynomial a, b;
    align(*this, o, a, b);
    Polynomial q;
    q.vars_ = a.vars_;
    const auto blead = *b.terms_.begin();
    while (!a.terms_.empty()) {
        const auto alead = *a.terms_.begin();
        Exponents e(alead.first.size());
        for (size_t k = 0; k < e.size(); ++k) {
            e[k] = alead.first[k] - blead.first[k];
            if (e[k] < 0) return std::nullopt;
        }
        GaussRational c = alead.second / blead.second;
        q.terms_[e] = c;
        // subtract c*x^e*b in place so the variable alignment is preserved
        for (const auto &[eb, cb] : b.terms_) {
            Exponents ne(e.size());
            for (size_t k = 0; k < e.size(); ++k) ne[k] = e[k] + eb[k];
            auto it = a.terms_.find(ne);
            GaussRational delta = c * cb;
            if (it == a.terms_.end()) {
                a.terms_[ne] = -delta;
            } else {
                it->second -= delta;
                if (it->second.is_zero()) a.terms_.erase(it);
            }
        }
    }
    q.prune();
    return q;
}

namespace {

// pseudo-remainder in var: lb^(delta+1) * A mod B, the exact power the
// subresultant divisions rely on
Polynomial prem(Polynomial A, const Polynomial &B, const std::string &var) {
    int db = B.degree(var);
    auto bc = B.univariate_coeffs(var);
    const Polynomial &lb = bc[db];
    int steps = A.degree(var) - db + 1;
    while (!A.is_zero() && A.degree(var) >= db) {
        int da = A.degree(var);
        auto ac = A.univariate_coeffs(var);
        Polynomial shift = Polynomial::variable(var).pow(da - db);
        A = A * lb - ac[da] * shift * B;
        --steps;
        assert(A.degree(var) < da || A.is_zero());
    }
    for (; steps > 0; --steps) A = A * lb;
    return A;
}

// unit rescale so the coefficients become Gaussian integers with no
// common integer factor; keeps PRS coefficient growth polynomial
Polynomial scalar_reduced(const Polynomial &p) {
    if (p.is_zero()) return p;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto &[e, c] : p.terms()) {
        for (const mpq_class &q : {c.re(), c.im()}) {
            if (q == 0) continue;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
        }
    }
    mpq_class scale(den_lcm, num_gcd);
    scale.canonicalize();
    return p * GaussRational(scale);
}

Polynomial content_in(const Polynomial &p, const std::string &var) {
    Polynomial c;
    for (const auto &coeff : p.univariate_coeffs(var))
        if (!coeff.is_zero()) c = poly_gcd(c, coeff);
    return c;
}

// remainder of A by B via coefficient division (univariate over the field)
Polynomial uni_rem(Polynomial A, const Polynomial &B, const std::string &var) {
    int db = B.degree(var);
    GaussRational lb = B.univariate_coeffs(var)[db].constant_value();
    while (!A.is_zero() && A.degree(var) >= db) {
        int da = A.degree(var);
        GaussRational f = A.univariate_coeffs(var)[da].constant_value() / lb;
        A = A - Polynomial::variable(var).pow(da - db) * B * f;
        assert(A.degree(var) < da || A.is_zero());
    }
    return A;
}

// classic Euclid, valid when both arguments are univariate in the same var
Polynomial uni_gcd(Polynomial A, Polynomial B, const std::string &var) {
    if (A.degree(var) < B.degree(var)) std::swap(A, B);
    while (!B.is_zero()) {
        Polynomial r = uni_rem(A, B, var);
        A = std::move(B);
        B = scalar_reduced(r);
    }
    return A.monic();
}

} // namespace

Polynomial poly_gcd(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(GaussRational(1));
    // main variable: the greatest one occurring in either
    std::string x = var_precedes(a.vars()[0], b.vars()[0]) ? a.vars()[0] : b.vars()[0];
    if (a.vars().size() == 1 && b.vars().size() == 1 && a.vars()[0] == b.vars()[0])
        return uni_gcd(a, b, x);
    if (!a.depends_on(x)) return poly_gcd(a, content_in(b, x));
    if (!b.depends_on(x)) return poly_gcd(content_in(a, x), b);
    Polynomial ca = content_in(a, x), cb = content_in(b, x);
    Polynomial c = poly_gcd(ca, cb);
    Polynomial A = scalar_reduced(*a.divide_exact(ca));
    Polynomial B = scalar_reduced(*b.divide_exact(cb));
    if (A.degree(x) < B.degree(x)) std::swap(A, B);
    // subresultant PRS (Collins); keeps coefficient growth polynomial
    Polynomial g = Polynomial::constant(GaussRational(1));
    Polynomial h = Polynomial::constant(GaussRational(1));
    while (true) {
        int delta = A.degree(x) - B.degree(x);
        Polynomial r = prem(A, B, x);
        if (r.is_zero()) break;
        if (!r.depends_on(x)) {
            // primitive inputs with a degree-0 remainder are coprime in x
            return c.monic();
        }
        A = B;
        B = *r.divide_exact(g * h.pow(delta));
        g = A.univariate_coeffs(x)[A.degree(x)];
        if (delta > 0) {
            Polynomial hp = g.pow(delta);
            if (delta > 1) hp = *hp.divide_exact(h.pow(delta - 1));
            h = std::move(hp);
        }
    }
    Polynomial gp = scalar_reduced(*B.divide_exact(content_in(B, x)));
    return (c * gp).monic();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        std::string mono;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        GaussRational coeff = c;
        std::string sign = "+";
        // pull out the sign for purely real or purely imaginary coefficients
        if ((coeff.im() == 0 && coeff.re() < 0) || (coeff.re() == 0 && coeff.im() < 0)) {
            sign = "-";
            coeff = -coeff;
        }
        std::string cs;
        if (mono.empty()) {
            cs = (coeff.re() != 0 && coeff.im() != 0) ? "(" + coeff.str() + ")" : coeff.str();
        } else if (coeff.is_one()) {
            cs = mono;
        } else if (coeff.re() != 0 && coeff.im() != 0) {
            cs = "(" + coeff.str() + ")*" + mono;
        } else {
            cs = (coeff == GaussRational::i() ? "i" : coeff.str()) + "*" + mono;
        }
        if (first) {
            out = (sign == "-") ? "-" + cs : cs;
            first = false;
        } else {
            out += " " + sign + " " + cs;
        }
    }
    return out;
}

} // namespace heis
