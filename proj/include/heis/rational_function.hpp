#ifndef HEIS_RATIONAL_FUNCTION_HPP
#define HEIS_RATIONAL_FUNCTION_HPP

#include "heis/polynomial.hpp"

#include <map>

namespace heis {

/// Quotient of polynomials over Q(i), kept normalized: gcd cancelled and
/// the denominator monic under the monomial order. Equality of values is
/// then equality of representations.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(Polynomial::constant(GaussRational(1))) {}
    RationalFunction(const GaussRational &c)
        : num_(Polynomial::constant(c)), den_(Polynomial::constant(GaussRational(1))) {}
    RationalFunction(long n) : RationalFunction(GaussRational(n)) {}
    RationalFunction(Polynomial num, Polynomial den);
    explicit RationalFunction(const Polynomial &p)
        : num_(p), den_(Polynomial::constant(GaussRational(1))) {}

    static RationalFunction variable(const std::string &name) {
        return RationalFunction(Polynomial::variable(name));
    }

    const Polynomial &num() const { return num_; }
    const Polynomial &den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussRational constant_value() const;
    bool depends_on(const std::string &var) const {
        return num_.depends_on(var) || den_.depends_on(var);
    }

    bool operator==(const RationalFunction &o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction &o) const { return !(*this == o); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction &o) const;
    RationalFunction operator-(const RationalFunction &o) const;
    RationalFunction operator*(const RationalFunction &o) const;
    RationalFunction operator/(const RationalFunction &o) const;
    RationalFunction &operator+=(const RationalFunction &o) { return *this = *this + o; }
    RationalFunction &operator-=(const RationalFunction &o) { return *this = *this - o; }
    RationalFunction &operator*=(const RationalFunction &o) { return *this = *this * o; }
    RationalFunction inv() const;

    /// homomorphic substitution; throws MathError if a denominator
    /// vanishes identically under the bindings
    RationalFunction substitute(const std::map<std::string, RationalFunction> &bindings) const;

    std::string str() const;

  private:
    Polynomial num_, den_;
};

/// Outcome of lim_{var->0}: either a finite value (a rational function of
/// the remaining indeterminates) or divergence. Divergence is a result,
/// not an error.
struct Limit {
    bool diverges = false;
    RationalFunction value; // valid when !diverges
};

Limit limit_at_zero(const RationalFunction &f, const std::string &var);

} // namespace heis

#endif
