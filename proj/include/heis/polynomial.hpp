#ifndef HEIS_POLYNOMIAL_HPP
#define HEIS_POLYNOMIAL_HPP

#include "heis/gauss_rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heis {

/// Fixed precedence of indeterminates: t greatest, then λ, then μ, then
/// everything else alphabetically. Lower rank = greater in the monomial
/// order.
int var_rank(const std::string &name);
bool var_precedes(const std::string &a, const std::string &b);

inline constexpr char kVarT[] = "t";
inline constexpr char kVarLambda[] = "λ";
inline constexpr char kVarMu[] = "μ";

/// Multivariate polynomial over Q(i) in canonical form: the variable
/// list is sorted by precedence and contains only variables that occur,
/// no zero coefficients are stored, and the term map is ordered by the
/// lex monomial order (t greatest). Equal polynomials therefore have
/// identical representations.
class Polynomial {
  public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, GaussRational, std::greater<Exponents>>;

    Polynomial() = default;
    static Polynomial constant(const GaussRational &c);
    static Polynomial variable(const std::string &name);

    const std::vector<std::string> &vars() const { return vars_; }
    const TermMap &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    /// constant term (valid whenever is_constant(); zero poly gives 0)
    GaussRational constant_value() const;

    bool operator==(const Polynomial &o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial &o) const { return !(*this == o); }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator-(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial operator*(const GaussRational &c) const;
    Polynomial pow(int e) const;

    /// leading (greatest) monomial coefficient under the fixed order
    GaussRational leading_coeff() const;
    Polynomial monic() const;

    int degree(const std::string &var) const;
    /// lowest power of `var` dividing every term (0 for the zero poly)
    int valuation(const std::string &var) const;
    bool depends_on(const std::string &var) const;

    /// divide out var^k (requires valuation(var) >= k)
    Polynomial shift_down(const std::string &var, int k) const;
    /// set var = 0 (drop all terms with positive exponent in var)
    Polynomial at_zero(const std::string &var) const;
    /// substitute a polynomial for a variable
    Polynomial subst(const std::string &var, const Polynomial &value) const;

    /// exact multivariate division; nullopt if o does not divide *this
    std::optional<Polynomial> divide_exact(const Polynomial &o) const;

    std::string str() const;

    /// view as univariate in `var`: coefficient polynomials indexed by
    /// power of var, degree() entries + 1
    std::vector<Polynomial> univariate_coeffs(const std::string &var) const;
    static Polynomial from_univariate(const std::string &var, const std::vector<Polynomial> &coeffs);

    friend Polynomial poly_gcd(const Polynomial &a, const Polynomial &b);

  private:
    void prune();
    static void align(const Polynomial &a, const Polynomial &b, Polynomial &ra, Polynomial &rb);
    Polynomial remapped(const std::vector<std::string> &newvars) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline Polynomial operator*(const GaussRational &c, const Polynomial &p) { return p * c; }

/// gcd up to units, normalized monic under the monomial order
Polynomial poly_gcd(const Polynomial &a, const Polynomial &b);

} // namespace heis

#endif
