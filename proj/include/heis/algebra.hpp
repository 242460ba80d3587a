#ifndef HEIS_ALGEBRA_HPP
#define HEIS_ALGEBRA_HPP

#include "heis/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace heis {

enum class SymmetryType { Symmetric, Antisymmetric, Both, Neither };

std::string to_string(SymmetryType t);

/// An n-dimensional algebra given by its structure constants
/// e_i e_j = sum_k c_{i,j}^k e_k over the field of rational functions.
/// Immutable after construction apart from the fluent set() used while
/// building tables. Indices are 1-based, matching the usual notation.
class Algebra {
  public:
    explicit Algebra(size_t dim) : dim_(dim), c_(dim * dim * dim) {}
    Algebra(size_t dim, std::vector<std::string> parameters,
            std::vector<std::pair<std::string, GaussRational>> excluded)
        : dim_(dim), c_(dim * dim * dim), parameters_(std::move(parameters)),
          excluded_(std::move(excluded)) {}

    size_t dim() const { return dim_; }
    const std::vector<std::string> &parameters() const { return parameters_; }
    const std::vector<std::pair<std::string, GaussRational>> &excluded() const { return excluded_; }

    const RationalFunction &c(size_t i, size_t j, size_t k) const {
        return c_[((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1)];
    }
    Algebra &set(size_t i, size_t j, size_t k, RationalFunction v) {
        c_[((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1)] = std::move(v);
        return *this;
    }

    bool operator==(const Algebra &o) const { return dim_ == o.dim_ && c_ == o.c_; }
    bool operator!=(const Algebra &o) const { return !(*this == o); }

    bool is_zero() const;

    /// replace parameters by values/expressions in every constant
    Algebra substituted(const std::map<std::string, RationalFunction> &bindings) const;

  private:
    size_t dim_;
    std::vector<RationalFunction> c_;
    std::vector<std::string> parameters_;
    std::vector<std::pair<std::string, GaussRational>> excluded_;
};

/// Change of basis: row i of G holds the coordinates of the new basis
/// vector E_i in the old basis.
struct BasisChange {
    MatF G;
};

/// Structure constants of the same product in the basis given by G:
/// c'_{i,j}^m = sum_{p,q,k} G_{i,p} G_{j,q} c_{p,q}^k (G^{-1})_{k,m}.
/// Throws MathError when det G is identically zero.
Algebra change_basis(const Algebra &A, const BasisChange &G);

/// dim Der(A): nullity of the linear system expressing the Leibniz rule
/// D(e_i e_j) = D(e_i) e_j + e_i D(e_j) in the n^2 entries of D.
size_t derivation_dim(const Algebra &A);

/// Solutions D of the derivation system, as n x n matrices (basis of Der).
std::vector<MatF> derivation_basis(const Algebra &A);

/// dim Z_xi(A) where Z_xi = {x : x y = xi * y x for all y}.
size_t z_xi_dim(const Algebra &A, const RationalFunction &xi);

/// dim A^2 = rank of the span of all products e_i e_j.
size_t square_dim(const Algebra &A);

SymmetryType symmetry_type(const Algebra &A);

/// dim A^2 <= 1 and A^2 A = A A^2 = 0.
bool is_heisenberg(const Algebra &A);

} // namespace heis

#endif
