#ifndef HEIS_CONGRUENCE_HPP
#define HEIS_CONGRUENCE_HPP

#include "heis/catalog.hpp"

namespace heis {

/// Congruence-invariant split of a square matrix over Q(i) into a
/// nonsingular core and canonical singular Jordan summands J_k(0).
struct RegularDecomposition {
    MatQ regular;                       // possibly 0x0
    std::vector<size_t> singular_blocks; // sorted descending
};

RegularDecomposition regular_decomposition(const MatQ &M);

/// M^{-T} M; throws MathError on singular input
MatQ cosquare(const MatQ &M);

/// Complete similarity invariant: the nontrivial invariant factors
/// (Frobenius data) of the matrix, monic, each dividing the next.
struct SimilarityInvariant {
    std::vector<Polynomial> invariant_factors;

    bool operator==(const SimilarityInvariant &o) const {
        return invariant_factors == o.invariant_factors;
    }
    std::string str() const;
};

/// invariant factors of C, from the Smith normal form of xI - C over
/// Q(i)[x]; the variable is named "x"
SimilarityInvariant invariant_factors(const MatQ &C);

/// characteristic polynomial of C (monic, in "x"), computed independently
/// of the Smith reduction
Polynomial characteristic_polynomial(const MatQ &C);

/// decides congruence over the complex numbers: equal singular block
/// multisets and similar cosquares of the regular parts
bool are_congruent(const MatQ &A, const MatQ &B);

/// A canonical family matched, but its parameter lies outside Q(i); the
/// minimal polynomial the parameter satisfies is reported instead.
struct ParameterNotInBaseField : MathError {
    ParameterNotInBaseField(const std::string &family, Polynomial poly)
        : MathError("parameter of " + family + " is not in Q(i); minimal polynomial: " +
                    poly.str()),
          label(family), min_poly(std::move(poly)) {}
    std::string label;
    Polynomial min_poly;
};

/// the unique catalog type (normalized parameters) whose canonical matrix
/// is congruent to M
CanonicalType classify_matrix(const MatQ &M);

} // namespace heis

#endif
