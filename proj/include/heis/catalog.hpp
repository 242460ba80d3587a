#ifndef HEIS_CATALOG_HPP
#define HEIS_CATALOG_HPP

#include "heis/algebra.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace heis {

/// One of the classified five-dimensional types: "ZERO" or "H01".."H15".
/// Parameters may be concrete Gaussian rationals or symbolic (a bare
/// indeterminate), in which case invariants take their generic values.
struct CanonicalType {
    std::string label;
    std::map<std::string, RationalFunction> parameters;

    CanonicalType() = default;
    explicit CanonicalType(std::string lbl) : label(std::move(lbl)) {}
    CanonicalType(std::string lbl, RationalFunction lambda)
        : label(std::move(lbl)), parameters{{kVarLambda, std::move(lambda)}} {}
    CanonicalType(std::string lbl, RationalFunction lambda, RationalFunction mu)
        : label(std::move(lbl)),
          parameters{{kVarLambda, std::move(lambda)}, {kVarMu, std::move(mu)}} {}

    bool operator==(const CanonicalType &o) const {
        return label == o.label && parameters == o.parameters;
    }
    std::string str() const;
};

/// all labels in catalog order: ZERO, H01..H15
const std::vector<std::string> &catalog_labels();

/// names of the parameters the family takes (empty, {λ}, or {λ, μ})
std::vector<std::string> family_parameters(const std::string &label);

/// checks arity and the family's excluded values (H09: λ ∉ {−1, 0})
void validate_type(const CanonicalType &T);

/// exact multiplication table of the type (dim 5)
Algebra instantiate(const CanonicalType &T);

/// the classification's closed-form derivation dimension, with the δ/θ
/// corrections at special parameter values; symbolic parameters give the
/// generic branch
size_t expected_der_dim(const CanonicalType &T);

/// membership in {|x| < 1} ∪ {|x| = 1, Im x ≥ 0}
bool in_closed_unit_region(const GaussRational &x);
/// membership in {Re x > 0} ∪ {Re x = 0, Im x ≥ 0}
bool in_right_halfplane(const GaussRational &x);

/// canonical parameter representative: λ ↦ λ⁻¹ (and μ ↦ μ⁻¹) into the
/// unit region, and for H13 a swap making λ−μ lie in the right halfplane;
/// requires concrete parameters; idempotent
CanonicalType normalize_parameters(const CanonicalType &T);

/// the 4×4 canonical matrix of the type
MatF canonical_matrix(const CanonicalType &T);

/// 5-dim algebra with c_{i,j}^5 = M_{i,j} (1 ≤ i,j ≤ 4)
Algebra matrix_to_heisenberg(const MatF &M);

/// adapted basis (rows: complement of the square, then a spanning vector
/// of the square) and the resulting 4×4 matrix; requires is_heisenberg
std::pair<MatF, BasisChange> heisenberg_to_matrix(const Algebra &A);

/// 4-dim anticommutative 3-ary algebra; only sorted triples are stored,
/// permutations carry the permutation sign
struct TernaryAlgebra {
    // bracket[{i1,i2,i3}] = coefficients over e_1..e_4
    std::map<std::array<int, 3>, std::vector<RationalFunction>> brackets;

    bool operator==(const TernaryAlgebra &o) const { return brackets == o.brackets; }
    std::vector<RationalFunction> bracket(int i1, int i2, int i3) const;
    std::string str() const;
};

/// c_{i1,i2,i3}^j = (−1)^{i−1} M_{i,j} with (i1,i2,i3) the sorted
/// complement of i in {1,2,3,4}
TernaryAlgebra matrix_to_ternary(const MatF &M);

} // namespace heis

#endif
