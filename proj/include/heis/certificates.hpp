#ifndef HEIS_CERTIFICATES_HPP
#define HEIS_CERTIFICATES_HPP

#include "heis/catalog.hpp"

#include <array>
#include <cstdint>

namespace heis {

enum class VerdictStatus { Verified, Failed, Inconclusive };

std::string to_string(VerdictStatus s);

/// Outcome of a certificate check. `detail` carries per-entry diagnostics
/// (mismatched limits, violated equations, witness bases, ...); failed and
/// inconclusive verdicts always have at least one entry, verified ones may
/// carry informational notes (exceptional t-values, orientation, ...).
struct Verdict {
    VerdictStatus status = VerdictStatus::Verified;
    std::vector<std::string> detail;

    bool verified() const { return status == VerdictStatus::Verified; }
};

/// The constraint var != value; the value may be an expression in the
/// other parameters (e.g. μ != λ, or μ != 1/λ).
struct Exclusion {
    std::string var;
    RationalFunction value;
};

/// A canonical type whose parameter expressions may mention free symbols,
/// together with the constraints those symbols must satisfy.
struct TypeWithConstraints {
    CanonicalType type;
    std::vector<Exclusion> excluded;
};

/// A parametric-basis witness for source -> target: the structure
/// constants of the source in the basis given by `basis` must converge,
/// as t -> 0, to the target's multiplication table.
struct DegenerationCertificate {
    std::string id; // stable identifier (file stem)
    CanonicalType source;
    std::vector<Exclusion> excluded; // constraints on the source parameters
    std::string target_label;
    std::map<std::string, RationalFunction> parameter_map; // target param -> expression
    BasisChange basis; // 5x5, entries rational in t and the free parameters
    std::string provenance;

    /// the target type with its parameters taken from parameter_map
    CanonicalType target() const;
};

Verdict verify_degeneration(const DegenerationCertificate &cert);

/// Semicontinuity battery for a hypothetical proper degeneration A -> B:
/// dim Der(A) < dim Der(B); Z_xi(A) <= Z_xi(B) for xi in {1, -1} and the
/// parameter values in play; dim A^2 >= dim B^2; (anti)symmetry of A
/// propagates to B. Failed means the degeneration is impossible.
Verdict check_necessary(const CanonicalType &A, const CanonicalType &B);

/// one summand of a formal linear relation sum a * c_{i,j}^k = 0
struct LinearTerm {
    size_t i, j, k;
    RationalFunction coeff; // may mention the pattern's parameters
};

/// A Zariski-closed, Borel-stable set of structure tensors, given by
/// linear conditions on the c_{i,j}^k, together with the witness basis
/// placing each source inside it and the targets it is meant to block.
struct ClosedSetPattern {
    std::string id;
    /// c_{i,j}^k = 0 whenever i = 5, j = 5, or k != 5
    bool heisenberg_zeros = true;
    std::vector<std::array<size_t, 3>> zero_entries; // (i,j,k), 1-based
    std::vector<std::vector<LinearTerm>> linear_relations;
    BasisChange witness_basis; // 5x5
    std::vector<TypeWithConstraints> sources;
    std::vector<TypeWithConstraints> blocked_targets;
    std::string provenance;

    /// the pattern with parameter bindings applied to relation
    /// coefficients and to the source/blocked parameter expressions
    ClosedSetPattern substituted(const std::map<std::string, RationalFunction> &bindings) const;
};

/// re-expresses the source in the witness basis and checks every pattern
/// equation identically in the parameters
Verdict verify_membership(const ClosedSetPattern &pattern, const CanonicalType &source);

/// Symbolic stability proof: the generic solution of the pattern's
/// equations, transformed by a generic triangular basis change, satisfies
/// the equations identically. Both triangularity orientations are tried;
/// the one that works is recorded in the verdict.
Verdict verify_borel_stability(const ClosedSetPattern &pattern);

/// Randomized search for a basis placing the (concrete) target inside the
/// pattern. A found witness is a `failed` verdict (the blocking claim is
/// refuted); no witness after `trials` samples is `inconclusive` --
/// evidence, not proof. Deterministic for fixed (seed, pattern id, target).
Verdict falsify_membership(const ClosedSetPattern &pattern, const CanonicalType &target,
                           size_t trials, uint64_t seed);

enum class InvariantKind { ZXiCompare, Symmetry, Antisymmetry, DerivationDim };

std::string to_string(InvariantKind k);

/// Blocks every (source, blocked_target) pair by a single semicontinuous
/// invariant: Z_xi strictly larger on the source, (anti)symmetry of the
/// source absent from the target, or no strict derivation-dimension
/// increase.
struct InvariantCertificate {
    std::string id;
    InvariantKind kind;
    RationalFunction xi; // used by ZXiCompare only
    std::vector<TypeWithConstraints> sources;
    std::vector<TypeWithConstraints> blocked_targets;
    std::string provenance;
};

/// evaluates the claimed obstruction for every (source, blocked_target)
/// pair, symbolically and at all grid specializations of the free symbols
Verdict verify_invariant_cert(const InvariantCertificate &cert);

/// the special parameter values used to instantiate symbolic rows
const std::vector<GaussRational> &grid_values(); // 0, 1/2, i, -1, 1

/// All concrete bindings of `params` to grid values satisfying the
/// exclusions. Exclusions whose right-hand side has no finite value at a
/// binding (a vanishing denominator) do not reject it.
std::vector<std::map<std::string, RationalFunction>>
grid_bindings(const std::vector<std::string> &params, const std::vector<Exclusion> &excluded);

/// same, over an explicit value set
std::vector<std::map<std::string, RationalFunction>>
grid_bindings(const std::vector<std::string> &params, const std::vector<Exclusion> &excluded,
              const std::vector<GaussRational> &values);

/// free symbols (λ, μ, τ, ...) occurring in a type's parameter expressions
std::vector<std::string> free_symbols(const CanonicalType &T);

/// deterministic per-certificate RNG substream
uint64_t substream_seed(uint64_t seed, const std::string &certificate_id);

} // namespace heis

#endif
