#ifndef HEIS_GRAPHER_HPP
#define HEIS_GRAPHER_HPP

#include "heis/certificates.hpp"

namespace heis {

struct GraphNode {
    CanonicalType type;
    size_t level; // dim Der of the node's algebra
};

struct GraphEdge {
    size_t from, to;        // node indices
    std::string provenance; // certificate id, "zero", or "transitivity"
    std::string condition;  // parameter condition ("μ=λ", "λ=0, μ=0", ...)
    bool closure = false;   // added by transitive closure, not a primary edge
};

/// The degeneration order on grid instantiations: nodes are canonicalized
/// concrete types (plus ZERO) placed at their derivation-dimension level,
/// edges point from the degenerating algebra to its degeneration.
struct DegenGraph {
    std::vector<GraphNode> nodes; // sorted by (level, name)
    std::vector<GraphEdge> edges; // sorted by (from, to)

    /// index of a (normalized, concrete) type; nodes.size() if absent
    size_t index_of(const CanonicalType &T) const;
    bool has_edge(size_t from, size_t to) const;
};

/// Verifies every certificate (throwing MathError on the first failure),
/// instantiates each at all grid bindings of its source parameters
/// admitted by its exclusions, pushes them through the parameter map,
/// adds the universal edges to ZERO, and closes under transitivity.
/// Nodes are all catalog instantiations over `grid`, canonicalized via
/// normalize_parameters so that λ and 1/λ do not duplicate.
DegenGraph assemble_graph(const std::vector<DegenerationCertificate> &certs,
                          const std::vector<GaussRational> &grid);

/// Unique minimal edge set with the same transitive closure. Throws
/// MathError on a cycle between distinct nodes.
DegenGraph transitive_reduction(const DegenGraph &G);

/// Global sanity report; empty = clean. Checks that (a) every edge
/// strictly increases the derivation dimension, (b) each node's stored
/// level agrees with both the rank computation and the closed-form
/// formula, and (c) no edge connects a (source, blocked target) pair of
/// a non-degeneration certificate at any grid instantiation.
std::vector<std::string> consistency_check(const DegenGraph &G,
                                           const std::vector<ClosedSetPattern> &patterns,
                                           const std::vector<InvariantCertificate> &invariants);

/// Nodes with no incoming proper edge: candidates (only) for orbit
/// closures that are irreducible components.
std::vector<CanonicalType> maximal_nodes(const DegenGraph &G);

/// Deterministic DOT output, nodes ranked by level, primary-edge labels
/// carrying the certificate's parameter conditions.
std::string emit_dot(const DegenGraph &G);

} // namespace heis

#endif
