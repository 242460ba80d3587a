#include "heis/grapher.hpp"

#include <algorithm>
#include <set>

namespace heis {

namespace {

/// the parameter conditions a certificate's map imposes, e.g. "μ=λ" or
/// "λ=0, μ=0"; identity entries are omitted
std::string condition_of(const DegenerationCertificate &cert) {
    std::string out;
    for (const auto &[name, expr] : cert.parameter_map) {
        if (expr == RationalFunction::variable(name)) continue;
        if (!out.empty()) out += ", ";
        out += name + "=" + expr.str();
    }
    return out;
}

CanonicalType substituted_type(const CanonicalType &T,
                               const std::map<std::string, RationalFunction> &bindings) {
    CanonicalType out = T;
    for (auto &[name, expr] : out.parameters) expr = expr.substitute(bindings);
    return out;
}

/// All bindings of the certificate's free symbols to grid values. The
/// parameter map can mention symbols absent from the source (a
/// parameterless source degenerating to a whole family), so both sides
/// contribute.
std::vector<std::map<std::string, RationalFunction>>
cert_bindings(const DegenerationCertificate &cert, const std::vector<GaussRational> &grid) {
    std::set<std::string> vars;
    for (const auto &v : free_symbols(cert.source)) vars.insert(v);
    CanonicalType target = cert.target();
    for (const auto &v : free_symbols(target)) vars.insert(v);
    if (vars.empty()) return {{}};
    std::vector<std::string> syms(vars.begin(), vars.end());
    std::sort(syms.begin(), syms.end(), var_precedes);
    return grid_bindings(syms, cert.excluded, grid);
}

/// source and target instances at one binding; nullopt-style via bool
bool instantiate_edge(const DegenerationCertificate &cert,
                      const std::map<std::string, RationalFunction> &binding, CanonicalType &S,
                      CanonicalType &T) {
    try {
        S = substituted_type(cert.source, binding);
        T.label = cert.target_label;
        T.parameters.clear();
        for (const auto &[name, expr] : cert.parameter_map)
            T.parameters[name] = expr.substitute(binding);
        validate_type(S);
        validate_type(T);
        S = normalize_parameters(S);
        T = normalize_parameters(T);
        return true;
    } catch (const MathError &) {
        return false; // outside the family (built-in exclusions, poles)
    }
}

std::vector<std::vector<bool>> reachability(const DegenGraph &G) {
    size_t n = G.nodes.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto &e : G.edges) r[e.from][e.to] = true;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

void sort_edges(std::vector<GraphEdge> &edges) {
    std::sort(edges.begin(), edges.end(), [](const GraphEdge &a, const GraphEdge &b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
}

} // namespace

size_t DegenGraph::index_of(const CanonicalType &T) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].type == T) return i;
    return nodes.size();
}

bool DegenGraph::has_edge(size_t from, size_t to) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const GraphEdge &e) { return e.from == from && e.to == to; });
}

DegenGraph assemble_graph(const std::vector<DegenerationCertificate> &certs,
                          const std::vector<GaussRational> &grid) {
    // fail fast: an unverifiable certificate poisons the whole graph
    for (const auto &cert : certs) {
        Verdict v = verify_degeneration(cert);
        if (!v.verified()) {
            std::string msg = "certificate " + cert.id + " failed verification";
            if (!v.detail.empty()) msg += ": " + v.detail.front();
            throw MathError(msg);
        }
    }

    // nodes: every catalog instantiation over the grid, canonicalized
    std::map<std::string, CanonicalType> by_name;
    for (const auto &label : catalog_labels()) {
        auto params = family_parameters(label);
        std::vector<Exclusion> none;
        auto bindings = grid_bindings(params, none, grid);
        if (params.empty()) bindings.push_back({});
        for (const auto &b : bindings) {
            CanonicalType T(label);
            for (const auto &[name, value] : b) T.parameters[name] = value;
            try {
                validate_type(T);
                T = normalize_parameters(T);
            } catch (const MathError &) {
                continue;
            }
            by_name.emplace(T.str(), T);
        }
    }
    // plus certificate endpoints, in case an instantiation leaves the grid
    for (const auto &cert : certs)
        for (const auto &b : cert_bindings(cert, grid)) {
            CanonicalType S, T;
            if (!instantiate_edge(cert, b, S, T)) continue;
            by_name.emplace(S.str(), S);
            by_name.emplace(T.str(), T);
        }

    DegenGraph G;
    for (const auto &[name, T] : by_name)
        G.nodes.push_back({T, derivation_dim(instantiate(T))});
    std::sort(G.nodes.begin(), G.nodes.end(), [](const GraphNode &a, const GraphNode &b) {
        if (a.level != b.level) return a.level < b.level;
        return a.type.str() < b.type.str();
    });

    // primary edges from the certificates
    for (const auto &cert : certs) {
        std::string cond = condition_of(cert);
        for (const auto &b : cert_bindings(cert, grid)) {
            CanonicalType S, T;
            if (!instantiate_edge(cert, b, S, T)) continue;
            size_t from = G.index_of(S), to = G.index_of(T);
            if (from == to || G.has_edge(from, to)) continue;
            G.edges.push_back({from, to, cert.id, cond, false});
        }
    }
    // universal bottom: everything degenerates to the zero product
    size_t zero = G.index_of(CanonicalType("ZERO"));
    for (size_t i = 0; i < G.nodes.size(); ++i)
        if (i != zero && !G.has_edge(i, zero)) G.edges.push_back({i, zero, "zero", "", false});
    // transitive closure
    auto reach = reachability(G);
    for (size_t i = 0; i < G.nodes.size(); ++i)
        for (size_t j = 0; j < G.nodes.size(); ++j)
            if (i != j && reach[i][j] && !G.has_edge(i, j))
                G.edges.push_back({i, j, "transitivity", "", true});
    sort_edges(G.edges);
    return G;
}

DegenGraph transitive_reduction(const DegenGraph &G) {
    auto reach = reachability(G);
    size_t n = G.nodes.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && reach[i][j] && reach[j][i])
                throw MathError("cycle between " + G.nodes[i].type.str() + " and " +
                                G.nodes[j].type.str());
    DegenGraph R;
    R.nodes = G.nodes;
    for (const auto &e : G.edges) {
        if (e.from == e.to) continue;
        bool redundant = false;
        for (size_t w = 0; w < n && !redundant; ++w)
            if (w != e.from && w != e.to && reach[e.from][w] && reach[w][e.to]) redundant = true;
        if (!redundant) R.edges.push_back({e.from, e.to, e.provenance, e.condition, false});
    }
    sort_edges(R.edges);
    return R;
}

std::vector<std::string> consistency_check(const DegenGraph &G,
                                           const std::vector<ClosedSetPattern> &patterns,
                                           const std::vector<InvariantCertificate> &invariants) {
    std::vector<std::string> report;
    // (b) levels: stored == rank computation == closed form
    for (const auto &node : G.nodes) {
        size_t computed = derivation_dim(instantiate(node.type));
        size_t expected = expected_der_dim(node.type);
        if (node.level != computed)
            report.push_back(node.type.str() + ": stored level " + std::to_string(node.level) +
                             " != computed dim Der " + std::to_string(computed));
        if (computed != expected)
            report.push_back(node.type.str() + ": computed dim Der " + std::to_string(computed) +
                             " != closed-form " + std::to_string(expected));
    }
    // (a) strict monotonicity along every proper edge
    for (const auto &e : G.edges)
        if (e.from != e.to && G.nodes[e.from].level >= G.nodes[e.to].level)
            report.push_back("edge " + G.nodes[e.from].type.str() + " -> " +
                             G.nodes[e.to].type.str() + " does not increase dim Der (" +
                             std::to_string(G.nodes[e.from].level) + " >= " +
                             std::to_string(G.nodes[e.to].level) + ")");
    // (c) no edge contradicts a non-degeneration claim on the grid
    auto reach = reachability(G);
    auto check_pair = [&](const TypeWithConstraints &src, const TypeWithConstraints &tgt,
                          const std::string &id) {
        std::set<std::string> vars;
        for (const auto &v : free_symbols(src.type)) vars.insert(v);
        for (const auto &v : free_symbols(tgt.type)) vars.insert(v);
        std::vector<Exclusion> excl = src.excluded;
        excl.insert(excl.end(), tgt.excluded.begin(), tgt.excluded.end());
        auto bindings =
            grid_bindings(std::vector<std::string>(vars.begin(), vars.end()), excl);
        if (vars.empty()) bindings.push_back({});
        for (const auto &b : bindings) {
            CanonicalType S, T;
            try {
                S = normalize_parameters(substituted_type(src.type, b));
                T = normalize_parameters(substituted_type(tgt.type, b));
                validate_type(S);
                validate_type(T);
            } catch (const MathError &) {
                continue;
            }
            size_t s = G.index_of(S), t = G.index_of(T);
            if (s < G.nodes.size() && t < G.nodes.size() && reach[s][t])
                report.push_back("edge " + S.str() + " -> " + T.str() +
                                 " contradicts non-degeneration certificate " + id);
        }
    };
    for (const auto &p : patterns)
        for (const auto &src : p.sources)
            for (const auto &tgt : p.blocked_targets) check_pair(src, tgt, p.id);
    for (const auto &c : invariants)
        for (const auto &src : c.sources)
            for (const auto &tgt : c.blocked_targets) check_pair(src, tgt, c.id);
    return report;
}

std::vector<CanonicalType> maximal_nodes(const DegenGraph &G) {
    std::vector<bool> has_in(G.nodes.size(), false);
    for (const auto &e : G.edges)
        if (e.from != e.to) has_in[e.to] = true;
    std::vector<CanonicalType> out;
    for (size_t i = 0; i < G.nodes.size(); ++i)
        if (!has_in[i]) out.push_back(G.nodes[i].type);
    return out;
}

std::string emit_dot(const DegenGraph &G) {
    std::string out = "digraph degenerations {\n";
    if (!G.nodes.empty()) {
        out += "  rankdir=TB;\n  node [shape=box, style=rounded];\n";
        std::set<size_t> levels;
        for (const auto &n : G.nodes) levels.insert(n.level);
        for (size_t lvl : levels) {
            out += "  { rank=same;";
            for (const auto &n : G.nodes)
                if (n.level == lvl) out += " \"" + n.type.str() + "\";";
            out += " }\n";
        }
        for (const auto &e : G.edges) {
            out += "  \"" + G.nodes[e.from].type.str() + "\" -> \"" + G.nodes[e.to].type.str() +
                   "\"";
            std::string attrs;
            if (!e.condition.empty() && !e.closure) attrs = "label=\"" + e.condition + "\"";
            if (e.closure) attrs += std::string(attrs.empty() ? "" : ", ") + "style=dashed";
            if (!attrs.empty()) out += " [" + attrs + "]";
            out += ";\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace heis
