#include "heis/cert_io.hpp"

#include "heis/scalar_parser.hpp"

#include <filesystem>
#include <fstream>

using nlohmann::json;

namespace heis {

namespace {

const std::vector<std::string> &cert_vars() {
    static const std::vector<std::string> kVars = {kVarT, kVarLambda, kVarMu, "τ"};
    return kVars;
}

RationalFunction scalar(const json &j, const char *what) {
    if (!j.is_string()) throw InputError(std::string(what) + ": expected a scalar string");
    try {
        return parse_scalar(j.get<std::string>(), cert_vars());
    } catch (const ParseError &e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

const json &field(const json &j, const char *name) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError(std::string("missing field \"") + name + "\"");
    return *it;
}

MatF basis_from_json(const json &j, const char *what) {
    if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected row array");
    size_t n = j.size();
    MatF G(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw InputError(std::string(what) + ": expected " + std::to_string(n) +
                             " entries in row " + std::to_string(i + 1));
        for (size_t c = 0; c < n; ++c) G.at(i, c) = scalar(j[i][c], what);
    }
    return G;
}

std::vector<Exclusion> exclusions_from_json(const json &j, const CanonicalType &T) {
    std::vector<Exclusion> out;
    if (!j.is_array()) throw InputError("\"excluded\" must be an array of strings");
    for (const auto &e : j) {
        if (!e.is_string()) throw InputError("\"excluded\" entries must be strings");
        std::string s = e.get<std::string>();
        auto eq = s.find('=');
        if (eq != std::string::npos) {
            std::string var = canonical_var_name(s.substr(0, eq));
            out.push_back({var, scalar(json(s.substr(eq + 1)), "excluded")});
            continue;
        }
        auto syms = free_symbols(T);
        if (syms.size() != 1)
            throw InputError("excluded value \"" + s +
                             "\" is ambiguous; use the \"var=value\" form");
        out.push_back({syms[0], scalar(json(s), "excluded")});
    }
    return out;
}

} // namespace

TypeWithConstraints type_from_json(const json &j) {
    if (!j.is_object()) throw InputError("type: expected an object");
    TypeWithConstraints out;
    out.type.label = field(j, "type").get<std::string>();
    const auto &labels = catalog_labels();
    if (std::find(labels.begin(), labels.end(), out.type.label) == labels.end())
        throw InputError("unknown type label \"" + out.type.label + "\"");
    if (j.contains("params")) {
        const json &p = j["params"];
        if (!p.is_object()) throw InputError("\"params\" must be an object");
        for (auto it = p.begin(); it != p.end(); ++it)
            out.type.parameters[canonical_var_name(it.key())] = scalar(it.value(), "params");
    }
    if (j.contains("excluded")) out.excluded = exclusions_from_json(j["excluded"], out.type);
    return out;
}

DegenerationCertificate degeneration_from_json(const json &j, const std::string &id) {
    DegenerationCertificate cert;
    cert.id = id;
    TypeWithConstraints src = type_from_json(field(j, "source"));
    cert.source = src.type;
    cert.excluded = src.excluded;
    cert.target_label = field(field(j, "target"), "type").get<std::string>();
    if (j.contains("param_map")) {
        const json &m = j["param_map"];
        if (!m.is_object()) throw InputError("\"param_map\" must be an object");
        for (auto it = m.begin(); it != m.end(); ++it)
            cert.parameter_map[canonical_var_name(it.key())] = scalar(it.value(), "param_map");
    }
    cert.basis.G = basis_from_json(field(j, "basis"), "basis");
    if (cert.basis.G.rows() != 5) throw InputError("basis must be 5x5");
    if (j.contains("provenance")) cert.provenance = j["provenance"].get<std::string>();
    return cert;
}

ClosedSetPattern closed_set_from_json(const json &j, const std::string &id) {
    ClosedSetPattern p;
    p.id = id;
    if (j.contains("heisenberg_zeros")) p.heisenberg_zeros = j["heisenberg_zeros"].get<bool>();
    for (const auto &z : field(j, "zeros")) {
        if (!z.is_array() || z.size() != 3) throw InputError("\"zeros\" entries must be [i,j,k]");
        p.zero_entries.push_back({z[0].get<size_t>(), z[1].get<size_t>(), z[2].get<size_t>()});
    }
    if (j.contains("relations"))
        for (const auto &rel : j["relations"]) {
            std::vector<LinearTerm> terms;
            for (const auto &t : rel) {
                const json &c = field(t, "c");
                if (!c.is_array() || c.size() != 3)
                    throw InputError("relation term \"c\" must be [i,j,k]");
                terms.push_back({c[0].get<size_t>(), c[1].get<size_t>(), c[2].get<size_t>(),
                                 scalar(field(t, "a"), "relation coefficient")});
            }
            p.linear_relations.push_back(std::move(terms));
        }
    p.witness_basis.G = basis_from_json(field(j, "witness_basis"), "witness_basis");
    for (const auto &s : field(j, "sources")) p.sources.push_back(type_from_json(s));
    for (const auto &b : field(j, "blocked")) p.blocked_targets.push_back(type_from_json(b));
    if (j.contains("provenance")) p.provenance = j["provenance"].get<std::string>();
    return p;
}

InvariantCertificate invariant_from_json(const json &j, const std::string &id) {
    InvariantCertificate cert;
    cert.id = id;
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "z_xi_compare") {
        cert.kind = InvariantKind::ZXiCompare;
        cert.xi = scalar(field(j, "xi"), "xi");
    } else if (kind == "symmetry") {
        cert.kind = InvariantKind::Symmetry;
    } else if (kind == "antisymmetry") {
        cert.kind = InvariantKind::Antisymmetry;
    } else if (kind == "derivation_dim") {
        cert.kind = InvariantKind::DerivationDim;
    } else {
        throw InputError("unknown invariant kind \"" + kind + "\"");
    }
    for (const auto &s : field(j, "sources")) cert.sources.push_back(type_from_json(s));
    for (const auto &b : field(j, "blocked")) cert.blocked_targets.push_back(type_from_json(b));
    if (j.contains("provenance")) cert.provenance = j["provenance"].get<std::string>();
    return cert;
}

AnyCertificate load_certificate(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw InputError(path + ": " + e.what());
    }
    std::string id = std::filesystem::path(path).stem().string();
    try {
        if (j.contains("basis")) return degeneration_from_json(j, id);
        if (j.contains("witness_basis")) return closed_set_from_json(j, id);
        if (j.contains("kind")) return invariant_from_json(j, id);
    } catch (const json::exception &e) {
        throw InputError(path + ": " + e.what());
    } catch (const InputError &e) {
        throw InputError(path + ": " + e.what());
    }
    throw InputError(path + ": not a recognized certificate shape");
}

MatF matrix_from_json(const json &j, bool constants_only) {
    MatF M = basis_from_json(field(j, "rows"), "rows");
    if (constants_only)
        for (size_t i = 0; i < M.rows(); ++i)
            for (size_t c = 0; c < M.cols(); ++c)
                if (!M.at(i, c).is_constant())
                    throw InputError("matrix entries must be constants");
    return M;
}

json matrix_to_json(const MatF &M) {
    json rows = json::array();
    for (size_t i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < M.cols(); ++j) row.push_back(M.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return json{{"rows", std::move(rows)}};
}

MatF load_matrix(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw InputError(path + ": " + e.what());
    }
    return matrix_from_json(j);
}

Algebra algebra_from_json(const json &j) {
    size_t dim = field(j, "dim").get<size_t>();
    std::vector<std::string> params;
    if (j.contains("parameters"))
        for (const auto &p : j["parameters"]) params.push_back(canonical_var_name(p.get<std::string>()));
    std::vector<std::pair<std::string, GaussRational>> excluded;
    if (j.contains("excluded"))
        for (const auto &e : j["excluded"]) {
            if (!e.is_array() || e.size() != 2)
                throw InputError("algebra \"excluded\" entries must be [var, value]");
            RationalFunction v = scalar(e[1], "excluded");
            if (!v.is_constant()) throw InputError("algebra excluded values must be constants");
            excluded.emplace_back(canonical_var_name(e[0].get<std::string>()), v.constant_value());
        }
    Algebra A(dim, params, excluded);
    for (const auto &c : field(j, "constants")) {
        size_t i = field(c, "i").get<size_t>(), jj = field(c, "j").get<size_t>(),
               k = field(c, "k").get<size_t>();
        if (i < 1 || i > dim || jj < 1 || jj > dim || k < 1 || k > dim)
            throw InputError("constant index out of range");
        A.set(i, jj, k, scalar(field(c, "value"), "constant"));
    }
    return A;
}

json algebra_to_json(const Algebra &A) {
    json constants = json::array();
    for (size_t i = 1; i <= A.dim(); ++i)
        for (size_t jj = 1; jj <= A.dim(); ++jj)
            for (size_t k = 1; k <= A.dim(); ++k)
                if (!A.c(i, jj, k).is_zero())
                    constants.push_back(
                        {{"i", i}, {"j", jj}, {"k", k}, {"value", A.c(i, jj, k).str()}});
    json out{{"dim", A.dim()}, {"constants", std::move(constants)}};
    if (!A.parameters().empty()) out["parameters"] = A.parameters();
    if (!A.excluded().empty()) {
        json ex = json::array();
        for (const auto &[var, val] : A.excluded()) ex.push_back({var, val.str()});
        out["excluded"] = std::move(ex);
    }
    return out;
}

json verdict_to_json(const Verdict &v) {
    return json{{"status", to_string(v.status)}, {"detail", v.detail}};
}

json graph_to_json(const DegenGraph &G) {
    json nodes = json::array(), edges = json::array();
    for (const auto &n : G.nodes) nodes.push_back({{"type", n.type.str()}, {"level", n.level}});
    for (const auto &e : G.edges) {
        json edge{{"from", G.nodes[e.from].type.str()},
                  {"to", G.nodes[e.to].type.str()},
                  {"provenance", e.provenance}};
        if (!e.condition.empty()) edge["condition"] = e.condition;
        edges.push_back(std::move(edge));
    }
    return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

} // namespace heis
