#include "heis/certificates.hpp"

#include "heis/linalg.hpp"

#include <algorithm>
#include <set>

namespace heis {

std::string to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::Verified: return "verified";
    case VerdictStatus::Failed: return "failed";
    case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(InvariantKind k) {
    switch (k) {
    case InvariantKind::ZXiCompare: return "z_xi_compare";
    case InvariantKind::Symmetry: return "symmetry";
    case InvariantKind::Antisymmetry: return "antisymmetry";
    case InvariantKind::DerivationDim: return "derivation_dim";
    }
    return "?";
}

namespace {

void fail(Verdict &v, std::string msg) {
    v.status = VerdictStatus::Failed;
    v.detail.push_back(std::move(msg));
}

std::string truncated(std::string s, size_t limit = 160) {
    if (s.size() > limit) {
        s.resize(limit);
        s += "...";
    }
    return s;
}

std::string entry_name(size_t i, size_t j, size_t k) {
    return "c_{" + std::to_string(i) + "," + std::to_string(j) + "}^" + std::to_string(k);
}

CanonicalType substituted_type(const CanonicalType &T,
                               const std::map<std::string, RationalFunction> &bindings) {
    CanonicalType out = T;
    for (auto &[name, value] : out.parameters) value = value.substitute(bindings);
    return out;
}

bool is_symmetric_like(SymmetryType t) {
    return t == SymmetryType::Symmetric || t == SymmetryType::Both;
}
bool is_antisymmetric_like(SymmetryType t) {
    return t == SymmetryType::Antisymmetric || t == SymmetryType::Both;
}

void collect_vars(const Polynomial &p, std::set<std::string> &out) {
    for (const auto &v : p.vars()) out.insert(v);
}

void collect_vars(const RationalFunction &f, std::set<std::string> &out) {
    collect_vars(f.num(), out);
    collect_vars(f.den(), out);
}

std::vector<std::string> sorted_by_rank(const std::set<std::string> &vars) {
    std::vector<std::string> out(vars.begin(), vars.end());
    std::sort(out.begin(), out.end(), var_precedes);
    return out;
}

uint64_t splitmix_next(uint64_t &state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// every pattern equation evaluated on the constants of A; returns the
/// diagnostics of all violated ones
std::vector<std::string> pattern_residuals(const ClosedSetPattern &pattern, const Algebra &A) {
    std::vector<std::string> diags;
    if (pattern.heisenberg_zeros) {
        for (size_t i = 1; i <= 5; ++i)
            for (size_t j = 1; j <= 5; ++j)
                for (size_t k = 1; k <= 5; ++k) {
                    if (i != 5 && j != 5 && k == 5) continue;
                    if (!A.c(i, j, k).is_zero())
                        diags.push_back(entry_name(i, j, k) + " = " +
                                        truncated(A.c(i, j, k).str()) + ", expected 0");
                }
    }
    for (const auto &[i, j, k] : pattern.zero_entries)
        if (!A.c(i, j, k).is_zero())
            diags.push_back("zero entry (" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ") violated: " + truncated(A.c(i, j, k).str()));
    for (size_t r = 0; r < pattern.linear_relations.size(); ++r) {
        RationalFunction sum;
        for (const auto &term : pattern.linear_relations[r])
            sum += term.coeff * A.c(term.i, term.j, term.k);
        if (!sum.is_zero())
            diags.push_back("relation " + std::to_string(r + 1) +
                            " violated: residual = " + truncated(sum.str()));
    }
    return diags;
}

/// roots t != 0 of det(G) as a human-readable note, when any exist
std::vector<std::string> exceptional_t_notes(const RationalFunction &det) {
    std::vector<std::string> notes;
    Polynomial g = det.num();
    g = g.shift_down(kVarT, g.valuation(kVarT));
    if (g.degree(kVarT) == 0) return notes;
    auto coeffs = g.univariate_coeffs(kVarT);
    bool constant_coeffs = true;
    for (const auto &c : coeffs)
        if (!c.is_constant()) constant_coeffs = false;
    if (constant_coeffs && coeffs.size() == 2) {
        GaussRational root = -coeffs[0].constant_value() / coeffs[1].constant_value();
        notes.push_back("basis is singular at t = " + root.str());
        return notes;
    }
    if (constant_coeffs && coeffs.size() == 3) {
        GaussRational a = coeffs[2].constant_value(), b = coeffs[1].constant_value(),
                      c = coeffs[0].constant_value();
        if (auto s = gauss_sqrt(b * b - GaussRational(4) * a * c)) {
            GaussRational two_a = GaussRational(2) * a;
            notes.push_back("basis is singular at t = " + ((-b + *s) / two_a).str());
            notes.push_back("basis is singular at t = " + ((-b - *s) / two_a).str());
            return notes;
        }
    }
    notes.push_back("basis is singular where " + g.str() + " = 0 (t != 0)");
    return notes;
}

} // namespace

CanonicalType DegenerationCertificate::target() const {
    CanonicalType T(target_label);
    T.parameters = parameter_map;
    return T;
}

Verdict verify_degeneration(const DegenerationCertificate &cert) {
    Verdict v;
    try {
        Algebra source = instantiate(cert.source);
        Algebra target = instantiate(cert.target());
        if (cert.basis.G.rows() != 5 || cert.basis.G.cols() != 5) {
            fail(v, "basis must be 5x5");
            return v;
        }
        Algebra moved = change_basis(source, cert.basis);
        for (size_t i = 1; i <= 5; ++i)
            for (size_t j = 1; j <= 5; ++j)
                for (size_t k = 1; k <= 5; ++k) {
                    Limit lim = limit_at_zero(moved.c(i, j, k), kVarT);
                    if (lim.diverges) {
                        fail(v, entry_name(i, j, k) + " = " + truncated(moved.c(i, j, k).str()) +
                                    " diverges as t -> 0");
                        continue;
                    }
                    if (lim.value != target.c(i, j, k))
                        fail(v, entry_name(i, j, k) + ": limit " + truncated(lim.value.str()) +
                                    " != target " + truncated(target.c(i, j, k).str()));
                }
        if (v.verified())
            for (auto &note : exceptional_t_notes(determinant(cert.basis.G)))
                v.detail.push_back(std::move(note));
    } catch (const MathError &e) {
        fail(v, e.what());
    }
    return v;
}

Verdict check_necessary(const CanonicalType &A, const CanonicalType &B) {
    Verdict v;
    try {
        Algebra a = instantiate(A);
        Algebra b = instantiate(B);
        size_t da = derivation_dim(a), db = derivation_dim(b);
        if (!(da < db))
            fail(v, "dim Der(" + A.str() + ") = " + std::to_string(da) + " is not < dim Der(" +
                        B.str() + ") = " + std::to_string(db));
        std::vector<RationalFunction> xis = {RationalFunction(1), RationalFunction(-1)};
        for (const auto *T : {&A, &B})
            for (const auto &[name, value] : T->parameters)
                if (std::find(xis.begin(), xis.end(), value) == xis.end()) xis.push_back(value);
        for (const auto &xi : xis) {
            size_t za = z_xi_dim(a, xi), zb = z_xi_dim(b, xi);
            if (za > zb)
                fail(v, "Z_{" + xi.str() + "}: " + std::to_string(za) + " > " + std::to_string(zb));
        }
        size_t sa = square_dim(a), sb = square_dim(b);
        if (sa < sb)
            fail(v, "dim A^2: " + std::to_string(sa) + " < " + std::to_string(sb));
        SymmetryType ta = symmetry_type(a), tb = symmetry_type(b);
        if (is_symmetric_like(ta) && !is_symmetric_like(tb))
            fail(v, "source is symmetric, target is not");
        if (is_antisymmetric_like(ta) && !is_antisymmetric_like(tb))
            fail(v, "source is antisymmetric, target is not");
    } catch (const MathError &e) {
        fail(v, e.what());
    }
    return v;
}

ClosedSetPattern
ClosedSetPattern::substituted(const std::map<std::string, RationalFunction> &bindings) const {
    ClosedSetPattern out = *this;
    for (auto &rel : out.linear_relations)
        for (auto &term : rel) term.coeff = term.coeff.substitute(bindings);
    for (size_t i = 0; i < out.witness_basis.G.rows(); ++i)
        for (size_t j = 0; j < out.witness_basis.G.cols(); ++j)
            out.witness_basis.G.at(i, j) = out.witness_basis.G.at(i, j).substitute(bindings);
    auto apply = [&](std::vector<TypeWithConstraints> &list) {
        for (auto &twc : list) {
            twc.type = substituted_type(twc.type, bindings);
            std::vector<Exclusion> kept;
            for (auto &ex : twc.excluded) {
                if (bindings.count(ex.var)) continue;
                kept.push_back({ex.var, ex.value.substitute(bindings)});
            }
            twc.excluded = std::move(kept);
        }
    };
    apply(out.sources);
    apply(out.blocked_targets);
    return out;
}

Verdict verify_membership(const ClosedSetPattern &pattern, const CanonicalType &source) {
    Verdict v;
    try {
        Algebra a = instantiate(source);
        Algebra moved = change_basis(a, pattern.witness_basis);
        for (auto &d : pattern_residuals(pattern, moved)) fail(v, std::move(d));
    } catch (const MathError &e) {
        fail(v, e.what());
    }
    return v;
}

Verdict verify_borel_stability(const ClosedSetPattern &pattern) {
    Verdict v;
    try {
        // positions of structure constants not forced to zero by the pattern
        std::vector<std::array<size_t, 3>> positions;
        for (size_t i = 1; i <= 5; ++i)
            for (size_t j = 1; j <= 5; ++j)
                for (size_t k = 1; k <= 5; ++k) {
                    if (pattern.heisenberg_zeros && (i == 5 || j == 5 || k != 5)) continue;
                    bool zeroed = false;
                    for (const auto &z : pattern.zero_entries)
                        if (z == std::array<size_t, 3>{i, j, k}) zeroed = true;
                    if (!zeroed) positions.push_back({i, j, k});
                }

        // generic solution of the linear relations: fresh symbols a1, a2, ...
        MatF rel(pattern.linear_relations.size(), positions.size());
        for (size_t r = 0; r < pattern.linear_relations.size(); ++r)
            for (const auto &term : pattern.linear_relations[r])
                for (size_t c = 0; c < positions.size(); ++c)
                    if (positions[c] == std::array<size_t, 3>{term.i, term.j, term.k})
                        rel.at(r, c) += term.coeff;
        auto basis = kernel_basis(rel);
        Algebra generic(5);
        for (size_t r = 0; r < basis.size(); ++r) {
            RationalFunction a_r = RationalFunction::variable("a" + std::to_string(r + 1));
            for (size_t c = 0; c < positions.size(); ++c) {
                if (basis[r][c].is_zero()) continue;
                const auto &[i, j, k] = positions[c];
                generic.set(i, j, k, generic.c(i, j, k) + a_r * basis[r][c]);
            }
        }

        std::vector<std::string> first_failure;
        for (bool lower : {true, false}) {
            MatF G(5, 5);
            for (size_t p = 1; p <= 5; ++p)
                for (size_t q = 1; q <= 5; ++q)
                    if (lower ? p >= q : p <= q)
                        G.at(p - 1, q - 1) = RationalFunction::variable(
                            "g" + std::to_string(p) + std::to_string(q));
            Algebra moved = change_basis(generic, BasisChange{G});
            auto diags = pattern_residuals(pattern, moved);
            if (diags.empty()) {
                v.detail.push_back(std::string("stable under ") + (lower ? "lower" : "upper") +
                                   "-triangular basis changes");
                return v;
            }
            std::string head = lower ? "lower-triangular: " : "upper-triangular: ";
            for (size_t d = 0; d < diags.size() && d < 3; ++d)
                first_failure.push_back(head + diags[d]);
        }
        for (auto &d : first_failure) fail(v, std::move(d));
    } catch (const MathError &e) {
        fail(v, e.what());
    }
    return v;
}

uint64_t substream_seed(uint64_t seed, const std::string &certificate_id) {
    uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : certificate_id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ (seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
}

Verdict falsify_membership(const ClosedSetPattern &pattern, const CanonicalType &target,
                           size_t trials, uint64_t seed) {
    Verdict v;
    v.status = VerdictStatus::Inconclusive;
    if (!pattern.heisenberg_zeros)
        throw MathError("falsifier requires a pattern with the standard zero block");
    MatF Mf = canonical_matrix(target);
    MatQ M(4, 4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            if (!Mf.at(i, j).is_constant())
                throw MathError("falsifier requires a concrete target");
            M.at(i, j) = Mf.at(i, j).constant_value();
        }

    // any basis placing the target inside the pattern must send the fifth
    // vector into the line of squares, so the search space is a 4x4 basis
    // change of the bilinear form (the remaining scalar drops out of the
    // homogeneous equations)
    std::vector<std::pair<size_t, size_t>> zeros;
    for (const auto &[i, j, k] : pattern.zero_entries)
        if (k == 5 && i <= 4 && j <= 4) zeros.emplace_back(i, j);

    static const std::vector<GaussRational> kValues = {
        GaussRational(0),     GaussRational(1),  GaussRational(-1),       GaussRational(2),
        GaussRational(1, 2),  GaussRational::i(), -GaussRational::i(),
        GaussRational(mpq_class(1), mpq_class(1))};
    uint64_t state = substream_seed(seed, pattern.id + "|" + target.str());

    for (size_t trial = 0; trial < trials; ++trial) {
        MatQ S(4, 4);
        do {
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = 0; j < 4; ++j)
                    S.at(i, j) = kValues[splitmix_next(state) % kValues.size()];
        } while (determinant(S).is_zero());
        MatQ moved = S * M * S.transpose();
        bool hit = true;
        for (const auto &[i, j] : zeros)
            if (!moved.at(i - 1, j - 1).is_zero()) {
                hit = false;
                break;
            }
        if (hit)
            for (const auto &rel : pattern.linear_relations) {
                RationalFunction sum;
                for (const auto &term : rel) {
                    if (term.k != 5 || term.i > 4 || term.j > 4) continue;
                    sum += term.coeff * RationalFunction(moved.at(term.i - 1, term.j - 1));
                }
                if (!sum.is_zero()) {
                    hit = false;
                    break;
                }
            }
        if (hit) {
            v.status = VerdictStatus::Failed;
            v.detail.push_back("witness found at trial " + std::to_string(trial + 1) + " for " +
                               target.str());
            for (size_t i = 0; i < 4; ++i) {
                std::string row = "  f" + std::to_string(i + 1) + " = [";
                for (size_t j = 0; j < 4; ++j)
                    row += (j ? ", " : "") + S.at(i, j).str();
                v.detail.push_back(row + "]");
            }
            return v;
        }
    }
    v.detail.push_back("no witness for " + target.str() + " in " + std::to_string(trials) +
                       " trials (evidence, not proof)");
    return v;
}

const std::vector<GaussRational> &grid_values() {
    static const std::vector<GaussRational> kGrid = {
        GaussRational(0), GaussRational(1, 2), GaussRational::i(), GaussRational(-1),
        GaussRational(1)};
    return kGrid;
}

std::vector<std::map<std::string, RationalFunction>>
grid_bindings(const std::vector<std::string> &params, const std::vector<Exclusion> &excluded) {
    return grid_bindings(params, excluded, grid_values());
}

std::vector<std::map<std::string, RationalFunction>>
grid_bindings(const std::vector<std::string> &params, const std::vector<Exclusion> &excluded,
              const std::vector<GaussRational> &values) {
    std::vector<std::map<std::string, RationalFunction>> out;
    if (params.empty()) return out;
    std::vector<size_t> idx(params.size(), 0);
    while (true) {
        std::map<std::string, RationalFunction> b;
        for (size_t p = 0; p < params.size(); ++p)
            b[params[p]] = RationalFunction(values[idx[p]]);
        bool ok = true;
        for (const auto &ex : excluded) {
            auto it = b.find(ex.var);
            if (it == b.end()) continue;
            try {
                if (it->second == ex.value.substitute(b)) ok = false;
            } catch (const MathError &) {
                // the excluded value has no finite specialization here
            }
            if (!ok) break;
        }
        if (ok) out.push_back(std::move(b));
        size_t p = 0;
        while (p < params.size() && ++idx[p] == values.size()) idx[p++] = 0;
        if (p == params.size()) break;
    }
    return out;
}

std::vector<std::string> free_symbols(const CanonicalType &T) {
    std::set<std::string> vars;
    for (const auto &[name, value] : T.parameters) collect_vars(value, vars);
    return sorted_by_rank(vars);
}

Verdict verify_invariant_cert(const InvariantCertificate &cert) {
    Verdict v;
    for (const auto &src : cert.sources)
        for (const auto &tgt : cert.blocked_targets) {
            std::set<std::string> vars;
            for (const auto &name : free_symbols(src.type)) vars.insert(name);
            for (const auto &name : free_symbols(tgt.type)) vars.insert(name);
            if (cert.kind == InvariantKind::ZXiCompare) collect_vars(cert.xi, vars);

            auto evaluate = [&](const std::map<std::string, RationalFunction> &b,
                                bool symbolic) {
                std::string where = " [" + src.type.str() + " -/-> " + tgt.type.str();
                for (const auto &[name, value] : b) where += ", " + name + " = " + value.str();
                where += "]";
                try {
                    Algebra a = instantiate(substituted_type(src.type, b));
                    Algebra t = instantiate(substituted_type(tgt.type, b));
                    switch (cert.kind) {
                    case InvariantKind::ZXiCompare: {
                        RationalFunction xi = cert.xi.substitute(b);
                        size_t za = z_xi_dim(a, xi), zt = z_xi_dim(t, xi);
                        if (!(za > zt))
                            fail(v, "Z_{" + xi.str() + "}: source " + std::to_string(za) +
                                        " is not > target " + std::to_string(zt) + where);
                        break;
                    }
                    case InvariantKind::Symmetry:
                        if (!is_symmetric_like(symmetry_type(a)))
                            fail(v, "source is not symmetric" + where);
                        else if (is_symmetric_like(symmetry_type(t)))
                            fail(v, "target is symmetric as well" + where);
                        break;
                    case InvariantKind::Antisymmetry:
                        if (!is_antisymmetric_like(symmetry_type(a)))
                            fail(v, "source is not antisymmetric" + where);
                        else if (is_antisymmetric_like(symmetry_type(t)))
                            fail(v, "target is antisymmetric as well" + where);
                        break;
                    case InvariantKind::DerivationDim: {
                        size_t da = derivation_dim(a), dt = derivation_dim(t);
                        if (da < dt)
                            fail(v, "dim Der increases: " + std::to_string(da) + " < " +
                                        std::to_string(dt) + where);
                        break;
                    }
                    }
                } catch (const MathError &e) {
                    // at a grid point this is a family exclusion; symbolically
                    // it is a genuine failure
                    if (symbolic) fail(v, std::string(e.what()) + where);
                }
            };

            evaluate({}, true);
            std::vector<Exclusion> excl = src.excluded;
            excl.insert(excl.end(), tgt.excluded.begin(), tgt.excluded.end());
            for (const auto &b : grid_bindings(sorted_by_rank(vars), excl)) evaluate(b, false);
        }
    return v;
}

} // namespace heis
