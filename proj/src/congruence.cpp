#include "heis/congruence.hpp"
#include "heis/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <utility>

namespace heis {

namespace {

const std::string kX = "x";

Polynomial xpoly() { return Polynomial::variable(kX); }
Polynomial cpoly(const GaussRational &c) { return Polynomial::constant(c); }
Polynomial one_poly() { return Polynomial::constant(GaussRational(1)); }

/// univariate division with remainder in the variable x
std::pair<Polynomial, Polynomial> uni_divmod(const Polynomial &a, const Polynomial &b) {
    assert(!b.is_zero());
    int db = b.degree(kX);
    GaussRational lead = b.univariate_coeffs(kX)[db].constant_value();
    Polynomial q, r = a;
    while (!r.is_zero() && r.degree(kX) >= db) {
        int dr = r.degree(kX);
        GaussRational c = r.univariate_coeffs(kX)[dr].constant_value() / lead;
        Polynomial m = cpoly(c) * xpoly().pow(dr - db);
        q = q + m;
        r = r - m * b;
    }
    return {q, r};
}

/// diagonal of the Smith normal form of a square matrix over Q(i)[x]
std::vector<Polynomial> smith_diagonal(std::vector<std::vector<Polynomial>> M) {
    size_t n = M.size();
    std::vector<Polynomial> diag(n);
    for (size_t t = 0; t < n; ++t) {
        bool zero_block = false;
        while (true) {
            // pick a nonzero entry of least degree as the pivot
            size_t bi = n, bj = n;
            int bd = -1;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j)
                    if (!M[i][j].is_zero()) {
                        int d = M[i][j].degree(kX);
                        if (bi == n || d < bd) {
                            bi = i;
                            bj = j;
                            bd = d;
                        }
                    }
            if (bi == n) {
                zero_block = true;
                break;
            }
            std::swap(M[t], M[bi]);
            for (size_t i = 0; i < n; ++i) std::swap(M[i][t], M[i][bj]);

            // reduce the pivot column and row; any nonzero remainder has
            // smaller degree than the pivot, so this terminates
            bool dirty = false;
            for (size_t i = t + 1; i < n; ++i) {
                if (M[i][t].is_zero()) continue;
                Polynomial q = uni_divmod(M[i][t], M[t][t]).first;
                for (size_t j = t; j < n; ++j) M[i][j] = M[i][j] - q * M[t][j];
                if (!M[i][t].is_zero()) dirty = true;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (M[t][j].is_zero()) continue;
                Polynomial q = uni_divmod(M[t][j], M[t][t]).first;
                for (size_t i = t; i < n; ++i) M[i][j] = M[i][j] - M[i][t] * q;
                if (!M[t][j].is_zero()) dirty = true;
            }
            if (dirty) continue;

            // the pivot must divide every remaining entry
            bool fixed = true;
            for (size_t i = t + 1; i < n && fixed; ++i)
                for (size_t j = t + 1; j < n && fixed; ++j) {
                    if (M[i][j].is_zero()) continue;
                    if (!uni_divmod(M[i][j], M[t][t]).second.is_zero()) {
                        for (size_t jj = t; jj < n; ++jj) M[t][jj] = M[t][jj] + M[i][jj];
                        fixed = false;
                    }
                }
            if (fixed) break;
        }
        if (zero_block) break; // remaining diagonal entries are zero
        diag[t] = M[t][t].monic();
    }
    return diag;
}

/// Complete congruence invariant, read off the pencil A + x Aᵀ: chains of
/// odd length are its minimal indices (one J_{2m+1}(0) per index m), chains
/// of even length are the x-power elementary divisors (J_{2m}(0) per x^m),
/// and what remains of the Smith chain is exactly the similarity invariant
/// of the cosquare of the nonsingular core.
struct CongruenceInvariant {
    std::vector<size_t> blocks;    // singular chain lengths, sorted descending
    std::vector<Polynomial> chain; // invariant factors of the core's cosquare
};

CongruenceInvariant congruence_invariant(const MatQ &A) {
    size_t n = A.rows();
    CongruenceInvariant ci;
    std::map<size_t, size_t> blocks;

    // nullity of the space of polynomial vectors v(x) of degree <= d with
    // (A + x Aᵀ) v(x) = 0; the d-th difference counts minimal indices
    std::vector<size_t> nu;
    for (size_t d = 0; 2 * d <= n + 1; ++d) {
        MatQ T((d + 2) * n, (d + 1) * n);
        for (size_t j = 0; j <= d; ++j)
            for (size_t i = 0; i < n; ++i)
                for (size_t l = 0; l < n; ++l) {
                    T.at(j * n + i, j * n + l) += A.at(i, l);
                    T.at((j + 1) * n + i, j * n + l) += A.at(l, i);
                }
        nu.push_back(solve_linear_system(T, {}).nullity);
    }
    size_t prev_delta = 0;
    for (size_t m = 0; m < nu.size(); ++m) {
        size_t delta = nu[m] - (m == 0 ? 0 : nu[m - 1]);
        if (delta > prev_delta) blocks[2 * m + 1] += delta - prev_delta;
        prev_delta = delta;
    }

    // Smith form of the pencil over Q(i)[x]
    std::vector<std::vector<Polynomial>> P(n, std::vector<Polynomial>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            P[i][j] = cpoly(A.at(i, j)) + xpoly() * cpoly(A.at(j, i));
    for (const auto &f : smith_diagonal(std::move(P))) {
        if (f.is_zero()) continue;
        int v = f.valuation(kX);
        if (v > 0) blocks[2 * (size_t)v] += 1;
        Polynomial g = f.shift_down(kX, v);
        if (!g.is_constant()) ci.chain.push_back(g.subst(kX, -xpoly()).monic());
    }

    size_t total = 0;
    for (const auto &[len, cnt] : blocks) total += len * cnt;
    for (const auto &g : ci.chain) total += (size_t)g.degree(kX);
    if (total != n) throw MathError("internal error: pencil invariants do not add up");

    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
        ci.blocks.insert(ci.blocks.end(), it->second, it->first);
    return ci;
}

/// companion matrix of a monic polynomial in x
MatQ companion(const Polynomial &g) {
    size_t d = (size_t)g.degree(kX);
    auto co = g.univariate_coeffs(kX);
    MatQ C(d, d);
    for (size_t i = 0; i + 1 < d; ++i) C.at(i + 1, i) = GaussRational(1);
    for (size_t i = 0; i < d; ++i) C.at(i, d - 1) = -co[i].constant_value();
    return C;
}

/// a nonsingular matrix whose cosquare has the given invariant factors:
/// with X the companion direct sum, any nonsingular solution of Mᵀ = M X
/// has cosquare X⁻¹, which is similar to X since the class is closed
/// under inversion
MatQ realize_core(const std::vector<Polynomial> &chain) {
    size_t d = 0;
    for (const auto &g : chain) d += (size_t)g.degree(kX);
    if (d == 0) return MatQ(0, 0);
    MatQ X(d, d);
    size_t off = 0;
    for (const auto &g : chain) {
        MatQ C = companion(g);
        for (size_t i = 0; i < C.rows(); ++i)
            for (size_t j = 0; j < C.cols(); ++j) X.at(off + i, off + j) = C.at(i, j);
        off += C.rows();
    }
    // entries of M as unknowns, row-major: m_{ji} - sum_k m_{ik} X_{kj} = 0
    MatQ sys(d * d, d * d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            sys.at(i * d + j, j * d + i) += GaussRational(1);
            for (size_t k = 0; k < d; ++k) sys.at(i * d + j, i * d + k) -= X.at(k, j);
        }
    auto basis = kernel_basis(sys);
    auto as_matrix = [&](const std::vector<GaussRational> &v) {
        MatQ M(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) M.at(i, j) = v[i * d + j];
        return M;
    };
    for (const auto &v : basis) {
        MatQ M = as_matrix(v);
        if (!determinant(M).is_zero()) return M;
    }
    // deterministic search for a nonsingular combination
    unsigned long long state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (long)((state >> 33) % 7) - 3;
    };
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<GaussRational> v(d * d);
        for (const auto &b : basis) {
            GaussRational c{mpq_class(next()), mpq_class(next())};
            for (size_t e = 0; e < v.size(); ++e) v[e] += c * b[e];
        }
        MatQ M = as_matrix(v);
        if (!determinant(M).is_zero()) return M;
    }
    throw MathError("internal error: could not realize the nonsingular core");
}

} // namespace

RegularDecomposition regular_decomposition(const MatQ &M) {
    if (M.rows() != M.cols()) throw MathError("regular decomposition requires a square matrix");
    RegularDecomposition rd;
    CongruenceInvariant ci = congruence_invariant(M);
    rd.singular_blocks = ci.blocks;
    rd.regular = ci.blocks.empty() ? M : realize_core(ci.chain);
    return rd;
}

MatQ cosquare(const MatQ &M) {
    if (M.rows() != M.cols()) throw MathError("cosquare requires a square matrix");
    auto inv_t = inverse(M.transpose());
    if (!inv_t) throw MathError("cosquare requires a nonsingular matrix");
    return *inv_t * M;
}

std::string SimilarityInvariant::str() const {
    std::string s;
    for (const auto &f : invariant_factors) {
        if (!s.empty()) s += ", ";
        s += f.str();
    }
    return "[" + s + "]";
}

SimilarityInvariant invariant_factors(const MatQ &C) {
    if (C.rows() != C.cols()) throw MathError("invariant factors require a square matrix");
    size_t n = C.rows();
    std::vector<std::vector<Polynomial>> xIC(n, std::vector<Polynomial>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            xIC[i][j] = cpoly(-C.at(i, j));
            if (i == j) xIC[i][j] = xIC[i][j] + xpoly();
        }
    SimilarityInvariant inv;
    for (const auto &d : smith_diagonal(std::move(xIC)))
        if (!d.is_constant()) inv.invariant_factors.push_back(d);
    return inv;
}

Polynomial characteristic_polynomial(const MatQ &C) {
    if (C.rows() != C.cols()) throw MathError("characteristic polynomial requires a square matrix");
    size_t n = C.rows();
    // interpolate det(aI - C) through n + 1 sample points
    std::vector<GaussRational> xs, ys;
    for (size_t s = 0; s <= n; ++s) {
        GaussRational a((long)s);
        MatQ A = C * GaussRational(-1);
        for (size_t i = 0; i < n; ++i) A.at(i, i) += a;
        xs.push_back(a);
        ys.push_back(determinant(A));
    }
    Polynomial p;
    for (size_t s = 0; s <= n; ++s) {
        Polynomial term = cpoly(ys[s]);
        for (size_t j = 0; j <= n; ++j) {
            if (j == s) continue;
            term = term * (xpoly() - cpoly(xs[j])) * cpoly((xs[s] - xs[j]).inv());
        }
        p = p + term;
    }
    return p;
}

bool are_congruent(const MatQ &A, const MatQ &B) {
    if (A.rows() != A.cols() || B.rows() != B.cols())
        throw MathError("congruence requires square matrices");
    if (A.rows() != B.rows()) return false;
    CongruenceInvariant ca = congruence_invariant(A), cb = congruence_invariant(B);
    return ca.blocks == cb.blocks && ca.chain == cb.chain;
}

namespace {

RationalFunction rf_of(const GaussRational &c) { return RationalFunction(c); }

/// c with f = x^2 - c x + 1, if f has that shape
std::optional<GaussRational> unit_quadratic_coeff(const Polynomial &f) {
    if (f.degree(kX) != 2) return std::nullopt;
    auto co = f.univariate_coeffs(kX);
    if (!co[2].constant_value().is_one() || !co[0].constant_value().is_one()) return std::nullopt;
    return -co[1].constant_value();
}

/// a root of y^2 - c y + 1; throws if the root is not in Q(i)
GaussRational solve_unit_quadratic(const std::string &family, const GaussRational &c) {
    auto s = gauss_sqrt(c * c - GaussRational(4));
    if (!s) {
        Polynomial lam = Polynomial::variable(kVarLambda);
        throw ParameterNotInBaseField(family, lam * lam - cpoly(c) * lam + one_poly());
    }
    return (c + *s) / GaussRational(2);
}

MatQ matf_to_matq(const MatF &M) {
    MatQ R(M.rows(), M.cols());
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) R.at(i, j) = M.at(i, j).constant_value();
    return R;
}

Polynomial linfac(long a) { return xpoly() - cpoly(GaussRational(a)); } // x - a

} // namespace

CanonicalType classify_matrix(const MatQ &M) {
    if (M.rows() != 4 || M.cols() != 4) throw MathError("classification requires a 4x4 matrix");
    CongruenceInvariant ci = congruence_invariant(M);
    const std::vector<size_t> &sb = ci.blocks;
    size_t reg = 4;
    for (size_t b : sb) reg -= b;

    auto finish = [&](CanonicalType t) {
        validate_type(t);
        CanonicalType nt = t.parameters.empty() ? t : normalize_parameters(t);
        if (!are_congruent(M, matf_to_matq(canonical_matrix(nt))))
            throw MathError("internal error: classification mismatch for " + nt.str());
        return nt;
    };
    auto with_lambda = [&](const std::string &label, const GaussRational &l) {
        return finish(CanonicalType(label, rf_of(l)));
    };
    auto is = [&](std::initializer_list<size_t> want) {
        return sb == std::vector<size_t>(want);
    };

    if (reg == 0) {
        if (is({1, 1, 1, 1})) return finish(CanonicalType("ZERO"));
        if (is({2, 1, 1})) return with_lambda("H03", GaussRational(0));
        if (is({2, 2}))
            return finish(CanonicalType("H13", rf_of(GaussRational(0)), rf_of(GaussRational(0))));
        if (is({3, 1})) return finish(CanonicalType("H06"));
        if (is({4})) return finish(CanonicalType("H15"));
    }
    if (reg == 1) {
        if (is({1, 1, 1})) return finish(CanonicalType("H01"));
        if (is({2, 1})) return with_lambda("H05", GaussRational(0));
        if (is({3})) return finish(CanonicalType("H10"));
    }
    if (reg >= 2) {
        const auto &inv = ci.chain;
        Polynomial xp1sq = (xpoly() + one_poly()) * (xpoly() + one_poly());

        if (reg == 2 && is({1, 1})) {
            if (inv.size() == 2 && inv[0] == linfac(1)) return with_lambda("H03", GaussRational(1));
            if (inv.size() == 2 && inv[0] == linfac(-1))
                return with_lambda("H03", GaussRational(-1));
            if (inv.size() == 1) {
                if (inv[0] == xp1sq) return finish(CanonicalType("H02"));
                if (auto c = unit_quadratic_coeff(inv[0]))
                    return with_lambda("H03", solve_unit_quadratic("H03", *c));
            }
        }
        if (reg == 2 && is({2})) {
            if (inv.size() == 1 && inv[0] == xp1sq)
                return with_lambda("H14", GaussRational(0));
            for (long a : {1L, -1L})
                if (inv.size() == 2 && inv[0] == linfac(a))
                    return finish(
                        CanonicalType("H13", rf_of(GaussRational(a)), rf_of(GaussRational(0))));
            if (inv.size() == 1)
                if (auto c = unit_quadratic_coeff(inv[0]))
                    return finish(CanonicalType("H13", rf_of(solve_unit_quadratic("H13", *c)),
                                                rf_of(GaussRational(0))));
        }
        if (reg == 3 && is({1})) {
            if (inv.size() == 3) return with_lambda("H05", GaussRational(1));
            if (inv.size() == 2 && inv[0] == linfac(-1) && inv[1] == linfac(-1) * linfac(1))
                return with_lambda("H05", GaussRational(-1));
            if (inv.size() == 1) {
                if (inv[0] == linfac(1) * xp1sq) return finish(CanonicalType("H04"));
                if (inv[0] == linfac(1).pow(3)) return finish(CanonicalType("H07"));
                if (auto q = inv[0].divide_exact(linfac(1)))
                    if (auto c = unit_quadratic_coeff(*q))
                        return with_lambda("H05", solve_unit_quadratic("H05", *c));
            }
        }
        if (reg == 4 && sb.empty()) {
            if (inv.size() == 4 && inv[0] == linfac(1))
                return finish(CanonicalType("H13", rf_of(GaussRational(1)), rf_of(GaussRational(1))));
            if (inv.size() == 4 && inv[0] == linfac(-1))
                return finish(
                    CanonicalType("H13", rf_of(GaussRational(-1)), rf_of(GaussRational(-1))));
            if (inv.size() == 3 && inv[0] == linfac(-1) && inv[1] == linfac(-1) &&
                inv[2] == xp1sq)
                return with_lambda("H14", GaussRational(-1));
            if (inv.size() == 2) {
                if (inv[0] == linfac(1) && inv[1] == linfac(1).pow(3))
                    return finish(CanonicalType("H11"));
                if (inv[0] == xp1sq && inv[1] == xp1sq) return finish(CanonicalType("H12"));
                if (inv[0] == linfac(1).pow(2) && inv[1] == linfac(1).pow(2))
                    return with_lambda("H09", GaussRational(1));
                if (inv[0] == linfac(1) && inv[1] == linfac(1) * xp1sq)
                    return with_lambda("H14", GaussRational(1));
                if (inv[0] == inv[1]) {
                    if (inv[0] == linfac(1) * linfac(-1))
                        return finish(
                            CanonicalType("H13", rf_of(GaussRational(1)), rf_of(GaussRational(-1))));
                    if (auto c = unit_quadratic_coeff(inv[0])) {
                        GaussRational l = solve_unit_quadratic("H13", *c);
                        return finish(CanonicalType("H13", rf_of(l), rf_of(l)));
                    }
                }
                for (long a : {1L, -1L})
                    if (inv[0] == linfac(a))
                        if (auto q = inv[1].divide_exact(linfac(a)))
                            if (auto c = unit_quadratic_coeff(*q))
                                return finish(CanonicalType(
                                    "H13", rf_of(GaussRational(a)),
                                    rf_of(solve_unit_quadratic("H13", *c))));
            }
            if (inv.size() == 1) {
                const Polynomial &f = inv[0];
                if (f == xp1sq * xp1sq) return finish(CanonicalType("H08"));
                if (auto q = f.divide_exact(xp1sq))
                    if (auto c = unit_quadratic_coeff(*q))
                        return with_lambda("H14", solve_unit_quadratic("H14", *c));
                // perfect square of x^2 - c x + 1
                {
                    auto co = f.univariate_coeffs(kX);
                    if (f.degree(kX) == 4 && co[4].constant_value().is_one()) {
                        GaussRational c = -co[3].constant_value() / GaussRational(2);
                        Polynomial g = xpoly() * xpoly() - cpoly(c) * xpoly() + one_poly();
                        if (f == g * g) return with_lambda("H09", solve_unit_quadratic("H09", c));
                        // (x^2 - s1 x + 1)(x^2 - s2 x + 1): palindromic
                        GaussRational a3 = co[3].constant_value(), a2 = co[2].constant_value();
                        GaussRational a1 = co[1].constant_value(), a0 = co[0].constant_value();
                        if (a0.is_one() && a1 == a3) {
                            GaussRational p = -a3, qq = a2 - GaussRational(2);
                            auto rt = gauss_sqrt(p * p - GaussRational(4) * qq);
                            if (!rt)
                                throw ParameterNotInBaseField(
                                    "H13", f.subst(kX, Polynomial::variable(kVarLambda)));
                            GaussRational s1 = (p + *rt) / GaussRational(2);
                            GaussRational s2 = (p - *rt) / GaussRational(2);
                            return finish(CanonicalType(
                                "H13", rf_of(solve_unit_quadratic("H13", s1)),
                                rf_of(solve_unit_quadratic("H13", s2))));
                        }
                    }
                }
            }
        }
    }
    throw MathError("matrix is not congruent to any canonical type");
}

} // namespace heis
