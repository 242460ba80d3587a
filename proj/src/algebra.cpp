#include "heis/algebra.hpp"

namespace heis {

std::string to_string(SymmetryType t) {
    switch (t) {
    case SymmetryType::Symmetric: return "symmetric";
    case SymmetryType::Antisymmetric: return "antisymmetric";
    case SymmetryType::Both: return "both";
    case SymmetryType::Neither: return "neither";
    }
    return "?";
}

bool Algebra::is_zero() const {
    for (const auto &v : c_)
        if (!v.is_zero()) return false;
    return true;
}

Algebra Algebra::substituted(const std::map<std::string, RationalFunction> &bindings) const {
    Algebra out(dim_);
    out.c_.clear();
    for (const auto &v : c_) out.c_.push_back(v.substitute(bindings));
    // keep only the parameters that were not bound
    for (const auto &p : parameters_)
        if (!bindings.count(p)) out.parameters_.push_back(p);
    for (const auto &ex : excluded_)
        if (!bindings.count(ex.first)) out.excluded_.push_back(ex);
    return out;
}

Algebra change_basis(const Algebra &A, const BasisChange &bc) {
    size_t n = A.dim();
    assert(bc.G.rows() == n && bc.G.cols() == n);
    auto Ginv = inverse(bc.G);
    if (!Ginv) throw MathError("singular basis change");
    // t_{i,j}^k = sum_{p,q} G_{i,p} G_{j,q} c_{p,q}^k
    Algebra T(n);
    for (size_t i = 1; i <= n; ++i)
        for (size_t p = 1; p <= n; ++p) {
            const RationalFunction &gip = bc.G.at(i - 1, p - 1);
            if (gip.is_zero()) continue;
            for (size_t j = 1; j <= n; ++j)
                for (size_t q = 1; q <= n; ++q) {
                    const RationalFunction &gjq = bc.G.at(j - 1, q - 1);
                    if (gjq.is_zero()) continue;
                    for (size_t k = 1; k <= n; ++k) {
                        const RationalFunction &cpq = A.c(p, q, k);
                        if (cpq.is_zero()) continue;
                        T.set(i, j, k, T.c(i, j, k) + gip * gjq * cpq);
                    }
                }
        }
    Algebra R(n, A.parameters(), A.excluded());
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= n; ++j)
            for (size_t m = 1; m <= n; ++m) {
                RationalFunction s;
                for (size_t k = 1; k <= n; ++k) {
                    const RationalFunction &t = T.c(i, j, k);
                    if (t.is_zero()) continue;
                    s += t * Ginv->at(k - 1, m - 1);
                }
                R.set(i, j, m, std::move(s));
            }
    return R;
}

namespace {

// rows: one equation per (i,j,m); columns: D_{k,m} flattened as (k-1)*n+(m-1)
MatF derivation_system(const Algebra &A) {
    size_t n = A.dim();
    MatF M(n * n * n, n * n);
    size_t row = 0;
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= n; ++j)
            for (size_t m = 1; m <= n; ++m, ++row) {
                for (size_t k = 1; k <= n; ++k) {
                    // D(e_i e_j) contributes c_{i,j}^k D_{k,m}
                    size_t col = (k - 1) * n + (m - 1);
                    M.at(row, col) += A.c(i, j, k);
                    // D(e_i) e_j contributes -c_{k,j}^m D_{i,k}
                    col = (i - 1) * n + (k - 1);
                    M.at(row, col) -= A.c(k, j, m);
                    // e_i D(e_j) contributes -c_{i,k}^m D_{j,k}
                    col = (j - 1) * n + (k - 1);
                    M.at(row, col) -= A.c(i, k, m);
                }
            }
    return M;
}

} // namespace

size_t derivation_dim(const Algebra &A) {
    return solve_linear_system(derivation_system(A), {}).nullity;
}

std::vector<MatF> derivation_basis(const Algebra &A) {
    size_t n = A.dim();
    std::vector<MatF> out;
    for (const auto &v : kernel_basis(derivation_system(A))) {
        MatF D(n, n);
        for (size_t k = 0; k < n; ++k)
            for (size_t m = 0; m < n; ++m) D.at(k, m) = v[k * n + m];
        out.push_back(std::move(D));
    }
    return out;
}

size_t z_xi_dim(const Algebra &A, const RationalFunction &xi) {
    size_t n = A.dim();
    // unknowns: coordinates of x; one equation per (j,k)
    MatF M(n * n, n);
    size_t row = 0;
    for (size_t j = 1; j <= n; ++j)
        for (size_t k = 1; k <= n; ++k, ++row)
            for (size_t i = 1; i <= n; ++i) M.at(row, i - 1) = A.c(i, j, k) - xi * A.c(j, i, k);
    return solve_linear_system(M, {}).nullity;
}

size_t square_dim(const Algebra &A) {
    size_t n = A.dim();
    MatF M(n * n, n);
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= n; ++j)
            for (size_t k = 1; k <= n; ++k) M.at((i - 1) * n + (j - 1), k - 1) = A.c(i, j, k);
    return matrix_rank(M);
}

SymmetryType symmetry_type(const Algebra &A) {
    size_t n = A.dim();
    bool sym = true, anti = true;
    for (size_t i = 1; i <= n && (sym || anti); ++i)
        for (size_t j = 1; j <= n; ++j)
            for (size_t k = 1; k <= n; ++k) {
                if (A.c(i, j, k) != A.c(j, i, k)) sym = false;
                if (A.c(i, j, k) != -A.c(j, i, k)) anti = false;
            }
    if (sym && anti) return SymmetryType::Both;
    if (sym) return SymmetryType::Symmetric;
    if (anti) return SymmetryType::Antisymmetric;
    return SymmetryType::Neither;
}

bool is_heisenberg(const Algebra &A) {
    if (square_dim(A) > 1) return false;
    size_t n = A.dim();
    // every product vector lies in A^2; all must multiply to zero on
    // both sides
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= n; ++j) {
            // v = e_i e_j
            for (size_t a = 1; a <= n; ++a)
                for (size_t m = 1; m <= n; ++m) {
                    RationalFunction left, right; // (v e_a)^m and (e_a v)^m
                    for (size_t k = 1; k <= n; ++k) {
                        const RationalFunction &vk = A.c(i, j, k);
                        if (vk.is_zero()) continue;
                        left += vk * A.c(k, a, m);
                        right += vk * A.c(a, k, m);
                    }
                    if (!left.is_zero() || !right.is_zero()) return false;
                }
        }
    return true;
}

} // namespace heis
