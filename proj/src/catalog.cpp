#include "heis/catalog.hpp"

#include <algorithm>

namespace heis {

std::string CanonicalType::str() const {
    if (parameters.empty()) return label;
    std::string s = label + "(";
    bool first = true;
    for (const auto &[name, value] : parameters) {
        if (!first) s += ", ";
        s += name + "=" + value.str();
        first = false;
    }
    return s + ")";
}

const std::vector<std::string> &catalog_labels() {
    static const std::vector<std::string> labels = {
        "ZERO", "H01", "H02", "H03", "H04", "H05", "H06", "H07",
        "H08",  "H09", "H10", "H11", "H12", "H13", "H14", "H15"};
    return labels;
}

std::vector<std::string> family_parameters(const std::string &label) {
    if (label == "H03" || label == "H05" || label == "H09" || label == "H14")
        return {kVarLambda};
    if (label == "H13") return {kVarLambda, kVarMu};
    return {};
}

void validate_type(const CanonicalType &T) {
    const auto &labels = catalog_labels();
    if (std::find(labels.begin(), labels.end(), T.label) == labels.end())
        throw MathError("unknown catalog label: " + T.label);
    auto names = family_parameters(T.label);
    if (T.parameters.size() != names.size())
        throw MathError(T.label + " takes " + std::to_string(names.size()) +
                        " parameter(s), got " + std::to_string(T.parameters.size()));
    for (const auto &name : names)
        if (!T.parameters.count(name))
            throw MathError(T.label + " is missing parameter " + name);
    if (T.label == "H09") {
        const RationalFunction &l = T.parameters.at(kVarLambda);
        if (l.is_constant()) {
            GaussRational v = l.constant_value();
            if (v.is_zero() || v == GaussRational(-1))
                throw MathError("H09 requires λ ∉ {-1, 0}, got " + v.str());
        }
    }
}

namespace {

RationalFunction one() { return RationalFunction(1); }

} // namespace

Algebra instantiate(const CanonicalType &T) {
    validate_type(T);
    std::vector<std::string> symbolic;
    for (const auto &[name, value] : T.parameters)
        if (!value.is_constant()) symbolic.push_back(name);
    std::vector<std::pair<std::string, GaussRational>> excluded;
    if (T.label == "H09") {
        excluded.emplace_back(kVarLambda, GaussRational(-1));
        excluded.emplace_back(kVarLambda, GaussRational(0));
    }
    Algebra A(5, symbolic, excluded);
    auto L = [&] { return T.parameters.at(kVarLambda); };
    auto M = [&] { return T.parameters.at(kVarMu); };
    const std::string &f = T.label;
    if (f == "ZERO") {
    } else if (f == "H01") {
        A.set(1, 1, 5, one());
    } else if (f == "H02") {
        A.set(1, 2, 5, -one()).set(2, 1, 5, one()).set(2, 2, 5, one());
    } else if (f == "H03") {
        A.set(1, 2, 5, one()).set(2, 1, 5, L());
    } else if (f == "H04") {
        A.set(1, 1, 5, one()).set(2, 3, 5, -one()).set(3, 2, 5, one()).set(3, 3, 5, one());
    } else if (f == "H05") {
        A.set(1, 1, 5, one()).set(2, 3, 5, one()).set(3, 2, 5, L());
    } else if (f == "H06") {
        A.set(1, 2, 5, one()).set(2, 3, 5, one());
    } else if (f == "H07") {
        A.set(1, 3, 5, one()).set(2, 2, 5, -one()).set(2, 3, 5, -one());
        A.set(3, 1, 5, one()).set(3, 2, 5, one());
    } else if (f == "H08") {
        A.set(1, 4, 5, -one()).set(2, 3, 5, one()).set(2, 4, 5, one());
        A.set(3, 2, 5, -one()).set(3, 3, 5, -one()).set(4, 1, 5, one()).set(4, 2, 5, one());
    } else if (f == "H09") {
        A.set(1, 3, 5, one()).set(2, 4, 5, one()).set(3, 1, 5, L());
        A.set(3, 2, 5, one()).set(4, 2, 5, L());
    } else if (f == "H10") {
        A.set(1, 1, 5, one()).set(2, 3, 5, one()).set(3, 4, 5, one());
    } else if (f == "H11") {
        A.set(1, 1, 5, one()).set(2, 4, 5, one()).set(3, 3, 5, -one());
        A.set(3, 4, 5, -one()).set(4, 2, 5, one()).set(4, 3, 5, one());
    } else if (f == "H12") {
        A.set(1, 2, 5, -one()).set(2, 1, 5, one()).set(2, 2, 5, one());
        A.set(3, 4, 5, -one()).set(4, 3, 5, one()).set(4, 4, 5, one());
    } else if (f == "H13") {
        A.set(1, 2, 5, one()).set(2, 1, 5, M()).set(3, 4, 5, one()).set(4, 3, 5, L());
    } else if (f == "H14") {
        A.set(1, 2, 5, one()).set(2, 1, 5, L()).set(3, 4, 5, -one());
        A.set(4, 3, 5, one()).set(4, 4, 5, one());
    } else if (f == "H15") {
        A.set(1, 2, 5, one()).set(2, 3, 5, one()).set(3, 4, 5, one());
    }
    return A;
}

namespace {

// Kronecker delta against a concrete value; symbolic parameters count as
// generic, i.e. never equal
size_t delta(const RationalFunction &p, long v) {
    return p.is_constant() && p.constant_value() == GaussRational(v) ? 1 : 0;
}

} // namespace

size_t expected_der_dim(const CanonicalType &T) {
    validate_type(T);
    const std::string &f = T.label;
    if (f == "ZERO") return 25;
    if (f == "H01") return 17;
    if (f == "H02") return 14;
    if (f == "H04") return 10;
    if (f == "H06") return 11;
    if (f == "H07") return 10;
    if (f == "H08") return 7;
    if (f == "H10") return 8;
    if (f == "H11") return 7;
    if (f == "H12") return 9;
    if (f == "H15") return 7;
    const RationalFunction &l = T.parameters.at(kVarLambda);
    if (f == "H03") return 14 + 2 * delta(l, -1);
    if (f == "H05") return 10 + 2 * delta(l, 1) + 2 * delta(l, -1);
    if (f == "H09") return 7 + 2 * delta(l, 1);
    if (f == "H14") return 7 + 4 * delta(l, -1);
    // H13: 7 + θ_{λ,μ}
    const RationalFunction &m = T.parameters.at(kVarMu);
    size_t eq = 0;
    if (l.is_constant() && m.is_constant() && l.constant_value() == m.constant_value())
        eq = 1;
    else if (!l.is_constant() && !m.is_constant() && l == m)
        eq = 1;
    return 7 + 2 * eq + 2 * delta(l, -1) * delta(m, -1) + 2 * delta(l, 1) * delta(m, 1) +
           2 * delta(l, -1) + 2 * delta(m, -1);
}

bool in_closed_unit_region(const GaussRational &x) {
    mpq_class n = x.norm_sq();
    if (n < 1) return true;
    if (n == 1) return x.im() >= 0;
    return false;
}

bool in_right_halfplane(const GaussRational &x) {
    if (x.re() > 0) return true;
    return x.re() == 0 && x.im() >= 0;
}

CanonicalType normalize_parameters(const CanonicalType &T) {
    validate_type(T);
    CanonicalType R = T;
    for (auto &[name, value] : R.parameters) {
        if (!value.is_constant())
            throw MathError("normalize_parameters requires concrete parameters");
        GaussRational v = value.constant_value();
        if (!in_closed_unit_region(v)) value = RationalFunction(v.inv());
    }
    if (R.label == "H13") {
        GaussRational l = R.parameters.at(kVarLambda).constant_value();
        GaussRational m = R.parameters.at(kVarMu).constant_value();
        if (!in_right_halfplane(l - m)) std::swap(R.parameters.at(kVarLambda), R.parameters.at(kVarMu));
    }
    return R;
}

MatF canonical_matrix(const CanonicalType &T) {
    Algebra A = instantiate(T);
    MatF M(4, 4);
    for (size_t i = 1; i <= 4; ++i)
        for (size_t j = 1; j <= 4; ++j) M.at(i - 1, j - 1) = A.c(i, j, 5);
    return M;
}

Algebra matrix_to_heisenberg(const MatF &M) {
    assert(M.rows() == 4 && M.cols() == 4);
    Algebra A(5);
    for (size_t i = 1; i <= 4; ++i)
        for (size_t j = 1; j <= 4; ++j) A.set(i, j, 5, M.at(i - 1, j - 1));
    return A;
}

std::pair<MatF, BasisChange> heisenberg_to_matrix(const Algebra &A) {
    if (A.dim() != 5) throw MathError("heisenberg_to_matrix requires dim 5");
    if (!is_heisenberg(A)) throw MathError("algebra does not satisfy the Heisenberg identities");
    size_t n = 5;
    // spanning vector of the square (first nonzero product), if any
    std::vector<RationalFunction> v;
    for (size_t i = 1; i <= n && v.empty(); ++i)
        for (size_t j = 1; j <= n; ++j) {
            bool nonzero = false;
            for (size_t k = 1; k <= n; ++k)
                if (!A.c(i, j, k).is_zero()) nonzero = true;
            if (nonzero) {
                v.resize(n);
                for (size_t k = 1; k <= n; ++k) v[k - 1] = A.c(i, j, k);
                break;
            }
        }
    BasisChange G{MatF(n, n)};
    if (v.empty()) {
        G.G = MatF::identity(n);
        return {MatF(4, 4), G};
    }
    // lexicographically first coordinate directions independent modulo v
    std::vector<size_t> chosen;
    for (size_t i = 0; i < n && chosen.size() < 4; ++i) {
        MatF probe(chosen.size() + 2, n);
        for (size_t r = 0; r < chosen.size(); ++r) probe.at(r, chosen[r]) = RationalFunction(1);
        probe.at(chosen.size(), i) = RationalFunction(1);
        for (size_t k = 0; k < n; ++k) probe.at(chosen.size() + 1, k) = v[k];
        if (matrix_rank(probe) == chosen.size() + 2) chosen.push_back(i);
    }
    assert(chosen.size() == 4);
    for (size_t r = 0; r < 4; ++r) G.G.at(r, chosen[r]) = RationalFunction(1);
    for (size_t k = 0; k < n; ++k) G.G.at(4, k) = v[k];
    Algebra B = change_basis(A, G);
    MatF M(4, 4);
    for (size_t i = 1; i <= 4; ++i)
        for (size_t j = 1; j <= 4; ++j) M.at(i - 1, j - 1) = B.c(i, j, 5);
    return {M, G};
}

std::vector<RationalFunction> TernaryAlgebra::bracket(int i1, int i2, int i3) const {
    std::array<int, 3> idx = {i1, i2, i3};
    // sort, tracking the permutation sign
    int sign = 1;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2 - a; ++b)
            if (idx[b] > idx[b + 1]) {
                std::swap(idx[b], idx[b + 1]);
                sign = -sign;
            }
    auto it = brackets.find(idx);
    if (it == brackets.end()) return std::vector<RationalFunction>(4);
    auto out = it->second;
    if (sign < 0)
        for (auto &x : out) x = -x;
    return out;
}

std::string TernaryAlgebra::str() const {
    std::string s;
    for (const auto &[idx, coeffs] : brackets) {
        if (!s.empty()) s += "; ";
        s += "[e" + std::to_string(idx[0]) + ",e" + std::to_string(idx[1]) + ",e" +
             std::to_string(idx[2]) + "] =";
        bool any = false;
        for (int j = 0; j < 4; ++j) {
            if (coeffs[j].is_zero()) continue;
            s += (any ? " + " : " ");
            std::string c = coeffs[j].str();
            s += (c == "1") ? "" : "(" + c + ")*";
            s += "e" + std::to_string(j + 1);
            any = true;
        }
        if (!any) s += " 0";
    }
    return s.empty() ? "0" : s;
}

TernaryAlgebra matrix_to_ternary(const MatF &M) {
    assert(M.rows() == 4 && M.cols() == 4);
    TernaryAlgebra T;
    for (int i = 1; i <= 4; ++i) {
        std::array<int, 3> triple;
        int p = 0;
        for (int k = 1; k <= 4; ++k)
            if (k != i) triple[p++] = k;
        std::vector<RationalFunction> coeffs(4);
        bool nonzero = false;
        for (int j = 1; j <= 4; ++j) {
            RationalFunction c = M.at(i - 1, j - 1);
            if (i % 2 == 0) c = -c; // (−1)^{i−1}
            if (!c.is_zero()) nonzero = true;
            coeffs[j - 1] = std::move(c);
        }
        if (nonzero) T.brackets[triple] = std::move(coeffs);
    }
    return T;
}

} // namespace heis
