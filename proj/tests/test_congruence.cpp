#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heis/congruence.hpp"
#include "heis/linalg.hpp"
#include "heis/scalar_parser.hpp"

#include <random>

using namespace heis;

namespace {

const std::string kX = "x";

RationalFunction rf(const std::string &s) {
    return parse_scalar(s, {kVarT, kVarLambda, kVarMu});
}

MatQ to_q(const MatF &M) {
    MatQ R(M.rows(), M.cols());
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) R.at(i, j) = M.at(i, j).constant_value();
    return R;
}

MatQ mq(std::vector<std::vector<GaussRational>> rows) {
    MatQ R(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) R.at(i, j) = rows[i][j];
    return R;
}

MatQ direct_sum(const MatQ &A, const MatQ &B) {
    MatQ R(A.rows() + B.rows(), A.cols() + B.cols());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) R.at(i, j) = A.at(i, j);
    for (size_t i = 0; i < B.rows(); ++i)
        for (size_t j = 0; j < B.cols(); ++j) R.at(A.rows() + i, A.cols() + j) = B.at(i, j);
    return R;
}

MatQ canon(const CanonicalType &T) { return to_q(canonical_matrix(T)); }

GaussRational random_gauss(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> d(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return GaussRational(mpq_class(d(rng), den(rng)), mpq_class(d(rng), den(rng)));
}

MatQ random_invertible(std::mt19937_64 &rng, size_t n) {
    while (true) {
        MatQ M(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) M.at(i, j) = random_gauss(rng);
        if (!determinant(M).is_zero()) return M;
    }
}

Polynomial xm(long a) { // x - a
    return Polynomial::variable(kX) - Polynomial::constant(GaussRational(a));
}

// representative concrete types covering every family and its special values
std::vector<CanonicalType> sample_types() {
    GaussRational I = GaussRational::i();
    std::vector<CanonicalType> ts;
    ts.emplace_back("ZERO");
    ts.emplace_back("H01");
    ts.emplace_back("H02");
    for (const auto &l : {GaussRational(0), GaussRational(1), GaussRational(-1),
                          GaussRational(1, 2), I})
        ts.emplace_back("H03", RationalFunction(l));
    ts.emplace_back("H04");
    for (const auto &l :
         {GaussRational(0), GaussRational(1), GaussRational(-1), GaussRational(1, 2), I})
        ts.emplace_back("H05", RationalFunction(l));
    ts.emplace_back("H06");
    ts.emplace_back("H07");
    ts.emplace_back("H08");
    for (const auto &l : {GaussRational(1), GaussRational(1, 2), I})
        ts.emplace_back("H09", RationalFunction(l));
    ts.emplace_back("H10");
    ts.emplace_back("H11");
    ts.emplace_back("H12");
    {
        using G = GaussRational;
        std::vector<std::pair<G, G>> ps = {
            {G(0), G(0)},  {G(1), G(0)},      {G(-1), G(0)},     {G(1, 2), G(0)},
            {G(1), G(1)},  {G(-1), G(-1)},    {G(1), G(-1)},     {G(1, 2), G(1, 2)},
            {G(1, 2), G(1, 3)}, {I, G(1, 2)}, {G(1, 2), G(-1)},  {G(1, 2), G(1)}};
        for (const auto &[l, m] : ps)
            ts.emplace_back("H13", RationalFunction(l), RationalFunction(m));
    }
    for (const auto &l :
         {GaussRational(0), GaussRational(1), GaussRational(-1), GaussRational(1, 2)})
        ts.emplace_back("H14", RationalFunction(l));
    ts.emplace_back("H15");
    return ts;
}

CanonicalType normalized(const CanonicalType &T) {
    return T.parameters.empty() ? T : normalize_parameters(T);
}

} // namespace

TEST_CASE("regular decomposition: worked examples") {
    {
        auto rd = regular_decomposition(mq({{1, 0}, {0, 0}}));
        CHECK(rd.regular == mq({{1}}));
        CHECK(rd.singular_blocks == std::vector<size_t>{1});
    }
    {
        auto rd = regular_decomposition(MatQ::identity(4));
        CHECK(rd.regular == MatQ::identity(4));
        CHECK(rd.singular_blocks.empty());
    }
    {
        auto rd = regular_decomposition(canon(CanonicalType("H06")));
        CHECK(rd.regular.rows() == 0);
        CHECK(rd.singular_blocks == std::vector<size_t>{3, 1});
    }
    {
        MatQ E12(4, 4);
        E12.at(0, 1) = GaussRational(1);
        auto rd = regular_decomposition(E12);
        CHECK(rd.regular.rows() == 0);
        CHECK(rd.singular_blocks == std::vector<size_t>{2, 1, 1});
    }
    {
        auto rd = regular_decomposition(canon(CanonicalType("H15")));
        CHECK(rd.regular.rows() == 0);
        CHECK(rd.singular_blocks == std::vector<size_t>{4});
    }
    {
        auto rd = regular_decomposition(MatQ(4, 4));
        CHECK(rd.singular_blocks == std::vector<size_t>{1, 1, 1, 1});
    }
    CHECK_THROWS_AS(regular_decomposition(MatQ(2, 3)), MathError);
}

TEST_CASE("regular decomposition: sizes add up and blocks are sorted") {
    for (const auto &T : sample_types()) {
        CAPTURE(T.str());
        auto rd = regular_decomposition(canon(T));
        size_t total = rd.regular.rows();
        for (size_t b : rd.singular_blocks) total += b;
        CHECK(total == 4);
        CHECK(std::is_sorted(rd.singular_blocks.rbegin(), rd.singular_blocks.rend()));
        CHECK(determinant(rd.regular) != GaussRational(0));
    }
}

TEST_CASE("cosquare: worked examples") {
    CHECK(cosquare(MatQ::identity(3)) == MatQ::identity(3));
    CHECK(cosquare(mq({{0, 1}, {2, 0}})) == mq({{2, 0}, {0, GaussRational(1, 2)}}));
    CHECK(cosquare(mq({{0, -1}, {1, 1}})) == mq({{-1, -2}, {0, -1}}));
    CHECK_THROWS_AS(cosquare(mq({{1, 1}, {1, 1}})), MathError);
}

TEST_CASE("invariant factors: worked examples") {
    {
        auto inv = invariant_factors(mq({{2, 0}, {0, GaussRational(1, 2)}})).invariant_factors;
        REQUIRE(inv.size() == 1);
        CHECK(inv[0] == xm(2) * (Polynomial::variable(kX) -
                                 Polynomial::constant(GaussRational(1, 2))));
    }
    {
        auto inv = invariant_factors(mq({{-1, -2}, {0, -1}})).invariant_factors;
        REQUIRE(inv.size() == 1);
        CHECK(inv[0] == xm(-1) * xm(-1));
    }
    {
        auto inv = invariant_factors(MatQ::identity(4)).invariant_factors;
        REQUIRE(inv.size() == 4);
        for (const auto &f : inv) CHECK(f == xm(1));
    }
}

TEST_CASE("invariant factors: chain divides and multiplies to the characteristic polynomial") {
    std::mt19937_64 rng(2024);
    for (size_t n : {2, 3, 4}) {
        for (int trial = 0; trial < 6; ++trial) {
            MatQ C(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) C.at(i, j) = random_gauss(rng);
            auto inv = invariant_factors(C).invariant_factors;
            Polynomial prod = Polynomial::constant(GaussRational(1));
            for (size_t k = 0; k < inv.size(); ++k) {
                CHECK(inv[k].leading_coeff().is_one());
                if (k + 1 < inv.size()) CHECK(inv[k + 1].divide_exact(inv[k]).has_value());
                prod = prod * inv[k];
            }
            CHECK(prod == characteristic_polynomial(C));
        }
    }
}

TEST_CASE("congruence: worked examples") {
    CHECK(are_congruent(mq({{0, 1}, {2, 0}}), mq({{0, 1}, {GaussRational(1, 2), 0}})));
    CHECK(are_congruent(MatQ::identity(2), mq({{2, 0}, {0, 2}})));
    CHECK(!are_congruent(mq({{0, -1}, {1, 1}}), MatQ::identity(2)));
    CHECK(!are_congruent(mq({{1, 0}, {0, 0}}), MatQ::identity(2)));
    CHECK(!are_congruent(MatQ::identity(2), MatQ::identity(3)));
}

TEST_CASE("congruence is invariant under change of basis") {
    std::mt19937_64 rng(9);
    for (const auto &T : sample_types()) {
        CAPTURE(T.str());
        MatQ M = canon(T);
        MatQ S = random_invertible(rng, 4);
        CHECK(are_congruent(M, S.transpose() * M * S));
    }
}

TEST_CASE("distinct normalized types are pairwise non-congruent") {
    std::vector<CanonicalType> reps;
    std::vector<MatQ> mats;
    for (const auto &T : sample_types()) {
        CanonicalType N = normalized(T);
        bool seen = false;
        for (const auto &R : reps)
            if (R == N) seen = true;
        if (seen) continue;
        reps.push_back(N);
        mats.push_back(canon(N));
    }
    REQUIRE(reps.size() >= 30);
    for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = a + 1; b < reps.size(); ++b) {
            CAPTURE(reps[a].str());
            CAPTURE(reps[b].str());
            CHECK(!are_congruent(mats[a], mats[b]));
        }
}

TEST_CASE("classification inverts the catalog") {
    for (const auto &T : sample_types()) {
        CAPTURE(T.str());
        CHECK(classify_matrix(canon(T)) == normalized(T));
    }
}

TEST_CASE("classification is basis independent") {
    std::mt19937_64 rng(41);
    for (const auto &T : sample_types()) {
        CAPTURE(T.str());
        MatQ M = canon(T);
        MatQ S = random_invertible(rng, 4);
        CHECK(classify_matrix(S.transpose() * M * S) == normalized(T));
    }
}

TEST_CASE("classification normalizes parameters") {
    CHECK(classify_matrix(canon(CanonicalType("H03", rf("2")))) ==
          CanonicalType("H03", rf("1/2")));
    CHECK(classify_matrix(canon(CanonicalType("H13", rf("i"), rf("1/2")))) ==
          CanonicalType("H13", rf("1/2"), rf("i")));
}

TEST_CASE("parameters outside the base field are reported with their minimal polynomial") {
    MatQ M = direct_sum(mq({{1, 1}, {0, -1}}), MatQ(2, 2));
    try {
        classify_matrix(M);
        FAIL("expected ParameterNotInBaseField");
    } catch (const ParameterNotInBaseField &e) {
        CHECK(e.label == "H03");
        Polynomial l = Polynomial::variable(kVarLambda);
        CHECK(e.min_poly ==
              l * l - Polynomial::constant(GaussRational(3)) * l +
                  Polynomial::constant(GaussRational(1)));
    }
}

TEST_CASE("classification rejects wrong sizes") {
    CHECK_THROWS_AS(classify_matrix(MatQ::identity(3)), MathError);
}
