#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "conductor/upstairs.hpp"

using namespace conductor;

namespace {
const GF* F = GF::of_order(7);
LaurentPoly one() { return LaurentPoly::constant(FieldElem::integer(F, 1)); }
LaurentPoly term(GF::Elem c, int64_t v, int64_t i) {
    return LaurentPoly::monomial(FieldElem::monomial(F, c, Rat(v), 1), i);
}
LaurentPoly xi() { return LaurentPoly::xi(F); }

// y^d = u (Kummer-style relation).
UpRing::Var pure(int64_t d, const LaurentPoly& u) {
    std::vector<LaurentPoly> rel(size_t(d), LaurentPoly::zero(F));
    rel[0] = u;
    return {d, rel};
}

// Leibniz expansion over all permutations.
LaurentPoly leibniz(const std::vector<std::vector<LaurentPoly>>& M) {
    size_t n = M.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPoly acc = LaurentPoly::zero(F);
    do {
        int inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
        LaurentPoly p = one();
        for (size_t i = 0; i < n; ++i) p = p * M[i][perm[i]];
        acc = inv % 2 ? acc - p : acc + p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}
}  // namespace

TEST_CASE("upstairs: determinant agrees with the Leibniz expansion (property)") {
    std::mt19937_64 rng(43);
    for (size_t n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<std::vector<LaurentPoly>> M(n, std::vector<LaurentPoly>(n, LaurentPoly::zero(F)));
            for (auto& row : M)
                for (auto& c : row)
                    if (rng() % 4) c = term(GF::Elem(1 + rng() % 6), int64_t(rng() % 3), int64_t(rng() % 5) - 2);
            CHECK(determinant(M, F) == leibniz(M));
        }
    }
    CHECK(determinant({}, F) == one());
}

TEST_CASE("upstairs: relations reduce powers") {
    UpRing R(F, {pure(3, xi())});
    CHECK(R.rank() == 3);
    auto y = R.var(0);
    CHECK(R.pow(y, 3) == R.constant(xi()));
    CHECK(R.pow(y, 7) == R.monomial({1}, xi().pow(2)));
    CHECK(R.mul(y, R.pow(y, 2)) == R.constant(xi()));
    CHECK(is_zero(R.sub(R.pow(y, 4), R.scale(y, xi()))));
    // Multiplication matrix of y is the companion matrix; its determinant is the norm.
    auto M = R.mult_matrix(y);
    CHECK(determinant(M, F) == xi());
}

TEST_CASE("upstairs: ring laws in a two-variable ring (property)") {
    UpRing R(F, {pure(2, xi() + term(1, 1, 0)), pure(3, xi().shifted(-1))});
    std::mt19937_64 rng(47);
    auto rnd = [&] {
        UpRing::Elem a = R.zero();
        for (int k = 0; k < 3; ++k)
            a = R.add(a, R.monomial({int64_t(rng() % 4), int64_t(rng() % 5)},
                                    term(GF::Elem(1 + rng() % 6), int64_t(rng() % 3), int64_t(rng() % 5) - 2)));
        return a;
    };
    for (int i = 0; i < 30; ++i) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(R.mul(a, b) == R.mul(b, a));
        CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
        CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
        for (auto& [k, L] : R.mul(a, b)) {
            CHECK(k[0] < 2);
            CHECK(k[1] < 3);
        }
    }
}

TEST_CASE("upstairs: relation derivatives") {
    UpRing R(F, {pure(3, xi().pow(2))});
    // R = y^3 - xi^2: dR/dy = 3 y^2, dR/dxi = -2 xi.
    CHECK(R.relation_dy(0) == R.monomial({2}, LaurentPoly::constant(FieldElem::integer(F, 3))));
    CHECK(R.relation_dxi(0) == R.constant(xi().scaled(FieldElem::integer(F, -2))));
}

TEST_CASE("upstairs: valuations in a single-component frame") {
    // y^2 = xi at t = 1, outer branch: y has (1/2, 1/2).
    UpRing R(F, {pure(2, xi())});
    Frame fr{Rat(1), 1, {Rat(1, 2)}, {Rat(1, 2)}, 2};
    CHECK(frame_is_single_component(R, fr));
    auto y = R.var(0);
    UpVal v = valuation(R, y, fr);
    CHECK(v.alpha == Rat(1, 2));
    CHECK(v.beta == Rat(1, 2));
    // y + pi: alpha tie at 1/2 vs 1 -> y wins.
    UpVal w = valuation(R, R.add(y, R.constant(term(1, 1, 0))), fr);
    CHECK(w.alpha == Rat(1, 2));
    // y + xi: y leads (1/2 < 1).
    CHECK(valuation(R, R.add(y, R.constant(xi())), fr).beta == Rat(1, 2));
    CHECK_THROWS_AS(valuation(R, R.zero(), fr), ModelError);
}

TEST_CASE("upstairs: repeated beta classes mean several components") {
    UpRing R(F, {pure(2, xi().pow(2))});
    Frame fr{Rat(0), 1, {Rat(0)}, {Rat(1)}, 1};
    CHECK_FALSE(frame_is_single_component(R, fr));
    // In that frame y and xi lead with the same residue order: the valuation is not determined.
    CHECK_THROWS_AS(valuation(R, R.add(R.var(0), R.constant(xi())), fr), ModelError);
    UpRing S(F, {pure(2, xi())});
    Frame fs{Rat(0), 1, {Rat(0)}, {Rat(1, 2)}, 2};
    // y^2 reduces to xi, so y^2 + 2 xi = 3 xi has a single leading term.
    auto e = S.add(S.monomial({2}, one()), S.constant(xi().scaled(FieldElem::integer(F, 2))));
    CHECK(valuation(S, e, fs).beta == Rat(1));
}
