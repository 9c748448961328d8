#include "doctest.h"

#include <random>

#include "morava/smallrings.hpp"

using namespace morava;

namespace {

FGL honda(int n, int N, int Dx) { return build_honda(PrecisionCtx(3, N, n, 1, Dx)); }

USeries random_poly(E0Ptr R, int len, std::mt19937_64& rng) {
    USeries f(R, len);
    for (int i = 0; i < len; ++i) f.set(i, E0Elem(R, (i64)(rng() % 100000)));
    return f;
}

}  // namespace

TEST_CASE("cyclic rings") {
    FGL F1 = honda(1, 5, 40), F2 = honda(2, 4, 60);
    CHECK(cyclic_ring(4, F1).rank() == 1);
    CHECK(cyclic_ring(9, F1).rank() == 9);
    CHECK(cyclic_ring(18, F1).rank() == 9);
    CHECK(cyclic_ring(3, F2).rank() == 9);
    CHECK_THROWS_AS(cyclic_ring(0, F1), InvalidInput);

    QuotientRing Q = cyclic_ring(9, F1);
    // modulus reduces to x^rank mod p
    for (int i = 0; i < Q.rank(); ++i) CHECK(Q.modulus().scalar(i) % 3 == 0);
    std::mt19937_64 rng(3);
    const auto& R = Q.ring();
    int L = 9 * 5 + 1;
    for (int t = 0; t < 5; ++t) {
        USeries a = random_poly(R, L, rng), b = random_poly(R, L, rng);
        USeries ra = Q.reduce(a);
        CHECK(Q.reduce(ra.truncated(L)) == ra);
        CHECK(Q.reduce(a + b.scaled(7)) == ra + Q.reduce(b).scaled(7));
    }
    CHECK(Q.reduce(Q.modulus().truncated(L)).is_zero());
    // [9](x) itself is zero in the ring
    CHECK(Q.reduce(F1.mult_series(9, L)).is_zero());
}

TEST_CASE("abelian rings") {
    FGL F = honda(1, 4, 30);
    CHECK(abelian_ring({3, 3}, F).rank() == 9);
    CHECK(abelian_ring({4, 3}, F).rank() == 3);
    CHECK(abelian_ring({5}, F).rank() == 1);
}

TEST_CASE("tensor multiplication agrees with reducing series products") {
    FGL F = honda(1, 4, 30);
    auto A = abelian_ring({3, 9}, F);
    const auto& T = A.ring;
    const auto& R = T.ring();
    auto S = MonoSet::box({3 * 4, 9 * 4});
    std::mt19937_64 rng(9);
    for (int t = 0; t < 3; ++t) {
        MSeries a(R, S), b(R, S);
        for (int i = 0; i < 12; ++i) {
            a.set({(int)(rng() % 4), (int)(rng() % 10)}, E0Elem(R, (i64)(rng() % 81)));
            b.set({(int)(rng() % 4), (int)(rng() % 10)}, E0Elem(R, (i64)(rng() % 81)));
        }
        auto ta = T.from_series(a), tb = T.from_series(b);
        CHECK(T.mul(ta, tb) == T.from_series(a * b));
        CHECK(T.mul_var(ta, 1) == T.mul(ta, T.var(1)));
    }
    CHECK_THROWS_AS(T.from_series(MSeries(R, MonoSet::box({3, 9}))), PrecisionExhausted);
}

TEST_CASE("torus invariants") {
    FGL F1 = honda(1, 4, 30);
    TorusRing T3 = torus_invariant_ring(3, 1, F1);
    CHECK(T3.rank() == 10);
    CHECK(T3.orbit_basis().size() == 10);
    CHECK(torus_invariant_ring(1, 1, F1).rank() == 3);
    CHECK(torus_invariant_ring(1, 2, F1).rank() == 9);
    ZpSolver C(T3.change_of_basis());
    CHECK(C.full_rank());
    CHECK(C.det_valuation() >= 0);
    CHECK(T3.is_symmetric(T3.elementary(2)));
    CHECK(!T3.is_symmetric(T3.tensor().var(0)));
    CHECK_THROWS_AS(T3.orbit_coords(T3.tensor().var(0)), NotSymmetric);
    // x_1 x_2 x_3 times the product of [3](x_i) vanishes since each [3](x_i) does
    CHECK(T3.tensor().is_zero(T3.tensor().mul(T3.elementary(3), T3.tensor().from_series(
        embed(F1.mult_series(3, 12 * 3 + 12), F1.ctx.e0, MonoSet::total(3, 3 * (4 + 3)), 0)))));

    FGL F2 = honda(2, 3, 40);
    TorusRing T = torus_invariant_ring(3, 1, F2);
    CHECK(T.N() == 9);
    CHECK(T.rank() == 165);
    ZpSolver C2(T.change_of_basis());
    CHECK(C2.full_rank());
}

TEST_CASE("Sigma_p ring") {
    for (int n = 1; n <= 2; ++n) {
        FGL F = honda(n, 5, 20);
        SigmaPModel S = sigma_p_ring(F);
        CHECK(S.rank == (n == 1 ? 2 : 5));
        CHECK(S.f_degree == S.rank - 1);
        CHECK(S.fPoly.coeff(0) == E0Elem(F.ctx.e0, 3));
        CHECK(poly_degree(S.W) == (n == 1 ? 2 : 8));
        CHECK(S.dring.rank() == S.rank);
        CHECK(S.d_to_base(S.fPoly.truncated(S.rank + 1).shift_up(1)).is_zero());
        CHECK(S.transfer_sigma.coeff(0) == E0Elem(F.ctx.e0, 2 * 3));
        CHECK(S.base.mul(S.base.gen(), S.transfer_cp).is_zero());
    }
    // the universal law at height two with u_1 still has only exponents = 0 mod 2
    FGL U = build_ptypical(PrecisionCtx(3, 3, 2, 2, 40));
    SigmaPModel S = sigma_p_ring(U);
    CHECK(S.rank == 5);
}

TEST_CASE("finite algebra duality") {
    for (int k = 1; k <= 5; ++k) {
        auto A = FiniteAlgebra::truncated_poly(3, 1, k);
        auto soc = socle(A);
        REQUIRE(soc.size() == 1);
        for (int i = 0; i < k; ++i) CHECK(soc[0][i] == (i == k - 1 ? 1u : 0u));
        CHECK(frobenius_check(A).ok());
    }
    auto A2 = FiniteAlgebra::truncated_poly(3, 2, 3);
    auto soc = socle(A2);
    REQUIRE(soc.size() == 1);
    CHECK(A2.labels()[8] == "x1^2*x2^2");
    CHECK(soc[0][8] != 0);
    auto swap = variable_permutations(2, 3, {{1, 0}});
    auto inv = invariant_subalgebra(A2, swap);
    CHECK(inv.dim() == 6);
    CHECK(frobenius_check(inv).ok());
    CHECK(invariant_subalgebra(A2, {}).dim() == 9);

    // C_2 swapping the factors of F_3[x]/x^3 (x) F_3[x]/x^3, seen as basis swaps
    CHECK(invariant_subalgebra(A2, variable_permutations(2, 3, {{1, 0}})).dim() == 6);

    auto A3 = FiniteAlgebra::truncated_poly(3, 3, 3);
    auto gens = variable_permutations(3, 3, {{1, 0, 2}, {1, 2, 0}});
    CHECK_THROWS_AS(invariant_subalgebra(A3, gens), BadGroupOrder);
    auto inv3 = orbit_sum_subalgebra(A3, gens);
    CHECK(inv3.dim() == 10);
    // p divides |Sigma_3|: the orbit sum of x1 x2^2 x3^2 is killed by the
    // maximal ideal (sigma_1 times it is 3 x1^2 x2^2 x3^2), next to the top class
    auto soc3 = socle(inv3);
    CHECK(soc3.size() == 3);
    CHECK(!frobenius_check(inv3).ok());

    // a non-Gorenstein example: F_3[x,y]/(x,y)^2
    std::vector<std::vector<u64>> t(9, std::vector<u64>(3, 0));
    for (int j = 0; j < 3; ++j) { t[j][j] = 1; t[j * 3][j] = 1; }
    FiniteAlgebra B(3, {"1", "x", "y"}, t);
    CHECK(socle(B).size() == 2);
    CHECK(!frobenius_check(B).ok());
}
