#include <doctest.h>

#include <chrono>

#include "morava/glp.hpp"
#include "rational_oracle.hpp"

using namespace morava;

namespace {

const GLpChain& chain314() {
    static GLpChain C(GLpParams::make(3, 1, 4));
    return C;
}

u64 binom(u64 n, u64 k) {
    u64 r = 1;
    for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("parameters") {
    auto P = GLpParams::make(3, 1, 4);
    CHECK(P.v == 1);
    CHECK(P.N == 2);
    CHECK(P.pnv == 3);
    CHECK(P.Nw == P.Nout + 3 + 2);
    auto P2 = GLpParams::make(3, 2, 4);
    CHECK(P2.N == 24);
    CHECK(P2.pnv == 9);
    auto P3 = GLpParams::make(3, 1, 19);
    CHECK(P3.v == 2);
    CHECK(P3.N == 6);
    CHECK_THROWS_AS(GLpParams::make(3, 1, 5), BadParams);   // v = 0
    CHECK_THROWS_AS(GLpParams::make(3, 1, 6), BadParams);   // not a prime power
    CHECK_THROWS_AS(GLpParams::make(3, 1, 9), BadParams);   // not coprime
    CHECK_THROWS_AS(GLpParams::make(4, 1, 5), BadParams);
}

TEST_CASE("D at (3,1,1,4)") {
    const auto& C = chain314();
    const auto& D = C.D();
    CHECK(poly_degree(D.g) == 6);
    CHECK(D.ring.rank() == 6);
    CHECK(D.N == 2);
    CHECK(poly_degree(D.g_v) == 3);
    CHECK(poly_degree(D.g_v1) == 9);
    CHECK(poly_mul(D.g_v, D.g) == D.g_v1);
    CHECK(D.g.ring()->pc().val(D.g.at(0)[0]) == 1);
}

TEST_CASE("y against an exact rational computation") {
    // l(x) = sum x^{3^k}/3^k; y = prod_k [1+3k](x); oracle values reduced into D
    const auto& C = chain314();
    const auto& D = C.D();
    const int L = C.params().Dx;
    auto l = oracle::log_series(3, {1, 1, 1, 1}, L);
    const auto& R = D.ring.ring();
    USeries y = D.ring.one();
    for (int k = 0; k < 3; ++k) {
        auto m = oracle::mult(l, 1 + 3 * k);
        USeries s(R, L);
        for (int i = 0; i < L; ++i) s.at(i)[0] = oracle::residue(m[i], R->pc());
        y = D.ring.mul(y, D.ring.reduce(s));
    }
    CHECK(y == D.y);
}

TEST_CASE("D^Gamma at (3,1,1,4)") {
    const auto& C = chain314();
    const auto& G = C.DG();
    CHECK(poly_degree(G.h) == 2);
    CHECK(G.h.at(2)[0] == 1);
    CHECK(G.h.at(0)[0] % 3 == 0);
    CHECK(G.h.at(1)[0] % 3 == 0);
    CHECK(G.h.ring()->pc().val(G.h.at(0)[0]) == 1);
    CHECK(G.lift(C.D(), G.h).is_zero());
    // alpha(sigma_p) = y
    USeries y = C.alpha_sigma(3);
    CHECK(y.at(0)[0] == 0);
    CHECK(y.at(1)[0] == 1);
    // alpha(sigma_1) = sum_k [q^k](x) = (1 + q + q^2) x mod x^2, a p-adic unit times p
    USeries s1 = C.fgl().mult_series(1, 4) + C.fgl().mult_series(4, 4) + C.fgl().mult_series(16, 4);
    CHECK(s1.at(0)[0] == 0);
    CHECK(s1.at(1)[0] == s1.ring()->pc().from_int(21));
    CHECK(s1.ring()->pc().val(s1.at(1)[0]) == 1);
    const int L = C.params().Dx;
    USeries full = C.fgl().mult_series(1, L) + C.fgl().mult_series(4, L) + C.fgl().mult_series(16, L);
    CHECK(C.D().ring.reduce(full) == C.alpha_sigma_in_D(1));
    for (int i = 1; i <= 3; ++i) CHECK_NOTHROW(C.alpha_sigma(i));
    // x itself is not Gamma-invariant
    CHECK_THROWS_AS(G.to_y(C.D(), C.D().ring.gen()), NotInGammaInvariants);
}

TEST_CASE("t at (3,1,1,4)") {
    const auto& C = chain314();
    PairElem t = C.build_t();
    CHECK(C.torus().tensor().is_zero(t.left));
    CHECK(t.right == C.alpha_t());
    // mod 3 the right component vanishes (x^9 = 0 in F_3[x]/x^6) but not integrally
    bool all_div = true, any_nonzero = false;
    for (int k = 0; k < t.right.len(); ++k) {
        all_div = all_div && t.right.at(k)[0] % 3 == 0;
        any_nonzero = any_nonzero || t.right.at(k)[0];
    }
    CHECK(all_div);
    CHECK(any_nonzero);
    // alpha(t) divides p^p in D
    const auto& D = C.D();
    USeries at = D.ring.pow(D.pv, 3);
    ZpMat M(D.g.ring()->pc(), D.Np, D.Np);
    auto xp = D.ring.power_table(D.Np);
    for (int i = 0; i < D.Np; ++i) {
        auto c = D.ring.mul(at, xp[i]);
        for (int k = 0; k < D.Np; ++k) M.at(k, i) = c.at(k)[0];
    }
    std::vector<u64> b(D.Np, 0);
    b[0] = 27;
    CHECK(ZpSolver(M).solve(b).has_value());
}

TEST_CASE("psi images") {
    const auto& C = chain314();
    CHECK(C.psi({"d", {}}, PsiTarget::T).is_zero());
    CHECK(C.psi({"t", {}}, PsiTarget::T).is_zero());
    CHECK(C.psi({"t", {}}, PsiTarget::SigmaDelta).is_zero());
    auto cp = C.psi({"c_p", {}}, PsiTarget::T);
    CHECK(cp.coeffs[C.torus().tensor().index({1, 1, 1})] == 1);
    int nz = 0;
    for (u64 c : cp.coeffs) nz += c != 0;
    CHECK(nz == 1);
    // b_alpha on the torus: orbit sum with multiplicity |stabilizer|
    auto b = C.psi(parse_psi_generator("b_0,0,1"), PsiTarget::T);
    CHECK(b.coeffs[C.torus().tensor().index({0, 0, 1})] == 2);
    CHECK(b.coeffs[C.torus().tensor().index({1, 0, 0})] == 2);
    CHECK_THROWS_AS(parse_psi_generator("z"), UnknownGenerator);
    CHECK_THROWS_AS(C.psi(parse_psi_generator("b_1,1,1"), PsiTarget::T), InvalidInput);
    // psi_3(d) = -[p^v](x)^{p-1} and psi_3(t) = [p^v](x)^p in E0[x]/g_{v+1}
    auto d3 = C.psi({"d", {}}, PsiTarget::A);
    auto t3 = C.psi({"t", {}}, PsiTarget::A);
    QuotientRing A("x", C.D().g_v1);
    USeries pv = A.reduce(C.fgl().mult_series(3, C.params().Dx));
    USeries want = A.pow(pv, 2).scaled(-1);
    CHECK(std::equal(want.raw().begin(), want.raw().end(), d3.coeffs.begin()));
    USeries want_t = A.pow(pv, 3);
    CHECK(std::equal(want_t.raw().begin(), want_t.raw().end(), t3.coeffs.begin()));
    // psi_2(d) = d: -w^2 in E0[w]/g_1
    auto d2 = C.psi({"d", {}}, PsiTarget::SigmaDelta);
    CHECK(d2.ranks == std::vector<int>{3, 3});
    USeries dw = C.sigma().dElem;
    for (int a = 0; a < 3; ++a) CHECK(d2.coeffs[(size_t)a * 3] == dw.at(a)[0]);
    // psi_2(b_alpha) = (p-1)! f(d) x^{sum alpha}
    auto b2 = C.psi(parse_psi_generator("b_0,1,2"), PsiTarget::SigmaDelta);
    CHECK(!b2.is_zero());
    // psi_2(c_p) restricts to x^p mod (w, p): product of x +_F [k](w)
    auto c2 = C.psi({"c_p", {}}, PsiTarget::SigmaDelta);
    CHECK(c2.coeffs.size() == 9);
}

TEST_CASE("h(d, y) at (3,1,1,4)") {
    const auto& C = chain314();
    H2Series H = C.build_h2();
    CHECK(H.J == 2 * C.params().Nw);
    CHECK(H.dcount == 1);
    // h(0, s) = s mod 3
    CHECK(H.coeff[1][0] % 3 == 1);
    for (int j = 0; j < H.J; ++j)
        if (j != 1) CHECK(H.coeff[j][0] % 3 == 0);
    CHECK(H.x_valid > 0);
    CHECK(H.max_division_steps <= 2 * C.params().Nw + 1);
    CHECK_THROWS_AS(GLpChain(GLpParams::make(3, 2, 4)).build_h2(), Unsupported);
}

TEST_CASE("t + d h(d, c_p) = 0") {
    auto rep = chain314().verify_t_relation();
    CHECK(rep.torus);
    CHECK(rep.sigma_delta);
    CHECK(rep.d_gamma);
}

TEST_CASE("structure constants at (3,1,1,4)") {
    const auto& C = chain314();
    GLPAlgebra A = C.algebra();
    CHECK(A.rank == 12);
    CHECK(A.rank_T == (int)binom(5, 3));
    CHECK(A.Mt_independent);
    CHECK(A.det_Mt_val == C.params().predicted_det_val());
    CHECK(A.beta_surjective);
    CHECK(A.alpha_hits_y);
    CHECK(A.ker_product_zero);
    CHECK(A.ker_products_checked > 0);
    CHECK(A.rational_preimages == A.rational_trials);
    // unit, commutativity, associativity of the table
    for (int i = 0; i < A.rank; ++i) {
        CHECK(A.mul(A.unit(0), A.unit(i)) == A.unit(i));
        for (int j = 0; j < A.rank; ++j) CHECK(A.mul(A.unit(i), A.unit(j)) == A.mul(A.unit(j), A.unit(i)));
    }
    for (int i = 0; i < A.rank; ++i)
        for (int j = 0; j < A.rank; ++j)
            for (int k = 0; k < A.rank; k += 3)
                CHECK(A.mul(A.mul(A.unit(i), A.unit(j)), A.unit(k)) == A.mul(A.unit(i), A.mul(A.unit(j), A.unit(k))));
    KAlgebra K = k_reduce(A);
    CHECK(K.report.first_vanishing == 5);
    CHECK(K.report.top_nonzero);
    CHECK(K.report.next_zero);
    CHECK(K.report.ideal_dim == 2);
    CHECK(K.report.ideal_cyclic);
    CHECK(K.report.t_equals_power);
}

TEST_CASE("CRT witness at (3,1,1,4)") {
    CRTWitness W = chain314().crt_witness();
    CHECK(W.identity_ok);
    CHECK(W.canonical_ok);
    CHECK(W.slack == 1);
    CHECK(W.value_at_zero == 3);
}

TEST_CASE("stretch run (3,2,1,4)") {
    GLpChain C(GLpParams::make(3, 2, 4));
    CHECK(poly_degree(C.D().g) == 72);
    CHECK(C.params().N == 24);
    CHECK(poly_degree(C.DG().h) == 24);
    PairElem t = C.build_t();
    CHECK_FALSE(t.symmetrized);
    GLPAlgebra A = C.algebra();
    CHECK(A.rank == 189);
    CHECK(A.rank_T == 165);
    CHECK(A.det_Mt_val == 9);
    CHECK(A.ker_product_zero);
    KAlgebra K = k_reduce(A);
    CHECK(K.report.expected_index == 32);
    CHECK(K.report.first_vanishing == 33);
    CHECK(K.report.ok());
    CHECK(K.report.ideal_dim == 24);
}

TEST_CASE("p = 5, q = 11") {
    GLpChain C(GLpParams::make(5, 1, 11));
    CHECK(C.params().N == 4);
    GLPAlgebra A = C.algebra();
    CHECK(A.rank == 126 + 4);  // C(9,5) + N
    KAlgebra K = k_reduce(A);
    CHECK(K.report.first_vanishing == 4 + 5);
    CHECK(K.report.ok());
}
