#include "doctest.h"

#include <random>

#include "morava/glgroups.hpp"

using namespace morava;

namespace {

// |GL_d(F_l)| for prime l by counting matrices with nonzero determinant mod l.
u64 count_invertible_prime(int d, u64 l) {
    u64 total = 1;
    for (int i = 0; i < d * d; ++i) total *= l;
    u64 count = 0;
    for (u64 code = 0; code < total; ++code) {
        std::vector<std::vector<i64>> m(d, std::vector<i64>(d));
        u64 c = code;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) { m[i][j] = (i64)(c % l); c /= l; }
        // fraction-free elimination mod l
        i64 det = 1;
        for (int col = 0; col < d && det; ++col) {
            int piv = -1;
            for (int r = col; r < d; ++r)
                if (m[r][col] % (i64)l) { piv = r; break; }
            if (piv < 0) { det = 0; break; }
            std::swap(m[col], m[piv]);
            for (int r = col + 1; r < d; ++r) {
                i64 a = m[r][col], b = m[col][col];
                for (int j = 0; j < d; ++j) m[r][j] = ((m[r][j] * b - m[col][j] * a) % (i64)l + (i64)l) % (i64)l;
            }
        }
        if (det) ++count;
    }
    return count;
}

int vp_u64(u64 x, u64 p) {
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

}  // namespace

TEST_CASE("finite fields") {
    CHECK(least_irreducible(2, 2) == std::vector<u32>{1, 1, 1});
    CHECK(least_irreducible(2, 3) == std::vector<u32>{1, 1, 0, 1});
    CHECK(least_irreducible(3, 2) == std::vector<u32>{1, 0, 1});
    CHECK(least_irreducible(2, 4) == std::vector<u32>{1, 1, 0, 0, 1});
    CHECK(least_irreducible(3, 3) == std::vector<u32>{1, 2, 0, 1});
    CHECK(least_irreducible(2, 6) == std::vector<u32>{1, 1, 0, 0, 0, 0, 1});

    for (u64 q : {2u, 4u, 5u, 8u, 9u, 25u, 27u, 49u, 64u}) {
        auto F = Fq::make(q);
        CHECK(F->order(F->primitive()) == q - 1);
        std::mt19937_64 rng(q);
        for (int t = 0; t < 200; ++t) {
            u32 a = (u32)(rng() % q), b = (u32)(rng() % q), c = (u32)(rng() % q);
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->sub(F->add(a, b), b) == a);
            CHECK(F->pow(a, q) == a);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
        }
    }
    CHECK_THROWS_AS(Fq::make(6), InvalidInput);
    CHECK_THROWS_AS(Fq::make(1), InvalidInput);
    CHECK_THROWS_AS(Fq::make(1ull << 23), TooLarge);
}

TEST_CASE("group orders") {
    CHECK(gl_order(3, 4) == 181440);
    CHECK(vp_gl_order(3, 4, 3) == 4);
    CHECK(gl_order(1, 7) == 6);
    CHECK(vp_gl_order(2, 5, 3) == 1);
    CHECK(gl_order(2, 2) == count_invertible_prime(2, 2));
    CHECK(gl_order(2, 3) == count_invertible_prime(2, 3));
    CHECK(gl_order(2, 5) == count_invertible_prime(2, 5));
    CHECK(gl_order(3, 2) == count_invertible_prime(3, 2));

    // GL_2(F_4) by enumerating 4^4 matrices
    auto F4 = Fq::make(4);
    u64 inv = 0;
    for (u64 code = 0; code < 256; ++code) {
        GLMat m(F4, 2);
        m.e = {(u32)(code & 3), (u32)((code >> 2) & 3), (u32)((code >> 4) & 3), (u32)(code >> 6)};
        if (m.invertible()) ++inv;
    }
    CHECK(gl_order(2, 4) == inv);

    // formula against the factored order over a grid
    for (u64 p : {3u, 5u, 7u})
        for (u64 q : {2u, 4u, 7u, 8u, 11u, 13u, 16u, 25u, 31u})
            for (int d = 1; d <= 12; ++d) {
                if (q % p == 0) continue;
                CHECK(vp_gl_order(d, q, p) == vp_big(gl_order(d, q), p));
            }
    CHECK(vp_u64(63 * 60 * 48, 3) == 4);
    CHECK_THROWS_AS(vp_gl_order(2, 6, 3), InvalidInput);
    CHECK_THROWS_AS(vp_gl_order(2, 9, 3), InvalidInput);
    CHECK_THROWS_AS(vp_gl_order(2, 5, 2), InvalidInput);
}

TEST_CASE("Sylow descriptors") {
    auto s9 = sylow_sigma_descriptor(9, 3);
    CHECK(s9.to_string() == "Wreath(C3,C3)");
    CHECK(s9.log_order() == 4);
    CHECK(sylow_sigma_descriptor(2, 3).to_string() == "1");
    auto s12 = sylow_sigma_descriptor(12, 3);
    CHECK(s12.to_string() == "C3 x Wreath(C3,C3)");
    CHECK(s12.log_order() == 5);
    CHECK(s12.degree == 12);
    for (int d = 1; d <= 60; ++d)
        for (u64 p : {2u, 3u, 5u}) CHECK(sylow_sigma_descriptor(d, p).log_order() == vp_factorial(d, p));

    auto g = sylow_gl_descriptor(3, 4, 3);
    CHECK(g.to_string() == "Wreath(C3,C3)");
    CHECK(g.log_order() == 4);
    CHECK(sylow_gl_descriptor(2, 4, 3).to_string() == "C3^2");
    CHECK(sylow_gl_descriptor(2, 4, 3).log_order() == 2);
    CHECK(sylow_gl_descriptor(2, 2, 3).to_string() == "C3");
    CHECK(sylow_gl_descriptor(4, 4, 3).to_string() == "Wreath(C3,C3) x C3");
    CHECK(sylow_gl_descriptor(3, 19, 3).to_string() == "Wreath(C3,C9)");
    CHECK(sylow_gl_descriptor(4, 2, 5).to_string() == "C5");
    CHECK_THROWS_AS(sylow_gl_descriptor(3, 2, 3), Unsupported);
    for (int d = 1; d <= 20; ++d)
        for (u64 q : {4u, 7u, 13u, 16u, 19u, 25u})
            CHECK(sylow_gl_descriptor(d, q, 3).log_order() == vp_gl_order(d, q, 3));

    // C_3 wr C_3 inside the symmetric group on 9 points
    CHECK(permutation_group_order(wreath_cp_cp_generators(3)) == 81);
    CHECK(permutation_group_order(wreath_cp_cp_generators(2)) == 8);
}

TEST_CASE("the generator a") {
    auto G = build_generator_a(4, 3);
    CHECK(G.order == 9);
    CHECK(G.a.pow(9) == GLMat::identity(G.F, 3));
    CHECK(G.a.pow(3) == GLMat::scalar(G.F, 3, G.a_v));
    CHECK(G.F->order(G.a_v) == 3);
    CHECK(G.a.invertible());
    CHECK(G.a.det() == G.a_v);   // the cycle is even for p odd

    auto G7 = build_generator_a(19, 3);   // v = 2
    CHECK(G7.order == 27);
    CHECK(build_generator_a(11, 5).order == 25);
    CHECK_THROWS_AS(build_generator_a(2, 3), BadParams);
    CHECK_THROWS_AS(build_generator_a(6, 5), BadParams);
}

TEST_CASE("normalizer scan") {
    auto S = normalizer_exponents(4, 3);
    CHECK(S.matrices == 262144);
    CHECK(S.invertible == 181440);
    CHECK(S.exponents == std::set<u64>{1, 4, 7});
    // centralizer F_64^x extended by the Galois group of F_64 / F_4
    CHECK(S.normalizing == 63 * 3);
    CHECK(S.all_one_mod_pv);
    CHECK_THROWS_AS(normalizer_exponents(7, 3), TooLarge);
}

TEST_CASE("diagonalizing gamma") {
    auto D = diagonalize_gamma(4, 3);
    auto F = D.g.F;
    u32 w = D.eigenvalues[1];
    CHECK(F->order(w) == 3);
    CHECK(D.eigenvalues == std::vector<u32>{1, w, F->mul(w, w)});
    CHECK(D.conj == GLMat::diag(F, {1, w, F->mul(w, w)}));
    CHECK(D.distinct);
    // all-ones column is fixed
    GLMat ones(F, 3);
    for (int i = 0; i < 3; ++i) ones.at(i, 0) = 1;
    CHECK(D.gamma * ones == ones);
    CHECK(diagonalize_gamma(11, 5).distinct);
    CHECK(diagonalize_gamma(19, 3).diagonal);
}

TEST_CASE("F_{q^p} in GL_p(F_q)") {
    MuEmbedding M(4, 3);
    const Fq& B = *M.big();
    CHECK(B.q() == 64);
    CHECK(M.mu(1) == GLMat::identity(M.small(), 3));
    auto R = verify_mu(M, 7, 100);
    CHECK(R.ok());
    CHECK(R.sylow_order == 9);

    // norm as the product of the Galois conjugates
    for (u32 a = 1; a < 64; ++a) {
        u32 n = B.mul(a, B.mul(B.pow(a, 4), B.pow(a, 16)));
        CHECK(M.embed(M.mu(a).det()) == n);
    }
    // embedding is a field map
    for (u32 x = 0; x < 4; ++x)
        for (u32 y = 0; y < 4; ++y) {
            CHECK(M.embed(M.small()->mul(x, y)) == B.mul(M.embed(x), M.embed(y)));
            CHECK(M.embed(M.small()->add(x, y)) == B.add(M.embed(x), M.embed(y)));
        }

    auto R5 = verify_mu(MuEmbedding(11, 5), 3, 20);
    CHECK(R5.sylow_order == 25);
    CHECK_THROWS_AS(MuEmbedding(2, 3), BadParams);
    CHECK_THROWS_AS(MuEmbedding(31, 5), TooLarge);
}

TEST_CASE("order 9 elements of GL_3(F_4) are conjugate into A") {
    auto C = conjugacy_exhaustive(4, 3);
    // two cubic characteristic polynomials over F_4 with primitive 9th roots, classes of size |G| / 63
    CHECK(C.order_elements == 2 * 181440 / 63);
    CHECK(C.all_conjugate());
}
