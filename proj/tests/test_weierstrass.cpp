#include "doctest.h"

#include "morava/weierstrass.hpp"

using namespace morava;

namespace {

USeries poly(E0Ptr R, int len, std::vector<i64> c) {
    USeries f(R, len);
    for (size_t i = 0; i < c.size() && (int)i < len; ++i) f.set((int)i, E0Elem(R, c[i]));
    return f;
}

void check_factorization(const USeries& f, const WeierstrassFactorization& W) {
    int L = W.u_valid;
    CHECK(L > W.D);
    CHECK(poly_degree(W.g) == W.D);
    CHECK(W.g.coeff(W.D) == E0Elem(f.ring(), 1));
    for (int i = 0; i < W.D; ++i) CHECK(f.ring()->in_max_ideal(W.g.at(i)));
    CHECK(W.u.coeff(0).is_unit());
    CHECK(f.truncated(L) == W.u.truncated(L) * W.g.truncated(L));
}

}  // namespace

TEST_CASE("already prepared inputs") {
    auto R = E0Ring::make(PadicCtx(3, 4), 1, 1);
    USeries f = poly(R, 20, {3, 1});
    auto W = weierstrass_prepare(f, 1);
    CHECK(W.g == poly(R, 2, {3, 1}));
    CHECK(W.u.truncated(W.u_valid) == USeries::constant(R, W.u_valid, 1));
    // (1+x)^3 - 1
    USeries h = poly(R, 20, {0, 3, 3, 1});
    auto W3 = weierstrass_prepare(h, 3);
    CHECK(W3.g == poly(R, 4, {0, 3, 3, 1}));
    CHECK(W3.u.truncated(W3.u_valid) == USeries::constant(R, W3.u_valid, 1));
}

TEST_CASE("input validation") {
    auto R = E0Ring::make(PadicCtx(3, 4), 1, 1);
    CHECK_THROWS_AS(weierstrass_prepare(poly(R, 20, {3, 3, 1}), 1), NotWeierstrass);
    CHECK_THROWS_AS(weierstrass_degree(poly(R, 20, {3, 3})), NotWeierstrass);
    CHECK_THROWS_AS(weierstrass_prepare(poly(R, 10, {3, 3, 1}), 2), PrecisionExhausted);
    CHECK(weierstrass_degree(poly(R, 20, {3, 6, 1})) == 2);
}

TEST_CASE("a series with a nontrivial unit") {
    auto R = E0Ring::make(PadicCtx(5, 6), 3, 2);
    E0Elem u1 = E0Elem::u(R, 1), u2 = E0Elem::u(R, 2);
    USeries f(R, 60);
    f.set(0, u1 * E0Elem(R, 2) + E0Elem(R, 5));
    f.set(1, u2);
    f.set(2, E0Elem(R, 1) + u1);
    for (int i = 3; i < 60; ++i) f.set(i, E0Elem(R, i * i + 1) + u2 * E0Elem(R, i));
    auto A = weierstrass_prepare(f, 2);
    auto B = weierstrass_prepare_hensel(f, 2);
    check_factorization(f, A);
    check_factorization(f, B);
    CHECK(A.g == B.g);
    int L = std::min(A.u_valid, B.u_valid);
    CHECK(A.u.truncated(L) == B.u.truncated(L));
}

TEST_CASE("g_r of the height one Honda law") {
    PrecisionCtx ctx(3, 6, 1, 1, 80);
    FGL F = build_honda(ctx);
    auto g0 = pr_weierstrass(F, 0);
    CHECK(g0.D == 1);
    CHECK(g0.g == USeries::x(ctx.e0, 2));
    auto g1 = pr_weierstrass(F, 1), g2 = pr_weierstrass(F, 2);
    CHECK(g1.D == 3);
    CHECK(g2.D == 9);
    CHECK(poly_degree(g1.g) == 3);
    CHECK(poly_degree(g2.g) == 9);
    CHECK(g1.g.coeff_zero(0));
    CHECK(ctx.e0->pc().val(g1.g.scalar(1)) == 1);
    for (int i = 0; i < 3; ++i) CHECK(g1.g.scalar(i) % 3 == 0);
    CHECK(poly_rem(g2.g, g1.g).is_zero());
    check_factorization(F.mult_series(3, 80), g1);
    check_factorization(F.mult_series(9, 80), g2);
    auto h2 = weierstrass_prepare_hensel(F.mult_series(9, 80), 9);
    CHECK(h2.g == g2.g);
}

TEST_CASE("g_1 at height two divides g_2") {
    PrecisionCtx ctx(3, 3, 2, 1, 4 * 81 + 1);
    FGL F = build_honda(ctx);
    auto g1 = pr_weierstrass(F, 1), g2 = pr_weierstrass(F, 2);
    CHECK(g1.D == 9);
    CHECK(g2.D == 81);
    USeries q = poly_exact_div(g2.g, g1.g);
    CHECK(poly_degree(q) == 72);
    CHECK(ctx.e0->pc().val(q.scalar(0)) == 1);
}

TEST_CASE("polynomial division") {
    auto R = E0Ring::make(PadicCtx(3, 5), 1, 1);
    USeries a = poly(R, 6, {1, 2, 3, 4, 5, 6}), g = poly(R, 3, {3, 0, 1});
    auto [q, r] = poly_divmod(a, g);
    CHECK(poly_mul(q, g).truncated(6) + r.truncated(6) == a);
    CHECK(poly_degree(r) < 2);
    CHECK_THROWS_AS(poly_exact_div(a, g), ExactDivisionFailure);
    CHECK_THROWS_AS(poly_divmod(a, poly(R, 3, {1, 0, 2})), InvalidInput);
    // reduction of a truncated series needs L >= D K
    CHECK_THROWS_AS(reduce_series(USeries::x(R, 8), g), PrecisionExhausted);
    CHECK(reduce_series(USeries::x(R, 10), g) == poly(R, 2, {0, 1}));
}
