#include "doctest.h"

#include "morava/fgl.hpp"
#include "rational_oracle.hpp"

using namespace morava;

namespace {

bool matches(const MSeries& F, const oracle::Bi& want) {
    const auto& S = *F.shape();
    const auto& pc = F.ring()->pc();
    for (int i = 0; i < S.size(); ++i) {
        auto it = want.find({S.exps(i)[0], S.exps(i)[1]});
        u64 w = it == want.end() ? 0 : oracle::residue(it->second, pc);
        if (F.at(i)[0] != w) return false;
        for (int m = 1; m < F.ring()->M(); ++m)
            if (F.at(i)[m]) return false;
    }
    return true;
}

bool matches(const USeries& f, const oracle::Uni& want) {
    for (int i = 0; i < f.len(); ++i)
        if (f.scalar(i) != oracle::residue(want[i], f.ring()->pc())) return false;
    return true;
}

}  // namespace

TEST_CASE("axioms on the classical laws") {
    PrecisionCtx ctx(3, 5, 1, 1, 8);
    CHECK(check_axioms(FGL::additive(ctx)).ok());
    CHECK(check_axioms(FGL::multiplicative(ctx)).ok());
    auto S = MonoSet::total(2, 8);
    MSeries x = MSeries::var(ctx.e0, S, 0), y = MSeries::var(ctx.e0, S, 1);
    AxiomReport r = check_axioms(FGL::from_series(x + y + x * x * y, "bad"));
    CHECK(!r.commutativity);
    CHECK(!r.first_offense.empty());
}

TEST_CASE("inverse and m-series of the classical laws") {
    PrecisionCtx ctx(3, 5, 1, 1, 8);
    FGL Fa = FGL::additive(ctx), Fm = FGL::multiplicative(ctx);
    CHECK(formal_inverse(Fa) == USeries::x(ctx.e0, 8).scaled(-1));
    USeries im = formal_inverse(Fm);
    for (int k = 1; k < 8; ++k) CHECK(im.coeff(k) == E0Elem(ctx.e0, k % 2 ? -1 : 1));
    CHECK(compose(im, im) == USeries::x(ctx.e0, 8));
    CHECK(m_series(Fm, 1) == USeries::x(ctx.e0, 8));
    USeries two = m_series(Fm, 2);
    CHECK(two.coeff(1) == E0Elem(ctx.e0, 2));
    CHECK(two.coeff(2) == E0Elem(ctx.e0, 1));
    for (int k = 3; k < 8; ++k) CHECK(two.coeff_zero(k));
    CHECK(padic_series(Fm, PadicInt(PadicCtx(3, 9), -1)) == formal_inverse(Fm));
    CHECK(height(Fm).n == 1);
    CHECK(height(Fa).infinite);
}

TEST_CASE("p-typical law of height one against the rational logarithm") {
    PrecisionCtx ctx(3, 8, 1, 1, 12);
    FGL F = build_ptypical(ctx);
    auto l = oracle::log_series(3, {1, 1, 1}, 12);
    CHECK(matches(F.F, oracle::formal_sum(l, 12)));
    // low-degree shape x + y - x^2 y - x y^2
    CHECK(F.F.coeff({2, 1}) == E0Elem(ctx.e0, -1));
    CHECK(F.F.coeff({1, 2}) == E0Elem(ctx.e0, -1));
    CHECK(F.F.coeff({2, 0}).is_zero());
    CHECK(check_axioms(F).ok());
    CHECK(height(F).n == 1);
    for (i64 m : {2, 3, -2, 5})
        CHECK(matches(m_series(F, m), oracle::mult(l, m)));
}

TEST_CASE("Honda law of height two against the rational logarithm") {
    PrecisionCtx ctx(3, 6, 2, 1, 20);
    FGL F = build_honda(ctx);
    auto l = oracle::log_series(3, {1, 0, 3}, 20);  // x + x^9/3
    CHECK(matches(F.F, oracle::formal_sum(l, 20)));
    CHECK(height(F).n == 2);
    USeries ps = m_series(F, 3);
    CHECK(ps.coeff_zero(0));
    for (int j = 0; j < 20; ++j) CHECK(ps.scalar(j) % 3 == (j == 9 ? 1u : 0u));
}

TEST_CASE("Honda law of height one, [3](x) at Dx=4") {
    PrecisionCtx ctx(3, 6, 1, 1, 4);
    FGL F = build_honda(ctx);
    auto l = oracle::log_series(3, {1, 1}, 4);
    CHECK(matches(m_series(F, 3), oracle::mult(l, 3)));
}

TEST_CASE("universal p-typical law at height two") {
    PrecisionCtx ctx(3, 4, 2, 3, 30);
    FGL F = build_ptypical(ctx);
    CHECK(check_axioms(F).ok());
    CHECK(height(F).n == 2);
    USeries ps = m_series(F, 3);
    std::string why;
    CHECK(pseries_congruence(ps, 1, 2, &why));
    CHECK(pseries_congruence(ps, 2, 2, &why));
    // x^3 coefficient is u_1 mod 3
    E0Elem c3 = ps.coeff(3);
    CHECK(c3.coeffs()[0] % 3 == 0);
    CHECK(c3.coeffs()[ctx.e0->u_index(1)] % 3 == 1);
}

TEST_CASE("m-series identities") {
    PrecisionCtx ctx(3, 4, 2, 2, 12);
    FGL F = build_ptypical(ctx);
    std::map<i64, USeries> ms;
    for (i64 m = -36; m <= 36; ++m) ms[m] = m_series(F, m);
    for (i64 a = -6; a <= 6; ++a)
        for (i64 b = -6; b <= 6; ++b) {
            CHECK(formal_add(F, ms[a], ms[b]) == ms[a + b]);
            CHECK(compose(ms[a], ms[b]) == ms[a * b]);
        }
    for (i64 m = -6; m <= 6; ++m) CHECK(ms[m].coeff(1) == E0Elem(ctx.e0, m));
}

TEST_CASE("logarithm route agrees with binary powering") {
    PrecisionCtx ctx(3, 4, 2, 3, 20);
    FGL F = build_ptypical(ctx);
    for (i64 m : {-4, -1, 2, 3, 7, 9})
        CHECK(F.mult_series(m, 20) == m_series(F, m));
    PrecisionCtx h(3, 5, 2, 1, 40);
    FGL H = build_honda(h);
    CHECK(H.mult_series(3, 40) == m_series(H, 3));
}

TEST_CASE("Teichmuller series") {
    PrecisionCtx ctx(3, 4, 1, 1, 12);
    FGL F = build_ptypical(ctx);
    int Nw = ctx.N() + 10;
    PadicCtx wide(3, Nw);
    PadicInt w2 = teichmuller(2, wide);
    USeries s = padic_series(F, w2);
    USeries lin = USeries::x(ctx.e0, 12).scaled(E0Elem(ctx.e0, (i64)(w2.residue() % ctx.e0->pc().mod)));
    CHECK(s == lin);
    CHECK_THROWS_AS(padic_series(F, teichmuller(2, PadicCtx(3, 2))), PrecisionExhausted);
    CHECK(padic_series(F, PadicInt(wide, 5)) == m_series(F, 5));

    // <p>([w(k)](x)) = <p>(x)
    USeries dp = divided_m_series(F, 3);
    for (i64 k = 1; k < 3; ++k) {
        USeries wk = padic_series(F, teichmuller(k, wide));
        CHECK(compose(dp, wk.truncated(dp.len())) == dp);
    }
}

TEST_CASE("log-linearity on sampled multipliers") {
    PrecisionCtx ctx(5, 4, 1, 1, 30);
    FGL F = build_honda(ctx);
    auto l = oracle::log_series(5, {1, 1, 1}, 30);
    for (i64 a : {2, 7, -3, 11}) CHECK(matches(F.mult_series(a, 30), oracle::mult(l, a)));
    // a p-adic multiplier: the route through digits and the route through the log agree
    PadicCtx wide(5, 12);
    PadicInt w = teichmuller(3, wide);
    CHECK(padic_series(F, w) == log_mult_series(ctx, *F.log, w, 30));
}

TEST_CASE("x -F y is a unit multiple of x - y") {
    PrecisionCtx ctx(3, 4, 2, 2, 14);
    FGL F = build_ptypical(ctx);
    const auto& R = ctx.e0;
    auto S = F.F.shape();
    USeries iota = formal_inverse(F);
    MSeries x = MSeries::var(R, S, 0), y = MSeries::var(R, S, 1);
    MSeries iy = embed(iota, R, S, 1);
    MSeries diff = substitute(F.F, {x, iy});
    // x = z + y
    MSeries shifted = substitute(diff, {x + y, y});
    for (int i = 0; i < S->size(); ++i)
        if (S->exps(i)[0] == 0) CHECK(shifted.coeff_zero(i));
    CHECK(shifted.coeff({1, 0}).is_unit());
}

TEST_CASE("height detection") {
    for (int n = 1; n <= 3; ++n) {
        PrecisionCtx ctx(3, 3, n, 1, n == 3 ? 30 : 12);
        CHECK(height(build_honda(ctx)).n == n);
    }
}
