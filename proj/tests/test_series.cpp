#include "doctest.h"

#include <random>

#include "morava/series.hpp"
#include "morava/zpmatrix.hpp"

using namespace morava;

namespace {

E0Ptr ring3(int N = 6) { return E0Ring::make(PadicCtx(3, N), 1, 1); }

USeries poly(E0Ptr R, int len, std::vector<i64> c) {
    USeries f(R, len);
    for (size_t i = 0; i < c.size() && (int)i < len; ++i) f.set((int)i, E0Elem(R, c[i]));
    return f;
}

USeries random_series(E0Ptr R, int len, std::mt19937_64& rng, bool unit_linear) {
    USeries f(R, len);
    for (int i = 1; i < len; ++i) f.set(i, E0Elem(R, (i64)(rng() % 1000)));
    if (unit_linear) f.set(1, E0Elem(R, (i64)(1 + 3 * (rng() % 100))));
    return f;
}

i64 catalan(int n) {
    i64 c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace

TEST_CASE("E0 ring with u variables") {
    auto R = E0Ring::make(PadicCtx(3, 4), 3, 3);
    CHECK(R->M() == 6);  // 1, u1, u2, u1^2, u1u2, u2^2
    E0Elem u1 = E0Elem::u(R, 1), u2 = E0Elem::u(R, 2);
    CHECK((u1 * u1 * u2).is_zero());
    CHECK(!(u1 * u2).is_zero());
    E0Elem a = E0Elem(R, 1) + u1;
    CHECK((a * a.inv()) == E0Elem(R, 1));
    CHECK(E0Elem::u(R, 3) == E0Elem(R, 1));
    CHECK_THROWS_AS(u1.inv(), NonUnit);
}

TEST_CASE("truncated arithmetic") {
    auto R = ring3();
    USeries x = USeries::x(R, 2);
    CHECK((x * x).is_zero());
    USeries f = poly(R, 8, {1, 2, 3, 4});
    CHECK(f * USeries::constant(R, 8, 1) == f);
    USeries g = poly(R, 8, {1, 1});
    USeries h = poly(R, 8, {1, -1, 1, -1, 1, -1, 1, -1});
    CHECK(g * h == USeries::constant(R, 8, 1));
}

TEST_CASE("compose and reversion") {
    auto R = ring3();
    USeries x = USeries::x(R, 8);
    USeries f = poly(R, 8, {0, 5, 2, 1});
    CHECK(compose(f, x) == f);
    CHECK(compose(poly(R, 8, {0, 0, 1}), poly(R, 8, {0, 1, 1})) == poly(R, 8, {0, 0, 1, 2, 1}));
    CHECK_THROWS_AS(compose(f, poly(R, 8, {1, 1})), NonzeroConstant);

    CHECK(reversion(x) == x);
    std::vector<i64> want{0};
    for (int k = 1; k < 8; ++k) want.push_back((k % 2 ? 1 : -1) * catalan(k - 1));
    CHECK(reversion(poly(R, 8, {0, 1, 1})) == poly(R, 8, want));
    USeries r2 = reversion(poly(R, 8, {0, 2}));
    CHECK(r2.scalar(1) == R->pc().inv(2));
    CHECK_THROWS_AS(reversion(poly(R, 8, {0, 3, 1})), NonUnitLinearTerm);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        USeries s = random_series(R, 12, rng, true);
        USeries r = reversion(s);
        CHECK(compose(s, r) == USeries::x(R, 12));
        CHECK(compose(r, s) == USeries::x(R, 12));
        CHECK(reversion(r) == s);
    }
}

TEST_CASE("unit inversion") {
    auto R = ring3();
    CHECK(unit_invert(USeries::constant(R, 6, 1)) == USeries::constant(R, 6, 1));
    CHECK(unit_invert(poly(R, 6, {1, -1})) == poly(R, 6, {1, 1, 1, 1, 1, 1}));
    CHECK_THROWS_AS(unit_invert(poly(R, 6, {3, 1})), NonUnit);

    auto S = MonoSet::total(2, 7);
    MSeries x = MSeries::var(R, S, 0), y = MSeries::var(R, S, 1);
    MSeries g = MSeries::constant(R, S, 1) + y * (x * x + x * y.scaled(E0Elem(R, 5)) + y);
    CHECK(g * g.unit_invert() == MSeries::constant(R, S, 1));
}

TEST_CASE("monomial sets") {
    auto T = MonoSet::total(3, 4);
    CHECK(T->size() == 20);
    CHECK(T->prefix(2) == 4);
    CHECK(T->index({1, 1, 1}) >= 0);
    CHECK(T->index({2, 2, 0}) == -1);
    auto B = MonoSet::box({2, 3});
    CHECK(B->size() == 6);
    CHECK(B->index({1, 2}) >= 0);
    CHECK(B->index({2, 0}) == -1);
}

TEST_CASE("elementary symmetric functions") {
    auto R = ring3();
    auto S2 = MonoSet::total(2, 5);
    MSeries x1 = MSeries::var(R, S2, 0), x2 = MSeries::var(R, S2, 1);
    CHECK(elementary_symmetric(R, S2, 1) == x1 + x2);
    auto S3 = MonoSet::total(3, 5);
    CHECK(elementary_symmetric(R, S3, 3) ==
          MSeries::var(R, S3, 0) * MSeries::var(R, S3, 1) * MSeries::var(R, S3, 2));
    CHECK_THROWS_AS(elementary_symmetric(R, S3, 4), IndexOutOfRange);
}

TEST_CASE("Whitney split of elementary symmetric functions") {
    auto R = ring3();
    for (int d1 = 1; d1 <= 3; ++d1)
        for (int d2 = 1; d1 + d2 <= 4; ++d2) {
            int d = d1 + d2;
            auto S = MonoSet::total(d, d + 1);
            // sigma_{1,i} lives on the first d1 variables, sigma_{2,j} on the rest
            auto part = [&](int lo, int hi, int k) {
                MSeries r(R, S);
                for (u64 mask = 0; mask < ((u64)1 << d); ++mask) {
                    if (__builtin_popcountll(mask) != k) continue;
                    bool ok = true;
                    for (int i = 0; i < d; ++i)
                        if (((mask >> i) & 1) && (i < lo || i >= hi)) ok = false;
                    if (!ok) continue;
                    std::vector<int> e(d);
                    for (int i = 0; i < d; ++i) e[i] = (mask >> i) & 1;
                    r.add_term(e, E0Elem(R, 1));
                }
                return r;
            };
            for (int k = 0; k <= d; ++k) {
                MSeries rhs(R, S);
                for (int i = 0; i <= std::min(k, d1); ++i) {
                    int j = k - i;
                    if (j > d2) continue;
                    rhs = rhs + part(0, d1, i) * part(d1, d, j);
                }
                CHECK(elementary_symmetric(R, S, k) == rhs);
            }
        }
}

TEST_CASE("symmetrize to elementary") {
    auto R = ring3();
    auto S = MonoSet::total(2, 6);
    MSeries x1 = MSeries::var(R, S, 0), x2 = MSeries::var(R, S, 1);
    SigmaPoly a = symmetrize_to_elementary(x1 + x2);
    CHECK(a.terms.size() == 1);
    CHECK(a.terms.at({1, 0}) == E0Elem(R, 1));
    SigmaPoly b = symmetrize_to_elementary(x1 * x1 + x2 * x2);
    CHECK(b.terms.size() == 2);
    CHECK(b.terms.at({2, 0}) == E0Elem(R, 1));
    CHECK(b.terms.at({0, 1}) == E0Elem(R, -2));
    CHECK_THROWS_AS(symmetrize_to_elementary(x1 + x2 * x2), NotSymmetric);

    auto S3 = MonoSet::total(3, 8);
    MSeries s3 = elementary_symmetric(R, S3, 3);
    SigmaPoly c = symmetrize_to_elementary(s3 * s3);
    CHECK(c.terms.size() == 1);
    CHECK(c.terms.at({0, 0, 2}) == E0Elem(R, 1));
}

TEST_CASE("symmetrize is a section of expansion") {
    auto R = ring3(8);
    std::mt19937_64 rng(5);
    for (int d = 2; d <= 3; ++d) {
        auto S = MonoSet::total(d, 9);
        for (int t = 0; t < 5; ++t) {
            // symmetric input built from random products of power sums
            MSeries s(R, S);
            for (int k = 1; k <= 4; ++k) {
                MSeries pk(R, S);
                for (int i = 0; i < d; ++i) pk = pk + MSeries::var(R, S, i).pow(k);
                s = s + pk.scaled(E0Elem(R, (i64)(rng() % 50))) * (MSeries::constant(R, S, 1) + pk);
            }
            SigmaPoly phi = symmetrize_to_elementary(s);
            CHECK(expand_sigma(phi, R, S) == s);
        }
    }
}

TEST_CASE("invariant basis sizes") {
    CHECK(invariant_basis(3, 3, SymKind::SigmaMonomial).size() == 10);
    CHECK(invariant_basis(3, 3, SymKind::OrbitSum).size() == 10);
    CHECK(invariant_basis(1, 5, SymKind::SigmaMonomial).size() == 5);
    CHECK(invariant_basis(3, 9, SymKind::SigmaMonomial).size() == 165);
    CHECK(invariant_basis(3, 9, SymKind::OrbitSum).size() == 165);
    for (int d = 1; d <= 4; ++d)
        for (int N = 1; N <= 8; ++N) {
            u64 c = binomial(N + d - 1, d);
            CHECK(invariant_basis(d, N, SymKind::SigmaMonomial).size() == c);
            CHECK(invariant_basis(d, N, SymKind::OrbitSum).size() == c);
        }
}

TEST_CASE("sigma monomials are independent modulo x_i^N") {
    auto R = ring3(4);
    for (int d = 1; d <= 3; ++d)
        for (int N = 1; N <= 9; ++N) {
            auto B = MonoSet::box(std::vector<int>(d, N));
            auto betas = invariant_basis(d, N, SymKind::SigmaMonomial);
            ZpMat A(R->pc(), B->size(), (int)betas.size());
            for (size_t c = 0; c < betas.size(); ++c) {
                SigmaPoly phi;
                phi.d = d;
                phi.terms[betas[c]] = E0Elem(R, 1);
                auto T = MonoSet::total(d, d * N + 1);
                MSeries e = expand_sigma(phi, R, T);
                for (int i = 0; i < T->size(); ++i) {
                    int j = B->index(T->exps(i));
                    if (j >= 0) A.at(j, (int)c) = e.at(i)[0];
                }
            }
            CHECK(ZpSolver(A).rank() == (int)betas.size());
        }
}
