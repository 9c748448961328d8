#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "morava/padic.hpp"

using namespace morava;
using boost::multiprecision::cpp_int;

namespace {

int brute_vp(cpp_int x, u64 p) {
    if (x == 0) return 1 << 30;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

cpp_int factorial(u64 d) {
    cpp_int r = 1;
    for (u64 i = 2; i <= d; ++i) r *= i;
    return r;
}

}  // namespace

TEST_CASE("padic arithmetic") {
    PadicCtx c(3, 4);
    CHECK(c.mod == 81);
    PadicInt two(c, 2);
    CHECK(two.inv().residue() == 41);
    CHECK((two + PadicInt(c, 0)) == two);
    PadicInt z = PadicInt(c, 3) * PadicInt(c, 27);
    CHECK(z.is_zero());
    CHECK(z.val() == 4);
    CHECK_THROWS_AS(PadicInt(c, 6).inv(), NonUnit);
    CHECK_THROWS_AS(PadicInt(c, 1) + PadicInt(PadicCtx(3, 5), 1), CtxMismatch);
    CHECK(padic_arith(two, two, PadicOp::Mul).residue() == 4);
    CHECK(PadicInt(c, -1).residue() == 80);
    CHECK(c.digits(5) == "0012");
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PadicCtx(2, 3), InvalidInput);
    CHECK_THROWS_AS(PadicCtx(9, 3), InvalidInput);
    CHECK_THROWS_AS(PadicCtx(3, 0), InvalidInput);
    CHECK(PadicCtx::max_precision(3) == 39);
    CHECK_THROWS_AS(PadicCtx(3, 40), PrecisionExhausted);
}

TEST_CASE("valuation is additive") {
    PadicCtx c(5, 8);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        PadicInt a = PadicInt::from_residue(c, rng()), b = PadicInt::from_residue(c, rng());
        CHECK((a * b).val() == std::min(c.N, a.val() + b.val()));
    }
}

TEST_CASE("vp_pow_minus_one examples") {
    CHECK(vp_pow_minus_one(4, 3, 3) == 2);
    CHECK(vp_pow_minus_one(2, 1, 3) == 0);
    CHECK(vp_pow_minus_one(2, 6, 3) == 2);
    CHECK_THROWS_AS(vp_pow_minus_one(6, 2, 3), InvalidInput);
}

TEST_CASE("vp_pow_minus_one against big integers") {
    // k = 1 makes k^s - 1 vanish, so the oracle range starts at 2
    for (u64 p : {3, 5, 7})
        for (i64 k = 2; k <= 50; ++k) {
            if (k % (i64)p == 0) continue;
            for (u64 s = 1; s <= 30; ++s) {
                cpp_int v = boost::multiprecision::pow(cpp_int(k), (unsigned)s) - 1;
                CHECK(vp_pow_minus_one(k, s, p) == brute_vp(v, p));
            }
        }
}

TEST_CASE("vp_factorial exhaustive") {
    CHECK(vp_factorial(9, 3) == 4);
    CHECK(vp_factorial(2, 3) == 0);
    CHECK(vp_factorial(10, 3) == 4);
    for (u64 p : {3, 5, 7})
        for (u64 d = 0; d <= 200; ++d) CHECK(vp_factorial(d, p) == brute_vp(factorial(d), p));
}

TEST_CASE("multiplicative order") {
    CHECK(mult_order_mod_p(4, 3) == 1);
    CHECK(mult_order_mod_p(2, 3) == 2);
    CHECK(mult_order_mod_p(3, 7) == 6);
    CHECK_THROWS_AS(mult_order_mod_p(14, 7), InvalidInput);
}

TEST_CASE("teichmuller lifts") {
    CHECK(teichmuller(2, PadicCtx(3, 2)).residue() == 8);
    CHECK(teichmuller(1, PadicCtx(3, 9)).residue() == 1);
    CHECK_THROWS_AS(teichmuller(3, PadicCtx(3, 2)), InvalidInput);
    for (u64 p : {3, 5, 7}) {
        PadicCtx c(p, 12);
        PadicInt prod(c, 1);
        for (u64 a = 1; a < p; ++a) {
            PadicInt w = teichmuller((i64)a, c);
            CHECK(w.pow(p - 1).residue() == 1);
            CHECK(w.residue() % p == a);
            prod = prod * w;
        }
        CHECK(prod.residue() == c.mod - 1);
    }
}
