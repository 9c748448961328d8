#include "doctest.h"

#include "morava/serialize.hpp"

using namespace morava;

TEST_CASE("digit strings") {
    PadicCtx pc(3, 4);
    CHECK(pc.digits(5) == "0012");
    for (u64 r = 0; r < pc.mod; ++r) CHECK(parse_digits(pc.digits(r), pc) == r);
    PadicCtx big(11, 3);
    for (u64 r : {0ull, 10ull, 120ull, 1330ull}) CHECK(parse_digits(big.digits(r), big) == r);
    CHECK_THROWS_AS(parse_digits("012", pc), InvalidInput);
    CHECK_THROWS_AS(parse_digits("0132", pc), InvalidInput);
    CHECK_THROWS_AS(parse_digits("00x1", pc), InvalidInput);
}

TEST_CASE("algebra round trip") {
    GLpChain C(GLpParams::make(3, 1, 4));
    GLPAlgebra A = C.algebra();
    Json j = to_json(A);
    CHECK(j["rank"] == 12);
    Json e = envelope("glp.algebra", to_json(C.params()), j);
    CHECK(e["schema"] == "morava-rings/1");
    GLPAlgebra B = glp_algebra_from_json(Json::parse(e.dump())["result"]);
    CHECK(B.rank == A.rank);
    CHECK(B.sc == A.sc);
    CHECK(B.labels == A.labels);
    CHECK(B.h_coeffs == A.h_coeffs);
    CHECK(k_reduce(B).report.first_vanishing == 5);
    CHECK_THROWS_AS(glp_algebra_from_json(Json::parse("{\"rank\": 3}")), InvalidInput);
}

TEST_CASE("descriptor and scan json") {
    Json s = to_json(sylow_gl_descriptor(4, 4, 3));
    CHECK(s["kind"] == "Product");
    CHECK(s["log_order"] == 5);
    CHECK(s["factors"][0]["kind"] == "Wreath");
    CHECK(s["text"] == "Wreath(C3,C3) x C3");
    Json g = to_json(build_generator_a(4, 3).a);
    CHECK(g["rows"].size() == 3);
    CHECK(g["modulus"] == Json::array({1, 1, 1}));
    Json r = to_json(hkr_rank_crosscheck(CountParams::make(3, 1, 4), 2));
    CHECK(r["count"] == "6");
    CHECK(r["ok"] == true);
}
