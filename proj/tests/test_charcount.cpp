#include "doctest.h"

#include "morava/charcount.hpp"

using namespace morava;

TEST_CASE("irreducible counts") {
    auto P = CountParams::make(3, 1, 4);
    CHECK(P.v == 1);
    CHECK(irr_count(P, 0) == 3);
    CHECK(irr_count(P, 1) == 2);
    CHECK(irr_count(P, 2) == 2);
    CHECK(irr_count_dim(P, 2) == 0);
    CHECK(irr_count_dim(P, 9) == 2);
    auto P2 = CountParams::make(3, 2, 4);
    CHECK(irr_count(P2, 0) == 9);
    CHECK(irr_count(P2, 1) == 24);
    auto P19 = CountParams::make(3, 1, 19);
    CHECK(P19.v == 2);
    CHECK(irr_count(P19, 0) == 9);
    CHECK(irr_count(P19, 1) == 6);
    CHECK_THROWS_AS(CountParams::make(3, 1, 2), BadParams);
    CHECK_THROWS_AS(CountParams::make(3, 1, 6), BadParams);
    CHECK_THROWS_AS(irr_count(P, -1), InvalidInput);
}

TEST_CASE("representation counts") {
    auto P = CountParams::make(3, 1, 4);
    CHECK(rep_count(P, 1) == 3);
    CHECK(rep_count(P, 2) == 6);
    CHECK(rep_count(P, 3) == 12);
    CHECK(rep_count(P, 0) == 1);
    auto P2 = CountParams::make(3, 2, 4);
    CHECK(rep_count(P2, 3) == 165 + 24);

    CHECK(rep_count_bruteforce(P, 3, 2) == 12);
    CHECK(rep_count_bruteforce(P, 1, 1) == 3);
    CHECK(rep_count_bruteforce(P, 2, 2) == 6);
    CHECK_THROWS_AS(rep_count_bruteforce(P2, 4, 4, 1000), TooLarge);
}

TEST_CASE("generating function against enumeration") {
    for (int n = 1; n <= 2; ++n) {
        auto P = CountParams::make(3, n, 4);
        for (int d = 1; d <= 4; ++d) {
            CAPTURE(n);
            CAPTURE(d);
            CHECK(rep_count(P, d) == rep_count_bruteforce(P, d));
            // one level higher changes nothing
            if (n == 1) CHECK(rep_count_bruteforce(P, d, stable_level(P, d) + 1) == rep_count_bruteforce(P, d));
        }
    }
    for (i64 q : {7, 19, 10}) {
        auto P = CountParams::make(3, 1, q);
        for (int d = 1; d <= 5; ++d) CHECK(rep_count(P, d) == rep_count_bruteforce(P, d));
    }
    auto P5 = CountParams::make(5, 1, 11);
    for (int d = 1; d <= 5; ++d) CHECK(rep_count(P5, d) == rep_count_bruteforce(P5, d));
}

TEST_CASE("ranks against counts") {
    auto P = CountParams::make(3, 1, 4);
    for (int d = 1; d <= 3; ++d) {
        auto R = hkr_rank_crosscheck(P, d);
        CHECK(R.ok());
        CHECK(R.source == (d < 3 ? "torus" : "glp"));
    }
    CHECK(hkr_rank_crosscheck(P, 2).rank == 6);
    CHECK(hkr_rank_crosscheck(P, 3).rank == 12);
    auto R2 = hkr_rank_crosscheck(CountParams::make(3, 2, 4), 3);
    CHECK(R2.rank == 189);
    CHECK_THROWS_AS(hkr_rank_crosscheck(P, 4), Unsupported);
}
