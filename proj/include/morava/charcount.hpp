#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "morava/padic.hpp"

namespace morava {

// Counting over Phi = (Q_p/Z_p)^n with q acting by multiplication, v = v_p(q - 1) >= 1.
struct CountParams {
    u64 p = 3;
    int n = 1;
    i64 q = 4;
    int v = 1;

    static CountParams make(u64 p, int n, i64 q);
};

using Count = boost::multiprecision::cpp_int;

// Irreducibles of dimension p^k.
Count irr_count(const CountParams& P, int k);
// Irreducibles of dimension d (zero unless d is a power of p).
Count irr_count_dim(const CountParams& P, u64 d);
// Coefficient of z^d in prod_k (1 - z^{p^k})^{-irr_count(k)}.
Count rep_count(const CountParams& P, int d);

// Multisets of size d in (Z/p^M)^n stable under x -> q x; M = 0 picks a
// level large enough for the count to stabilize.
u64 rep_count_bruteforce(const CountParams& P, int d, int M = 0, u64 limit = 50000000);
int stable_level(const CountParams& P, int d);

struct CrosscheckReport {
    int d = 0;
    Count count;
    u64 rank = 0;
    std::string source;   // "torus" or "glp"
    bool ok() const { return count == rank; }
};
// Compares rep_count with the rank of the ring model; Mismatch on disagreement.
CrosscheckReport hkr_rank_crosscheck(const CountParams& P, int d);

}  // namespace morava
