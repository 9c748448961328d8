#include "morava/charcount.hpp"

#include <algorithm>

#include "morava/glp.hpp"
#include "morava/smallrings.hpp"

namespace morava {

namespace {

u64 upow(u64 b, u64 e, u64 limit = (1ull << 62)) {
    u64 r = 1;
    for (u64 i = 0; i < e; ++i) {
        if (r > limit / b) throw TooLarge("power exceeds limit");
        r *= b;
    }
    return r;
}

Count binom(const Count& n, u64 k) {
    Count r = 1;
    for (u64 i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

i64 mod_pos(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

CountParams CountParams::make(u64 p, int n, i64 q) {
    if (!is_prime(p)) throw BadParams("p must be prime");
    if (n < 1) throw BadParams("n must be >= 1");
    if (q < 2 || q % (i64)p == 0) throw BadParams("q must be >= 2 and coprime to p");
    CountParams P;
    P.p = p;
    P.n = n;
    P.q = q;
    P.v = vp_int(q - 1, p);
    if (P.v < 1) throw BadParams("need v_p(q - 1) >= 1");
    return P;
}

Count irr_count(const CountParams& P, int k) {
    if (k < 0) throw InvalidInput("k must be >= 0");
    Count pp = P.p;
    Count top = boost::multiprecision::pow(pp, (unsigned)(P.n * (P.v + k)));
    if (k == 0) return top;
    Count below = boost::multiprecision::pow(pp, (unsigned)(P.n * (P.v + k - 1)));
    return (top - below) / boost::multiprecision::pow(pp, (unsigned)k);
}

Count irr_count_dim(const CountParams& P, u64 d) {
    int k = 0;
    u64 m = 1;
    while (m < d) { m *= P.p; ++k; }
    return m == d ? irr_count(P, k) : Count(0);
}

Count rep_count(const CountParams& P, int d) {
    if (d < 0) throw InvalidInput("d must be >= 0");
    std::vector<Count> c(d + 1, 0);
    c[0] = 1;
    u64 m = 1;
    for (int k = 0; m <= (u64)d; ++k, m *= P.p) {
        Count e = irr_count(P, k);
        // multiply by (1 - z^m)^{-e} = sum_j binom(e + j - 1, j) z^{m j}
        std::vector<Count> out(d + 1, 0);
        for (u64 j = 0; j * m <= (u64)d; ++j) {
            Count b = binom(e + j - 1, j);
            for (u64 i = 0; i + j * m <= (u64)d; ++i) out[i + j * m] += b * c[i];
        }
        c = std::move(out);
    }
    return c[d];
}

int stable_level(const CountParams& P, int d) {
    int lg = 0;
    for (u64 m = 1; m < (u64)d; m *= P.p) ++lg;
    return P.v + lg + 1;
}

u64 rep_count_bruteforce(const CountParams& P, int d, int M, u64 limit) {
    if (d < 1) throw InvalidInput("d must be >= 1");
    if (M == 0) M = stable_level(P, d);
    u64 pm = upow(P.p, (u64)M);
    u64 total = upow(pm, (u64)P.n, limit);
    i64 qm = mod_pos(P.q, (i64)pm);

    // x -> q x on (Z/p^M)^n, element index = mixed radix
    auto act = [&](u64 x) {
        u64 out = 0, pw = 1;
        for (int i = 0; i < P.n; ++i) {
            u64 c = x % pm;
            x /= pm;
            out += (u64)((unsigned __int128)c * qm % pm) * pw;
            pw *= pm;
        }
        return out;
    };
    // points whose orbit is too long to sit in a stable multiset of size d are dropped
    std::vector<u64> pts;
    for (u64 x = 0; x < total; ++x) {
        u64 y = act(x);
        int len = 1;
        while (y != x && len <= d) { y = act(y); ++len; }
        if (len <= d) pts.push_back(x);
    }
    std::vector<u64> index(total, UINT64_MAX);
    for (size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
    std::vector<size_t> image(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) image[i] = index[act(pts[i])];

    Count msets = binom(Count(pts.size() + d - 1), (u64)d);
    if (msets > limit) throw TooLarge("brute-force enumeration exceeds limit");

    u64 count = 0;
    std::vector<size_t> s(d, 0), t(d);
    while (true) {
        for (int i = 0; i < d; ++i) t[i] = image[s[i]];
        std::sort(t.begin(), t.end());
        if (t == s) ++count;
        int i = d - 1;
        while (i >= 0 && s[i] == pts.size() - 1) --i;
        if (i < 0) break;
        ++s[i];
        for (int j = i + 1; j < d; ++j) s[j] = s[i];
    }
    return count;
}

CrosscheckReport hkr_rank_crosscheck(const CountParams& P, int d) {
    if (d < 1 || (u64)d > P.p) throw Unsupported("rank cross-check needs 1 <= d <= p");
    CrosscheckReport R;
    R.d = d;
    R.count = rep_count(P, d);
    if ((u64)d < P.p) {
        int pnv = (int)upow(P.p, (u64)(P.n * P.v));
        FGL F = build_honda(PrecisionCtx(P.p, 3, P.n, 1, std::max(20, 4 * pnv + 4)));
        R.rank = (u64)torus_invariant_ring(d, P.v, F).rank();
        R.source = "torus";
    } else {
        GLpChain C(GLpParams::make(P.p, P.n, P.q));
        R.rank = (u64)C.algebra().rank;
        R.source = "glp";
    }
    if (!R.ok())
        throw Mismatch("representation count " + R.count.str() + " differs from ring rank " +
                       std::to_string(R.rank));
    return R;
}

}  // namespace morava
