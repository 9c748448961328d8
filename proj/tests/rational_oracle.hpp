#pragma once

// Formal group laws over Q from a logarithm, used as an oracle.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "morava/padic.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Uni = std::vector<cpp_rational>;
using Bi = std::map<std::pair<int, int>, cpp_rational>;

inline Uni umul(const Uni& a, const Uni& b) {
    Uni r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Compositional inverse by undetermined coefficients.
inline Uni revert(const Uni& f) {
    size_t L = f.size();
    Uni g(L, 0);
    g[1] = 1 / f[1];
    for (size_t k = 2; k < L; ++k) {
        Uni comp(L, 0), pw(L, 0);
        pw[0] = 1;
        for (size_t i = 1; i < L; ++i) {
            pw = umul(pw, g);
            for (size_t j = 0; j < L; ++j) comp[j] += f[i] * pw[j];
        }
        g[k] -= comp[k] / f[1];
    }
    return g;
}

inline Bi bmul(const Bi& a, const Bi& b, int D) {
    Bi r;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            int i = ea.first + eb.first, j = ea.second + eb.second;
            if (i + j < D) r[{i, j}] += ca * cb;
        }
    return r;
}

// l(x) = sum_k L_k x^{p^k} / p^k with integer numerators.
inline Uni log_series(long p, const std::vector<long>& L, int D) {
    Uni l(D, 0);
    cpp_int q = 1, pk = 1;
    for (size_t k = 0; k < L.size() && q < D; ++k) {
        l[(size_t)q] = cpp_rational(L[k], pk);
        q *= p;
        pk *= p;
    }
    return l;
}

// exp(l(x) + l(y)), total degree < D.
inline Bi formal_sum(const Uni& l, int D) {
    Uni e = revert(l);
    Bi s;
    for (int i = 1; i < D; ++i)
        if (l[i] != 0) { s[{i, 0}] += l[i]; s[{0, i}] += l[i]; }
    Bi r, pw{{{0, 0}, 1}};
    for (int k = 1; k < D; ++k) {
        pw = bmul(pw, s, D);
        if (e[k] == 0) continue;
        for (auto& [ex, c] : pw) r[ex] += e[k] * c;
    }
    return r;
}

// exp(a l(x)).
inline Uni mult(const Uni& l, const cpp_rational& a) {
    Uni e = revert(l), s(l.size(), 0), r(l.size(), 0), pw(l.size(), 0);
    for (size_t i = 0; i < l.size(); ++i) s[i] = a * l[i];
    pw[0] = 1;
    for (size_t k = 1; k < l.size(); ++k) {
        pw = umul(pw, s);
        for (size_t j = 0; j < l.size(); ++j) r[j] += e[k] * pw[j];
    }
    return r;
}

// Residue mod p^N of a p-integral rational.
inline morava::u64 residue(const cpp_rational& c, const morava::PadicCtx& ctx) {
    cpp_int num = boost::multiprecision::numerator(c), den = boost::multiprecision::denominator(c);
    cpp_int m = ctx.mod;
    if (den % ctx.p == 0) throw std::runtime_error("not p-integral");
    cpp_int n = ((num % m) + m) % m;
    cpp_int d = ((den % m) + m) % m;
    morava::u64 dn = ctx.inv((morava::u64)d);
    return ctx.mul((morava::u64)n, dn);
}

}  // namespace oracle
