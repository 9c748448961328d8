#include "morava/weierstrass.hpp"

namespace morava {

namespace {

int nilpotency(const E0Ptr& R) { return R->pc().N + (R->n() > 1 ? R->Du() : 1) - 1; }

bool in_max_ideal(const USeries& f, int i) { return f.ring()->in_max_ideal(f.at(i)); }

}  // namespace

int weierstrass_degree(const USeries& f) {
    for (int i = 0; i < f.len(); ++i)
        if (!in_max_ideal(f, i)) return i;
    throw NotWeierstrass("no unit coefficient below x^" + std::to_string(f.len()));
}

static void check_input(const USeries& f, int D) {
    if (D < 0 || D >= f.len()) throw NotWeierstrass("degree " + std::to_string(D) + " outside the series");
    if (weierstrass_degree(f) != D)
        throw NotWeierstrass("first unit coefficient is at x^" + std::to_string(weierstrass_degree(f)) +
                             ", expected x^" + std::to_string(D));
}

WeierstrassFactorization weierstrass_prepare(const USeries& f, int D) {
    check_input(f, D);
    const auto& R = f.ring();
    const int L = f.len(), K = nilpotency(R);
    if (L < (K + 1) * D + 1)
        throw PrecisionExhausted("Weierstrass preparation of degree " + std::to_string(D) + " needs " +
                                 std::to_string((K + 1) * D + 1) + " coefficients, have " + std::to_string(L));
    WeierstrassFactorization W;
    W.D = D;
    if (D == 0) {
        W.g = USeries::constant(R, 1, 1);
        W.u = f;
        W.u_valid = L;
        return W;
    }
    USeries P = f.truncated(D).truncated(L - D);
    USeries U = f.shift_down(D);
    USeries Uinv = unit_invert(U);
    USeries A = P * Uinv;
    // s = sum_k (-T)^k (1), T(h) = (h A) div x^D
    USeries s = USeries::constant(R, L - D, 1), term = s;
    int k = 1;
    for (; k < K; ++k) {
        term = (term * A.truncated(term.len())).shift_down(D).scaled(-1);
        if (term.is_zero()) break;
        s = s.truncated(term.len()) + term;
    }
    W.iterations = k;
    USeries q = s * Uinv.truncated(s.len());
    USeries qf = q * f.truncated(q.len());
    W.g = qf.truncated(D + 1);
    if (W.g.coeff(D) != E0Elem(R, 1)) throw InvariantViolation("Weierstrass polynomial is not monic");
    for (int i = 0; i < D; ++i)
        if (!in_max_ideal(W.g, i)) throw InvariantViolation("Weierstrass polynomial not distinguished");
    for (int i = D + 1; i < qf.len(); ++i)
        if (!qf.coeff_zero(i)) throw InvariantViolation("q f has terms above degree D");
    W.u = unit_invert(q);
    W.u_valid = q.len();
    return W;
}

WeierstrassFactorization weierstrass_prepare_hensel(const USeries& f, int D) {
    check_input(f, D);
    const auto& R = f.ring();
    const int L = f.len(), K = nilpotency(R);
    if (L < (K + 1) * D + 1)
        throw PrecisionExhausted("Weierstrass lifting of degree " + std::to_string(D) + " needs " +
                                 std::to_string((K + 1) * D + 1) + " coefficients, have " + std::to_string(L));
    WeierstrassFactorization W;
    W.D = D;
    W.g = USeries::monomial(D + 1, D, E0Elem(R, 1));
    USeries u = f.shift_down(D);
    int k = 0;
    for (; k < K; ++k) {
        int len = u.len();
        USeries e = f.truncated(len) - u * W.g.truncated(len);
        if (e.is_zero()) break;
        USeries w = e * unit_invert(u);
        W.g = W.g + w.truncated(D).truncated(D + 1);
        u = (u + u * w.shift_down(D).truncated(len)).truncated(len - D);
    }
    W.iterations = k;
    W.u = u;
    W.u_valid = u.len();
    return W;
}

WeierstrassFactorization pr_weierstrass(const FGL& F, int r, int len) {
    if (r < 0) throw InvalidInput("r must be nonnegative");
    if (len <= 0) len = F.ctx.Dx;
    i64 pr = 1;
    int D = 1;
    for (int i = 0; i < r; ++i) {
        pr *= (i64)F.p();
        for (int j = 0; j < F.ctx.n(); ++j) D *= (int)F.p();
    }
    if (r == 0) {
        WeierstrassFactorization W;
        W.D = 1;
        W.g = USeries::x(F.ctx.e0, 2);
        W.u = USeries::constant(F.ctx.e0, len, 1);
        W.u_valid = len;
        return W;
    }
    USeries f = F.mult_series(pr, len);
    return weierstrass_prepare(f, D);
}

int poly_degree(const USeries& a) {
    for (int i = a.len() - 1; i >= 0; --i)
        if (!a.coeff_zero(i)) return i;
    return -1;
}

USeries poly_trim(const USeries& a) { return a.truncated(std::max(1, poly_degree(a) + 1)); }

USeries poly_mul(const USeries& a, const USeries& b) {
    int L = a.len() + b.len() - 1;
    return a.truncated(L) * b.truncated(L);
}

std::pair<USeries, USeries> poly_divmod(const USeries& a, const USeries& g) {
    int D = poly_degree(g);
    const auto& R = a.ring();
    if (D < 0 || g.coeff(D) != E0Elem(R, 1)) throw InvalidInput("division by a non-monic polynomial");
    int da = poly_degree(a);
    if (da < D) return {USeries(R, 1), a.truncated(std::max(D, 1))};
    USeries q(R, da - D + 1);
    std::vector<u64> r = a.truncated(da + 1).raw();
    const int M = R->M();
    const auto& pc = R->pc();
    std::vector<u64> tmp(M);
    for (int i = da; i >= D; --i) {
        const u64* c = r.data() + (size_t)i * M;
        if (R->is_zero(c)) continue;
        std::vector<u64> lead(c, c + M);
        std::copy(lead.begin(), lead.end(), q.at(i - D));
        for (int j = 0; j <= D; ++j) {
            if (g.coeff_zero(j)) continue;
            R->mul(tmp.data(), lead.data(), g.at(j));
            u64* t = r.data() + (size_t)(i - D + j) * M;
            for (int m = 0; m < M; ++m) t[m] = pc.sub(t[m], tmp[m]);
        }
    }
    USeries rem(R, std::max(D, 1));
    std::copy(r.begin(), r.begin() + (size_t)D * M, rem.raw().begin());
    return {q, rem};
}

USeries poly_rem(const USeries& a, const USeries& g) { return poly_divmod(a, g).second; }

USeries poly_exact_div(const USeries& a, const USeries& g) {
    auto [q, r] = poly_divmod(a, g);
    if (!r.is_zero()) throw ExactDivisionFailure("polynomial division leaves a remainder");
    return q;
}

USeries reduce_series(const USeries& f, const USeries& g) {
    int D = poly_degree(g);
    int K = nilpotency(f.ring());
    if (D > 0 && f.len() < D * K)
        throw PrecisionExhausted("reducing a series truncated at x^" + std::to_string(f.len()) +
                                 " modulo degree " + std::to_string(D) + " needs x^" + std::to_string(D * K));
    return poly_rem(f, g);
}

}  // namespace morava
