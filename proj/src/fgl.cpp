#include "morava/fgl.hpp"

#include <functional>
#include <sstream>

namespace morava {

namespace {

struct LogTerm {
    int k;        // exponent p^k
    int len;      // |I|
    E0Elem uI;
};

// All sequences I with ||I|| = k <= kmax whose u_I survives truncation.
std::vector<LogTerm> log_terms(const E0Ptr& R, const LogSpec& spec, int kmax) {
    std::vector<LogTerm> out;
    const int n = spec.n;
    const u64 p = R->pc().p;
    std::function<void(int, int, const E0Elem&)> rec = [&](int s, int m, const E0Elem& cur) {
        out.push_back({s, m, cur});
        for (int i = 1; i <= n && s + i <= kmax; ++i) {
            E0Elem f(R, 1);
            if (i < n) {
                if (spec.honda) continue;
                // u_i^{p^s}
                u64 e = 1;
                bool dead = false;
                for (int t = 0; t < s; ++t) {
                    e *= p;
                    if (e >= (u64)R->Du()) { dead = true; break; }
                }
                if (dead || R->Du() <= 1) continue;
                E0Elem ui = E0Elem::u(R, i);
                if (ui.is_zero()) continue;
                f = ui;
                for (u64 t = 1; t < e; ++t) f = f * ui;
                if (f.is_zero()) continue;
            }
            rec(s + i, m + 1, cur * f);
        }
    };
    rec(0, 0, E0Elem(R, 1));
    return out;
}

int kmax_for(u64 p, int len) {
    int k = 0;
    u64 q = 1;
    while (q * p < (u64)len) { q *= p; ++k; }
    return k;
}

int scale_for(const E0Ptr& R, const LogSpec& spec, int len) {
    int ms = 0;
    for (auto& t : log_terms(R, spec, kmax_for(R->pc().p, len))) ms = std::max(ms, t.len);
    return ms;
}

struct LogData {
    int kmax = 0, ms = 0;
    std::vector<E0Elem> L;  // L_k
    std::vector<E0Elem> c;  // p^ms * L_k / p^k
};

LogData log_data(const E0Ptr& Rw, const LogSpec& spec, int len, int ms) {
    LogData d;
    d.kmax = kmax_for(Rw->pc().p, len);
    d.ms = ms;
    d.L.assign(d.kmax + 1, E0Elem(Rw));
    d.c.assign(d.kmax + 1, E0Elem(Rw));
    const auto& pc = Rw->pc();
    for (auto& t : log_terms(Rw, spec, d.kmax)) {
        d.L[t.k] = d.L[t.k] + t.uI * E0Elem(Rw, (i64)pc.pow(pc.p, t.k - t.len));
        d.c[t.k] = d.c[t.k] + t.uI * E0Elem(Rw, (i64)pc.pow(pc.p, ms - t.len));
    }
    return d;
}

// Newton iteration f <- f - (l(f) - T)/l'(f); scaledT = p^ms * T.
USeries newton_univariate(const LogData& d, const USeries& scaledT, const E0Elem& lin) {
    const E0Ptr& Rw = scaledT.ring();
    const auto& pc = Rw->pc();
    const int len = scaledT.len();
    USeries f = USeries::monomial(len, 1, lin);
    if (len <= 2) return f;
    const u64 pms = pc.pk(d.ms);
    for (int K = 2; K < len;) {
        K = std::min(2 * K, len);
        USeries fK = f.truncated(K);
        USeries phi = scaledT.truncated(K).scaled(-1);
        USeries lp = USeries::constant(d.L[0].ring(), K, 0);
        USeries P = fK, Q = USeries::constant(Rw, K, 1);
        u64 pk = 1;
        for (int k = 0; k <= d.kmax && pk < (u64)K; ++k) {
            phi = phi + P.scaled(d.c[k]);
            lp = lp + Q.scaled(d.L[k]);
            USeries Pm1 = P.pow(pc.p - 1);
            Q = Q * Pm1;
            P = Pm1 * P;
            pk *= pc.p;
        }
        for (u64& r : phi.raw()) {
            if (r % pms != 0)
                throw IntegralityFailure("log equation residual not divisible by p^" + std::to_string(d.ms));
            r /= pms;
        }
        f = fK - phi * unit_invert(lp);
    }
    return f;
}

MSeries newton_bivariate(const LogData& d, const E0Ptr& Rw, const MonoPtr& S) {
    const auto& pc = Rw->pc();
    MSeries x = MSeries::var(Rw, S, 0), y = MSeries::var(Rw, S, 1);
    MSeries T(Rw, S);
    {
        MSeries px = x, py = y;
        for (int k = 0; k <= d.kmax; ++k) {
            T = T + (px + py).scaled(d.c[k]);
            px = px.pow(pc.p);
            py = py.pow(pc.p);
        }
    }
    MSeries f = x + y;
    const u64 pms = pc.pk(d.ms);
    const int top = S->totcap();
    for (int K = 2; K < top;) {
        K = std::min(2 * K, top);
        MSeries fK = f.truncated_total(K);
        MSeries phi = -T.truncated_total(K);
        MSeries lp(Rw, S);
        MSeries P = fK, Q = MSeries::constant(Rw, S, 1);
        u64 pk = 1;
        for (int k = 0; k <= d.kmax && pk < (u64)K; ++k) {
            phi = phi + P.scaled(d.c[k]);
            lp = lp + Q.scaled(d.L[k]);
            MSeries Pm1 = P.pow(pc.p - 1).truncated_total(K);
            Q = (Q * Pm1).truncated_total(K);
            P = (Pm1 * P).truncated_total(K);
            pk *= pc.p;
        }
        phi = phi.truncated_total(K);
        std::vector<u64> raw = phi.raw();
        for (u64& r : raw) {
            if (r % pms != 0)
                throw IntegralityFailure("formal sum residual not divisible by p^" + std::to_string(d.ms));
            r /= pms;
        }
        MSeries phid(Rw, S);
        for (int i = 0; i < S->size(); ++i)
            std::copy(raw.begin() + (size_t)i * Rw->M(), raw.begin() + (size_t)(i + 1) * Rw->M(), phid.at(i));
        f = (fK - phid * lp.truncated_total(K).unit_invert()).truncated_total(K);
    }
    return f;
}

}  // namespace

std::vector<E0Elem> log_numerators(const E0Ptr& R, const LogSpec& spec, int kmax) {
    std::vector<E0Elem> L(kmax + 1, E0Elem(R));
    const auto& pc = R->pc();
    for (auto& t : log_terms(R, spec, kmax))
        L[t.k] = L[t.k] + t.uI * E0Elem(R, (i64)pc.pow(pc.p, t.k - t.len));
    return L;
}

int log_scale(const PrecisionCtx& ctx, const LogSpec& spec) { return scale_for(ctx.e0, spec, ctx.Dx); }

static USeries mult_series_impl(const PrecisionCtx& ctx, const LogSpec& spec, u64 a_res, int Na, int len) {
    int ms = scale_for(ctx.e0, spec, len);
    int Nw = ctx.N() + ms;
    if (Na < Nw)
        throw PrecisionExhausted("multiplier known to " + std::to_string(Na) + " digits, need " + std::to_string(Nw));
    E0Ptr Rw = ctx.e0->with_precision(Nw);
    LogData d = log_data(Rw, spec, len, ms);
    E0Elem a(Rw);
    a.coeffs()[0] = a_res % Rw->pc().mod;
    USeries T(Rw, len);
    u64 pk = 1;
    for (int k = 0; k <= d.kmax; ++k) {
        T.set((int)pk, d.c[k] * a);
        pk *= ctx.p();
    }
    return newton_univariate(d, T, a).recast(ctx.e0);
}

USeries log_mult_series(const PrecisionCtx& ctx, const LogSpec& spec, const PadicInt& a, int len) {
    if (a.ctx().p != ctx.p()) throw CtxMismatch("multiplier over a different prime");
    return mult_series_impl(ctx, spec, a.residue(), a.ctx().N, len);
}

USeries log_mult_series(const PrecisionCtx& ctx, const LogSpec& spec, i64 m, int len) {
    int ms = scale_for(ctx.e0, spec, len);
    int Nw = ctx.N() + ms;
    PadicCtx pw(ctx.p(), Nw);
    return mult_series_impl(ctx, spec, pw.from_int(m), Nw, len);
}

USeries log_inverse_linear(const PrecisionCtx& ctx, const LogSpec& spec, i64 c, int len) {
    int ms = scale_for(ctx.e0, spec, len);
    E0Ptr Rw = ctx.e0->with_precision(ctx.N() + ms);
    LogData d = log_data(Rw, spec, len, ms);
    E0Elem cc(Rw, c);
    USeries T(Rw, len);
    if (len > 1) T.set(1, cc * E0Elem(Rw, (i64)Rw->pc().pk(ms)));
    return newton_univariate(d, T, cc).recast(ctx.e0);
}

static MSeries log_formal_sum(const PrecisionCtx& ctx, const LogSpec& spec, const MonoPtr& S) {
    int len = S->totcap();
    int ms = scale_for(ctx.e0, spec, len);
    E0Ptr Rw = ctx.e0->with_precision(ctx.N() + ms);
    LogData d = log_data(Rw, spec, len, ms);
    return newton_bivariate(d, Rw, S).recast(ctx.e0);
}

MSeries formal_sum_series(const PrecisionCtx& ctx, const LogSpec& spec, const MonoPtr& S) {
    return log_formal_sum(ctx, spec, S);
}

FGL FGL::additive(const PrecisionCtx& ctx) {
    auto S = MonoSet::total(2, ctx.Dx);
    FGL G;
    G.ctx = ctx;
    G.F = MSeries::var(ctx.e0, S, 0) + MSeries::var(ctx.e0, S, 1);
    G.name = "additive";
    return G;
}

FGL FGL::multiplicative(const PrecisionCtx& ctx) {
    auto S = MonoSet::total(2, ctx.Dx);
    FGL G;
    G.ctx = ctx;
    MSeries x = MSeries::var(ctx.e0, S, 0), y = MSeries::var(ctx.e0, S, 1);
    G.F = x + y + x * y;
    G.name = "multiplicative";
    return G;
}

FGL FGL::from_series(const MSeries& F, const std::string& name) {
    if (F.arity() != 2) throw InvalidInput("a formal group law is bivariate");
    FGL G;
    G.ctx = PrecisionCtx(F.ring(), F.shape()->totcap());
    G.F = F;
    G.name = name;
    return G;
}

USeries FGL::mult_series(i64 m, int len) const {
    if (log) return log_mult_series(ctx, *log, m, len);
    if (len > ctx.Dx) throw PrecisionExhausted("no logarithm attached; series limited to Dx");
    return m_series(*this, m).truncated(len);
}

static std::string mono_str(const std::vector<int>& e) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
    return os.str();
}

static MSeries lift_vars(const MSeries& F, const E0Ptr& R, const MonoPtr& S, const std::vector<int>& target) {
    MSeries r(R, S);
    const auto& FS = *F.shape();
    std::vector<int> e(S->d(), 0);
    for (int i = 0; i < FS.size(); ++i) {
        if (F.coeff_zero(i)) continue;
        std::fill(e.begin(), e.end(), 0);
        for (int k = 0; k < FS.d(); ++k) e[target[k]] = FS.exps(i)[k];
        int j = S->index(e);
        if (j >= 0) std::copy(F.at(i), F.at(i) + R->M(), r.at(j));
    }
    return r;
}

AxiomReport check_axioms(const FGL& G) {
    AxiomReport rep;
    const MSeries& F = G.F;
    const auto& S = *F.shape();
    const auto& R = F.ring();
    for (int i = 0; i < S.size() && rep.identity; ++i) {
        const auto& e = S.exps(i);
        if (e[0] != 0 && e[1] != 0) continue;
        bool want_one = (e[0] + e[1] == 1);
        E0Elem c(R, F.at(i));
        E0Elem want(R, want_one ? 1 : 0);
        if (c != want) {
            rep.identity = false;
            rep.first_offense = "identity at x^i y^j " + mono_str(e);
        }
    }
    for (int i = 0; i < S.size() && rep.commutativity; ++i) {
        const auto& e = S.exps(i);
        int j = S.index({e[1], e[0]});
        if (!std::equal(F.at(i), F.at(i) + R->M(), F.at(j))) {
            rep.commutativity = false;
            if (rep.first_offense.empty()) rep.first_offense = "commutativity at " + mono_str(e);
        }
    }
    auto S3 = MonoSet::total(3, S.totcap());
    MSeries Fxy = lift_vars(F, R, S3, {0, 1}), Fyz = lift_vars(F, R, S3, {1, 2});
    MSeries x = MSeries::var(R, S3, 0), z = MSeries::var(R, S3, 2);
    MSeries lhs = substitute(F, {Fxy, z}), rhs = substitute(F, {x, Fyz});
    if (lhs != rhs) {
        rep.associativity = false;
        for (int i = 0; i < S3->size(); ++i)
            if (!std::equal(lhs.at(i), lhs.at(i) + R->M(), rhs.at(i))) {
                if (rep.first_offense.empty()) rep.first_offense = "associativity at " + mono_str(S3->exps(i));
                break;
            }
    }
    return rep;
}

USeries formal_add(const FGL& F, const USeries& a, const USeries& b) { return substitute2(F.F, a, b); }

USeries formal_inverse(const FGL& G) {
    const auto& R = G.ctx.e0;
    int L = G.ctx.Dx;
    USeries iota = USeries::x(R, L).scaled(-1);
    USeries x = USeries::x(R, L);
    for (int k = 2; k < L; ++k) {
        USeries s = substitute2(G.F, x, iota);
        for (int j = 0; j < k; ++j)
            if (!s.coeff_zero(j)) throw InvariantViolation("formal inverse correction out of order");
        E0Elem a = s.coeff(k);
        if (a.is_zero()) continue;
        iota.set(k, iota.coeff(k) - a);
    }
    return iota;
}

USeries m_series(const FGL& G, i64 m) {
    const auto& R = G.ctx.e0;
    int L = G.ctx.Dx;
    if (m < 0) return compose(m_series(G, -m), formal_inverse(G));
    USeries x = USeries::x(R, L);
    USeries acc(R, L);
    if (m == 0) return acc;
    int top = 63 - __builtin_clzll((u64)m);
    acc = x;
    for (int b = top - 1; b >= 0; --b) {
        acc = substitute2(G.F, acc, acc);
        if ((m >> b) & 1) acc = substitute2(G.F, acc, x);
    }
    return acc;
}

USeries divided_m_series(const FGL& G, i64 m) {
    USeries s = m_series(G, m);
    if (!s.coeff_zero(0)) throw DivisionFailure("[m](x) has a constant term");
    return s.shift_down(1);
}

USeries padic_series(const FGL& G, const PadicInt& a) {
    const auto& R = G.ctx.e0;
    int L = G.ctx.Dx;
    u64 p = G.p();
    if (a.ctx().p != p) throw CtxMismatch("p-adic multiplier over a different prime");
    std::vector<USeries> small;
    for (u64 d = 0; d < p; ++d) small.push_back(m_series(G, (i64)d));
    USeries ps = small.size() > 1 ? m_series(G, (i64)p) : USeries();
    u64 r = a.residue();
    USeries z = USeries::x(R, L);  // [p^k](x)
    USeries acc(R, L);
    for (int k = 0;; ++k) {
        if (z.is_zero()) break;
        if (k >= a.ctx().N)
            throw PrecisionExhausted("p-adic multiplier needs more than " + std::to_string(a.ctx().N) + " digits");
        u64 digit = r % p;
        r /= p;
        if (digit) acc = substitute2(G.F, acc, compose(small[digit], z));
        z = compose(ps, z);
    }
    return acc;
}

Height height(const FGL& G) {
    USeries ps = m_series(G, (i64)G.p());
    const auto& R = G.ctx.e0;
    for (int j = 0; j < ps.len(); ++j) {
        if (R->residue(ps.at(j)) == 0) continue;
        int n = 0;
        u64 q = 1;
        while (q < (u64)j) { q *= G.p(); ++n; }
        if (q != (u64)j || j == 0)
            throw InvariantViolation("leading term of [p](x) mod m at non-p-power degree " + std::to_string(j));
        return {false, n};
    }
    return {true, 0};
}

FGL build_ptypical(const PrecisionCtx& ctx) {
    FGL G;
    G.ctx = ctx;
    G.log = LogSpec{ctx.n(), false};
    G.F = log_formal_sum(ctx, *G.log, MonoSet::total(2, ctx.Dx));
    G.name = "ptypical";
    return G;
}

FGL build_honda(const PrecisionCtx& ctx) {
    FGL G;
    G.ctx = ctx;
    G.log = LogSpec{ctx.n(), true};
    G.F = log_formal_sum(ctx, *G.log, MonoSet::total(2, ctx.Dx));
    G.name = "honda";
    // [p](x) = l^{-1}(px) +_F x^{p^n}
    int L = ctx.Dx;
    USeries ps = m_series(G, (i64)ctx.p());
    USeries a = log_inverse_linear(ctx, *G.log, (i64)ctx.p(), L);
    u64 pn = 1;
    for (int i = 0; i < ctx.n(); ++i) pn *= ctx.p();
    USeries b = USeries::monomial(L, (int)std::min<u64>(pn, (u64)L), E0Elem(ctx.e0, 1));
    if (substitute2(G.F, a, b) != ps) throw InvariantViolation("Honda p-series identity fails");
    return G;
}

bool pseries_congruence(const USeries& ps, int i, int n, std::string* why) {
    const auto& R = ps.ring();
    u64 p = R->pc().p;
    u64 lo = 1, hi;
    for (int k = 0; k < i; ++k) lo *= p;
    hi = lo * p;
    for (int j = 0; j < ps.len() && (u64)j < hi; ++j) {
        const u64* c = ps.at(j);
        for (int m = 0; m < R->M(); ++m) {
            const auto& e = R->monomials()[m];
            bool killed = false;
            for (int t = 0; t + 1 < i && t < (int)e.size(); ++t) killed = killed || e[t] > 0;
            if (killed) continue;
            u64 want = 0;
            if ((u64)j == lo) {
                bool is_ui;
                if (i == n) is_ui = (m == 0);
                else {
                    is_ui = true;
                    for (int t = 0; t < (int)e.size(); ++t) is_ui = is_ui && e[t] == (t == i - 1 ? 1 : 0);
                }
                want = is_ui ? 1 : 0;
            }
            if (c[m] % p != want) {
                if (why) *why = "coefficient of x^" + std::to_string(j) + " u-monomial " + std::to_string(m);
                return false;
            }
        }
    }
    return true;
}

}  // namespace morava
