#include "morava/glp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace morava {

namespace {

u64 ipow(u64 b, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_prime_power(i64 q) {
    if (q < 2) return false;
    for (i64 f = 2; f * f <= q; ++f) {
        if (q % f) continue;
        while (q % f == 0) q /= f;
        return q == 1;
    }
    return true;
}

i64 checked_pow(i64 q, int k) {
    i64 r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > ((i64)1 << 62) / q) throw Unsupported("q^k overflows 64 bits");
        r *= q;
    }
    return r;
}

// Elementary symmetric functions e_0..e_k of the given elements of a quotient ring.
std::vector<USeries> elementary_of(const QuotientRing& Q, const std::vector<USeries>& z) {
    std::vector<USeries> e(z.size() + 1, USeries(Q.ring(), Q.rank()));
    e[0] = Q.one();
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t k = i + 1; k >= 1; --k) e[k] = e[k] + Q.mul(e[k - 1], z[i]);
    return e;
}

USeries scalar_poly(const E0Ptr& R, const std::vector<u64>& c) {
    USeries r(R, (int)c.size());
    for (size_t i = 0; i < c.size(); ++i) r.at((int)i)[0] = c[i];
    return r;
}

RingElement to_ring_element(const std::string& target, const TensorRing& T, const TensorRing::Elem& a,
                            const std::vector<std::string>& vars) {
    RingElement r;
    r.target = target;
    r.vars = vars;
    r.ranks = T.ranks();
    r.coeffs = a;
    r.pc = T.ring()->pc();
    return r;
}

RingElement to_ring_element(const std::string& target, const QuotientRing& Q, const USeries& a) {
    RingElement r;
    r.target = target;
    r.vars = {Q.var()};
    r.ranks = {Q.rank()};
    r.coeffs.assign(a.raw().begin(), a.raw().begin() + Q.rank());
    r.pc = Q.ring()->pc();
    return r;
}

// ---- series over R = E0[w]/W, scalar E0 ----

struct RAlg {
    PadicCtx pc;
    int r = 0;
    std::vector<std::vector<u64>> pw;  // w^k mod W for k < 2r - 1

    RAlg(const USeries& W) : pc(W.ring()->pc()), r(poly_degree(W)) {
        QuotientRing Q("w", W);
        auto t = Q.power_table(2 * r - 1);
        for (auto& s : t) pw.emplace_back(s.raw().begin(), s.raw().begin() + r);
    }
    std::vector<u64> mul(const u64* a, const u64* b) const {
        std::vector<u64> raw(2 * r - 1, 0), out(r, 0);
        for (int i = 0; i < r; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < r; ++j) raw[i + j] = pc.add(raw[i + j], pc.mul(a[i], b[j]));
        }
        for (int k = 0; k < 2 * r - 1; ++k) {
            if (!raw[k]) continue;
            for (int c = 0; c < r; ++c) out[c] = pc.add(out[c], pc.mul(raw[k], pw[k][c]));
        }
        return out;
    }
    // 1 / a for a unit constant term: a = a0 (1 + n), n nilpotent.
    std::vector<u64> inv(const u64* a, int K) const {
        u64 a0 = pc.inv(a[0]);
        std::vector<u64> nn(r), term(r, 0), res(r, 0);
        for (int i = 0; i < r; ++i) nn[i] = pc.mul(a[i], a0);
        nn[0] = 0;
        for (int i = 0; i < r; ++i) nn[i] = pc.neg(nn[i]);
        term[0] = res[0] = 1;
        for (int k = 1; k <= K; ++k) {
            term = mul(term.data(), nn.data());
            for (int i = 0; i < r; ++i) res[i] = pc.add(res[i], term[i]);
        }
        for (int i = 0; i < r; ++i) res[i] = pc.mul(res[i], a0);
        return res;
    }
};

struct RSer {
    int L = 0, r = 0;
    std::vector<u64> c;
    RSer(int L_, int r_) : L(L_), r(r_), c((size_t)L_ * r_, 0) {}
    u64* at(int i) { return c.data() + (size_t)i * r; }
    const u64* at(int i) const { return c.data() + (size_t)i * r; }
    bool zero_from(int k) const {
        for (size_t i = (size_t)k * r; i < c.size(); ++i)
            if (c[i]) return false;
        return true;
    }
    RSer truncated(int L2) const {
        RSer o(L2, r);
        std::copy(c.begin(), c.begin() + (size_t)std::min(L, L2) * r, o.c.begin());
        return o;
    }
};

RSer rmul(const RAlg& A, const RSer& a, const RSer& b, int L) {
    const int r = A.r;
    const PadicCtx& pc = A.pc;
    std::vector<u64> raw((size_t)L * (2 * r - 1), 0);
    for (int i = 0; i < std::min(a.L, L); ++i) {
        const u64* ai = a.at(i);
        bool z = true;
        for (int s = 0; s < r; ++s) z = z && !ai[s];
        if (z) continue;
        for (int j = 0; j < b.L && i + j < L; ++j) {
            const u64* bj = b.at(j);
            u64* t = raw.data() + (size_t)(i + j) * (2 * r - 1);
            for (int s = 0; s < r; ++s) {
                if (!ai[s]) continue;
                for (int u = 0; u < r; ++u)
                    if (bj[u]) t[s + u] = pc.add(t[s + u], pc.mul(ai[s], bj[u]));
            }
        }
    }
    RSer o(L, r);
    for (int i = 0; i < L; ++i) {
        const u64* t = raw.data() + (size_t)i * (2 * r - 1);
        u64* out = o.at(i);
        for (int k = 0; k < 2 * r - 1; ++k) {
            if (!t[k]) continue;
            for (int s = 0; s < r; ++s) out[s] = pc.add(out[s], pc.mul(t[k], A.pw[k][s]));
        }
    }
    return o;
}

RSer rinv(const RAlg& A, const RSer& f, int K) {
    const PadicCtx& pc = A.pc;
    RSer out(f.L, A.r);
    auto i0 = A.inv(f.at(0), K);
    std::copy(i0.begin(), i0.end(), out.at(0));
    for (int k = 1; k < f.L; ++k) {
        std::vector<u64> acc(A.r, 0);
        for (int j = 1; j <= k; ++j) {
            auto t = A.mul(f.at(j), out.at(k - j));
            for (int s = 0; s < A.r; ++s) acc[s] = pc.add(acc[s], t[s]);
        }
        auto t = A.mul(acc.data(), i0.data());
        for (int s = 0; s < A.r; ++s) out.at(k)[s] = pc.neg(t[s]);
    }
    return out;
}

// f = Q s + r with deg r < p, Q = P_low + x^p U and P_low in m_R[x].
struct DivResult {
    RSer s, rem;
    int valid = 0;  // s correct mod x^valid
    int steps = 0;
};

DivResult divide_by(const RAlg& A, const RSer& f, const RSer& Plow, const RSer& Uinv, int p, int maxsteps) {
    const PadicCtx& pc = A.pc;
    RSer e = f;
    int Le = f.L;
    RSer s(std::max(Le - p, 0), A.r);
    int valid = Le - p, steps = 0;
    while (true) {
        if (Le <= p) throw PrecisionExhausted("x-truncation exhausted while dividing by y");
        if (e.zero_from(p)) break;
        if (steps++ > maxsteps) throw PrecisionExhausted("division by y did not converge");
        RSer hi(Le - p, A.r);
        std::copy(e.c.begin() + (size_t)p * A.r, e.c.begin() + (size_t)Le * A.r, hi.c.begin());
        RSer t = rmul(A, hi, Uinv, Le - p);
        valid = std::min(valid, Le - p);
        for (int i = 0; i < t.L && i < s.L; ++i)
            for (int k = 0; k < A.r; ++k) s.at(i)[k] = pc.add(s.at(i)[k], t.at(i)[k]);
        RSer pt = rmul(A, Plow, t, Le - p);
        RSer ne(Le - p, A.r);
        for (int i = 0; i < Le - p; ++i)
            for (int k = 0; k < A.r; ++k) ne.at(i)[k] = pc.sub(i < p ? e.at(i)[k] : 0, pt.at(i)[k]);
        e = ne;
        Le -= p;
    }
    DivResult d{s.truncated(valid), e.truncated(p), valid, steps};
    return d;
}

std::string sigma_label(const std::vector<int>& b) {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < b.size(); ++i) {
        if (!b[i]) continue;
        if (any) os << "*";
        any = true;
        os << "s" << (i + 1);
        if (b[i] > 1) os << "^" << b[i];
    }
    return any ? os.str() : "1";
}

void enum_exps(int d, int maxtot, std::vector<std::vector<int>>& out) {
    std::vector<int> e(d, 0);
    for (int tot = 0; tot <= maxtot; ++tot) {
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == d - 1) { e[i] = left; out.push_back(e); return; }
            for (int k = left; k >= 0; --k) { e[i] = k; rec(i + 1, left - k); }
        };
        rec(0, tot);
    }
}

}  // namespace

// ---------- parameters ----------

GLpParams GLpParams::make(u64 p, int n, i64 q, int Nout) {
    if (!is_prime(p)) throw BadParams("p must be prime");
    if (n < 1) throw BadParams("height must be positive");
    if (Nout < 1) throw BadParams("output precision must be positive");
    if (!is_prime_power(q)) throw BadParams("q must be a prime power");
    if (q % (i64)p == 0) throw BadParams("q must be coprime to p");
    GLpParams P;
    P.p = p;
    P.n = n;
    P.q = q;
    P.v = vp_int(q - 1, p);
    if (P.v < 1) throw BadParams("v_p(q - 1) must be at least 1");
    if ((double)n * (P.v + 1) * std::log2((double)p) > 40) throw TooLarge("p^{n(v+1)} too large");
    P.pnv = (int)ipow(p, n * P.v);
    u64 top = ipow(p, n * (P.v + 1));
    P.N = (int)((top - (u64)P.pnv) / p);
    P.Nout = Nout;
    P.Nw = Nout + P.predicted_det_val() + 2;
    if (P.Nw > PadicCtx::max_precision(p))
        throw PrecisionExhausted("working precision " + std::to_string(P.Nw) + " exceeds 64-bit residues");
    P.Dx = (P.Nw + 1) * (int)top + 1;
    if (P.Dx > 200000) throw TooLarge("series length " + std::to_string(P.Dx));
    P.ctx = PrecisionCtx(p, P.Nw, n, 1, P.Dx);
    return P;
}

// ---------- D and D^Gamma ----------

std::vector<u64> DModel::coords(const USeries& a) const {
    std::vector<u64> b(Np, 0);
    for (int i = 0; i < Np && i < a.len(); ++i) b[i] = a.at(i)[0];
    auto x = basis->solve(b);
    if (!x) throw BasisFailure("element not in the span of x^i y^j");
    return *x;
}

DModel build_D(const GLpParams& P, const FGL& F) {
    DModel D;
    const auto& R = P.ctx.e0;
    const int L = P.Dx;
    D.p = (int)P.p;
    D.N = P.N;
    D.Np = P.N * (int)P.p;
    D.g_v = pr_weierstrass(F, P.v, L).g;
    D.g_v1 = pr_weierstrass(F, P.v + 1, L).g;
    D.g = poly_exact_div(D.g_v1, D.g_v);
    if (poly_degree(D.g) != D.Np) throw InvariantViolation("deg g differs from N p");
    for (int i = 0; i < D.Np; ++i)
        if (D.g.at(i)[0] % P.p) throw InvariantViolation("g is not x^{Np} mod p");
    if (R->pc().val(D.g.at(0)[0]) != 1) throw InvariantViolation("v_p(g(0)) differs from 1");
    D.ring = QuotientRing("x", D.g);
    D.pv = D.ring.reduce(F.mult_series((i64)ipow(P.p, P.v), L));
    i64 pv = (i64)ipow(P.p, P.v);
    D.y = D.ring.one();
    for (int k = 0; k < (int)P.p; ++k) D.y = D.ring.mul(D.y, D.ring.reduce(F.mult_series(1 + k * pv, L)));
    USeries yq = D.ring.one();
    for (int k = 0; k < (int)P.p; ++k)
        yq = D.ring.mul(yq, D.ring.reduce(F.mult_series(checked_pow(P.q, k), L)));
    if (yq != D.y) throw InvariantViolation("prod [1+kp^v](x) differs from prod [q^k](x) in D");
    D.ypow.push_back(D.ring.one());
    for (int j = 1; j <= P.N; ++j) D.ypow.push_back(D.ring.mul(D.ypow.back(), D.y));
    auto xp = D.ring.power_table((int)P.p);
    ZpMat B(R->pc(), D.Np, D.Np);
    std::vector<std::vector<u64>> rows_mod_p(D.Np, std::vector<u64>(D.Np));
    for (int i = 0; i < (int)P.p; ++i)
        for (int j = 0; j < P.N; ++j) {
            USeries c = D.ring.mul(xp[i], D.ypow[j]);
            for (int k = 0; k < D.Np; ++k) {
                B.at(k, i * P.N + j) = c.at(k)[0];
                rows_mod_p[i * P.N + j][k] = c.at(k)[0] % P.p;
            }
        }
    if (rank_mod_p(rows_mod_p, P.p) != D.Np) throw BasisFailure("{x^i y^j} is not a basis of D mod p");
    D.basis = std::make_shared<ZpSolver>(B);
    if (!D.basis->unit_determinant()) throw BasisFailure("basis matrix is not invertible");
    return D;
}

USeries DGammaModel::to_y(const DModel& D, const USeries& a) const {
    auto c = D.coords(a);
    for (int i = 1; i < D.p; ++i)
        for (int j = 0; j < D.N; ++j)
            if (c[i * D.N + j]) throw NotInGammaInvariants("element has an x^" + std::to_string(i) + " component");
    return scalar_poly(a.ring(), std::vector<u64>(c.begin(), c.begin() + D.N));
}

USeries DGammaModel::lift(const DModel& D, const USeries& ypoly) const {
    USeries r(D.ring.ring(), D.ring.rank());
    for (int j = 0; j < ypoly.len(); ++j) {
        if (ypoly.coeff_zero(j)) continue;
        if (j > D.N) throw InvalidInput("y-polynomial above degree N");
        r = r + D.ypow[j].scaled(ypoly.coeff(j));
    }
    return r;
}

DGammaModel build_D_gamma(const GLpParams& P, const DModel& D) {
    DGammaModel G;
    const auto& R = P.ctx.e0;
    const auto& pc = R->pc();
    auto c = D.coords(D.ypow[P.N]);
    for (int i = 1; i < (int)P.p; ++i)
        for (int j = 0; j < P.N; ++j)
            if (c[i * P.N + j]) throw InvariantViolation("y^N has a nonzero x-component");
    G.h = USeries(R, P.N + 1);
    for (int j = 0; j < P.N; ++j) G.h.at(j)[0] = pc.neg(c[j]);
    G.h.at(P.N)[0] = 1;
    for (int j = 0; j < P.N; ++j)
        if (G.h.at(j)[0] % P.p) throw InvariantViolation("h is not y^N mod p");
    if (pc.val(G.h.at(0)[0]) != 1) throw InvariantViolation("v_p(h(0)) differs from 1");
    if (!G.lift(D, G.h).is_zero()) throw InvariantViolation("h(y) does not vanish in D");
    G.ring = QuotientRing("y", G.h);
    return G;
}

bool RingElement::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](u64 x) { return x == 0; });
}

PsiTarget parse_psi_target(const std::string& s) {
    if (s == "T" || s == "torus") return PsiTarget::T;
    if (s == "SigmaDelta" || s == "sigma-delta") return PsiTarget::SigmaDelta;
    if (s == "A") return PsiTarget::A;
    throw InvalidInput("unknown target '" + s + "' (T, SigmaDelta, A)");
}

PsiGenerator parse_psi_generator(const std::string& s) {
    PsiGenerator g;
    if (s == "d" || s == "c_p" || s == "t") { g.name = s; return g; }
    // b_a1,a2,...
    if (s.rfind("b_", 0) == 0 || s.rfind("b", 0) == 0) {
        std::string rest = s.substr(s[1] == '_' ? 2 : 1);
        if (!rest.empty() && rest.front() == '(') rest = rest.substr(1);
        if (!rest.empty() && rest.back() == ')') rest.pop_back();
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                g.alpha.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw UnknownGenerator("cannot parse '" + s + "'");
            }
        }
        if (g.alpha.empty()) throw UnknownGenerator("b needs an exponent vector");
        g.name = "b";
        return g;
    }
    throw UnknownGenerator("'" + s + "' (d, c_p, b_a1,..,ap, t)");
}

// ---------- chain ----------

GLpChain::GLpChain(GLpParams P, u64 seed) : P_(std::move(P)), seed_(seed) {
    int DxF = 2 * (int)ipow(P_.p, P_.n) + 2;
    F_ = build_honda(PrecisionCtx(P_.ctx.e0, DxF));
    D_ = build_D(P_, F_);
    DG_ = build_D_gamma(P_, D_);
}

const TorusRing& GLpChain::torus() const {
    if (!torus_) torus_.emplace(F_, (int)P_.p, P_.v);
    return *torus_;
}

const SigmaPModel& GLpChain::sigma() const {
    if (!sigma_) sigma_ = sigma_p_ring(F_);
    return *sigma_;
}

USeries GLpChain::alpha_sigma_in_D(int i) const {
    if (i < 1 || i > (int)P_.p) throw IndexOutOfRange("sigma index " + std::to_string(i));
    std::vector<USeries> z;
    for (int k = 0; k < (int)P_.p; ++k) z.push_back(D_.ring.reduce(F_.mult_series(checked_pow(P_.q, k), P_.Dx)));
    return elementary_of(D_.ring, z)[i];
}

USeries GLpChain::alpha_sigma(int i) const { return DG_.to_y(D_, alpha_sigma_in_D(i)); }

TensorRing::Elem GLpChain::beta_sigma(int i) const { return torus().elementary(i); }

USeries GLpChain::alpha_t() const { return DG_.to_y(D_, D_.ring.pow(D_.pv, P_.p)); }

namespace {

// a * sigma_k inside the torus tensor ring
TensorRing::Elem mul_elementary(const TensorRing& T, const TensorRing::Elem& a, int k) {
    TensorRing::Elem r = T.zero();
    int d = T.d();
    for (u64 mask = 0; mask < ((u64)1 << d); ++mask) {
        if (__builtin_popcountll(mask) != k) continue;
        TensorRing::Elem t = a;
        for (int j = 0; j < d; ++j)
            if ((mask >> j) & 1) t = T.mul_var(t, j);
        r = T.add(r, t);
    }
    return r;
}

}  // namespace

PairElem GLpChain::build_t() const {
    if (t_) return *t_;
    const auto& T = torus().tensor();
    const auto& R = P_.ctx.e0;
    PairElem t;
    USeries direct = alpha_t();
    const int K = P_.K(), p = (int)P_.p;
    int Dsym = std::max(P_.pnv * (K + p), D_.Np * K) + 1;
    t.symmetrized = binomial((u64)(Dsym + p - 1), (u64)p) <= 200000;
    if (!t.symmetrized) {
        // restriction of prod [p^v](x_i) to the torus; [p^v](x) is 0 mod g_v
        USeries pvv = QuotientRing("x", D_.g_v).reduce(F_.mult_series((i64)ipow(P_.p, P_.v), P_.Dx));
        if (!pvv.is_zero()) throw InvariantViolation("[p^v](x) does not vanish mod g_v");
        t.left = T.zero();
        t.right = direct;
        t_ = t;
        return t;
    }
    auto S = MonoSet::total(p, Dsym);
    USeries pv = F_.mult_series((i64)ipow(P_.p, P_.v), Dsym);
    MSeries prod = MSeries::constant(R, S, 1);
    for (int i = 0; i < p; ++i) prod = prod * embed(pv, R, S, i);
    SigmaPoly phi = symmetrize_to_elementary(prod);
    std::vector<USeries> as;
    for (int i = 1; i <= p; ++i) as.push_back(alpha_sigma(i));
    std::map<std::vector<int>, std::pair<TensorRing::Elem, USeries>> memo;
    std::function<const std::pair<TensorRing::Elem, USeries>&(const std::vector<int>&)> get =
        [&](const std::vector<int>& b) -> const std::pair<TensorRing::Elem, USeries>& {
        auto it = memo.find(b);
        if (it != memo.end()) return it->second;
        int k = 0;
        while (k < p && b[k] == 0) ++k;
        std::pair<TensorRing::Elem, USeries> val;
        if (k == p) {
            val = {T.one(), DG_.ring.one()};
        } else {
            auto par = b;
            --par[k];
            const auto& pr = get(par);
            val = {mul_elementary(T, pr.first, k + 1), DG_.ring.mul(pr.second, as[k])};
        }
        return memo.emplace(b, std::move(val)).first->second;
    };
    t.left = T.zero();
    t.right = USeries(R, P_.N);
    for (const auto& [b, c] : phi.terms) {
        if (c.is_zero()) continue;
        const auto& v = get(b);
        t.left = T.add(t.left, T.scaled(v.first, c));
        t.right = t.right + v.second.scaled(c);
    }
    if (!T.is_zero(t.left)) throw InvariantViolation("beta(t) is nonzero");
    if (t.right != direct) throw InvariantViolation("alpha(t) differs from [p^v](x)^p");
    t_ = t;
    return t;
}

// ---------- psi images ----------

RingElement GLpChain::psi(const PsiGenerator& gen, PsiTarget target) const {
    const auto& R = P_.ctx.e0;
    const int p = (int)P_.p;
    const auto& pc = R->pc();
    u64 fact = 1;
    for (int i = 2; i < p; ++i) fact *= (u64)i;
    int asum = 0;
    if (gen.name == "b") {
        const auto& a = gen.alpha;
        if ((int)a.size() != p) throw InvalidInput("b_alpha needs p exponents");
        for (int i = 0; i < p; ++i) {
            if (a[i] < 0 || a[i] >= P_.pnv) throw InvalidInput("b_alpha exponent out of range");
            if (i && a[i] < a[i - 1]) throw InvalidInput("b_alpha exponents must be weakly increasing");
            asum += a[i];
        }
        if (a.front() == a.back()) throw InvalidInput("b_alpha needs alpha_1 < alpha_p");
    } else if (gen.name != "d" && gen.name != "c_p" && gen.name != "t") {
        throw UnknownGenerator(gen.name);
    }
    if (target == PsiTarget::T) {
        const auto& T = torus().tensor();
        std::vector<std::string> vars;
        for (int i = 1; i <= p; ++i) vars.push_back("x" + std::to_string(i));
        TensorRing::Elem e = T.zero();
        if (gen.name == "c_p") {
            e = T.one();
            for (int j = 0; j < p; ++j) e = T.mul_var(e, j);
        } else if (gen.name == "b") {
            std::vector<int> perm(p);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<int> ex(p);
                for (int i = 0; i < p; ++i) ex[perm[i]] = gen.alpha[i];
                size_t ix = T.index(ex);
                e[ix] = pc.add(e[ix], 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        } else if (gen.name == "t") {
            e = build_t().left;
        }
        return to_ring_element("T", T, e, vars);
    }
    if (target == PsiTarget::SigmaDelta) {
        const auto& S = sigma();
        QuotientRing X("x", D_.g_v);
        TensorRing T({S.base, X});
        const int rw = S.base.rank(), rx = X.rank();
        auto put = [&](const USeries& wpart, const USeries& xpart) {
            TensorRing::Elem e = T.zero();
            for (int a = 0; a < rw; ++a)
                for (int b = 0; b < rx; ++b) e[(size_t)a * rx + b] = pc.mul(wpart.at(a)[0], xpart.at(b)[0]);
            return e;
        };
        TensorRing::Elem e = T.zero();
        if (gen.name == "d") {
            e = put(S.dElem, X.one());
        } else if (gen.name == "b") {
            USeries xs = X.power_table(asum + 1)[asum];
            e = put(S.transfer_cp.scaled((i64)fact), xs);
        } else if (gen.name == "c_p") {
            // prod_k (x +_F [k](w)); omitted terms lie in m^K
            const int K = P_.K();
            const int Cx = K * rx, Cw = K * rw;
            auto Fb = formal_sum_series(P_.ctx, LogSpec{P_.n, true}, MonoSet::box({Cx, Cw}));
            auto xpow = X.power_table(Cx);
            std::vector<USeries> Gj(Cw, USeries(R, rx));
            const auto& FS = *Fb.shape();
            for (int i = 0; i < FS.size(); ++i) {
                if (Fb.coeff_zero(i)) continue;
                const auto& ex = FS.exps(i);
                Gj[ex[1]] = Gj[ex[1]] + xpow[ex[0]].scaled(Fb.coeff(ex));
            }
            e = T.one();
            for (int k = 0; k < p; ++k) {
                USeries z = S.base.reduce(F_.mult_series(k, std::max(P_.Dx, (K + 1) * rw + 1)));
                TensorRing::Elem fk = T.zero();
                USeries zp = S.base.one();
                for (int j = 0; j < Cw; ++j) {
                    if (j) zp = S.base.mul(zp, z);
                    if (zp.is_zero()) break;
                    fk = T.add(fk, put(zp, Gj[j]));
                }
                e = T.mul(e, fk);
            }
        }
        return to_ring_element("SigmaDelta", T, e, {"w", "x"});
    }
    // A: E0[x]/g_{v+1}
    QuotientRing A("x", D_.g_v1);
    USeries pv = A.reduce(F_.mult_series((i64)ipow(P_.p, P_.v), P_.Dx));
    USeries r(R, A.rank());
    if (gen.name == "d") {
        r = A.pow(pv, P_.p - 1).scaled(-1);
    } else if (gen.name == "c_p") {
        i64 pvi = (i64)ipow(P_.p, P_.v);
        r = A.one();
        for (int k = 0; k < p; ++k) r = A.mul(r, A.reduce(F_.mult_series(1 + k * pvi, P_.Dx)));
    } else if (gen.name == "b") {
        USeries dp = F_.mult_series((i64)P_.p, P_.Dx + 1).shift_down(1).truncated(P_.Dx);
        USeries comp = compose(dp, F_.mult_series((i64)ipow(P_.p, P_.v), P_.Dx));
        r = A.mul(A.reduce(comp), A.power_table(asum + 1)[asum]).scaled((i64)fact);
    } else {
        r = A.pow(pv, P_.p);
    }
    return to_ring_element("A", A, r);
}

// ---------- h(d, y) ----------

H2Series GLpChain::build_h2() const {
    if (h2_) return *h2_;
    if (P_.n != 1) throw Unsupported("the two-variable h is only computed at height 1");
    const auto& R = P_.ctx.e0;
    const auto& pc = R->pc();
    const int p = (int)P_.p;
    const auto& S = sigma();
    RAlg A(S.W);
    const int rw = A.r;
    const int KR = rw * P_.Nw;          // m_R^KR = 0
    const int J = P_.N * P_.Nw;         // y^J vanishes in every target
    const int L0 = J * (KR + 1) * p + 4 * p;

    // F(x, z) = sum_j F_j(x) z^j with z-degree < KR
    auto Fb = formal_sum_series(P_.ctx, LogSpec{P_.n, true}, MonoSet::box({L0, KR}));
    const auto& FS = *Fb.shape();
    std::vector<std::vector<std::pair<int, u64>>> Fj(KR);
    for (int i = 0; i < FS.size(); ++i)
        if (!Fb.coeff_zero(i)) Fj[FS.exps(i)[1]].push_back({FS.exps(i)[0], Fb.at(i)[0]});

    // Q = prod_k (x +_F [k](w)) in R[[x]]
    QuotientRing RW("w", S.W);
    RSer Q(L0, rw);
    Q.at(0)[0] = 1;
    for (int k = 0; k < p; ++k) {
        USeries z = RW.reduce(F_.mult_series(k, std::max(P_.Dx, (P_.K() + 1) * rw + 1)));
        RSer fk(L0, rw);
        std::vector<u64> zp(rw, 0);
        zp[0] = 1;
        for (int j = 0; j < KR; ++j) {
            if (j) zp = A.mul(zp.data(), z.raw().data());
            for (auto [i, c] : Fj[j])
                for (int s = 0; s < rw; ++s) fk.at(i)[s] = pc.add(fk.at(i)[s], pc.mul(c, zp[s]));
        }
        Q = rmul(A, Q, fk, L0);
    }
    // Weierstrass data of Q in degree p
    RSer Plow(p, rw), U(L0 - p, rw);
    std::copy(Q.c.begin(), Q.c.begin() + (size_t)p * rw, Plow.c.begin());
    std::copy(Q.c.begin() + (size_t)p * rw, Q.c.end(), U.c.begin());
    for (int i = 0; i < p; ++i)
        for (int s = 0; s < rw; ++s)
            if (Plow.at(i)[s] % P_.p) throw InvariantViolation("y is not x^p modulo the maximal ideal");
    RSer Uinv = rinv(A, U, KR);

    USeries pvs = F_.mult_series((i64)ipow(P_.p, P_.v), L0);
    RSer f(L0, rw);
    for (int i = 0; i < L0; ++i) f.at(i)[0] = pvs.at(i)[0];
    RSer cur = f;
    std::vector<RSer> digits;
    H2Series H;
    H.pc = pc;
    H.J = J;
    H.x_len = L0;
    for (int j = 0; j < J; ++j) {
        DivResult d = divide_by(A, cur, Plow, Uinv, p, KR + 1);
        H.max_division_steps = std::max(H.max_division_steps, d.steps);
        digits.push_back(d.rem);
        cur = d.s;
    }
    // reconstruction: f = sum_j r_j Q^j + Q^J f_J
    int Lv = cur.L;
    RSer acc = cur.truncated(Lv);
    for (int j = J - 1; j >= 0; --j) {
        acc = rmul(A, acc, Q, Lv);
        for (int i = 0; i < p; ++i)
            for (int s = 0; s < rw; ++s) acc.at(i)[s] = pc.add(acc.at(i)[s], digits[j].at(i)[s]);
    }
    if (acc.c != f.truncated(Lv).c) throw DigitNonvanishing("digit expansion does not reproduce [p^v](x)");
    H.x_valid = Lv;
    H.digits = J;
    H.dcount = S.f_degree;
    H.coeff.assign(J, std::vector<u64>(H.dcount, 0));
    for (int j = 0; j < J; ++j) {
        for (int i = 1; i < p; ++i)
            for (int s = 0; s < rw; ++s)
                if (digits[j].at(i)[s])
                    throw DigitNonvanishing("digit " + std::to_string(j) + " has an x^" + std::to_string(i) + " term");
        for (int s = 0; s < rw; ++s) {
            u64 c = digits[j].at(0)[s];
            if (!c) continue;
            if (s % (p - 1)) throw DigitNonvanishing("digit " + std::to_string(j) + " is not (Z/p)^x-invariant");
            int m = s / (p - 1);
            H.coeff[j][m] = (m % 2) ? pc.neg(c) : c;
        }
    }
    // h(0, s) = s^{p^{nv-1}} mod p
    int e = (int)ipow(P_.p, P_.n * P_.v - 1);
    for (int j = 0; j < J; ++j)
        if (H.coeff[j][0] % P_.p != (u64)(j == e ? 1 : 0))
            throw DigitNonvanishing("h(0, s) differs from s^" + std::to_string(e) + " mod p");
    h2_ = H;
    return H;
}

// ---------- t + d h(d, c_p) ----------

TRelationReport GLpChain::verify_t_relation() const {
    TRelationReport rep;
    const H2Series H = build_h2();
    const auto& R = P_.ctx.e0;
    const auto& pc = R->pc();
    const int p = (int)P_.p;

    // E0(BT): t and d both map to 0
    PairElem t = build_t();
    rep.torus = torus().tensor().is_zero(t.left) && psi({"d", {}}, PsiTarget::T).is_zero() &&
                psi({"t", {}}, PsiTarget::T).is_zero();

    // E0(B(C_p x Delta)) / <p>(w)
    {
        const auto& S = sigma();
        QuotientRing RW("w", S.W), X("x", D_.g_v);
        TensorRing T({RW, X});
        const int rw = RW.rank(), rx = X.rank(), rfull = S.base.rank();
        auto project = [&](const RingElement& e) {
            TensorRing::Elem out = T.zero();
            for (int b = 0; b < rx; ++b) {
                USeries wp(R, rfull);
                for (int a = 0; a < rfull; ++a) wp.at(a)[0] = e.coeffs[(size_t)a * rx + b];
                USeries red = RW.reduce_poly(wp);
                for (int a = 0; a < rw; ++a) out[(size_t)a * rx + b] = red.at(a)[0];
            }
            return out;
        };
        TensorRing::Elem d = project(psi({"d", {}}, PsiTarget::SigmaDelta));
        TensorRing::Elem y = project(psi({"c_p", {}}, PsiTarget::SigmaDelta));
        TensorRing::Elem tt = project(psi({"t", {}}, PsiTarget::SigmaDelta));
        std::vector<TensorRing::Elem> dp{T.one()};
        for (int m = 1; m < H.dcount; ++m) dp.push_back(T.mul(dp.back(), d));
        TensorRing::Elem h = T.zero(), yp = T.one();
        for (int j = 0; j < H.J; ++j) {
            for (int m = 0; m < H.dcount; ++m)
                if (H.coeff[j][m]) h = T.add(h, T.scaled(T.mul(dp[m], yp), E0Elem(R, &H.coeff[j][m])));
            yp = T.mul(yp, y);
        }
        if (!T.is_zero(yp)) throw PrecisionExhausted("y^J does not vanish in E0(B(C_p x Delta))/<p>(w)");
        // h(d, y) is the class of [p^v](x), which is 0 mod g_v
        rep.sigma_delta = T.is_zero(T.add(tt, T.mul(d, h))) && T.is_zero(h);
    }

    // D^Gamma
    {
        const auto& Q = DG_.ring;
        USeries d = DG_.to_y(D_, D_.ring.pow(D_.pv, P_.p - 1).scaled(-1));
        USeries y = alpha_sigma(p);
        std::vector<USeries> dp{Q.one()};
        for (int m = 1; m < H.dcount; ++m) dp.push_back(Q.mul(dp.back(), d));
        USeries h(R, Q.rank()), yp = Q.one();
        for (int j = 0; j < H.J; ++j) {
            for (int m = 0; m < H.dcount; ++m)
                if (H.coeff[j][m]) h = h + Q.mul(dp[m], yp).scaled(E0Elem(R, &H.coeff[j][m]));
            yp = Q.mul(yp, y);
        }
        if (!yp.is_zero()) throw PrecisionExhausted("y^J does not vanish in D^Gamma");
        USeries val = t.right + Q.mul(d, h);
        rep.d_gamma = val.is_zero();
    }
    (void)pc;
    if (!rep.ok())
        throw RelationFailure(std::string("t + d h(d, c_p) nonzero in") + (rep.torus ? "" : " E0(BT)") +
                              (rep.sigma_delta ? "" : " E0(B(C_p x Delta))/<p>(w)") + (rep.d_gamma ? "" : " D^Gamma"));
    return rep;
}

// ---------- structure constants ----------

std::vector<u64> GLPAlgebra::unit(int i) const {
    std::vector<u64> e(rank, 0);
    e[i] = 1 % out.mod;
    return e;
}

std::vector<u64> GLPAlgebra::mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> r(rank, 0);
    std::vector<u128> acc(rank, 0);
    for (int i = 0; i < rank; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < rank; ++j) {
            if (!b[j]) continue;
            u64 ab = out.mul(a[i], b[j]);
            const u64* s = sc.data() + ((size_t)i * rank + j) * rank;
            for (int k = 0; k < rank; ++k)
                if (s[k]) acc[k] += (u128)ab * s[k] % out.mod;
        }
    }
    for (int k = 0; k < rank; ++k) r[k] = (u64)(acc[k] % out.mod);
    return r;
}

std::vector<u64> GLPAlgebra::pow(const std::vector<u64>& a, int e) const {
    std::vector<u64> r = unit(0);
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

GLPAlgebra GLpChain::algebra() const {
    const auto& R = P_.ctx.e0;
    const auto& pc = R->pc();
    const int p = (int)P_.p, N = P_.N;
    const TorusRing& TR = torus();
    const auto& T = TR.tensor();
    const auto& Q = DG_.ring;

    GLPAlgebra G;
    G.p = P_.p;
    G.n = P_.n;
    G.v = P_.v;
    G.q = P_.q;
    G.N = N;
    G.pnv = P_.pnv;
    G.Nw = P_.Nw;
    G.sigma_exps = TR.sigma_basis();
    G.rank_T = TR.rank();
    G.rank = G.rank_T + N;
    for (auto& b : G.sigma_exps) G.labels.push_back(sigma_label(b));
    for (int i = 0; i < N; ++i) G.labels.push_back(i == 0 ? "t" : (i == 1 ? "t*c" : "t*c^" + std::to_string(i)));
    std::vector<int> cp(p, 0);
    cp[p - 1] = 1;
    G.cp_index = (int)(std::find(G.sigma_exps.begin(), G.sigma_exps.end(), cp) - G.sigma_exps.begin());
    G.t_index = G.rank_T;

    // beta side: sigma-monomial coordinates from orbit coordinates
    ZpSolver Cs(TR.change_of_basis());
    G.beta_surjective = Cs.unit_determinant();
    if (!G.beta_surjective) throw BasisFailure("sigma-monomials do not span the torus invariants");

    // alpha side
    std::vector<USeries> as;
    for (int i = 1; i <= p; ++i) as.push_back(alpha_sigma(i));
    G.alpha_hits_y = as[p - 1] == Q.gen().truncated(Q.rank());
    USeries at = build_t().right;
    std::vector<USeries> yp{Q.one()};
    for (int i = 1; i < 2 * N; ++i) yp.push_back(Q.mul(yp.back(), Q.gen()));
    ZpMat Mt(pc, N, N);
    for (int i = 0; i < N; ++i) {
        USeries c = Q.mul(at, yp[i]);
        for (int k = 0; k < N; ++k) Mt.at(k, i) = c.at(k)[0];
    }
    ZpSolver MtS(Mt);
    G.Mt_independent = MtS.full_rank() && MtS.det_valuation() < P_.Nw;
    if (!G.Mt_independent) throw SingularMt("multiplication by alpha(t) is not injective at this precision");
    G.det_Mt_val = MtS.det_valuation();
    G.Mt_max_pivot = MtS.max_pivot_valuation();
    int digits = P_.Nw - G.Mt_max_pivot;
    if (digits < P_.Nout) throw PrecisionExhausted("division by alpha(t) leaves " + std::to_string(digits) + " digits");
    G.out = PadicCtx(P_.p, P_.Nout);

    // sigma^delta for |delta| <= 2 (p^{nv} - 1)
    std::vector<std::vector<int>> deltas;
    enum_exps(p, 2 * (P_.pnv - 1), deltas);
    std::map<std::vector<int>, int> didx;
    for (size_t i = 0; i < deltas.size(); ++i) didx[deltas[i]] = (int)i;
    std::vector<TensorRing::Elem> Lft(deltas.size());
    std::vector<USeries> Rgt(deltas.size());
    for (size_t i = 0; i < deltas.size(); ++i) {
        const auto& b = deltas[i];
        int k = 0;
        while (k < p && b[k] == 0) ++k;
        if (k == p) { Lft[i] = T.one(); Rgt[i] = Q.one(); continue; }
        auto par = b;
        --par[k];
        int j = didx.at(par);
        Lft[i] = mul_elementary(T, Lft[j], k + 1);
        Rgt[i] = Q.mul(Rgt[j], as[k]);
    }
    std::vector<int> basis_delta;
    for (auto& b : G.sigma_exps) basis_delta.push_back(didx.at(b));

    auto reduce_out = [&](u64 x) { return x % G.out.mod; };
    auto y_coords = [&](const USeries& a) {
        std::vector<u64> c(G.rank, 0);
        for (int k = 0; k < N; ++k) c[G.rank_T + k] = reduce_out(a.at(k)[0]);
        return c;
    };
    // coordinates of a pair (left symmetric, right in D^Gamma) on S
    auto pair_coords = [&](const TensorRing::Elem& left, const USeries& right, std::vector<u64>* exact_a) {
        auto oc = TR.orbit_coords(left);
        auto a = Cs.solve(oc);
        if (!a) throw ReductionFailure("left component outside the sigma-span");
        TensorRing::Elem lrem = left;
        USeries rrem = right;
        for (int b = 0; b < G.rank_T; ++b) {
            u64 c = (*a)[b];
            if (!c) continue;
            lrem = T.sub(lrem, T.scaled(Lft[basis_delta[b]], E0Elem(R, &c)));
            rrem = rrem - Rgt[basis_delta[b]].scaled(E0Elem(R, &c));
        }
        if (!T.is_zero(lrem)) throw ReductionFailure("remainder has a nonzero torus component");
        std::vector<u64> rv(N);
        for (int k = 0; k < N; ++k) rv[k] = rrem.at(k)[0];
        auto c = MtS.solve(rv);
        if (!c) throw ReductionFailure("remainder is not divisible by alpha(t)");
        std::vector<u64> out(G.rank, 0);
        for (int b = 0; b < G.rank_T; ++b) out[b] = reduce_out((*a)[b]);
        for (int k = 0; k < N; ++k) out[G.rank_T + k] = reduce_out((*c)[k]);
        if (exact_a) *exact_a = *a;
        return out;
    };

    std::vector<std::vector<u64>> dcoords(deltas.size());
    for (size_t i = 0; i < deltas.size(); ++i) dcoords[i] = pair_coords(Lft[i], Rgt[i], nullptr);

    const int r = G.rank;
    G.sc.assign((size_t)r * r * r, 0);
    auto put = [&](int a, int b, const std::vector<u64>& c) {
        std::copy(c.begin(), c.end(), G.sc.begin() + ((size_t)a * r + b) * r);
    };
    for (int a = 0; a < G.rank_T; ++a)
        for (int b = 0; b < G.rank_T; ++b) {
            std::vector<int> s(p);
            for (int k = 0; k < p; ++k) s[k] = G.sigma_exps[a][k] + G.sigma_exps[b][k];
            put(a, b, dcoords[didx.at(s)]);
        }
    for (int a = 0; a < G.rank_T; ++a)
        for (int i = 0; i < N; ++i) {
            auto c = y_coords(Q.mul(yp[i], Rgt[basis_delta[a]]));
            put(a, G.rank_T + i, c);
            put(G.rank_T + i, a, c);
        }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) put(G.rank_T + i, G.rank_T + j, y_coords(Q.mul(at, Q.mul(yp[i], yp[j]))));

    // alpha image of a coordinate vector (output precision)
    auto alpha_image = [&](const std::vector<u64>& z) {
        USeries s(R, N);
        for (int b = 0; b < G.rank_T; ++b)
            if (z[b]) s = s + Rgt[basis_delta[b]].scaled(E0Elem(R, &z[b]));
        for (int k = 0; k < N; ++k)
            if (z[G.rank_T + k]) s = s + Q.mul(at, yp[k]).scaled(E0Elem(R, &z[G.rank_T + k]));
        return s.recast(R->with_precision(P_.Nout));
    };

    // ker(alpha) generators: h(c_p) and sigma_i - P_i(c_p)
    std::vector<u64> c = G.unit(G.cp_index);
    std::vector<std::vector<u64>> cpow{G.unit(0)};
    for (int j = 1; j <= N; ++j) cpow.push_back(G.mul(cpow.back(), c));
    auto poly_in_c = [&](const USeries& f) {
        std::vector<u64> z(r, 0);
        for (int j = 0; j < f.len() && j <= N; ++j) {
            u64 a = reduce_out(f.at(j)[0]);
            if (!a) continue;
            for (int k = 0; k < r; ++k) z[k] = G.out.add(z[k], G.out.mul(a, cpow[j][k]));
        }
        return z;
    };
    std::vector<std::vector<u64>> kgens{poly_in_c(DG_.h)};
    for (int i = 1; i < p; ++i) {
        std::vector<int> e(p, 0);
        e[i - 1] = 1;
        int idx = (int)(std::find(G.sigma_exps.begin(), G.sigma_exps.end(), e) - G.sigma_exps.begin());
        auto z = G.unit(idx), pz = poly_in_c(as[i - 1]);
        for (int k = 0; k < r; ++k) z[k] = G.out.sub(z[k], pz[k]);
        kgens.push_back(z);
    }
    G.ker_product_zero = true;
    for (auto& z : kgens) {
        if (!alpha_image(z).is_zero()) throw InvariantViolation("ker(alpha) generator has nonzero alpha image");
        for (int b = 0; b < G.rank_T; ++b) {
            auto zb = G.mul(z, G.unit(b));
            for (int i = 0; i < N; ++i) {
                auto prod = G.mul(zb, G.unit(G.rank_T + i));
                ++G.ker_products_checked;
                if (std::any_of(prod.begin(), prod.end(), [](u64 x) { return x != 0; })) G.ker_product_zero = false;
            }
        }
    }

    // rational preimages of scaled random pairs
    std::mt19937_64 rng(seed_);
    G.rational_trials = 20;
    u64 scale = pc.pk(G.det_Mt_val);
    for (int trial = 0; trial < G.rational_trials; ++trial) {
        TensorRing::Elem left = T.zero();
        std::vector<u64> oc(TR.orbit_basis().size());
        for (auto& x : oc) x = pc.mul(rng() % pc.mod, scale);
        for (size_t i = 0; i < T.dim(); ++i) {
            auto e = T.exps(i);
            std::sort(e.begin(), e.end());
            size_t k = std::find(TR.orbit_basis().begin(), TR.orbit_basis().end(), e) - TR.orbit_basis().begin();
            left[i] = oc[k];
        }
        USeries right(R, N);
        for (int k = 0; k < N; ++k) right.at(k)[0] = pc.mul(rng() % pc.mod, scale);
        try {
            pair_coords(left, right, nullptr);
            ++G.rational_preimages;
        } catch (const ReductionFailure&) {
        }
    }
    G.h_coeffs.resize(N + 1);
    for (int j = 0; j <= N; ++j) G.h_coeffs[j] = reduce_out(DG_.h.at(j)[0]);
    return G;
}

KAlgebra k_reduce(const GLPAlgebra& A) {
    const int r = A.rank;
    const u64 p = A.p;
    std::vector<std::vector<u64>> table((size_t)r * r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            auto& t = table[(size_t)a * r + b];
            t.resize(r);
            const u64* s = A.sc.data() + ((size_t)a * r + b) * r;
            for (int k = 0; k < r; ++k) t[k] = s[k] % p;
        }
    FiniteAlgebra K(p, A.labels, std::move(table));
    KReport rep;
    rep.expected_index = A.N + A.pnv - 1;
    auto nz = [](const std::vector<u64>& v) { return std::any_of(v.begin(), v.end(), [](u64 x) { return x != 0; }); };
    std::vector<u64> c(r, 0), one(r, 0);
    c[A.cp_index] = 1;
    one[0] = 1;
    std::vector<std::vector<u64>> pw{one};
    int limit = rep.expected_index + 2 * A.pnv + 4;
    for (int k = 1; k <= limit; ++k) {
        pw.push_back(K.mul(pw.back(), c));
        if (!nz(pw.back())) { rep.first_vanishing = k; break; }
    }
    auto power = [&](int k) {
        return k < (int)pw.size() ? pw[k] : std::vector<u64>(r, 0);
    };
    rep.top_nonzero = nz(power(rep.expected_index));
    rep.next_zero = !nz(power(rep.expected_index + 1));
    std::vector<u64> cP = power(A.pnv);
    std::vector<std::vector<u64>> ideal;
    for (int b = 0; b < r; ++b) {
        std::vector<u64> e(r, 0);
        e[b] = 1;
        ideal.push_back(K.mul(cP, e));
    }
    rep.ideal_dim = rank_mod_p(ideal, p);
    std::vector<std::vector<u64>> cyc;
    for (int i = 0; i < A.N; ++i) cyc.push_back(power(A.pnv + i));
    auto both = ideal;
    both.insert(both.end(), cyc.begin(), cyc.end());
    rep.ideal_cyclic = rep.ideal_dim == A.N && rank_mod_p(cyc, p) == A.N && rank_mod_p(both, p) == A.N;
    std::vector<u64> t(r, 0);
    t[A.t_index] = 1;
    rep.t_equals_power = t == cP;
    return KAlgebra{std::move(K), rep};
}

// ---------- CRT witness ----------

CRTWitness GLpChain::crt_witness() const {
    const auto& R = P_.ctx.e0;
    const auto& pc = R->pc();
    const USeries& gv = D_.g_v;
    const USeries& g = D_.g;
    const int a = D_.Np, b = P_.pnv, n = a + b;
    ZpMat S(pc, n, n);
    for (int i = 0; i < a; ++i)
        for (int k = 0; k <= b; ++k) S.at(i + k, i) = gv.at(k)[0];
    for (int j = 0; j < b; ++j)
        for (int k = 0; k <= a; ++k) S.at(j + k, a + j) = g.at(k)[0];
    ZpSolver sol(S);
    std::vector<u64> rhs(n, 0);
    rhs[0] = pc.from_int((i64)P_.p);
    auto x = sol.solve(rhs);
    if (!x) throw WitnessNotFound("p is not in (g_v, g) at this precision");
    CRTWitness W;
    W.slack = sol.max_pivot_valuation();
    W.digits = P_.Nw - W.slack;
    W.A = USeries(R, a);
    W.B = USeries(R, b);
    for (int i = 0; i < a; ++i) W.A.at(i)[0] = (*x)[i];
    for (int j = 0; j < b; ++j) W.B.at(j)[0] = (*x)[a + j];
    USeries lhs = poly_mul(W.A, gv) + poly_mul(W.B, g);
    u64 m = pc.pk(W.digits);
    W.identity_ok = true;
    for (int i = 0; i < lhs.len(); ++i) {
        u64 want = i == 0 ? pc.from_int((i64)P_.p) : 0;
        if (lhs.at(i)[0] % m != want % m) W.identity_ok = false;
    }
    W.value_at_zero = pc.add(pc.mul(W.A.at(0)[0], gv.at(0)[0]), pc.mul(W.B.at(0)[0], g.at(0)[0]));
    // canonical witness: <p>([p^v](x)) - p vanishes mod g_v
    USeries dp = F_.mult_series((i64)P_.p, P_.Dx + 1).shift_down(1).truncated(P_.Dx);
    USeries comp = compose(dp, F_.mult_series((i64)ipow(P_.p, P_.v), P_.Dx));
    comp.at(0)[0] = pc.sub(comp.at(0)[0], pc.from_int((i64)P_.p));
    W.canonical_ok = reduce_series(comp, gv).is_zero();
    if (!W.identity_ok) throw WitnessNotFound("Bezout identity fails after solving");
    return W;
}

}  // namespace morava
