#include "morava/series.hpp"

#include <algorithm>
#include <functional>

namespace morava {

// ---------- kernels ----------

template <bool FAST>
static void umul(const E0Ring& R, const u64* a, int la, const u64* b, int lb, u64* out, int lout) {
    const int M = R.M();
    const u64 mod = R.pc().mod;
    std::vector<u128> acc((size_t)lout * M, 0);
    int ia = std::min(la, lout);
    if (M == 1) {
        for (int i = 0; i < ia; ++i) {
            u64 ai = a[i];
            if (!ai) continue;
            int jm = std::min(lb, lout - i);
            u128* ac = acc.data() + i;
            for (int j = 0; j < jm; ++j) {
                if constexpr (FAST) ac[j] += (u128)ai * b[j];
                else ac[j] += (u128)ai * b[j] % mod;
            }
        }
    } else {
        const auto& tab = R.table();
        for (int i = 0; i < ia; ++i) {
            const u64* ai = a + (size_t)i * M;
            if (R.is_zero(ai)) continue;
            int jm = std::min(lb, lout - i);
            for (int j = 0; j < jm; ++j) {
                const u64* bj = b + (size_t)j * M;
                u128* ac = acc.data() + (size_t)(i + j) * M;
                for (const auto& t : tab) {
                    if constexpr (FAST) ac[t.c] += (u128)ai[t.a] * bj[t.b];
                    else ac[t.c] += (u128)ai[t.a] * bj[t.b] % mod;
                }
            }
        }
    }
    for (size_t k = 0; k < acc.size(); ++k) out[k] = (u64)(acc[k] % mod);
}

void series_mul_into(const E0Ring& R, const u64* a, int la, const u64* b, int lb, u64* out, int lout) {
    if (R.fast()) umul<true>(R, a, la, b, lb, out, lout);
    else umul<false>(R, a, la, b, lb, out, lout);
}

static void check_ring(const E0Ptr& a, const E0Ptr& b) {
    if (a != b && !(*a == *b)) throw CtxMismatch("series over different coefficient rings");
}

// ---------- USeries ----------

USeries USeries::x(E0Ptr R, int len) {
    USeries s(std::move(R), len);
    if (len > 1) s.at(1)[0] = 1;
    return s;
}

USeries USeries::constant(E0Ptr R, int len, i64 v) {
    USeries s(R, len);
    if (len > 0) s.at(0)[0] = R->pc().from_int(v);
    return s;
}

USeries USeries::constant(int len, const E0Elem& v) {
    USeries s(v.ring(), len);
    if (len > 0) s.set(0, v);
    return s;
}

USeries USeries::monomial(int len, int k, const E0Elem& v) {
    USeries s(v.ring(), len);
    if (k < len) s.set(k, v);
    return s;
}

void USeries::set(int i, const E0Elem& v) {
    std::copy(v.coeffs().begin(), v.coeffs().end(), at(i));
}

bool USeries::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

int USeries::order() const {
    for (int i = 0; i < len_; ++i)
        if (!coeff_zero(i)) return i;
    return len_;
}

USeries USeries::operator+(const USeries& o) const {
    check_ring(R_, o.R_);
    int L = std::min(len_, o.len_);
    USeries r(R_, L);
    const auto& pc = R_->pc();
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = pc.add(c_[k], o.c_[k]);
    return r;
}

USeries USeries::operator-(const USeries& o) const {
    check_ring(R_, o.R_);
    int L = std::min(len_, o.len_);
    USeries r(R_, L);
    const auto& pc = R_->pc();
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = pc.sub(c_[k], o.c_[k]);
    return r;
}

USeries USeries::operator-() const {
    USeries r(R_, len_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = R_->pc().neg(c_[k]);
    return r;
}

USeries USeries::operator*(const USeries& o) const {
    check_ring(R_, o.R_);
    int L = std::min(len_, o.len_);
    USeries r(R_, L);
    series_mul_into(*R_, c_.data(), len_, o.c_.data(), o.len_, r.c_.data(), L);
    return r;
}

USeries USeries::scaled(const E0Elem& a) const {
    USeries r(R_, len_);
    for (int i = 0; i < len_; ++i) R_->mul(r.at(i), a.data(), at(i));
    return r;
}

USeries USeries::scaled(i64 a) const {
    u64 s = R_->pc().from_int(a);
    USeries r(R_, len_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = R_->pc().mul(s, c_[k]);
    return r;
}

USeries USeries::truncated(int L) const {
    USeries r(R_, L);
    size_t n = (size_t)std::min(L, len_) * R_->M();
    std::copy(c_.begin(), c_.begin() + n, r.c_.begin());
    return r;
}

USeries USeries::shift_down(int k) const {
    int L = std::max(0, len_ - k);
    USeries r(R_, L);
    std::copy(c_.begin() + (size_t)k * R_->M(), c_.end(), r.c_.begin());
    return r;
}

USeries USeries::shift_up(int k) const {
    USeries r(R_, len_);
    int M = R_->M();
    for (int i = 0; i + k < len_; ++i) std::copy(at(i), at(i) + M, r.at(i + k));
    return r;
}

USeries USeries::derivative() const {
    USeries r(R_, len_);
    const auto& pc = R_->pc();
    for (int i = 1; i < len_; ++i)
        for (int m = 0; m < R_->M(); ++m) r.at(i - 1)[m] = pc.mul(at(i)[m], pc.from_int(i));
    return r;
}

USeries USeries::pow(u64 e) const {
    USeries r = constant(R_, len_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

USeries USeries::recast(E0Ptr R2) const {
    if (!R2->same_shape(*R_)) throw CtxMismatch("recast between different E0 shapes");
    USeries r(R2, len_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] % R2->pc().mod;
    return r;
}

USeries compose(const USeries& f, const USeries& g) {
    if (g.len() > 0 && !g.coeff_zero(0)) throw NonzeroConstant("compose needs g(0) = 0");
    int L = std::min(f.len(), g.len());
    USeries r(f.ring(), L);
    for (int k = L - 1; k >= 0; --k) {
        r = r * g;
        const u64* fk = f.at(k);
        for (int m = 0; m < f.M(); ++m) r.at(0)[m] = f.ring()->pc().add(r.at(0)[m], fk[m]);
    }
    return r;
}

USeries unit_invert(const USeries& f) {
    if (f.len() == 0) return f;
    if (!f.ring()->is_unit(f.at(0))) throw NonUnit("series constant term is not a unit");
    E0Elem c0 = f.coeff(0).inv();
    int L = f.len();
    USeries g = USeries::constant(L, c0);
    for (int K = 1; K < L;) {
        K = std::min(2 * K, L);
        USeries fk = f.truncated(K), gk = g.truncated(K);
        gk = gk * (USeries::constant(f.ring(), K, 2) - fk * gk);
        g = gk.truncated(L);
    }
    return g;
}

USeries reversion(const USeries& f) {
    int L = f.len();
    if (L < 2) return f;
    if (!f.coeff_zero(0)) throw NonzeroConstant("reversion needs f(0) = 0");
    if (!f.ring()->is_unit(f.at(1))) throw NonUnitLinearTerm("linear coefficient is not a unit");
    E0Elem a1inv = f.coeff(1).inv();
    USeries g = USeries::monomial(L, 1, a1inv);
    USeries fd = f.derivative();
    for (int K = 2; K < L;) {
        K = std::min(2 * K, L);
        USeries gk = g.truncated(K), fk = f.truncated(K);
        USeries err = compose(fk, gk) - USeries::x(f.ring(), K);
        USeries d = compose(fd.truncated(K), gk);
        gk = gk - err * unit_invert(d);
        g = gk.truncated(L);
    }
    return g;
}

// ---------- MonoSet ----------

static void enum_total(int d, int Dx, std::vector<std::vector<int>>& out) {
    std::vector<int> e(d, 0);
    for (int deg = 0; deg < Dx; ++deg) {
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == d - 1) { e[i] = left; out.push_back(e); return; }
            for (int k = left; k >= 0; --k) { e[i] = k; rec(i + 1, left - k); }
        };
        rec(0, deg);
    }
}

std::shared_ptr<const MonoSet> MonoSet::total(int d, int Dx) {
    if (d < 1 || Dx < 1) throw InvalidInput("monomial set needs d >= 1, Dx >= 1");
    auto S = std::make_shared<MonoSet>();
    S->d_ = d;
    S->totcap_ = Dx;
    S->caps_.assign(d, Dx);
    enum_total(d, Dx, S->exps_);
    S->build();
    return S;
}

std::shared_ptr<const MonoSet> MonoSet::box(const std::vector<int>& caps) {
    auto S = std::make_shared<MonoSet>();
    S->d_ = (int)caps.size();
    S->box_ = true;
    S->caps_ = caps;
    int tot = 1;
    for (int c : caps) tot += c - 1;
    S->totcap_ = tot;
    std::vector<std::vector<int>> all;
    enum_total(S->d_, tot, all);
    for (auto& e : all) {
        bool ok = true;
        for (int k = 0; k < S->d_; ++k) ok = ok && e[k] < caps[k];
        if (ok) S->exps_.push_back(e);
    }
    S->build();
    return S;
}

void MonoSet::build() {
    deg_.clear();
    for (auto& e : exps_) {
        int s = 0;
        for (int x : e) s += x;
        deg_.push_back(s);
    }
    prefix_.assign(totcap_ + 1, 0);
    for (int k = 0; k <= totcap_; ++k)
        prefix_[k] = (int)(std::lower_bound(deg_.begin(), deg_.end(), k) - deg_.begin());
    radix_.assign(d_, 1);
    u64 r = 1;
    for (int k = 0; k < d_; ++k) { radix_[k] = r; r *= (u64)caps_[k]; }
    if (r > ((u64)1 << 27)) throw TooLarge("monomial lookup table too large");
    lookup_.assign(r, -1);
    code_.resize(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i) {
        u64 c = 0;
        for (int k = 0; k < d_; ++k) c += (u64)exps_[i][k] * radix_[k];
        code_[i] = c;
        lookup_[c] = (int)i;
    }
}

int MonoSet::prefix(int k) const {
    if (k <= 0) return 0;
    if (k >= totcap_) return size();
    return prefix_[k];
}

int MonoSet::index(const std::vector<int>& e) const {
    if ((int)e.size() != d_) return -1;
    u64 c = 0;
    int s = 0;
    for (int k = 0; k < d_; ++k) {
        if (e[k] < 0 || e[k] >= caps_[k]) return -1;
        c += (u64)e[k] * radix_[k];
        s += e[k];
    }
    if (s >= totcap_) return -1;
    return lookup_[c];
}

// ---------- MSeries ----------

template <bool FAST>
static void mmul(const E0Ring& R, const MonoSet& S, const u64* a, const u64* b, u64* out) {
    const int M = R.M();
    const u64 mod = R.pc().mod;
    const int T = S.size();
    std::vector<u128> acc((size_t)T * M, 0);
    std::vector<int> nzb;
    for (int j = 0; j < T; ++j)
        if (!R.is_zero(b + (size_t)j * M)) nzb.push_back(j);
    const auto& tab = R.table();
    for (int i = 0; i < T; ++i) {
        const u64* ai = a + (size_t)i * M;
        if (R.is_zero(ai)) continue;
        int lim = S.totcap() - S.deg(i);
        for (int j : nzb) {
            if (S.deg(j) >= lim) break;
            int k = S.sum_index(i, j);
            if (k < 0) continue;
            const u64* bj = b + (size_t)j * M;
            u128* ac = acc.data() + (size_t)k * M;
            if (M == 1) {
                if constexpr (FAST) ac[0] += (u128)ai[0] * bj[0];
                else ac[0] += (u128)ai[0] * bj[0] % mod;
            } else {
                for (const auto& t : tab) {
                    if constexpr (FAST) ac[t.c] += (u128)ai[t.a] * bj[t.b];
                    else ac[t.c] += (u128)ai[t.a] * bj[t.b] % mod;
                }
            }
        }
    }
    for (size_t k = 0; k < acc.size(); ++k) out[k] = (u64)(acc[k] % mod);
}

static void check_shape(const MSeries& a, const MSeries& b) {
    check_ring(a.ring(), b.ring());
    if (a.shape() != b.shape()) throw CtxMismatch("series over different monomial sets");
}

MSeries MSeries::var(E0Ptr R, MonoPtr S, int i) {
    MSeries s(R, S);
    std::vector<int> e(S->d(), 0);
    e[i] = 1;
    int k = S->index(e);
    if (k >= 0) s.at(k)[0] = 1;
    return s;
}

MSeries MSeries::constant(E0Ptr R, MonoPtr S, i64 v) {
    MSeries s(R, S);
    s.at(0)[0] = R->pc().from_int(v);
    return s;
}

E0Elem MSeries::coeff(const std::vector<int>& e) const {
    int k = S_->index(e);
    if (k < 0) return E0Elem(R_);
    return E0Elem(R_, at(k));
}

void MSeries::set(const std::vector<int>& e, const E0Elem& v) {
    int k = S_->index(e);
    if (k < 0) return;
    std::copy(v.coeffs().begin(), v.coeffs().end(), at(k));
}

void MSeries::add_term(const std::vector<int>& e, const E0Elem& v) {
    int k = S_->index(e);
    if (k < 0) return;
    for (int m = 0; m < R_->M(); ++m) at(k)[m] = R_->pc().add(at(k)[m], v.coeffs()[m]);
}

bool MSeries::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

MSeries MSeries::operator+(const MSeries& o) const {
    check_shape(*this, o);
    MSeries r(R_, S_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = R_->pc().add(c_[k], o.c_[k]);
    return r;
}

MSeries MSeries::operator-(const MSeries& o) const {
    check_shape(*this, o);
    MSeries r(R_, S_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = R_->pc().sub(c_[k], o.c_[k]);
    return r;
}

MSeries MSeries::operator-() const {
    MSeries r(R_, S_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = R_->pc().neg(c_[k]);
    return r;
}

MSeries MSeries::operator*(const MSeries& o) const {
    check_shape(*this, o);
    MSeries r(R_, S_);
    if (R_->fast()) mmul<true>(*R_, *S_, c_.data(), o.c_.data(), r.c_.data());
    else mmul<false>(*R_, *S_, c_.data(), o.c_.data(), r.c_.data());
    return r;
}

MSeries MSeries::scaled(const E0Elem& a) const {
    MSeries r(R_, S_);
    for (int i = 0; i < S_->size(); ++i) R_->mul(r.at(i), a.data(), at(i));
    return r;
}

MSeries MSeries::pow(u64 e) const {
    MSeries r = constant(R_, S_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

MSeries MSeries::truncated_total(int K) const {
    MSeries r = *this;
    int from = S_->prefix(K);
    std::fill(r.c_.begin() + (size_t)from * R_->M(), r.c_.end(), 0);
    return r;
}

MSeries MSeries::unit_invert() const {
    if (!R_->is_unit(at(0))) throw NonUnit("series constant term is not a unit");
    MSeries g(R_, S_);
    E0Elem c0 = E0Elem(R_, at(0)).inv();
    std::copy(c0.coeffs().begin(), c0.coeffs().end(), g.at(0));
    MSeries two = constant(R_, S_, 2);
    for (int K = 1; K < S_->totcap();) {
        K = std::min(2 * K, S_->totcap());
        MSeries fk = truncated_total(K);
        g = (g * (two - fk * g)).truncated_total(K);
    }
    return g;
}

MSeries MSeries::recast(E0Ptr R2) const {
    if (!R2->same_shape(*R_)) throw CtxMismatch("recast between different E0 shapes");
    MSeries r(R2, S_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] % R2->pc().mod;
    return r;
}

MSeries MSeries::permuted(const std::vector<int>& perm) const {
    MSeries r(R_, S_);
    int d = S_->d();
    std::vector<int> e(d);
    for (int i = 0; i < S_->size(); ++i) {
        const auto& a = S_->exps(i);
        for (int k = 0; k < d; ++k) e[perm[k]] = a[k];
        int j = S_->index(e);
        if (j < 0) continue;
        std::copy(at(i), at(i) + R_->M(), r.at(j));
    }
    return r;
}

MSeries embed(const USeries& f, E0Ptr R, MonoPtr S, int i) {
    MSeries r(R, S);
    std::vector<int> e(S->d(), 0);
    for (int k = 0; k < f.len(); ++k) {
        e[i] = k;
        int j = S->index(e);
        if (j < 0) continue;
        std::copy(f.at(k), f.at(k) + R->M(), r.at(j));
    }
    return r;
}

MSeries substitute(const MSeries& F, const std::vector<MSeries>& args) {
    const auto& S = args.at(0).shape();
    const auto& R = args[0].ring();
    int k = F.arity();
    if ((int)args.size() != k) throw InvalidInput("substitute: wrong number of arguments");
    for (auto& a : args)
        if (!a.coeff_zero(0)) throw NonzeroConstant("substituted series must vanish at 0");
    const auto& FS = *F.shape();
    int top0 = 0;
    std::vector<int> maxe(k, 0);
    for (int i = 0; i < FS.size(); ++i) {
        if (F.coeff_zero(i)) continue;
        for (int v = 0; v < k; ++v) maxe[v] = std::max(maxe[v], FS.exps(i)[v]);
    }
    top0 = maxe[0];
    // powers of args[1..]
    std::vector<std::vector<MSeries>> pw(k);
    for (int v = 1; v < k; ++v) {
        pw[v].push_back(MSeries::constant(R, S, 1));
        for (int e = 1; e <= std::min(maxe[v], S->totcap()); ++e) pw[v].push_back(pw[v].back() * args[v]);
    }
    // G_i = sum over terms with x_0-exponent i of c * prod pw
    std::vector<MSeries> G(top0 + 1, MSeries(R, S));
    for (int i = 0; i < FS.size(); ++i) {
        if (F.coeff_zero(i)) continue;
        const auto& e = FS.exps(i);
        bool vanish = false;
        for (int v = 1; v < k; ++v) vanish = vanish || e[v] >= (int)pw[v].size();
        if (vanish) continue;
        E0Elem c(R, F.at(i));
        if (k == 1) {
            G[e[0]] = G[e[0]] + MSeries::constant(R, S, 1).scaled(c);
        } else if (k == 2) {
            G[e[0]] = G[e[0]] + pw[1][e[1]].scaled(c);
        } else {
            MSeries t = pw[1][e[1]];
            for (int v = 2; v < k; ++v) t = t * pw[v][e[v]];
            G[e[0]] = G[e[0]] + t.scaled(c);
        }
    }
    MSeries r(R, S);
    for (int i = top0; i >= 0; --i) r = r * args[0] + G[i];
    return r;
}

USeries substitute2(const MSeries& F, const USeries& a, const USeries& b) {
    if (F.arity() != 2) throw InvalidInput("substitute2 needs a bivariate series");
    if (!a.coeff_zero(0) || !b.coeff_zero(0)) throw NonzeroConstant("substituted series must vanish at 0");
    const auto& FS = *F.shape();
    const auto& R = a.ring();
    int L = std::min(a.len(), b.len());
    int maxi = 0, maxj = 0;
    for (int i = 0; i < FS.size(); ++i) {
        if (F.coeff_zero(i)) continue;
        maxi = std::max(maxi, FS.exps(i)[0]);
        maxj = std::max(maxj, FS.exps(i)[1]);
    }
    maxj = std::min(maxj, L);
    std::vector<USeries> bp{USeries::constant(R, L, 1)};
    for (int j = 1; j <= maxj; ++j) bp.push_back(bp.back() * b);
    std::vector<USeries> G(maxi + 1, USeries(R, L));
    int M = R->M();
    std::vector<u64> tmp(M);
    for (int t = 0; t < FS.size(); ++t) {
        if (F.coeff_zero(t)) continue;
        int i = FS.exps(t)[0], j = FS.exps(t)[1];
        if (j > maxj) continue;
        const u64* c = F.at(t);
        USeries& g = G[i];
        for (int x = 0; x < L; ++x) {
            R->mul(tmp.data(), c, bp[j].at(x));
            for (int m = 0; m < M; ++m) g.at(x)[m] = R->pc().add(g.at(x)[m], tmp[m]);
        }
    }
    USeries r(R, L);
    for (int i = maxi; i >= 0; --i) r = r * a + G[i];
    return r;
}

MSeries elementary_symmetric(E0Ptr R, MonoPtr S, int k) {
    int d = S->d();
    if (k < 0 || k > d) throw IndexOutOfRange("elementary symmetric index " + std::to_string(k));
    MSeries r(R, S);
    for (u64 mask = 0; mask < ((u64)1 << d); ++mask) {
        if (__builtin_popcountll(mask) != k) continue;
        std::vector<int> e(d, 0);
        for (int i = 0; i < d; ++i) e[i] = (mask >> i) & 1;
        int j = S->index(e);
        if (j >= 0) r.at(j)[0] = R->pc().add(r.at(j)[0], 1);
    }
    return r;
}

// ---------- symmetric functions ----------

namespace {

// Homogeneous layers of sigma^beta, built weight by weight.
class SigmaLayers {
public:
    SigmaLayers(E0Ptr R, MonoPtr S) : R_(std::move(R)), S_(std::move(S)), d_(S_->d()) {
        for (int m = 1; m <= d_; ++m) {
            std::vector<std::vector<int>> subs;
            for (u64 mask = 0; mask < ((u64)1 << d_); ++mask) {
                if (__builtin_popcountll(mask) != m) continue;
                std::vector<int> e(d_, 0);
                for (int i = 0; i < d_; ++i) e[i] = (mask >> i) & 1;
                subs.push_back(e);
            }
            subsets_.push_back(subs);
        }
    }

    // All beta of weight w with their degree-w layers.
    const std::map<std::vector<int>, std::vector<u64>>& layer(int w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        auto& out = cache_[w];
        int M = R_->M();
        int off = S_->prefix(w), sz = S_->prefix(w + 1) - off;
        if (w == 0) {
            std::vector<u64> v((size_t)sz * M, 0);
            v[0] = 1;
            out[std::vector<int>(d_, 0)] = v;
        } else {
            for (auto& beta : betas(w)) {
                int i = 0;
                while (beta[i] == 0) ++i;
                std::vector<int> parent = beta;
                parent[i]--;
                const auto& pl = layer(w - (i + 1)).at(parent);
                out[beta] = times_sigma(pl, w - (i + 1), i + 1);
            }
        }
        // drop layers no longer reachable
        for (auto jt = cache_.begin(); jt != cache_.end();) {
            if (jt->first < w - d_) jt = cache_.erase(jt);
            else ++jt;
        }
        return cache_.at(w);
    }

    std::vector<std::vector<int>> betas(int w) const {
        std::vector<std::vector<int>> res;
        std::vector<int> b(d_, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i < 0) { if (left == 0) res.push_back(b); return; }
            for (int k = left / (i + 1); k >= 0; --k) { b[i] = k; rec(i - 1, left - k * (i + 1)); }
            b[i] = 0;
        };
        rec(d_ - 1, w);
        return res;
    }

private:
    std::vector<u64> times_sigma(const std::vector<u64>& src, int w, int m) {
        int M = R_->M();
        int off = S_->prefix(w), sz = S_->prefix(w + 1) - off;
        int off2 = S_->prefix(w + m), sz2 = S_->prefix(w + m + 1) - off2;
        std::vector<u64> dst((size_t)std::max(sz2, 0) * M, 0);
        if (w + m >= S_->totcap()) return dst;
        const auto& pc = R_->pc();
        std::vector<int> e(d_);
        for (int a = 0; a < sz; ++a) {
            const u64* c = src.data() + (size_t)a * M;
            if (R_->is_zero(c)) continue;
            const auto& ea = S_->exps(off + a);
            for (const auto& s : subsets_[m - 1]) {
                for (int k = 0; k < d_; ++k) e[k] = ea[k] + s[k];
                int j = S_->index(e);
                if (j < 0) continue;
                u64* t = dst.data() + (size_t)(j - off2) * M;
                for (int q = 0; q < M; ++q) t[q] = pc.add(t[q], c[q]);
            }
        }
        return dst;
    }

    E0Ptr R_;
    MonoPtr S_;
    int d_;
    std::vector<std::vector<std::vector<int>>> subsets_;
    std::map<int, std::map<std::vector<int>, std::vector<u64>>> cache_;
};

}  // namespace

SigmaPoly symmetrize_to_elementary(const MSeries& s) {
    const auto& S = s.shape();
    const auto& R = s.ring();
    if (S->is_box()) throw InvalidInput("symmetrize needs a total-degree monomial set");
    int d = S->d(), M = R->M();
    // exact invariance: coefficient depends only on the sorted exponent
    for (int i = 0; i < S->size(); ++i) {
        std::vector<int> e = S->exps(i);
        std::sort(e.begin(), e.end(), std::greater<int>());
        int j = S->index(e);
        if (!std::equal(s.at(i), s.at(i) + M, s.at(j)))
            throw NotSymmetric("series is not invariant under permutation of variables");
    }
    SigmaPoly out;
    out.d = d;
    SigmaLayers L(R, S);
    std::vector<u64> rem = s.raw();
    const auto& pc = R->pc();
    std::vector<u64> tmp(M);
    for (int w = 0; w < S->totcap(); ++w) {
        int off = S->prefix(w), end = S->prefix(w + 1);
        const std::map<std::vector<int>, std::vector<u64>>* lay = nullptr;
        for (int i = off; i < end; ++i) {
            u64* c = rem.data() + (size_t)i * M;
            if (R->is_zero(c)) continue;
            if (!lay) lay = &L.layer(w);
            const auto& a = S->exps(i);
            std::vector<int> beta(d);
            for (int k = 0; k < d; ++k) beta[k] = a[k] - (k + 1 < d ? a[k + 1] : 0);
            for (int k = 0; k < d; ++k)
                if (beta[k] < 0) throw NotSymmetric("leading monomial is not weakly decreasing");
            E0Elem coef(R, c);
            out.terms[beta] = coef;
            const auto& sb = lay->at(beta);
            for (int t = 0; t < end - off; ++t) {
                const u64* x = sb.data() + (size_t)t * M;
                if (R->is_zero(x)) continue;
                R->mul(tmp.data(), coef.data(), x);
                u64* y = rem.data() + (size_t)(off + t) * M;
                for (int q = 0; q < M; ++q) y[q] = pc.sub(y[q], tmp[q]);
            }
        }
    }
    return out;
}

MSeries expand_sigma(const SigmaPoly& phi, E0Ptr R, MonoPtr S) {
    MSeries r(R, S);
    int M = R->M();
    int d = S->d();
    std::map<int, std::vector<std::pair<std::vector<int>, E0Elem>>> byw;
    for (const auto& [beta, c] : phi.terms) {
        int w = 0;
        for (int k = 0; k < d; ++k) w += (k + 1) * beta[k];
        if (w < S->totcap()) byw[w].push_back({beta, c});
    }
    SigmaLayers L(R, S);
    std::vector<u64> tmp(M);
    const auto& pc = R->pc();
    for (int w = 0; w < S->totcap(); ++w) {
        auto it = byw.find(w);
        if (it == byw.end()) continue;
        const auto& lay = L.layer(w);
        int off = S->prefix(w), end = S->prefix(w + 1);
        for (const auto& [beta, c] : it->second) {
            const auto& sb = lay.at(beta);
            for (int t = 0; t < end - off; ++t) {
                R->mul(tmp.data(), c.data(), sb.data() + (size_t)t * M);
                u64* y = r.at(off + t);
                for (int q = 0; q < M; ++q) y[q] = pc.add(y[q], tmp[q]);
            }
        }
    }
    return r;
}

std::vector<std::vector<int>> invariant_basis(int d, int N, SymKind kind) {
    std::vector<std::vector<int>> out;
    if (kind == SymKind::SigmaMonomial) {
        enum_total(d, N, out);
    } else {
        // weakly increasing sequences with entries < N, ordered by degree
        std::vector<std::vector<int>> all;
        std::vector<int> e(d);
        std::function<void(int, int)> rec = [&](int i, int lo) {
            if (i == d) { all.push_back(e); return; }
            for (int k = lo; k < N; ++k) { e[i] = k; rec(i + 1, k); }
        };
        rec(0, 0);
        std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
            int sa = 0, sb = 0;
            for (int x : a) sa += x;
            for (int x : b) sb += x;
            if (sa != sb) return sa < sb;
            return a > b;
        });
        out = all;
    }
    return out;
}

u64 binomial(u64 n, u64 k) {
    if (k > n) return 0;
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return (u64)r;
}

}  // namespace morava
