#include "morava/smallrings.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace morava {

namespace {

int nilpotency(const E0Ptr& R) { return R->pc().N + (R->n() > 1 ? R->Du() : 1) - 1; }

u64 inv_mod(u64 a, u64 p) { return PadicCtx(p, 1).inv(a % p); }

}  // namespace

// ---------- QuotientRing ----------

QuotientRing::QuotientRing(std::string var, USeries modulus) : var_(std::move(var)) {
    mod_ = poly_trim(modulus);
    rank_ = poly_degree(mod_);
    if (rank_ < 1 || mod_.coeff(rank_) != E0Elem(mod_.ring(), 1))
        throw InvalidInput("quotient modulus must be monic of positive degree");
}

USeries QuotientRing::reduce(const USeries& f) const { return reduce_series(f, mod_).truncated(rank_); }
USeries QuotientRing::reduce_poly(const USeries& f) const { return poly_rem(f, mod_).truncated(rank_); }

USeries QuotientRing::mul(const USeries& a, const USeries& b) const {
    return reduce_poly(poly_mul(a.truncated(rank_), b.truncated(rank_)));
}

USeries QuotientRing::pow(const USeries& a, u64 e) const {
    USeries r = one(), b = a.truncated(rank_);
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

USeries QuotientRing::one() const { return reduce_poly(USeries::constant(ring(), 1, 1)); }
USeries QuotientRing::gen() const { return reduce_poly(USeries::x(ring(), 2)); }

std::vector<USeries> QuotientRing::power_table(int count) const {
    std::vector<USeries> t;
    if (count <= 0) return t;
    USeries cur = one();
    const int M = ring()->M();
    const auto& pc = ring()->pc();
    std::vector<u64> tmp(M);
    for (int k = 0; k < count; ++k) {
        t.push_back(cur);
        // multiply by x
        std::vector<u64> top(cur.at(rank_ - 1), cur.at(rank_ - 1) + M);
        USeries nx(ring(), rank_);
        for (int i = rank_ - 1; i >= 1; --i) std::copy(cur.at(i - 1), cur.at(i - 1) + M, nx.at(i));
        if (!ring()->is_zero(top.data()))
            for (int i = 0; i < rank_; ++i) {
                ring()->mul(tmp.data(), top.data(), mod_.at(i));
                for (int m = 0; m < M; ++m) nx.at(i)[m] = pc.sub(nx.at(i)[m], tmp[m]);
            }
        cur = nx;
    }
    return t;
}

QuotientRing cyclic_ring(i64 m, const FGL& F) {
    if (m == 0) throw InvalidInput("cyclic group order must be nonzero");
    int r = vp_int(m, F.p());
    const auto& R = F.ctx.e0;
    if (r == 0) return QuotientRing("x", USeries::x(R, 2));
    int D = 1;
    for (int i = 0; i < r * F.ctx.n(); ++i) D *= (int)F.p();
    int len = std::max(F.ctx.Dx, (nilpotency(R) + 1) * D + 1);
    return QuotientRing("x", pr_weierstrass(F, r, len).g);
}

// ---------- TensorRing ----------

TensorRing::TensorRing(std::vector<QuotientRing> factors) : f_(std::move(factors)) {
    if (f_.empty()) throw InvalidInput("tensor ring needs at least one factor");
    R_ = f_[0].ring();
    for (auto& q : f_) {
        if (!(*q.ring() == *R_)) throw CtxMismatch("tensor factors over different rings");
        ranks_.push_back(q.rank());
    }
    stride_.assign(f_.size(), 1);
    for (int j = d() - 1; j >= 0; --j) {
        stride_[j] = dim_;
        dim_ *= (size_t)ranks_[j];
        if (dim_ * R_->M() > ((size_t)1 << 30)) throw TooLarge("tensor ring dimension");
    }
}

size_t TensorRing::index(const std::vector<int>& e) const {
    size_t i = 0;
    for (int j = 0; j < d(); ++j) {
        if (e[j] < 0 || e[j] >= ranks_[j]) throw IndexOutOfRange("tensor exponent");
        i += (size_t)e[j] * stride_[j];
    }
    return i;
}

std::vector<int> TensorRing::exps(size_t i) const {
    std::vector<int> e(d());
    for (int j = 0; j < d(); ++j) e[j] = (int)((i / stride_[j]) % ranks_[j]);
    return e;
}

TensorRing::Elem TensorRing::one() const {
    Elem r = zero();
    // 1 reduced in each factor (rank-one factors x keep 1)
    r[0] = 1 % R_->pc().mod;
    return r;
}

TensorRing::Elem TensorRing::var(int j) const { return mul_var(one(), j); }

TensorRing::Elem TensorRing::add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    const auto& pc = R_->pc();
    for (size_t i = 0; i < a.size(); ++i) r[i] = pc.add(a[i], b[i]);
    return r;
}

TensorRing::Elem TensorRing::sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    const auto& pc = R_->pc();
    for (size_t i = 0; i < a.size(); ++i) r[i] = pc.sub(a[i], b[i]);
    return r;
}

TensorRing::Elem TensorRing::scaled(const Elem& a, const E0Elem& c) const {
    const int M = R_->M();
    Elem r(a.size());
    for (size_t i = 0; i < dim_; ++i) R_->mul(r.data() + i * M, c.data(), a.data() + i * M);
    return r;
}

bool TensorRing::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; });
}

TensorRing::Elem TensorRing::mul_var(const Elem& a, int j) const {
    const int M = R_->M();
    const int r = ranks_[j];
    const size_t s = stride_[j];
    const auto& g = f_[j].modulus();
    const auto& pc = R_->pc();
    Elem out(a.size(), 0);
    std::vector<u64> tmp(M);
    for (size_t base = 0; base < dim_; ++base) {
        if ((base / s) % r != 0) continue;
        const u64* top = a.data() + (base + (size_t)(r - 1) * s) * M;
        for (int e = r - 1; e >= 1; --e)
            std::copy(a.data() + (base + (size_t)(e - 1) * s) * M, a.data() + (base + (size_t)(e - 1) * s) * M + M,
                      out.data() + (base + (size_t)e * s) * M);
        if (R_->is_zero(top)) continue;
        for (int e = 0; e < r; ++e) {
            if (g.coeff_zero(e)) continue;
            R_->mul(tmp.data(), top, g.at(e));
            u64* t = out.data() + (base + (size_t)e * s) * M;
            for (int m = 0; m < M; ++m) t[m] = pc.sub(t[m], tmp[m]);
        }
    }
    return out;
}

TensorRing::Elem TensorRing::mul(const Elem& a, const Elem& b) const {
    const int M = R_->M();
    const auto& pc = R_->pc();
    // unreduced product with radix 2r - 1 per variable
    std::vector<int> big(d());
    std::vector<size_t> bst(d());
    size_t bdim = 1;
    for (int j = d() - 1; j >= 0; --j) {
        big[j] = 2 * ranks_[j] - 1;
        bst[j] = bdim;
        bdim *= big[j];
    }
    auto bindex = [&](size_t i) {
        size_t r = 0;
        for (int j = 0; j < d(); ++j) r += ((i / stride_[j]) % ranks_[j]) * bst[j];
        return r;
    };
    std::vector<size_t> ai, bi;
    for (size_t i = 0; i < dim_; ++i) {
        if (!R_->is_zero(a.data() + i * M)) ai.push_back(i);
        if (!R_->is_zero(b.data() + i * M)) bi.push_back(i);
    }
    std::vector<size_t> bmap(dim_);
    for (size_t i = 0; i < dim_; ++i) bmap[i] = bindex(i);
    std::vector<u64> acc(bdim * M, 0), tmp(M);
    for (size_t x : ai)
        for (size_t y : bi) {
            R_->mul(tmp.data(), a.data() + x * M, b.data() + y * M);
            u64* t = acc.data() + (bmap[x] + bmap[y]) * M;
            for (int m = 0; m < M; ++m) t[m] = pc.add(t[m], tmp[m]);
        }
    // reduce each variable from the top
    for (int j = 0; j < d(); ++j) {
        const int r = ranks_[j];
        const auto& g = f_[j].modulus();
        for (size_t base = 0; base < bdim; ++base) {
            if ((base / bst[j]) % big[j] != 0) continue;
            for (int e = big[j] - 1; e >= r; --e) {
                u64* c = acc.data() + (base + (size_t)e * bst[j]) * M;
                if (R_->is_zero(c)) continue;
                std::vector<u64> lead(c, c + M);
                std::fill(c, c + M, 0);
                for (int i = 0; i < r; ++i) {
                    if (g.coeff_zero(i)) continue;
                    R_->mul(tmp.data(), lead.data(), g.at(i));
                    u64* t = acc.data() + (base + (size_t)(e - r + i) * bst[j]) * M;
                    for (int m = 0; m < M; ++m) t[m] = pc.sub(t[m], tmp[m]);
                }
            }
        }
    }
    Elem out = zero();
    for (size_t i = 0; i < dim_; ++i) std::copy(acc.data() + bmap[i] * M, acc.data() + bmap[i] * M + M, out.data() + i * M);
    return out;
}

TensorRing::Elem TensorRing::from_series(const MSeries& f) const {
    const auto& S = *f.shape();
    if (S.d() != d()) throw InvalidInput("series arity differs from the tensor ring");
    const int K = nilpotency(R_);
    int rmax = *std::max_element(ranks_.begin(), ranks_.end());
    if (S.is_box()) {
        for (int j = 0; j < d(); ++j)
            if (S.caps()[j] / ranks_[j] < K) throw PrecisionExhausted("box truncation too short for the tensor ring");
    } else if (S.totcap() < rmax * (K + d())) {
        throw PrecisionExhausted("total-degree truncation too short for the tensor ring");
    }
    std::vector<std::vector<USeries>> pw(d());
    int maxe = S.is_box() ? *std::max_element(S.caps().begin(), S.caps().end()) : S.totcap();
    for (int j = 0; j < d(); ++j) pw[j] = f_[j].power_table(maxe);
    const int M = R_->M();
    const auto& pc = R_->pc();
    Elem out = zero();
    std::vector<u64> tmp(M);
    for (int t = 0; t < S.size(); ++t) {
        if (f.coeff_zero(t)) continue;
        const auto& e = S.exps(t);
        // tensor product of the reduced powers
        std::vector<u64> prod(f.at(t), f.at(t) + M);
        for (size_t i = 0; i < dim_; ++i) {
            std::vector<u64> c = prod;
            bool zero_c = false;
            for (int j = 0; j < d() && !zero_c; ++j) {
                int ej = (int)((i / stride_[j]) % ranks_[j]);
                const u64* pj = pw[j][e[j]].at(ej);
                if (R_->is_zero(pj)) { zero_c = true; break; }
                R_->mul(tmp.data(), c.data(), pj);
                c = tmp;
            }
            if (zero_c) continue;
            for (int m = 0; m < M; ++m) out[i * M + m] = pc.add(out[i * M + m], c[m]);
        }
    }
    return out;
}

AbelianRing abelian_ring(const std::vector<i64>& orders, const FGL& F) {
    if (orders.empty()) throw InvalidInput("abelian group needs at least one cyclic factor");
    std::vector<QuotientRing> fs;
    for (i64 m : orders) fs.push_back(cyclic_ring(m, F));
    return AbelianRing{orders, TensorRing(fs)};
}

// ---------- TorusRing ----------

TorusRing::TorusRing(const FGL& F, int d, int v) : v_(v) {
    if (d < 1) throw InvalidInput("torus rank must be positive");
    if (v < 1) throw InvalidInput("v must be positive");
    i64 pv = 1;
    for (int i = 0; i < v; ++i) pv *= (i64)F.p();
    QuotientRing base = cyclic_ring(pv, F);
    T_ = TensorRing(std::vector<QuotientRing>(d, base));
    N_ = base.rank();
    sigma_ = invariant_basis(d, N_, SymKind::SigmaMonomial);
    orbit_ = invariant_basis(d, N_, SymKind::OrbitSum);
    for (auto& a : orbit_) orbit_index_.push_back(T_.index(a));
}

TensorRing::Elem TorusRing::elementary(int k) const {
    int d = T_.d();
    if (k < 0 || k > d) throw IndexOutOfRange("elementary symmetric index " + std::to_string(k));
    TensorRing::Elem r = T_.zero();
    for (u64 mask = 0; mask < ((u64)1 << d); ++mask) {
        if (__builtin_popcountll(mask) != k) continue;
        TensorRing::Elem t = T_.one();
        for (int j = 0; j < d; ++j)
            if ((mask >> j) & 1) t = T_.mul_var(t, j);
        r = T_.add(r, t);
    }
    return r;
}

TensorRing::Elem TorusRing::sigma_monomial(const std::vector<int>& beta) const {
    TensorRing::Elem r = T_.one();
    for (int i = 0; i < (int)beta.size(); ++i) {
        if (beta[i] == 0) continue;
        TensorRing::Elem s = elementary(i + 1);
        for (int k = 0; k < beta[i]; ++k) r = T_.mul(r, s);
    }
    return r;
}

bool TorusRing::is_symmetric(const TensorRing::Elem& a) const {
    const int M = T_.ring()->M();
    for (size_t i = 0; i < T_.dim(); ++i) {
        auto e = T_.exps(i);
        std::sort(e.begin(), e.end());
        size_t j = T_.index(e);
        if (!std::equal(a.begin() + i * M, a.begin() + (i + 1) * M, a.begin() + j * M)) return false;
    }
    return true;
}

std::vector<u64> TorusRing::orbit_coords(const TensorRing::Elem& a) const {
    if (!is_symmetric(a)) throw NotSymmetric("tensor element is not invariant under permutations");
    const int M = T_.ring()->M();
    std::vector<u64> c;
    c.reserve(orbit_index_.size() * M);
    for (size_t i : orbit_index_) c.insert(c.end(), a.begin() + i * M, a.begin() + (i + 1) * M);
    return c;
}

ZpMat TorusRing::change_of_basis() const {
    const auto& pc = T_.ring()->pc();
    if (T_.ring()->M() != 1) throw Unsupported("change of basis matrix needs a scalar coefficient ring");
    int n = rank();
    ZpMat C(pc, n, n);
    for (int b = 0; b < n; ++b) {
        auto col = orbit_coords(sigma_monomial(sigma_[b]));
        for (int a = 0; a < n; ++a) C.at(a, b) = col[a];
    }
    return C;
}

TorusRing torus_invariant_ring(int d, int v, const FGL& F) { return TorusRing(F, d, v); }

// ---------- Sigma_p ----------

USeries SigmaPModel::d_to_base(const USeries& poly) const {
    USeries r(base.ring(), base.rank()), dp = base.one();
    for (int j = 0; j < poly.len(); ++j) {
        if (!poly.coeff_zero(j)) r = r + dp.scaled(poly.coeff(j));
        dp = base.mul(dp, dElem);
    }
    return r;
}

SigmaPModel sigma_p_ring(const FGL& F) {
    SigmaPModel S;
    const u64 p = F.p();
    const auto& R = F.ctx.e0;
    const int K = nilpotency(R);
    S.base = cyclic_ring((i64)p, F);
    const int pn = S.base.rank();
    int len = std::max({F.ctx.Dx, pn * K + 2, (K + 1) * (pn - 1) + 2});
    USeries dp = F.mult_series((i64)p, len).shift_down(1);
    S.transfer_cp = S.base.reduce(dp);
    S.W = weierstrass_prepare(dp, pn - 1).g;
    for (int j = 0; j < pn; ++j)
        if (j % (int)(p - 1) != 0 && !S.transfer_cp.coeff_zero(j))
            throw InvariantViolation("<p>(w) has a term w^" + std::to_string(j) + " with exponent not divisible by p-1");
    S.f_degree = (pn - 1) / (int)(p - 1);
    S.rank = S.f_degree + 1;
    S.fPoly = USeries(R, S.f_degree + 1);
    for (int j = 0; j <= S.f_degree; ++j) {
        E0Elem a = S.transfer_cp.coeff(j * (int)(p - 1));
        S.fPoly.set(j, j % 2 ? -a : a);
    }
    if (S.fPoly.coeff(0) != E0Elem(R, (i64)p)) throw InvariantViolation("f(0) differs from p");
    S.dElem = S.base.pow(S.base.gen(), p - 1).scaled(-1);
    E0Elem lc = S.fPoly.coeff(S.f_degree);
    if (!lc.is_unit()) throw InvariantViolation("leading coefficient of f is not a unit");
    USeries dfd = S.fPoly.truncated(S.f_degree + 2).shift_up(1);
    S.dring = QuotientRing("d", dfd.scaled(lc.inv()));
    if (!S.d_to_base(dfd).is_zero()) throw InvariantViolation("d f(d) does not vanish in E0(BC_p)");
    if (S.d_to_base(S.fPoly) != S.transfer_cp) throw InvariantViolation("f(d) does not reproduce <p>(w)");
    i64 fact = 1;
    for (u64 i = 2; i < p; ++i) fact *= (i64)i;
    S.transfer_sigma = S.fPoly.scaled(fact);
    return S;
}

// ---------- finite algebras over F_p ----------

int rank_mod_p(std::vector<std::vector<u64>> rows, u64 p) {
    int rank = 0;
    if (rows.empty()) return 0;
    int cols = (int)rows[0].size();
    for (int c = 0; c < cols && rank < (int)rows.size(); ++c) {
        int piv = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if (rows[r][c] % p) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        u64 inv = inv_mod(rows[rank][c], p);
        for (auto& x : rows[rank]) x = x * inv % p;
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank || rows[r][c] % p == 0) continue;
            u64 f = rows[r][c] % p;
            for (int k = 0; k < cols; ++k) rows[r][k] = (rows[r][k] % p + p * p - f * rows[rank][k] % p) % p;
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<u64>> null_space_mod_p(std::vector<std::vector<u64>> rows, int cols, u64 p) {
    std::vector<int> pivcol;
    int rank = 0;
    for (auto& r : rows)
        for (auto& x : r) x %= p;
    for (int c = 0; c < cols && rank < (int)rows.size(); ++c) {
        int piv = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if (rows[r][c]) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        u64 inv = inv_mod(rows[rank][c], p);
        for (auto& x : rows[rank]) x = x * inv % p;
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            u64 f = rows[r][c];
            for (int k = 0; k < cols; ++k) rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
        }
        pivcol.push_back(c);
        ++rank;
    }
    std::vector<bool> is_piv(cols, false);
    for (int c : pivcol) is_piv[c] = true;
    std::vector<std::vector<u64>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (int r = 0; r < rank; ++r) v[pivcol[r]] = (p - rows[r][f]) % p;
        basis.push_back(v);
    }
    return basis;
}

FiniteAlgebra::FiniteAlgebra(u64 p, std::vector<std::string> labels, std::vector<std::vector<u64>> table)
    : p_(p), labels_(std::move(labels)), table_(std::move(table)) {
    int n = dim();
    if (n == 0) throw InvalidInput("empty algebra");
    if (n > 512) throw TooLarge("finite algebra dimension above 512");
    if ((int)table_.size() != n * n) throw InvalidInput("structure table has the wrong size");
    for (auto& v : table_) {
        if ((int)v.size() != n) throw InvalidInput("structure constant vector has the wrong size");
        for (auto& x : v) x %= p_;
    }
    for (int j = 0; j < n; ++j) {
        std::vector<u64> e(n, 0);
        e[j] = 1;
        if (prod(0, j) != e) throw InvariantViolation("basis[0] is not the unit");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (prod(i, j) != prod(j, i)) throw InvariantViolation("algebra is not commutative");
    int lim = std::min(n, 64);
    for (int i = 0; i < lim; ++i)
        for (int j = 0; j < lim; ++j) {
            std::vector<u64> bi(n, 0), bk(n, 0);
            bi[i] = 1;
            for (int k = 0; k < lim; ++k) {
                std::fill(bk.begin(), bk.end(), 0);
                bk[k] = 1;
                if (mul(prod(i, j), bk) != mul(bi, prod(j, k))) throw InvariantViolation("algebra is not associative");
            }
        }
}

std::vector<u64> FiniteAlgebra::mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    int n = dim();
    std::vector<u64> r(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < n; ++j) {
            if (!b[j]) continue;
            u64 c = a[i] * b[j] % p_;
            const auto& t = prod(i, j);
            for (int k = 0; k < n; ++k)
                if (t[k]) r[k] = (r[k] + c * t[k]) % p_;
        }
    }
    return r;
}

FiniteAlgebra FiniteAlgebra::truncated_poly(u64 p, int d, int k) {
    auto S = MonoSet::box(std::vector<int>(d, k));
    int n = S->size();
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        std::ostringstream os;
        bool first = true;
        for (int j = 0; j < d; ++j) {
            int e = S->exps(i)[j];
            if (!e) continue;
            os << (first ? "" : "*") << "x" << (j + 1);
            if (e > 1) os << "^" << e;
            first = false;
        }
        labels.push_back(first ? "1" : os.str());
    }
    std::vector<std::vector<u64>> table((size_t)n * n, std::vector<u64>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = S->sum_index(i, j);
            if (s >= 0) table[(size_t)i * n + j][s] = 1;
        }
    return FiniteAlgebra(p, labels, table);
}

static void check_local(const FiniteAlgebra& A) {
    int n = A.dim();
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j)
            if (A.prod(i, j)[0] != 0) throw NotLocal("maximal ideal basis is not closed under products");
        std::vector<u64> b(n, 0);
        b[i] = 1;
        std::vector<u64> pw = b;
        for (int k = 1; k < n && std::any_of(pw.begin(), pw.end(), [](u64 x) { return x; }); ++k) pw = A.mul(pw, b);
        if (std::any_of(pw.begin(), pw.end(), [](u64 x) { return x; }))
            throw NotLocal("basis element " + A.labels()[i] + " is not nilpotent");
    }
}

std::vector<std::vector<u64>> socle(const FiniteAlgebra& A) {
    check_local(A);
    int n = A.dim();
    std::vector<std::vector<u64>> rows;
    for (int i = 1; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            std::vector<u64> row(n);
            bool nz = false;
            for (int j = 0; j < n; ++j) {
                row[j] = A.prod(j, i)[k];
                nz = nz || row[j];
            }
            if (nz) rows.push_back(row);
        }
    if (rows.empty()) rows.push_back(std::vector<u64>(n, 0));
    return null_space_mod_p(rows, n, A.p());
}

FrobeniusReport frobenius_check(const FiniteAlgebra& A) {
    FrobeniusReport rep;
    auto soc = socle(A);
    rep.socle_dim = (int)soc.size();
    if (rep.socle_dim != 1) return rep;
    int n = A.dim();
    int k = 0;
    while (soc[0][k] == 0) ++k;
    std::vector<std::vector<u64>> P(n, std::vector<u64>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P[i][j] = A.prod(i, j)[k];
    rep.pairing_nondegenerate = rank_mod_p(P, A.p()) == n;
    return rep;
}

static std::vector<std::vector<int>> group_closure(const std::vector<std::vector<int>>& gens, int n) {
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> queue{id};
    for (size_t q = 0; q < queue.size(); ++q) {
        for (const auto& g : gens) {
            if ((int)g.size() != n) throw InvalidInput("permutation has the wrong length");
            std::vector<int> h(n);
            for (int i = 0; i < n; ++i) h[i] = g[queue[q][i]];
            if (seen.insert(h).second) {
                queue.push_back(h);
                if (queue.size() > 100000) throw TooLarge("group closure above 10^5 elements");
            }
        }
    }
    return queue;
}

FiniteAlgebra orbit_sum_subalgebra(const FiniteAlgebra& A, const std::vector<std::vector<int>>& perms) {
    int n = A.dim();
    auto G = group_closure(perms, n);
    std::vector<int> orbit_of(n, -1);
    std::vector<std::vector<int>> orbits;
    for (int i = 0; i < n; ++i) {
        if (orbit_of[i] >= 0) continue;
        std::set<int> o;
        for (auto& g : G) o.insert(g[i]);
        for (int j : o) orbit_of[j] = (int)orbits.size();
        orbits.emplace_back(o.begin(), o.end());
    }
    if (orbits[0].size() != 1) throw InvariantViolation("the unit is not fixed");
    int m = (int)orbits.size();
    std::vector<std::string> labels;
    for (auto& o : orbits) labels.push_back(o.size() == 1 ? A.labels()[o[0]] : "orb(" + A.labels()[o[0]] + ")");
    std::vector<std::vector<u64>> table((size_t)m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<u64> oa(n, 0), ob(n, 0);
            for (int i : orbits[a]) oa[i] = 1;
            for (int j : orbits[b]) ob[j] = 1;
            auto prod = A.mul(oa, ob);
            std::vector<u64> c(m);
            for (int t = 0; t < m; ++t) {
                c[t] = prod[orbits[t][0]];
                for (int i : orbits[t])
                    if (prod[i] != c[t]) throw InvariantViolation("product of orbit sums is not invariant");
            }
            table[(size_t)a * m + b] = c;
        }
    return FiniteAlgebra(A.p(), labels, table);
}

FiniteAlgebra invariant_subalgebra(const FiniteAlgebra& A, const std::vector<std::vector<int>>& perms) {
    auto G = group_closure(perms, A.dim());
    if (G.size() % A.p() == 0)
        throw BadGroupOrder("group of order " + std::to_string(G.size()) + " is divisible by p");
    return orbit_sum_subalgebra(A, perms);
}

std::vector<std::vector<int>> variable_permutations(int d, int k, const std::vector<std::vector<int>>& var_perms) {
    auto S = MonoSet::box(std::vector<int>(d, k));
    std::vector<std::vector<int>> out;
    for (const auto& pi : var_perms) {
        if ((int)pi.size() != d) throw InvalidInput("variable permutation has the wrong length");
        std::vector<int> img(S->size());
        for (int i = 0; i < S->size(); ++i) {
            std::vector<int> e(d);
            for (int j = 0; j < d; ++j) e[pi[j]] = S->exps(i)[j];
            img[i] = S->index(e);
        }
        out.push_back(img);
    }
    return out;
}

}  // namespace morava
