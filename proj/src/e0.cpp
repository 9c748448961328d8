#include "morava/e0.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace morava {

static void gen_monomials(int vars, int maxdeg, std::vector<std::vector<int>>& out) {
    // all exponent vectors of total degree < maxdeg, graded then lex-descending
    for (int deg = 0; deg < maxdeg; ++deg) {
        std::vector<std::vector<int>> layer;
        std::vector<int> e(vars, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == vars - 1) { e[i] = left; layer.push_back(e); return; }
            for (int k = left; k >= 0; --k) { e[i] = k; rec(i + 1, left - k); }
        };
        if (vars == 0) {
            if (deg == 0) out.push_back({});
            continue;
        }
        rec(0, deg);
        for (auto& v : layer) out.push_back(v);
    }
}

std::shared_ptr<const E0Ring> E0Ring::make(const PadicCtx& pc, int n, int Du) {
    if (n < 1) throw InvalidInput("height must be >= 1");
    if (Du < 1) throw InvalidInput("Du must be >= 1");
    auto* R = new E0Ring();
    R->pc_ = pc;
    R->n_ = n;
    R->Du_ = (n == 1) ? 1 : Du;
    gen_monomials(n - 1, R->Du_, R->mons_);
    for (auto& m : R->mons_) {
        int d = 0;
        for (int x : m) d += x;
        R->deg_.push_back(d);
    }
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < R->M(); ++i) idx[R->mons_[i]] = i;
    for (int a = 0; a < R->M(); ++a)
        for (int b = 0; b < R->M(); ++b) {
            if (R->deg_[a] + R->deg_[b] >= R->Du_) continue;
            std::vector<int> e(n - 1);
            for (int k = 0; k < n - 1; ++k) e[k] = R->mons_[a][k] + R->mons_[b][k];
            R->table_.push_back({a, b, idx.at(e)});
        }
    return std::shared_ptr<const E0Ring>(R);
}

int E0Ring::monomial_index(const std::vector<int>& e) const {
    for (int i = 0; i < M(); ++i)
        if (mons_[i] == e) return i;
    return -1;
}

int E0Ring::u_index(int i) const {
    if (i < 1 || i > n_ - 1) throw IndexOutOfRange("u_" + std::to_string(i));
    std::vector<int> e(n_ - 1, 0);
    e[i - 1] = 1;
    return monomial_index(e);
}

void E0Ring::mul(u64* out, const u64* a, const u64* b) const {
    if (scalar()) { out[0] = pc_.mul(a[0], b[0]); return; }
    int m = M();
    std::vector<u128> acc(m, 0);
    for (const auto& t : table_) acc[t.c] += (u128)a[t.a] * b[t.b] % pc_.mod;
    for (int i = 0; i < m; ++i) out[i] = (u64)(acc[i] % pc_.mod);
}

bool E0Ring::is_zero(const u64* a) const {
    for (int i = 0; i < M(); ++i)
        if (a[i]) return false;
    return true;
}

int E0Ring::min_val(const u64* a) const {
    int v = pc_.N;
    for (int i = 0; i < M(); ++i) v = std::min(v, pc_.val(a[i]));
    return v;
}

void E0Ring::inv(u64* out, const u64* a) const {
    if (!is_unit(a)) throw NonUnit("E0 element with non-unit constant term");
    int m = M();
    u64 c0 = pc_.inv(a[0]);
    if (scalar()) { out[0] = c0; return; }
    // a = a0 (1 + n) with n in (u); 1/(1+n) = sum (-n)^k, k < Du
    std::vector<u64> nn(m), term(m, 0), tmp(m), res(m, 0);
    for (int i = 1; i < m; ++i) nn[i] = pc_.neg(pc_.mul(a[i], c0));
    nn[0] = 0;
    term[0] = 1;
    res[0] = 1;
    for (int k = 1; k < Du_; ++k) {
        mul(tmp.data(), term.data(), nn.data());
        term = tmp;
        for (int i = 0; i < m; ++i) res[i] = pc_.add(res[i], term[i]);
    }
    for (int i = 0; i < m; ++i) out[i] = pc_.mul(res[i], c0);
}

std::shared_ptr<const E0Ring> E0Ring::with_precision(int N) const {
    return make(PadicCtx(pc_.p, N), n_, Du_);
}

E0Elem E0Elem::u(E0Ptr R, int i) {
    E0Elem r(R);
    if (i == R->n()) { r.c_[0] = 1; return r; }
    int k = R->u_index(i);
    if (k >= 0) r.c_[k] = 1;
    return r;
}

E0Elem E0Elem::operator+(const E0Elem& o) const {
    E0Elem r(R_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = R_->pc().add(c_[i], o.c_[i]);
    return r;
}

E0Elem E0Elem::operator-(const E0Elem& o) const {
    E0Elem r(R_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = R_->pc().sub(c_[i], o.c_[i]);
    return r;
}

E0Elem E0Elem::operator-() const {
    E0Elem r(R_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = R_->pc().neg(c_[i]);
    return r;
}

E0Elem E0Elem::operator*(const E0Elem& o) const {
    E0Elem r(R_);
    R_->mul(r.c_.data(), c_.data(), o.c_.data());
    return r;
}

E0Elem E0Elem::inv() const {
    E0Elem r(R_);
    R_->inv(r.c_.data(), c_.data());
    return r;
}

std::string E0Elem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < R_->M(); ++i) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i];
        const auto& e = R_->monomials()[i];
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k]) os << "*u" << (k + 1) << (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace morava
