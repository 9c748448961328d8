#include "morava/glgroups.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace morava {

namespace {

constexpr u64 kMaxField = 1u << 22;

// q = l^r with l prime, or {0, 0}.
std::pair<u32, int> split_prime_power(u64 q) {
    if (q < 2) return {0, 0};
    u64 l = 0;
    for (u64 f = 2; f * f <= q; ++f)
        if (q % f == 0) { l = f; break; }
    if (l == 0) return {(u32)q, 1};
    int r = 0;
    while (q % l == 0) { q /= l; ++r; }
    if (q != 1) return {0, 0};
    return {(u32)l, r};
}

u32 inv_mod(u32 a, u32 l) {
    u64 r = 1, b = a % l;
    for (u32 e = l - 2; e; e >>= 1, b = b * b % l)
        if (e & 1) r = r * b % l;
    return (u32)r;
}

using Poly = std::vector<u32>;  // constant term first

void trim(Poly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }

Poly poly_rem(Poly a, const Poly& m, u32 l) {
    trim(a);
    int dm = (int)m.size() - 1;
    u32 lead_inv = inv_mod(m.back(), l);
    while ((int)a.size() - 1 >= dm) {
        u32 c = (u32)((u64)a.back() * lead_inv % l);
        int shift = (int)a.size() - 1 - dm;
        for (int i = 0; i <= dm; ++i)
            a[shift + i] = (u32)((a[shift + i] + (u64)(l - c) * m[i]) % l);
        trim(a);
    }
    return a;
}

Poly decode(u64 code, u32 l, int len) {
    Poly f(len);
    for (int i = 0; i < len; ++i) { f[i] = (u32)(code % l); code /= l; }
    return f;
}

bool irreducible(const Poly& f, u32 l) {
    int r = (int)f.size() - 1;
    for (int dg = 1; 2 * dg <= r; ++dg) {
        u64 count = 1;
        for (int i = 0; i < dg; ++i) count *= l;
        for (u64 c = 0; c < count; ++c) {
            Poly g = decode(c, l, dg);
            g.push_back(1);
            if (poly_rem(f, g, l).empty()) return false;
        }
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 f = 2; f * f <= n; ++f)
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    if (n > 1) out.push_back(n);
    return out;
}

void require_prime_power(u64 q) {
    if (split_prime_power(q).first == 0)
        throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
}

void require_gl_params(u64 q, u64 p) {
    if (!is_prime(p) || p == 2) throw InvalidInput("p must be an odd prime");
    require_prime_power(q);
    if (q % p == 0) throw InvalidInput("q must be coprime to p");
}

int require_v(u64 q, u64 p) {
    if (!is_prime(p) || p == 2) throw BadParams("p must be an odd prime");
    if (split_prime_power(q).first == 0) throw BadParams("q is not a prime power");
    int v = vp_int((i64)q - 1, p);
    if (q % p == 0 || v < 1) throw BadParams("need v_p(q - 1) >= 1");
    return v;
}

u64 checked_power(u64 b, u64 e, u64 limit, const char* what) {
    u64 r = 1;
    for (u64 i = 0; i < e; ++i) {
        if (r > limit / b) throw TooLarge(what);
        r *= b;
    }
    return r;
}

// Matrices over F_q encoded as base-q integers, entry (0,0) least significant.
GLMat decode_matrix(const FqPtr& F, int d, u64 code) {
    GLMat m(F, d);
    for (auto& x : m.e) { x = (u32)(code % F->q()); code /= F->q(); }
    return m;
}

u64 encode_matrix(const GLMat& m) {
    u64 code = 0;
    for (size_t i = m.e.size(); i-- > 0;) code = code * m.F->q() + m.e[i];
    return code;
}

}  // namespace

// ---- fields

std::vector<u32> least_irreducible(u32 l, int r) {
    if (!is_prime(l) || r < 1) throw InvalidInput("need a prime l and r >= 1");
    u64 count = checked_power(l, r, kMaxField, "field too large");
    for (u64 c = 0; c < count; ++c) {
        Poly f = decode(c, l, r);
        f.push_back(1);
        if (irreducible(f, l)) return f;
    }
    throw InvariantViolation("no irreducible polynomial found");
}

u32 Fq::slow_mul(u32 a, u32 b) const {
    Poly x = decode(a, l_, r_), y = decode(b, l_, r_);
    Poly z(2 * r_, 0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) z[i + j] = (u32)((z[i + j] + (u64)x[i] * y[j]) % l_);
    z = poly_rem(z, mod_, l_);
    z.resize(r_, 0);
    return from_digits(z);
}

std::shared_ptr<const Fq> Fq::make(u64 q) {
    auto [l, r] = split_prime_power(q);
    if (l == 0) throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
    if (q > kMaxField) throw TooLarge("field tables limited to 2^22 elements");
    auto F = std::make_shared<Fq>();
    F->l_ = l;
    F->r_ = r;
    F->q_ = (u32)q;
    F->mod_ = least_irreducible(l, r);

    auto slow_pow = [&](u32 a, u64 e) {
        u32 res = 1;
        for (u32 b = a; e; e >>= 1, b = F->slow_mul(b, b))
            if (e & 1) res = F->slow_mul(res, b);
        return res;
    };
    u32 g = 1;
    if (q > 2) {
        auto fs = prime_factors(q - 1);
        for (g = 2; g < q; ++g) {
            bool ok = true;
            for (u64 f : fs)
                if (slow_pow(g, (q - 1) / f) == 1) { ok = false; break; }
            if (ok) break;
        }
    }
    F->exp_.assign(q, 0);
    F->log_.assign(q, 0);
    u32 x = 1;
    for (u64 k = 0; k < q - 1; ++k) {
        F->exp_[k] = x;
        F->log_[x] = (u32)k;
        x = F->slow_mul(x, g);
    }
    if (x != 1) throw InvariantViolation("unit group not cyclic of order q - 1");
    F->exp_[q - 1] = 1;
    if (q == 2) F->exp_[1] = 1;
    return F;
}

std::vector<u32> Fq::digits(u32 a) const { return decode(a, l_, r_); }

u32 Fq::from_digits(const std::vector<u32>& c) const {
    u64 x = 0;
    for (size_t i = std::min(c.size(), (size_t)r_); i-- > 0;) x = x * l_ + c[i] % l_;
    return (u32)x;
}

u32 Fq::add(u32 a, u32 b) const {
    if (l_ == 2) return a ^ b;
    u32 out = 0, pw = 1;
    for (int i = 0; i < r_; ++i) {
        out += ((a % l_ + b % l_) % l_) * pw;
        a /= l_; b /= l_; pw *= l_;
    }
    return out;
}

u32 Fq::sub(u32 a, u32 b) const {
    if (l_ == 2) return a ^ b;
    u32 out = 0, pw = 1;
    for (int i = 0; i < r_; ++i) {
        out += ((a % l_ + l_ - b % l_) % l_) * pw;
        a /= l_; b /= l_; pw *= l_;
    }
    return out;
}

u32 Fq::mul(u32 a, u32 b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[((u64)log_[a] + log_[b]) % (q_ - 1)];
}

u32 Fq::inv(u32 a) const {
    if (a == 0) throw NonUnit("0 in " + name());
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

u32 Fq::pow(u32 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[(u64)log_[a] * (e % (q_ - 1)) % (q_ - 1)];
}

u32 Fq::from_int(i64 x) const {
    i64 m = x % (i64)l_;
    return (u32)(m < 0 ? m + l_ : m);
}

u32 Fq::log(u32 a) const {
    if (a == 0) throw NonUnit("log of 0");
    return log_[a];
}

u64 Fq::order(u32 a) const {
    if (a == 0) throw NonUnit("order of 0");
    u64 n = q_ - 1;
    return n / std::gcd<u64, u64>(n, log_[a]);
}

std::string Fq::name() const { return "F_" + std::to_string(q_); }

// ---- matrices

GLMat GLMat::identity(FqPtr F, int d) { return scalar(std::move(F), d, 1); }

GLMat GLMat::scalar(FqPtr F, int d, u32 c) {
    GLMat m(std::move(F), d);
    for (int i = 0; i < d; ++i) m.at(i, i) = c;
    return m;
}

GLMat GLMat::diag(FqPtr F, const std::vector<u32>& c) {
    GLMat m(std::move(F), (int)c.size());
    for (int i = 0; i < m.d; ++i) m.at(i, i) = c[i];
    return m;
}

GLMat GLMat::cycle(FqPtr F, int d) {
    GLMat m(std::move(F), d);
    for (int i = 0; i < d; ++i) m.at(i, (i + 1) % d) = 1;
    return m;
}

GLMat GLMat::operator*(const GLMat& o) const {
    if (d != o.d) throw InvalidInput("matrix size mismatch");
    GLMat r(F, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            u32 a = at(i, k);
            if (!a) continue;
            for (int j = 0; j < d; ++j)
                if (o.at(k, j)) r.at(i, j) = F->add(r.at(i, j), F->mul(a, o.at(k, j)));
        }
    return r;
}

u32 GLMat::det() const {
    GLMat m = *this;
    u32 det = 1;
    for (int c = 0; c < d; ++c) {
        int piv = -1;
        for (int r = c; r < d; ++r)
            if (m.at(r, c)) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < d; ++j) std::swap(m.at(c, j), m.at(piv, j));
            det = F->neg(det);
        }
        u32 pv = m.at(c, c);
        det = F->mul(det, pv);
        u32 pinv = F->inv(pv);
        for (int r = c + 1; r < d; ++r) {
            u32 f = F->mul(m.at(r, c), pinv);
            if (!f) continue;
            for (int j = c; j < d; ++j) m.at(r, j) = F->sub(m.at(r, j), F->mul(f, m.at(c, j)));
        }
    }
    return det;
}

GLMat GLMat::inverse() const {
    GLMat m = *this, inv = identity(F, d);
    for (int c = 0; c < d; ++c) {
        int piv = -1;
        for (int r = c; r < d; ++r)
            if (m.at(r, c)) { piv = r; break; }
        if (piv < 0) throw NonUnit("singular matrix");
        for (int j = 0; j < d; ++j) {
            std::swap(m.at(c, j), m.at(piv, j));
            std::swap(inv.at(c, j), inv.at(piv, j));
        }
        u32 pinv = F->inv(m.at(c, c));
        for (int j = 0; j < d; ++j) {
            m.at(c, j) = F->mul(m.at(c, j), pinv);
            inv.at(c, j) = F->mul(inv.at(c, j), pinv);
        }
        for (int r = 0; r < d; ++r) {
            if (r == c || !m.at(r, c)) continue;
            u32 f = m.at(r, c);
            for (int j = 0; j < d; ++j) {
                m.at(r, j) = F->sub(m.at(r, j), F->mul(f, m.at(c, j)));
                inv.at(r, j) = F->sub(inv.at(r, j), F->mul(f, inv.at(c, j)));
            }
        }
    }
    return inv;
}

GLMat GLMat::pow(u64 k) const {
    GLMat r = identity(F, d), b = *this;
    for (; k; k >>= 1, b = b * b)
        if (k & 1) r = r * b;
    return r;
}

u64 GLMat::order(u64 bound) const {
    GLMat id = identity(F, d), x = *this;
    for (u64 k = 1; k <= bound; ++k) {
        if (x == id) return k;
        x = x * *this;
    }
    return 0;
}

bool GLMat::is_diagonal() const {
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && at(i, j)) return false;
    return true;
}

std::string GLMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < d; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < d; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

// ---- orders

BigInt gl_order(int d, u64 q) {
    if (d < 1) throw InvalidInput("d must be >= 1");
    require_prime_power(q);
    BigInt qd = 1, qi = 1, out = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    for (int i = 0; i < d; ++i) {
        out *= qd - qi;
        qi *= q;
    }
    return out;
}

int vp_big(const BigInt& x, u64 p) {
    if (x == 0) throw InvalidInput("valuation of 0");
    BigInt y = x;
    int v = 0;
    while (y % p == 0) { y /= p; ++v; }
    return v;
}

int vp_gl_order(int d, u64 q, u64 p) {
    if (d < 1) throw InvalidInput("d must be >= 1");
    require_gl_params(q, p);
    u64 a = mult_order_mod_p((i64)q, p);
    u64 m = (u64)d / a;
    int v = m == 0 ? 0 : (int)m * vp_pow_minus_one((i64)q, a, p) + vp_factorial(m, p);
    if (v != vp_big(gl_order(d, q), p))
        throw Mismatch("valuation formula disagrees with the factored order");
    return v;
}

// ---- Sylow descriptors

SylowDescriptor SylowDescriptor::trivial(int degree) {
    SylowDescriptor s;
    s.degree = degree;
    return s;
}

SylowDescriptor SylowDescriptor::cyclic(u64 p, int k) {
    if (k == 0) return trivial(1);
    SylowDescriptor s;
    s.kind = Kind::Cyclic;
    s.p = p;
    s.k = k;
    s.degree = 1;
    for (int i = 0; i < k; ++i) s.degree *= (int)p;
    return s;
}

namespace {

// points moved by the group, as opposed to its recorded degree
int natural_degree(const SylowDescriptor& s) {
    using K = SylowDescriptor::Kind;
    switch (s.kind) {
    case K::Trivial: return 0;
    case K::Cyclic:
    case K::Wreath: {
        int n = 1;
        if (s.kind == K::Cyclic)
            for (int i = 0; i < s.k; ++i) n *= (int)s.p;
        else
            n = s.parts[0].degree * s.parts[1].degree;
        return n;
    }
    case K::Product: {
        int n = 0;
        for (auto& x : s.parts) n += natural_degree(x);
        return n;
    }
    }
    return 0;
}

}  // namespace

SylowDescriptor SylowDescriptor::wreath(const SylowDescriptor& top, const SylowDescriptor& base) {
    int deg = top.degree * base.degree;
    if (base.log_order() == 0) {
        SylowDescriptor s = top;
        s.degree = deg;
        return s;
    }
    std::vector<SylowDescriptor> pieces;
    auto add_moving = [&](SylowDescriptor t) {
        t.degree = natural_degree(t);
        SylowDescriptor s;
        s.kind = Kind::Wreath;
        s.p = t.p;
        s.degree = t.degree * base.degree;
        s.parts = {t, base};
        pieces.push_back(s);
    };
    if (top.kind == Kind::Product)
        for (auto& x : top.parts) add_moving(x);
    else if (top.kind != Kind::Trivial)
        add_moving(top);
    for (int i = natural_degree(top); i < top.degree; ++i) pieces.push_back(base);
    SylowDescriptor s = product(std::move(pieces));
    s.degree = deg;
    return s;
}

SylowDescriptor SylowDescriptor::product(std::vector<SylowDescriptor> parts) {
    std::vector<SylowDescriptor> flat;
    int deg = 0;
    for (auto& x : parts) {
        deg += x.degree;
        if (x.kind == Kind::Product)
            for (auto& y : x.parts) flat.push_back(y);
        else if (x.kind != Kind::Trivial)
            flat.push_back(x);
    }
    if (flat.empty()) return trivial(deg);
    if (flat.size() == 1) {
        SylowDescriptor s = flat[0];
        s.degree = deg;
        return s;
    }
    SylowDescriptor s;
    s.kind = Kind::Product;
    s.p = flat[0].p;
    s.degree = deg;
    s.parts = std::move(flat);
    return s;
}

int SylowDescriptor::log_order() const {
    switch (kind) {
    case Kind::Trivial: return 0;
    case Kind::Cyclic: return k;
    case Kind::Wreath: return parts[0].log_order() + parts[0].degree * parts[1].log_order();
    case Kind::Product: {
        int s = 0;
        for (auto& x : parts) s += x.log_order();
        return s;
    }
    }
    return 0;
}

std::string SylowDescriptor::to_string() const {
    switch (kind) {
    case Kind::Trivial: return "1";
    case Kind::Cyclic: {
        u64 o = 1;
        for (int i = 0; i < k; ++i) o *= p;
        return "C" + std::to_string(o);
    }
    case Kind::Wreath: return "Wreath(" + parts[0].to_string() + "," + parts[1].to_string() + ")";
    case Kind::Product: {
        std::string out;
        for (size_t i = 0; i < parts.size();) {
            size_t j = i;
            std::string s = parts[i].to_string();
            while (j < parts.size() && parts[j].to_string() == s) ++j;
            if (!out.empty()) out += " x ";
            out += s;
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }
    }
    return "";
}

SylowDescriptor sylow_sigma_descriptor(int d, u64 p) {
    if (d < 1) throw InvalidInput("d must be >= 1");
    if (!is_prime(p)) throw InvalidInput("p must be prime");
    std::vector<SylowDescriptor> parts;
    SylowDescriptor level = SylowDescriptor::trivial(1);
    for (u64 rest = (u64)d; rest; rest /= p) {
        for (u64 c = 0; c < rest % p; ++c) parts.push_back(level);
        level = level.kind == SylowDescriptor::Kind::Trivial
                    ? SylowDescriptor::cyclic(p, 1)
                    : SylowDescriptor::wreath(SylowDescriptor::cyclic(p, 1), level);
    }
    SylowDescriptor s = SylowDescriptor::product(std::move(parts));
    if (s.log_order() != vp_factorial((u64)d, p))
        throw InvariantViolation("Sylow descriptor of the symmetric group has the wrong order");
    return s;
}

SylowDescriptor sylow_gl_descriptor(int d, u64 q, u64 p) {
    int expect = vp_gl_order(d, q, p);
    int v = vp_int((i64)q - 1, p);
    SylowDescriptor s;
    if (v > 0) {
        s = SylowDescriptor::wreath(sylow_sigma_descriptor(d, p), SylowDescriptor::cyclic(p, v));
    } else {
        u64 a = mult_order_mod_p((i64)q, p);
        if ((u64)d >= p)
            throw Unsupported("no Sylow descriptor for v_p(q - 1) = 0 and d >= p");
        u64 m = (u64)d / a;
        std::vector<SylowDescriptor> parts(m, SylowDescriptor::cyclic(p, vp_pow_minus_one((i64)q, a, p)));
        s = SylowDescriptor::product(std::move(parts));
        s.degree = d;
    }
    if (s.log_order() != expect)
        throw InvariantViolation("Sylow descriptor order disagrees with |GL_d(F_q)|");
    return s;
}

u64 permutation_group_order(const std::vector<std::vector<int>>& gens, u64 limit) {
    if (gens.empty()) return 1;
    size_t n = gens[0].size();
    std::vector<int> id(n);
    for (size_t i = 0; i < n; ++i) id[i] = (int)i;
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& x : frontier)
            for (auto& g : gens) {
                std::vector<int> y(n);
                for (size_t i = 0; i < n; ++i) y[i] = g[x[i]];
                if (seen.insert(y).second) {
                    if (seen.size() > limit) throw TooLarge("permutation group exceeds limit");
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::vector<std::vector<int>> wreath_cp_cp_generators(int p) {
    if (p < 2) throw InvalidInput("p must be >= 2");
    int n = p * p;
    std::vector<int> base(n), top(n);
    for (int b = 0; b < p; ++b)
        for (int i = 0; i < p; ++i) {
            base[b * p + i] = b == 0 ? (i + 1) % p : b * p + i;
            top[b * p + i] = ((b + 1) % p) * p + i;
        }
    return {base, top};
}

// ---- the cyclic subgroup A

GeneratorA build_generator_a(u64 q, u64 p) {
    int v = require_v(q, p);
    GeneratorA G;
    G.F = Fq::make(q);
    G.p = (int)p;
    G.v = v;
    u64 pv = checked_power(p, v, q, "p^v");
    G.a_v = G.F->exp((q - 1) / pv);
    G.gamma = GLMat::cycle(G.F, (int)p);
    std::vector<u32> dg(p, 1);
    dg[0] = G.a_v;
    G.a = G.gamma * GLMat::diag(G.F, dg);
    G.order = G.a.order(pv * p);
    if (G.order != pv * p) throw InvariantViolation("a does not have order p^{v+1}");
    if (G.a.pow(p) != GLMat::scalar(G.F, (int)p, G.a_v))
        throw InvariantViolation("a^p is not the scalar a_v");
    return G;
}

NormalizerScan normalizer_exponents(u64 q, u64 p, u64 limit) {
    GeneratorA G = build_generator_a(q, p);
    int d = (int)p;
    u64 total = checked_power(q, (u64)d * d, limit, "normalizer scan exceeds the exhaustive limit");
    std::vector<GLMat> powers;
    for (u64 s = 0; s < G.order; ++s) powers.push_back(G.a.pow(s));
    NormalizerScan out;
    out.matrices = total;
    u64 pv = G.order / p;
    out.all_one_mod_pv = true;
    for (u64 code = 0; code < total; ++code) {
        GLMat g = decode_matrix(G.F, d, code);
        if (!g.invertible()) continue;
        ++out.invertible;
        GLMat ga = g * G.a;
        for (u64 s = 1; s < G.order; ++s) {
            if (s % p == 0) continue;
            if (powers[s] * g == ga) {
                ++out.normalizing;
                out.exponents.insert(s);
                if (s % pv != 1 % pv) out.all_one_mod_pv = false;
                break;
            }
        }
    }
    if (!out.all_one_mod_pv) throw InvariantViolation("normalizer exponent not 1 mod p^v");
    return out;
}

GammaDiagonalization diagonalize_gamma(u64 q, u64 p) {
    int v = require_v(q, p);
    GammaDiagonalization D;
    auto F = Fq::make(q);
    int d = (int)p;
    u64 pv = checked_power(p, v, q, "p^v");
    u32 u = F->exp((q - 1) / pv);
    u32 zeta = F->pow(u, pv / p);
    D.gamma = GLMat::cycle(F, d);
    D.g = GLMat(F, d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) D.g.at(i, k) = F->pow(zeta, (u64)i * k);
    D.conj = D.g.inverse() * D.gamma * D.g;
    D.diagonal = D.conj.is_diagonal();
    for (int k = 0; k < d; ++k) D.eigenvalues.push_back(D.conj.at(k, k));
    std::set<u32> uniq(D.eigenvalues.begin(), D.eigenvalues.end());
    D.distinct = (int)uniq.size() == d;
    bool expected = true;
    for (int k = 0; k < d; ++k) expected = expected && D.eigenvalues[k] == F->pow(zeta, k);
    if (!D.diagonal || !D.distinct || !expected)
        throw InvariantViolation("conjugated gamma is not diag(1, zeta, .., zeta^{p-1})");
    return D;
}

// ---- F_{q^p}^x inside GL_p(F_q)

MuEmbedding::MuEmbedding(u64 q, u64 p) {
    require_v(q, p);
    p_ = (int)p;
    Fs_ = Fq::make(q);
    u64 Q = checked_power(q, p, kMaxField, "F_{q^p} exceeds the field table limit");
    Fb_ = Fq::make(Q);
    const Fq& S = *Fs_;
    const Fq& B = *Fb_;
    int r = S.r();

    // root of the small field's modulus in the big field
    auto eval = [&](u32 x) {
        u32 acc = 0;
        for (size_t i = S.modulus().size(); i-- > 0;)
            acc = B.add(B.mul(acc, x), B.from_int(S.modulus()[i]));
        return acc;
    };
    u32 rho = 0;
    bool found = false;
    for (u32 x = 0; x < B.q() && !found; ++x)
        if (eval(x) == 0) { rho = x; found = true; }
    if (!found) throw InvariantViolation("no embedding of F_q found");

    emb_.assign(S.q(), 0);
    unemb_.assign(B.q(), UINT32_MAX);
    for (u32 c = 0; c < S.q(); ++c) {
        auto dg = S.digits(c);
        u32 acc = 0;
        for (int i = r; i-- > 0;) acc = B.add(B.mul(acc, rho), B.from_int(dg[i]));
        emb_[c] = acc;
        unemb_[acc] = c;
    }
    for (u32 x = 0; x < B.q(); ++x)
        if (unemb_[x] == UINT32_MAX) { theta_ = x; break; }

    // F_l-basis emb(l^i) theta^j, index j r + i
    int n = r * p_;
    u32 l = S.l();
    std::vector<std::vector<u32>> M(n, std::vector<u32>(2 * n, 0));
    for (int j = 0; j < p_; ++j)
        for (int i = 0; i < r; ++i) {
            u32 c = 1;
            for (int t = 0; t < i; ++t) c *= l;
            auto dg = B.digits(B.mul(emb_[c], B.pow(theta_, j)));
            for (int row = 0; row < n; ++row) M[row][j * r + i] = dg[row];
        }
    for (int i = 0; i < n; ++i) M[i][n + i] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int row = c; row < n; ++row)
            if (M[row][c]) { piv = row; break; }
        if (piv < 0) throw InvariantViolation("theta does not generate F_{q^p} over F_q");
        std::swap(M[c], M[piv]);
        u32 inv = inv_mod(M[c][c], l);
        for (auto& x : M[c]) x = (u32)((u64)x * inv % l);
        for (int row = 0; row < n; ++row) {
            if (row == c || !M[row][c]) continue;
            u32 f = M[row][c];
            for (int j = 0; j < 2 * n; ++j)
                M[row][j] = (u32)((M[row][j] + (u64)(l - f) * M[c][j]) % l);
        }
    }
    solve_basis_.assign(n, std::vector<u32>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) solve_basis_[i][j] = M[i][n + j];
}

std::vector<u32> MuEmbedding::coords(u32 a) const {
    const Fq& S = *Fs_;
    int r = S.r(), n = r * p_;
    u32 l = S.l();
    auto dg = Fb_->digits(a);
    std::vector<u32> out(p_);
    for (int j = 0; j < p_; ++j) {
        std::vector<u32> c(r);
        for (int i = 0; i < r; ++i) {
            u64 acc = 0;
            for (int k = 0; k < n; ++k) acc += (u64)solve_basis_[j * r + i][k] * dg[k];
            c[i] = (u32)(acc % l);
        }
        out[j] = S.from_digits(c);
    }
    return out;
}

GLMat MuEmbedding::mu(u32 a) const {
    GLMat m(Fs_, p_);
    for (int j = 0; j < p_; ++j) {
        auto c = coords(Fb_->mul(a, Fb_->pow(theta_, j)));
        for (int i = 0; i < p_; ++i) m.at(i, j) = c[i];
    }
    return m;
}

u32 MuEmbedding::norm(u32 a) const {
    u64 q = Fs_->q(), Q = Fb_->q();
    u32 x = Fb_->pow(a, (Q - 1) / (q - 1));
    if (unemb_[x] == UINT32_MAX) throw InvariantViolation("norm outside F_q");
    return unemb_[x];
}

u32 MuEmbedding::sylow_generator() const {
    u64 Q = Fb_->q();
    u64 m = Q - 1;
    while (m % (u64)p_ == 0) m /= p_;
    return Fb_->exp(m);
}

MuReport verify_mu(const MuEmbedding& M, u64 seed, int samples) {
    const Fq& B = *M.big();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u32> pick(1, B.q() - 1);
    MuReport R;
    R.samples = samples;
    int d = M.mu(1).d;
    R.identity = M.mu(1) == GLMat::identity(M.small(), d);
    R.homomorphism = true;
    R.det_is_norm = true;
    for (int i = 0; i < samples; ++i) {
        u32 x = pick(rng), y = pick(rng);
        GLMat mx = M.mu(x);
        if (M.mu(B.mul(x, y)) != mx * M.mu(y)) R.homomorphism = false;
        if (mx.det() != M.norm(x)) R.det_is_norm = false;
    }
    u64 m = B.q() - 1;
    R.expected_sylow_order = 1;
    while (m % (u64)d == 0) { m /= d; R.expected_sylow_order *= d; }
    R.sylow_order = M.mu(M.sylow_generator()).order(R.expected_sylow_order);
    if (!R.ok()) throw InvariantViolation("mu is not an embedding with the expected image");
    return R;
}

ConjugacyCheck conjugacy_exhaustive(u64 q, u64 p, u64 limit) {
    GeneratorA G = build_generator_a(q, p);
    int d = (int)p;
    u64 total = checked_power(q, (u64)d * d, limit, "conjugacy scan exceeds the exhaustive limit");
    std::vector<u64> units;
    for (u64 code = 0; code < total; ++code)
        if (decode_matrix(G.F, d, code).invertible()) units.push_back(code);

    std::vector<GLMat> gens;
    for (u64 s = 1; s < G.order; ++s)
        if (s % p) gens.push_back(G.a.pow(s));
    // element -> index of a conjugator h with h^-1 g h in <a>
    std::unordered_map<u64, u64> conj;
    for (u64 hc : units) {
        GLMat h = decode_matrix(G.F, d, hc), hi = h.inverse();
        for (auto& x : gens) conj.emplace(encode_matrix(h * x * hi), hc);
    }
    ConjugacyCheck out;
    u64 pv = G.order / p;
    GLMat id = GLMat::identity(G.F, d);
    for (u64 code : units) {
        GLMat g = decode_matrix(G.F, d, code);
        GLMat gpv = g.pow(pv);
        if (gpv == id || gpv.pow(p) != id) continue;
        ++out.order_elements;
        auto it = conj.find(code);
        if (it == conj.end()) continue;
        GLMat h = decode_matrix(G.F, d, it->second);
        GLMat back = h.inverse() * g * h;
        if (std::find(gens.begin(), gens.end(), back) != gens.end()) ++out.conjugate_to_A;
    }
    return out;
}

}  // namespace morava
