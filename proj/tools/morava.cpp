#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "morava/acceptance.hpp"
#include "morava/serialize.hpp"
#include "morava/weierstrass.hpp"

using namespace morava;

namespace {

struct RunConfig {
    u64 p = 3;
    int n = 1;
    i64 q = 4;
    int N = 6;
    int Du = 0;       // 0: 1 at n = 1, 2 otherwise
    int Dx = 30;
    int Nout = 2;
    std::string format = "table";
    std::string output;
    u64 seed = 1;

    // command-specific
    bool honda = false;
    i64 m = 0;
    int r = 1;
    int d = 1;
    int v = 1;
    int k = 0;
    int M = 0;
    bool brute = false;
    bool sigma = false;
    bool no_stretch = false;
    bool no_table = false;
    std::vector<i64> orders;
    std::vector<int> only;
    std::string check;
};

// Result of one subcommand: the JSON report plus its table rendering.
struct Report {
    Json json;
    std::string table;
    bool ok = true;
};

PrecisionCtx precision(const RunConfig& c) {
    int Du = c.Du ? c.Du : (c.n == 1 ? 1 : 2);
    if (c.N < 1 || c.Dx < 2 || c.n < 1) throw InvalidInput("need N >= 1, Dx >= 2, n >= 1");
    return PrecisionCtx(c.p, c.N, c.n, Du, c.Dx);
}

Json base_params(const RunConfig& c) {
    return Json{{"p", c.p}, {"n", c.n}, {"q", c.q}, {"N", c.N}, {"Dx", c.Dx}};
}

FGL make_fgl(const RunConfig& c) {
    PrecisionCtx ctx = precision(c);
    return c.honda ? build_honda(ctx) : build_ptypical(ctx);
}

std::string series_table(const USeries& f) {
    std::ostringstream os;
    const auto& R = f.ring();
    for (int i = 0; i < f.len(); ++i) {
        if (f.coeff_zero(i)) continue;
        os << "x^" << i << ":";
        for (int j = 0; j < R->M(); ++j) os << " " << R->pc().digits(f.at(i)[j]);
        os << "\n";
    }
    return os.str();
}

// ---- fgl

Report fgl_build(const RunConfig& c) {
    FGL F = make_fgl(c);
    AxiomReport ax = check_axioms(F);
    Json coeffs = Json::array();
    const auto& S = F.F.shape();
    for (int i = 0; i < S->size(); ++i) {
        if (F.F.coeff_zero(i)) continue;
        Json dg = Json::array();
        for (int j = 0; j < F.ctx.e0->M(); ++j) dg.push_back(F.ctx.e0->pc().digits(F.F.at(i)[j]));
        coeffs.push_back(Json{{"x", S->exps(i)[0]}, {"y", S->exps(i)[1]}, {"coeff", dg}});
    }
    Report R;
    R.ok = ax.ok();
    R.json = envelope("fgl.build", base_params(c),
                      Json{{"name", F.name},
                           {"axioms", {{"identity", ax.identity}, {"commutativity", ax.commutativity},
                                       {"associativity", ax.associativity}}},
                           {"terms", coeffs.size()},
                           {"coefficients", coeffs}});
    std::ostringstream os;
    os << F.name << ": " << coeffs.size() << " nonzero terms below total degree " << c.Dx << "\n"
       << "axioms " << (ax.ok() ? "pass" : "FAIL " + ax.first_offense) << "\n";
    R.table = os.str();
    return R;
}

Report fgl_pseries(const RunConfig& c) {
    FGL F = make_fgl(c);
    i64 m = c.m ? c.m : (i64)c.p;
    USeries s = m_series(F, m);
    Report R;
    Json res{{"m", m}, {"series", to_json(s)}};
    if (m == (i64)c.p) {
        Json cong = Json::array();
        for (int i = 1; i <= c.n; ++i) {
            bool ok = pseries_congruence(s, i, c.n);
            cong.push_back(ok);
            R.ok = R.ok && ok;
        }
        res["congruences"] = cong;
    }
    R.json = envelope("fgl.pseries", base_params(c), res);
    R.table = "[" + std::to_string(m) + "](x)\n" + series_table(s);
    return R;
}

Report fgl_height(const RunConfig& c) {
    FGL F = make_fgl(c);
    Height h = height(F);
    Report R;
    R.json = envelope("fgl.height", base_params(c), Json{{"infinite", h.infinite}, {"height", h.n}});
    R.table = (h.infinite ? std::string("infinite") : std::to_string(h.n)) + "\n";
    return R;
}

Report fgl_weierstrass(const RunConfig& c) {
    FGL F = make_fgl(c);
    auto W = pr_weierstrass(F, c.r);
    Report R;
    Json res{{"r", c.r}, {"degree", W.D}, {"g", to_json(W.g)}, {"u_valid", W.u_valid}, {"iterations", W.iterations}};
    R.json = envelope("fgl.weierstrass", base_params(c), res);
    R.table = "g_" + std::to_string(c.r) + " of degree " + std::to_string(W.D) + "\n" + series_table(W.g);
    return R;
}

// ---- ring

Report ring_cyclic(const RunConfig& c) {
    FGL F = build_honda(precision(c));
    i64 m = c.m ? c.m : (i64)c.p;
    QuotientRing Q = cyclic_ring(m, F);
    Report R;
    R.json = envelope("ring.cyclic", base_params(c), Json{{"m", m}, {"rank", Q.rank()}, {"modulus", to_json(Q.modulus())}});
    R.table = "rank " + std::to_string(Q.rank()) + "\n" + series_table(Q.modulus());
    return R;
}

Report ring_abelian(const RunConfig& c) {
    if (c.orders.empty()) throw InvalidInput("--orders is required");
    FGL F = build_honda(precision(c));
    AbelianRing A = abelian_ring(c.orders, F);
    Report R;
    R.json = envelope("ring.abelian", base_params(c), Json{{"orders", c.orders}, {"rank", A.rank()}});
    R.table = "rank " + std::to_string(A.rank()) + "\n";
    return R;
}

Report ring_torus(const RunConfig& c) {
    FGL F = build_honda(precision(c));
    TorusRing T = torus_invariant_ring(c.d, c.v, F);
    Report R;
    R.json = envelope("ring.torus", base_params(c),
                      Json{{"d", c.d}, {"v", c.v}, {"N", T.N()}, {"rank", T.rank()}, {"sigma_basis", T.sigma_basis()}});
    R.table = "rank " + std::to_string(T.rank()) + " (N = " + std::to_string(T.N()) + ")\n";
    return R;
}

Report ring_sigma_p(const RunConfig& c) {
    FGL F = build_ptypical(precision(c));
    SigmaPModel S = sigma_p_ring(F);
    Report R;
    Json res{{"rank", S.rank}, {"f_degree", S.f_degree}, {"f", to_json(S.fPoly)}, {"W", to_json(S.W)}};
    std::ostringstream os;
    os << "rank " << S.rank << ", deg f = " << S.f_degree << "\n";
    if (!c.check.empty()) {
        if (c.check != "f0") throw InvalidInput("unknown check '" + c.check + "'");
        bool ok = S.fPoly.coeff(0) == E0Elem(F.ctx.e0, (i64)c.p);
        res["check"] = {{"name", "f0"}, {"pass", ok}};
        os << "f(0)=" << S.fPoly.scalar(0) << "\n" << (ok ? "pass" : "FAIL") << "\n";
        R.ok = ok;
    }
    R.json = envelope("ring.sigma-p", base_params(c), res);
    R.table = os.str();
    return R;
}

// ---- glp

GLpParams glp_params(const RunConfig& c) { return GLpParams::make(c.p, c.n, c.q, c.Nout); }

Report glp_d(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    const auto& D = C.D();
    Report R;
    R.json = envelope("glp.d", to_json(C.params()),
                      Json{{"degree", poly_degree(D.g)}, {"N", D.N}, {"g", to_json(D.g)}, {"y", to_json(D.y)}});
    R.table = "deg g = " + std::to_string(poly_degree(D.g)) + ", N = " + std::to_string(D.N) + "\n" + series_table(D.g);
    return R;
}

Report glp_d_gamma(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    const auto& G = C.DG();
    Report R;
    R.json = envelope("glp.d-gamma", to_json(C.params()), Json{{"degree", poly_degree(G.h)}, {"h", to_json(G.h)}});
    R.table = "h(y) of degree " + std::to_string(poly_degree(G.h)) + "\n" + series_table(G.h);
    return R;
}

Report glp_h2(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    H2Series H = C.build_h2();
    Report R;
    R.json = envelope("glp.h2", to_json(C.params()), to_json(H));
    std::ostringstream os;
    os << "h(d, s): " << H.J << " s-digits, " << H.dcount << " d-powers, x checked to " << H.x_valid << "\n";
    for (int j = 0; j < std::min(H.J, 8); ++j) os << "s^" << j << ": " << H.pc.digits(H.coeff[j][0]) << "\n";
    R.table = os.str();
    return R;
}

Report glp_t_relation(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    auto rep = C.verify_t_relation();
    Report R;
    R.ok = rep.ok();
    R.json = envelope("glp.t-relation", to_json(C.params()), to_json(rep));
    R.table = std::string("torus ") + (rep.torus ? "pass" : "FAIL") + "\nSigma_p x Delta " +
              (rep.sigma_delta ? "pass" : "FAIL") + "\nD^Gamma " + (rep.d_gamma ? "pass" : "FAIL") + "\n";
    return R;
}

Report glp_algebra(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    GLPAlgebra A = C.algebra();
    Report R;
    R.ok = A.Mt_independent && A.ker_product_zero && A.beta_surjective;
    R.json = envelope("glp.algebra", to_json(C.params()), to_json(A, !c.no_table));
    std::ostringstream os;
    os << "rank " << A.rank << " = " << A.rank_T << " + " << A.N << "\n"
       << "v_p(det M_t) = " << A.det_Mt_val << "\n"
       << "ker products zero: " << (A.ker_product_zero ? "yes" : "NO") << " (" << A.ker_products_checked << ")\n";
    R.table = os.str();
    return R;
}

Report glp_k(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    KAlgebra K = k_reduce(C.algebra());
    Report R;
    R.ok = K.report.ok();
    R.json = envelope("glp.k-nilpotency", to_json(C.params()), to_json(K.report));
    std::ostringstream os;
    os << "c_p^" << K.report.first_vanishing - 1 << " != 0, c_p^" << K.report.first_vanishing << " = 0"
       << " (expected index " << K.report.expected_index << ")\n"
       << "ideal dimension " << K.report.ideal_dim << (K.report.ok() ? ", pass" : ", FAIL") << "\n";
    R.table = os.str();
    return R;
}

Report glp_crt(const RunConfig& c) {
    GLpChain C(glp_params(c), c.seed);
    CRTWitness W = C.crt_witness();
    Report R;
    R.ok = W.identity_ok && W.canonical_ok;
    R.json = envelope("glp.crt-witness", to_json(C.params()), to_json(W));
    R.table = "A g_v + B g = p: " + std::string(W.identity_ok ? "pass" : "FAIL") + ", slack " +
              std::to_string(W.slack) + ", value at 0 " + std::to_string(W.value_at_zero) + "\n";
    return R;
}

// ---- groups

Json group_params(const RunConfig& c) { return Json{{"d", c.d}, {"q", c.q}, {"p", c.p}}; }

Report groups_order(const RunConfig& c) {
    BigInt o = gl_order(c.d, (u64)c.q);
    int v = vp_gl_order(c.d, (u64)c.q, c.p);
    Report R;
    R.json = envelope("groups.order", group_params(c), Json{{"order", o.str()}, {"vp", v}});
    R.table = "|GL_" + std::to_string(c.d) + "(F_" + std::to_string(c.q) + ")| = " + o.str() + "\nv_" +
              std::to_string(c.p) + " = " + std::to_string(v) + "\n";
    return R;
}

Report groups_sylow(const RunConfig& c) {
    SylowDescriptor s = c.sigma ? sylow_sigma_descriptor(c.d, c.p) : sylow_gl_descriptor(c.d, (u64)c.q, c.p);
    Report R;
    R.json = envelope("groups.sylow", group_params(c), to_json(s));
    R.table = s.to_string() + ", order " + std::to_string(c.p) + "^" + std::to_string(s.log_order()) + "\n";
    return R;
}

Report groups_generator_a(const RunConfig& c) {
    GeneratorA G = build_generator_a((u64)c.q, c.p);
    Report R;
    R.json = envelope("groups.generator-a", group_params(c),
                      Json{{"a", to_json(G.a)}, {"gamma", to_json(G.gamma)}, {"a_v", G.a_v}, {"order", G.order}});
    R.table = "a = " + G.a.to_string() + "\norder " + std::to_string(G.order) + "\n";
    return R;
}

Report groups_normalizer(const RunConfig& c) {
    NormalizerScan S = normalizer_exponents((u64)c.q, c.p);
    Report R;
    R.ok = S.all_one_mod_pv;
    R.json = envelope("groups.normalizer-scan", group_params(c), to_json(S));
    std::ostringstream os;
    os << "exponents {";
    bool first = true;
    for (u64 s : S.exponents) { os << (first ? "" : ", ") << s; first = false; }
    os << "}; " << S.normalizing << " of " << S.invertible << " invertible matrices normalize A\n";
    R.table = os.str();
    return R;
}

Report groups_diagonalize(const RunConfig& c) {
    GammaDiagonalization D = diagonalize_gamma((u64)c.q, c.p);
    Report R;
    R.ok = D.diagonal && D.distinct;
    R.json = envelope("groups.diagonalize", group_params(c),
                      Json{{"g", to_json(D.g)}, {"conjugate", to_json(D.conj)}, {"eigenvalues", D.eigenvalues}});
    R.table = "g = " + D.g.to_string() + "\ng^-1 gamma g = " + D.conj.to_string() + "\n";
    return R;
}

// ---- count

Report count_irr(const RunConfig& c) {
    auto P = CountParams::make(c.p, c.n, c.q);
    Count x = irr_count(P, c.k);
    Report R;
    R.json = envelope("count.irr", base_params(c), Json{{"k", c.k}, {"count", x.str()}});
    R.table = x.str() + "\n";
    return R;
}

Report count_rep(const RunConfig& c) {
    auto P = CountParams::make(c.p, c.n, c.q);
    Count x = rep_count(P, c.d);
    Json res{{"d", c.d}, {"count", x.str()}};
    Report R;
    R.table = x.str() + "\n";
    if (c.brute) {
        u64 b = rep_count_bruteforce(P, c.d, c.M);
        res["bruteforce"] = b;
        R.ok = Count(b) == x;
        R.table += "bruteforce " + std::to_string(b) + (R.ok ? " (agrees)" : " (DISAGREES)") + "\n";
    }
    R.json = envelope("count.rep", base_params(c), res);
    return R;
}

Report count_crosscheck(const RunConfig& c) {
    auto r = hkr_rank_crosscheck(CountParams::make(c.p, c.n, c.q), c.d);
    Report R;
    R.json = envelope("count.crosscheck", base_params(c), to_json(r));
    R.table = r.count.str() + " = " + std::to_string(r.rank) + " (" + r.source + ")\n";
    return R;
}

// ---- suite

Report suite_acceptance(const RunConfig& c) {
    AcceptanceOptions opt;
    opt.seed = c.seed;
    opt.stretch = !c.no_stretch;
    opt.only = c.only;
    auto results = run_acceptance(opt);
    Report R;
    Json arr = Json::array();
    std::ostringstream os;
    int red = 0;
    for (const auto& r : results) {
        arr.push_back(to_json(r));
        os << format_line(r) << "\n";
        red += !r.pass;
    }
    os << red << " of " << results.size() << " criteria red\n";
    R.ok = red == 0;
    R.json = envelope("suite.acceptance", Json{{"seed", c.seed}, {"stretch", opt.stretch}}, arr);
    R.table = os.str();
    return R;
}

void emit(const RunConfig& c, const Report& R) {
    std::string text = c.format == "json" ? R.json.dump(2) + "\n" : R.table;
    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.output);
        if (!f) throw InvalidInput("cannot write " + c.output);
        f << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morava E-theory rings of small finite groups"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file supplying defaults");
    RunConfig c;
    app.add_option("--p", c.p, "prime")->capture_default_str();
    app.add_option("--n", c.n, "height")->capture_default_str();
    app.add_option("--q", c.q, "field size")->capture_default_str();
    app.add_option("--N,--Nprec", c.N, "p-adic digits")->capture_default_str();
    app.add_option("--Du", c.Du, "u-adic truncation (0: automatic)");
    app.add_option("--Dx", c.Dx, "x-adic truncation")->capture_default_str();
    app.add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    app.add_option("-o,--output", c.output, "write the report to a file");
    app.add_option("--seed", c.seed, "seed for sampled checks")->capture_default_str();

    std::function<Report(const RunConfig&)> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Report (*fn)(const RunConfig&)) {
        CLI::App* s = parent->add_subcommand(name, help);
        s->callback([&action, fn] { action = fn; });
        return s;
    };

    auto* fgl = app.add_subcommand("fgl", "formal group laws")->require_subcommand(1);
    for (auto* s : {leaf(fgl, "build", "p-typical law and axiom check", fgl_build),
                    leaf(fgl, "pseries", "[m](x)", fgl_pseries), leaf(fgl, "height", "height of the law", fgl_height),
                    leaf(fgl, "weierstrass", "Weierstrass polynomial of [p^r](x)", fgl_weierstrass)}) {
        s->add_flag("--honda", c.honda, "Honda law (u_i = 0)");
        s->add_option("--m", c.m, "multiplier (default p)");
        s->add_option("--r", c.r, "r for g_r");
    }

    auto* ring = app.add_subcommand("ring", "rings of abelian groups and Sigma_p")->require_subcommand(1);
    leaf(ring, "cyclic", "E0(BC_m)", ring_cyclic)->add_option("--m", c.m, "group order");
    leaf(ring, "abelian", "E0 of a product of cyclic groups", ring_abelian)
        ->add_option("--orders", c.orders, "orders of the cyclic factors")->delimiter(',');
    auto* torus = leaf(ring, "torus", "torus invariants", ring_torus);
    torus->add_option("--d", c.d, "rank of the torus");
    torus->add_option("--v", c.v, "v with torus of order p^v");
    leaf(ring, "sigma-p", "E0(BSigma_p)", ring_sigma_p)->add_option("--check", c.check, "f0");

    auto* glp = app.add_subcommand("glp", "GL_p(F_q) at dimension p")->require_subcommand(1);
    for (auto* s : {leaf(glp, "d", "the ring D", glp_d), leaf(glp, "d-gamma", "the ring D^Gamma", glp_d_gamma),
                    leaf(glp, "h2", "h(d, s)", glp_h2), leaf(glp, "t-relation", "t + d h(d, c_p) = 0", glp_t_relation),
                    leaf(glp, "algebra", "structure constants", glp_algebra),
                    leaf(glp, "k-nilpotency", "nilpotency of c_p mod (p, u)", glp_k),
                    leaf(glp, "crt-witness", "A g_v + B g = p", glp_crt)}) {
        s->add_option("--Nout", c.Nout, "digits kept in the structure constants");
        s->add_flag("--no-table", c.no_table, "omit the multiplication table from JSON");
    }

    auto* groups = app.add_subcommand("groups", "finite general linear groups")->require_subcommand(1);
    for (auto* s : {leaf(groups, "order", "|GL_d(F_q)| and its p-valuation", groups_order),
                    leaf(groups, "sylow", "Sylow p-subgroup descriptor", groups_sylow),
                    leaf(groups, "generator-a", "the generator a of A", groups_generator_a),
                    leaf(groups, "normalizer-scan", "exhaustive normalizer of A", groups_normalizer),
                    leaf(groups, "diagonalize", "diagonalize gamma", groups_diagonalize)}) {
        s->add_option("--d", c.d, "dimension");
        s->add_flag("--sigma", c.sigma, "descriptor of Syl_p(Sigma_d) instead");
    }

    auto* count = app.add_subcommand("count", "representation counts")->require_subcommand(1);
    for (auto* s : {leaf(count, "irr", "irreducibles of dimension p^k", count_irr),
                    leaf(count, "rep", "representations of dimension d", count_rep),
                    leaf(count, "crosscheck", "count against ring rank", count_crosscheck)}) {
        s->add_option("--d", c.d, "dimension");
        s->add_option("--k", c.k, "k for dimension p^k");
        s->add_flag("--brute", c.brute, "also enumerate directly");
        s->add_option("--M", c.M, "enumeration level (0: automatic)");
    }

    auto* suite = app.add_subcommand("suite", "acceptance battery")->require_subcommand(1);
    auto* acc = leaf(suite, "acceptance", "criteria 1 to 9", suite_acceptance);
    acc->add_flag("--no-stretch", c.no_stretch, "skip the (3,2,1,4) run");
    acc->add_option("--only", c.only, "criteria to run")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (!action) throw InvalidInput("no command");
        Report R = action(c);
        emit(c, R);
        return R.ok ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
