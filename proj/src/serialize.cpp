#include "morava/serialize.hpp"

namespace morava {

namespace {

Json digit_list(const std::vector<u64>& v, const PadicCtx& pc) {
    Json a = Json::array();
    for (u64 x : v) a.push_back(pc.digits(x));
    return a;
}

}  // namespace

Json envelope(const std::string& kind, Json params, Json result) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = kind;
    j["params"] = std::move(params);
    j["result"] = std::move(result);
    return j;
}

u64 parse_digits(const std::string& s, const PadicCtx& pc) {
    std::vector<u64> dg;
    if (pc.p <= 10) {
        for (char c : s) {
            if (c < '0' || c > '9') throw InvalidInput("bad digit string '" + s + "'");
            dg.push_back((u64)(c - '0'));
        }
    } else {
        size_t start = 0;
        while (start <= s.size()) {
            size_t dot = s.find('.', start);
            std::string part = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                throw InvalidInput("bad digit string '" + s + "'");
            dg.push_back(std::stoull(part));
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
    }
    if ((int)dg.size() != pc.N) throw InvalidInput("digit string '" + s + "' has the wrong length");
    u64 r = 0;
    for (u64 d : dg) {
        if (d >= pc.p) throw InvalidInput("digit out of range in '" + s + "'");
        r = r * pc.p + d;
    }
    return r;
}

Json to_json(const PadicCtx& pc) { return Json{{"p", pc.p}, {"N", pc.N}}; }

Json to_json(const USeries& f) {
    const auto& R = f.ring();
    Json j;
    j["p"] = R->pc().p;
    j["N"] = R->pc().N;
    j["n"] = R->n();
    j["Du"] = R->Du();
    j["len"] = f.len();
    Json c = Json::array();
    for (int i = 0; i < f.len(); ++i) {
        if (R->scalar()) {
            c.push_back(R->pc().digits(f.scalar(i)));
        } else {
            c.push_back(digit_list(std::vector<u64>(f.at(i), f.at(i) + R->M()), R->pc()));
        }
    }
    j["coeffs"] = c;
    return j;
}

Json to_json(const GLpParams& P) {
    return Json{{"p", P.p}, {"n", P.n}, {"q", P.q}, {"v", P.v}, {"N", P.N},
                {"pnv", P.pnv}, {"Nout", P.Nout}, {"Nw", P.Nw}, {"Dx", P.Dx}};
}

Json to_json(const GLPAlgebra& A, bool with_table) {
    Json j;
    j["p"] = A.p;
    j["n"] = A.n;
    j["q"] = A.q;
    j["v"] = A.v;
    j["N"] = A.N;
    j["pnv"] = A.pnv;
    j["precision"] = A.out.N;
    j["rank_T"] = A.rank_T;
    j["rank"] = A.rank;
    j["labels"] = A.labels;
    j["cp_index"] = A.cp_index;
    j["t_index"] = A.t_index;
    j["det_Mt_val"] = A.det_Mt_val;
    j["checks"] = {{"Mt_independent", A.Mt_independent},
                   {"beta_surjective", A.beta_surjective},
                   {"alpha_hits_y", A.alpha_hits_y},
                   {"ker_product_zero", A.ker_product_zero},
                   {"ker_products_checked", A.ker_products_checked},
                   {"rational_preimages", A.rational_preimages},
                   {"rational_trials", A.rational_trials}};
    j["h"] = digit_list(A.h_coeffs, A.out);
    if (with_table) {
        // sparse: [a, b, c, digits] for b_a b_b = sum_c coeff b_c, a <= b
        Json t = Json::array();
        size_t r = (size_t)A.rank;
        for (size_t a = 0; a < r; ++a)
            for (size_t b = a; b < r; ++b)
                for (size_t c = 0; c < r; ++c) {
                    u64 x = A.sc[(a * r + b) * r + c];
                    if (x) t.push_back(Json::array({a, b, c, A.out.digits(x)}));
                }
        j["table"] = t;
    }
    return j;
}

GLPAlgebra glp_algebra_from_json(const Json& j) {
    GLPAlgebra A;
    try {
        A.p = j.at("p").get<u64>();
        A.n = j.at("n").get<int>();
        A.q = j.at("q").get<i64>();
        A.v = j.at("v").get<int>();
        A.N = j.at("N").get<int>();
        A.pnv = j.at("pnv").get<int>();
        A.out = PadicCtx(A.p, j.at("precision").get<int>());
        A.rank_T = j.at("rank_T").get<int>();
        A.rank = j.at("rank").get<int>();
        A.labels = j.at("labels").get<std::vector<std::string>>();
        A.cp_index = j.at("cp_index").get<int>();
        A.t_index = j.at("t_index").get<int>();
        A.det_Mt_val = j.at("det_Mt_val").get<int>();
        const auto& c = j.at("checks");
        A.Mt_independent = c.at("Mt_independent").get<bool>();
        A.beta_surjective = c.at("beta_surjective").get<bool>();
        A.alpha_hits_y = c.at("alpha_hits_y").get<bool>();
        A.ker_product_zero = c.at("ker_product_zero").get<bool>();
        A.ker_products_checked = c.at("ker_products_checked").get<int>();
        A.rational_preimages = c.at("rational_preimages").get<int>();
        A.rational_trials = c.at("rational_trials").get<int>();
        for (const auto& s : j.at("h")) A.h_coeffs.push_back(parse_digits(s.get<std::string>(), A.out));
        size_t r = (size_t)A.rank;
        A.sc.assign(r * r * r, 0);
        for (const auto& e : j.at("table")) {
            size_t a = e.at(0).get<size_t>(), b = e.at(1).get<size_t>(), c2 = e.at(2).get<size_t>();
            if (a >= r || b >= r || c2 >= r) throw InvalidInput("table index out of range");
            u64 x = parse_digits(e.at(3).get<std::string>(), A.out);
            A.sc[(a * r + b) * r + c2] = x;
            A.sc[(b * r + a) * r + c2] = x;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed algebra json: ") + e.what());
    }
    return A;
}

Json to_json(const KReport& r) {
    return Json{{"first_vanishing", r.first_vanishing}, {"expected_index", r.expected_index},
                {"top_nonzero", r.top_nonzero},         {"next_zero", r.next_zero},
                {"ideal_dim", r.ideal_dim},             {"ideal_cyclic", r.ideal_cyclic},
                {"t_equals_power", r.t_equals_power},   {"ok", r.ok()}};
}

Json to_json(const RingElement& e) {
    return Json{{"target", e.target}, {"vars", e.vars},   {"ranks", e.ranks},
                {"p", e.pc.p},        {"N", e.pc.N},      {"coeffs", digit_list(e.coeffs, e.pc)}};
}

Json to_json(const H2Series& h) {
    Json c = Json::array();
    for (const auto& row : h.coeff) c.push_back(digit_list(row, h.pc));
    return Json{{"J", h.J},
                {"dcount", h.dcount},
                {"digits", h.digits},
                {"x_len", h.x_len},
                {"x_valid", h.x_valid},
                {"max_division_steps", h.max_division_steps},
                {"p", h.pc.p},
                {"N", h.pc.N},
                {"coeffs", c}};
}

Json to_json(const TRelationReport& r) {
    return Json{{"torus", r.torus}, {"sigma_delta", r.sigma_delta}, {"d_gamma", r.d_gamma}, {"ok", r.ok()}};
}

Json to_json(const CRTWitness& w) {
    return Json{{"A", to_json(w.A)},          {"B", to_json(w.B)},
                {"slack", w.slack},           {"digits", w.digits},
                {"identity_ok", w.identity_ok}, {"canonical_ok", w.canonical_ok},
                {"value_at_zero", w.value_at_zero}};
}

Json to_json(const SylowDescriptor& s) {
    using K = SylowDescriptor::Kind;
    Json j;
    switch (s.kind) {
    case K::Trivial: j["kind"] = "Trivial"; break;
    case K::Cyclic: j["kind"] = "Cyclic"; j["p"] = s.p; j["k"] = s.k; break;
    case K::Wreath:
        j["kind"] = "Wreath";
        j["top"] = to_json(s.parts[0]);
        j["base"] = to_json(s.parts[1]);
        break;
    case K::Product: {
        j["kind"] = "Product";
        Json f = Json::array();
        for (const auto& x : s.parts) f.push_back(to_json(x));
        j["factors"] = f;
        break;
    }
    }
    j["degree"] = s.degree;
    j["log_order"] = s.log_order();
    j["text"] = s.to_string();
    return j;
}

Json to_json(const NormalizerScan& s) {
    return Json{{"exponents", s.exponents},     {"matrices", s.matrices},
                {"invertible", s.invertible},   {"normalizing", s.normalizing},
                {"all_one_mod_pv", s.all_one_mod_pv}};
}

Json to_json(const GLMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.d; ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.d; ++j) r.push_back(m.at(i, j));
        rows.push_back(r);
    }
    return Json{{"field", m.F->q()}, {"modulus", m.F->modulus()}, {"rows", rows}};
}

Json to_json(const CrosscheckReport& r) {
    return Json{{"d", r.d}, {"count", r.count.str()}, {"rank", r.rank}, {"source", r.source}, {"ok", r.ok()}};
}

}  // namespace morava
