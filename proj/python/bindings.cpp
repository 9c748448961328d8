#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "morava/acceptance.hpp"

namespace py = pybind11;
using namespace morava;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object big(const BigInt& x) { return py::module_::import("builtins").attr("int")(x.str()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Morava E-theory rings of small finite groups";

    static py::exception<Error> error(m, "MoravaError");
    static py::exception<InputError> input_error(m, "InputError", error.ptr());
    static py::exception<InvariantFailure> invariant_failure(m, "InvariantFailure", error.ptr());
    static py::exception<PrecisionExhausted> precision_exhausted(m, "PrecisionExhausted", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            PyErr_SetString(input_error.ptr(), e.what());
        } catch (const InvariantFailure& e) {
            PyErr_SetString(invariant_failure.ptr(), e.what());
        } catch (const PrecisionExhausted& e) {
            PyErr_SetString(precision_exhausted.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });
    m.attr("SCHEMA") = kSchema;

    // p-adic helpers
    m.def("vp_pow_minus_one", &vp_pow_minus_one, py::arg("k"), py::arg("s"), py::arg("p"));
    m.def("vp_factorial", &vp_factorial, py::arg("d"), py::arg("p"));

    // groups
    m.def("gl_order", [](int d, u64 q) { return big(gl_order(d, q)); }, py::arg("d"), py::arg("q"));
    m.def("vp_gl_order", &vp_gl_order, py::arg("d"), py::arg("q"), py::arg("p"));
    m.def("sylow_sigma_descriptor", [](int d, u64 p) { return to_py(to_json(sylow_sigma_descriptor(d, p))); },
          py::arg("d"), py::arg("p"));
    m.def("sylow_gl_descriptor", [](int d, u64 q, u64 p) { return to_py(to_json(sylow_gl_descriptor(d, q, p))); },
          py::arg("d"), py::arg("q"), py::arg("p"));
    m.def("generator_a", [](u64 q, u64 p) {
        auto G = build_generator_a(q, p);
        return to_py(Json{{"a", to_json(G.a)}, {"order", G.order}, {"a_v", G.a_v}});
    }, py::arg("q"), py::arg("p"));
    m.def("normalizer_exponents", [](u64 q, u64 p) { return to_py(to_json(normalizer_exponents(q, p))); },
          py::arg("q"), py::arg("p"));
    m.def("diagonalize_gamma", [](u64 q, u64 p) {
        auto D = diagonalize_gamma(q, p);
        return to_py(Json{{"g", to_json(D.g)}, {"conjugate", to_json(D.conj)}, {"eigenvalues", D.eigenvalues}});
    }, py::arg("q"), py::arg("p"));

    // counting
    py::class_<CountParams>(m, "CountParams")
        .def(py::init(&CountParams::make), py::arg("p"), py::arg("n"), py::arg("q"))
        .def_readonly("p", &CountParams::p)
        .def_readonly("n", &CountParams::n)
        .def_readonly("q", &CountParams::q)
        .def_readonly("v", &CountParams::v)
        .def("irr_count", [](const CountParams& P, int k) { return big(irr_count(P, k)); }, py::arg("k"))
        .def("rep_count", [](const CountParams& P, int d) { return big(rep_count(P, d)); }, py::arg("d"))
        .def("rep_count_bruteforce", [](const CountParams& P, int d, int M) { return rep_count_bruteforce(P, d, M); },
             py::arg("d"), py::arg("M") = 0)
        .def("hkr_rank_crosscheck", [](const CountParams& P, int d) { return to_py(to_json(hkr_rank_crosscheck(P, d))); },
             py::arg("d"));

    // dimension p
    py::class_<GLPAlgebra>(m, "GLPAlgebra")
        .def_readonly("rank", &GLPAlgebra::rank)
        .def_readonly("rank_T", &GLPAlgebra::rank_T)
        .def_readonly("labels", &GLPAlgebra::labels)
        .def_readonly("cp_index", &GLPAlgebra::cp_index)
        .def_readonly("t_index", &GLPAlgebra::t_index)
        .def_readonly("det_Mt_val", &GLPAlgebra::det_Mt_val)
        .def("unit", &GLPAlgebra::unit, py::arg("i"))
        .def("mul", &GLPAlgebra::mul, py::arg("a"), py::arg("b"))
        .def("pow", &GLPAlgebra::pow, py::arg("a"), py::arg("e"))
        .def("k_reduce", [](const GLPAlgebra& A) { return to_py(to_json(k_reduce(A).report)); })
        .def("to_json", [](const GLPAlgebra& A, bool table) { return to_py(to_json(A, table)); },
             py::arg("table") = true);

    py::class_<GLpChain>(m, "GLpChain")
        .def(py::init([](u64 p, int n, i64 q, int Nout, u64 seed) { return GLpChain(GLpParams::make(p, n, q, Nout), seed); }),
             py::arg("p"), py::arg("n"), py::arg("q"), py::arg("Nout") = 2, py::arg("seed") = 1)
        .def("params", [](const GLpChain& C) { return to_py(to_json(C.params())); })
        .def("algebra", &GLpChain::algebra, py::call_guard<py::gil_scoped_release>())
        .def("verify_t_relation", [](const GLpChain& C) { return to_py(to_json(C.verify_t_relation())); })
        .def("crt_witness", [](const GLpChain& C) { return to_py(to_json(C.crt_witness())); })
        .def("h2", [](const GLpChain& C) { return to_py(to_json(C.build_h2())); });

    m.def("run_acceptance", [](std::vector<int> only, bool stretch, u64 seed) {
        AcceptanceOptions opt;
        opt.only = std::move(only);
        opt.stretch = stretch;
        opt.seed = seed;
        std::vector<CriterionResult> rs;
        {
            py::gil_scoped_release release;
            rs = run_acceptance(opt);
        }
        py::list out;
        for (const auto& r : rs) out.append(to_py(to_json(r)));
        return out;
    }, py::arg("only") = std::vector<int>{}, py::arg("stretch") = false, py::arg("seed") = 1);
}
