#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reslab/cocycle.hpp"
#include "reslab/errors.hpp"
#include "reslab/fast.hpp"
#include "reslab/flow.hpp"
#include "reslab/green.hpp"
#include "reslab/moebius.hpp"
#include "reslab/slow.hpp"
#include "reslab/special.hpp"
#include "reslab/spectral.hpp"
#include "reslab/verification.hpp"

namespace py = pybind11;
using namespace reslab;

namespace {

ParityBlock parse_block(const std::string& name) {
    if (name == "full") return ParityBlock::full;
    if (name == "even") return ParityBlock::even;
    if (name == "odd") return ParityBlock::odd;
    throw DomainError("block must be full, even or odd");
}

py::dict class_dict(const HyperbolicClass& c) {
    py::dict d;
    d["exponents"] = c.exponents;
    d["trace"] = c.trace;
    d["length"] = c.length;
    d["primitive"] = c.primitive;
    d["weight"] = c.weight;
    return d;
}

PeriodFunction period_at_delta(double lambda, int degree) {
    const double delta = delta_bisection(lambda, degree);
    const LeadingEigenpair pair = leading_even_eigenpair(delta, lambda, degree);
    return reconstruct_period(delta, lambda, std::span<const cplx>(pair.vector.data(), pair.vector.size()));
}

}  // namespace

PYBIND11_MODULE(_reslab, m) {
    m.doc() = "Resonances, transfer operators and period functions of Hecke triangle groups";
    m.attr("__version__") = "0.1.0";

    // translators run newest first, so the subclass goes last
    py::register_exception<Error>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("riemann_zeta", [](cplx w) { return riemann_zeta(w); }, py::arg("w"));
    m.def("hurwitz_zeta", [](cplx w, double q) { return hurwitz_zeta(w, q); }, py::arg("w"), py::arg("q"));

    m.def(
        "step",
        [](double x, int label, double lambda) {
            const StepResult r = step({x, label}, lambda);
            return py::make_tuple(r.next.x, r.next.label);
        },
        py::arg("x"), py::arg("label"), py::arg("lambda_"));

    m.def(
        "periodic_points",
        [](double lambda, int n, int max_exp) {
            py::list out;
            for (const auto& p : periodic_points(lambda, n, max_exp)) {
                py::dict d;
                d["word"] = p.word;
                d["x"] = p.state.x;
                d["label"] = p.state.label;
                d["multiplier"] = p.multiplier;
                d["length"] = p.length;
                out.append(d);
            }
            return out;
        },
        py::arg("lambda_"), py::arg("n"), py::arg("max_exp"));

    m.def(
        "enumerate_classes",
        [](double lambda, int max_n, int max_exp, double max_length) {
            EnumerationLimits lim;
            if (max_length > 0) lim.max_length = max_length;
            py::list out;
            for (const auto& c : enumerate_classes(lambda, max_n, max_exp, lim)) out.append(class_dict(c));
            return out;
        },
        py::arg("lambda_"), py::arg("max_n"), py::arg("max_exp"), py::arg("max_length") = 0.0);

    m.def(
        "operator_matrix",
        [](cplx s, double lambda, int degree, bool odd_only) {
            return assemble_matrix(s, lambda, degree, odd_only ? MatrixKind::odd_only : MatrixKind::full).entries();
        },
        py::arg("s"), py::arg("lambda_"), py::arg("degree") = 32, py::arg("odd_only") = false);

    m.def(
        "fredholm_det",
        [](cplx s, double lambda, int degree, const std::string& block) {
            return fredholm_det(s, lambda, degree, parse_block(block));
        },
        py::arg("s"), py::arg("lambda_"), py::arg("degree") = 32, py::arg("block") = "full");

    m.def(
        "euler_product",
        [](cplx s, double lambda, int max_n, int max_exp) {
            EulerOptions opts;
            opts.max_n = max_n;
            opts.max_exp = max_exp;
            const EulerProduct e = euler_product(s, lambda, opts);
            py::dict d;
            d["value"] = e.value;
            d["tail_estimate"] = e.tail_estimate;
            d["warning"] = e.warning;
            d["classes_used"] = e.classes_used;
            return d;
        },
        py::arg("s"), py::arg("lambda_"), py::arg("max_n") = 6, py::arg("max_exp") = 30);

    m.def("delta_bisection", &delta_bisection, py::arg("lambda_"), py::arg("degree") = 32);
    m.def(
        "pressure_delta", [](double lambda) { return pressure_delta(lambda).delta; }, py::arg("lambda_"));

    m.def(
        "find_resonances",
        [](double lambda, double re_min, double re_max, double im_min, double im_max, int degree) {
            SearchOptions opts;
            opts.degree = degree;
            const ResonanceSearch r = find_resonances(lambda, {re_min, re_max, im_min, im_max}, opts);
            py::list out;
            for (const auto& z : r.resonances) {
                py::dict d;
                d["s"] = z.s;
                d["abs_det"] = z.abs_det;
                d["newton_residual"] = z.newton_residual;
                d["parity"] = to_string(z.parity);
                d["stability_gap"] = z.stability_gap;
                out.append(d);
            }
            return py::make_tuple(out, r.flagged.size());
        },
        py::arg("lambda_"), py::arg("re_min"), py::arg("re_max"), py::arg("im_min"), py::arg("im_max"),
        py::arg("degree") = 32);

    py::class_<PeriodFunction>(m, "PeriodFunction")
        .def_readonly("s", &PeriodFunction::s)
        .def_readonly("lambda_", &PeriodFunction::lambda)
        .def_readonly("slow_residual", &PeriodFunction::slow_residual)
        .def_readonly("fast_residual", &PeriodFunction::fast_residual)
        .def_readonly("cusp_value", &PeriodFunction::cusp_value)
        .def_readonly("even_defect", &PeriodFunction::even_defect)
        .def_readonly("odd_defect", &PeriodFunction::odd_defect)
        .def("f1", [](const PeriodFunction& p, double x) { return p.f.f1(x); })
        .def("f2", [](const PeriodFunction& p, double x) { return p.f.f2(x); })
        .def("classify", [](const PeriodFunction& p) {
            const PeriodClass c = classify_period(p);
            return py::make_tuple(to_string(c.kind), to_string(c.parity));
        })
        .def(
            "extended",
            [](const PeriodFunction& p, int depth) {
                PeriodFunction out = p;
                out.f = extend_period_function(p.s, p.lambda, p.f, depth);
                return out;
            },
            py::arg("depth"));

    m.def("period_function_at_delta", &period_at_delta, py::arg("lambda_"), py::arg("degree") = 32,
          "period function from the leading even eigenvector at the leading real zero");

    m.def(
        "cocycle_report",
        [](const PeriodFunction& p, int trials, std::uint64_t seed) {
            const Cocycle c = build_cocycle(p);
            const CocycleReport r = verify_cocycle(c, trials, seed);
            py::dict d;
            d["relation"] = r.relation;
            d["antisymmetry"] = r.antisymmetry;
            d["equivariance"] = r.equivariance;
            d["vanishing"] = r.vanishing;
            return d;
        },
        py::arg("period"), py::arg("trials") = 50, py::arg("seed") = 1);

    py::class_<EisensteinModel>(m, "EisensteinModel")
        .def(py::init([](double lambda, double s, int degree) {
                 EisensteinOptions opts;
                 opts.degree = degree;
                 return EisensteinModel(lambda, s, opts);
             }),
             py::arg("lambda_"), py::arg("s"), py::arg("degree") = 32)
        .def("__call__",
             [](const EisensteinModel& e, cplx z) {
                 const EisensteinValue v = e.eval(z);
                 return py::make_tuple(v.u, v.ux, v.uy);
             })
        .def("core", [](const EisensteinModel& e, cplx z) { return e.core(z).a; })
        .def(
            "funnel_core_identity",
            [](const EisensteinModel& e, double xi, double eta, double t) {
                const CoreIdentity c = funnel_core_identity(e, xi, eta, t);
                return py::make_tuple(c.lhs, c.rhs, c.relative_error);
            },
            py::arg("xi"), py::arg("eta"), py::arg("t"));

    m.def(
        "run_suite",
        [](const std::string& suite, double lambda, std::uint64_t seed) {
            const SuiteReport r = run_suite(suite, lambda, seed);
            py::list checks;
            for (const auto& c : r.checks) {
                py::dict d;
                d["name"] = c.name;
                d["value"] = c.value;
                d["threshold"] = c.threshold;
                d["pass"] = c.pass;
                checks.append(d);
            }
            py::dict d;
            d["suite"] = r.suite;
            d["pass"] = r.pass();
            d["checks"] = checks;
            return d;
        },
        py::arg("suite"), py::arg("lambda_") = 3.0, py::arg("seed") = 1);
}
