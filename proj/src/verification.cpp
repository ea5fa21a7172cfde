#include "reslab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "reslab/cocycle.hpp"
#include "reslab/errors.hpp"
#include "reslab/fast.hpp"
#include "reslab/flow.hpp"
#include "reslab/green.hpp"
#include "reslab/moebius.hpp"
#include "reslab/orbit_sums.hpp"
#include "reslab/slow.hpp"
#include "reslab/spectral.hpp"

namespace reslab {

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool is_suite_name(const std::string& name) {
    return std::find(kSuiteNames.begin(), kSuiteNames.end(), name) != kSuiteNames.end();
}

Check make_check(std::string name, double value, double threshold, bool lower_bound) {
    Check c{std::move(name), value, threshold, lower_bound, false};
    c.pass = std::isfinite(value) && (lower_bound ? value >= threshold : value <= threshold);
    return c;
}

namespace {

PairFunction boundary_pair(double lambda) {
    auto b = [lambda](double x) { return std::exp(cplx(0, 2 * std::numbers::pi * x / lambda)); };
    return PairFunction::from_closures([b](double x) { return -b(x); }, b).with_domain(-1e300, 1e300);
}

double matrix_oracle_deviation(cplx s, double lambda, int degree) {
    const OperatorMatrix m = assemble_matrix(s, lambda, degree);
    double worst = 0;
    for (int k = 0; k < degree; ++k) {
        const ComplexFn monomial = [k](cplx z) { return std::pow(z, k); };
        const std::vector<cplx> col =
            cauchy_coefficients([&](cplx z) { return reduced_apply_series(s, lambda, monomial, z); }, degree);
        for (int j = 0; j < degree; ++j) worst = std::max(worst, std::abs(col[j] - m.entries()(j, k)));
    }
    return worst;
}

void operators_suite(SuiteReport& rep) {
    const double lambda = rep.lambda;
    std::mt19937_64 rng(rep.seed);
    rep.checks.push_back(make_check("matrix_oracle_s1.2", matrix_oracle_deviation(1.2, lambda, 12), 1e-9));
    rep.checks.push_back(make_check("matrix_oracle_s2+0.5i", matrix_oracle_deviation(cplx(2, 0.5), lambda, 12), 1e-9));

    std::uniform_real_distribution<double> re(0.55, 3.0), im(-5.0, 5.0);
    double fac = 0;
    for (int i = 0; i < 20; ++i) {
        const cplx s(re(rng), im(rng));
        const DetFactorization d = det_factorized(s, lambda, 32);
        fac = std::max(fac, std::abs(d.full - d.even * d.odd));
    }
    rep.checks.push_back(make_check("parity_factorization", fac, 1e-10));

    for (double s : {2.0, 2.5, 3.0}) {
        const cplx det = fredholm_det(s, lambda, 32);
        const EulerProduct e = euler_product(s, lambda);
        rep.checks.push_back(make_check("det_vs_euler_s" + std::to_string(s).substr(0, 3), std::abs(det - e.value), 1e-4));
    }

    for (int n : {1, 2}) {
        const TraceCheck tc = trace_identity_check(2.0, lambda, n);
        rep.checks.push_back(make_check("trace_identity_n" + std::to_string(n), std::abs(tc.trace_matrix - tc.trace_orbit),
                                        n == 1 ? 1e-6 : 1e-5));
    }

    const PairFunction bp = boundary_pair(lambda);
    double fast = 0;
    std::vector<double> p1, p2;
    for (int i = 0; i < 10; ++i) {
        const double x = -0.9 + 1.8 * i / 9.0;
        for (int comp = 1; comp <= 2; ++comp)
            fast = std::max(fast, std::abs(fast_apply(0.8, lambda, bp, comp, x).value));
        p1.push_back(-0.9 + 0.3 * i);
        p2.push_back(0.9 - 0.3 * i);
    }
    rep.checks.push_back(make_check("boundary_fast_kernel", fast, 1e-10));
    rep.checks.push_back(make_check("boundary_slow_fixed_point", slow_residual(0.8, lambda, bp, p1, p2), 1e-10));

    // Av((1 - tau(T^{-1})) phi) = phi for phi(t) = (1 + t^2)^{-s}
    const double s = 0.8;
    auto phi = [s](double t) { return cplx(std::pow(1 + t * t, -s)); };
    AverageRequest req;
    req.s = s;
    req.lambda = lambda;
    req.phi = [phi, lambda](double t) { return phi(t) - phi(t + lambda); };
    req.h = [s, lambda](double u) {
        return cplx(std::pow(1 + u * u, -s) - std::pow((lambda * u - 1) * (lambda * u - 1) + u * u, -s));
    };
    double av = 0;
    for (double t : {1.5, 2.0, 3.7, 6.0}) {
        req.direction = AverageDirection::plus;
        av = std::max(av, std::abs(one_sided_average(req, t) - phi(t)));
        req.direction = AverageDirection::minus;
        av = std::max(av, std::abs(one_sided_average(req, -t) - phi(-t)));
    }
    rep.checks.push_back(make_check("average_identity", av, 1e-9));
}

void cocycles_suite(SuiteReport& rep) {
    const double lambda = rep.lambda;
    const double delta = delta_bisection(lambda, 32);
    const LeadingEigenpair ep = leading_even_eigenpair(delta, lambda, 32);
    const std::vector<cplx> h(ep.vector.data(), ep.vector.data() + ep.vector.size());
    const PeriodFunction pf = reconstruct_period(delta, lambda, h);
    rep.checks.push_back(make_check("slow_residual", pf.slow_residual, 1e-6));
    rep.checks.push_back(make_check("fast_residual", pf.fast_residual, 1e-7));
    const PeriodClass cls = classify_period(pf);
    rep.checks.push_back(make_check("even_parity_defect", pf.even_defect, 1e-8));
    rep.checks.push_back(make_check("not_resonant_flag", double(cls.kind == PeriodKind::boundary || cls.kind == PeriodKind::generic), 0));

    const Cocycle c = build_cocycle(pf);
    double e1 = 0, e2 = 0;
    const XiPoint minus_one{XiBase::one, hecke_generators(lambda).S};
    for (int i = 0; i < 50; ++i) {
        const double t = -4.9 + 5.7 * i / 49.0;
        e1 = std::max(e1, std::abs(c.eval(xi_one(), xi_infinity(), t) + pf.f.f2(t)));
        const double u = -0.95 + 5.0 * i / 49.0;
        e2 = std::max(e2, std::abs(c.eval(minus_one, xi_infinity(), u) - pf.f.f1(u)));
    }
    rep.checks.push_back(make_check("c(1,inf)=-f2", e1, 1e-10));
    rep.checks.push_back(make_check("c(-1,inf)=f1", e2, 1e-10));

    const CocycleReport cr = verify_cocycle(c, 40, rep.seed);
    rep.checks.push_back(make_check("cocycle_relation", cr.relation, 1e-8));
    rep.checks.push_back(make_check("antisymmetry", cr.antisymmetry, 1e-10));
    rep.checks.push_back(make_check("equivariance", cr.equivariance, 1e-8));
    rep.checks.push_back(make_check("vanishing", cr.vanishing, 1e-8));

    const PairFunction perturbed =
        PairFunction::from_closures([f = pf.f](double x) { return f.f1(x) + 1e-3; }, [f = pf.f](double x) { return f.f2(x); })
            .with_domain(pf.f.left1(), pf.f.right2());
    rep.checks.push_back(make_check("perturbed_vanishing", vanishing_residual(Cocycle(delta, lambda, perturbed)), 1e-4, true));

    const Cocycle cj(delta, lambda, parity_image(pf.f));
    rep.checks.push_back(make_check("parity_anti_equivariance", parity_equivariance_residual(c, cj, 30, rep.seed), 1e-8));

    auto b = [lambda](double x) { return std::exp(cplx(0, 2 * std::numbers::pi * x / lambda)); };
    const Cocycle cb(0.8, lambda, boundary_pair(lambda));
    rep.checks.push_back(make_check("boundary_coboundary", coboundary_residual(cb, b, 40, rep.seed), 1e-10));
}

void flow_suite(SuiteReport& rep) {
    const double lambda = rep.lambda;
    std::mt19937_64 rng(rep.seed);
    std::uniform_real_distribution<double> coef(-1, 1), x1(-0.99, 4.0), sdist(0.6, 2.0);
    double tc = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<cplx> c1(4), c2(4);
        for (auto& c : c1) c = coef(rng);
        for (auto& c : c2) c = coef(rng);
        auto poly = [](std::vector<cplx> c) {
            return [c](double x) {
                cplx r = 0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
                return r;
            };
        };
        const PairFunction f = PairFunction::from_closures(poly(c1), poly(c2)).with_domain(-1e300, 1e300);
        const double x = x1(rng);
        const int label = i % 2 ? 2 : 1;
        tc = std::max(tc, transfer_consistency(sdist(rng), lambda, f, {label == 1 ? x : -x, label}));
    }
    rep.checks.push_back(make_check("transfer_consistency", tc, 1e-12));

    // periodic points versus enumerated classes up to rotation
    const int max_exp = 4;
    double mult = 0, bij = 0;
    const std::vector<HyperbolicClass> classes = enumerate_classes(lambda, 3, max_exp);
    for (int n = 1; n <= 3; ++n) {
        std::map<std::vector<int>, int> orbits;
        for (const PeriodicPoint& p : periodic_points(lambda, n, max_exp)) {
            const GroupElement g = exponent_word_element(lambda, p.word);
            mult = std::max(mult, std::abs(p.multiplier - std::exp(-geodesic_length(g))));
            orbits[canonical_rotation(p.word)] = orbit_size(p);
            if (recover_word(lambda, p) != p.word) bij += 1;
        }
        std::set<std::vector<int>> cls;
        for (const auto& c : classes)
            if (static_cast<int>(c.exponents.size()) == n) cls.insert(canonical_rotation(c.exponents));
        for (const auto& [w, size] : orbits) {
            if (!cls.count(w)) bij += 1;
            if (size != primitive_period(w)) bij += 1;
        }
        bij += std::abs(double(cls.size()) - double(orbits.size()));
    }
    rep.checks.push_back(make_check("periodic_multipliers", mult, 1e-9));
    rep.checks.push_back(make_check("orbit_class_bijection_mismatches", bij, 0));

    const double th = std::sqrt(lambda * lambda - 4);
    const double gap = std::min(1 / (lambda - 1) - (lambda - th) / 2, (lambda + th) / 2 - (lambda - 1));
    rep.checks.push_back(make_check("gap_inside_funnel_margin", gap, 0, true));

    double jsym = 0;
    for (double x : {0.1, 0.25, -0.2, 5.0, 7.5}) {
        const StepResult a = step({x, 1}, lambda);
        const StepResult b = step({-x, 2}, lambda);
        jsym = std::max(jsym, std::abs(a.next.x + b.next.x) + (a.next.label == b.next.label ? 1.0 : 0.0));
    }
    rep.checks.push_back(make_check("j_symmetry", jsym, 1e-12));

    const double dm = delta_bisection(lambda, 32);
    const PressureResult pr = pressure_delta(lambda);
    rep.checks.push_back(make_check("delta_matrix_vs_pressure", std::abs(dm - pr.delta), 1e-4));
}

void green_suite(SuiteReport& rep) {
    const double lambda = rep.lambda;
    const double delta = delta_bisection(lambda, 24);
    const double s = std::max(0.9, delta + 0.15);
    const EisensteinModel m(lambda, s);
    const cplx z(0.4, 0.8);
    rep.checks.push_back(make_check("invariance_T", std::abs(m.eval(z).u - m.eval(z + lambda).u), 1e-8));
    rep.checks.push_back(make_check("invariance_S", std::abs(m.eval(z).u - m.eval(-1.0 / z).u), 1e-8));
    const double hstep = 1e-3;
    auto u = [&](cplx w) { return m.eval(w).u; };
    const double lap = -z.imag() * z.imag() *
                       (u(z + hstep) + u(z - hstep) + u(z + cplx(0, hstep)) + u(z - cplx(0, hstep)) - 4 * u(z)) /
                       (hstep * hstep);
    rep.checks.push_back(make_check("laplace_eigen_relative", std::abs(lap - s * (1 - s) * u(z)) / std::abs(u(z)), 1e-4));

    const double t0 = 0.7;
    const IntegralResult p1 = greens_form_integral(m, t0, ContourPath::segment(cplx(0, 1), cplx(2, 1)));
    const IntegralResult p2 = greens_form_integral(m, t0, ContourPath({cplx(0, 1), cplx(0, 2), cplx(2, 2), cplx(2, 1)}));
    rep.checks.push_back(make_check("path_independence", std::abs(p1.value - p2.value), 1e-6));
    const IntegralResult loop =
        greens_form_integral(m, t0, ContourPath({cplx(0, 1), cplx(0, 2), cplx(2, 2), cplx(2, 1), cplx(0, 1)}));
    rep.checks.push_back(make_check("closed_contour", std::abs(loop.value), 1e-6));

    const double root = std::sqrt(lambda * lambda - 4);
    const double lo = (lambda - root) / 2, hi = (lambda + root) / 2;
    auto at = [lo, hi](double f) { return lo + f * (hi - lo); };
    const double triples[5][3] = {{0.27, 0.55, 0.41}, {0.2, 0.8, 0.5}, {0.3, 0.7, 0.35}, {0.15, 0.6, 0.45}, {0.4, 0.9, 0.85}};
    double core = 0, outside = 0;
    for (const auto& tr : triples) {
        core = std::max(core, funnel_core_identity(m, at(tr[0]), at(tr[1]), at(tr[2])).relative_error);
        const IntegralResult out = greens_form_integral(m, at(tr[1]) + 0.05, ContourPath::detour(at(tr[0]), at(tr[1])));
        outside = std::max(outside, std::abs(out.value));
    }
    rep.checks.push_back(make_check("funnel_core_identity_relative", core, 1e-3));
    rep.checks.push_back(make_check("outside_interval_vanishing", outside, 1e-6));

    std::vector<double> ts;
    for (int i = 0; i < 20; ++i) ts.push_back(-3.1 + 0.33 * i);
    const cplx z1(-0.3, 0.9), z2(0.5, 1.4), z3(1.1, 0.7);
    const auto c12 = cocycle_cu(m, z1, z2, ts), c23 = cocycle_cu(m, z2, z3, ts), c13 = cocycle_cu(m, z1, z3, ts);
    double add = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) add = std::max(add, std::abs(c12[i] + c23[i] - c13[i]));
    rep.checks.push_back(make_check("cu_additivity", add, 1e-5));
    std::vector<double> inv;
    for (double t : ts) inv.push_back(-1 / t);
    const auto cs = cocycle_cu(m, -1.0 / z1, -1.0 / z2, ts);
    const auto base = cocycle_cu(m, z1, z2, inv);
    double eq = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        eq = std::max(eq, std::abs(cs[i] - std::pow(std::abs(ts[i]), -2 * s) * base[i]));
    rep.checks.push_back(make_check("cu_equivariance_S", eq, 1e-5));

    const CuspFourier cf = cusp_fourier_classify([&](cplx w) { return cplx(m.eval(w).u); }, lambda, s, 2, 4);
    rep.checks.push_back(make_check("cusp_b_coefficient", std::abs(cf.b - 1.0), 1e-6));
}

}  // namespace

SuiteReport run_suite(const std::string& suite, double lambda, std::uint64_t seed) {
    if (!is_suite_name(suite)) throw DomainError("run_suite: unknown suite " + suite);
    if (!(lambda > 2)) throw DomainError("run_suite: lambda must exceed 2");
    SuiteReport rep;
    rep.suite = suite;
    rep.lambda = lambda;
    rep.seed = seed;
    if (suite == "operators") operators_suite(rep);
    if (suite == "cocycles") cocycles_suite(rep);
    if (suite == "flow") flow_suite(rep);
    if (suite == "green") green_suite(rep);
    return rep;
}

}  // namespace reslab
