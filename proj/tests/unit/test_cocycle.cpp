#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "reslab/errors.hpp"
#include "reslab//cocycle.hpp"
#include "reslab/slow.hpp"
#include "reslab/spectral.hpp"

using namespace reslab;

namespace {

PeriodFunction period_at_delta(double lambda) {
    const double delta = delta_bisection(lambda, 32);
    const LeadingEigenpair ep = leading_even_eigenpair(delta, lambda, 32);
    return reconstruct_period(delta, lambda, std::vector<cplx>(ep.vector.data(), ep.vector.data() + ep.vector.size()));
}

RealFn wave(double lambda) {
    return [lambda](double x) { return std::exp(cplx(0, 2 * std::numbers::pi * x / lambda)); };
}

PairFunction boundary_pair(double lambda) {
    const RealFn b = wave(lambda);
    return PairFunction::from_closures([b](double x) { return -b(x); }, b).with_domain(-1e300, 1e300);
}

}  // namespace

TEST_CASE("reconstruction at the leading zero") {
    const PeriodFunction pf = period_at_delta(3);
    CHECK(pf.slow_residual < 1e-6);
    CHECK(pf.fast_residual < 1e-7);
    std::vector<double> p1, p2;
    for (int i = 0; i < 100; ++i) {
        p1.push_back(-0.99 + 2.98 * (i + 0.5) / 100);
        p2.push_back(-p1.back());
    }
    CHECK(slow_residual(pf.s, 3, pf.f, p1, p2) < 1e-6);
    const PeriodClass c = classify_period(pf);
    CHECK(c.kind == PeriodKind::resonant_noncuspidal);
    CHECK(c.parity == Parity::even);
    CHECK(std::abs(pf.cusp_value - 1.0) < 1e-8);
}

TEST_CASE("zero vector is rejected") {
    const std::vector<cplx> zero(32, 0.0);
    CHECK_THROWS_AS(reconstruct_period(0.8, 3, zero), DomainError);
}

TEST_CASE("odd resonance gives a cuspidal odd period function") {
    const double lambda = 3;
    const ResonanceSearch r = find_resonances(lambda, {0.1, 0.45, 3.3, 3.9});
    REQUIRE(r.resonances.size() == 1);
    REQUIRE(r.resonances[0].parity == ParityBlock::odd);
    const cplx s = r.resonances[0].s;
    const Eigen::MatrixXcd odd = assemble_matrix(s, lambda, 32, MatrixKind::odd_only).odd_block();
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(odd);
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < odd.rows(); ++i)
        if (std::abs(es.eigenvalues()[i] - 1.0) < std::abs(es.eigenvalues()[best] - 1.0)) best = i;
    std::vector<cplx> h(32, 0.0);
    for (Eigen::Index i = 0; i < odd.rows(); ++i) h[2 * i + 1] = es.eigenvectors()(i, best);
    const PeriodFunction pf = reconstruct_period(s, lambda, h);
    const PeriodClass c = classify_period(pf);
    CHECK(c.kind == PeriodKind::cuspidal);
    CHECK(c.parity == Parity::odd);
}

TEST_CASE("classification of explicit inputs") {
    const PeriodFunction bp = make_period_function(0.8, 3, boundary_pair(3));
    CHECK(classify_period(bp).kind == PeriodKind::boundary);
    const RealFn g = [](double t) { return cplx(1 / (3 + t), t * t); };
    const PairFunction even = PairFunction::from_closures(g, [g](double t) { return g(-t); });
    CHECK(classify_period(make_period_function(0.8, 3, even)).parity == Parity::even);
    const PairFunction odd = PairFunction::from_closures(g, [g](double t) { return -g(-t); });
    CHECK(classify_period(make_period_function(0.8, 3, odd)).parity == Parity::odd);
}

TEST_CASE("cocycle values from the period function") {
    const double lambda = 3;
    const PeriodFunction pf = period_at_delta(lambda);
    const Cocycle c = build_cocycle(pf);
    const XiPoint one = xi_one(), inf = xi_infinity();
    const XiPoint minus_one{XiBase::one, hecke_generators(lambda).S};
    for (int i = 0; i < 50; ++i) {
        const double left = -0.95 + 0.039 * i;  // inside (-inf, 1), also inside (-1, inf)
        const double far = 1.2 + 0.3 * i;
        CHECK(std::abs(c.eval(one, inf, left) + pf.f.f2(left)) < 1e-13);
        CHECK(std::abs(c.eval(minus_one, inf, left) - pf.f.f1(left)) < 1e-13);
        CHECK(std::abs(c.eval(minus_one, inf, far) - pf.f.f1(far)) < 1e-13);
        CHECK(std::abs(c.eval(c.potential(minus_one), left) - pf.f.f1(left)) < 1e-13);
    }
    const PiecewiseSection v = c.value(one, minus_one);
    for (double t : {-3.0, 0.2, 4.0})
        CHECK(c.eval(v.transformed(GroupElement()), t) == c.eval(v, t));
}

TEST_CASE("cocycle identities for the eigenfunction") {
    const PeriodFunction pf = period_at_delta(3);
    const Cocycle c = build_cocycle(pf);
    const CocycleReport rep = verify_cocycle(c, 60, 5);
    CHECK(rep.relation < 1e-8);
    CHECK(rep.antisymmetry < 1e-10);
    CHECK(rep.equivariance < 1e-8);
    CHECK(rep.vanishing < 1e-8);
    CHECK(vanishing_residual(c) < 1e-8);
}

TEST_CASE("vanishing condition detects perturbations") {
    const PeriodFunction pf = period_at_delta(3);
    const PairFunction perturbed =
        PairFunction::from_closures([f = pf.f](double x) { return f.f1(x) + 1e-3; }, [f = pf.f](double x) { return f.f2(x); })
            .with_domain(pf.f.left1(), pf.f.right2());
    CHECK(vanishing_residual(Cocycle(pf.s, 3, perturbed)) >= 1e-4);
}

TEST_CASE("boundary pairs give coboundaries") {
    for (cplx s : {cplx(0.8), cplx(0.3, 2.0)}) {
        const Cocycle cb(s, 3, boundary_pair(3));
        CHECK(coboundary_residual(cb, wave(3), 40, 3) < 1e-10);
    }
}

TEST_CASE("parity anti-equivariance") {
    const PeriodFunction pf = period_at_delta(3);
    const Cocycle c(pf.s, 3, pf.f), cj(pf.s, 3, parity_image(pf.f));
    CHECK(parity_equivariance_residual(c, cj, 40, 9) < 1e-8);
    const Cocycle b(0.8, 3, boundary_pair(3)), bj(0.8, 3, parity_image(boundary_pair(3)));
    CHECK(parity_equivariance_residual(b, bj, 40, 9) < 1e-10);
}

TEST_CASE("building requires an eigenfunction") {
    const RealFn one = [](double) { return cplx(1); };
    const PeriodFunction not_eigen = make_period_function(0.8, 3, PairFunction::from_closures(one, one));
    CHECK_THROWS_AS(build_cocycle(not_eigen), DomainError);
}
