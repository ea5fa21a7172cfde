#include <doctest.h>

#include <cmath>
#include <random>

#include "reslab/errors.hpp"
#include "reslab//flow.hpp"
#include "reslab/spectral.hpp"

using namespace reslab;

TEST_CASE("determinant against the Euler product") {
    for (double s : {2.0, 2.5, 3.0}) {
        const cplx det = fredholm_det(s, 3, 32);
        const EulerProduct e = euler_product(s, 3);
        CHECK(std::abs(det - e.value) <= 1e-4);
        if (s == 3.0) CHECK(std::abs(det - e.value) <= 1e-5);
        CHECK(e.value.imag() == 0.0);
        CHECK(det.imag() == doctest::Approx(0).epsilon(1e-15));
    }
}

TEST_CASE("Euler product insensitive to more k factors") {
    EulerOptions a, b;
    b.k_max = 60;
    const double ell_min = 2 * std::acosh(1.5);
    const cplx za = euler_product(2.5, 3, a).value, zb = euler_product(2.5, 3, b).value;
    CHECK(std::abs(std::log(za) - std::log(zb)) <= std::exp(-41 * ell_min) + 1e-15);
}

TEST_CASE("determinant symmetries") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> re(0.55, 3), im(-6, 6);
    for (int i = 0; i < 20; ++i) {
        const cplx s(re(rng), im(rng));
        const DetFactorization d = det_factorized(s, 3, 32);
        CHECK(std::abs(d.full - d.even * d.odd) <= 1e-10);
        CHECK(std::abs(fredholm_det(std::conj(s), 3, 32) - std::conj(d.full)) <= 1e-13);
    }
}

TEST_CASE("determinant as exponential of traces") {
    const Eigen::MatrixXcd m = assemble_matrix(2.5, 3, 32).entries();
    cplx log_det = 0;
    Eigen::MatrixXcd power = m;
    for (int n = 1; n <= 12; ++n) {
        log_det -= power.trace() / double(n);
        power = power * m;
    }
    CHECK(std::abs(det_one_minus(m) - std::exp(log_det)) <= 1e-12);
}

TEST_CASE("trace identity") {
    const TraceCheck one = trace_identity_check(2.0, 3, 1);
    CHECK(std::abs(one.trace_matrix - one.trace_orbit) <= 1e-6);
    CHECK(one.trace_matrix.imag() == doctest::Approx(0).epsilon(1e-15));
    CHECK(one.trace_orbit.imag() == doctest::Approx(0).epsilon(1e-15));
    const TraceCheck two = trace_identity_check(2.0, 3, 2);
    CHECK(std::abs(two.trace_matrix - two.trace_orbit) <= 1e-5);
}

TEST_CASE("leading zero") {
    const double d3 = delta_bisection(3), d4 = delta_bisection(4), d5 = delta_bisection(5);
    CHECK(d3 > 0.5);
    CHECK(d3 < 1);
    CHECK(d3 > d4);
    CHECK(d4 > d5);
    CHECK(std::abs(fredholm_det(d3, 3, 32)) <= 1e-8);
    const double p3 = pressure_delta(3).delta, p4 = pressure_delta(4).delta;
    CHECK(std::abs(d3 - p3) <= 1e-4);
    CHECK(p3 > p4);
    CHECK_THROWS_AS(delta_bisection(2.0), DomainError);
}

TEST_CASE("real resonance search") {
    const ResonanceSearch r = find_resonances(3, {0.55, 0.95, -0.01, 0.01});
    REQUIRE(r.resonances.size() == 1);
    CHECK(r.resonances[0].s.real() == doctest::Approx(delta_bisection(3)).epsilon(1e-10));
    CHECK(r.resonances[0].parity == ParityBlock::even);
    CHECK(find_resonances(3, {2.0, 3.0, -1.0, 1.0}).resonances.empty());
}

TEST_CASE("complex resonances") {
    const ResonanceSearch r = find_resonances(3, {0.1, 0.45, -4, 4});
    REQUIRE(!r.resonances.empty());
    CHECK(r.flagged.empty());
    for (const Resonance& z : r.resonances) {
        CHECK(z.stability_gap <= 1e-8);
        CHECK(z.newton_residual <= 1e-8);
        CHECK(z.abs_det <= 1e-8);
        int partners = 0;
        for (const Resonance& w : r.resonances) partners += std::abs(w.s - std::conj(z.s)) <= 1e-8;
        CHECK(partners == 1);
        const DetFactorization d = det_factorized(z.s, 3, 32);
        const double own = std::abs(z.parity == ParityBlock::even ? d.even : d.odd);
        const double other = std::abs(z.parity == ParityBlock::even ? d.odd : d.even);
        CHECK(own <= 1e-8);
        CHECK(other > 1e-6);
    }
}
