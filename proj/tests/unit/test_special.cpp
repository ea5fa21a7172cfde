#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reslab/special.hpp"

using namespace reslab;
using std::numbers::pi;

namespace {

// sum_{n<N} (n+q)^{-w} plus the Euler-Maclaurin tail through the first derivative term
cplx hurwitz_oracle(cplx w, double q, int terms = 200000) {
    cplx sum = 0;
    for (int n = terms - 1; n >= 0; --n) sum += std::pow(cplx(n + q), -w);
    const double a = terms + q;
    return sum + std::pow(cplx(a), 1.0 - w) / (w - 1.0) + 0.5 * std::pow(cplx(a), -w) + w / 12.0 * std::pow(cplx(a), -w - 1.0);
}

}  // namespace

TEST_CASE("Riemann zeta values") {
    CHECK(std::abs(riemann_zeta(2.0) - pi * pi / 6) < 1e-13);
    CHECK(std::abs(riemann_zeta(4.0) - std::pow(pi, 4) / 90) < 1e-13);
    CHECK(std::abs(riemann_zeta(cplx(0.5, 14.134725))) < 1e-5);
    CHECK(std::abs(riemann_zeta(cplx(1.3, 7.0)) - hurwitz_oracle(cplx(1.3, 7.0), 1.0)) < 1e-9);
    CHECK(riemann_zeta_checked(cplx(0.5, 20)).validated);
    CHECK_FALSE(riemann_zeta_checked(cplx(0.1, 20)).validated);
}

TEST_CASE("Hurwitz zeta values") {
    CHECK(std::abs(hurwitz_zeta(cplx(2), 1.0) - pi * pi / 6) < 1e-13);
    const cplx half = hurwitz_zeta(cplx(2), 0.5);
    CHECK(std::abs(half - pi * pi / 2) < 1e-12);
    CHECK(std::abs(half - hurwitz_oracle(2.0, 0.5)) < 1e-12);
    CHECK(std::abs(hurwitz_zeta(cplx(4), 2.0) - (std::pow(pi, 4) / 90 - 1)) < 1e-13);
    CHECK(hurwitz_zeta(3.0, 0.25) == doctest::Approx(hurwitz_oracle(3.0, 0.25).real()).epsilon(1e-12));
    CHECK_THROWS(hurwitz_zeta(cplx(1.0), 1.0));
    CHECK_THROWS(hurwitz_zeta(cplx(2.0), -1.0));
}

TEST_CASE("generalized binomial") {
    CHECK(pochhammer_binomial(cplx(0.37, -2.1), 0) == cplx(1));
    CHECK(std::abs(pochhammer_binomial(3.0, 2) - 6.0) < 1e-14);
    const cplx w(4, 2);
    const cplx direct = w * (w + 1.0) * (w + 2.0) / 6.0;
    CHECK(std::abs(direct - cplx(60, 140) / 6.0) < 1e-13);
    CHECK(std::abs(pochhammer_binomial(w, 3) - direct) < 1e-12);
    const cplx via_gamma = std::exp(log_gamma(w + 3.0) - log_gamma(w) - log_gamma(4.0));
    CHECK(std::abs(pochhammer_binomial(w, 3) - via_gamma) < 1e-10);
}

TEST_CASE("branched powers") {
    CHECK(std::abs(branched_power(BranchKind::shift_plus, 3, 2.0, 0.0) - 1.0 / 9) < 1e-15);
    CHECK(std::abs(branched_power(BranchKind::shift_minus, 3, 2.0, cplx(0, 1)) - cplx(8, 6) / 100.0) < 1e-15);
    const cplx sq = branched_power(BranchKind::square, 0, 1.4, -2.0);
    CHECK(std::abs(sq - std::pow(4.0, -0.7)) < 1e-14);
    CHECK(std::abs(sq.imag()) < 1e-15);
    // continuous along the negative real axis
    for (double eps : {1e-3, 1e-6})
        for (double sign : {1.0, -1.0})
            CHECK(std::abs(branched_power(BranchKind::square, 0, 1.4, cplx(-2, sign * eps)) - sq) < 2 * eps);
}

TEST_CASE("conjugation symmetry") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(0.5, 4), im(-40, 40), qd(0.1, 5);
    for (int i = 0; i < 100; ++i) {
        const cplx w(re(rng), im(rng));
        const double q = qd(rng);
        CHECK(std::abs(hurwitz_zeta(std::conj(w), q) - std::conj(hurwitz_zeta(w, q))) <= 1e-14 * std::abs(hurwitz_zeta(w, q)) + 1e-15);
        CHECK(std::abs(riemann_zeta(std::conj(w)) - std::conj(riemann_zeta(w))) <= 1e-14 * std::abs(riemann_zeta(w)) + 1e-15);
    }
}

TEST_CASE("shift identity") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> re(0.4, 4), im(-50, 50), qd(0.05, 6);
    for (int i = 0; i < 200; ++i) {
        const cplx w(re(rng), im(rng));
        const double q = qd(rng);
        const cplx diff = hurwitz_zeta(w, q) - hurwitz_zeta(w, q + 1);
        const cplx expect = std::pow(cplx(q), -w);
        CHECK(std::abs(diff - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("stable under more summation terms") {
    // the Bernoulli table stops at 12 correction terms, so only the direct part grows
    const ZetaConfig base{}, more{base.K * 3 / 2, base.M};
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> re(0.4, 4), im(-50, 50), qd(0.1, 5);
    for (int i = 0; i < 100; ++i) {
        const cplx w(re(rng), im(rng));
        REQUIRE(zeta_validated_region(w));
        const double q = qd(rng);
        const cplx a = hurwitz_zeta(w, q, base), b = hurwitz_zeta(w, q, more);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        CHECK(std::abs(riemann_zeta(w, base) - riemann_zeta(w, more)) <= 1e-12 * std::max(1.0, std::abs(riemann_zeta(w))));
    }
}
