#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "reslab/moebius.hpp"

using namespace reslab;

namespace {

GroupElement random_word(std::mt19937_64& rng, double lambda, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), pw(-3, 3), coin(0, 1);
    Word w;
    for (int i = len(rng); i > 0; --i) {
        if (coin(rng)) {
            w.push_back({Gen::S, 1});
        } else {
            int p = pw(rng);
            w.push_back({Gen::T, p == 0 ? 1 : p});
        }
    }
    return GroupElement::from_word(lambda, w);
}

bool projectively_equal(const GroupElement& g, double a, double b, double c, double d) {
    return g.approx_equal(GroupElement(a, b, c, d), 1e-12);
}

}  // namespace

TEST_CASE("generators and products") {
    const auto gen = hecke_generators(3);
    CHECK(projectively_equal(gen.T, 1, 3, 0, 1));
    CHECK(projectively_equal(gen.S * gen.S, 1, 0, 0, 1));
    const GroupElement ts = gen.T * gen.S;
    CHECK(projectively_equal(ts, 3, -1, 1, 0));
    CHECK(std::abs(ts.trace()) == doctest::Approx(3));
    CHECK(ts.det() == doctest::Approx(1));
}

TEST_CASE("moebius action") {
    const auto gen = hecke_generators(3);
    CHECK(moebius_apply(gen.S, 2.0) == doctest::Approx(-0.5));
    CHECK(is_infinite(moebius_apply(gen.T, kInf)));
    const FixedPoints fp = fixed_points_ts(3);
    CHECK(moebius_apply(gen.T * gen.S, fp.plus) == doctest::Approx(fp.plus).epsilon(1e-14));
    CHECK(moebius_apply(gen.T * gen.S, fp.minus) == doctest::Approx(fp.minus).epsilon(1e-14));
}

TEST_CASE("fixed points of TS") {
    const FixedPoints f3 = fixed_points_ts(3);
    CHECK(f3.plus == doctest::Approx(2.6180340).epsilon(1e-7));
    CHECK(f3.minus == doctest::Approx(0.3819660).epsilon(1e-7));
    CHECK(fixed_points_ts(4).plus == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-14));
    for (double lambda : {2.1, 2.5, 3.0, 4.0, 7.3}) {
        const FixedPoints f = fixed_points_ts(lambda);
        CHECK(f.minus * f.plus == doctest::Approx(1).epsilon(1e-14));
        CHECK(f.minus < f.plus);
    }
    CHECK_THROWS(fixed_points_ts(2.0));
}

TEST_CASE("classification by trace") {
    const auto gen = hecke_generators(3);
    CHECK(classify(gen.T) == Classification::parabolic);
    CHECK(classify(gen.S) == Classification::elliptic);
    CHECK(classify(gen.T * gen.S) == Classification::hyperbolic);
    CHECK(classify(gen.S * gen.S) == Classification::identity);
}

TEST_CASE("geodesic lengths") {
    const auto gen = hecke_generators(3);
    const GroupElement ts = gen.T * gen.S;
    CHECK(geodesic_length(ts) == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-14));
    CHECK(geodesic_length(ts) == doctest::Approx(1.9248473).epsilon(1e-7));
    CHECK(geodesic_length(ts * ts) == doctest::Approx(2 * geodesic_length(ts)).epsilon(1e-13));
    const GroupElement g = gen.T * gen.S * gen.T.inverse() * gen.S;
    CHECK(g.trace() == doctest::Approx(-11));
    CHECK(geodesic_length(g) == doctest::Approx(2 * std::acosh(5.5)).epsilon(1e-14));
    CHECK(geodesic_length(g) == doctest::Approx(4.7790529).epsilon(1e-7));
    CHECK_THROWS(geodesic_length(gen.T));
}

TEST_CASE("class enumeration examples") {
    const auto one = enumerate_classes(3, 1, 1);
    REQUIRE(one.size() == 2);
    for (const auto& c : one) {
        CHECK(c.primitive);
        CHECK(c.length == doctest::Approx(1.9248473).epsilon(1e-7));
    }

    const int rep[] = {1, 1};
    CHECK(primitive_period(rep) == 1);
    const auto two = enumerate_classes(3, 2, 1);
    const auto it = std::find_if(two.begin(), two.end(), [](const HyperbolicClass& c) {
        return c.exponents == std::vector<int>{1, 1};
    });
    REQUIRE(it != two.end());
    CHECK_FALSE(it->primitive);
    CHECK(it->weight == doctest::Approx(1));

    const auto mixed = enumerate_classes(3, 2, 2);
    int count = 0;
    for (const auto& c : mixed) {
        const std::vector<int> e = canonical_rotation(c.exponents);
        if (e == canonical_rotation(std::vector<int>{1, -1})) {
            ++count;
            CHECK(c.trace == doctest::Approx(-11));
        }
    }
    CHECK(count == 1);
}

TEST_CASE("every enumerated class is hyperbolic") {
    for (const auto& c : enumerate_classes(3, 4, 6)) CHECK(std::abs(c.trace) > 2);
}

TEST_CASE("rotations are conjugate") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 5), ex(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> t(len(rng));
        for (int& a : t) {
            do a = ex(rng);
            while (a == 0);
        }
        const double tr = exponent_word_element(3, t).trace();
        for (std::size_t r = 1; r < t.size(); ++r) {
            std::vector<int> rot(t.begin() + r, t.end());
            rot.insert(rot.end(), t.begin(), t.begin() + r);
            CHECK(std::abs(exponent_word_element(3, rot).trace() - tr) <= 1e-10 * std::max(1.0, std::abs(tr)));
        }
    }
}

TEST_CASE("powers multiply lengths") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(1, 3), ex(-4, 4), copies(2, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> t(len(rng));
        for (int& a : t) {
            do a = ex(rng);
            while (a == 0);
        }
        const int m = copies(rng);
        std::vector<int> rep;
        for (int i = 0; i < m; ++i) rep.insert(rep.end(), t.begin(), t.end());
        const double l1 = geodesic_length(exponent_word_element(3, t));
        const double lm = geodesic_length(exponent_word_element(3, rep));
        CHECK(std::abs(lm - m * l1) <= 1e-10);
    }
}

TEST_CASE("action is a homomorphism") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xs(-10, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        const GroupElement g = random_word(rng, 3, 5), h = random_word(rng, 3, 5);
        const double x = xs(rng);
        const double lhs = moebius_apply(g * h, x);
        const double rhs = moebius_apply(g, moebius_apply(h, x));
        if (std::isinf(lhs) || std::isinf(rhs)) continue;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}
