#include "reslab/slow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "reslab/errors.hpp"
#include "reslab/special.hpp"
#include "chebyshev.hpp"

namespace reslab {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 2)) throw DomainError("lambda must exceed 2");
}

}  // namespace

cplx slow_apply(cplx s, double lambda, const PairFunction& f, int component, double x) {
    check_lambda(lambda);
    if (component == 1) {
        if (!f.in_domain(1, x)) throw DomainError("slow_apply: x outside the f1 domain");
        const double w = lambda + x;
        const double y = -1 / w;
        return abs_power(w, s) * (f.f1(y) + f.f2(y)) + f.f1(x + lambda);
    }
    if (component == 2) {
        if (!f.in_domain(2, x)) throw DomainError("slow_apply: x outside the f2 domain");
        const double w = lambda - x;
        const double y = 1 / w;
        return abs_power(w, s) * (f.f1(y) + f.f2(y)) + f.f2(x - lambda);
    }
    throw DomainError("slow_apply: component must be 1 or 2");
}

double slow_residual(cplx s, double lambda, const PairFunction& f, std::span<const double> probes1,
                     std::span<const double> probes2) {
    double r = 0;
    for (double x : probes1) r = std::max(r, std::abs(f.f1(x) - slow_apply(s, lambda, f, 1, x)));
    for (double x : probes2) r = std::max(r, std::abs(f.f2(x) - slow_apply(s, lambda, f, 2, x)));
    return r;
}

cplx slow_parity_apply(cplx s, double lambda, int sign, const RealFn& f, double x) {
    check_lambda(lambda);
    if (!(x > -1)) throw DomainError("slow_parity_apply: x must exceed -1");
    if (sign != 1 && sign != -1) throw DomainError("slow_parity_apply: sign must be +1 or -1");
    const double w = lambda + x;
    return abs_power(w, s) * (f(-1 / w) + double(sign) * f(1 / w)) + f(x + lambda);
}

RealFn one_minus_shift(double lambda, RealFn phi) {
    return [lambda, phi = std::move(phi)](double t) { return phi(t) - phi(t + lambda); };
}

cplx one_sided_average(const AverageRequest& req, double t) {
    check_lambda(req.lambda);
    if (!req.phi) throw DomainError("one_sided_average: phi missing");
    const double lam = req.lambda;
    const cplx s = req.s;
    const bool plus = req.direction == AverageDirection::plus;
    if (plus && !(t > req.alpha)) throw DomainError("one_sided_average: t outside (alpha, inf)");
    if (!plus && !(t < req.beta + lam)) throw DomainError("one_sided_average: t outside (-inf, beta + lambda)");

    const double r = req.fit_radius > 0 ? req.fit_radius
                                        : 0.25 / std::max({lam, std::abs(req.alpha), std::abs(req.beta)});
    const RealFn h = req.h ? req.h : RealFn([&req](double u) {
        return abs_power(u, req.s) * req.phi(-1 / u);
    });
    int nodes = req.fit_nodes;
    if (nodes % 2) ++nodes;
    std::vector<cplx> values;
    for (double u : detail::chebyshev_nodes(r, nodes)) values.push_back(h(u));
    std::vector<cplx> a = detail::chebyshev_to_monomials(values, r);
    if (req.a0 == A0Handling::assume_zero) a[0] = 0;

    // direct terms while |t -+ n lambda| < 1/r, tail from the fitted expansion of h
    cplx direct = 0;
    int n = plus ? 0 : 1;
    auto point = [&](int k) { return plus ? t + k * lam : t - k * lam; };
    while (std::abs(point(n)) < 1 / r || (plus ? point(n) <= 0 : point(n) >= 0)) {
        direct += req.phi(point(n));
        ++n;
    }
    const double q = plus ? n + t / lam : n - t / lam;
    cplx tail = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0.0) continue;
        const cplx w = 2.0 * s + double(j);
        if (std::abs(w - 1.0) < 1e-14) throw PoleError("one_sided_average: pole at s = 1/2 with a0 != 0");
        const double sign = plus && (j % 2) ? -1.0 : 1.0;
        tail += sign * a[j] * std::exp(-w * std::log(lam)) * hurwitz_zeta(w, q);
    }
    const cplx total = direct + tail;
    return plus ? total : -total;
}

double extension_endpoint(double lambda, int depth) {
    double x = -1;
    for (int i = 0; i < depth; ++i) x = -lambda - 1 / x;
    return x;
}

PairFunction extend_period_function(cplx s, double lambda, const PairFunction& f, int depth,
                                    const ExtensionOptions& opts) {
    check_lambda(lambda);
    if (depth < 0 || depth > kMaxExtensionDepth) throw DomainError("extend_period_function: depth must lie in [0, 60]");
    if (f.representation() != PairFunction::Representation::closure)
        throw DomainError("extend_period_function: needs closure representation");
    const double l1 = f.left1(), r2 = f.right2();
    const double probes1[] = {l1 + 0.05 * (1 + std::abs(l1)), -0.5, 0.0, 0.7, 2.0, 5.0};
    const double probes2[] = {r2 - 0.05 * (1 + std::abs(r2)), 0.5, 0.0, -0.7, -2.0, -5.0};
    double res = 0;
    try {
        res = slow_residual(s, lambda, f, probes1, probes2);
    } catch (const DomainError&) {
        throw DomainError("extend_period_function: functional equation cannot be probed");
    }
    if (!(res < opts.fe_tolerance))
        throw DomainError("extend_period_function: functional-equation residual too large");

    const double left = extension_endpoint(lambda, depth);
    struct Ext {
        PairFunction base;
        cplx s;
        double lambda;
        cplx f1(double x, int d) const {
            if (base.in_domain(1, x)) return base.f1(x);
            if (d <= 0) throw DomainError("extended f1: point outside the extended domain");
            const double w = lambda + x;
            const double y = -1 / w;
            return abs_power(w, s) * (f1(y, d - 1) + base.f2(y)) + base.f1(x + lambda);
        }
        cplx f2(double x, int d) const {
            if (base.in_domain(2, x)) return base.f2(x);
            if (d <= 0) throw DomainError("extended f2: point outside the extended domain");
            const double w = lambda - x;
            const double y = 1 / w;
            return abs_power(w, s) * (base.f1(y) + f2(y, d - 1)) + base.f2(x - lambda);
        }
    };
    auto ext = std::make_shared<const Ext>(Ext{f, s, lambda});
    auto g1 = [ext, depth, left](double x) {
        if (!(x > left)) throw DomainError("extended f1: point outside the extended domain");
        return ext->f1(x, depth);
    };
    auto g2 = [ext, depth, left](double x) {
        if (!(x < -left)) throw DomainError("extended f2: point outside the extended domain");
        return ext->f2(x, depth);
    };
    return PairFunction::from_closures(g1, g2).with_domain(std::min(left, l1), std::max(-left, r2));
}

}  // namespace reslab
