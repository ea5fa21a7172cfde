#include "reslab/function_space.hpp"

#include <cmath>

#include "reslab/errors.hpp"
#include "reslab/special.hpp"

namespace reslab {

cplx taylor_eval(std::span<const cplx> coeffs, cplx z) {
    if (std::abs(z) > kTaylorRadius) throw DomainError("taylor_eval: |z| exceeds 0.99");
    cplx r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
    return r;
}

std::pair<cplx, cplx> taylor_eval_d(std::span<const cplx> coeffs, cplx z) {
    if (std::abs(z) > kTaylorRadius) throw DomainError("taylor_eval: |z| exceeds 0.99");
    cplx r = 0, d = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        d = d * z + r;
        r = r * z + *it;
    }
    return {r, d};
}

PairFunction PairFunction::from_closures(RealFn f1, RealFn f2) {
    PairFunction p;
    p.r1_ = std::move(f1);
    p.r2_ = std::move(f2);
    return p;
}

PairFunction PairFunction::from_complex_closures(ComplexFn f1, ComplexFn f2) {
    PairFunction p;
    p.c1_ = std::move(f1);
    p.c2_ = std::move(f2);
    p.r1_ = [g = p.c1_](double x) { return g(cplx(x, 0)); };
    p.r2_ = [g = p.c2_](double x) { return g(cplx(x, 0)); };
    return p;
}

PairFunction PairFunction::from_taylor(std::vector<cplx> c1, std::vector<cplx> c2) {
    PairFunction p;
    p.rep_ = Representation::taylor;
    p.t1_ = std::move(c1);
    p.t2_ = std::move(c2);
    p.left1_ = -kTaylorRadius;
    p.right2_ = kTaylorRadius;
    p.c1_ = [t = p.t1_](cplx z) { return taylor_eval(t, z); };
    p.c2_ = [t = p.t2_](cplx z) { return taylor_eval(t, z); };
    p.r1_ = [g = p.c1_](double x) { return g(cplx(x, 0)); };
    p.r2_ = [g = p.c2_](double x) { return g(cplx(x, 0)); };
    return p;
}

PairFunction PairFunction::with_domain(double left1, double right2) const {
    PairFunction p = *this;
    p.left1_ = left1;
    p.right2_ = right2;
    return p;
}

bool PairFunction::in_domain(int component, double x) const {
    if (!std::isfinite(x)) return false;
    if (rep_ == Representation::taylor) return std::abs(x) <= kTaylorRadius;
    return component == 1 ? x > left1_ : x < right2_;
}

cplx PairFunction::eval(int component, double x) const {
    if (!in_domain(component, x)) throw DomainError("PairFunction: point outside the component domain");
    return component == 1 ? r1_(x) : r2_(x);
}

cplx PairFunction::eval(int component, cplx z) const {
    if (!c1_) throw DomainError("PairFunction: no holomorphic extension available");
    if (z.imag() == 0) return eval(component, z.real());
    if (rep_ == Representation::taylor && std::abs(z) > kTaylorRadius)
        throw DomainError("PairFunction: point outside the Taylor disk");
    return component == 1 ? c1_(z) : c2_(z);
}

cplx tau_action(cplx s, const GroupElement& h, const RealFn& f, double t) {
    const GroupElement g = h.inverse();
    if (is_infinite(t)) {
        if (g.c() != 0) throw DomainError("tau_action: value at infinity needs c = 0");
        return abs_power(g.d(), s) * f(kInf);
    }
    const double den = g.c() * t + g.d();
    if (den == 0) throw DomainError("tau_action: t is the pole of the automorphy factor");
    return abs_power(den, s) * f((g.a() * t + g.b()) / den);
}

cplx tau_action(cplx s, const GroupElement& h, const ComplexFn& f, cplx t) {
    const GroupElement g = h.inverse();
    const cplx den = g.c() * t + g.d();
    if (den == cplx(0, 0)) throw DomainError("tau_action: t is the pole of the automorphy factor");
    cplx weight;
    if (g.c() == 0) {
        weight = abs_power(g.d(), s);
    } else {
        // |c|^{-2s} |t - r|^{-2s} continued from the real side of the pole r
        const double r = -g.d() / g.c();
        const cplx side = t.real() > r ? branched_power(BranchKind::shift_plus, -r, 2.0 * s, t)
                                       : branched_power(BranchKind::shift_minus, r, 2.0 * s, t);
        weight = abs_power(g.c(), s) * side;
    }
    return weight * f((g.a() * t + g.b()) / den);
}

}  // namespace reslab
