#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "reslab/moebius.hpp"

namespace reslab {

using cplx = std::complex<double>;
using RealFn = std::function<cplx(double)>;
using ComplexFn = std::function<cplx(cplx)>;

inline constexpr double kTaylorRadius = 0.99;

cplx taylor_eval(std::span<const cplx> coeffs, cplx z);
// value and derivative
std::pair<cplx, cplx> taylor_eval_d(std::span<const cplx> coeffs, cplx z);

// f1 on (left1, inf) and f2 on (-inf, right2); defaults (-1, inf) and (-inf, 1)
class PairFunction {
public:
    enum class Representation { closure, taylor };

    PairFunction() = default;

    static PairFunction from_closures(RealFn f1, RealFn f2);
    // closures valid on the cut planes C \ (-inf, left1] and C \ [right2, inf)
    static PairFunction from_complex_closures(ComplexFn f1, ComplexFn f2);
    static PairFunction from_taylor(std::vector<cplx> c1, std::vector<cplx> c2);

    PairFunction with_domain(double left1, double right2) const;

    Representation representation() const { return rep_; }
    bool has_complex() const { return static_cast<bool>(c1_); }
    double left1() const { return left1_; }
    double right2() const { return right2_; }
    bool in_domain(int component, double x) const;
    const std::vector<cplx>& taylor(int component) const { return component == 1 ? t1_ : t2_; }

    cplx eval(int component, double x) const;
    cplx eval(int component, cplx z) const;
    cplx f1(double x) const { return eval(1, x); }
    cplx f2(double x) const { return eval(2, x); }

private:
    Representation rep_ = Representation::closure;
    RealFn r1_, r2_;
    ComplexFn c1_, c2_;
    std::vector<cplx> t1_, t2_;
    double left1_ = -1, right2_ = 1;
};

// (tau_s(h) f)(t) = |ct+d|^{-2s} f((at+b)/(ct+d)) with h^{-1} = [a b; c d]
cplx tau_action(cplx s, const GroupElement& h, const RealFn& f, double t);
// holomorphic extension; the weight is cut away from the side of the pole containing Re t
cplx tau_action(cplx s, const GroupElement& h, const ComplexFn& f, cplx t);

// |x|^{-2s} for real x != 0
inline cplx abs_power(double x, cplx s) { return std::exp(-2.0 * s * std::log(std::abs(x))); }

}  // namespace reslab
