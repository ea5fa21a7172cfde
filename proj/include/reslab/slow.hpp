#pragma once

#include <complex>
#include <optional>

#include "reslab/function_space.hpp"

namespace reslab {

// component 1 or 2 of the slow operator applied to f at the real point x
cplx slow_apply(cplx s, double lambda, const PairFunction& f, int component, double x);

// sup over the probes of |f - L_slow f|, both components
double slow_residual(cplx s, double lambda, const PairFunction& f, std::span<const double> probes1,
                     std::span<const double> probes2);

// sign = +1 or -1
cplx slow_parity_apply(cplx s, double lambda, int sign, const RealFn& f, double x);

enum class AverageDirection { plus, minus };
enum class A0Handling { automatic, assume_zero };

struct AverageRequest {
    AverageDirection direction = AverageDirection::plus;
    cplx s = 1.0;
    double lambda = 3.0;
    RealFn phi;
    // phi is real-analytic on (alpha, beta)_c, an interval through infinity
    double alpha = 1.0;
    double beta = -1.0;
    A0Handling a0 = A0Handling::automatic;
    // optional closed form of tau_s(S) phi near 0
    RealFn h;
    // half-width of the Chebyshev window for h around 0; 0 picks a default
    double fit_radius = 0.0;
    int fit_nodes = 20;
};

// Av^+ phi(t) = sum_{n>=0} phi(t + n lambda),  Av^- phi(t) = -sum_{n>=1} phi(t - n lambda)
cplx one_sided_average(const AverageRequest& req, double t);

// (1 - tau_s(T^{-1})) phi
RealFn one_minus_shift(double lambda, RealFn phi);

struct ExtensionOptions {
    double fe_tolerance = 1e-8;
};

inline constexpr int kMaxExtensionDepth = 60;

// left end (T^{-1}S)^depth(-1) of the extended f1 domain; the f2 domain is its mirror
double extension_endpoint(double lambda, int depth);

PairFunction extend_period_function(cplx s, double lambda, const PairFunction& f, int depth,
                                    const ExtensionOptions& opts = {});

}  // namespace reslab
