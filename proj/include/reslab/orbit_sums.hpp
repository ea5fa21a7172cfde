#pragma once

#include <complex>

namespace reslab {

using cplx = std::complex<double>;

// weight of a tuple with |trace| t and multiplier N: N^{-s} or N^{-s} / (1 - 1/N)
enum class OrbitWeight { multiplier, trace };

struct OrbitSumOptions {
    int direct = 6;       // exponents |a| <= direct are summed term by term at every level
    int tail_nodes = 12;  // Chebyshev nodes for the large-exponent fit at outer levels
};

// sum over all tuples (a_1..a_n), a_i != 0, of the weight of T^{a_1}S...T^{a_n}S
double orbit_sum(double s, double lambda, int n, OrbitWeight weight, const OrbitSumOptions& opts = {});
cplx orbit_sum(cplx s, double lambda, int n, OrbitWeight weight, const OrbitSumOptions& opts = {});

// the same sum restricted to |a_i| <= max_exp, term by term
cplx orbit_sum_truncated(cplx s, double lambda, int n, int max_exp, OrbitWeight weight);

}  // namespace reslab
