#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reslab/fast.hpp"

namespace reslab {

enum class ParityBlock { full, even, odd };

std::string to_string(ParityBlock p);

// det(1 - M) for the chosen block of the degree-N matrix
cplx fredholm_det(cplx s, double lambda, int degree, ParityBlock block = ParityBlock::full);

struct DetFactorization {
    cplx full, even, odd;
};

DetFactorization det_factorized(cplx s, double lambda, int degree);

cplx det_one_minus(const Eigen::MatrixXcd& m);

// eigenvalue of largest modulus
cplx leading_eigenvalue(const Eigen::MatrixXcd& m);

struct LeadingEigenpair {
    cplx value;
    Eigen::VectorXcd vector;  // Taylor coefficients in the full index range, normalized to h(0) = 1
};

// Perron pair of the even block at real s, embedded into degree-N coefficient vectors
LeadingEigenpair leading_even_eigenpair(double s, double lambda, int degree);

// leading real zero in (1/2, 1) from the crossing of the even-block Perron eigenvalue through 1
double delta_bisection(double lambda, int degree = 32);

struct EulerOptions {
    int max_n = 6;
    int max_exp = 30;
    int k_max = 40;
    double max_length = 0;  // 0 picks a length from tolerance and the count bound
    double tolerance = 1e-8;
};

struct EulerProduct {
    cplx value;
    double tail_estimate = 0;
    bool warning = false;
    std::size_t classes_used = 0;
    double max_length = 0;
};

EulerProduct euler_product(cplx s, double lambda, const EulerOptions& opts = {});

struct TraceCheck {
    cplx trace_matrix;
    cplx trace_orbit;
    double matrix_tail = 0;  // change under N -> N+8
    double orbit_tail = 0;   // change under a larger direct cutoff
};

// max_exp is the direct-summation cutoff of the orbit sum; larger exponents enter through exact tails
TraceCheck trace_identity_check(cplx s, double lambda, int n, int degree = 32, int max_exp = 6);

struct Resonance {
    cplx s;
    double abs_det = 0;
    double newton_residual = 0;
    int degree = 0;
    double stability_gap = 0;
    ParityBlock parity = ParityBlock::even;
};

struct SearchRectangle {
    double re_min, re_max, im_min, im_max;
};

struct SearchOptions {
    int degree = 32;
    int nx = 0, ny = 0;  // 0 picks cells of width about 0.05
    double guard = kHalfGuardRadius;
};

struct FlaggedCell {
    SearchRectangle cell;
    double winding = 0;
    int roots_found = 0;
    std::string reason;
};

struct ResonanceSearch {
    std::vector<Resonance> resonances;
    std::vector<FlaggedCell> flagged;
    bool odd_only = false;  // some cells met the guard disk around 1/2 and used the odd block only
};

ResonanceSearch find_resonances(double lambda, const SearchRectangle& rect, const SearchOptions& opts = {});

// re_s,im_s,abs_det,newton_residual,parity,N
void write_resonances_csv(std::ostream& os, const std::vector<Resonance>& rs);

}  // namespace reslab
