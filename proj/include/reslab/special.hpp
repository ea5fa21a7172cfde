#pragma once

#include <complex>

namespace reslab {

using cplx = std::complex<double>;

struct ZetaConfig {
    int K = 30;  // direct summation terms
    int M = 12;  // Bernoulli correction terms, at most 12
};

// Re w >= 0.4 and |Im w| <= 50
bool zeta_validated_region(cplx w);

cplx riemann_zeta(cplx w, const ZetaConfig& cfg = {});

struct ZetaValue {
    cplx value;
    bool validated;
};

ZetaValue riemann_zeta_checked(cplx w, const ZetaConfig& cfg = {});

// sum_{n>=0} (n+q)^{-w}, q > 0
cplx hurwitz_zeta(cplx w, double q, const ZetaConfig& cfg = {});
// complex shift with Re q > 0, principal powers
cplx hurwitz_zeta(cplx w, cplx q, const ZetaConfig& cfg = {});
double hurwitz_zeta(double w, double q, const ZetaConfig& cfg = {});

cplx log_gamma(cplx z);

// binom(w+j-1, j) = (w)_j / j!
cplx pochhammer_binomial(cplx w, int j);

enum class BranchKind {
    shift_plus,   // (z+alpha)^{-w}, cut (-inf, -alpha]
    shift_minus,  // (alpha-z)^{-w}, cut [alpha, inf)
    square        // (z^2)^{-w/2}, cut on the imaginary axis
};

cplx branched_power(BranchKind kind, double alpha, cplx w, cplx z);

}  // namespace reslab
