#include "reslab/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "reslab/errors.hpp"

namespace reslab {

namespace {

// B_{2m} / (2m)! for m = 1..12
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6 / 2,
    -1.0 / 30 / 24,
    1.0 / 42 / 720,
    -1.0 / 30 / 40320,
    5.0 / 66 / 3628800,
    -691.0 / 2730 / 479001600,
    7.0 / 6 / 87178291200.0,
    -3617.0 / 510 / 20922789888000.0,
    43867.0 / 798 / 6402373705728000.0,
    -174611.0 / 330 / 2432902008176640000.0,
    854513.0 / 138 / 1.1240007277776077e21,
    -236364091.0 / 2730 / 6.204484017332394e23,
};

inline cplx neg_power(cplx base, cplx w) { return std::exp(-w * std::log(base)); }
inline cplx neg_power(double base, cplx w) { return std::exp(-w * std::log(base)); }
inline double neg_power(double base, double w) { return std::exp(-w * std::log(base)); }

// Euler-Maclaurin for sum_{n>=0} (n+q)^{-w}; direct terms until Re(n+q) >= K
template <class W, class Q>
auto hurwitz_em(W w, Q q, const ZetaConfig& cfg) {
    using R = decltype(neg_power(q, w));
    if (w == W(1)) throw PoleError("zeta: pole at w = 1");
    const int M = std::min(cfg.M, 12);
    R sum = 0;
    Q Q0 = q;
    while (std::real(Q0) < cfg.K) {
        sum += neg_power(Q0, w);
        Q0 += 1.0;
    }
    const R qw = neg_power(Q0, w);
    const Q inv = 1.0 / Q0;
    sum += qw * Q0 / (w - 1.0) + 0.5 * qw;
    R poch = w;               // (w)_{2m-1}
    R pw = qw * inv;          // Q^{-w-2m+1}
    const Q inv2 = inv * inv;
    for (int m = 1; m <= M; ++m) {
        sum += kBernoulliOverFactorial[m - 1] * poch * pw;
        poch *= (w + (2.0 * m - 1)) * (w + 2.0 * m);
        pw *= inv2;
    }
    return sum;
}

}  // namespace

bool zeta_validated_region(cplx w) { return w.real() >= 0.4 && std::abs(w.imag()) <= 50; }

cplx riemann_zeta(cplx w, const ZetaConfig& cfg) { return hurwitz_em(w, 1.0, cfg); }

ZetaValue riemann_zeta_checked(cplx w, const ZetaConfig& cfg) {
    return {riemann_zeta(w, cfg), zeta_validated_region(w)};
}

cplx hurwitz_zeta(cplx w, double q, const ZetaConfig& cfg) {
    if (!(q > 0)) throw DomainError("hurwitz_zeta: q must be positive");
    return hurwitz_em(w, q, cfg);
}

cplx hurwitz_zeta(cplx w, cplx q, const ZetaConfig& cfg) {
    if (!(q.real() > 0)) throw DomainError("hurwitz_zeta: Re q must be positive");
    return hurwitz_em(w, q, cfg);
}

double hurwitz_zeta(double w, double q, const ZetaConfig& cfg) {
    if (!(q > 0)) throw DomainError("hurwitz_zeta: q must be positive");
    return hurwitz_em(w, q, cfg);
}

cplx log_gamma(cplx z) {
    cplx shift = 0;
    while (z.real() < 12) {
        shift += std::log(z);
        z += 1.0;
    }
    static constexpr std::array<double, 8> c = {
        1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0;
    cplx p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi) + series - shift;
}

cplx pochhammer_binomial(cplx w, int j) {
    if (j < 0) throw DomainError("pochhammer_binomial: j must be nonnegative");
    const bool nonpositive_integer = w.imag() == 0 && w.real() <= 0 && w.real() == std::round(w.real());
    if (j <= 256 || nonpositive_integer) {
        cplx r = 1;
        for (int i = 0; i < j; ++i) r *= (w + double(i)) / double(i + 1);
        return r;
    }
    return std::exp(log_gamma(w + double(j)) - log_gamma(w) - log_gamma(cplx(j + 1.0)));
}

cplx branched_power(BranchKind kind, double alpha, cplx w, cplx z) {
    switch (kind) {
        case BranchKind::shift_plus: {
            const cplx base = z + alpha;
            if (base.imag() == 0 && base.real() <= 0) throw CutError("branched_power: z on (-inf,-alpha]");
            return std::exp(-w * std::log(base));
        }
        case BranchKind::shift_minus: {
            const cplx base = alpha - z;
            if (base.imag() == 0 && base.real() <= 0) throw CutError("branched_power: z on [alpha,inf)");
            return std::exp(-w * std::log(base));
        }
        case BranchKind::square: {
            if (z.real() == 0) throw CutError("branched_power: z on the imaginary axis");
            return std::exp(-0.5 * w * std::log(z * z));
        }
    }
    return 0;
}

}  // namespace reslab
