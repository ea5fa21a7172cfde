#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reslab/function_space.hpp"
#include "reslab/moebius.hpp"

namespace reslab {

enum class PeriodSource { eigenvector, analytic };

struct PeriodFunction {
    PairFunction f;
    cplx s = 1.0;
    double lambda = 3.0;
    PeriodSource source = PeriodSource::analytic;
    int degree = 0;  // Taylor degree of the source eigenvector, 0 for analytic input
    double slow_residual = 0;
    double fast_residual = 0;
    cplx cusp_value = 0;  // f1(0) + f2(0)
    double even_defect = 0;
    double odd_defect = 0;
    double boundary_defect = 0;  // sup |f1 + f2| near 0
};

// Fills the residual and defect fields from probes.
PeriodFunction make_period_function(cplx s, double lambda, PairFunction f,
                                    PeriodSource source = PeriodSource::analytic, int degree = 0);

// f1(x) = sum_{n>=1} (n lambda + x)^{-2s} h(-1/(n lambda + x)), f2 mirrored, from Taylor coefficients of h.
PeriodFunction reconstruct_period(cplx s, double lambda, std::span<const cplx> h);

enum class PeriodKind { boundary, cuspidal, resonant_noncuspidal, generic };
enum class Parity { even, odd, mixed };

std::string to_string(PeriodKind k);
std::string to_string(Parity p);

struct PeriodClass {
    PeriodKind kind = PeriodKind::generic;
    Parity parity = Parity::mixed;
};

PeriodClass classify_period(const PeriodFunction& f);

// (f2(-t), f1(-t))
PairFunction parity_image(const PairFunction& f);

struct SectionTerm {
    int sign = 1;
    GroupElement g;
    int component = 1;
};

struct SectionPiece {
    CyclicInterval interval;
    std::vector<SectionTerm> terms;
};

// Piecewise sum of terms +-tau_s(g) f_j on cyclic intervals covering the projective line.
class PiecewiseSection {
public:
    PiecewiseSection();
    explicit PiecewiseSection(std::vector<SectionPiece> pieces);

    const std::vector<SectionPiece>& pieces() const { return pieces_; }
    std::vector<double> breakpoints() const;
    std::size_t term_count() const;

    PiecewiseSection operator-() const;
    friend PiecewiseSection operator+(const PiecewiseSection& x, const PiecewiseSection& y);
    friend PiecewiseSection operator-(const PiecewiseSection& x, const PiecewiseSection& y);

    // tau_s(gamma) applied to the section
    PiecewiseSection transformed(const GroupElement& gamma) const;

    // the piece whose interval contains t; ExceptionalPointError near a breakpoint
    const SectionPiece& piece_at(double t) const;

    cplx eval(cplx s, const PairFunction& f, double t) const;

private:
    std::vector<SectionPiece> pieces_;
};

enum class XiBase { one, infinity };

struct XiPoint {
    XiBase base = XiBase::infinity;
    GroupElement g;

    double value() const;
};

XiPoint xi_one();
XiPoint xi_infinity();

// the word with every T^k replaced by T^{-k}, i.e. J g J
GroupElement mirror_element(const GroupElement& g, double lambda);
// -xi as a point of Xi
XiPoint mirror_point(const XiPoint& xi, double lambda);

inline constexpr std::size_t kMaxCocycleWordLength = 12;

class Cocycle {
public:
    Cocycle(cplx s, double lambda, PairFunction f);

    cplx s() const { return s_; }
    double lambda() const { return lambda_; }
    const PairFunction& function() const { return f_; }

    const PiecewiseSection& psi_S() const { return psi_s_; }
    const PiecewiseSection& potential_one() const { return p_one_; }

    PiecewiseSection psi(const GroupElement& g) const;
    PiecewiseSection potential(const XiPoint& xi) const;
    PiecewiseSection value(const XiPoint& xi, const XiPoint& eta) const;

    cplx eval(const PiecewiseSection& section, double t) const { return section.eval(s_, f_, t); }
    cplx eval(const XiPoint& xi, const XiPoint& eta, double t) const { return eval(value(xi, eta), t); }

private:
    cplx s_;
    double lambda_;
    PairFunction f_;
    PiecewiseSection psi_s_, p_one_;
};

// requires a slow 1-eigenfunction
Cocycle build_cocycle(const PeriodFunction& f);

struct CocycleReport {
    double relation = 0;
    double antisymmetry = 0;
    double equivariance = 0;
    double vanishing = 0;
    std::size_t evaluations = 0;
    std::size_t skipped = 0;  // probes that fell on exceptional points or outside the domains
};

CocycleReport verify_cocycle(const Cocycle& c, int trials, std::uint64_t seed = 1);

// sup |c(1, lambda-1)| over probes of (lambda-1, 1)_c
double vanishing_residual(const Cocycle& c, int probes = 64);

// sup |c(xi,eta) - (q(xi) - q(eta))| for a boundary pair (-b, b), q(g inf) = tau_s(g) b, q(g 1) = 0
double coboundary_residual(const Cocycle& c, const RealFn& b, int trials, std::uint64_t seed = 1);

// sup |c_{Jf}(xi,eta)(t) + c_f(-xi,-eta)(-t)|
double parity_equivariance_residual(const Cocycle& cf, const Cocycle& cjf, int trials, std::uint64_t seed = 1);

}  // namespace reslab
