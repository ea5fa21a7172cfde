#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace reslab {

using cplx = std::complex<double>;

struct EisensteinOptions {
    // Taylor degree per variable of the coset-sum resolvent
    int degree = 32;
    // required gap between s and the leading real zero
    double margin = 0.05;
};

struct EisensteinValue {
    double u = 0, ux = 0, uy = 0;
};

// real-analytic core A with u = y^s A
struct CoreValue {
    double a = 0, ax = 0, ay = 0;
};

// u(z) = sum over cosets Gamma_inf \ Gamma of (Im g z)^s for real s above the leading zero
class EisensteinModel {
public:
    EisensteinModel(double lambda, double s, const EisensteinOptions& opts = {});

    double lambda() const { return lambda_; }
    double s() const { return s_; }
    int degree() const { return n_; }

    // Im z > 0
    EisensteinValue eval(cplx z) const;
    // Im z >= 0; on the real axis this is sum |ct+d|^{-2s}
    CoreValue core(cplx z) const;

private:
    struct HValue {
        double v;
        cplx d1;  // derivative in the first of the two holomorphic variables
    };
    HValue resolvent(cplx w, int depth) const;
    HValue taylor(const Eigen::MatrixXd& c, cplx w) const;

    double lambda_, s_;
    int n_;
    double taylor_radius_;
    Eigen::MatrixXd h_;
    std::vector<int> tail_cutoffs_;
    std::vector<Eigen::MatrixXd> tails_;
};

EisensteinValue eisenstein_eval(const EisensteinModel& m, cplx z);

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta
struct QuadratureRule {
    std::vector<double> nodes, weights;
};
QuadratureRule gauss_jacobi(int n, double alpha = 0, double beta = 0);

// polyline in the closed upper half-plane; only the first and last vertex may be real
class ContourPath {
public:
    explicit ContourPath(std::vector<cplx> vertices);

    static ContourPath segment(cplx a, cplx b) { return ContourPath({a, b}); }
    // rise from xi to height h, traverse, descend to eta
    static ContourPath detour(double xi, double eta, double height = 0.3);

    const std::vector<cplx>& vertices() const { return v_; }

private:
    std::vector<cplx> v_;
};

struct QuadratureOptions {
    int nodes = 40;
    // flagged when doubling the nodes moves the value by more than this
    double tolerance = 1e-7;
};

struct IntegralResult {
    cplx value;
    double richardson = 0;
    bool flagged = false;
};

// integral of the Green's form {u, R(t; .)^s} along the path
IntegralResult greens_form_integral(const EisensteinModel& m, double t, const ContourPath& path,
                                    const QuadratureOptions& opts = {});

struct CoreIdentity {
    cplx lhs;
    double rhs = 0;
    double relative_error = 0;
};

// 2 sqrt(pi) Gamma(s+1/2)/Gamma(s)
double core_gamma_factor(double s);

// xi < t < eta inside the funnel interval
CoreIdentity funnel_core_identity(const EisensteinModel& m, double xi, double eta, double t,
                                  const QuadratureOptions& opts = {});

struct CuspFourier {
    cplx a = 0;  // coefficient of y^{1-s}
    cplx b = 0;  // coefficient of y^s
    double higher_mode_energy = 0;
};

// zero Fourier mode at two heights in the cusp, fitted to a y^{1-s} + b y^s
CuspFourier cusp_fourier_classify(const std::function<cplx(cplx)>& u, double lambda, double s, double y1, double y2,
                                  int nodes = 256);

struct SampledPoint {
    double x, y;
    cplx u;
};

std::vector<SampledPoint> read_sampled_u_csv(std::istream& is);
// samples on uniform x-grids over one period at two or more heights; the two lowest heights >= 2 are used
CuspFourier cusp_fourier_from_samples(std::span<const SampledPoint> samples, double lambda, double s);

// c_u(z1, z2)(t) along the straight segment
std::vector<cplx> cocycle_cu(const EisensteinModel& m, cplx z1, cplx z2, std::span<const double> ts,
                             const QuadratureOptions& opts = {});

}  // namespace reslab
