#include "reslab/green.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "reslab/errors.hpp"
#include "reslab/parallel.hpp"
#include "reslab/special.hpp"
#include "reslab/spectral.hpp"

namespace reslab {

namespace {

constexpr int kMaxResolventDepth = 80;
constexpr double kTailRatio = 0.25;
const std::vector<int> kTailCutoffs = {1, 2, 4, 8, 16, 32, 64};

// (p)_m / m! for p = s + j
Eigen::MatrixXd rising_binomials(double s, int n) {
    Eigen::MatrixXd b(n, n);
    for (int j = 0; j < n; ++j) {
        const double p = s + j;
        b(j, 0) = 1;
        for (int m = 1; m < n; ++m) b(j, m) = b(j, m - 1) * (p + m - 1) / m;
    }
    return b;
}

// lambda^{-(2s+P)} zeta(2s+P, q) for P < 4n
std::vector<double> scaled_zetas(double s, double lambda, int n, double q) {
    std::vector<double> z(4 * n);
    for (int p = 0; p < 4 * n; ++p) {
        const double w = 2 * s + p;
        z[p] = std::exp(-w * std::log(lambda)) * hurwitz_zeta(w, q);
    }
    return z;
}

}  // namespace

EisensteinModel::EisensteinModel(double lambda, double s, const EisensteinOptions& opts)
    : lambda_(lambda), s_(s), n_(opts.degree) {
    if (!(lambda > 2)) throw DomainError("EisensteinModel: lambda must exceed 2");
    if (n_ < 2) throw DomainError("EisensteinModel: degree must be at least 2");
    const double delta = delta_bisection(lambda, 24);
    if (!(s > delta + opts.margin))
        throw DomainError("EisensteinModel: s must exceed the leading zero " + std::to_string(delta) + " by the margin");
    taylor_radius_ = std::min(0.9, 0.3 * (lambda - 1));
    const int n = n_;
    const Eigen::MatrixXd bin = rising_binomials(s, n);
    const std::vector<double> z0 = scaled_zetas(s, lambda, n, 1.0);
    Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(n * n, n * n);
    for (int m = 0; m < n; ++m)
        for (int q = 0; q < n; ++q)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const int p = j + k + m + q;
                    if (p % 2) continue;
                    sys(m * n + q, j * n + k) -= 2 * bin(j, m) * bin(k, q) * z0[p];
                }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n * n);
    rhs(0) = 1;
    const Eigen::VectorXd sol = sys.partialPivLu().solve(rhs);
    h_.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h_(j, k) = sol(j * n + k);
    for (int cutoff : kTailCutoffs) {
        const std::vector<double> zb = scaled_zetas(s, lambda, n, cutoff + 1.0);
        Eigen::MatrixXd tail = Eigen::MatrixXd::Zero(n, n);
        for (int m = 0; m < n; ++m)
            for (int q = 0; q < n; ++q) {
                double acc = 0;
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        const int p = j + k + m + q;
                        if (p % 2 == 0) acc += h_(j, k) * bin(j, m) * bin(k, q) * zb[p];
                    }
                tail(m, q) = 2 * acc;
            }
        tail_cutoffs_.push_back(cutoff);
        tails_.push_back(std::move(tail));
    }
}

EisensteinModel::HValue EisensteinModel::taylor(const Eigen::MatrixXd& c, cplx w) const {
    const cplx wb = std::conj(w);
    cplx v = 0, d = 0;
    for (int j = n_ - 1; j >= 0; --j) {
        cplx q = 0;
        for (int k = n_ - 1; k >= 0; --k) q = q * wb + c(j, k);
        d = d * w + v;
        v = v * w + q;
    }
    return {v.real(), d};
}

EisensteinModel::HValue EisensteinModel::resolvent(cplx w, int depth) const {
    if (std::abs(w) <= taylor_radius_) return taylor(h_, w);
    if (depth > kMaxResolventDepth) throw ConvergenceError("EisensteinModel: point too close to the limit set");
    std::size_t idx = 0;
    while (idx < tail_cutoffs_.size() && std::abs(w) > kTailRatio * (tail_cutoffs_[idx] + 1) * lambda_) ++idx;
    if (idx == tail_cutoffs_.size()) throw DomainError("EisensteinModel: point outside the reliable region");
    const int cutoff = tail_cutoffs_[idx];
    HValue out = taylor(tails_[idx], w);
    out.v += 1;
    for (int b = -cutoff; b <= cutoff; ++b) {
        if (b == 0) continue;
        const cplx q = w + double(b) * lambda_;
        if (std::abs(q) == 0) throw ExceptionalPointError("EisensteinModel: cusp point");
        const double g = std::exp(-s_ * std::log(std::norm(q)));
        const HValue inner = resolvent(-1.0 / q, depth + 1);
        out.v += g * inner.v;
        out.d1 += -s_ / q * g * inner.v + g * inner.d1 / (q * q);
    }
    return out;
}

CoreValue EisensteinModel::core(cplx z) const {
    if (z.imag() < 0) throw DomainError("EisensteinModel: Im z must be nonnegative");
    if (std::abs(z) == 0) throw ExceptionalPointError("EisensteinModel: cusp point 0");
    HValue f = resolvent(z, 0);
    const double g = std::exp(-s_ * std::log(std::norm(z)));
    const HValue inner = resolvent(-1.0 / z, 0);
    f.v += g * inner.v;
    f.d1 += -s_ / z * g * inner.v + g * inner.d1 / (z * z);
    // d/dx = d1 + d2, d/dy = i(d1 - d2), with d2 = conj(d1)
    return {f.v, 2 * f.d1.real(), -2 * f.d1.imag()};
}

EisensteinValue EisensteinModel::eval(cplx z) const {
    if (!(z.imag() > 0)) throw DomainError("EisensteinModel: Im z must be positive");
    const CoreValue a = core(z);
    const double y = z.imag();
    const double ys = std::pow(y, s_);
    return {ys * a.a, ys * a.ax, s_ * ys / y * a.a + ys * a.ay};
}

EisensteinValue eisenstein_eval(const EisensteinModel& m, cplx z) { return m.eval(z); }

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1 || !(alpha > -1) || !(beta > -1)) throw DomainError("gauss_jacobi: invalid parameters");
    const double ab = alpha + beta;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double d = 2.0 * k + ab;
        jac(k, k) = (k == 0) ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / (d * (d + 2));
        if (k > 0) {
            const double off = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (d * d * (d + 1) * (d - 1)));
            jac(k, k - 1) = jac(k - 1, k) = off;
        }
    }
    const double mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(alpha + 1) + std::lgamma(beta + 1) -
                                std::lgamma(ab + 2));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    QuadratureRule rule;
    for (int i = 0; i < n; ++i) {
        rule.nodes.push_back(es.eigenvalues()(i));
        const double v0 = es.eigenvectors()(0, i);
        rule.weights.push_back(mu0 * v0 * v0);
    }
    return rule;
}

ContourPath::ContourPath(std::vector<cplx> vertices) : v_(std::move(vertices)) {
    if (v_.size() < 2) throw DomainError("ContourPath: needs two vertices");
    for (std::size_t i = 0; i < v_.size(); ++i) {
        const bool end = i == 0 || i + 1 == v_.size();
        if (v_[i].imag() < 0 || (!end && !(v_[i].imag() > 0)))
            throw DomainError("ContourPath: interior vertices must lie in the upper half-plane");
    }
    if (v_.size() == 2 && v_[0].imag() == 0 && v_[1].imag() == 0)
        throw DomainError("ContourPath: a segment cannot run along the real axis");
}

ContourPath ContourPath::detour(double xi, double eta, double height) {
    if (!(height > 0)) throw DomainError("ContourPath::detour: height must be positive");
    return ContourPath({cplx(xi, 0), cplx(xi, height), cplx(eta, height), cplx(eta, 0)});
}

namespace {

// Green's form {u, R(t;.)^s} in core form, without the factor y^{2s}
cplx form_without_weight(const EisensteinModel& m, double t, cplx z, cplx dz) {
    const double s = m.s();
    const CoreValue a = m.core(z);
    const double x = z.real(), y = z.imag();
    const double r2 = (t - x) * (t - x) + y * y;
    const double pref = std::exp(-s * std::log(r2));
    const double cx = a.ay + 2 * s * y * a.a / r2;
    const double cy = -a.ax + 2 * s * (t - x) * a.a / r2;
    return pref * (cx * dz.real() + cy * dz.imag());
}

cplx segment_integral(const EisensteinModel& m, double t, cplx p, cplx q, int nodes) {
    const double s = m.s();
    const cplx half = (q - p) / 2.0;
    const bool start_real = p.imag() == 0, end_real = q.imag() == 0;
    if ((start_real && p.real() == t) || (end_real && q.real() == t))
        throw ExceptionalPointError("greens_form_integral: t is a path endpoint");
    const double alpha = end_real ? 2 * s : 0, beta = start_real ? 2 * s : 0;
    const QuadratureRule rule = gauss_jacobi(nodes, alpha, beta);
    // y^{2s} = c (1 -+ tau)^{2s} at a real endpoint
    double scale = 1;
    if (start_real) scale = std::pow(q.imag() / 2, 2 * s);
    if (end_real) scale = std::pow(p.imag() / 2, 2 * s);
    std::vector<cplx> vals(rule.nodes.size());
    parallel_for(vals.size(), [&](std::size_t i) {
        const double tau = rule.nodes[i];
        const cplx z = p + half * (1 + tau);
        const double weight = (start_real || end_real) ? scale : std::pow(z.imag(), 2 * s);
        vals[i] = rule.weights[i] * weight * form_without_weight(m, t, z, half);
    });
    cplx sum = 0;
    for (const cplx& v : vals) sum += v;
    return sum;
}

cplx path_integral(const EisensteinModel& m, double t, const ContourPath& path, int nodes) {
    cplx sum = 0;
    const auto& v = path.vertices();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) sum += segment_integral(m, t, v[i], v[i + 1], nodes);
    return sum;
}

}  // namespace

IntegralResult greens_form_integral(const EisensteinModel& m, double t, const ContourPath& path,
                                    const QuadratureOptions& opts) {
    const cplx coarse = path_integral(m, t, path, opts.nodes);
    const cplx fine = path_integral(m, t, path, 2 * opts.nodes);
    IntegralResult r;
    r.value = fine;
    r.richardson = std::abs(fine - coarse);
    r.flagged = r.richardson > opts.tolerance;
    return r;
}

double core_gamma_factor(double s) {
    return 2 * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(s + 0.5) - std::lgamma(s));
}

CoreIdentity funnel_core_identity(const EisensteinModel& m, double xi, double eta, double t,
                                  const QuadratureOptions& opts) {
    const double lambda = m.lambda();
    const double root = std::sqrt(lambda * lambda - 4);
    const double lo = (lambda - root) / 2, hi = (lambda + root) / 2;
    if (!(lo < xi && xi < t && t < eta && eta < hi))
        throw DomainError("funnel_core_identity: need theta- < xi < t < eta < theta+");
    CoreIdentity out;
    const IntegralResult r = greens_form_integral(m, t, ContourPath::detour(xi, eta), opts);
    if (r.flagged) throw ConvergenceError("funnel_core_identity: quadrature did not settle");
    out.lhs = r.value;
    out.rhs = core_gamma_factor(m.s()) * m.core(cplx(t, 0)).a;
    out.relative_error = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
    return out;
}

CuspFourier cusp_fourier_classify(const std::function<cplx(cplx)>& u, double lambda, double s, double y1, double y2,
                                  int nodes) {
    if (!(y1 >= 2 && y2 > y1)) throw DomainError("cusp_fourier_classify: need 2 <= y1 < y2");
    if (std::abs(s - 0.5) < 1e-3) throw ConvergenceError("cusp_fourier_classify: system is ill-conditioned near s = 1/2");
    if (nodes < 4) throw DomainError("cusp_fourier_classify: too few nodes");
    CuspFourier out;
    cplx c0[2];
    const double ys[2] = {y1, y2};
    for (int h = 0; h < 2; ++h) {
        std::vector<cplx> row(nodes);
        for (int k = 0; k < nodes; ++k) row[k] = u(cplx(lambda * k / nodes, ys[h]));
        cplx mean = 0;
        for (const cplx& v : row) mean += v;
        c0[h] = mean / double(nodes);
        for (int f = 1; f < nodes; ++f) {
            cplx c = 0;
            for (int k = 0; k < nodes; ++k) c += row[k] * std::polar(1.0, -2 * std::numbers::pi * f * k / nodes);
            out.higher_mode_energy += std::norm(c / double(nodes));
        }
    }
    const double a11 = std::pow(y1, 1 - s), a12 = std::pow(y1, s), a21 = std::pow(y2, 1 - s), a22 = std::pow(y2, s);
    const double det = a11 * a22 - a12 * a21;
    out.a = (c0[0] * a22 - c0[1] * a12) / det;
    out.b = (c0[1] * a11 - c0[0] * a21) / det;
    return out;
}

std::vector<SampledPoint> read_sampled_u_csv(std::istream& is) {
    std::vector<SampledPoint> out;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find_first_of("xy") != std::string::npos && line.find("re_u") != std::string::npos) continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x, y, re, im;
        if (!(ls >> x >> y >> re >> im)) throw DomainError("read_sampled_u_csv: malformed row: " + line);
        out.push_back({x, y, cplx(re, im)});
    }
    return out;
}

CuspFourier cusp_fourier_from_samples(std::span<const SampledPoint> samples, double lambda, double s) {
    std::map<double, std::vector<SampledPoint>> rows;
    for (const auto& p : samples)
        if (p.y >= 2) rows[p.y].push_back(p);
    if (rows.size() < 2) throw DomainError("cusp_fourier_from_samples: need two heights >= 2");
    auto it = rows.begin();
    const double y1 = it->first;
    const double y2 = std::next(it)->first;
    auto lookup = [&](cplx z) {
        const auto& row = rows.at(z.imag() == y1 ? y1 : y2);
        const double x = std::fmod(std::fmod(z.real(), lambda) + lambda, lambda);
        const auto best = std::min_element(row.begin(), row.end(), [&](const SampledPoint& a, const SampledPoint& b) {
            return std::abs(a.x - x) < std::abs(b.x - x);
        });
        return best->u;
    };
    const int nodes = static_cast<int>(std::min(rows.at(y1).size(), rows.at(y2).size()));
    return cusp_fourier_classify(lookup, lambda, s, y1, y2, nodes);
}

std::vector<cplx> cocycle_cu(const EisensteinModel& m, cplx z1, cplx z2, std::span<const double> ts,
                             const QuadratureOptions& opts) {
    if (!(z1.imag() > 0 && z2.imag() > 0)) throw DomainError("cocycle_cu: endpoints must lie in the upper half-plane");
    std::vector<cplx> out(ts.size(), 0.0);
    if (z1 == z2) return out;
    const ContourPath path = ContourPath::segment(z1, z2);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const IntegralResult r = greens_form_integral(m, ts[i], path, opts);
        if (r.flagged) throw ConvergenceError("cocycle_cu: quadrature did not settle");
        out[i] = r.value;
    }
    return out;
}

}  // namespace reslab
