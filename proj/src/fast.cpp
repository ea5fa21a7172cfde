#include "reslab/fast.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "json.hpp"

#include "reslab/errors.hpp"
#include "reslab/special.hpp"
#include "chebyshev.hpp"

namespace reslab {

namespace {

cplx neg_pow(double base, cplx w) { return std::exp(-w * std::log(base)); }

}  // namespace

FastValue fast_apply(cplx s, double lambda, const PairFunction& f, int component, double x,
                     const FastApplyOptions& opts) {
    if (!(lambda > 2)) throw DomainError("fast_apply: lambda must exceed 2");
    if (component != 1 && component != 2) throw DomainError("fast_apply: component must be 1 or 2");
    if (!f.in_domain(component, x)) throw DomainError("fast_apply: x outside the component domain");
    if (opts.n_max < 1 || opts.tail_order < 0) throw DomainError("fast_apply: invalid truncation");
    const double sgn = component == 1 ? 1.0 : -1.0;
    auto h = [&](double y) { return f.f1(y) + f.f2(y); };
    cplx sum = 0;
    for (int n = 1; n <= opts.n_max; ++n) {
        const double w = n * lambda + sgn * x;
        sum += neg_pow(w, 2.0 * s) * h(-sgn / w);
    }
    std::vector<cplx> a;
    if (opts.tail_order == 0) {
        a.push_back(h(0.0));
    } else {
        const double rho = 1 / ((opts.n_max + 1) * lambda - std::abs(x));
        std::vector<cplx> values;
        for (double u : detail::chebyshev_nodes(rho, opts.tail_order)) values.push_back(h(u));
        a = detail::chebyshev_to_monomials(values, rho);
    }
    bool all_zero = true;
    for (const cplx& c : a) all_zero = all_zero && c == 0.0;
    if (all_zero) return {sum, 0.0};
    if (std::abs(s - 0.5) < kHalfGuardRadius && std::abs(a[0]) > 1e-14)
        throw PoleError("fast_apply: s inside the guard disk around 1/2 with (f1+f2)(0) != 0");
    const double q = opts.n_max + 1 + sgn * x / lambda;
    cplx tail = 0;
    double err = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const cplx w = 2.0 * s + double(j);
        const double sign = component == 1 && (j % 2) ? -1.0 : 1.0;
        const cplx term = sign * a[j] * neg_pow(lambda, w) * hurwitz_zeta(w, q);
        tail += term;
        if (j + 2 >= a.size()) err += std::abs(term);
    }
    if (opts.tail_order == 0) {
        // size of the next-order correction
        const double w = opts.n_max * lambda + sgn * x;
        err = std::abs(h(-sgn / w) - a[0]) * std::abs(tail) / std::max(std::abs(a[0]), 1e-300);
    }
    return {sum + tail, err};
}

OperatorMatrix::OperatorMatrix(cplx s, double lambda, int degree, MatrixKind kind, Eigen::MatrixXcd entries)
    : s_(s), lambda_(lambda), degree_(degree), kind_(kind), m_(std::move(entries)) {}

Eigen::MatrixXcd OperatorMatrix::even_block() const {
    if (kind_ == MatrixKind::odd_only) throw DomainError("OperatorMatrix: even block not assembled");
    const int n = (degree_ + 1) / 2;
    Eigen::MatrixXcd b(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) b(j, k) = m_(2 * j, 2 * k);
    return b;
}

Eigen::MatrixXcd OperatorMatrix::odd_block() const {
    const int n = degree_ / 2;
    Eigen::MatrixXcd b(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) b(j, k) = m_(2 * j + 1, 2 * k + 1);
    return b;
}

OperatorMatrix assemble_matrix(cplx s, double lambda, int degree, MatrixKind kind, double guard) {
    if (!(lambda > 2)) throw DomainError("assemble_matrix: lambda must exceed 2");
    if (degree < 1) throw DomainError("assemble_matrix: degree must be positive");
    if (kind == MatrixKind::full && std::abs(s - 0.5) < guard)
        throw PoleError("assemble_matrix: entry (0,0) hits the zeta pole near s = 1/2");
    const double log_lambda = std::log(lambda);
    // zeta and lambda powers depend on j+k only
    std::vector<cplx> zl(2 * degree);
    for (int m = 0; m < 2 * degree - 1; m += 2) {
        if (kind == MatrixKind::odd_only && m == 0) continue;
        const cplx w = 2.0 * s + double(m);
        if (std::abs(w - 1.0) < 1e-15)
            throw PoleError("assemble_matrix: zeta pole at entry (" + std::to_string(m / 2) + "," +
                            std::to_string(m / 2) + ")");
        zl[m] = 2.0 * riemann_zeta(w) * std::exp(-w * log_lambda);
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(degree, degree);
    const int start = kind == MatrixKind::odd_only ? 1 : 0;
    const int step = kind == MatrixKind::odd_only ? 2 : 1;
    for (int k = start; k < degree; k += step) {
        const cplx w = 2.0 * s + double(k);
        cplx binom = 1;  // binom(w + j - 1, j)
        for (int j = 0; j < degree; ++j) {
            if ((j + k) % 2 == 0 && (kind == MatrixKind::full || j % 2 == 1)) m(j, k) = binom * zl[j + k];
            binom *= (w + double(j)) / double(j + 1);
        }
    }
    return OperatorMatrix(s, lambda, degree, kind, std::move(m));
}

std::vector<cplx> cauchy_coefficients(const ComplexFn& g, int count, double radius, int nodes) {
    std::vector<cplx> vals(nodes);
    for (int i = 0; i < nodes; ++i) vals[i] = g(std::polar(radius, 2 * std::numbers::pi * i / nodes));
    std::vector<cplx> c(count);
    for (int k = 0; k < count; ++k) {
        cplx acc = 0;
        for (int i = 0; i < nodes; ++i) acc += vals[i] * std::polar(1.0, -2 * std::numbers::pi * k * i / nodes);
        c[k] = acc / double(nodes) / std::pow(radius, k);
    }
    return c;
}

cplx reduced_apply_taylor(cplx s, double lambda, std::span<const cplx> coeffs, cplx z) {
    if (!(lambda > 2)) throw DomainError("reduced_apply: lambda must exceed 2");
    if (std::abs(z) > kTaylorRadius) throw DomainError("reduced_apply: |z| exceeds 0.99");
    cplx sum = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        const cplx w = 2.0 * s + double(k);
        if (std::abs(w - 1.0) < 1e-15) throw PoleError("reduced_apply: pole at s = 1/2 with h(0) != 0");
        const cplx lw = std::exp(-w * std::log(lambda));
        const double sign = k % 2 ? -1.0 : 1.0;
        sum += coeffs[k] * lw * (sign * hurwitz_zeta(w, 1.0 + z / lambda) + hurwitz_zeta(w, 1.0 - z / lambda));
    }
    return sum;
}

cplx reduced_apply_series(cplx s, double lambda, const ComplexFn& h, cplx z, int n_direct) {
    if (!(lambda > 2)) throw DomainError("reduced_apply: lambda must exceed 2");
    if (std::abs(z) > kTaylorRadius) throw DomainError("reduced_apply: |z| exceeds 0.99");
    const cplx w0 = 2.0 * s;
    cplx sum = 0;
    for (int n = 1; n <= n_direct; ++n) {
        const cplx a = n * lambda + z;
        const cplx b = n * lambda - z;
        sum += std::exp(-w0 * std::log(a)) * h(-1.0 / a) + std::exp(-w0 * std::log(b)) * h(1.0 / b);
    }
    // arguments of h beyond n_direct stay inside |w| <= 1/(n_direct*lambda), so a short expansion suffices
    const std::vector<cplx> c = cauchy_coefficients(h, 24, 0.5, 64);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const cplx w = w0 + double(k);
        if (std::abs(w - 1.0) < 1e-15) {
            if (c[k] == 0.0) continue;
            throw PoleError("reduced_apply: pole at s = 1/2 with h(0) != 0");
        }
        const cplx lw = std::exp(-w * std::log(lambda));
        const double sign = k % 2 ? -1.0 : 1.0;
        const double q = n_direct + 1.0;
        sum += c[k] * lw * (sign * hurwitz_zeta(w, q + z / lambda) + hurwitz_zeta(w, q - z / lambda));
    }
    return sum;
}

std::vector<cplx> reduced_apply_matrix(const OperatorMatrix& m, std::span<const cplx> coeffs) {
    const int n = m.degree();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < n && k < static_cast<int>(coeffs.size()); ++k) v(k) = coeffs[k];
    const Eigen::VectorXcd r = m.entries() * v;
    return {r.data(), r.data() + n};
}

void write_matrix_json(std::ostream& os, const OperatorMatrix& m) {
    nlohmann::json j;
    j["N"] = m.degree();
    j["s"] = {m.s().real(), m.s().imag()};
    j["lambda"] = m.lambda();
    nlohmann::json e = nlohmann::json::array();
    for (int r = 0; r < m.degree(); ++r)
        for (int c = 0; c < m.degree(); ++c) e.push_back({m.entries()(r, c).real(), m.entries()(r, c).imag()});
    j["entries"] = std::move(e);
    os << j.dump() << '\n';
}

}  // namespace reslab
