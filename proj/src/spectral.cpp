#include "reslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "reslab/errors.hpp"
#include "reslab/format.hpp"
#include "reslab/moebius.hpp"
#include "reslab/orbit_sums.hpp"
#include "reslab/parallel.hpp"

namespace reslab {

std::string to_string(ParityBlock p) {
    switch (p) {
        case ParityBlock::full: return "full";
        case ParityBlock::even: return "even";
        case ParityBlock::odd: return "odd";
    }
    return "?";
}

cplx det_one_minus(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m;
    return a.partialPivLu().determinant();
}

cplx fredholm_det(cplx s, double lambda, int degree, ParityBlock block) {
    if (block == ParityBlock::odd) return det_one_minus(assemble_matrix(s, lambda, degree, MatrixKind::odd_only).odd_block());
    const OperatorMatrix m = assemble_matrix(s, lambda, degree);
    return block == ParityBlock::even ? det_one_minus(m.even_block()) : det_one_minus(m.entries());
}

DetFactorization det_factorized(cplx s, double lambda, int degree) {
    const OperatorMatrix m = assemble_matrix(s, lambda, degree);
    return {det_one_minus(m.entries()), det_one_minus(m.even_block()), det_one_minus(m.odd_block())};
}

cplx leading_eigenvalue(const Eigen::MatrixXcd& m) {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    cplx best = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i)) > std::abs(best)) best = es.eigenvalues()(i);
    return best;
}

LeadingEigenpair leading_even_eigenpair(double s, double lambda, int degree) {
    const OperatorMatrix m = assemble_matrix(s, lambda, degree);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.even_block());
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(best))) best = i;
    const Eigen::VectorXcd v = es.eigenvectors().col(best);
    if (std::abs(v(0)) < 1e-300) throw ConvergenceError("leading_even_eigenpair: eigenvector vanishes at 0");
    LeadingEigenpair out;
    out.value = es.eigenvalues()(best);
    out.vector = Eigen::VectorXcd::Zero(degree);
    for (Eigen::Index j = 0; j < v.size(); ++j) out.vector(2 * j) = v(j) / v(0);
    return out;
}

double delta_bisection(double lambda, int degree) {
    if (!(lambda > 2)) throw DomainError("delta_bisection: lambda must exceed 2");
    auto excess = [&](double s) {
        return std::abs(leading_eigenvalue(assemble_matrix(s, lambda, degree, MatrixKind::full, 0.0).even_block())) - 1;
    };
    double lo = 0.5 + 1e-6, hi = 1.0;
    if (!(excess(lo) > 0) || !(excess(hi) < 0)) throw ConvergenceError("delta_bisection: no crossing in (1/2, 1)");
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (excess(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

EulerProduct euler_product(cplx s, double lambda, const EulerOptions& opts) {
    if (opts.max_n < 1 || opts.max_exp < 1 || opts.k_max < 0) throw DomainError("euler_product: invalid cutoffs");
    const double sr = s.real();
    if (!(sr > 0)) throw DomainError("euler_product: Re s must be positive");
    // log of sum_n (2 max_exp)^n, the count bound for enumerated classes
    const double lb = std::log(2.0 * opts.max_exp);
    double log_count = -kInf;
    for (int n = 1; n <= opts.max_n; ++n) {
        const double t = n * lb;
        log_count = std::max(log_count, t) + std::log1p(std::exp(-std::abs(log_count - t)));
    }
    double L = opts.max_length;
    if (!(L > 0)) L = std::min(22.0, (log_count - std::log(opts.tolerance)) / sr + 0.5);
    const auto classes = enumerate_classes(lambda, opts.max_n, opts.max_exp, {L, 5'000'000});
    cplx log_z = 0;
    std::size_t used = 0;
    double l_min = kInf;
    for (const auto& c : classes) {
        if (!c.primitive) continue;
        ++used;
        l_min = std::min(l_min, c.length);
        for (int k = 0; k <= opts.k_max; ++k) {
            const cplx e = std::exp(-(s + double(k)) * c.length);
            if (std::abs(e) < 1e-18) break;
            log_z += std::log(1.0 - e);
        }
    }
    EulerProduct out;
    out.value = std::exp(log_z);
    out.classes_used = used;
    out.max_length = L;
    double tail = std::exp(log_count - sr * L) / (1 - std::exp(-sr * L));
    if (std::isfinite(l_min))
        tail += used * std::exp(-(sr + opts.k_max + 1) * l_min) / (1 - std::exp(-l_min));
    out.tail_estimate = tail;
    out.warning = tail > opts.tolerance;
    return out;
}

TraceCheck trace_identity_check(cplx s, double lambda, int n, int degree, int max_exp) {
    if (n < 1) throw DomainError("trace_identity_check: n must be positive");
    auto matrix_trace = [&](int N) {
        const Eigen::MatrixXcd m = assemble_matrix(s, lambda, N).entries();
        Eigen::MatrixXcd p = m;
        for (int i = 1; i < n; ++i) p = p * m;
        return p.trace();
    };
    TraceCheck out;
    out.trace_matrix = matrix_trace(degree);
    out.matrix_tail = std::abs(matrix_trace(degree + 8) - out.trace_matrix);
    OrbitSumOptions o;
    o.direct = max_exp;
    out.trace_orbit = orbit_sum(s, lambda, n, OrbitWeight::trace, o);
    o.direct = max_exp + 2;
    out.orbit_tail = std::abs(orbit_sum(s, lambda, n, OrbitWeight::trace, o) - out.trace_orbit);
    return out;
}

namespace {

struct Searcher {
    double lambda;
    int degree;
    bool odd_only;

    cplx det(cplx s, int N) const {
        return odd_only ? fredholm_det(s, lambda, N, ParityBlock::odd) : fredholm_det(s, lambda, N);
    }

    double edge_phase(cplx a, cplx da, cplx b, cplx db, int depth, bool& unresolved) const {
        const double step = std::arg(db / da);
        if (std::abs(step) < std::numbers::pi / 4) return step;
        if (depth >= 14) {
            unresolved = true;
            return step;
        }
        const cplx m = 0.5 * (a + b);
        const cplx dm = det(m, degree);
        if (dm == 0.0) {
            unresolved = true;
            return step;
        }
        return edge_phase(a, da, m, dm, depth + 1, unresolved) + edge_phase(m, dm, b, db, depth + 1, unresolved);
    }

    struct Newton {
        cplx s;
        double residual;
        bool ok;
    };

    Newton newton(cplx s, int N, const SearchRectangle& box) const {
        double last = kInf;
        for (int it = 0; it < 60; ++it) {
            const double h = 1e-6 * std::max(1.0, std::abs(s));
            const cplx d = det(s, N);
            if (d == 0.0) return {s, 0.0, true};
            const cplx dp = (det(s + h, N) - det(s - h, N)) / (2 * h);
            if (dp == 0.0) return {s, last, false};
            const cplx step = d / dp;
            s -= step;
            last = std::abs(step);
            if (s.real() < box.re_min - 1 || s.real() > box.re_max + 1 || s.imag() < box.im_min - 1 ||
                s.imag() > box.im_max + 1)
                return {s, last, false};
            if (last < 1e-14 * std::max(1.0, std::abs(s))) break;
        }
        return {s, last, last < 1e-9};
    }
};

bool inside(const SearchRectangle& r, cplx s) {
    return s.real() >= r.re_min && s.real() < r.re_max && s.imag() >= r.im_min && s.imag() < r.im_max;
}

struct CellResult {
    std::vector<Resonance> found;
    std::optional<FlaggedCell> flag;
};

}  // namespace

ResonanceSearch find_resonances(double lambda, const SearchRectangle& rect, const SearchOptions& opts) {
    if (!(lambda > 2)) throw DomainError("find_resonances: lambda must exceed 2");
    if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min))
        throw DomainError("find_resonances: empty rectangle");
    ResonanceSearch out;
    const int nx = opts.nx > 0 ? opts.nx : std::max(1, int(std::ceil((rect.re_max - rect.re_min) / 0.05 - 1e-9)));
    int ny = opts.ny > 0 ? opts.ny : std::max(1, int(std::ceil((rect.im_max - rect.im_min) / 0.05 - 1e-9)));
    // keep the real axis off the horizontal cell edges so real zeros sit inside a cell
    auto axis_on_edge = [&](int n) {
        const double t = -rect.im_min / ((rect.im_max - rect.im_min) / n);
        return t > 0.5 && t < n - 0.5 && std::abs(t - std::round(t)) < 1e-6;
    };
    if (opts.ny <= 0 && axis_on_edge(ny)) ++ny;
    const double hx = (rect.re_max - rect.re_min) / nx, hy = (rect.im_max - rect.im_min) / ny;
    auto corner = [&](int i, int j) { return cplx(rect.re_min + i * hx, rect.im_min + j * hy); };
    // cells within the guard distance of 1/2 are searched with the odd block only
    auto near_half = [&](cplx a, cplx b) {
        const double dx = std::max({a.real() - 0.5, 0.0, 0.5 - b.real()});
        const double dy = std::max({a.imag(), 0.0, -b.imag()});
        return std::hypot(dx, dy) <= opts.guard;
    };
    out.odd_only = near_half(corner(0, 0), corner(nx, ny));
    const Searcher full{lambda, opts.degree, false};
    const Searcher odd{lambda, opts.degree, true};
    std::vector<cplx> grid((nx + 1) * (ny + 1), cplx(0, 0));
    parallel_for(grid.size(), [&](std::size_t k) {
        const int i = int(k) % (nx + 1), j = int(k) / (nx + 1);
        const cplx z = corner(i, j);
        if (std::abs(z - 0.5) > opts.guard) grid[k] = full.det(z, opts.degree);
    });
    auto gval = [&](int i, int j) { return grid[j * (nx + 1) + i]; };

    std::vector<CellResult> cells(nx * ny);
    parallel_for(cells.size(), [&](std::size_t k) {
        const int i = int(k) % nx, j = int(k) / nx;
        const SearchRectangle cell{corner(i, j).real(), corner(i + 1, j).real(), corner(i, j).imag(),
                                   corner(i, j + 1).imag()};
        const cplx c[4] = {corner(i, j), corner(i + 1, j), corner(i + 1, j + 1), corner(i, j + 1)};
        const bool guarded = near_half(c[0], c[2]);
        const Searcher& S = guarded ? odd : full;
        cplx d[4];
        if (guarded) {
            for (int e = 0; e < 4; ++e) d[e] = odd.det(c[e], opts.degree);
        } else {
            d[0] = gval(i, j);
            d[1] = gval(i + 1, j);
            d[2] = gval(i + 1, j + 1);
            d[3] = gval(i, j + 1);
        }
        bool unresolved = false;
        double phase = 0;
        for (int e = 0; e < 4; ++e) {
            if (d[e] == 0.0) unresolved = true;
            else if (d[(e + 1) % 4] != 0.0) phase += S.edge_phase(c[e], d[e], c[(e + 1) % 4], d[(e + 1) % 4], 0, unresolved);
        }
        const double winding = phase / (2 * std::numbers::pi);
        const int count = int(std::lround(winding));
        CellResult& res = cells[k];
        if (unresolved || std::abs(winding - count) > 0.1) {
            res.flag = FlaggedCell{cell, winding, 0, "winding number not resolved"};
            return;
        }
        if (count == 0) return;
        std::vector<cplx> seeds = {0.5 * (c[0] + c[2])};
        if (count > 1)
            for (double fx : {0.25, 0.75})
                for (double fy : {0.25, 0.75}) seeds.push_back(cplx(cell.re_min + fx * hx, cell.im_min + fy * hy));
        for (const cplx seed : seeds) {
            const auto nt = S.newton(seed, opts.degree, rect);
            if (!nt.ok || !inside(cell, nt.s)) continue;
            bool dup = false;
            for (const auto& r : res.found) dup = dup || std::abs(r.s - nt.s) < 1e-7;
            if (dup) continue;
            Resonance r;
            r.s = nt.s;
            r.newton_residual = nt.residual;
            r.degree = opts.degree;
            r.abs_det = std::abs(S.det(nt.s, opts.degree));
            const auto check = S.newton(nt.s, opts.degree + 8, rect);
            r.stability_gap = check.ok ? std::abs(check.s - nt.s) : kInf;
            if (guarded) {
                r.parity = ParityBlock::odd;
            } else {
                const OperatorMatrix m = assemble_matrix(nt.s, lambda, opts.degree);
                auto closest = [](const Eigen::MatrixXcd& b) {
                    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b, false);
                    double best = kInf;
                    for (Eigen::Index q = 0; q < es.eigenvalues().size(); ++q)
                        best = std::min(best, std::abs(es.eigenvalues()(q) - 1.0));
                    return best;
                };
                r.parity = closest(m.even_block()) <= closest(m.odd_block()) ? ParityBlock::even : ParityBlock::odd;
            }
            res.found.push_back(r);
        }
        std::vector<Resonance> stable;
        for (const auto& r : res.found)
            if (r.stability_gap < 1e-8 && r.newton_residual < 1e-9) stable.push_back(r);
        const int found = int(res.found.size());
        const bool unstable = stable.size() != res.found.size();
        res.found = std::move(stable);
        if (found != count || unstable)
            res.flag = FlaggedCell{cell, winding, found, unstable ? "root not stable under N+8" : "root count differs from winding"};
    });
    for (auto& c : cells) {
        for (auto& r : c.found) out.resonances.push_back(r);
        if (c.flag) out.flagged.push_back(*c.flag);
    }
    std::sort(out.resonances.begin(), out.resonances.end(), [](const Resonance& a, const Resonance& b) {
        return a.s.real() != b.s.real() ? a.s.real() < b.s.real() : a.s.imag() < b.s.imag();
    });
    return out;
}

void write_resonances_csv(std::ostream& os, const std::vector<Resonance>& rs) {
    os << "re_s,im_s,abs_det,newton_residual,parity,N\n";
    for (const auto& r : rs)
        os << fmt_num(r.s.real()) << ',' << fmt_num(r.s.imag()) << ',' << fmt_num(r.abs_det) << ','
           << fmt_num(r.newton_residual) << ',' << to_string(r.parity) << ',' << r.degree << '\n';
}

}  // namespace reslab
