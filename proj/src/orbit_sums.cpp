#include "reslab/orbit_sums.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "chebyshev.hpp"
#include "reslab/errors.hpp"
#include "reslab/special.hpp"

namespace reslab {

namespace {

using Mat = std::array<double, 4>;  // row-major 2x2

Mat times_x(const Mat& p, double lambda, double a) {
    const double al = a * lambda;
    return {p[0] * al + p[1], -p[0], p[2] * al + p[3], -p[2]};
}

template <class S>
S weight_of_trace(S s, double t, OrbitWeight weight) {
    const double x = std::abs(t);
    const double big = 0.5 * (x + std::sqrt((x - 2) * (x + 2)));
    S v = std::exp(-2.0 * s * std::log(big));
    if (weight == OrbitWeight::trace) v /= 1 - 1 / (big * big);
    return v;
}

template <class S>
class Engine {
public:
    Engine(S s, double lambda, OrbitWeight weight, const OrbitSumOptions& o)
        : s_(s), lambda_(lambda), A_(o.direct), nodes_(o.tail_nodes + o.tail_nodes % 2) {
        if (!(lambda > 2)) throw DomainError("orbit_sum: lambda must exceed 2");
        if (A_ < 2) throw DomainError("orbit_sum: direct cutoff must be at least 2");
        // Catalan numbers and the u-series of the weight divided by |t|^{-2s}
        constexpr int kTerms = 40;
        std::vector<double> cat(kTerms, 1.0);
        for (int k = 1; k < kTerms; ++k) cat[k] = cat[k - 1] * 2 * (2 * k - 1) / (k + 1);
        std::vector<S> pw(kTerms);
        const S r = 2.0 * s;
        pw[0] = 1;
        for (int m = 1; m < kTerms; ++m) {
            S acc = 0;
            for (int k = 1; k <= m; ++k) acc += ((r + 1.0) * double(k) - double(m)) * cat[k] * pw[m - k];
            pw[m] = acc / double(m);
        }
        if (weight == OrbitWeight::trace) {
            std::vector<double> d(kTerms, 0.0);
            d[0] = 1;
            for (int m = 1; m < kTerms; ++m)
                for (int k = 1; k <= m; ++k) d[m] += cat[k] * d[m - k];
            series_.assign(kTerms, S(0));
            for (int m = 0; m < kTerms; ++m)
                for (int k = 0; k <= m; ++k) series_[m] += pw[k] * d[m - k];
        } else {
            series_ = pw;
        }
        weight_ = weight;
        eps_max_ = 1.0 / (A_ + 1);
        eps_ = detail::chebyshev_nodes(eps_max_, nodes_);
        for (int m = 0; m < nodes_; ++m) zeta_tail_.push_back(hurwitz_zeta(2.0 * s + double(m), double(A_ + 1)));
        for (double e : eps_) eps_weight_.push_back(std::exp(-2.0 * s * std::log(std::abs(e))));
    }

    S level(int r, const Mat& p, bool symmetric) const {
        if (r == 1) return innermost(p);
        S direct = 0;
        for (int a = 1; a <= A_; ++a) {
            direct += level(r - 1, times_x(p, lambda_, a), false);
            if (!symmetric) direct += level(r - 1, times_x(p, lambda_, -a), false);
        }
        if (symmetric) direct *= 2.0;
        std::vector<S> g(nodes_);
        for (int i = 0; i < nodes_; ++i) {
            const int mirror = nodes_ - 1 - i;
            if (symmetric && eps_[i] < 0) continue;
            g[i] = eps_weight_[i] * level(r - 1, times_x(p, lambda_, 1 / eps_[i]), false);
            if (symmetric) g[mirror] = g[i];
        }
        const std::vector<S> c = detail::chebyshev_to_monomials(g, eps_max_);
        S tail = 0;
        for (int m = 0; m < nodes_; m += 2) tail += 2.0 * c[m] * zeta_tail_[m];
        return direct + tail;
    }

private:
    S innermost(const Mat& p) const {
        const double alpha = lambda_ * p[0];
        const double beta = p[1] - p[2];
        if (alpha == 0) throw DomainError("orbit_sum: degenerate prefix");
        S sum = 0;
        for (int a = 1; a <= A_; ++a)
            sum += weight_of_trace(s_, alpha * a + beta, weight_) + weight_of_trace(s_, -alpha * a + beta, weight_);
        const double ra = std::abs(alpha);
        const double b = beta / alpha;
        if (!(A_ + 1 - std::abs(b) > 1)) throw DomainError("orbit_sum: shift outside the tail region");
        const double u = 1 / std::pow(ra * (A_ + 1 - std::abs(b)), 2);
        const ZetaConfig zc{12, 8};
        double un = 1;
        const double g0 = std::abs(series_[0]);
        for (std::size_t m = 0; m < series_.size(); ++m) {
            if (m > 0 && std::abs(series_[m]) * un < 1e-17 * g0) break;
            const S w = 2.0 * s_ + 2.0 * double(m);
            const S rw = std::exp(-w * std::log(ra));
            sum += series_[m] * rw * (hurwitz_zeta(w, A_ + 1 + b, zc) + hurwitz_zeta(w, A_ + 1 - b, zc));
            un *= u;
        }
        return sum;
    }

    S s_;
    double lambda_;
    int A_;
    int nodes_;
    OrbitWeight weight_ = OrbitWeight::multiplier;
    std::vector<S> series_;
    double eps_max_ = 0;
    std::vector<double> eps_;
    std::vector<S> eps_weight_;
    std::vector<S> zeta_tail_;
};

template <class S>
S orbit_sum_impl(S s, double lambda, int n, OrbitWeight weight, const OrbitSumOptions& opts) {
    if (n < 1) throw DomainError("orbit_sum: n must be positive");
    const Engine<S> e(s, lambda, weight, opts);
    return e.level(n, {1, 0, 0, 1}, true);
}

}  // namespace

double orbit_sum(double s, double lambda, int n, OrbitWeight weight, const OrbitSumOptions& opts) {
    return orbit_sum_impl<double>(s, lambda, n, weight, opts);
}

cplx orbit_sum(cplx s, double lambda, int n, OrbitWeight weight, const OrbitSumOptions& opts) {
    return orbit_sum_impl<cplx>(s, lambda, n, weight, opts);
}

cplx orbit_sum_truncated(cplx s, double lambda, int n, int max_exp, OrbitWeight weight) {
    if (!(lambda > 2)) throw DomainError("orbit_sum: lambda must exceed 2");
    cplx sum = 0;
    std::function<void(int, const Mat&)> rec = [&](int r, const Mat& p) {
        if (r == 0) {
            sum += weight_of_trace(s, p[0] + p[3], weight);
            return;
        }
        for (int a = -max_exp; a <= max_exp; ++a)
            if (a != 0) rec(r - 1, times_x(p, lambda, a));
    };
    rec(n, {1, 0, 0, 1});
    return sum;
}

}  // namespace reslab
