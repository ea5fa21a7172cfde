#include "reslab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include <boost/math/tools/toms748_solve.hpp>

#include "reslab/format.hpp"
#include "reslab/orbit_sums.hpp"
#include "reslab/slow.hpp"

namespace reslab {

namespace {

enum class Region { branch_ts_minus, branch_ts, branch_shift, gap, boundary, outside };

struct Branch {
    int from, to;
    double lo, hi;
    GroupElement g;
};

std::vector<Branch> branch_table(double lambda) {
    const auto gens = hecke_generators(lambda);
    const GroupElement tinv = t_power(lambda, -1);
    const double a = 1 / (lambda - 1);
    return {
        {1, 1, -a, 0, tinv * gens.S},
        {1, 2, 0, a, gens.T * gens.S},
        {1, 1, lambda - 1, kInf, tinv},
        {2, 1, -a, 0, tinv * gens.S},
        {2, 2, 0, a, gens.T * gens.S},
        {2, 2, -kInf, 1 - lambda, gens.T},
    };
}

GroupElement tuple_element(double lambda, std::span<const int> b) { return exponent_word_element(lambda, b); }

// repelling fixed point of g and the derivative of g^{-1} there
std::pair<double, double> repelling_fixed_point(const GroupElement& g) {
    const double t = g.trace();
    const double root = std::sqrt((t - 2) * (t + 2));
    const double mu = 2 / (t + std::copysign(root, t));  // eigenvalue of modulus < 1
    const double x = std::abs(mu - g.a()) > std::abs(g.c()) ? g.b() / (mu - g.a()) : (mu - g.d()) / g.c();
    return {x, mu * mu};
}

PeriodicPoint make_point(double lambda, std::vector<int> b) {
    PeriodicPoint p;
    const auto [x, m] = repelling_fixed_point(tuple_element(lambda, b));
    p.state = {x, b.front() > 0 ? 2 : 1};
    p.multiplier = m;
    p.length = -std::log(m);
    p.word = std::move(b);
    return p;
}

}  // namespace

StepResult step(const DiscreteState& state, double lambda) {
    if (!(lambda > 2)) throw DomainError("step: lambda must exceed 2");
    const double x = state.x;
    if (state.label == 1 && !(x > -1)) throw DomainError("step: label 1 needs x > -1");
    if (state.label == 2 && !(x < 1)) throw DomainError("step: label 2 needs x < 1");
    if (state.label != 1 && state.label != 2) throw DomainError("step: label must be 1 or 2");
    for (const Branch& br : branch_table(lambda)) {
        if (br.from != state.label) continue;
        if (x == br.lo || x == br.hi) throw BoundaryError("step: x is a branch endpoint");
        if (x > br.lo && x < br.hi) return {{moebius_apply(br.g, x), br.to}, br.g};
    }
    throw OrdinaryPointError("step: x lies in a gap of the branch table");
}

double transfer_consistency(cplx s, double lambda, const PairFunction& f, const DiscreteState& point) {
    const double x = point.x;
    cplx sum = 0;
    for (const Branch& br : branch_table(lambda)) {
        if (br.to != point.label) continue;
        const double y = moebius_apply(br.g.inverse(), x);
        if (!(y > br.lo && y < br.hi)) continue;
        const double den = br.g.c() * y + br.g.d();
        sum += std::exp(2.0 * s * std::log(std::abs(den))) * f.eval(br.from, y);
    }
    return std::abs(slow_apply(s, lambda, f, point.label, x) - sum);
}

std::vector<PeriodicPoint> periodic_points(double lambda, int n, int max_exp) {
    if (!(lambda > 2)) throw DomainError("periodic_points: lambda must exceed 2");
    if (n < 1 || max_exp < 1) throw DomainError("periodic_points: cutoffs must be positive");
    std::vector<PeriodicPoint> out;
    std::vector<int> b(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(make_point(lambda, b));
            return;
        }
        for (int a = -max_exp; a <= max_exp; ++a) {
            if (a == 0) continue;
            b[i] = a;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<int> recover_word(double lambda, const PeriodicPoint& p) {
    const int n = static_cast<int>(p.word.size());
    std::vector<int> applied;
    std::vector<int> current = p.word;
    DiscreteState st = p.state;
    const double a = 1 / (lambda - 1);
    for (int letter = 0; letter < n; ++letter) {
        if (!(std::abs(st.x) < a)) throw DomainError("recover_word: orbit left the inversion branches");
        StepResult r = step(st, lambda);
        int e = r.next.label == 2 ? 1 : -1;
        st = r.next;
        while ((st.label == 1 && st.x > lambda - 1) || (st.label == 2 && st.x < 1 - lambda)) {
            st = step(st, lambda).next;
            e += e > 0 ? 1 : -1;
        }
        applied.push_back(e);
        // re-anchor on the exact point of the rotated tuple
        std::rotate(current.rbegin(), current.rbegin() + 1, current.rend());
        st = make_point(lambda, current).state;
    }
    std::reverse(applied.begin(), applied.end());
    return applied;
}

int orbit_size(const PeriodicPoint& p) { return primitive_period(p.word); }

void write_orbits_csv(std::ostream& os, const std::vector<PeriodicPoint>& pts) {
    os << "period,branch_word,label,fixed_point,multiplier,length\n";
    for (const auto& p : pts) {
        os << p.word.size() << ',';
        for (std::size_t i = 0; i < p.word.size(); ++i) os << (i ? ";" : "") << p.word[i];
        os << ',' << p.state.label << ',' << fmt_num(p.state.x) << ',' << fmt_num(p.multiplier) << ','
           << fmt_num(p.length) << '\n';
    }
}

OrdinaryStatus ordinary_status(double lambda, const DiscreteState& state) {
    const double a = 1 / (lambda - 1);
    const double x = state.x;
    if (state.label == 1 && ((x > -1 && x < -a) || (x > a && x < lambda - 1))) return OrdinaryStatus::ordinary;
    if (state.label == 2 && ((x > 1 - lambda && x < -a) || (x > a && x < 1))) return OrdinaryStatus::ordinary;
    const auto fp = fixed_points_ts(lambda);
    const auto gens = hecke_generators(lambda);
    const GroupElement letters[3] = {gens.T, t_power(lambda, -1), gens.S};
    std::vector<std::pair<GroupElement, int>> frontier = {{GroupElement(1, 0, 0, 1), -1}};
    for (int depth = 0; depth <= 6; ++depth) {
        std::vector<std::pair<GroupElement, int>> next;
        for (const auto& [g, last] : frontier) {
            const CyclicInterval iv(moebius_apply(g, fp.minus), moebius_apply(g, fp.plus));
            if (iv.contains(x)) return OrdinaryStatus::ordinary;
            if (depth == 6) continue;
            for (int k = 0; k < 3; ++k) {
                if ((last == 0 && k == 1) || (last == 1 && k == 0) || (last == 2 && k == 2)) continue;
                next.push_back({g * letters[k], k});
            }
        }
        frontier = std::move(next);
    }
    return OrdinaryStatus::unknown;
}

double pressure_partial(double s, double lambda, int n, int max_exp) {
    return std::log(orbit_sum_truncated(s, lambda, n, max_exp, OrbitWeight::multiplier).real()) / n;
}

double pressure_rate(double s, double lambda, const PressureOptions& opts) {
    const OrbitSumOptions o{opts.direct, opts.tail_nodes};
    double z[6];
    for (int n = 2; n <= 5; ++n) z[n] = orbit_sum(s, lambda, n, OrbitWeight::multiplier, o);
    const double p3 = std::log(z[3] / z[2]), p4 = std::log(z[4] / z[3]), p5 = std::log(z[5] / z[4]);
    const double d1 = p4 - p3, d2 = p5 - p4;
    if (std::abs(d2 - d1) < 1e-300) return p5;
    return p5 - d2 * d2 / (d2 - d1);
}

PressureResult pressure_delta(double lambda, const PressureOptions& opts) {
    if (!(lambda > 2)) throw DomainError("pressure_delta: lambda must exceed 2");
    const OrbitSumOptions o{opts.direct, opts.tail_nodes};
    auto rate3 = [&](double s) {
        return std::log(orbit_sum(s, lambda, 3, OrbitWeight::multiplier, o) /
                        orbit_sum(s, lambda, 2, OrbitWeight::multiplier, o));
    };
    double lo = 0.52, hi = 1.2;
    if (!(rate3(lo) > 0) || !(rate3(hi) < 0)) throw ConvergenceError("pressure_delta: no sign change for n = 3");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (rate3(mid) > 0 ? lo : hi) = mid;
    }
    PressureResult out;
    out.delta_n3 = 0.5 * (lo + hi);
    auto f = [&](double s) { return pressure_rate(s, lambda, opts); };
    double width = 0.02;
    for (int attempt = 0; attempt < 5; ++attempt, width *= 2) {
        const double a = std::max(0.51, out.delta_n3 - width), b = out.delta_n3 + width;
        const double fa = f(a), fb = f(b);
        if (!(fa > 0 && fb < 0)) continue;
        std::uintmax_t iters = 40;
        const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                         boost::math::tools::eps_tolerance<double>(40), iters);
        out.delta = 0.5 * (r.first + r.second);
        return out;
    }
    throw ConvergenceError("pressure_delta: extrapolated rate does not bracket a root");
}

}  // namespace reslab
