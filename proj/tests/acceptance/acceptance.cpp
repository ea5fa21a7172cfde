// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "reslab/cocycle.hpp"
#include "reslab/fast.hpp"
#include "reslab/flow.hpp"
#include "reslab/green.hpp"
#include "reslab/slow.hpp"
#include "reslab/spectral.hpp"
#include "reslab/verification.hpp"

using namespace reslab;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

PairFunction boundary_pair(double lambda) {
    auto b = [lambda](double x) { return std::exp(cplx(0, 2 * std::numbers::pi * x / lambda)); };
    return PairFunction::from_closures([b](double x) { return -b(x); }, b).with_domain(-1e300, 1e300);
}

PeriodFunction period_at_delta(double lambda) {
    const double delta = delta_bisection(lambda, 32);
    const LeadingEigenpair ep = leading_even_eigenpair(delta, lambda, 32);
    return reconstruct_period(delta, lambda, std::vector<cplx>(ep.vector.data(), ep.vector.data() + ep.vector.size()));
}

cplx principal_power(cplx base, cplx w) { return std::exp(-w * std::log(base)); }

// image of z^k under the reduced operator: brute-force sum with a midpoint-rule integral tail
cplx brute_series(cplx s, double lambda, int k, cplx z, int terms = 20000) {
    const cplx w = 2.0 * s + double(k);
    const double sign = k % 2 ? -1.0 : 1.0;
    cplx sum = 0;
    for (int n = terms; n >= 1; --n) sum += sign * principal_power(n * lambda + z, w) + principal_power(n * lambda - z, w);
    const double a = (terms + 0.5) * lambda;
    sum += (sign * principal_power(a + z, w - 1.0) + principal_power(a - z, w - 1.0)) / ((w - 1.0) * lambda);
    return sum;
}

// max |f - L f| written out from the two slow equations
double functional_equation_residual(cplx s, double lambda, const PairFunction& f, const std::vector<double>& probes) {
    double worst = 0;
    for (double x : probes) {
        const double w1 = lambda + x, y1 = -1 / w1;
        const cplx r1 = f.f1(x) - f.f1(x + lambda) - std::exp(-2.0 * s * std::log(std::abs(w1))) * (f.f1(y1) + f.f2(y1));
        const double w2 = lambda + x, y2 = 1 / w2;
        const cplx r2 = f.f2(-x) - f.f2(-x - lambda) - std::exp(-2.0 * s * std::log(std::abs(w2))) * (f.f1(y2) + f.f2(y2));
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    return worst;
}

// Newton on one parity block of det(1 - M_N)
cplx polish(cplx s, double lambda, int degree, ParityBlock block) {
    for (int it = 0; it < 30; ++it) {
        const double h = 1e-6;
        const cplx d = fredholm_det(s, lambda, degree, block);
        const cplx dd = (fredholm_det(s + h, lambda, degree, block) - fredholm_det(s - h, lambda, degree, block)) / (2 * h);
        const cplx step = d / dd;
        s -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return s;
}

double worst_check(const SuiteReport& r, const std::string& name) {
    for (const Check& c : r.checks)
        if (c.name == name) return c.value;
    return NAN;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion1() {
    const Stopwatch sw;
    double worst = 0;
    for (double s : {2.0, 2.5, 3.0}) {
        EulerOptions opts;
        opts.max_n = 6;
        opts.max_exp = 30;
        opts.k_max = 40;
        worst = std::max(worst, std::abs(fredholm_det(s, 3, 32) - euler_product(s, 3, opts).value));
    }
    const double t = sw.seconds();
    report(1, "determinant vs Euler product at s = 2, 2.5, 3", worst <= 1e-4 && t <= 60,
           "max gap " + num(worst) + " <= 1e-4, " + num(t) + " s <= 60 s");
}

void criterion2() {
    const TraceCheck one = trace_identity_check(2.0, 3, 1), two = trace_identity_check(2.0, 3, 2);
    const double e1 = std::abs(one.trace_matrix - one.trace_orbit), e2 = std::abs(two.trace_matrix - two.trace_orbit);
    report(2, "trace identity n = 1, 2", e1 <= 1e-6 && e2 <= 1e-5, "n=1 " + num(e1) + " <= 1e-6, n=2 " + num(e2) + " <= 1e-5");
}

void criterion3() {
    bool ok = true;
    std::string detail;
    double dm[2], dp[2];
    for (int i = 0; i < 2; ++i) {
        const double lambda = 3 + i;
        const Stopwatch sw;
        dm[i] = delta_bisection(lambda, 32);
        dp[i] = pressure_delta(lambda).delta;
        const double t = sw.seconds(), gap = std::abs(dm[i] - dp[i]);
        ok = ok && gap <= 1e-4 && t <= 120;
        for (double d : {dm[i], dp[i]}) ok = ok && d > 0.5 && d < 1;
        detail += "lambda=" + num(lambda) + " gap " + num(gap) + " in " + num(t) + " s; ";
    }
    ok = ok && dm[0] > dm[1] && dp[0] > dp[1];
    report(3, "delta from the matrix vs the pressure equation", ok, detail + "decreasing in lambda");
}

void criterion4() {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> re(0.55, 3.0), im(-8.0, 8.0);
    double fac = 0;
    for (int i = 0; i < 20; ++i) {
        const DetFactorization d = det_factorized(cplx(re(rng), im(rng)), 3, 32);
        fac = std::max(fac, std::abs(d.full - d.even * d.odd));
    }
    int located = 0, ambiguous = 0;
    for (const SearchRectangle& rect : {SearchRectangle{0.55, 0.95, -0.01, 0.01}, SearchRectangle{0.1, 0.45, -4, 4}})
        for (const Resonance& z : find_resonances(3, rect).resonances) {
            ++located;
            const DetFactorization d = det_factorized(z.s, 3, 32);
            const bool even = std::abs(d.even) <= 1e-8, odd = std::abs(d.odd) <= 1e-8;
            const ParityBlock owner = even ? ParityBlock::even : ParityBlock::odd;
            if (even == odd || z.parity != owner) ++ambiguous;
        }
    report(4, "parity factorization and attribution", fac <= 1e-10 && located > 0 && ambiguous == 0,
           "factorization " + num(fac) + " <= 1e-10, " + std::to_string(located) + " resonances, " +
               std::to_string(ambiguous) + " unattributed");
}

void criterion5() {
    const int N = 12, nodes = 64;
    const double radius = 0.5;
    double worst = 0;
    for (cplx s : {cplx(1.2), cplx(2, 0.5)}) {
        const OperatorMatrix m = assemble_matrix(s, 3, N);
        for (int k = 0; k < N; ++k) {
            std::vector<cplx> samples(nodes);
            for (int q = 0; q < nodes; ++q)
                samples[q] = brute_series(s, 3, k, std::polar(radius, 2 * std::numbers::pi * q / nodes));
            for (int j = 0; j < N; ++j) {
                cplx c = 0;
                for (int q = 0; q < nodes; ++q) c += samples[q] * std::polar(1.0, -2 * std::numbers::pi * j * q / nodes);
                c /= nodes * std::pow(radius, j);
                worst = std::max(worst, std::abs(c - m.entries()(j, k)));
            }
        }
    }
    report(5, "closed-form matrix entries vs Cauchy coefficients", worst <= 1e-9, "max deviation " + num(worst) + " <= 1e-9");
}

void criterion6() {
    const double lambda = 3;
    const PeriodFunction pf = period_at_delta(lambda);
    std::vector<double> probes;
    for (int i = 0; i < 100; ++i) probes.push_back(-0.99 + 2.98 * (i + 0.5) / 100);
    const double base = functional_equation_residual(pf.s, lambda, pf.f, probes);

    const PairFunction ext = extend_period_function(pf.s, lambda, pf.f, 20);
    const double left = extension_endpoint(lambda, 20);
    std::vector<double> wide;
    for (int i = 0; i < 100; ++i) wide.push_back(left + (3 - left) * (i + 0.5) / 100);
    const double extended = functional_equation_residual(pf.s, lambda, ext, wide);
    report(6, "slow equations at delta, before and after extension to depth 20", base <= 1e-6 && extended <= 1e-5,
           "original " + num(base) + " <= 1e-6, extended to " + num(left) + ": " + num(extended) + " <= 1e-5");
}

void criterion7() {
    const double lambda = 3, s = 0.8;
    const PairFunction bp = boundary_pair(lambda);
    double fast = 0, slow = 0;
    for (int i = 0; i < 20; ++i) {
        const double x = -0.95 + 0.1 * i;
        for (int comp : {1, 2}) fast = std::max(fast, std::abs(fast_apply(s, lambda, bp, comp, x).value));
        slow = std::max({slow, std::abs(slow_apply(s, lambda, bp, 1, x) - bp.f1(x)),
                         std::abs(slow_apply(s, lambda, bp, 2, -x) - bp.f2(-x))});
    }
    auto phi = [s](double t) { return cplx(std::pow(1 + t * t, -s)); };
    AverageRequest req;
    req.s = s;
    req.lambda = lambda;
    req.phi = one_minus_shift(lambda, phi);
    double av = 0;
    for (double t : {1.5, 2.0, 3.7, 6.0, 11.0}) {
        req.direction = AverageDirection::plus;
        av = std::max(av, std::abs(one_sided_average(req, t) - phi(t)));
        req.direction = AverageDirection::minus;
        av = std::max(av, std::abs(one_sided_average(req, -t) - phi(-t)));
    }
    report(7, "boundary kernel, boundary fixed points and the average identity", fast <= 1e-10 && slow <= 1e-10 && av <= 1e-9,
           "fast " + num(fast) + ", slow " + num(slow) + " <= 1e-10, average " + num(av) + " <= 1e-9");
}

void criterion8() {
    const PeriodFunction pf = period_at_delta(3);
    const Cocycle c = build_cocycle(pf);
    const CocycleReport r = verify_cocycle(c, 100, 8);
    const double worst = std::max({r.relation, r.antisymmetry, r.equivariance, r.vanishing});
    const PairFunction perturbed =
        PairFunction::from_closures([f = pf.f](double x) { return f.f1(x) + 1e-3; }, [f = pf.f](double x) { return f.f2(x); })
            .with_domain(pf.f.left1(), pf.f.right2());
    const double pv = vanishing_residual(Cocycle(pf.s, 3, perturbed));
    report(8, "cocycle relation, antisymmetry, equivariance, vanishing", worst <= 1e-8 && pv >= 1e-4,
           "eigenfunction " + num(worst) + " <= 1e-8, perturbed vanishing " + num(pv) + " >= 1e-4");
}

void criterion9() {
    const SuiteReport r = run_suite("flow", 3, 9);
    const double tc = worst_check(r, "transfer_consistency"), mult = worst_check(r, "periodic_multipliers"),
                 bij = worst_check(r, "orbit_class_bijection_mismatches");
    report(9, "transfer consistency and periodic orbits vs classes", tc <= 1e-12 && mult <= 1e-9 && bij == 0,
           "transfer " + num(tc) + " <= 1e-12, multipliers " + num(mult) + " <= 1e-9, mismatches " + num(bij));
}

void criterion10() {
    const Stopwatch sw;
    const SuiteReport r = run_suite("green", 3, 10);
    const double t = sw.seconds();
    const double path = worst_check(r, "path_independence"), loop = worst_check(r, "closed_contour"),
                 core = worst_check(r, "funnel_core_identity_relative"), out = worst_check(r, "outside_interval_vanishing"),
                 add = worst_check(r, "cu_additivity"), eq = worst_check(r, "cu_equivariance_S");
    const bool ok = path <= 1e-6 && loop <= 1e-6 && core <= 1e-3 && out <= 1e-6 && add <= 1e-5 && eq <= 1e-5 && t <= 180;
    report(10, "Green's form suite", ok,
           "path " + num(path) + ", loop " + num(loop) + ", core " + num(core) + ", outside " + num(out) + ", c_u " +
               num(std::max(add, eq)) + ", " + num(t) + " s");
}

void criterion11() {
    double worst = 0;
    int count = 0;
    for (const SearchRectangle& rect : {SearchRectangle{0.55, 0.95, -0.01, 0.01}, SearchRectangle{0.1, 0.45, -4, 4}})
        for (const Resonance& z : find_resonances(3, rect).resonances) {
            ++count;
            worst = std::max(worst, std::abs(polish(z.s, 3, z.degree + 8, z.parity) - z.s));
        }
    const double dd = std::abs(delta_bisection(3, 40) - delta_bisection(3, 32));
    report(11, "resonances and delta reproduced at N + 8", count > 0 && worst <= 1e-8 && dd <= 1e-8,
           std::to_string(count) + " resonances moved " + num(worst) + ", delta moved " + num(dd) + " <= 1e-8");
}

void criterion12(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / ("reslab_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const std::string runs[] = {
        "resonances --lambda 3 --re 0.2:0.45 --im -4:4 --seed 7 -o {}.csv",
        "verify --suite cocycles --lambda 3 --seed 7 -o {}.json",
        "geodesics --lambda 3 --max-n 4 --max-exp 5 -o {}.csv",
    };
    bool ok = true;
    int compared = 0;
    std::string broken;
    for (std::size_t i = 0; i < std::size(runs); ++i) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
            std::string args = runs[i];
            const fs::path out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep));
            args.replace(args.find("{}"), 2, out.string());
            const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                broken = "nonzero exit: " + runs[i];
            }
            const std::string ext = args.substr(args.rfind('.'));
            outputs[rep] = slurp(out.string() + ext);
            if (fs::exists(out.string() + ext + ".manifest.json")) outputs[rep] += slurp(out.string() + ext + ".manifest.json");
        }
        if (outputs[0].empty() || outputs[0] != outputs[1]) {
            ok = false;
            broken = "outputs differ: " + runs[i];
        }
        ++compared;
    }
    fs::remove_all(dir);
    report(12, "byte-identical CLI output for identical invocations", ok, std::to_string(compared) + " commands run twice" + (broken.empty() ? "" : ", " + broken));
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                                              criterion7, criterion8, criterion9, criterion10, criterion11};
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i) + 1, "threw", false, e.what());
        }
    }
    if (cli.empty())
        report(12, "byte-identical CLI output for identical invocations", false, "no CLI path given");
    else
        criterion12(cli);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
