// reslab: command-line front end for the resonance toolkit.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "reslab/cocycle.hpp"
#include "reslab/errors.hpp"
#include "reslab/flow.hpp"
#include "reslab/moebius.hpp"
#include "reslab/spectral.hpp"
#include "reslab/verification.hpp"

using json = nlohmann::ordered_json;
using namespace reslab;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

struct Common {
    double lambda = 3.0;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string manifest;
    bool unsafe = false;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--lambda", c.lambda, "Hecke parameter, > 2")->capture_default_str();
    cmd->add_option("--seed", c.seed, "seed for randomized probes")->capture_default_str();
    cmd->add_option("--out,-o", c.out, "output path, - for stdout")->capture_default_str();
    cmd->add_option("--manifest", c.manifest, "manifest path (default: <out>.manifest.json)");
    cmd->add_flag("--unsafe", c.unsafe, "allow Re s outside [0.2, 3]");
}

void check_lambda(double lambda) {
    if (!(lambda > 2) || !std::isfinite(lambda)) throw ConfigError("--lambda must be a finite number > 2");
}

void check_s(const Common& c, double re) {
    if (!c.unsafe && !(re >= 0.2 && re <= 3.0)) throw ConfigError("Re s must lie in [0.2, 3] (use --unsafe to override)");
}

void check_degree(int degree) {
    if (degree < 4 || degree > 128) throw ConfigError("--degree must lie in [4, 128]");
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError(std::string(flag) + " expects a:b");
    try {
        const double a = std::stod(text.substr(0, colon)), b = std::stod(text.substr(colon + 1));
        if (!(a < b)) throw ConfigError(std::string(flag) + " needs a < b");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ConfigError(std::string(flag) + " expects two numbers a:b");
    }
}

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

json base_manifest(const std::string& command, const Common& c) {
    json m;
    m["schema_version"] = kSchemaVersion;
    m["command"] = command;
    m["lambda"] = c.lambda;
    m["seed"] = c.seed;
    return m;
}

void write_text(const Common& c, const std::string& text) {
    if (c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out, std::ios::binary);
    if (!os) throw ConfigError("cannot open output " + c.out);
    os << text;
}

// CSV outputs carry their manifest in a sidecar file, or on stderr when writing to stdout
void write_manifest(const Common& c, const json& manifest) {
    const std::string path = !c.manifest.empty() ? c.manifest : (c.out == "-" ? "" : c.out + ".manifest.json");
    if (path.empty()) {
        std::cerr << manifest.dump(2) << '\n';
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open manifest " + path);
    os << manifest.dump(2) << '\n';
}

void write_json(const Common& c, json body, const json& manifest) {
    body["manifest"] = manifest;
    write_text(c, body.dump(2) + "\n");
    if (!c.manifest.empty()) write_manifest(c, manifest);
}

int cmd_resonances(const Common& c, const std::string& re, const std::string& im, const SearchOptions& opts) {
    check_lambda(c.lambda);
    check_degree(opts.degree);
    const auto [re0, re1] = parse_range(re, "--re");
    const auto [im0, im1] = parse_range(im, "--im");
    check_s(c, re0);
    check_s(c, re1);
    const ResonanceSearch r = find_resonances(c.lambda, {re0, re1, im0, im1}, opts);
    std::ostringstream os;
    write_resonances_csv(os, r.resonances);
    write_text(c, os.str());
    json m = base_manifest("resonances", c);
    m["rectangle"] = {{"re", {re0, re1}}, {"im", {im0, im1}}};
    m["cutoffs"] = {{"N", opts.degree}, {"nx", opts.nx}, {"ny", opts.ny}, {"guard", opts.guard}};
    m["odd_only_cells"] = r.odd_only;
    m["resonance_count"] = r.resonances.size();
    json flagged = json::array();
    for (const auto& f : r.flagged)
        flagged.push_back({{"re", {f.cell.re_min, f.cell.re_max}},
                           {"im", {f.cell.im_min, f.cell.im_max}},
                           {"winding", f.winding},
                           {"roots_found", f.roots_found},
                           {"reason", f.reason}});
    m["flagged"] = flagged;
    write_manifest(c, m);
    return r.flagged.empty() ? 0 : kExitNumeric;
}

int cmd_verify(const Common& c, const std::string& suite) {
    check_lambda(c.lambda);
    const std::vector<std::string> suites = suite == "all" ? kSuiteNames : std::vector<std::string>{suite};
    json reports = json::array();
    bool pass = true;
    for (const auto& name : suites) {
        const SuiteReport r = run_suite(name, c.lambda, c.seed);
        json checks = json::array();
        for (const auto& ch : r.checks)
            checks.push_back({{"name", ch.name},
                              {"value", ch.value},
                              {"threshold", ch.threshold},
                              {"comparison", ch.lower_bound ? ">=" : "<="},
                              {"pass", ch.pass}});
        reports.push_back({{"suite", name}, {"pass", r.pass()}, {"checks", checks}});
        pass = pass && r.pass();
    }
    json body;
    body["schema_version"] = kSchemaVersion;
    body["pass"] = pass;
    body["suites"] = reports;
    json m = base_manifest("verify", c);
    m["suite"] = suite;
    write_json(c, body, m);
    return pass ? 0 : kExitNumeric;
}

int cmd_delta(const Common& c, int degree) {
    check_lambda(c.lambda);
    check_degree(degree);
    const double dm = delta_bisection(c.lambda, degree);
    const double dm8 = delta_bisection(c.lambda, degree + 8);
    const PressureResult pr = pressure_delta(c.lambda);
    json body;
    body["schema_version"] = kSchemaVersion;
    body["delta_matrix"] = dm;
    body["delta_matrix_stability"] = std::abs(dm8 - dm);
    body["delta_pressure"] = pr.delta;
    body["delta_pressure_n3"] = pr.delta_n3;
    body["gap"] = std::abs(dm - pr.delta);
    json m = base_manifest("delta", c);
    m["cutoffs"] = {{"N", degree}, {"pressure_periods", {3, 4, 5}}, {"pressure_direct", PressureOptions{}.direct}};
    write_json(c, body, m);
    return 0;
}

int cmd_geodesics(const Common& c, int max_n, int max_exp, double max_length) {
    check_lambda(c.lambda);
    if (max_n < 1 || max_exp < 1) throw ConfigError("--max-n and --max-exp must be positive");
    EnumerationLimits lim;
    if (max_length > 0) lim.max_length = max_length;
    const auto classes = enumerate_classes(c.lambda, max_n, max_exp, lim);
    std::ostringstream os;
    write_length_spectrum_csv(os, classes);
    write_text(c, os.str());
    json m = base_manifest("geodesics", c);
    m["cutoffs"] = {{"max_n", max_n}, {"max_exp", max_exp}, {"max_length", max_length > 0 ? json(max_length) : json()}};
    m["class_count"] = classes.size();
    write_manifest(c, m);
    return 0;
}

int cmd_orbits(const Common& c, int period, int max_exp) {
    check_lambda(c.lambda);
    if (period < 1 || period > 6 || max_exp < 1) throw ConfigError("--period must lie in [1, 6] and --max-exp be positive");
    const auto pts = periodic_points(c.lambda, period, max_exp);
    std::ostringstream os;
    write_orbits_csv(os, pts);
    write_text(c, os.str());
    json m = base_manifest("orbits", c);
    m["cutoffs"] = {{"period", period}, {"max_exp", max_exp}};
    write_manifest(c, m);
    return 0;
}

int cmd_periodfn(const Common& c, std::optional<double> s_opt, int degree, int samples) {
    check_lambda(c.lambda);
    check_degree(degree);
    if (samples < 2) throw ConfigError("--samples must be at least 2");
    const double s = s_opt ? *s_opt : delta_bisection(c.lambda, degree);
    check_s(c, s);
    const LeadingEigenpair ep = leading_even_eigenpair(s, c.lambda, degree);
    const std::vector<cplx> h(ep.vector.data(), ep.vector.data() + ep.vector.size());
    const PeriodFunction pf = reconstruct_period(s, c.lambda, h);
    const PeriodClass cls = classify_period(pf);
    json table = json::array();
    for (int i = 0; i < samples; ++i) {
        const double x = -0.95 + 1.9 * i / (samples - 1);
        table.push_back({{"x", x}, {"f1", pair(pf.f.f1(x))}, {"f2", pair(pf.f.f2(x))}});
    }
    json body;
    body["schema_version"] = kSchemaVersion;
    body["s"] = s;
    body["eigenvalue"] = pair(ep.value);
    body["kind"] = to_string(cls.kind);
    body["parity"] = to_string(cls.parity);
    body["slow_residual"] = pf.slow_residual;
    body["fast_residual"] = pf.fast_residual;
    body["cusp_value"] = pair(pf.cusp_value);
    body["even_defect"] = pf.even_defect;
    body["odd_defect"] = pf.odd_defect;
    body["table"] = table;
    json m = base_manifest("periodfn", c);
    m["cutoffs"] = {{"N", degree}, {"samples", samples}, {"slow_probes", 100}, {"fast_probes", 50}};
    write_json(c, body, m);
    return 0;
}

int cmd_zeta_eval(const Common& c, double re, double im, int degree, const EulerOptions& eo) {
    check_lambda(c.lambda);
    check_degree(degree);
    check_s(c, re);
    const cplx s(re, im);
    const cplx det = fredholm_det(s, c.lambda, degree);
    json body;
    body["schema_version"] = kSchemaVersion;
    body["s"] = pair(s);
    body["det"] = pair(det);
    if (re >= 1.5) {
        const EulerProduct e = euler_product(s, c.lambda, eo);
        body["euler"] = pair(e.value);
        body["gap"] = std::abs(det - e.value);
        body["euler_tail_estimate"] = e.tail_estimate;
        body["euler_warning"] = e.warning;
        body["euler_classes"] = e.classes_used;
        body["euler_max_length"] = e.max_length;
    } else {
        body["euler"] = nullptr;
        body["gap"] = nullptr;
        body["note"] = "Euler product evaluated only for Re s >= 1.5";
    }
    json m = base_manifest("zeta-eval", c);
    m["cutoffs"] = {{"N", degree}, {"max_n", eo.max_n}, {"max_exp", eo.max_exp}, {"k_max", eo.k_max}};
    write_json(c, body, m);
    return 0;
}

int cmd_matrix(const Common& c, double re, double im, int degree) {
    check_lambda(c.lambda);
    check_degree(degree);
    check_s(c, re);
    std::ostringstream os;
    write_matrix_json(os, assemble_matrix(cplx(re, im), c.lambda, degree));
    write_text(c, os.str());
    json m = base_manifest("matrix", c);
    m["cutoffs"] = {{"N", degree}};
    write_manifest(c, m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reslab: resonances, transfer operators and period functions of Hecke triangle groups"};
    app.require_subcommand(1);

    Common c;
    std::string re = "0.55:0.95", im = "-0.01:0.01";
    SearchOptions so;
    auto* res = app.add_subcommand("resonances", "locate zeros of det(1 - M) in a rectangle");
    add_common(res, c);
    res->add_option("--re", re, "real range a:b")->capture_default_str();
    res->add_option("--im", im, "imaginary range a:b")->capture_default_str();
    res->add_option("--degree,-N", so.degree, "Taylor truncation N")->capture_default_str();
    res->add_option("--nx", so.nx, "grid columns (0: automatic)");
    res->add_option("--ny", so.ny, "grid rows (0: automatic)");
    res->add_option("--guard", so.guard, "radius of the excluded disk around 1/2")->capture_default_str();

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run invariant suites and report residuals");
    add_common(ver, c);
    ver->add_option("--suite", suite, "operators, cocycles, flow, green or all")
        ->required()
        ->check(CLI::IsMember({"operators", "cocycles", "flow", "green", "all"}));

    int degree = 32;
    auto* del = app.add_subcommand("delta", "leading real zero from the matrix and from the pressure equation");
    add_common(del, c);
    del->add_option("--degree,-N", degree, "Taylor truncation N")->capture_default_str();

    int max_n = 4, max_exp = 5;
    double max_length = 0;
    auto* geo = app.add_subcommand("geodesics", "primitive length spectrum");
    add_common(geo, c);
    geo->add_option("--max-n", max_n, "word length cutoff")->capture_default_str();
    geo->add_option("--max-exp", max_exp, "exponent cutoff")->capture_default_str();
    geo->add_option("--max-length", max_length, "length cutoff (0: none)");

    int period = 2;
    auto* orb = app.add_subcommand("orbits", "periodic points of the discrete system");
    add_common(orb, c);
    orb->add_option("--period", period, "period n")->capture_default_str();
    orb->add_option("--max-exp", max_exp, "exponent cutoff")->capture_default_str();

    std::optional<double> s_opt;
    int samples = 21;
    auto* per = app.add_subcommand("periodfn", "reconstruct and classify the period function of the Perron eigenvector");
    add_common(per, c);
    per->add_option("--s", s_opt, "real spectral parameter (default: the leading zero)");
    per->add_option("--degree,-N", degree, "Taylor truncation N")->capture_default_str();
    per->add_option("--samples", samples, "table rows")->capture_default_str();

    double s_re = 2.0, s_im = 0.0;
    EulerOptions eo;
    auto* zeta = app.add_subcommand("zeta-eval", "Fredholm determinant and Euler product at s");
    add_common(zeta, c);
    zeta->add_option("--s", s_re, "Re s")->capture_default_str();
    zeta->add_option("--s-im", s_im, "Im s")->capture_default_str();
    zeta->add_option("--degree,-N", degree, "Taylor truncation N")->capture_default_str();
    zeta->add_option("--max-n", eo.max_n, "Euler product word length cutoff")->capture_default_str();
    zeta->add_option("--max-exp", eo.max_exp, "Euler product exponent cutoff")->capture_default_str();
    zeta->add_option("--k-max", eo.k_max, "Euler product k cutoff")->capture_default_str();

    auto* mat = app.add_subcommand("matrix", "export the operator matrix as JSON");
    add_common(mat, c);
    mat->add_option("--s", s_re, "Re s")->capture_default_str();
    mat->add_option("--s-im", s_im, "Im s")->capture_default_str();
    mat->add_option("--degree,-N", degree, "Taylor truncation N")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*res) return cmd_resonances(c, re, im, so);
        if (*ver) return cmd_verify(c, suite);
        if (*del) return cmd_delta(c, degree);
        if (*geo) return cmd_geodesics(c, max_n, max_exp, max_length);
        if (*orb) return cmd_orbits(c, period, max_exp);
        if (*per) return cmd_periodfn(c, s_opt, degree, samples);
        if (*zeta) return cmd_zeta_eval(c, s_re, s_im, degree, eo);
        if (*mat) return cmd_matrix(c, s_re, s_im, degree);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}
