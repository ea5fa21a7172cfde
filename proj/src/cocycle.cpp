#include "reslab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "reslab/errors.hpp"
#include "reslab/fast.hpp"
#include "reslab/slow.hpp"
#include "reslab/special.hpp"

namespace reslab {

namespace {

constexpr double kBreakpointTol = 1e-10;
constexpr double kExceptionalTol = 1e-12;
constexpr double kProjectiveInf = 1e12;

double normalize_point(double x) { return std::abs(x) > kProjectiveInf ? kInf : x; }

bool same_point(double x, double y, double tol) {
    if (is_infinite(x) || is_infinite(y)) return is_infinite(x) && is_infinite(y);
    return std::abs(x - y) <= tol * std::max(1.0, std::abs(x));
}

std::vector<double> linspace_open(double a, double b, int n) {
    std::vector<double> out;
    for (int i = 1; i <= n; ++i) out.push_back(a + (b - a) * i / (n + 1));
    return out;
}

void add_terms(std::vector<SectionTerm>& into, const std::vector<SectionTerm>& terms, int sign) {
    for (SectionTerm t : terms) {
        t.sign *= sign;
        auto match = std::find_if(into.begin(), into.end(), [&](const SectionTerm& u) {
            return u.component == t.component && u.sign == -t.sign && u.g.approx_equal(t.g);
        });
        if (match != into.end())
            into.erase(match);
        else
            into.push_back(std::move(t));
    }
}

PiecewiseSection combine(const PiecewiseSection& x, const PiecewiseSection& y, int sign_y) {
    std::vector<double> pts = x.breakpoints();
    for (double p : y.breakpoints()) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    std::vector<double> merged;
    for (double p : pts)
        if (merged.empty() || !same_point(merged.back(), p, kBreakpointTol)) merged.push_back(p);
    if (merged.size() < 2) throw DomainError("PiecewiseSection: fewer than two breakpoints");
    std::vector<SectionPiece> pieces;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const CyclicInterval cell(merged[i], merged[(i + 1) % merged.size()]);
        const double probe = cell.interior_point();
        SectionPiece piece{cell, {}};
        add_terms(piece.terms, x.piece_at(probe).terms, 1);
        add_terms(piece.terms, y.piece_at(probe).terms, sign_y);
        pieces.push_back(std::move(piece));
    }
    return PiecewiseSection(std::move(pieces));
}

const RealFn& component_fn(const PairFunction& f, int component, RealFn& f1, RealFn& f2) {
    if (!f1) f1 = [&f](double x) { return f.f1(x); };
    if (!f2) f2 = [&f](double x) { return f.f2(x); };
    return component == 1 ? f1 : f2;
}

}  // namespace

PiecewiseSection::PiecewiseSection()
    : pieces_{SectionPiece{CyclicInterval(0, kInf), {}}, SectionPiece{CyclicInterval(kInf, 0), {}}} {}

PiecewiseSection::PiecewiseSection(std::vector<SectionPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.size() < 2) throw DomainError("PiecewiseSection: needs at least two pieces");
}

std::vector<double> PiecewiseSection::breakpoints() const {
    std::vector<double> out;
    for (const auto& p : pieces_) out.push_back(p.interval.a());
    return out;
}

std::size_t PiecewiseSection::term_count() const {
    std::size_t n = 0;
    for (const auto& p : pieces_) n += p.terms.size();
    return n;
}

PiecewiseSection PiecewiseSection::operator-() const {
    PiecewiseSection r = *this;
    for (auto& p : r.pieces_)
        for (auto& t : p.terms) t.sign = -t.sign;
    return r;
}

PiecewiseSection operator+(const PiecewiseSection& x, const PiecewiseSection& y) { return combine(x, y, 1); }
PiecewiseSection operator-(const PiecewiseSection& x, const PiecewiseSection& y) { return combine(x, y, -1); }

PiecewiseSection PiecewiseSection::transformed(const GroupElement& gamma) const {
    if (!(gamma.det() > 0)) throw DomainError("PiecewiseSection: transform needs an orientation-preserving element");
    std::vector<SectionPiece> out;
    for (const auto& p : pieces_) {
        const double a = normalize_point(moebius_apply(gamma, p.interval.a()));
        const double b = normalize_point(moebius_apply(gamma, p.interval.b()));
        SectionPiece q{CyclicInterval(a, b), {}};
        for (const auto& t : p.terms) q.terms.push_back({t.sign, gamma * t.g, t.component});
        out.push_back(std::move(q));
    }
    return PiecewiseSection(std::move(out));
}

const SectionPiece& PiecewiseSection::piece_at(double t) const {
    for (const auto& p : pieces_)
        if (same_point(p.interval.a(), t, kExceptionalTol) || same_point(p.interval.b(), t, kExceptionalTol))
            throw ExceptionalPointError("PiecewiseSection: evaluation at a breakpoint");
    for (const auto& p : pieces_)
        if (p.interval.contains(t)) return p;
    throw ExceptionalPointError("PiecewiseSection: no piece contains the point");
}

cplx PiecewiseSection::eval(cplx s, const PairFunction& f, double t) const {
    const SectionPiece& piece = piece_at(t);
    RealFn f1, f2;
    cplx sum = 0;
    for (const auto& term : piece.terms)
        sum += double(term.sign) * tau_action(s, term.g, component_fn(f, term.component, f1, f2), t);
    return sum;
}

double XiPoint::value() const { return normalize_point(moebius_apply(g, base == XiBase::one ? 1.0 : kInf)); }

XiPoint xi_one() { return {XiBase::one, GroupElement()}; }
XiPoint xi_infinity() { return {XiBase::infinity, GroupElement()}; }

GroupElement mirror_element(const GroupElement& g, double lambda) {
    if (!g.word()) throw DomainError("mirror_element: element has no word");
    Word w = *g.word();
    for (auto& l : w) {
        if (l.gen == Gen::J) throw DomainError("mirror_element: word contains J");
        if (l.gen == Gen::T) l.power = -l.power;
    }
    return GroupElement::from_word(lambda, w);
}

XiPoint mirror_point(const XiPoint& xi, double lambda) {
    const GroupElement m = mirror_element(xi.g, lambda);
    if (xi.base == XiBase::infinity) return {XiBase::infinity, m};
    return {XiBase::one, m * hecke_generators(lambda).S};
}

Cocycle::Cocycle(cplx s, double lambda, PairFunction f) : s_(s), lambda_(lambda), f_(std::move(f)) {
    if (!(lambda > 2)) throw DomainError("Cocycle: lambda must exceed 2");
    const HeckeGenerators gen = hecke_generators(lambda);
    const GroupElement id = t_power(lambda, 0);
    psi_s_ = PiecewiseSection({
        SectionPiece{CyclicInterval(kInf, 0), {{-1, gen.S, 1}, {-1, id, 2}}},
        SectionPiece{CyclicInterval(0, kInf), {{1, id, 1}, {1, gen.S, 2}}},
    });
    p_one_ = PiecewiseSection({
        SectionPiece{CyclicInterval(kInf, 1), {{-1, id, 2}}},
        SectionPiece{CyclicInterval(1, kInf), {{1, id, 1}, {1, gen.S, 1}, {1, gen.S, 2}}},
    });
}

PiecewiseSection Cocycle::psi(const GroupElement& g) const {
    if (!g.word()) throw DomainError("Cocycle::psi: element has no word");
    const Word& w = *g.word();
    if (w.size() > kMaxCocycleWordLength) throw ResourceError("Cocycle::psi: word longer than the cap");
    const GroupElement s_elem = hecke_generators(lambda_).S;
    PiecewiseSection acc;
    for (const auto& l : w) {
        if (l.gen == Gen::T) {
            acc = acc.transformed(t_power(lambda_, -l.power));
        } else if (l.gen == Gen::S) {
            acc = acc.transformed(s_elem) + psi_s_;
        } else {
            throw DomainError("Cocycle::psi: word contains J");
        }
    }
    return acc;
}

PiecewiseSection Cocycle::potential(const XiPoint& xi) const {
    const PiecewiseSection shift = psi(xi.g.inverse());
    if (xi.base == XiBase::infinity) return shift;
    return p_one_.transformed(xi.g) + shift;
}

PiecewiseSection Cocycle::value(const XiPoint& xi, const XiPoint& eta) const {
    return potential(xi) - potential(eta);
}

Cocycle build_cocycle(const PeriodFunction& f) {
    if (!(f.slow_residual < 1e-6))
        throw DomainError("build_cocycle: input is not a slow 1-eigenfunction (residual " +
                          std::to_string(f.slow_residual) + ")");
    return Cocycle(f.s, f.lambda, f.f);
}

namespace {

struct Sampler {
    std::mt19937_64 rng;
    double lambda;

    GroupElement word(int max_len) {
        std::uniform_int_distribution<int> len(0, max_len);
        std::uniform_int_distribution<int> pick(0, 2);
        const int n = len(rng);
        Word w;
        for (int i = 0; i < n; ++i) {
            const int k = pick(rng);
            if (k == 2 && !w.empty() && w.back().gen == Gen::S) continue;
            if (k == 2)
                w.push_back(Letter{Gen::S, 1});
            else
                w.push_back(Letter{Gen::T, k == 0 ? 1 : -1});
        }
        return GroupElement::from_word(lambda, w);
    }

    XiPoint point(int max_len) {
        std::bernoulli_distribution coin(0.5);
        return {coin(rng) ? XiBase::one : XiBase::infinity, word(max_len)};
    }

    double probe() { return std::uniform_real_distribution<double>(-4.0, 4.0)(rng); }
};

// evaluates fn at t, counting probes that hit exceptional points or leave the domains
template <class Fn>
bool try_eval(Fn&& fn, CocycleReport& rep) {
    try {
        fn();
        ++rep.evaluations;
        return true;
    } catch (const ExceptionalPointError&) {
    } catch (const DomainError&) {
    }
    ++rep.skipped;
    return false;
}

}  // namespace

double vanishing_residual(const Cocycle& c, int probes) {
    const double lambda = c.lambda();
    const HeckeGenerators gen = hecke_generators(lambda);
    const XiPoint end{XiBase::one, gen.T * gen.S};
    const PiecewiseSection sec = c.value(xi_one(), end);
    // chart u = -1/(t - lambda/2) maps (lambda-1, 1)_c onto a bounded interval
    const double half = 2 / (lambda - 2);
    double worst = 0;
    for (double u : linspace_open(-half, half, probes)) {
        const double t = u == 0 ? kInf : lambda / 2 - 1 / u;
        if (is_infinite(t)) continue;
        worst = std::max(worst, std::abs(c.eval(sec, t)));
    }
    return worst;
}

CocycleReport verify_cocycle(const Cocycle& c, int trials, std::uint64_t seed) {
    CocycleReport rep;
    Sampler smp{std::mt19937_64(seed), c.lambda()};
    for (int i = 0; i < trials; ++i) {
        const XiPoint xi = smp.point(4), eta = smp.point(4), zeta = smp.point(4);
        const GroupElement gamma = smp.word(4);
        const double t = smp.probe();
        const PiecewiseSection cxe = c.value(xi, eta), cez = c.value(eta, zeta), cxz = c.value(xi, zeta);
        try_eval([&] { rep.relation = std::max(rep.relation, std::abs(c.eval(cxe, t) + c.eval(cez, t) - c.eval(cxz, t))); },
                 rep);
        try_eval([&] { rep.antisymmetry = std::max(rep.antisymmetry, std::abs(c.eval(cxe, t) + c.eval(eta, xi, t))); },
                 rep);
        const GroupElement ginv = gamma.inverse();
        const XiPoint xi2{xi.base, ginv * xi.g}, eta2{eta.base, ginv * eta.g};
        try_eval(
            [&] {
                const cplx lhs = c.eval(cxe.transformed(ginv), t);
                const cplx rhs = c.eval(xi2, eta2, t);
                rep.equivariance = std::max(rep.equivariance, std::abs(lhs - rhs));
            },
            rep);
    }
    rep.vanishing = vanishing_residual(c);
    return rep;
}

double coboundary_residual(const Cocycle& c, const RealFn& b, int trials, std::uint64_t seed) {
    Sampler smp{std::mt19937_64(seed), c.lambda()};
    auto q = [&](const XiPoint& xi, double t) -> cplx {
        if (xi.base == XiBase::one) return 0;
        return tau_action(c.s(), xi.g, b, t);
    };
    double worst = 0;
    int done = 0;
    for (int attempt = 0; done < trials && attempt < 20 * trials; ++attempt) {
        const XiPoint xi = smp.point(4), eta = smp.point(4);
        const double t = smp.probe();
        try {
            const cplx lhs = c.eval(xi, eta, t);
            worst = std::max(worst, std::abs(lhs - (q(xi, t) - q(eta, t))));
            ++done;
        } catch (const ExceptionalPointError&) {
        } catch (const DomainError&) {
        }
    }
    if (done < trials) throw ConvergenceError("coboundary_residual: too many probes hit exceptional points");
    return worst;
}

double parity_equivariance_residual(const Cocycle& cf, const Cocycle& cjf, int trials, std::uint64_t seed) {
    Sampler smp{std::mt19937_64(seed), cf.lambda()};
    double worst = 0;
    int done = 0;
    for (int attempt = 0; done < trials && attempt < 20 * trials; ++attempt) {
        const XiPoint xi = smp.point(4), eta = smp.point(4);
        const double t = smp.probe();
        try {
            const cplx lhs = cjf.eval(xi, eta, t);
            const cplx rhs = -cf.eval(mirror_point(xi, cf.lambda()), mirror_point(eta, cf.lambda()), -t);
            worst = std::max(worst, std::abs(lhs - rhs));
            ++done;
        } catch (const ExceptionalPointError&) {
        } catch (const DomainError&) {
        }
    }
    if (done < trials) throw ConvergenceError("parity_equivariance_residual: too many probes hit exceptional points");
    return worst;
}

// period functions

std::string to_string(PeriodKind k) {
    switch (k) {
        case PeriodKind::boundary: return "boundary";
        case PeriodKind::cuspidal: return "cuspidal";
        case PeriodKind::resonant_noncuspidal: return "resonant-noncuspidal";
        case PeriodKind::generic: return "generic";
    }
    return "generic";
}

std::string to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        case Parity::mixed: return "mixed";
    }
    return "mixed";
}

PairFunction parity_image(const PairFunction& f) {
    PairFunction out = PairFunction::from_closures([f](double t) { return f.f2(-t); },
                                                   [f](double t) { return f.f1(-t); });
    return out.with_domain(-f.right2(), -f.left1());
}

PeriodFunction make_period_function(cplx s, double lambda, PairFunction f, PeriodSource source, int degree) {
    if (!(lambda > 2)) throw DomainError("make_period_function: lambda must exceed 2");
    PeriodFunction p;
    p.s = s;
    p.lambda = lambda;
    p.source = source;
    p.degree = degree;
    p.f = std::move(f);
    const std::vector<double> probes1 = linspace_open(-1, 2, 50), probes2 = linspace_open(-2, 1, 50);
    p.slow_residual = slow_residual(s, lambda, p.f, probes1, probes2);
    const std::vector<double> near0 = linspace_open(-0.9, 0.9, 25);
    double scale = 0;
    for (double t : near0) {
        const cplx a = p.f.f1(t), b = p.f.f2(t), am = p.f.f1(-t), bm = p.f.f2(-t);
        scale = std::max({scale, std::abs(a), std::abs(b)});
        p.boundary_defect = std::max(p.boundary_defect, std::abs(a + b));
        p.even_defect = std::max({p.even_defect, std::abs(bm - a), std::abs(am - b)});
        p.odd_defect = std::max({p.odd_defect, std::abs(bm + a), std::abs(am + b)});
    }
    if (scale > 0) {
        p.even_defect /= scale;
        p.odd_defect /= scale;
    }
    p.cusp_value = p.f.f1(0.0) + p.f.f2(0.0);
    for (double x : near0) {
        for (int comp = 1; comp <= 2; ++comp) {
            const FastValue v = fast_apply(s, lambda, p.f, comp, x);
            p.fast_residual = std::max(p.fast_residual, std::abs(v.value - p.f.eval(comp, x)));
        }
    }
    return p;
}

PeriodFunction reconstruct_period(cplx s, double lambda, std::span<const cplx> h) {
    if (!(lambda > 2)) throw DomainError("reconstruct_period: lambda must exceed 2");
    double hmax = 0;
    for (const cplx& c : h) hmax = std::max(hmax, std::abs(c));
    if (h.empty() || hmax == 0) throw DomainError("reconstruct_period: zero vector");
    // eigen-residual on 30 disk points
    double res = 0, scale = 0;
    for (int k = 0; k < 30; ++k) {
        const double r = 0.3 + 0.6 * (k % 3) / 2.0;
        const cplx z = std::polar(r, 2 * std::numbers::pi * k / 30.0);
        const cplx hz = taylor_eval(h, z);
        scale = std::max(scale, std::abs(hz));
        res = std::max(res, std::abs(reduced_apply_taylor(s, lambda, h, z) - hz));
    }
    if (res > 1e-8 * std::max(1.0, scale))
        throw ConvergenceError("reconstruct_period: eigen-residual too large (" + std::to_string(res) + ")");
    if (std::abs(s - 0.5) < kHalfGuardRadius && std::abs(h[0]) > 0)
        throw PoleError("reconstruct_period: s inside the guard disk around 1/2 with h(0) != 0");
    std::vector<cplx> w1, w2;
    for (std::size_t j = 0; j < h.size(); ++j) {
        const cplx base = h[j] * std::exp(-(2.0 * s + double(j)) * std::log(lambda));
        w1.push_back(j % 2 ? -base : base);
        w2.push_back(base);
    }
    auto make = [s, lambda](std::vector<cplx> w, double sign) {
        return [s, lambda, w = std::move(w), sign](double x) {
            cplx sum = 0;
            for (std::size_t j = 0; j < w.size(); ++j)
                if (w[j] != 0.0) sum += w[j] * hurwitz_zeta(2.0 * s + double(j), 1 + sign * x / lambda);
            return sum;
        };
    };
    const double edge = lambda - 1 / kTaylorRadius;
    PairFunction f = PairFunction::from_closures(make(w1, 1), make(w2, -1)).with_domain(-edge, edge);
    return make_period_function(s, lambda, std::move(f), PeriodSource::eigenvector, static_cast<int>(h.size()));
}

PeriodClass classify_period(const PeriodFunction& f) {
    PeriodClass c;
    const bool fast = f.fast_residual < 1e-7;
    if (f.boundary_defect < 1e-10)
        c.kind = PeriodKind::boundary;
    else if (fast && std::abs(f.cusp_value) < 1e-8)
        c.kind = PeriodKind::cuspidal;
    else if (fast)
        c.kind = PeriodKind::resonant_noncuspidal;
    if (f.even_defect < 1e-8)
        c.parity = Parity::even;
    else if (f.odd_defect < 1e-8)
        c.parity = Parity::odd;
    return c;
}

}  // namespace reslab
