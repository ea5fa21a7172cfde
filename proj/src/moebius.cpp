#include "reslab/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "reslab/errors.hpp"
#include "reslab/format.hpp"

namespace reslab {

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (const auto& l : w) {
        switch (l.gen) {
            case Gen::T:
                os << 'T';
                if (l.power != 1) os << '^' << l.power;
                break;
            case Gen::S: os << 'S'; break;
            case Gen::J: os << 'J'; break;
        }
    }
    return os.str();
}

GroupElement::GroupElement(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d), word_(std::nullopt) {}

GroupElement::GroupElement(double a, double b, double c, double d, Word word, double lambda)
    : a_(a), b_(b), c_(c), d_(d), word_(std::move(word)), lambda_(lambda) {}

GroupElement GroupElement::from_word(double lambda, const Word& word) {
    GroupElement g;
    const auto gens = hecke_generators(lambda);
    for (const auto& l : word) {
        switch (l.gen) {
            case Gen::T: g = g * t_power(lambda, l.power); break;
            case Gen::S: g = g * gens.S; break;
            case Gen::J: g = g * gens.J; break;
        }
    }
    return g;
}

namespace {

void append_letter(Word& w, const Letter& l) {
    if (!w.empty()) {
        Letter& last = w.back();
        if (l.gen == Gen::T && last.gen == Gen::T) {
            last.power += l.power;
            if (last.power == 0) w.pop_back();
            return;
        }
        if (l.gen != Gen::T && last.gen == l.gen) {
            w.pop_back();
            return;
        }
    }
    w.push_back(l);
}

}  // namespace

double GroupElement::trace_compensated() const {
    const double scale = std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
    if (scale <= 1e12 || !word_) return trace();
    long double m[2][2] = {{1, 0}, {0, 1}};
    const long double lam = lambda_;
    for (const auto& l : *word_) {
        long double x[2][2] = {{1, 0}, {0, 1}};
        switch (l.gen) {
            case Gen::T: x[0][0] = 1; x[0][1] = lam * l.power; x[1][0] = 0; x[1][1] = 1; break;
            case Gen::S: x[0][0] = 0; x[0][1] = -1; x[1][0] = 1; x[1][1] = 0; break;
            case Gen::J: x[0][0] = -1; x[0][1] = 0; x[1][0] = 0; x[1][1] = 1; break;
        }
        long double r[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] = std::fmal(m[i][0], x[0][j], m[i][1] * x[1][j]);
        std::copy(&r[0][0], &r[0][0] + 4, &m[0][0]);
    }
    // the stored matrix may differ from the word product by an overall sign
    const long double t = m[0][0] + m[1][1];
    return (t * trace() < 0) ? static_cast<double>(-t) : static_cast<double>(t);
}

GroupElement GroupElement::inverse() const {
    const double dt = det();
    GroupElement r(d_ / dt, -b_ / dt, -c_ / dt, a_ / dt);
    r.lambda_ = lambda_;
    if (word_) {
        Word w;
        for (auto it = word_->rbegin(); it != word_->rend(); ++it) {
            Letter l = *it;
            if (l.gen == Gen::T) l.power = -l.power;
            append_letter(w, l);
        }
        r.word_ = std::move(w);
    }
    return r;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    double a = g.a_ * h.a_ + g.b_ * h.c_;
    double b = g.a_ * h.b_ + g.b_ * h.d_;
    double c = g.c_ * h.a_ + g.d_ * h.c_;
    double d = g.c_ * h.b_ + g.d_ * h.d_;
    // rescale so that |det| = 1 is kept to rounding
    const double dt = a * d - b * c;
    const double f = 1.0 / std::sqrt(std::abs(dt));
    if (std::abs(f - 1.0) > 0) {
        a *= f; b *= f; c *= f; d *= f;
    }
    GroupElement r(a, b, c, d);
    r.lambda_ = g.lambda_ != 0 ? g.lambda_ : h.lambda_;
    if (g.word_ && h.word_) {
        Word w = *g.word_;
        for (const auto& l : *h.word_) append_letter(w, l);
        r.word_ = std::move(w);
    }
    return r;
}

bool GroupElement::approx_equal(const GroupElement& other, double tol) const {
    auto normalized = [](const GroupElement& g) {
        std::array<double, 4> e{g.a_, g.b_, g.c_, g.d_};
        for (double x : e) {
            if (x != 0) {
                if (x < 0)
                    for (double& y : e) y = -y;
                break;
            }
        }
        return e;
    };
    const auto p = normalized(*this);
    const auto q = normalized(other);
    double scale = 1;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(p[i]));
    for (int i = 0; i < 4; ++i)
        if (std::abs(p[i] - q[i]) > tol * scale) return false;
    return true;
}

HeckeGenerators hecke_generators(double lambda) {
    if (!(lambda > 2)) throw DomainError("hecke_generators: lambda must exceed 2");
    return {GroupElement(1, lambda, 0, 1, Word{{Gen::T, 1}}, lambda),
            GroupElement(0, -1, 1, 0, Word{{Gen::S, 1}}, 0),
            GroupElement(-1, 0, 0, 1, Word{{Gen::J, 1}}, 0)};
}

GroupElement t_power(double lambda, int k) {
    if (k == 0) return GroupElement();
    return GroupElement(1, k * lambda, 0, 1, Word{{Gen::T, k}}, lambda);
}

GroupElement exponent_word_element(double lambda, std::span<const int> exponents) {
    const GroupElement S = hecke_generators(lambda).S;
    GroupElement g;
    for (int a : exponents) g = g * t_power(lambda, a) * S;
    return g;
}

double moebius_apply(const GroupElement& g, double x) {
    if (is_infinite(x)) return g.c() == 0 ? kInf : g.a() / g.c();
    const double den = g.c() * x + g.d();
    if (den == 0) return kInf;
    return (g.a() * x + g.b()) / den;
}

cplx moebius_apply(const GroupElement& g, cplx z) {
    if (std::isinf(z.real()) || std::isinf(z.imag()))
        return g.c() == 0 ? cplx(kInf, 0) : cplx(g.a() / g.c(), 0);
    const cplx den = g.c() * z + g.d();
    if (den == cplx(0, 0)) return {kInf, 0};
    return (g.a() * z + g.b()) / den;
}

FixedPoints fixed_points_ts(double lambda) {
    if (!(lambda > 2)) throw DomainError("fixed_points_ts: lambda must exceed 2");
    const double r = std::sqrt(lambda * lambda - 4);
    const double plus = (lambda + r) / 2;
    return {1 / plus, plus};
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::hyperbolic: return "hyperbolic";
        case Classification::parabolic: return "parabolic";
        case Classification::elliptic: return "elliptic";
        case Classification::identity: return "identity";
    }
    return "?";
}

Classification classify(const GroupElement& g) {
    if (std::abs(g.det() - 1) > 1e-10) throw DomainError("classify: element has determinant -1");
    const double t = std::abs(g.trace_compensated());
    if (t > 2 + 1e-10) return Classification::hyperbolic;
    if (t < 2 - 1e-10) return Classification::elliptic;
    const double off = std::max(std::abs(g.b()), std::abs(g.c()));
    if (off < 1e-10 && std::abs(g.a() - g.d()) < 1e-10) return Classification::identity;
    return Classification::parabolic;
}

double geodesic_length(const GroupElement& g) {
    if (classify(g) != Classification::hyperbolic)
        throw DomainError("geodesic_length: element is not hyperbolic");
    const double x = std::abs(g.trace_compensated()) / 2;
    return 2 * std::log(x + std::sqrt((x - 1) * (x + 1)));
}

CyclicInterval::CyclicInterval(double a, double b) : a_(a), b_(b) {
    if (std::isnan(a) || std::isnan(b)) throw DomainError("CyclicInterval: NaN endpoint");
    if (is_infinite(a_)) a_ = kInf;
    if (is_infinite(b_)) b_ = kInf;
    if (a_ == b_) throw DomainError("CyclicInterval: (a,a)_c is not an interval");
}

bool CyclicInterval::contains(double t) const {
    if (is_infinite(t)) return !is_infinite(a_) && !is_infinite(b_) && a_ > b_;
    if (is_infinite(a_)) return t < b_;
    if (is_infinite(b_)) return t > a_;
    if (a_ < b_) return a_ < t && t < b_;
    return t > a_ || t < b_;
}

double CyclicInterval::interior_point() const {
    if (is_infinite(a_)) return b_ - 1;
    if (is_infinite(b_)) return a_ + 1;
    if (a_ < b_) return 0.5 * (a_ + b_);
    return a_ + 1;
}

std::vector<int> canonical_rotation(std::span<const int> tuple) {
    std::vector<int> best(tuple.begin(), tuple.end());
    std::vector<int> rot(best);
    for (std::size_t r = 1; r < tuple.size(); ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

int primitive_period(std::span<const int> tuple) {
    const int n = static_cast<int>(tuple.size());
    for (int p = 1; p < n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (int i = p; i < n && ok; ++i) ok = tuple[i] == tuple[i - p];
        if (ok) return p;
    }
    return n;
}

std::vector<HyperbolicClass> enumerate_classes(double lambda, int max_n, int max_exp,
                                               const EnumerationLimits& limits) {
    if (!(lambda > 2)) throw DomainError("enumerate_classes: lambda must exceed 2");
    if (max_n < 1 || max_exp < 1) throw DomainError("enumerate_classes: cutoffs must be positive");
    std::vector<HyperbolicClass> out;
    std::vector<int> tuple;
    // 2*log(|a|*lambda - 1) bounds the length contribution of each letter from below
    std::vector<double> letter_bound(max_exp + 1, 0.0);
    for (int a = 1; a <= max_exp; ++a) letter_bound[a] = 2 * std::log(a * lambda - 1);

    std::function<void(int, double, double, double, double, double)> rec =
        [&](int n, double bound, double p11, double p12, double p21, double p22) {
            if (!tuple.empty()) {
                if (tuple == canonical_rotation(tuple)) {
                    const double tr = std::abs(p11 + p22);
                    const double x = tr / 2;
                    const double len = 2 * std::log(x + std::sqrt((x - 1) * (x + 1)));
                    if (len <= limits.max_length) {
                        HyperbolicClass hc;
                        hc.exponents = tuple;
                        hc.trace = p11 + p22;
                        hc.length = len;
                        const int p = primitive_period(tuple);
                        hc.primitive = p == static_cast<int>(tuple.size());
                        hc.weight = p;
                        if (out.size() >= limits.max_classes)
                            throw ResourceError("enumerate_classes: class count exceeds the configured cap");
                        out.push_back(std::move(hc));
                    }
                }
            }
            if (n == max_n) return;
            for (int m = 1; m <= max_exp; ++m) {
                const double nb = bound + letter_bound[m];
                if (nb > limits.max_length) break;
                for (int a : {m, -m}) {
                    // right-multiply by T^a S = [a*lambda, -1; 1, 0]
                    const double al = a * lambda;
                    tuple.push_back(a);
                    rec(n + 1, nb, p11 * al + p12, -p11, p21 * al + p22, -p21);
                    tuple.pop_back();
                }
            }
        };
    rec(0, 0.0, 1, 0, 0, 1);
    std::sort(out.begin(), out.end(), [](const HyperbolicClass& x, const HyperbolicClass& y) {
        if (x.length != y.length) return x.length < y.length;
        if (x.exponents.size() != y.exponents.size()) return x.exponents.size() < y.exponents.size();
        return x.exponents < y.exponents;
    });
    return out;
}

void write_length_spectrum_csv(std::ostream& os, const std::vector<HyperbolicClass>& classes) {
    os << "n,exponent_tuple,trace,length,primitive,weight\n";
    for (const auto& c : classes) {
        os << c.exponents.size() << ',';
        for (std::size_t i = 0; i < c.exponents.size(); ++i) os << (i ? ";" : "") << c.exponents[i];
        os << ',' << fmt_num(c.trace) << ',' << fmt_num(c.length) << ',' << (c.primitive ? 1 : 0) << ','
           << fmt_num(c.weight) << '\n';
    }
}

}  // namespace reslab
