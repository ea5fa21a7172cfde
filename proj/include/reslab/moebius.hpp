#pragma once

#include <complex>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reslab {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_infinite(double x) { return std::isinf(x); }

enum class Gen { T, S, J };

struct Letter {
    Gen gen = Gen::T;
    int power = 1;  // only meaningful for T

    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

std::string word_to_string(const Word& w);

// 2x2 real matrix with det = +-1, taken modulo +-identity.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(double a, double b, double c, double d);
    GroupElement(double a, double b, double c, double d, Word word, double lambda);

    static GroupElement from_word(double lambda, const Word& word);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }
    double trace() const { return a_ + d_; }

    // trace re-derived from the word in extended precision when entries are large
    double trace_compensated() const;

    const std::optional<Word>& word() const { return word_; }

    GroupElement inverse() const;

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h);

    // projective comparison with tolerance
    bool approx_equal(const GroupElement& other, double tol = 1e-10) const;
    friend bool operator==(const GroupElement& g, const GroupElement& h) { return g.approx_equal(h); }

private:
    double a_ = 1, b_ = 0, c_ = 0, d_ = 1;
    std::optional<Word> word_ = Word{};
    double lambda_ = 0;  // 0 while no T letter has been seen
};

struct HeckeGenerators {
    GroupElement T, S, J;
};

HeckeGenerators hecke_generators(double lambda);

// T^k with word provenance
GroupElement t_power(double lambda, int k);

// T^{a_1} S T^{a_2} S ... T^{a_n} S
GroupElement exponent_word_element(double lambda, std::span<const int> exponents);

double moebius_apply(const GroupElement& g, double x);
cplx moebius_apply(const GroupElement& g, cplx z);

struct FixedPoints {
    double minus;  // repelling fixed point of TS
    double plus;   // attracting fixed point of TS
};

FixedPoints fixed_points_ts(double lambda);

enum class Classification { hyperbolic, parabolic, elliptic, identity };

std::string to_string(Classification c);

Classification classify(const GroupElement& g);

double geodesic_length(const GroupElement& g);

// (a,b)_c on the projective line; a > b wraps through infinity
class CyclicInterval {
public:
    CyclicInterval(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }

    bool contains(double t) const;
    // a point strictly inside, used to decide which refinement cell a piece covers
    double interior_point() const;

private:
    double a_, b_;
};

struct HyperbolicClass {
    std::vector<int> exponents;
    double trace = 0;
    double length = 0;
    bool primitive = true;
    double weight = 1;  // w(g)/m(g): length of the primitive period
};

std::vector<int> canonical_rotation(std::span<const int> tuple);
// smallest period p such that the tuple is n/p copies of its first p entries
int primitive_period(std::span<const int> tuple);

struct EnumerationLimits {
    double max_length = kInf;
    std::size_t max_classes = 5'000'000;
};

std::vector<HyperbolicClass> enumerate_classes(double lambda, int max_n, int max_exp,
                                               const EnumerationLimits& limits = {});

void write_length_spectrum_csv(std::ostream& os, const std::vector<HyperbolicClass>& classes);

}  // namespace reslab
