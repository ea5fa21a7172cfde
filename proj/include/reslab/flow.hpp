#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "reslab/errors.hpp"
#include "reslab/function_space.hpp"
#include "reslab/moebius.hpp"

namespace reslab {

struct DiscreteState {
    double x = 0;
    int label = 1;
};

struct StepResult {
    DiscreteState next;
    GroupElement branch;  // next.x = branch . x
};

// one step of the discrete system; gap interiors raise OrdinaryPointError, branch endpoints BoundaryError
StepResult step(const DiscreteState& state, double lambda);

// |slow_apply(f)(x) - sum over preimages y of |F'(y)|^{-s} f(y)|
double transfer_consistency(cplx s, double lambda, const PairFunction& f, const DiscreteState& point);

struct PeriodicPoint {
    std::vector<int> word;  // exponents b_1..b_n; the induced map applies T^{b_n}S first
    DiscreteState state;
    double multiplier = 0;  // derivative of the inverse branch at the fixed point
    double length = 0;      // -log(multiplier)
};

// periodic points of period n of the induced map, one per exponent tuple with 0 < |b_i| <= max_exp
std::vector<PeriodicPoint> periodic_points(double lambda, int n, int max_exp);

// runs the slow map along one period and reads the exponent tuple back from the branches
std::vector<int> recover_word(double lambda, const PeriodicPoint& p);

// distinct states visited by the orbit of the point under the induced map
int orbit_size(const PeriodicPoint& p);

void write_orbits_csv(std::ostream& os, const std::vector<PeriodicPoint>& pts);

enum class OrdinaryStatus { ordinary, unknown };

// gaps of the branch table plus translates of (theta-, theta+) by words of length <= 6
OrdinaryStatus ordinary_status(double lambda, const DiscreteState& state);

// (1/n) log of the multiplier^s sum over tuples with |b_i| <= max_exp
double pressure_partial(double s, double lambda, int n, int max_exp);

struct PressureOptions {
    int direct = 6;
    int tail_nodes = 12;
};

struct PressureResult {
    double delta = 0;
    double delta_n3 = 0;  // root of the unextrapolated n = 3 growth rate
};

// root in s of the growth rate of the full multiplier sums, extrapolated over n = 3, 4, 5
PressureResult pressure_delta(double lambda, const PressureOptions& opts = {});

// extrapolated growth rate at s
double pressure_rate(double s, double lambda, const PressureOptions& opts = {});

}  // namespace reslab
