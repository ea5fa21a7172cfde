#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "reslab/function_space.hpp"

namespace reslab {

inline constexpr double kHalfGuardRadius = 1e-3;

struct FastValue {
    cplx value;
    double error;
};

struct FastApplyOptions {
    int n_max = 40;
    // 0 sums the tail against (f1+f2)(0); otherwise against an interpolant of f1+f2 near 0 with this many nodes
    int tail_order = 14;
};

// partial sum to n_max plus a Hurwitz-zeta tail
FastValue fast_apply(cplx s, double lambda, const PairFunction& f, int component, double x,
                     const FastApplyOptions& opts = {});

enum class MatrixKind { full, odd_only };

class OperatorMatrix {
public:
    OperatorMatrix(cplx s, double lambda, int degree, MatrixKind kind, Eigen::MatrixXcd entries);

    cplx s() const { return s_; }
    double lambda() const { return lambda_; }
    int degree() const { return degree_; }
    MatrixKind kind() const { return kind_; }
    // full N x N matrix; even-index rows and columns are zero for odd_only
    const Eigen::MatrixXcd& entries() const { return m_; }
    Eigen::MatrixXcd even_block() const;
    Eigen::MatrixXcd odd_block() const;

private:
    cplx s_;
    double lambda_;
    int degree_;
    MatrixKind kind_;
    Eigen::MatrixXcd m_;
};

// Taylor matrix of the reduced operator on polynomials of degree < N
OperatorMatrix assemble_matrix(cplx s, double lambda, int degree, MatrixKind kind = MatrixKind::full,
                               double guard = kHalfGuardRadius);

// sum_{n>=1} (n lambda + z)^{-2s} h(-1/(n lambda + z)) + (n lambda - z)^{-2s} h(1/(n lambda - z))
// h holomorphic on the unit disk; direct terms up to n_direct, then Taylor data of h with exact Hurwitz tails
cplx reduced_apply_series(cplx s, double lambda, const ComplexFn& h, cplx z, int n_direct = 6);
// h given by Taylor coefficients; every monomial summed in closed form
cplx reduced_apply_taylor(cplx s, double lambda, std::span<const cplx> coeffs, cplx z);
// coefficients of the image under the matrix
std::vector<cplx> reduced_apply_matrix(const OperatorMatrix& m, std::span<const cplx> coeffs);

// Taylor coefficients 0..count-1 of g from a Cauchy integral on |z| = radius
std::vector<cplx> cauchy_coefficients(const ComplexFn& g, int count, double radius = 0.5, int nodes = 64);

// {"N", "s": [re, im], "lambda", "entries": [[re, im], ...]} row-major
void write_matrix_json(std::ostream& os, const OperatorMatrix& m);

}  // namespace reslab
