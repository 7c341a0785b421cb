#pragma once

#include "tabor/dyadic.hpp"
#include "tabor/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tabor {

/// Truncated series value with a certified truncation bound.
/// The bound covers the omitted tail only, never floating-point rounding.
struct SeriesValue {
    double value = 0.0;
    double error_bound = 0.0;
    int terms_used = 0;
};

enum class NormKind { Euclidean, L1, Linf };

/// The error-shape function phi. Either the power form c*|u|^alpha, whose
/// dyadic-orbit sums converge automatically, or a caller-supplied table of
/// nonnegative samples phi(x/2^n) with a geometric-decay certificate
/// (phi(x/2^(n+1)) <= decay_ratio * phi(x/2^n) for n >= decay_start).
struct PhiSpec {
    enum class Form { Power, Table };

    Form form = Form::Power;

    Rational c;
    double alpha = 1.0;
    std::optional<unsigned> integer_alpha;
    NormKind norm = NormKind::Euclidean;

    std::vector<double> values;
    std::size_t decay_start = 0;
    double decay_ratio = 0.0;
    bool has_certificate = false;

    static PhiSpec power(Rational coefficient, double alpha,
                         NormKind norm = NormKind::Euclidean);
    static PhiSpec table(std::vector<double> values, std::size_t decay_start,
                         double decay_ratio);

    /// Power-form evaluation at a known norm value.
    double eval_power(double u_norm) const;
};

/// Distance to the nearest integer, double precision.
double dz_real(double t);

/// Takagi function T(t) = sum d_Z(2^n t)/2^n, truncated once the analytic
/// tail bound 2^-(N+1) drops below tol (or the orbit hits an integer, in
/// which case the remaining terms vanish and error_bound is 0).
SeriesValue takagi(double t, double tol);

/// tau_alpha(t) = sum 2^(1-alpha*n) d_Z(2^n t); tail bound after the terms
/// with indices 0..N is 2^(-alpha(N+1)) / (1 - 2^-alpha).
SeriesValue tau_alpha(double alpha, double t, double tol);

/// Finite-sum evaluation at a dyadic point: for t = l/2^m canonical the terms
/// with index >= m vanish, so the sum is exact up to rounding.
double tau_alpha_dyadic(double alpha, const DyadicRational& t);

/// Lossless finite sums for integer alpha >= 1.
Rational tau_alpha_dyadic_exact(unsigned alpha, const DyadicRational& t);
Rational takagi_dyadic_exact(const DyadicRational& t);

/// phi_perp(t, x) = sum 2 d_Z(2^n t) phi(x/2^n), reduced through tau_alpha
/// for the power form and summed against the table otherwise.
SeriesValue phi_perp(const PhiSpec& phi, double t, double x_norm, double tol);

/// Picard iteration for g = 2 d_Z + 2^-alpha g(2t mod 1) on the uniform grid
/// t_j = j/grid_size, j = 0..grid_size. Exists as an independent oracle for
/// cross-validating tau_alpha, not as the production evaluator.
struct FixedPointTable {
    double alpha = 0.0;
    std::vector<double> t;
    std::vector<double> value;
    double sup_error_bound = 0.0;
    unsigned iterations = 0;
};

FixedPointTable tau_fixed_point(double alpha, unsigned grid_size, unsigned iterations);

/// ||u||^alpha as an exact rational when the norm/alpha combination allows it
/// (integer alpha with L1/Linf, even alpha with Euclidean, d = 1, or a
/// perfect-square Euclidean norm). Returns nullopt otherwise.
std::optional<Rational> norm_pow_exact(const std::vector<Rational>& u, unsigned alpha,
                                       NormKind norm);

double norm_real(const std::vector<Rational>& u, NormKind norm);

}  // namespace tabor
