#pragma once

#include <functional>

#include "madtradeoff/grid.hpp"

namespace madt {

// Kernel on the real line with analytic first and second derivatives.
// Norm constants are computed once at construction and cached.
struct KernelSpec {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> deriv2;
    double support_radius = 1.0;
    double beta = 1.0;
    double l2_norm_sq = 0.0;   // integral of K^2
    double holder_norm = 0.0;  // ||K||_{C^beta(R)}

    double operator()(double x) const { return eval(x); }
};

// Smooth compactly supported bump, K(x) = exp(1 - 1/(1 - x^2)) on (-1,1),
// zero outside; K(0) = 1. beta must lie in (0, 2].
KernelSpec bump_kernel(double beta);

// largest integer strictly smaller than beta
int holder_floor(double beta);

// Grid estimate of the beta-Hölder norm: sup norms of grid derivatives by
// central differences plus the sup quotient over grid pairs. This is a
// lower estimate of the true norm; acceptance margins account for that.
// Supported for beta in (0, 2].
double holder_norm(const GridFunction& f, double beta);

struct FamilySpec {
    double beta = 1.0;
    double R = 1.0;
    double C = 1.0;
    double V = 0.0;     // R / ||K||_{C^beta(R)}
    double r_n = 0.0;   // (2/V)^{1/beta} (C/n)^{1/(2 beta + 1)}
    double theta = 0.0; // in [-1, 1]
    double x0 = 0.5;
};

FamilySpec make_family_spec(double beta, double R, double C,
                            const KernelSpec& kernel, double n,
                            double theta, double x0 = 0.5);

// f_theta(x) = theta V r_n^beta K((x - x0)/r_n) sampled at grid midpoints.
// Requires r_n <= 1; the error message carries the minimal n that fixes it.
GridFunction build_family_member(const FamilySpec& spec, const KernelSpec& kernel,
                                 std::size_t m);

struct HolderBallCheck {
    bool inside = false;
    double margin = 0.0;  // R - estimated norm
    double norm = 0.0;
};

HolderBallCheck check_in_holder_ball(const GridFunction& f, double beta, double R);

// adaptive Simpson quadrature, used for the kernel constants and as a
// general-purpose utility in tests
double integrate_adaptive(const std::function<double(double)>& f,
                          double lo, double hi, double tol = 1e-12);

} // namespace madt
