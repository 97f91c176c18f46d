#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bgchaos/bg.hpp"
#include "bgchaos/mc.hpp"
#include "bgchaos/test_functions.hpp"

namespace bgchaos {

using GridFunction = std::vector<double>;

struct SteinGrid {
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t n_x = 4096;
    std::size_t n_freq = 8192;
    // Quadrature for int_0^inf e^{-t} G(t) dt: sum_k t_weights[k] * G(t_nodes[k]).
    std::vector<double> t_nodes;
    std::vector<double> t_weights;
    // Fraction of the range, at each end, over which h is smoothly tapered to 0.
    double taper = 0.125;

    // Range [min(0,mu) - W, max(0,mu) + W], W = max(12 sd, 40 / min(alpha1, alpha2)).
    static SteinGrid make(const BGParams& params, std::size_t n_x = 4096, int n_t = 64);

    double dx() const { return (x_max - x_min) / static_cast<double>(n_x - 1); }
    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
    // Index range [lo, hi) of the central half of the grid.
    std::size_t central_lo() const { return n_x / 4; }
    std::size_t central_hi() const { return n_x - n_x / 4; }

    // Throws ConfigInvalid on malformed grids or ranges not covering mean +/- 12 sd.
    void validate(const BGParams& params) const;
};

GridFunction sample_on_grid(const SteinGrid& grid, const TestFunction& h);

// The grid function the semigroup actually propagates: h times the edge taper.
GridFunction apply_taper(const SteinGrid& grid, const GridFunction& h_values);

// phi(y) / phi(e^{-t} y): characteristic function of X_(t).
std::complex<double> phi_t(const BGParams& params, double t, double y);

// (P_t h)(x) = E h(x e^{-t} + X_(t)).
GridFunction semigroup_apply(const BGParams& params, double t, const GridFunction& h_values, const SteinGrid& grid);

// f_h = -int_0^inf d/dx (P_t h) dt. Throws GridTooCoarse or QuadratureNotConverged.
GridFunction solve_stein(const BGParams& params, const TestFunction& h, const SteinGrid& grid);

// E h(X) from the spectral representation, and by Monte Carlo.
double expected_value_spectral(const BGParams& params, const TestFunction& h, const SteinGrid& grid);
EstimatorReport expected_value_mc(const BGParams& params, const TestFunction& h, std::size_t n, std::uint64_t seed);

// p1 int_0^inf f(x+u) e^{-a1 u} du - p2 int_0^inf f(x-u) e^{-a2 u} du by Gauss-Laguerre.
double levy_integral(const BGParams& params, const std::function<double(double)>& f, double x,
                     const Quadrature& laguerre);

// sup over the central half of |-x f + int f(x+u) u nu(du) - h(x) + E h(X)|.
double verify_solution(const BGParams& params, const GridFunction& f_h, const TestFunction& h, const SteinGrid& grid);

// 6-point Lagrange interpolation of grid values, nearest value outside the grid.
double interpolate(const SteinGrid& grid, const GridFunction& values, double x);

struct DerivativeNorms {
    double f = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
};

// Finite-difference sup norms over the central half of the grid.
DerivativeNorms derivative_norms(const GridFunction& f, const SteinGrid& grid);

// -x h'(x) + int h'(x+u) u nu(du).
double generator_apply(const BGParams& params, const TestFunction& h, double x, const Quadrature& laguerre);

// Monte-Carlo estimate of E[X f(X) - int f(X+u) u nu(du)] for each f, on shared draws.
std::vector<EstimatorReport> stein_residuals(const BGParams& params, std::size_t n_samples, std::uint64_t seed,
                                             const std::vector<std::function<double(double)>>& fs,
                                             int laguerre_nodes = 64);
EstimatorReport stein_residual(const BGParams& params, std::size_t n_samples, std::uint64_t seed,
                               const std::function<double(double)>& f, int laguerre_nodes = 64);

void write_grid_csv(const std::string& path, const SteinGrid& grid, const GridFunction& values);

}  // namespace bgchaos

namespace bgchaos {

struct NamedFunction {
    std::string name;
    std::function<double(double)> f;
};

// Bounded smooth functions for the Stein identity check.
std::vector<NamedFunction> identity_test_functions();

}  // namespace bgchaos
