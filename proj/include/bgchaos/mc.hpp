#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bgchaos/bg.hpp"
#include "bgchaos/test_functions.hpp"

namespace bgchaos {

struct MCConfig {
    std::size_t n_samples = 1000000;
    std::uint64_t seed = 0;
    int n_batches = 32;

    // Throws ConfigInvalid unless n_batches >= 8 and divides n_samples.
    void validate() const;
};

struct EstimatorReport {
    double estimate = 0.0;
    double se = 0.0;
    std::size_t n = 0;
    std::string label;

    nlohmann::ordered_json to_json() const;
};

// Cumulants kappa_1..kappa_max from central moments of the full sample; standard
// errors by batch means. Entries above max_order are left at zero.
CumulantVector sample_cumulants(std::span<const double> samples, int max_order, int n_batches = 32);

// Exact W1 between the two empirical laws.
double wasserstein1_empirical(std::span<const double> a, std::span<const double> b);

// max_h |mean_a h - mean_b h| over the dictionary, with the SE of the maximizer.
EstimatorReport smooth_w3_lower_bound(std::span<const double> a, std::span<const double> b,
                                      const std::vector<TestFunction>& dictionary);

// Sample mean with its iid standard error.
EstimatorReport mean_estimate(std::span<const double> v);

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Exact for int_0^inf e^{-x} p(x) dx, deg p <= 2n - 1; 1 <= n <= 256.
Quadrature gauss_laguerre(int n);

// Exact for int_{-1}^{1} p(x) dx, deg p <= 2n - 1; 1 <= n <= 1024.
Quadrature gauss_legendre(int n);

}  // namespace bgchaos
