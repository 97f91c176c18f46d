#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bgchaos/bg.hpp"

namespace bgchaos {

// Symmetric coefficient matrix of a second-chaos kernel in an orthonormal basis.
class ChaosKernel {
public:
    ChaosKernel() = default;
    // Throws NotSymmetric if |c_ij - c_ji| > 1e-12 anywhere, EmptyInput if 0x0.
    explicit ChaosKernel(Eigen::MatrixXd coeffs);

    static ChaosKernel diagonal(const std::vector<double>& d);
    static ChaosKernel zero(int n);

    int dim() const { return static_cast<int>(c_.rows()); }
    const Eigen::MatrixXd& coeffs() const { return c_; }

private:
    Eigen::MatrixXd c_;
};

// Eigenvalues sorted by descending |lambda|, positive first on ties.
struct Spectrum {
    std::vector<double> lambdas;
};

void sort_spectrum(std::vector<double>& lambdas);

Spectrum spectrum(const ChaosKernel& kernel);

// Iterated 1-contraction of order p; in a finite basis this is the matrix power.
ChaosKernel contract(const ChaosKernel& kernel, int p);

double inner(const ChaosKernel& a, const ChaosKernel& b);

// Computes both the spectral trace-of-power and contraction inner-product forms
// and throws NumericalInconsistency when they disagree beyond 1e-9 relative.
double chaos_cumulant(const ChaosKernel& kernel, int p);
double chaos_cumulant(const Spectrum& spec, int p);

// kappa[1] = 0, kappa[2..6] from the spectrum.
CumulantVector chaos_cumulants(const Spectrum& spec);
CumulantVector chaos_cumulants(const ChaosKernel& kernel);

struct ChaosSample {
    std::vector<double> samples;
    Eigen::MatrixXd z_paths;  // n rows, dim columns
};

ChaosSample sample_chaos(const Spectrum& spec, std::size_t n, std::uint64_t seed);

// Same draws as sample_chaos(spec, n, seed).samples without keeping the paths.
std::vector<double> sample_chaos_values(const Spectrum& spec, std::size_t n, std::uint64_t seed);

// Kernel text format: first line N, then N rows of N reals.
ChaosKernel read_kernel(const std::string& path);
void write_kernel(const std::string& path, const ChaosKernel& kernel);

}  // namespace bgchaos
