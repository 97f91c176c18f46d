#include "bgchaos/chaos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bgchaos/errors.hpp"
#include "bgchaos/io.hpp"
#include "bgchaos/rng.hpp"

namespace bgchaos {

namespace {

double cumulant_prefactor(int p) {
    double f = std::ldexp(1.0, p - 1);
    for (int i = 2; i < p; ++i) f *= i;
    return f;
}

void check_order(int p) {
    if (p < 2 || p > 6) fail(Errc::OrderOutOfRange, "chaos cumulant order must be in 2..6");
}

double power_sum(const std::vector<double>& lambdas, int p, bool absolute) {
    double s = 0.0;
    for (double l : lambdas) {
        double t = 1.0;
        for (int k = 0; k < p; ++k) t *= l;
        s += absolute ? std::fabs(t) : t;
    }
    return s;
}

}  // namespace

ChaosKernel::ChaosKernel(Eigen::MatrixXd coeffs) : c_(std::move(coeffs)) {
    if (c_.rows() == 0 || c_.cols() == 0) fail(Errc::EmptyInput, "kernel has no entries");
    if (c_.rows() != c_.cols()) fail(Errc::DimMismatch, "kernel must be square");
    if (!c_.allFinite()) fail(Errc::DomainError, "kernel has non-finite entries");
    const Eigen::Index n = c_.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::fabs(c_(i, j) - c_(j, i)) > 1e-12)
                fail(Errc::NotSymmetric, "kernel entries (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") differ by more than 1e-12");
}

ChaosKernel ChaosKernel::diagonal(const std::vector<double>& d) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    return ChaosKernel(Eigen::MatrixXd(v.asDiagonal()));
}

ChaosKernel ChaosKernel::zero(int n) { return ChaosKernel(Eigen::MatrixXd::Zero(n, n)); }

void sort_spectrum(std::vector<double>& lambdas) {
    std::stable_sort(lambdas.begin(), lambdas.end(), [](double a, double b) {
        const double fa = std::fabs(a), fb = std::fabs(b);
        if (fa != fb) return fa > fb;
        return a > b;
    });
}

Spectrum spectrum(const ChaosKernel& kernel) {
    // Solve on the exactly symmetrized matrix so tiny asymmetries cannot leak in.
    const Eigen::MatrixXd sym = 0.5 * (kernel.coeffs() + kernel.coeffs().transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(Errc::EigenFailure, "symmetric eigensolver did not converge");
    Spectrum s;
    s.lambdas.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    sort_spectrum(s.lambdas);
    return s;
}

ChaosKernel contract(const ChaosKernel& kernel, int p) {
    if (p < 1) fail(Errc::OrderOutOfRange, "contraction order must be >= 1");
    Eigen::MatrixXd r = kernel.coeffs();
    for (int k = 1; k < p; ++k) r = r * kernel.coeffs();
    // Products of symmetric matrices drift by rounding; restore exact symmetry.
    return ChaosKernel(Eigen::MatrixXd(0.5 * (r + r.transpose())));
}

double inner(const ChaosKernel& a, const ChaosKernel& b) {
    if (a.dim() != b.dim()) fail(Errc::DimMismatch, "inner product of kernels with different dimensions");
    return (a.coeffs().array() * b.coeffs().array()).sum();
}

double chaos_cumulant(const Spectrum& spec, int p) {
    check_order(p);
    return cumulant_prefactor(p) * power_sum(spec.lambdas, p, false);
}

double chaos_cumulant(const ChaosKernel& kernel, int p) {
    check_order(p);
    const Spectrum s = spectrum(kernel);
    const double by_trace = chaos_cumulant(s, p);
    const double by_contraction = cumulant_prefactor(p) * inner(contract(kernel, p - 1), kernel);
    const double scale = std::max({std::fabs(by_trace), std::fabs(by_contraction),
                                   cumulant_prefactor(p) * power_sum(s.lambdas, p, true)});
    if (std::fabs(by_trace - by_contraction) > 1e-9 * scale)
        fail(Errc::NumericalInconsistency, "trace and contraction cumulant routes disagree at order " +
                                               std::to_string(p));
    return by_trace;
}

CumulantVector chaos_cumulants(const Spectrum& spec) {
    CumulantVector c;
    c[1] = 0.0;
    for (int p = 2; p <= 6; ++p) c[p] = chaos_cumulant(spec, p);
    return c;
}

CumulantVector chaos_cumulants(const ChaosKernel& kernel) {
    CumulantVector c;
    c[1] = 0.0;
    for (int p = 2; p <= 6; ++p) c[p] = chaos_cumulant(kernel, p);
    return c;
}

ChaosSample sample_chaos(const Spectrum& spec, std::size_t n, std::uint64_t seed) {
    const auto d = static_cast<Eigen::Index>(spec.lambdas.size());
    Rng rng(seed);
    ChaosSample out;
    out.samples.resize(n);
    out.z_paths.resize(static_cast<Eigen::Index>(n), d);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double z = rng.normal();
            out.z_paths(static_cast<Eigen::Index>(i), j) = z;
            acc += spec.lambdas[static_cast<std::size_t>(j)] * (z * z - 1.0);
        }
        out.samples[i] = acc;
    }
    return out;
}

std::vector<double> sample_chaos_values(const Spectrum& spec, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) {
        double acc = 0.0;
        for (double l : spec.lambdas) {
            const double z = rng.normal();
            acc += l * (z * z - 1.0);
        }
        x = acc;
    }
    return out;
}

ChaosKernel read_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ConfigInvalid, "cannot open kernel file '" + path + "'");
    long n = 0;
    if (!(in >> n) || n < 1) fail(Errc::ConfigInvalid, "kernel file '" + path + "' must start with N >= 1");
    Eigen::MatrixXd m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (!(in >> m(i, j)))
                fail(Errc::ConfigInvalid, "kernel file '" + path + "' has fewer than N*N entries");
    std::string extra;
    if (in >> extra) fail(Errc::ConfigInvalid, "kernel file '" + path + "' has trailing data");
    return ChaosKernel(std::move(m));
}

void write_kernel(const std::string& path, const ChaosKernel& kernel) {
    std::ostringstream os;
    os.precision(17);
    os << kernel.dim() << '\n';
    for (int i = 0; i < kernel.dim(); ++i) {
        for (int j = 0; j < kernel.dim(); ++j) os << (j ? " " : "") << kernel.coeffs()(i, j);
        os << '\n';
    }
    write_file_atomic(path, os.str());
}

}  // namespace bgchaos
