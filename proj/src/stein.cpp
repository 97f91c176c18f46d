#include "bgchaos/stein.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bgchaos/errors.hpp"
#include "bgchaos/io.hpp"

namespace bgchaos {

namespace {

using cplx = std::complex<double>;

bool power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        buf_ = fftw_alloc_complex(n);
        fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    cplx* data() { return reinterpret_cast<cplx*>(buf_); }
    void forward() { fftw_execute(fwd_); }
    // Unnormalized; caller divides by n.
    void backward() { fftw_execute(bwd_); }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    fftw_complex* buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double window(const SteinGrid& g, std::size_t i) {
    const double w = g.taper * static_cast<double>(g.n_x - 1);
    if (w <= 0.0) return 1.0;
    const double d = static_cast<double>(std::min(i, g.n_x - 1 - i));
    return smooth_step(d / w);
}

// Angular frequency of DFT bin k on a period of n_freq * dx.
double freq(const SteinGrid& g, std::size_t k) {
    const auto m = static_cast<long long>(g.n_freq);
    long long kk = static_cast<long long>(k);
    if (kk >= m / 2) kk -= m;
    return 2.0 * std::numbers::pi * static_cast<double>(kk) / (static_cast<double>(m) * g.dx());
}

// Spectrum of the tapered, zero-padded grid function.
std::vector<cplx> spectrum_of(const SteinGrid& g, const GridFunction& h, Fft& fft) {
    if (h.size() != g.n_x) fail(Errc::DimMismatch, "grid function length differs from n_x");
    cplx* b = fft.data();
    for (std::size_t i = 0; i < g.n_freq; ++i) b[i] = (i < g.n_x) ? cplx(h[i] * window(g, i), 0.0) : cplx(0.0, 0.0);
    fft.forward();
    std::vector<cplx> H(b, b + g.n_freq);
    H[g.n_freq / 2] = 0.0;
    double total = 0.0, high = 0.0;
    for (std::size_t k = 0; k < g.n_freq; ++k) {
        const double e = std::norm(H[k]);
        total += e;
        const std::size_t kk = std::min(k, g.n_freq - k);
        if (kk > g.n_freq / 4) high += e;
    }
    if (total > 0.0 && high / total > 1e-6)
        fail(Errc::GridTooCoarse, "spectral energy above half Nyquist exceeds 1e-6 of the total");
    return H;
}

// Periodic 6-point Lagrange interpolation at fractional index q.
double lagrange6(const std::vector<double>& v, double q) {
    const auto n = static_cast<long long>(v.size());
    const double fl = std::floor(q);
    const auto i = static_cast<long long>(fl);
    auto at = [&](long long j) { return v[static_cast<std::size_t>(((j % n) + n) % n)]; };
    const double r = q - fl;
    if (r == 0.0) return at(i);
    double s = 0.0;
    for (int m = -2; m <= 3; ++m) {
        double w = 1.0;
        for (int k = -2; k <= 3; ++k)
            if (k != m) w *= (r - k) / static_cast<double>(m - k);
        s += w * at(i + m);
    }
    return s;
}

// Real part of IFFT(H * mult(y)) as a periodic array over the padded grid.
template <class Mult>
std::vector<double> apply_multiplier(const SteinGrid& g, const std::vector<cplx>& H, Fft& fft, Mult mult) {
    cplx* b = fft.data();
    for (std::size_t k = 0; k < g.n_freq; ++k) b[k] = H[k] * mult(freq(g, k));
    b[g.n_freq / 2] = 0.0;
    fft.backward();
    std::vector<double> out(g.n_freq);
    const double inv = 1.0 / static_cast<double>(g.n_freq);
    for (std::size_t k = 0; k < g.n_freq; ++k) out[k] = b[k].real() * inv;
    return out;
}

GridFunction solve_with(const BGParams& params, const std::vector<cplx>& H, const SteinGrid& g, Fft& fft,
                        const std::vector<double>& t_nodes, const std::vector<double>& t_weights) {
    GridFunction f(g.n_x, 0.0);
    const double dx = g.dx();
    for (std::size_t k = 0; k < t_nodes.size(); ++k) {
        const double t = t_nodes[k];
        const double s = std::exp(-t);
        const auto d = apply_multiplier(g, H, fft, [&](double y) { return cplx(0.0, y) * phi_t(params, t, y); });
        for (std::size_t i = 0; i < g.n_x; ++i) f[i] -= t_weights[k] * lagrange6(d, (g.x(i) * s - g.x_min) / dx);
    }
    return f;
}

void legendre_t_nodes(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    const Quadrature q = gauss_legendre(n);
    nodes.resize(q.nodes.size());
    weights.resize(q.nodes.size());
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        // s = e^{-t} on (0,1); ds = e^{-t} dt absorbs the exponential factor.
        const double s = 0.5 * (q.nodes[k] + 1.0);
        nodes[k] = -std::log(s);
        weights[k] = 0.5 * q.weights[k];
    }
}

}  // namespace

SteinGrid SteinGrid::make(const BGParams& params, std::size_t n_x, int n_t) {
    bgchaos::validate(params);
    const double mu = params.mean();
    const double sd = std::sqrt(cumulant(params, 2));
    const double w = std::max(12.0 * sd, 40.0 / std::min(params.alpha1, params.alpha2));
    SteinGrid g;
    g.x_min = std::min(0.0, mu) - w;
    g.x_max = std::max(0.0, mu) + w;
    g.n_x = n_x;
    g.n_freq = 2 * n_x;
    legendre_t_nodes(n_t, g.t_nodes, g.t_weights);
    g.validate(params);
    return g;
}

void SteinGrid::validate(const BGParams& params) const {
    if (n_x < 256 || !power_of_two(n_x)) fail(Errc::ConfigInvalid, "n_x must be a power of two >= 256");
    if (n_freq < n_x || !power_of_two(n_freq)) fail(Errc::ConfigInvalid, "n_freq must be a power of two >= n_x");
    if (!(x_min < 0.0 && x_max > 0.0)) fail(Errc::ConfigInvalid, "grid must contain 0 in its interior");
    const double mu = params.mean(), sd = std::sqrt(cumulant(params, 2));
    if (x_min > mu - 12.0 * sd || x_max < mu + 12.0 * sd)
        fail(Errc::ConfigInvalid, "grid must cover mean +/- 12 standard deviations");
    if (t_nodes.empty() || t_nodes.size() != t_weights.size())
        fail(Errc::ConfigInvalid, "time quadrature nodes and weights must be non-empty and paired");
    if (!(taper >= 0.0 && taper < 0.25)) fail(Errc::ConfigInvalid, "taper fraction must be in [0, 0.25)");
}

GridFunction sample_on_grid(const SteinGrid& grid, const TestFunction& h) {
    GridFunction v(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) v[i] = h(grid.x(i));
    return v;
}

GridFunction apply_taper(const SteinGrid& grid, const GridFunction& h_values) {
    if (h_values.size() != grid.n_x) fail(Errc::DimMismatch, "grid function length differs from n_x");
    GridFunction out(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) out[i] = h_values[i] * window(grid, i);
    return out;
}

cplx phi_t(const BGParams& params, double t, double y) {
    if (!(t >= 0.0) || !std::isfinite(t)) fail(Errc::DomainError, "t must be finite and >= 0");
    if (t == 0.0 || y == 0.0) return 1.0;
    return std::exp(log_char_fn(params, y) - log_char_fn(params, std::exp(-t) * y));
}

GridFunction semigroup_apply(const BGParams& params, double t, const GridFunction& h_values, const SteinGrid& grid) {
    grid.validate(params);
    if (!(t >= 0.0) || !std::isfinite(t)) fail(Errc::DomainError, "t must be finite and >= 0");
    Fft fft(grid.n_freq);
    const auto H = spectrum_of(grid, h_values, fft);
    const auto g = apply_multiplier(grid, H, fft, [&](double y) { return phi_t(params, t, y); });
    const double s = std::exp(-t);
    GridFunction out(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) out[i] = lagrange6(g, (grid.x(i) * s - grid.x_min) / grid.dx());
    return out;
}

GridFunction solve_stein(const BGParams& params, const TestFunction& h, const SteinGrid& grid) {
    grid.validate(params);
    Fft fft(grid.n_freq);
    const auto H = spectrum_of(grid, sample_on_grid(grid, h), fft);
    GridFunction f = solve_with(params, H, grid, fft, grid.t_nodes, grid.t_weights);

    std::vector<double> n2, w2;
    legendre_t_nodes(static_cast<int>(2 * grid.t_nodes.size()), n2, w2);
    const GridFunction f2 = solve_with(params, H, grid, fft, n2, w2);
    double diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) diff = std::max(diff, std::fabs(f[i] - f2[i]));
    if (diff > 1e-5) fail(Errc::QuadratureNotConverged, "doubling time nodes moved f_h by " + std::to_string(diff));
    return f;
}

double expected_value_spectral(const BGParams& params, const TestFunction& h, const SteinGrid& grid) {
    grid.validate(params);
    Fft fft(grid.n_freq);
    const auto H = spectrum_of(grid, sample_on_grid(grid, h), fft);
    const auto g = apply_multiplier(grid, H, fft, [&](double y) { return char_fn(params, y); });
    return lagrange6(g, -grid.x_min / grid.dx());
}

EstimatorReport expected_value_mc(const BGParams& params, const TestFunction& h, std::size_t n, std::uint64_t seed) {
    std::vector<double> x = sample(params, n, seed);
    for (auto& v : x) v = h(v);
    return mean_estimate(x);
}

double levy_integral(const BGParams& p, const std::function<double(double)>& f, double x, const Quadrature& lq) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t k = 0; k < lq.nodes.size(); ++k) {
        pos += lq.weights[k] * f(x + lq.nodes[k] / p.alpha1);
        neg += lq.weights[k] * f(x - lq.nodes[k] / p.alpha2);
    }
    return p.p1 / p.alpha1 * pos - p.p2 / p.alpha2 * neg;
}

double interpolate(const SteinGrid& grid, const GridFunction& values, double x) {
    if (values.size() != grid.n_x) fail(Errc::DimMismatch, "grid function length differs from n_x");
    if (x <= grid.x_min) return values.front();
    if (x >= grid.x_max) return values.back();
    const double q = (x - grid.x_min) / grid.dx();
    const double fl = std::floor(q);
    const auto n = static_cast<long long>(grid.n_x);
    // Shift the stencil inward near the ends so it stays on the grid.
    long long i0 = static_cast<long long>(fl) - 2;
    i0 = std::clamp(i0, 0LL, n - 6);
    const double r = q - static_cast<double>(i0);
    if (r == std::floor(r)) return values[static_cast<std::size_t>(i0 + static_cast<long long>(r))];
    double s = 0.0;
    for (int m = 0; m < 6; ++m) {
        double w = 1.0;
        for (int k = 0; k < 6; ++k)
            if (k != m) w *= (r - k) / static_cast<double>(m - k);
        s += w * values[static_cast<std::size_t>(i0 + m)];
    }
    return s;
}

double verify_solution(const BGParams& params, const GridFunction& f_h, const TestFunction& h, const SteinGrid& grid) {
    grid.validate(params);
    if (f_h.size() != grid.n_x) fail(Errc::DimMismatch, "grid function length differs from n_x");
    const double eh = (h.kind() == TestFunction::Kind::Zero) ? 0.0 : expected_value_spectral(params, h, grid);
    const Quadrature lq = gauss_laguerre(64);
    const auto f = [&](double x) { return interpolate(grid, f_h, x); };
    double worst = 0.0;
    for (std::size_t i = grid.central_lo(); i < grid.central_hi(); ++i) {
        const double x = grid.x(i);
        const double r = -x * f_h[i] + levy_integral(params, f, x, lq) - h(x) + eh;
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

DerivativeNorms derivative_norms(const GridFunction& f, const SteinGrid& grid) {
    if (f.size() != grid.n_x) fail(Errc::DimMismatch, "grid function length differs from n_x");
    const double dx = grid.dx();
    DerivativeNorms n;
    for (std::size_t i = grid.central_lo(); i < grid.central_hi(); ++i) {
        n.f = std::max(n.f, std::fabs(f[i]));
        n.f1 = std::max(n.f1, std::fabs((f[i + 1] - f[i - 1]) / (2.0 * dx)));
        n.f2 = std::max(n.f2, std::fabs((f[i + 1] - 2.0 * f[i] + f[i - 1]) / (dx * dx)));
    }
    return n;
}

double generator_apply(const BGParams& params, const TestFunction& h, double x, const Quadrature& lq) {
    return -x * h.deriv(1, x) + levy_integral(params, [&](double u) { return h.deriv(1, u); }, x, lq);
}

std::vector<EstimatorReport> stein_residuals(const BGParams& params, std::size_t n_samples, std::uint64_t seed,
                                             const std::vector<std::function<double(double)>>& fs,
                                             int laguerre_nodes) {
    if (n_samples < 2) fail(Errc::TooFewSamples, "Stein residual needs at least 2 samples");
    if (laguerre_nodes < 64) fail(Errc::OrderOutOfRange, "Stein residual uses at least 64 Laguerre nodes");
    const Quadrature lq = gauss_laguerre(laguerre_nodes);
    const std::vector<double> xs = sample(params, n_samples, seed);
    std::vector<EstimatorReport> out;
    std::vector<double> r(n_samples);
    for (const auto& f : fs) {
        for (std::size_t i = 0; i < n_samples; ++i) r[i] = xs[i] * f(xs[i]) - levy_integral(params, f, xs[i], lq);
        out.push_back(mean_estimate(r));
    }
    return out;
}

EstimatorReport stein_residual(const BGParams& params, std::size_t n_samples, std::uint64_t seed,
                               const std::function<double(double)>& f, int laguerre_nodes) {
    return stein_residuals(params, n_samples, seed, {f}, laguerre_nodes).front();
}

void write_grid_csv(const std::string& path, const SteinGrid& grid, const GridFunction& values) {
    std::vector<double> xs(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) xs[i] = grid.x(i);
    write_csv(path, {"x", "value"}, {xs, values});
}

}  // namespace bgchaos

namespace bgchaos {

std::vector<NamedFunction> identity_test_functions() {
    return {{"gauss", [](double x) { return std::exp(-0.5 * x * x); }},
            {"sin", [](double x) { return std::sin(x); }},
            {"cos_shift", [](double x) { return std::cos(0.5 * x + 1.0); }},
            {"tanh", [](double x) { return std::tanh(x); }},
            {"lorentz", [](double x) { return 1.0 / (1.0 + x * x); }}};
}

}  // namespace bgchaos
