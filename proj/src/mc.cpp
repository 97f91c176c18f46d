#include "bgchaos/mc.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bgchaos/errors.hpp"

namespace bgchaos {

namespace {

// Central-moment cumulants; returns kappa[1..max_order].
std::array<double, 7> cumulants_of(std::span<const double> v, int max_order) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double m[7] = {0, 0, 0, 0, 0, 0, 0};
    for (double x : v) {
        const double d = x - mean;
        double p = d;
        for (int k = 2; k <= max_order; ++k) {
            p *= d;
            m[k] += p;
        }
    }
    for (int k = 2; k <= max_order; ++k) m[k] /= n;
    std::array<double, 7> c{};
    c[1] = mean;
    c[2] = m[2];
    if (max_order >= 3) c[3] = m[3];
    if (max_order >= 4) c[4] = m[4] - 3.0 * m[2] * m[2];
    if (max_order >= 5) c[5] = m[5] - 10.0 * m[3] * m[2];
    if (max_order >= 6) c[6] = m[6] - 15.0 * m[4] * m[2] - 10.0 * m[3] * m[3] + 30.0 * m[2] * m[2] * m[2];
    return c;
}

}  // namespace

void MCConfig::validate() const {
    if (n_batches < 8) fail(Errc::ConfigInvalid, "n_batches must be >= 8");
    if (n_samples == 0 || n_samples % static_cast<std::size_t>(n_batches) != 0)
        fail(Errc::ConfigInvalid, "n_samples must be a positive multiple of n_batches");
}

nlohmann::ordered_json EstimatorReport::to_json() const {
    nlohmann::ordered_json j;
    j["estimate"] = estimate;
    j["se"] = se;
    j["n"] = n;
    if (!label.empty()) j["label"] = label;
    return j;
}

CumulantVector sample_cumulants(std::span<const double> samples, int max_order, int n_batches) {
    if (max_order < 2 || max_order > 6) fail(Errc::OrderOutOfRange, "max_order must be in 2..6");
    if (samples.empty()) fail(Errc::EmptyInput, "no samples");
    if (samples.size() < 1000u * static_cast<std::size_t>(max_order))
        fail(Errc::TooFewSamples, "need at least 1000*max_order samples");
    MCConfig{samples.size(), 0, n_batches}.validate();

    CumulantVector out;
    out.kappa = cumulants_of(samples, max_order);
    const std::size_t bs = samples.size() / static_cast<std::size_t>(n_batches);
    std::array<double, 7> s1{}, s2{};
    for (int b = 0; b < n_batches; ++b) {
        const auto c = cumulants_of(samples.subspan(static_cast<std::size_t>(b) * bs, bs), max_order);
        for (int j = 1; j <= max_order; ++j) {
            s1[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j)];
            s2[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
        }
    }
    std::array<double, 7> se{};
    const double B = n_batches;
    for (int j = 1; j <= max_order; ++j) {
        const auto u = static_cast<std::size_t>(j);
        const double mean = s1[u] / B;
        const double var = std::max(0.0, (s2[u] - B * mean * mean) / (B - 1.0));
        se[u] = std::sqrt(var / B);
    }
    out.se = se;
    return out;
}

double wasserstein1_empirical(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) fail(Errc::EmptyInput, "W1 needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x.size() == y.size()) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] - y[i]);
        return s / static_cast<double>(x.size());
    }
    // Unequal sizes: integrate |F_a - F_b| over the merged breakpoints.
    const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double prev = std::min(x[0], y[0]), s = 0.0;
    while (i < x.size() || j < y.size()) {
        const double next = (j == y.size() || (i < x.size() && x[i] <= y[j])) ? x[i] : y[j];
        s += std::fabs(i / na - j / nb) * (next - prev);
        prev = next;
        while (i < x.size() && x[i] == next) ++i;
        while (j < y.size() && y[j] == next) ++j;
    }
    return s;
}

EstimatorReport mean_estimate(std::span<const double> v) {
    if (v.empty()) fail(Errc::EmptyInput, "no samples");
    const double n = static_cast<double>(v.size());
    double m = 0.0;
    for (double x : v) m += x;
    m /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    EstimatorReport r;
    r.estimate = m;
    r.se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    r.n = v.size();
    return r;
}

EstimatorReport smooth_w3_lower_bound(std::span<const double> a, std::span<const double> b,
                                      const std::vector<TestFunction>& dictionary) {
    if (dictionary.empty()) fail(Errc::EmptyDictionary, "dictionary is empty");
    if (a.empty() || b.empty()) fail(Errc::EmptyInput, "dictionary bound needs two non-empty samples");
    EstimatorReport best;
    best.estimate = -1.0;
    std::vector<double> ha(a.size()), hb(b.size());
    for (const auto& h : dictionary) {
        for (std::size_t i = 0; i < a.size(); ++i) ha[i] = h(a[i]);
        for (std::size_t i = 0; i < b.size(); ++i) hb[i] = h(b[i]);
        const EstimatorReport ea = mean_estimate(ha), eb = mean_estimate(hb);
        const double d = std::fabs(ea.estimate - eb.estimate);
        if (d > best.estimate) {
            best.estimate = d;
            best.se = std::sqrt(ea.se * ea.se + eb.se * eb.se);
            best.label = h.name();
        }
    }
    best.n = std::min(a.size(), b.size());
    return best;
}

Quadrature gauss_laguerre(int n) {
    if (n < 1 || n > 256) fail(Errc::OrderOutOfRange, "Gauss-Laguerre order must be in 1..256");
    // Golub-Welsch on the Laguerre Jacobi matrix, then Newton polish of each node.
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k) sub(k - 1) = k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(Errc::EigenFailure, "Laguerre Jacobi matrix did not converge");

    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    auto eval = [n](double x, double& ln, double& ln1) {
        // L_n(x) and L_{n+1}(x) by three-term recurrence.
        double p0 = 1.0, p1 = 1.0 - x;
        if (n == 0) {
            ln = p0;
            ln1 = p1;
            return;
        }
        for (int k = 1; k <= n; ++k) {
            const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        ln = p0;
        ln1 = p1;
    };
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        double ln = 0.0, ln1 = 0.0;
        for (int it = 0; it < 4; ++it) {
            eval(x, ln, ln1);
            // x L_n'(x) = n L_n(x) - n L_{n-1}(x), and L_{n-1} follows from the recurrence.
            const double lnm1 = ((2.0 * n + 1.0 - x) * ln - (n + 1.0) * ln1) / n;
            const double dl = n * (ln - lnm1) / x;
            if (dl == 0.0 || !std::isfinite(dl)) break;
            const double step = ln / dl;
            x -= step;
            if (std::fabs(step) <= 1e-16 * x) break;
        }
        eval(x, ln, ln1);
        const double lw = std::log(x) - 2.0 * std::log(n + 1.0) - 2.0 * std::log(std::fabs(ln1));
        q.nodes[static_cast<std::size_t>(i)] = x;
        q.weights[static_cast<std::size_t>(i)] = std::exp(lw);
    }
    return q;
}

Quadrature gauss_legendre(int n) {
    if (n < 1 || n > 1024) fail(Errc::OrderOutOfRange, "Gauss-Legendre order must be in 1..1024");
    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pnm1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double step = pn / dp;
            x -= step;
            if (std::fabs(step) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double pn = (n == 1) ? x : p1, pnm1 = (n == 1) ? 1.0 : p0;
        dp = n * (x * pn - pnm1) / (x * x - 1.0);
        // Ascending order.
        q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        q.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

}  // namespace bgchaos
