#include "sykmagic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace sykmagic {

std::vector<double> MajoranaSpectrum::connected_values() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (double x : values) {
        const double a = std::abs(x);
        if (a >= kZeroThreshold && a < 1.0 - kUnitThreshold) out.push_back(x);
    }
    return out;
}

MajoranaSpectrum exact_spectrum(const PureState& psi, bool allow_large, int n_threads) {
    if (psi.n_sites > 8 && !allow_large)
        throw std::invalid_argument(
            "exact_spectrum: N > 8 costs 4^N/2 evaluations; pass allow_large to override");

    MajoranaSpectrum spec;
    spec.n_sites = psi.n_sites;
    spec.dim = std::uint64_t{1} << psi.n_sites;
    const std::uint64_t count = even_string_count(psi.n_sites);
    spec.n_odd_zero = count;  // d^2/2 odd strings vanish by superselection
    spec.values.assign(count, 0.0);

    if (n_threads <= 0)
        n_threads = static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, 16));

    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            spec.values[i] =
                expectation(MajoranaString(even_string_bits(i), psi.n_sites), psi);
        }
    };

    if (n_threads == 1 || count < 4096) {
        worker(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (count + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min(count, begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (double x : spec.values) {
        const double a = std::abs(x);
        if (a < kZeroThreshold) ++spec.n_even_zero;
        else if (a >= 1.0 - kUnitThreshold) ++spec.unit_peak;
    }
    return spec;
}

double moments_zeta(const MajoranaSpectrum& spec, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("moments_zeta: alpha must be >= 1");
    double sum = 0.0;
    for (double x : spec.values) sum += std::pow(x * x, alpha);
    return sum / static_cast<double>(spec.dim);
}

namespace {

// alpha -> 1 limit of (1/(1-alpha)) ln sum x^{2 alpha} / norm, for a
// normalized weight set: -sum (x^2/norm) ln(x^2).
double shannon_limit(const std::vector<double>& values, double norm,
                     bool skip_first_last) {
    double acc = 0.0;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (skip_first_last && (i == 0 || i + 1 == n)) continue;
        const double x2 = values[i] * values[i];
        if (x2 < kZeroThreshold * kZeroThreshold) continue;  // x^2 ln x^2 -> 0
        acc += x2 * std::log(x2);
    }
    return -acc / norm;
}

}  // namespace

SreResult sre(const MajoranaSpectrum& spec, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("sre: alpha must be >= 1");
    SreResult r;
    r.alpha = alpha;
    r.method = SreMethod::Exact;
    r.zeta = moments_zeta(spec, alpha);
    const double d = static_cast<double>(spec.dim);
    if (alpha == 1.0) {
        r.m = shannon_limit(spec.values, d, false);
    } else {
        r.m = std::log(r.zeta) / (1.0 - alpha);
    }
    r.m_filtered = (spec.dim > 2) ? filtered_sre(spec, alpha).m_filtered
                                  : std::numeric_limits<double>::quiet_NaN();
    return r;
}

SreResult filtered_sre(const MajoranaSpectrum& spec, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("filtered_sre: alpha must be >= 1");
    if (spec.dim <= 2)
        throw std::invalid_argument("filtered_sre: needs d > 2");
    SreResult r;
    r.alpha = alpha;
    r.method = SreMethod::Exact;
    r.zeta = moments_zeta(spec, alpha);
    const double dm2 = static_cast<double>(spec.dim) - 2.0;
    if (alpha == 1.0) {
        r.m_filtered = shannon_limit(spec.values, dm2, true);
        r.m = shannon_limit(spec.values, static_cast<double>(spec.dim), false);
    } else {
        // Index 0 is the identity, the last index is parity.
        double sum = 0.0;
        for (std::size_t i = 1; i + 1 < spec.values.size(); ++i)
            sum += std::pow(spec.values[i] * spec.values[i], alpha);
        r.m_filtered = std::log(sum / dm2) / (1.0 - alpha);
        r.m = std::log(r.zeta) / (1.0 - alpha);
    }
    return r;
}

HistogramResult histogram(const MajoranaSpectrum& spec, int bin_count) {
    if (bin_count != 0 && bin_count < 10)
        throw std::invalid_argument("histogram: bin_count must be 0 (auto) or >= 10");
    std::vector<double> xs = spec.connected_values();
    if (xs.empty())
        throw std::runtime_error("histogram: empty connected component");

    std::sort(xs.begin(), xs.end());
    const double lo = xs.front(), hi = xs.back();
    double width;
    int bins;
    if (bin_count > 0) {
        bins = bin_count;
        width = (hi - lo) / bins;
    } else {
        // Freedman-Diaconis rule.
        const std::size_t n = xs.size();
        const double q1 = xs[n / 4], q3 = xs[(3 * n) / 4];
        width = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(n));
        if (width <= 0) width = (hi - lo > 0) ? (hi - lo) / 10 : 1.0;
        bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    }
    if (width <= 0) {  // degenerate: all values identical
        width = 1.0;
        bins = 1;
    }

    HistogramResult h;
    h.bin_width = width;
    h.n_connected = xs.size();
    h.bin_centers.resize(bins);
    h.density.assign(bins, 0.0);
    const double d2 = static_cast<double>(spec.dim) * static_cast<double>(spec.dim);
    for (int b = 0; b < bins; ++b) h.bin_centers[b] = lo + (b + 0.5) * width;
    for (double x : xs) {
        int b = static_cast<int>((x - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        h.density[static_cast<std::size_t>(b)] += 1.0 / (d2 * width);
    }
    return h;
}

std::string to_string(DistributionFamily family) {
    return family == DistributionFamily::Gaussian ? "gaussian" : "laplace";
}

double gaussian_constrained_b(std::uint64_t d) {
    return 2.0 / (static_cast<double>(d) + 2.0);
}

double laplace_constrained_b(std::uint64_t d, std::uint64_t d0) {
    const double dd = static_cast<double>(d);
    const double denom = dd * dd - static_cast<double>(d0) - 2.0;
    return std::sqrt((dd - 2.0) / (2.0 * denom));
}

std::uint64_t laplace_model_d0(int n_sites) {
    const std::uint64_t d = std::uint64_t{1} << n_sites;
    return d * d - binomial(2 * n_sites, n_sites);
}

FitResult fit_connected(const MajoranaSpectrum& spec, DistributionFamily family) {
    const std::vector<double> xs = spec.connected_values();
    if (xs.size() < 100)
        throw std::runtime_error("fit_connected: fewer than 100 connected values");

    FitResult r;
    r.family = family;
    r.n_points = xs.size();
    const std::size_t n = xs.size();
    if (family == DistributionFamily::Gaussian) {
        double s2 = 0.0;
        for (double x : xs) s2 += x * x;
        r.b_fitted = s2 / static_cast<double>(n);  // variance, zero-mean model
        r.b_constrained = gaussian_constrained_b(spec.dim);
        r.d0_model = spec.dim * spec.dim / 2;
        r.log_likelihood = -0.5 * std::log(2.0 * M_PI * r.b_fitted) - 0.5;
    } else {
        double s1 = 0.0;
        for (double x : xs) s1 += std::abs(x);
        r.b_fitted = s1 / static_cast<double>(n);
        r.d0_model = laplace_model_d0(spec.n_sites);
        r.b_constrained = laplace_constrained_b(spec.dim, r.d0_model);
        r.log_likelihood = -std::log(2.0 * r.b_fitted) - 1.0;
    }
    return r;
}

void export_spectrum_csv(const MajoranaSpectrum& spec, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_spectrum_csv: cannot open " + path.string());
    f << "string_hex,x\n";
    char buf[64];
    for (std::uint64_t i = 0; i < spec.values.size(); ++i) {
        const MajoranaString m(even_string_bits(i), spec.n_sites);
        std::snprintf(buf, sizeof buf, "%.17g", spec.values[i]);
        f << m.to_hex() << ',' << buf << '\n';
    }
}

}  // namespace sykmagic
