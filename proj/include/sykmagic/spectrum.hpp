#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sykmagic/majorana.hpp"

namespace sykmagic {

// Expectations below this magnitude count as exact zeros and are excluded
// from fits.
inline constexpr double kZeroThreshold = 1e-12;
// |x| this close to 1 belongs to the unit peak (identity/parity, and every
// nonzero value of a stabilizer state).
inline constexpr double kUnitThreshold = 1e-9;

// The multiset of x = <psi|mu(v)|psi> over every even-parity string, indexed
// by the even-string index (0 is the identity, the last entry is parity).
// Odd-parity strings are counted, never computed.
struct MajoranaSpectrum {
    int n_sites = 0;
    std::uint64_t dim = 0;  // d = 2^N
    std::vector<double> values;
    std::uint64_t n_odd_zero = 0;   // d^2/2
    std::uint64_t n_even_zero = 0;  // |x| < kZeroThreshold
    std::uint64_t unit_peak = 0;    // |x| within kUnitThreshold of 1

    // Connected component: even-parity values excluding the zero and unit
    // atoms; the object the Gaussian/Laplace ansatz describes.
    std::vector<double> connected_values() const;
};

// Enumerates every even-parity string expectation. Guarded at N <= 8 (the
// cost is 4^N/2 evaluations); pass allow_large to override. Enumeration is
// chunked over string-index ranges and deterministic for any thread count.
MajoranaSpectrum exact_spectrum(const PureState& psi, bool allow_large = false,
                                int n_threads = 0);

// zeta_alpha = sum_v x_v^{2 alpha} / d over all strings.
double moments_zeta(const MajoranaSpectrum& spec, double alpha);

enum class SreMethod { Exact, Sampled };

struct SreResult {
    double alpha = 2.0;
    double zeta = 0.0;        // direct moment zeta_alpha
    double m = 0.0;           // M_alpha
    double m_filtered = 0.0;  // filtered M~_alpha
    SreMethod method = SreMethod::Exact;
    std::optional<double> stderr_m;
    std::optional<double> stderr_m_filtered;
};

// M_alpha = ln(zeta_alpha)/(1-alpha) for alpha > 1; the alpha -> 1 limit is
// M_1 = -sum_v sigma_v ln(x_v^2) with sigma_v = x_v^2/d.
SreResult sre(const MajoranaSpectrum& spec, double alpha);

// Identity and parity dropped, normalization d-2; zero on stabilizer states
// for every alpha.
SreResult filtered_sre(const MajoranaSpectrum& spec, double alpha);

struct HistogramResult {
    std::vector<double> bin_centers;
    std::vector<double> density;  // in units of Pi(x): integral = n_connected/d^2
    double bin_width = 0.0;
    std::uint64_t n_connected = 0;
};

// Density histogram of the connected component. bin_count = 0 selects the
// Freedman-Diaconis rule; explicit counts must be >= 10.
HistogramResult histogram(const MajoranaSpectrum& spec, int bin_count = 0);

enum class DistributionFamily { Gaussian, Laplace };

std::string to_string(DistributionFamily family);

struct FitResult {
    DistributionFamily family = DistributionFamily::Gaussian;
    double b_fitted = 0.0;       // MLE scale: variance (gaussian) or mean |x| (laplace)
    double b_constrained = 0.0;  // scale fixed by the purity constraint
    double log_likelihood = 0.0; // per-sample mean at the MLE
    std::uint64_t d0_model = 0;  // zero count the ansatz assigns to the x=0 atom
    std::uint64_t n_points = 0;
};

// Maximum-likelihood scale on the connected nonzero values (>= 100 points
// required), with the purity-constrained prediction reported alongside:
// gaussian b = 2/(d+2); laplace b^2 = (d-2)/(2(d^2-D0-2)) with the
// free-fermion zero count D0 = d^2 - C(2N,N).
FitResult fit_connected(const MajoranaSpectrum& spec, DistributionFamily family);

double gaussian_constrained_b(std::uint64_t d);
double laplace_constrained_b(std::uint64_t d, std::uint64_t d0);
std::uint64_t laplace_model_d0(int n_sites);  // d^2 - C(2N, N)

// CSV with columns (string_hex, x) over all even-parity strings.
void export_spectrum_csv(const MajoranaSpectrum& spec, const std::filesystem::path& path);

}  // namespace sykmagic
