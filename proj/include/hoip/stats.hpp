#ifndef HOIP_STATS_HPP
#define HOIP_STATS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hoip {

// Distribution of persistence values; zeros are kept apart because log-log
// fitting only sees persistence >= 1.
struct PersistenceHistogram {
    std::map<int, std::int64_t> counts;  // persistence >= 1 -> count
    std::int64_t zero_count = 0;
    std::int64_t total = 0;

    void add(int p, std::int64_t c = 1) {
        if (p == 0)
            zero_count += c;
        else
            counts[p] += c;
        total += c;
    }
};

// Least-squares line on (ln x, ln y); exponent = -slope of the fitted line,
// prefactor = exp(intercept). `degenerate` flags non-decaying fits (k <= 0).
struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    bool degenerate = false;
};

// Fit f(x) = a * x^-k through the positive (x, y) points. Throws Error (stats)
// with fewer than two usable points.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);
PowerLawFit fit_power_law(const PersistenceHistogram& hist);

// Values per HOI size k=2,3,4 divided by the size-2 value; missing sizes stay
// empty (the "-" convention). Requires a nonzero size-2 entry.
std::array<std::optional<double>, 3> relative_by_size(
    const std::array<std::optional<double>, 3>& by_size);

// Sample Pearson correlation. Throws NumericError on constant input.
double pearson_cc(std::span<const double> x, std::span<const double> y);

struct NmiOptions {
    int bins = 20;
    enum class Norm { Sqrt, Min, Mean } norm = Norm::Sqrt;
};

// Normalized mutual information in [0, 1]. Integer-valued variables keep
// their native values as categories; continuous variables are discretized
// into equal-frequency bins (rank-based, so any strictly monotone transform
// leaves the result unchanged). Zero marginal entropy yields 0.
double normalized_mi(std::span<const double> x, std::span<const double> y,
                     const NmiOptions& opt = {});

}  // namespace hoip

#endif
