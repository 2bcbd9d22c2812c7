#include "hoip/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "hoip/error.hpp"

namespace hoip {

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (auto [x, y] : points)
        if (x > 0.0 && y > 0.0) logs.emplace_back(std::log(x), std::log(y));
    if (logs.size() < 2)
        throw NumericError("power-law fit needs at least 2 positive points, got " +
                           std::to_string(logs.size()));

    double n = static_cast<double>(logs.size());
    double sx = 0.0, sy = 0.0;
    for (auto [lx, ly] : logs) {
        sx += lx;
        sy += ly;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto [lx, ly] : logs) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
        syy += (ly - my) * (ly - my);
    }
    if (sxx == 0.0) throw NumericError("power-law fit: all x values identical");
    double slope = sxy / sxx;
    double intercept = my - slope * mx;

    double ss_res = 0.0;
    for (auto [lx, ly] : logs) {
        double e = ly - (intercept + slope * lx);
        ss_res += e * e;
    }
    PowerLawFit fit;
    fit.exponent = -slope;
    fit.prefactor = std::exp(intercept);
    if (syy == 0.0) {
        fit.r_squared = 1.0;  // flat data, flat line: perfect (degenerate) fit
    } else {
        fit.r_squared = 1.0 - ss_res / syy;
        if (fit.r_squared < 0.0) fit.r_squared = 0.0;
        if (fit.r_squared > 1.0) fit.r_squared = 1.0;
    }
    fit.degenerate = !(fit.exponent > 0.0);
    return fit;
}

PowerLawFit fit_power_law(const PersistenceHistogram& hist) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(hist.counts.size());
    for (const auto& [p, c] : hist.counts)
        if (c > 0) pts.emplace_back(static_cast<double>(p), static_cast<double>(c));
    return fit_power_law(pts);
}

std::array<std::optional<double>, 3> relative_by_size(
    const std::array<std::optional<double>, 3>& by_size) {
    if (!by_size[0] || *by_size[0] == 0.0)
        throw NumericError("relative_by_size: size-2 value missing or zero");
    std::array<std::optional<double>, 3> out;
    for (std::size_t i = 0; i < 3; ++i)
        if (by_size[i]) out[i] = *by_size[i] / *by_size[0];
    return out;
}

double pearson_cc(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson_cc: length mismatch");
    std::size_t n = x.size();
    if (n < 2) throw NumericError("pearson_cc: need at least 2 points");
    auto constant = [](std::span<const double> v) {
        auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        return *mn == *mx;
    };
    if (constant(x) || constant(y)) throw NumericError("pearson_cc: constant input");
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

bool integer_valued(std::span<const double> v) {
    for (double x : v)
        if (std::floor(x) != x || std::abs(x) > 9.007199254740992e15) return false;
    return true;
}

// Category labels: native values for integer-valued input, rank-based
// equal-frequency bins otherwise. Ties always share a label.
std::vector<int> discretize(std::span<const double> v, int bins) {
    std::size_t n = v.size();
    std::vector<int> labels(n, 0);
    if (integer_valued(v)) {
        std::vector<double> distinct(v.begin(), v.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t i = 0; i < n; ++i) {
            auto it = std::lower_bound(distinct.begin(), distinct.end(), v[i]);
            labels[i] = static_cast<int>(it - distinct.begin());
        }
        return labels;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && v[order[j]] == v[order[i]]) ++j;
        // Whole tie-group gets the bin of its first rank.
        int bin = static_cast<int>(i * static_cast<std::size_t>(bins) / n);
        for (std::size_t t = i; t < j; ++t) labels[order[t]] = bin;
        i = j;
    }
    return labels;
}

double entropy_of(const std::vector<int>& labels) {
    std::unordered_map<int, std::int64_t> hist;
    for (int l : labels) ++hist[l];
    double n = static_cast<double>(labels.size());
    double h = 0.0;
    for (const auto& [l, c] : hist) {
        double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h < 0.0 ? 0.0 : h;
}

}  // namespace

double normalized_mi(std::span<const double> x, std::span<const double> y,
                     const NmiOptions& opt) {
    if (x.size() != y.size()) throw std::invalid_argument("normalized_mi: length mismatch");
    if (x.size() < 2) throw NumericError("normalized_mi: need at least 2 points");
    if (opt.bins < 2) throw ConfigError("normalized_mi: bins must be >= 2");
    std::vector<int> lx = discretize(x, opt.bins);
    std::vector<int> ly = discretize(y, opt.bins);
    double hx = entropy_of(lx);
    double hy = entropy_of(ly);
    if (hx == 0.0 || hy == 0.0) return 0.0;

    std::unordered_map<std::int64_t, std::int64_t> joint;
    for (std::size_t i = 0; i < lx.size(); ++i)
        ++joint[(static_cast<std::int64_t>(lx[i]) << 32) | static_cast<std::uint32_t>(ly[i])];
    std::unordered_map<int, std::int64_t> cx, cy;
    for (int l : lx) ++cx[l];
    for (int l : ly) ++cy[l];
    double n = static_cast<double>(lx.size());
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        int a = static_cast<int>(key >> 32);
        int b = static_cast<int>(key & 0xffffffff);
        double pxy = static_cast<double>(c) / n;
        double px = static_cast<double>(cx[a]) / n;
        double py = static_cast<double>(cy[b]) / n;
        mi += pxy * std::log(pxy / (px * py));
    }
    if (mi < 0.0) mi = 0.0;
    double denom = 0.0;
    switch (opt.norm) {
        case NmiOptions::Norm::Sqrt: denom = std::sqrt(hx * hy); break;
        case NmiOptions::Norm::Min: denom = std::min(hx, hy); break;
        case NmiOptions::Norm::Mean: denom = 0.5 * (hx + hy); break;
    }
    if (denom == 0.0) return 0.0;
    double out = mi / denom;
    return out > 1.0 ? 1.0 : out;
}

}  // namespace hoip
