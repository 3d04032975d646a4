#pragma once

// Order-robust accumulation and the statistics the simulator reports:
// compensated moment sums, Kolmogorov-Smirnov distances, and a binned
// plug-in mutual-information estimator with equal-mass bins.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace dirtymac {

// Neumaier compensated summation.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Running mean / variance over compensated sums of x and x^2.
class MomentAccumulator {
  public:
    void add(double x) {
        sum_.add(x);
        sumsq_.add(x * x);
        ++n_;
    }
    std::int64_t count() const { return n_; }
    double mean() const { return n_ ? sum_.value() / static_cast<double>(n_) : 0.0; }
    double variance() const {
        if (n_ == 0) return 0.0;
        const double m = mean();
        return sumsq_.value() / static_cast<double>(n_) - m * m;
    }
    double mean_square() const {
        return n_ ? sumsq_.value() / static_cast<double>(n_) : 0.0;
    }

  private:
    CompensatedSum sum_, sumsq_;
    std::int64_t n_ = 0;
};

// Pearson correlation of two streams.
class CorrelationAccumulator {
  public:
    void add(double x, double y) {
        sx_.add(x);
        sy_.add(y);
        sxx_.add(x * x);
        syy_.add(y * y);
        sxy_.add(x * y);
        ++n_;
    }
    double correlation() const {
        if (n_ == 0) return 0.0;
        const double n = static_cast<double>(n_);
        const double cov = sxy_.value() / n - (sx_.value() / n) * (sy_.value() / n);
        const double vx = sxx_.value() / n - (sx_.value() / n) * (sx_.value() / n);
        const double vy = syy_.value() / n - (sy_.value() / n) * (sy_.value() / n);
        if (vx <= 0.0 || vy <= 0.0) return 0.0;
        return cov / std::sqrt(vx * vy);
    }

  private:
    CompensatedSum sx_, sy_, sxx_, syy_, sxy_;
    std::int64_t n_ = 0;
};

// One-sample KS distance against the CDF values of the samples. `cdf` must
// be the model CDF evaluated pointwise; samples need not be sorted.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

inline double ks_uniform_cell(std::vector<double> samples, double cell) {
    if (cell <= 0.0) return 0.0;
    return ks_statistic(std::move(samples), [cell](double x) {
        return std::clamp((x + 0.5 * cell) / cell, 0.0, 1.0);
    });
}

// Two-sample KS distance. Ties advance both walks so that identical
// samples compare as distance zero.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

namespace detail {

// Equal-mass bin index per sample: rank-based, k bins, ties broken by
// sample order (values here are continuous so ties are negligible).
inline std::vector<std::uint32_t> equal_mass_bins(std::span<const double> x,
                                                  std::uint32_t k) {
    const std::size_t n = x.size();
    std::vector<std::uint32_t> order(n), bin(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t u, std::uint32_t v) { return x[u] < x[v]; });
    for (std::size_t r = 0; r < n; ++r)
        bin[order[r]] = static_cast<std::uint32_t>((r * k) / n);
    return bin;
}

}  // namespace detail

// Plug-in mutual information (bits) over a k-by-k equal-mass binning with
// the Miller-Madow bias correction.
inline double mutual_information_binned(std::span<const double> x,
                                        std::span<const double> y,
                                        std::uint32_t k = 64) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("mutual_information_binned: bad sample sizes");
    const std::size_t n = x.size();
    const auto bx = detail::equal_mass_bins(x, k);
    const auto by = detail::equal_mass_bins(y, k);
    std::vector<std::int64_t> joint(static_cast<std::size_t>(k) * k, 0);
    for (std::size_t i = 0; i < n; ++i) joint[bx[i] * k + by[i]]++;
    std::vector<std::int64_t> mx(k, 0), my(k, 0);
    for (std::uint32_t a = 0; a < k; ++a)
        for (std::uint32_t b = 0; b < k; ++b) {
            mx[a] += joint[a * k + b];
            my[b] += joint[a * k + b];
        }
    const double dn = static_cast<double>(n);
    CompensatedSum mi;
    std::int64_t occupied = 0;
    for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = 0; b < k; ++b) {
            const std::int64_t c = joint[a * k + b];
            if (c == 0) continue;
            ++occupied;
            const double pj = static_cast<double>(c) / dn;
            const double px = static_cast<double>(mx[a]) / dn;
            const double py = static_cast<double>(my[b]) / dn;
            mi.add(pj * std::log2(pj / (px * py)));
        }
    }
    std::int64_t kx = 0, ky = 0;
    for (std::uint32_t a = 0; a < k; ++a) {
        if (mx[a] > 0) ++kx;
        if (my[a] > 0) ++ky;
    }
    const double madow =
        static_cast<double>(kx + ky - occupied - 1) / (2.0 * dn * std::numbers::ln2);
    return mi.value() + madow;
}

}  // namespace dirtymac
