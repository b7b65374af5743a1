#pragma once

#include <cstdint>
#include <vector>

namespace wpaoi {

// Streaming mean/variance (Welford).
class running_stats {
public:
    void add(double x)
    {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct chi_square_result {
    double statistic = 0.0;
    std::int64_t dof = 0;
    double p_value = 1.0;
    std::int64_t cells = 0;
};

// Pearson goodness-of-fit of observed counts against cell probabilities.
// Cells with small expectation are merged into their neighbour (expected
// count >= 5), and the cell count is kept odd so the dof stays even and the
// p-value reduces to the integer-shape Q(dof/2, stat/2).
chi_square_result chi_square_gof(const std::vector<std::uint64_t>& observed,
                                 const std::vector<double>& cell_probs);

// 95% half-width from a set of replication means (normal approximation).
double ci95_half_width(const std::vector<double>& replication_means);

double mean_of(const std::vector<double>& v);

} // namespace wpaoi
