#pragma once

// Generalized first-digit law: the partition of the positive reals into D
// rank cells per factor-F decade, the theoretical rank probabilities, and the
// sum-of-squares compliance error.

#include <cstdint>
#include <span>
#include <vector>

namespace genlaw {

/// The pair (F, D): scale factor F > 1 and bin count D >= 2.
class LawParams {
public:
    static constexpr double kMaxScale = 1e6;
    static constexpr int kMaxBins = 1'000'000;

    /// Throws std::domain_error unless 1 < scale <= 1e6 and 2 <= bins <= 1e6.
    LawParams(double scale, int bins);

    double scale() const noexcept { return scale_; }
    int bins() const noexcept { return bins_; }
    double log_scale() const noexcept { return log_scale_; }

    /// Left end of rank d's cell inside [1, F): 1 + (d-1)(F-1)/D.
    /// Accepts d = D+1, which returns F.
    double cell_lower(int d) const noexcept;

    friend bool operator==(const LawParams&, const LawParams&) = default;

private:
    double scale_;
    int bins_;
    double log_scale_;
};

/// L_{F,D}(d) = log_F[(1 + d(F-1)/D) / (1 + (d-1)(F-1)/D)].
double law_value(const LawParams& params, int d);

/// All D law values, index 0 holding rank 1.
std::vector<double> law_vector(const LawParams& params);

/// The rank d in 1..D whose cell contains x. Cells are half-open.
int rank(const LawParams& params, double x);

struct RankHistogram {
    LawParams params;
    std::vector<std::uint64_t> counts;  // counts[d-1] for rank d
    std::uint64_t n = 0;

    std::uint64_t count(int d) const { return counts.at(static_cast<std::size_t>(d - 1)); }
    std::vector<double> frequencies() const;

    /// Adds another histogram over the same params, e.g. from a partition of the data.
    RankHistogram& merge(const RankHistogram& other);
};

/// Throws std::domain_error on empty input or a non-positive / non-finite
/// entry; the message names the offending index.
RankHistogram histogram(const LawParams& params, std::span<const double> values);

/// Sum over d of (observed[d] - L(d))^2.
double ssd(const LawParams& params, std::span<const double> observed);

/// D * sum L(d)^2 - 1: the value of D * ssd for a sequence with equal counts per rank.
double flat_ssd(const LawParams& params);

/// S(F) = (F-1)^2 / (F (ln F)^2); the D -> infinity limit of D * sum L(d)^2.
double s_of_f(double scale);

struct LawBounds {
    double lower;
    double upper;
};

/// Bracket lower <= L(d) < upper from the mean-value estimate of the log ratio.
LawBounds law_bounds(const LawParams& params, int d);

}  // namespace genlaw
