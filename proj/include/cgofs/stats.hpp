#pragma once

#include <span>
#include <vector>

#include "cgofs/core.hpp"

namespace cgofs {

enum class Direction { Maximize, Minimize };

/// Friedman ranking of treatments (columns) over blocks (rows).
struct RankTable {
    Matrix scores;
    /// Per-block ranks, same shape as scores; 1 is best.
    Matrix ranks;
    std::vector<double> mean_ranks;
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Ranks of one block, 1 = best under `direction`, ties share the mean of
/// the ranks they span.
[[nodiscard]] std::vector<double> rank_block(std::span<const double> scores, Direction direction);

/// Mean ranks plus the chi-square statistic
///   12n / (k(k+1)) * (sum_j R_j^2 - k(k+1)^2/4)
/// over mean ranks R_j, with a chi-square(k-1) p-value.
///
/// Throws DegenerateInput for fewer than 2 treatments, fewer than 2 blocks,
/// or non-finite scores.
[[nodiscard]] RankTable friedman(const Matrix& scores, Direction direction);

} // namespace cgofs
