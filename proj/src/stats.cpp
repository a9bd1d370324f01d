#include "cgofs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "cgofs/error.hpp"

namespace cgofs {

std::vector<double> rank_block(std::span<const double> scores, Direction direction) {
    const std::size_t k = scores.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return direction == Direction::Maximize ? scores[a] > scores[b] : scores[a] < scores[b];
    });
    std::vector<double> ranks(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i + 1;
        while (j < k && scores[order[j]] == scores[order[i]]) {
            ++j;
        }
        // Positions i..j-1 hold ranks i+1..j.
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) {
            ranks[order[t]] = mid;
        }
        i = j;
    }
    return ranks;
}

RankTable friedman(const Matrix& scores, Direction direction) {
    const std::size_t n = scores.rows();
    const std::size_t k = scores.cols();
    if (k < 2) {
        throw Error(ErrorCode::DegenerateInput, "Friedman ranking needs at least 2 treatments");
    }
    if (n < 2) {
        throw Error(ErrorCode::DegenerateInput, "Friedman ranking needs at least 2 blocks");
    }
    for (double v : scores.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::DegenerateInput, "scores must be finite");
        }
    }

    RankTable table;
    table.scores = scores;
    table.ranks = Matrix(n, k);
    table.mean_ranks.assign(k, 0.0);
    for (std::size_t b = 0; b < n; ++b) {
        const auto r = rank_block(scores.row(b), direction);
        std::copy(r.begin(), r.end(), table.ranks.row(b).begin());
        for (std::size_t j = 0; j < k; ++j) {
            table.mean_ranks[j] += r[j];
        }
    }
    for (double& r : table.mean_ranks) {
        r /= static_cast<double>(n);
    }

    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    double sum_sq = 0.0;
    for (double r : table.mean_ranks) {
        sum_sq += r * r;
    }
    const double stat = 12.0 * nd / (kd * (kd + 1.0)) * (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
    table.statistic = std::max(0.0, stat);
    const boost::math::chi_squared_distribution<double> chi2(kd - 1.0);
    table.p_value = boost::math::cdf(boost::math::complement(chi2, table.statistic));
    return table;
}

} // namespace cgofs
