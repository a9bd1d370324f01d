#include <algorithm>
#include <cmath>
#include <vector>

#include "cgofs/metrics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cgofs;

namespace {

ConfusionMatrix random_matrix_cm(std::size_t n, RandomSource& rng) {
    std::vector<std::size_t> counts(n * n);
    for (auto& c : counts) {
        c = rng.index(4) == 0 ? 0 : rng.index(50);
    }
    counts[0] += 1;
    return ConfusionMatrix(n, counts);
}

} // namespace

TEST_CASE("confusion counts") {
    const std::vector<Label> truth{0, 0, 1, 1};
    const std::vector<Label> pred{0, 1, 1, 1};
    CHECK(confusion(truth, pred, 2) == ConfusionMatrix(2, {1, 1, 0, 2}));
    CHECK(confusion(truth, truth, 2) == ConfusionMatrix(2, {2, 0, 0, 2}));
}

TEST_CASE("confusion matches a tally loop on 1000 three-class samples") {
    RandomSource rng(1);
    std::vector<Label> truth(1000);
    std::vector<Label> pred(1000);
    for (std::size_t i = 0; i < 1000; ++i) {
        truth[i] = rng.index(3);
        pred[i] = rng.index(3);
    }
    std::size_t tally[3][3] = {};
    for (std::size_t i = 0; i < 1000; ++i) {
        ++tally[truth[i]][pred[i]];
    }
    const auto cm = confusion(truth, pred, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(cm(i, j) == tally[i][j]);
        }
    }
    CHECK(cm.total() == 1000);
}

TEST_CASE("confusion errors") {
    const std::vector<Label> a{0, 1};
    const std::vector<Label> b{0};
    CHECK_ERROR_CODE(confusion(a, b, 2), ErrorCode::LengthMismatch);
    CHECK_ERROR_CODE(confusion(std::vector<Label>{}, std::vector<Label>{}, 2), ErrorCode::LengthMismatch);
    CHECK_ERROR_CODE(confusion(a, std::vector<Label>{0, 2}, 2), ErrorCode::LabelOutOfRange);
}

TEST_CASE("binary report on [[50, 10], [5, 35]]") {
    const auto r = compute_report(ConfusionMatrix(2, {50, 10, 5, 35}));
    CHECK(r.averaging == Averaging::Binary);
    CHECK(r.precision == doctest::Approx(35.0 / 45.0));
    CHECK(r.recall == doctest::Approx(0.875));
    CHECK(r.sensitivity == r.recall);
    CHECK(r.specificity == doctest::Approx(50.0 / 60.0));
    CHECK(r.balanced_accuracy == doctest::Approx((0.875 + 50.0 / 60.0) / 2.0));
    CHECK(r.accuracy == doctest::Approx(0.85));
    const double p = 35.0 / 45.0;
    CHECK(r.f1 == doctest::Approx(2 * p * 0.875 / (p + 0.875)));
    REQUIRE(r.per_class.size() == 2);
    CHECK(r.per_class[1].tp == 35);
    CHECK(r.per_class[1].tn == 50);
    CHECK(r.per_class[1].fp == 10);
    CHECK(r.per_class[1].fn == 5);
    CHECK(r.per_class[0].recall == doctest::Approx(50.0 / 60.0));
}

TEST_CASE("perfect classifier scores 1 everywhere") {
    for (std::size_t n : {2u, 3u, 5u}) {
        ConfusionMatrix cm(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (int k = 0; k < 7; ++k) {
                cm.add(i, i);
            }
        }
        const auto r = compute_report(cm);
        CHECK(r.accuracy == 1.0);
        CHECK(r.precision == 1.0);
        CHECK(r.recall == 1.0);
        CHECK(r.f1 == 1.0);
        CHECK(r.specificity == 1.0);
        CHECK(r.balanced_accuracy == 1.0);
    }
}

TEST_CASE("a class that is never predicted has precision 0") {
    // Class 2 is never predicted and never occurs.
    const auto r = compute_report(ConfusionMatrix(3, {4, 1, 0, 2, 3, 0, 0, 0, 0}));
    CHECK(r.averaging == Averaging::Macro);
    CHECK(r.per_class[2].precision == 0.0);
    CHECK(r.per_class[2].recall == 0.0);
    CHECK(r.per_class[2].f1 == 0.0);
    CHECK(std::isfinite(r.precision));
}

TEST_CASE("macro averages agree with an independent per-class loop") {
    RandomSource rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng.index(4);
        const auto cm = random_matrix_cm(n, rng);
        double total = 0.0;
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                total += static_cast<double>(cm(i, j));
            }
            trace += static_cast<double>(cm(i, i));
        }
        double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0, s_sum = 0.0, b_sum = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            double tp = static_cast<double>(cm(c, c));
            double row = 0.0;
            double col = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                row += static_cast<double>(cm(c, k));
                col += static_cast<double>(cm(k, c));
            }
            const double fn = row - tp;
            const double fp = col - tp;
            const double tn = total - tp - fn - fp;
            const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
            const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
            const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
            const double s = tn + fp > 0 ? tn / (tn + fp) : 0.0;
            p_sum += p;
            r_sum += r;
            f_sum += f;
            s_sum += s;
            b_sum += (r + s) / 2.0;
        }
        const auto rep = compute_report(cm);
        const double k = static_cast<double>(n);
        CHECK(rep.accuracy == trace / total);
        CHECK(std::abs(rep.precision - p_sum / k) <= 5e-5);
        CHECK(std::abs(rep.recall - r_sum / k) <= 5e-5);
        CHECK(std::abs(rep.f1 - f_sum / k) <= 5e-5);
        CHECK(std::abs(rep.specificity - s_sum / k) <= 5e-5);
        CHECK(std::abs(rep.balanced_accuracy - b_sum / k) <= 5e-5);
    }
}

TEST_CASE("property: values in [0, 1], F1 between P and R, order invariance") {
    RandomSource rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.index(4);
        const std::size_t samples = 1 + rng.index(200);
        std::vector<Label> truth(samples);
        std::vector<Label> pred(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            truth[i] = rng.index(n);
            pred[i] = rng.uniform() < 0.6 ? truth[i] : rng.index(n);
        }
        const auto rep = compute_report(confusion(truth, pred, n));
        for (double v : {rep.accuracy, rep.precision, rep.recall, rep.f1, rep.specificity, rep.balanced_accuracy}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        for (const auto& c : rep.per_class) {
            if (c.precision + c.recall == 0.0) {
                CHECK(c.f1 == 0.0);
            } else {
                CHECK(c.f1 >= std::min(c.precision, c.recall) - 1e-12);
                CHECK(c.f1 <= std::max(c.precision, c.recall) + 1e-12);
                CHECK(std::abs(c.f1 - 2 * c.precision * c.recall / (c.precision + c.recall)) <= 1e-12);
            }
        }
        std::vector<std::size_t> perm(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            perm[i] = i;
        }
        for (std::size_t i = samples; i > 1; --i) {
            std::swap(perm[i - 1], perm[rng.index(i)]);
        }
        std::vector<Label> t2(samples), p2(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            t2[i] = truth[perm[i]];
            p2[i] = pred[perm[i]];
        }
        const auto again = compute_report(confusion(t2, p2, n));
        CHECK(again.f1 == rep.f1);
        CHECK(again.balanced_accuracy == rep.balanced_accuracy);
        if (n == 2) {
            const auto& pos = rep.per_class[1];
            CHECK(rep.balanced_accuracy == doctest::Approx((pos.recall + pos.specificity) / 2.0));
        }
    }
}
