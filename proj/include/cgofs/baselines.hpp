#pragma once

/// The eight comparator optimizers. Every one of them runs on the same box
/// [L, U]^dim with clamping, draws from the shared RandomSource contract, and
/// reports through EvaluationTracker, so they differ only in search dynamics.
///
/// Update rules and their sources:
///   PSO  Kennedy & Eberhart (1995), inertia decreasing linearly Wmax -> Wmin.
///   MVO  Mirjalili et al. (2016), white/black/worm holes, WEP rising, TDR p=6.
///   GWO  Mirjalili et al. (2014) continuous core as used by Emary et al. (2016).
///   MFO  Mirjalili (2015), logarithmic spiral around sorted flames.
///   WOA  Mirjalili & Lewis (2016), encircling / search / bubble-net spiral.
///   FFA  Yang (2010), attractiveness (beta0-betamin)e^{-gamma r^2}+betamin.
///   BAT  Yang (2010), frequency-tuned velocities plus local random walk.
///   HGS  Yang et al. (2021), hunger-weighted moves toward the best.

#include "cgofs/optimizer.hpp"

namespace cgofs::baselines {

struct PsoParams {
    double vmax = 6.0;
    double wmax = 0.9;
    double wmin = 0.2;
    double c1 = 2.0;
    double c2 = 2.0;
};

struct MvoParams {
    double wep_min = 0.2;
    double wep_max = 1.0;
    /// Exploitation accuracy p in TDR = 1 - t^(1/p) / T^(1/p).
    double tdr_exponent = 6.0;
};

struct GwoParams {
    /// Start value of the linearly decreasing coefficient a (ends at 0).
    double a = 2.0;
    /// A = a * r with r uniform in [r_lo, r_hi).
    double r_lo = -1.0;
    double r_hi = 1.0;
};

struct MfoParams {
    /// Spiral shape constant.
    double b = 1.0;
    /// Initial interval of the spiral parameter t; its lower end moves from
    /// l_lo to l_lo - 1 over the run.
    double l_lo = -1.0;
    double l_hi = 1.0;
};

struct WoaParams {
    double a = 2.0;
    /// Upper bound of the random coefficients r1, r2 in A = 2a r1 - a, C = 2 r2.
    double r = 1.0;
    double spiral_b = 1.0;
};

struct FfaParams {
    double alpha = 0.5;
    double beta_min = 0.2;
    double gamma = 1.0;
    double beta0 = 1.0;
};

struct BatParams {
    double q_min = 0.0;
    double q_max = 2.0;
    double loudness = 0.5;
    double pulse_rate = 0.5;
};

struct HgsParams {
    double vc2 = 0.03;
    /// Listed alongside VC2 for parity with the PSO settings; the hunger
    /// update itself has no velocity or inertia term and does not read them.
    double vmax = 6.0;
    double wmax = 0.9;
    double wmin = 0.2;
    /// Minimum hunger increment (LH).
    double hunger_threshold = 100.0;
};

struct BaselineParams {
    PsoParams pso;
    MvoParams mvo;
    GwoParams gwo;
    MfoParams mfo;
    WoaParams woa;
    FfaParams ffa;
    BatParams bat;
    HgsParams hgs;

    /// Throws InvalidArgument if any parameter is non-finite.
    void validate() const;
};

RunResult optimize_pso(const Objective&, const OptimizerConfig&, const PsoParams&, RandomSource&);
RunResult optimize_mvo(const Objective&, const OptimizerConfig&, const MvoParams&, RandomSource&);
RunResult optimize_gwo(const Objective&, const OptimizerConfig&, const GwoParams&, RandomSource&);
RunResult optimize_mfo(const Objective&, const OptimizerConfig&, const MfoParams&, RandomSource&);
RunResult optimize_woa(const Objective&, const OptimizerConfig&, const WoaParams&, RandomSource&);
RunResult optimize_ffa(const Objective&, const OptimizerConfig&, const FfaParams&, RandomSource&);
RunResult optimize_bat(const Objective&, const OptimizerConfig&, const BatParams&, RandomSource&);
RunResult optimize_hgs(const Objective&, const OptimizerConfig&, const HgsParams&, RandomSource&);

/// Dispatches to one of the eight baselines. Throws UnknownAlgorithm for CGO
/// (it lives in cgofs::cgo) and for unrecognised names.
RunResult optimize_baseline(Algorithm algorithm, const Objective& objective, const OptimizerConfig& config,
                            const BaselineParams& params, RandomSource& rng);
RunResult optimize_baseline(std::string_view name, const Objective& objective, const OptimizerConfig& config,
                            const BaselineParams& params, RandomSource& rng);

} // namespace cgofs::baselines
