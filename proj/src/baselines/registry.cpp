#include <cmath>

#include "cgofs/baselines.hpp"
#include "cgofs/error.hpp"

namespace cgofs::baselines {

void BaselineParams::validate() const {
    const double values[] = {pso.vmax,     pso.wmax,      pso.wmin,       pso.c1,        pso.c2,
                             mvo.wep_min,  mvo.wep_max,   mvo.tdr_exponent, gwo.a,       gwo.r_lo,
                             gwo.r_hi,     mfo.b,         mfo.l_lo,       mfo.l_hi,      woa.a,
                             woa.r,        woa.spiral_b,  ffa.alpha,      ffa.beta_min,  ffa.gamma,
                             ffa.beta0,    bat.q_min,     bat.q_max,      bat.loudness,  bat.pulse_rate,
                             hgs.vc2,      hgs.vmax,      hgs.wmax,       hgs.wmin,      hgs.hunger_threshold};
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "baseline parameters must be finite");
        }
    }
}

RunResult optimize_baseline(Algorithm algorithm, const Objective& objective, const OptimizerConfig& config,
                            const BaselineParams& params, RandomSource& rng) {
    params.validate();
    switch (algorithm) {
    case Algorithm::PSO: return optimize_pso(objective, config, params.pso, rng);
    case Algorithm::MVO: return optimize_mvo(objective, config, params.mvo, rng);
    case Algorithm::GWO: return optimize_gwo(objective, config, params.gwo, rng);
    case Algorithm::MFO: return optimize_mfo(objective, config, params.mfo, rng);
    case Algorithm::WOA: return optimize_woa(objective, config, params.woa, rng);
    case Algorithm::FFA: return optimize_ffa(objective, config, params.ffa, rng);
    case Algorithm::BAT: return optimize_bat(objective, config, params.bat, rng);
    case Algorithm::HGS: return optimize_hgs(objective, config, params.hgs, rng);
    case Algorithm::CGO: break;
    }
    throw Error(ErrorCode::UnknownAlgorithm, std::string(to_string(algorithm)) + " is not a baseline");
}

RunResult optimize_baseline(std::string_view name, const Objective& objective, const OptimizerConfig& config,
                            const BaselineParams& params, RandomSource& rng) {
    return optimize_baseline(parse_algorithm(name), objective, config, params, rng);
}

} // namespace cgofs::baselines
