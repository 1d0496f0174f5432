#pragma once

// JSON schemas of the command outputs. Every type round-trips:
// from_json(to_json(x)) == x under the defaulted equality of each type.

#include <json.hpp>

#include "capture/cone_spectra.hpp"
#include "capture/perturbed_domain.hpp"
#include "capture/pursuit_mc.hpp"
#include "capture/sinc_galerkin.hpp"

namespace capture {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HatTableRow, n, lambda_hat, a_lower)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Bracket, lo, hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigenResult, mu, m, bracket, evals, closed_form)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EvidenceStep, quantity, value, source)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Verdict, n, finite, chain)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Checkpoint, theta, h)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CertifiedInterval, theta_lo, theta_hi, min_h_bound)

void to_json(nlohmann::json& j, const ContainmentCertificate& c);
void from_json(const nlohmann::json& j, ContainmentCertificate& c);

namespace sinc {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigenEstimate, lambda_upper, mu_m, dim, iterations, residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConvergenceRow, dim, n, h, estimate)
}  // namespace sinc

namespace mc {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ExponentFit, a_hat, ci_low, ci_high, window, r_squared, points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SurvivalCurve, times, survival, stderr_, alive, paths, censored)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PursuitConfig, predators, dt, t_max, paths, seed, x0, predator_start, bridge,
                                   threads)
}  // namespace mc

}  // namespace capture
