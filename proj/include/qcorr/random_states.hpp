#pragma once

#include "qcorr/hv_models.hpp"
#include "qcorr/qubit_algebra.hpp"

#include <random>
#include <vector>

namespace qcorr {

Vector3 random_unit_vector(std::mt19937_64& rng);
Vector3 random_bloch_vector(std::mt19937_64& rng);  // uniform in the unit ball
SettingPair random_setting_pair(std::mt19937_64& rng);

/// Ginibre ensemble: G G^dag normalized to unit trace.
DensityMatrix random_density_matrix(std::mt19937_64& rng);

std::vector<ProductTerm> random_separable_decomposition(std::mt19937_64& rng, int max_terms);

/// The mixed state sum_k p_k rho_Ak (x) rho_Bk of a decomposition.
DensityMatrix separable_state(const std::vector<ProductTerm>& decomposition);

/// Random model of the requested variant whose setting tables contain the
/// two given pairs (table variants index settings a0,a1 / b0,b1).
CommonCauseModel random_common_cause_model(std::mt19937_64& rng, ModelVariant variant,
                                           const SettingPair& pa, const SettingPair& pb);

}  // namespace qcorr
