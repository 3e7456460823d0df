#pragma once

#include "qcorr/correlations.hpp"
#include "qcorr/qubit_algebra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qcorr {

/// Named measurement directions available to one site of a table-driven model.
/// Settings are resolved by vector value (within kOrthoTol) or by name.
class SettingTable {
 public:
  SettingTable() = default;

  /// Adds a direction and returns its index. Names must be unique.
  int add(std::string name, const Vector3& v);

  int size() const { return static_cast<int>(vectors_.size()); }
  int index_of(const Vector3& v) const;       // -1 if absent
  int require_index(const Vector3& v) const;  // throws for unknown settings
  const std::string& name(int i) const { return names_.at(i); }
  const Vector3& vector(int i) const { return vectors_.at(i); }
  std::optional<int> index_by_name(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<Vector3> vectors_;
};

enum class ModelVariant { Lt, Lqt, Lrt };

const char* model_variant_name(ModelVariant v);

/// Mean-value tables: one entry per setting of the respective site.
struct LtCause {
  std::vector<double> a_means;
  std::vector<double> b_means;
};

/// Local quantum states conditioned on the cause; means are Tr[rho v.sigma].
struct LqtCause {
  QubitState rho_a;
  QubitState rho_b;
};

/// One hidden-variable atom with deterministic +-1 responses per setting.
struct LrtResponse {
  double weight = 0.0;
  std::vector<int> a_signs;
  std::vector<int> b_signs;
};

struct LrtCause {
  std::vector<LrtResponse> lambdas;  // conditional distribution; weights sum to 1
};

struct Cause {
  double weight = 0.0;
  std::variant<LtCause, LqtCause, LrtCause> payload;
};

/// Finite common-cause model: weights P(mu) >= 0 summing to 1 and a per-cause
/// local response payload of one fixed variant. Immutable after construction;
/// construction validates all invariants (normalization, |mean| <= 1,
/// responses in {-1,+1}, table sizes).
class CommonCauseModel {
 public:
  CommonCauseModel(ModelVariant variant, SettingTable settings_a, SettingTable settings_b,
                   std::vector<Cause> causes);

  ModelVariant variant() const { return variant_; }
  const SettingTable& settings_a() const { return settings_a_; }
  const SettingTable& settings_b() const { return settings_b_; }
  const std::vector<Cause>& causes() const { return causes_; }

 private:
  ModelVariant variant_;
  SettingTable settings_a_, settings_b_;
  std::vector<Cause> causes_;
};

/// Sum over causes of P(mu) times the per-cause correlation: mean products
/// for the Lt/Lqt variants, hidden-variable average of the response product
/// for the Lrt variant. Table variants require the settings to be listed.
double model_correlation(const CommonCauseModel& m, const Vector3& a, const Vector3& b);

/// Joint outcome probabilities predicted by the model under the common-cause
/// factorization, fixed order (+1,+1), (+1,-1), (-1,+1), (-1,-1).
std::array<double, 4> model_joint_probabilities(const CommonCauseModel& m, const Vector3& a,
                                                const Vector3& b);

XYPoint model_xy(const CommonCauseModel& m, const SettingPair& pa, const SettingPair& pb);

/// One product term of a separable decomposition.
struct ProductTerm {
  double weight = 0.0;
  Vector3 bloch_a;
  Vector3 bloch_b;
};

/// Builds the local-quantum-theory model whose causes are the terms of a
/// separable decomposition. Its correlations and joint probabilities match
/// the mixed state sum_k p_k rho_Ak (x) rho_Bk exactly.
CommonCauseModel lqt_model_from_separable(const std::vector<ProductTerm>& decomposition);

/// Expands an Lt-variant model into deterministic hidden-variable responses:
/// each mean realized as the two-point +-1 distribution with weight
/// (1 + mean)/2, enumerated over the product of all settings on both sites.
/// `resolution` caps the number of enumerated atoms per cause.
CommonCauseModel lrt_from_lt(const CommonCauseModel& m, int resolution);

/// Joint response table bounded by 1 per cause and hidden variable; no
/// factorization is imposed.
struct RtResponse {
  double weight = 0.0;
  Eigen::MatrixXd gamma;  // (a setting, b setting) -> [-1, 1]
};

struct RtCause {
  double weight = 0.0;
  std::vector<RtResponse> lambdas;
};

class NonlocalRealisticModel {
 public:
  NonlocalRealisticModel(SettingTable settings_a, SettingTable settings_b,
                         std::vector<RtCause> causes);

  const SettingTable& settings_a() const { return settings_a_; }
  const SettingTable& settings_b() const { return settings_b_; }
  const std::vector<RtCause>& causes() const { return causes_; }

 private:
  SettingTable settings_a_, settings_b_;
  std::vector<RtCause> causes_;
};

double rt_model_correlation(const NonlocalRealisticModel& m, const Vector3& a, const Vector3& b);

XYPoint rt_model_xy(const NonlocalRealisticModel& m, const SettingPair& pa, const SettingPair& pb);

/// Single-hidden-variable realistic model with Gamma(a,b) set to the quantum
/// correlation for every pair of listed settings: the constructive witness
/// that realism alone reproduces the quantum predictions.
NonlocalRealisticModel rt_model_from_quantum(const DensityMatrix& rho,
                                             const std::vector<std::pair<Vector3, Vector3>>& settings);

/// Supplier of target joint probabilities per setting pair, in the fixed
/// outcome order used throughout.
using JointSource = std::function<std::array<double, 4>(const Vector3&, const Vector3&)>;

JointSource quantum_joint_source(const DensityMatrix& rho);
JointSource model_joint_source(const CommonCauseModel& m);

struct LocalityVerdict {
  bool local = false;
  double max_deviation = 0.0;
};

/// Compares the model's factorized joint probabilities against the target
/// over all listed setting pairs and outcomes; local iff the maximum absolute
/// deviation is within tol.
LocalityVerdict verify_locality_condition(const CommonCauseModel& m, const JointSource& target,
                                          const std::vector<std::pair<Vector3, Vector3>>& settings,
                                          double tol);

}  // namespace qcorr
