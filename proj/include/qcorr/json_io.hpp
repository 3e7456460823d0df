#pragma once

#include "qcorr/correlations.hpp"
#include "qcorr/hv_models.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/qubit_algebra.hpp"
#include "qcorr/sampler.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace qcorr {

/// File-system failures (missing input, unwritable output); JSON syntax and
/// schema problems surface as std::invalid_argument or nlohmann exceptions.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative state description: one of the named constructions or an
/// explicit matrix. Round-trips through JSON losslessly.
struct StateSpec {
  enum class Kind { Singlet, Werner, Product, Matrix };

  Kind kind = Kind::Singlet;
  double x = 0.0;                        // werner
  Vector3 bloch_a = Vector3::Zero();     // product
  Vector3 bloch_b = Vector3::Zero();
  Matrix4c mat = Matrix4c::Zero();       // matrix

  static StateSpec singlet();
  static StateSpec werner(double x);
  static StateSpec product(const Vector3& bloch_a, const Vector3& bloch_b);
  static StateSpec matrix(const Matrix4c& m);

  static StateSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  DensityMatrix to_density_matrix() const;
};

struct SettingsSpec {
  Vector3 a, a_perp, b, b_perp;

  static SettingsSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  SettingPair pair_a() const { return SettingPair(a, a_perp); }
  SettingPair pair_b() const { return SettingPair(b, b_perp); }
};

using AnyModel = std::variant<CommonCauseModel, NonlocalRealisticModel>;

AnyModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const CommonCauseModel& m);
nlohmann::json model_to_json(const NonlocalRealisticModel& m);

nlohmann::json vec3_to_json(const Vector3& v);
Vector3 vec3_from_json(const nlohmann::json& j, const char* what);

nlohmann::json report_to_json(const HierarchyReport& rep);
nlohmann::json sample_result_to_json(const SampleResult& r);
nlohmann::json empirical_to_json(const EmpiricalXY& e);
nlohmann::json optimize_result_to_json(const OptimizeResult& r, Objective obj);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qcorr
