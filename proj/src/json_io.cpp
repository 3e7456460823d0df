#include "qcorr/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qcorr {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

Eigen::Matrix4d real_matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument(std::string(what) + ": expected 4 rows");
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != 4)
      throw std::invalid_argument(std::string(what) + ": expected 4 columns per row");
    for (int c = 0; c < 4; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

json real_matrix_to_json(const Eigen::Matrix4d& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

SettingTable table_from_json(const json& j, const char* what) {
  SettingTable table;
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
  for (const auto& [name, value] : j.items()) table.add(name, vec3_from_json(value, what));
  return table;
}

json table_to_json(const SettingTable& t) {
  json out = json::object();
  for (int i = 0; i < t.size(); ++i) out[t.name(i)] = vec3_to_json(t.vector(i));
  return out;
}

std::vector<double> means_from_json(const json& j, const SettingTable& table, const char* what) {
  std::vector<double> means(table.size(), 0.0);
  std::vector<bool> seen(table.size(), false);
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
  for (const auto& [name, value] : j.items()) {
    const auto idx = table.index_by_name(name);
    if (!idx) throw std::invalid_argument(std::string(what) + ": unknown setting \"" + name + "\"");
    means[*idx] = value.get<double>();
    seen[*idx] = true;
  }
  for (int i = 0; i < table.size(); ++i)
    if (!seen[i])
      throw std::invalid_argument(std::string(what) + ": no entry for setting \"" + table.name(i) +
                                  "\"");
  return means;
}

std::vector<int> signs_from_json(const json& j, const SettingTable& table, const char* what) {
  const std::vector<double> raw = means_from_json(j, table, what);
  std::vector<int> signs;
  signs.reserve(raw.size());
  for (double v : raw) {
    if (v != 1.0 && v != -1.0)
      throw std::invalid_argument(std::string(what) + ": responses must be +1 or -1");
    signs.push_back(static_cast<int>(v));
  }
  return signs;
}

json means_to_json(const std::vector<double>& means, const SettingTable& table) {
  json out = json::object();
  for (int i = 0; i < table.size(); ++i) out[table.name(i)] = means[i];
  return out;
}

json bound_to_json(const BoundRecord& b) {
  return json{{"bound", b.bound},
              {"achieved", b.achieved},
              {"margin", b.margin},
              {"satisfied", b.satisfied}};
}

}  // namespace

StateSpec StateSpec::singlet() { return StateSpec{}; }

StateSpec StateSpec::werner(double x) {
  StateSpec s;
  s.kind = Kind::Werner;
  s.x = x;
  return s;
}

StateSpec StateSpec::product(const Vector3& bloch_a, const Vector3& bloch_b) {
  StateSpec s;
  s.kind = Kind::Product;
  s.bloch_a = bloch_a;
  s.bloch_b = bloch_b;
  return s;
}

StateSpec StateSpec::matrix(const Matrix4c& m) {
  StateSpec s;
  s.kind = Kind::Matrix;
  s.mat = m;
  return s;
}

StateSpec StateSpec::from_json(const json& j) {
  const std::string kind = require_field(j, "kind", "state").get<std::string>();
  if (kind == "singlet") return singlet();
  if (kind == "werner") return werner(require_field(j, "x", "werner state").get<double>());
  if (kind == "product")
    return product(vec3_from_json(require_field(j, "bloch_a", "product state"), "bloch_a"),
                   vec3_from_json(require_field(j, "bloch_b", "product state"), "bloch_b"));
  if (kind == "matrix") {
    const Eigen::Matrix4d re = real_matrix_from_json(require_field(j, "re", "matrix state"), "re");
    const Eigen::Matrix4d im = real_matrix_from_json(require_field(j, "im", "matrix state"), "im");
    Matrix4c m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = Complex(re(r, c), im(r, c));
    return matrix(m);
  }
  throw std::invalid_argument("state: unknown kind \"" + kind + "\"");
}

json StateSpec::to_json() const {
  switch (kind) {
    case Kind::Singlet: return json{{"kind", "singlet"}};
    case Kind::Werner: return json{{"kind", "werner"}, {"x", x}};
    case Kind::Product:
      return json{{"kind", "product"},
                  {"bloch_a", vec3_to_json(bloch_a)},
                  {"bloch_b", vec3_to_json(bloch_b)}};
    case Kind::Matrix:
      return json{{"kind", "matrix"},
                  {"re", real_matrix_to_json(mat.real())},
                  {"im", real_matrix_to_json(mat.imag())}};
  }
  throw std::logic_error("unreachable");
}

DensityMatrix StateSpec::to_density_matrix() const {
  switch (kind) {
    case Kind::Singlet: return make_singlet();
    case Kind::Werner: return make_werner(x);
    case Kind::Product: return make_product(bloch_a, bloch_b);
    case Kind::Matrix: return DensityMatrix(mat);
  }
  throw std::logic_error("unreachable");
}

SettingsSpec SettingsSpec::from_json(const json& j) {
  SettingsSpec s;
  s.a = vec3_from_json(require_field(j, "a", "settings"), "a");
  s.a_perp = vec3_from_json(require_field(j, "a_perp", "settings"), "a_perp");
  s.b = vec3_from_json(require_field(j, "b", "settings"), "b");
  s.b_perp = vec3_from_json(require_field(j, "b_perp", "settings"), "b_perp");
  return s;
}

json SettingsSpec::to_json() const {
  return json{{"a", vec3_to_json(a)},
              {"a_perp", vec3_to_json(a_perp)},
              {"b", vec3_to_json(b)},
              {"b_perp", vec3_to_json(b_perp)}};
}

json vec3_to_json(const Vector3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vector3 vec3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument(std::string(what) + ": expected an array of 3 numbers");
  return Vector3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

AnyModel model_from_json(const json& j) {
  const std::string type = require_field(j, "type", "model").get<std::string>();
  if (type == "common_cause") {
    const std::string variant_name = require_field(j, "variant", "model").get<std::string>();
    ModelVariant variant;
    if (variant_name == "lt")
      variant = ModelVariant::Lt;
    else if (variant_name == "lqt")
      variant = ModelVariant::Lqt;
    else if (variant_name == "lrt")
      variant = ModelVariant::Lrt;
    else
      throw std::invalid_argument("model: unknown variant \"" + variant_name + "\"");

    SettingTable ta, tb;
    if (variant != ModelVariant::Lqt) {
      ta = table_from_json(require_field(j, "settings_a", "model"), "settings_a");
      tb = table_from_json(require_field(j, "settings_b", "model"), "settings_b");
    }

    std::vector<Cause> causes;
    for (const json& cj : require_field(j, "causes", "model")) {
      Cause c;
      c.weight = require_field(cj, "weight", "cause").get<double>();
      switch (variant) {
        case ModelVariant::Lt: {
          LtCause lt;
          lt.a_means = means_from_json(require_field(cj, "a_means", "cause"), ta, "a_means");
          lt.b_means = means_from_json(require_field(cj, "b_means", "cause"), tb, "b_means");
          c.payload = std::move(lt);
          break;
        }
        case ModelVariant::Lqt: {
          c.payload = LqtCause{
              qubit_from_bloch(vec3_from_json(require_field(cj, "bloch_a", "cause"), "bloch_a")),
              qubit_from_bloch(vec3_from_json(require_field(cj, "bloch_b", "cause"), "bloch_b"))};
          break;
        }
        case ModelVariant::Lrt: {
          LrtCause lrt;
          for (const json& lj : require_field(cj, "lambdas", "cause")) {
            LrtResponse r;
            r.weight = require_field(lj, "weight", "lambda").get<double>();
            r.a_signs = signs_from_json(require_field(lj, "a", "lambda"), ta, "lambda a");
            r.b_signs = signs_from_json(require_field(lj, "b", "lambda"), tb, "lambda b");
            lrt.lambdas.push_back(std::move(r));
          }
          c.payload = std::move(lrt);
          break;
        }
      }
      causes.push_back(std::move(c));
    }
    return CommonCauseModel(variant, std::move(ta), std::move(tb), std::move(causes));
  }

  if (type == "nonlocal_realistic") {
    SettingTable ta = table_from_json(require_field(j, "settings_a", "model"), "settings_a");
    SettingTable tb = table_from_json(require_field(j, "settings_b", "model"), "settings_b");
    std::vector<RtCause> causes;
    for (const json& cj : require_field(j, "causes", "model")) {
      RtCause c;
      c.weight = require_field(cj, "weight", "cause").get<double>();
      for (const json& lj : require_field(cj, "lambdas", "cause")) {
        RtResponse r;
        r.weight = require_field(lj, "weight", "lambda").get<double>();
        r.gamma.resize(ta.size(), tb.size());
        const json& gj = require_field(lj, "gamma", "lambda");
        for (int i = 0; i < ta.size(); ++i) {
          const json& row = require_field(gj, ta.name(i).c_str(), "gamma");
          for (int k = 0; k < tb.size(); ++k)
            r.gamma(i, k) = require_field(row, tb.name(k).c_str(), "gamma").get<double>();
        }
        c.lambdas.push_back(std::move(r));
      }
      causes.push_back(std::move(c));
    }
    return NonlocalRealisticModel(std::move(ta), std::move(tb), std::move(causes));
  }

  throw std::invalid_argument("model: unknown type \"" + type + "\"");
}

json model_to_json(const CommonCauseModel& m) {
  json out{{"type", "common_cause"}, {"variant", model_variant_name(m.variant())}};
  if (m.variant() != ModelVariant::Lqt) {
    out["settings_a"] = table_to_json(m.settings_a());
    out["settings_b"] = table_to_json(m.settings_b());
  }
  json causes = json::array();
  for (const Cause& c : m.causes()) {
    json cj{{"weight", c.weight}};
    if (const auto* lt = std::get_if<LtCause>(&c.payload)) {
      cj["a_means"] = means_to_json(lt->a_means, m.settings_a());
      cj["b_means"] = means_to_json(lt->b_means, m.settings_b());
    } else if (const auto* lqt = std::get_if<LqtCause>(&c.payload)) {
      cj["bloch_a"] = vec3_to_json(bloch_vector(lqt->rho_a));
      cj["bloch_b"] = vec3_to_json(bloch_vector(lqt->rho_b));
    } else {
      const auto& lrt = std::get<LrtCause>(c.payload);
      json lambdas = json::array();
      for (const LrtResponse& r : lrt.lambdas) {
        json lj{{"weight", r.weight}};
        lj["a"] = means_to_json(std::vector<double>(r.a_signs.begin(), r.a_signs.end()),
                                m.settings_a());
        lj["b"] = means_to_json(std::vector<double>(r.b_signs.begin(), r.b_signs.end()),
                                m.settings_b());
        lambdas.push_back(std::move(lj));
      }
      cj["lambdas"] = std::move(lambdas);
    }
    causes.push_back(std::move(cj));
  }
  out["causes"] = std::move(causes);
  return out;
}

json model_to_json(const NonlocalRealisticModel& m) {
  json out{{"type", "nonlocal_realistic"},
           {"settings_a", table_to_json(m.settings_a())},
           {"settings_b", table_to_json(m.settings_b())}};
  json causes = json::array();
  for (const RtCause& c : m.causes()) {
    json lambdas = json::array();
    for (const RtResponse& r : c.lambdas) {
      json gamma = json::object();
      for (int i = 0; i < m.settings_a().size(); ++i) {
        json row = json::object();
        for (int k = 0; k < m.settings_b().size(); ++k)
          row[m.settings_b().name(k)] = r.gamma(i, k);
        gamma[m.settings_a().name(i)] = std::move(row);
      }
      lambdas.push_back(json{{"weight", r.weight}, {"gamma", std::move(gamma)}});
    }
    causes.push_back(json{{"weight", c.weight}, {"lambdas", std::move(lambdas)}});
  }
  out["causes"] = std::move(causes);
  return out;
}

json report_to_json(const HierarchyReport& rep) {
  return json{{"x", rep.xy.x},
              {"y", rep.xy.y},
              {"bounds",
               json{{"qm", bound_to_json(rep.qm)},
                    {"rt", bound_to_json(rep.rt)},
                    {"lt_lrt", bound_to_json(rep.lt)},
                    {"lqt", bound_to_json(rep.lqt)}}},
              {"region", region_name(rep.region)},
              {"hidden_qunonlocality", rep.hidden_qunonlocality}};
}

json sample_result_to_json(const SampleResult& r) {
  return json{{"counts",
               json{{"pp", r.counts[0][0]},
                    {"pm", r.counts[0][1]},
                    {"mp", r.counts[1][0]},
                    {"mm", r.counts[1][1]}}},
              {"n", r.n},
              {"empirical_correlation", r.empirical_correlation},
              {"standard_error", r.standard_error}};
}

json empirical_to_json(const EmpiricalXY& e) {
  static const char* kComboNames[4] = {"ab", "ab_perp", "a_perp_b", "a_perp_b_perp"};
  json per = json::object();
  for (int k = 0; k < 4; ++k) per[kComboNames[k]] = sample_result_to_json(e.per_setting[k]);
  return json{{"x_hat", e.xy.x},
              {"y_hat", e.xy.y},
              {"se_x", e.se_x},
              {"se_y", e.se_y},
              {"per_setting", std::move(per)}};
}

json optimize_result_to_json(const OptimizeResult& r, Objective obj) {
  SettingsSpec settings;
  settings.a = r.best_a.main();
  settings.a_perp = r.best_a.perp();
  settings.b = r.best_b.main();
  settings.b_perp = r.best_b.perp();
  return json{{"objective", objective_name(obj)},
              {"best_value", r.best_value},
              {"evaluations", r.evaluations},
              {"converged", r.converged},
              {"settings", settings.to_json()}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return json::parse(buf.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace qcorr
