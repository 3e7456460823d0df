#include "qcorr/hv_models.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kMeanSlack = 1e-12;

void require_normalized(const std::vector<double>& weights, const char* what) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightTol)
    throw std::invalid_argument(std::string(what) + ": weights sum to " + std::to_string(sum) +
                                ", expected 1");
}

double lt_mean(const LtCause& c, bool side_a, int idx) {
  return side_a ? c.a_means.at(idx) : c.b_means.at(idx);
}

}  // namespace

int SettingTable::add(std::string name, const Vector3& v) {
  require_unit(v, "setting direction");
  if (index_by_name(name)) throw std::invalid_argument("duplicate setting name: " + name);
  names_.push_back(std::move(name));
  vectors_.push_back(v);
  return size() - 1;
}

int SettingTable::index_of(const Vector3& v) const {
  for (int i = 0; i < size(); ++i)
    if ((vectors_[i] - v).cwiseAbs().maxCoeff() <= kOrthoTol) return i;
  return -1;
}

int SettingTable::require_index(const Vector3& v) const {
  const int i = index_of(v);
  if (i < 0)
    throw std::invalid_argument("setting (" + std::to_string(v.x()) + ", " + std::to_string(v.y()) +
                                ", " + std::to_string(v.z()) + ") is not listed in the model");
  return i;
}

std::optional<int> SettingTable::index_by_name(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

const char* model_variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::Lt: return "lt";
    case ModelVariant::Lqt: return "lqt";
    case ModelVariant::Lrt: return "lrt";
  }
  return "?";
}

CommonCauseModel::CommonCauseModel(ModelVariant variant, SettingTable settings_a,
                                   SettingTable settings_b, std::vector<Cause> causes)
    : variant_(variant),
      settings_a_(std::move(settings_a)),
      settings_b_(std::move(settings_b)),
      causes_(std::move(causes)) {
  if (causes_.empty()) throw std::invalid_argument("common-cause model has no causes");
  std::vector<double> weights;
  for (const Cause& c : causes_) weights.push_back(c.weight);
  require_normalized(weights, "cause weights");

  for (const Cause& c : causes_) {
    switch (variant_) {
      case ModelVariant::Lt: {
        const auto* lt = std::get_if<LtCause>(&c.payload);
        if (!lt) throw std::invalid_argument("lt model holds a non-lt cause payload");
        if (static_cast<int>(lt->a_means.size()) != settings_a_.size() ||
            static_cast<int>(lt->b_means.size()) != settings_b_.size())
          throw std::invalid_argument("mean table size does not match the setting tables");
        for (double v : lt->a_means)
          if (std::abs(v) > 1.0 + kMeanSlack)
            throw std::invalid_argument("|a mean| exceeds 1: " + std::to_string(v));
        for (double v : lt->b_means)
          if (std::abs(v) > 1.0 + kMeanSlack)
            throw std::invalid_argument("|b mean| exceeds 1: " + std::to_string(v));
        break;
      }
      case ModelVariant::Lqt: {
        if (!std::holds_alternative<LqtCause>(c.payload))
          throw std::invalid_argument("lqt model holds a non-lqt cause payload");
        break;  // the QubitState members are validated on construction
      }
      case ModelVariant::Lrt: {
        const auto* lrt = std::get_if<LrtCause>(&c.payload);
        if (!lrt) throw std::invalid_argument("lrt model holds a non-lrt cause payload");
        if (lrt->lambdas.empty())
          throw std::invalid_argument("lrt cause has no hidden-variable atoms");
        std::vector<double> lw;
        for (const LrtResponse& r : lrt->lambdas) {
          lw.push_back(r.weight);
          if (static_cast<int>(r.a_signs.size()) != settings_a_.size() ||
              static_cast<int>(r.b_signs.size()) != settings_b_.size())
            throw std::invalid_argument("response table size does not match the setting tables");
          for (int s : r.a_signs)
            if (s != 1 && s != -1) throw std::invalid_argument("responses must be +1 or -1");
          for (int s : r.b_signs)
            if (s != 1 && s != -1) throw std::invalid_argument("responses must be +1 or -1");
        }
        require_normalized(lw, "hidden-variable weights");
        break;
      }
    }
  }
}

double model_correlation(const CommonCauseModel& m, const Vector3& a, const Vector3& b) {
  require_unit(a, "a");
  require_unit(b, "b");
  int ia = -1, ib = -1;
  if (m.variant() != ModelVariant::Lqt) {
    ia = m.settings_a().require_index(a);
    ib = m.settings_b().require_index(b);
  }
  double e = 0.0;
  for (const Cause& c : m.causes()) {
    double term = 0.0;
    if (const auto* lt = std::get_if<LtCause>(&c.payload)) {
      term = lt_mean(*lt, true, ia) * lt_mean(*lt, false, ib);
    } else if (const auto* lqt = std::get_if<LqtCause>(&c.payload)) {
      term = expectation(lqt->rho_a, a) * expectation(lqt->rho_b, b);
    } else {
      const auto& lrt = std::get<LrtCause>(c.payload);
      for (const LrtResponse& r : lrt.lambdas)
        term += r.weight * double(r.a_signs[ia]) * double(r.b_signs[ib]);
    }
    e += c.weight * term;
  }
  return e;
}

std::array<double, 4> model_joint_probabilities(const CommonCauseModel& m, const Vector3& a,
                                                const Vector3& b) {
  require_unit(a, "a");
  require_unit(b, "b");
  int ia = -1, ib = -1;
  if (m.variant() != ModelVariant::Lqt) {
    ia = m.settings_a().require_index(a);
    ib = m.settings_b().require_index(b);
  }
  std::array<double, 4> out{};
  const int signs[2] = {+1, -1};
  for (const Cause& c : m.causes()) {
    if (const auto* lrt = std::get_if<LrtCause>(&c.payload)) {
      // Factorization holds at the refined cause (mu, lambda), where the
      // responses are deterministic.
      for (const LrtResponse& r : lrt->lambdas) {
        const int cell = (r.a_signs[ia] == 1 ? 0 : 2) + (r.b_signs[ib] == 1 ? 0 : 1);
        out[cell] += c.weight * r.weight;
      }
      continue;
    }
    double mean_a, mean_b;
    if (const auto* lt = std::get_if<LtCause>(&c.payload)) {
      mean_a = lt_mean(*lt, true, ia);
      mean_b = lt_mean(*lt, false, ib);
    } else {
      const auto& lqt = std::get<LqtCause>(c.payload);
      mean_a = expectation(lqt.rho_a, a);
      mean_b = expectation(lqt.rho_b, b);
    }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out[2 * i + j] += c.weight * 0.5 * (1.0 + signs[i] * mean_a) * 0.5 *
                          (1.0 + signs[j] * mean_b);
  }
  return out;
}

XYPoint model_xy(const CommonCauseModel& m, const SettingPair& pa, const SettingPair& pb) {
  XYPoint xy;
  xy.x = model_correlation(m, pa.main(), pb.perp()) + model_correlation(m, pa.perp(), pb.main());
  xy.y = model_correlation(m, pa.main(), pb.main()) - model_correlation(m, pa.perp(), pb.perp());
  return xy;
}

CommonCauseModel lqt_model_from_separable(const std::vector<ProductTerm>& decomposition) {
  if (decomposition.empty())
    throw std::invalid_argument("separable decomposition must have at least one term");
  std::vector<Cause> causes;
  causes.reserve(decomposition.size());
  for (const ProductTerm& t : decomposition) {
    require_bloch_ball(t.bloch_a, "decomposition term (a side)");
    require_bloch_ball(t.bloch_b, "decomposition term (b side)");
    causes.push_back(Cause{t.weight, LqtCause{qubit_from_bloch(t.bloch_a), qubit_from_bloch(t.bloch_b)}});
  }
  return CommonCauseModel(ModelVariant::Lqt, SettingTable(), SettingTable(), std::move(causes));
}

CommonCauseModel lrt_from_lt(const CommonCauseModel& m, int resolution) {
  if (m.variant() != ModelVariant::Lt)
    throw std::invalid_argument("lrt_from_lt expects an lt-variant model");
  const int na = m.settings_a().size();
  const int nb = m.settings_b().size();
  const int n = na + nb;
  if (n >= 63 || (1LL << n) > resolution)
    throw std::invalid_argument("resolution " + std::to_string(resolution) +
                                " too small to enumerate 2^" + std::to_string(n) +
                                " hidden-variable atoms");
  std::vector<Cause> causes;
  causes.reserve(m.causes().size());
  for (const Cause& c : m.causes()) {
    const auto& lt = std::get<LtCause>(c.payload);
    LrtCause out;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
      LrtResponse r;
      r.weight = 1.0;
      r.a_signs.resize(na);
      r.b_signs.resize(nb);
      for (int k = 0; k < n; ++k) {
        const int sign = (mask >> k) & 1 ? -1 : +1;
        const double mean = k < na ? lt.a_means[k] : lt.b_means[k - na];
        r.weight *= 0.5 * (1.0 + sign * mean);
        if (k < na)
          r.a_signs[k] = sign;
        else
          r.b_signs[k - na] = sign;
      }
      if (r.weight > 0.0) out.lambdas.push_back(std::move(r));
    }
    causes.push_back(Cause{c.weight, std::move(out)});
  }
  return CommonCauseModel(ModelVariant::Lrt, m.settings_a(), m.settings_b(), std::move(causes));
}

NonlocalRealisticModel::NonlocalRealisticModel(SettingTable settings_a, SettingTable settings_b,
                                               std::vector<RtCause> causes)
    : settings_a_(std::move(settings_a)), settings_b_(std::move(settings_b)), causes_(std::move(causes)) {
  if (causes_.empty()) throw std::invalid_argument("realistic model has no causes");
  std::vector<double> weights;
  for (const RtCause& c : causes_) weights.push_back(c.weight);
  require_normalized(weights, "cause weights");
  for (const RtCause& c : causes_) {
    if (c.lambdas.empty()) throw std::invalid_argument("realistic cause has no hidden-variable atoms");
    std::vector<double> lw;
    for (const RtResponse& r : c.lambdas) {
      lw.push_back(r.weight);
      if (r.gamma.rows() != settings_a_.size() || r.gamma.cols() != settings_b_.size())
        throw std::invalid_argument("joint response table size does not match the setting tables");
      if (r.gamma.size() > 0 && r.gamma.cwiseAbs().maxCoeff() > 1.0 + kMeanSlack)
        throw std::invalid_argument("|Gamma| exceeds 1: " +
                                    std::to_string(r.gamma.cwiseAbs().maxCoeff()));
    }
    require_normalized(lw, "hidden-variable weights");
  }
}

double rt_model_correlation(const NonlocalRealisticModel& m, const Vector3& a, const Vector3& b) {
  require_unit(a, "a");
  require_unit(b, "b");
  const int ia = m.settings_a().require_index(a);
  const int ib = m.settings_b().require_index(b);
  double e = 0.0;
  for (const RtCause& c : m.causes())
    for (const RtResponse& r : c.lambdas) e += c.weight * r.weight * r.gamma(ia, ib);
  return e;
}

XYPoint rt_model_xy(const NonlocalRealisticModel& m, const SettingPair& pa, const SettingPair& pb) {
  XYPoint xy;
  xy.x = rt_model_correlation(m, pa.main(), pb.perp()) + rt_model_correlation(m, pa.perp(), pb.main());
  xy.y = rt_model_correlation(m, pa.main(), pb.main()) - rt_model_correlation(m, pa.perp(), pb.perp());
  return xy;
}

NonlocalRealisticModel rt_model_from_quantum(
    const DensityMatrix& rho, const std::vector<std::pair<Vector3, Vector3>>& settings) {
  SettingTable ta, tb;
  for (const auto& [a, b] : settings) {
    if (ta.index_of(a) < 0) ta.add("a" + std::to_string(ta.size()), a);
    if (tb.index_of(b) < 0) tb.add("b" + std::to_string(tb.size()), b);
  }
  RtResponse response;
  response.weight = 1.0;
  response.gamma.resize(ta.size(), tb.size());
  for (int i = 0; i < ta.size(); ++i)
    for (int j = 0; j < tb.size(); ++j)
      response.gamma(i, j) = correlation(rho, ta.vector(i), tb.vector(j));
  std::vector<RtCause> causes;
  causes.push_back(RtCause{1.0, {std::move(response)}});
  return NonlocalRealisticModel(std::move(ta), std::move(tb), std::move(causes));
}

JointSource quantum_joint_source(const DensityMatrix& rho) {
  return [rho](const Vector3& a, const Vector3& b) { return joint_probabilities(rho, a, b); };
}

JointSource model_joint_source(const CommonCauseModel& m) {
  return [m](const Vector3& a, const Vector3& b) { return model_joint_probabilities(m, a, b); };
}

LocalityVerdict verify_locality_condition(const CommonCauseModel& m, const JointSource& target,
                                          const std::vector<std::pair<Vector3, Vector3>>& settings,
                                          double tol) {
  LocalityVerdict verdict;
  for (const auto& [a, b] : settings) {
    const auto predicted = model_joint_probabilities(m, a, b);
    const auto expected = target(a, b);
    for (int k = 0; k < 4; ++k)
      verdict.max_deviation = std::max(verdict.max_deviation, std::abs(predicted[k] - expected[k]));
  }
  verdict.local = verdict.max_deviation <= tol;
  return verdict;
}

}  // namespace qcorr
