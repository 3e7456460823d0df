#include "qcorr/random_states.hpp"

#include <cmath>

namespace qcorr {

namespace {

std::vector<double> dirichlet_weights(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> exp_dist(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) sum += (v = exp_dist(rng));
  for (double& v : w) v /= sum;
  // Renormalize exactly so the model validator's 1e-12 budget is not spent here.
  double s2 = 0.0;
  for (int i = 0; i + 1 < n; ++i) s2 += w[i];
  w[n - 1] = 1.0 - s2;
  return w;
}

}  // namespace

Vector3 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Vector3 v(gauss(rng), gauss(rng), gauss(rng));
    const double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

Vector3 random_bloch_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return std::cbrt(uni(rng)) * random_unit_vector(rng);
}

SettingPair random_setting_pair(std::mt19937_64& rng) {
  while (true) {
    const Vector3 a = random_unit_vector(rng);
    const Vector3 w = random_unit_vector(rng);
    Vector3 p = w - w.dot(a) * a;
    const double n = p.norm();
    if (n > 1e-6) return SettingPair(a, p / n);
  }
}

DensityMatrix random_density_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix4c rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix((0.5 * (rho + rho.adjoint())).eval());
}

std::vector<ProductTerm> random_separable_decomposition(std::mt19937_64& rng, int max_terms) {
  std::uniform_int_distribution<int> count(1, max_terms);
  const int n = count(rng);
  const std::vector<double> weights = dirichlet_weights(rng, n);
  std::vector<ProductTerm> terms;
  terms.reserve(n);
  for (int k = 0; k < n; ++k)
    terms.push_back(ProductTerm{weights[k], random_bloch_vector(rng), random_bloch_vector(rng)});
  return terms;
}

DensityMatrix separable_state(const std::vector<ProductTerm>& decomposition) {
  Matrix4c acc = Matrix4c::Zero();
  for (const ProductTerm& t : decomposition)
    acc += t.weight *
           kron(qubit_from_bloch(t.bloch_a).matrix(), qubit_from_bloch(t.bloch_b).matrix());
  return DensityMatrix((0.5 * (acc + acc.adjoint())).eval());
}

CommonCauseModel random_common_cause_model(std::mt19937_64& rng, ModelVariant variant,
                                           const SettingPair& pa, const SettingPair& pb) {
  SettingTable ta, tb;
  ta.add("a0", pa.main());
  ta.add("a1", pa.perp());
  tb.add("b0", pb.main());
  tb.add("b1", pb.perp());

  std::uniform_int_distribution<int> cause_count(1, 4);
  std::uniform_real_distribution<double> mean(-1.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);

  const int n = cause_count(rng);
  const std::vector<double> weights = dirichlet_weights(rng, n);
  std::vector<Cause> causes;
  causes.reserve(n);
  for (int k = 0; k < n; ++k) {
    switch (variant) {
      case ModelVariant::Lt: {
        LtCause c;
        for (int s = 0; s < 2; ++s) c.a_means.push_back(mean(rng));
        for (int s = 0; s < 2; ++s) c.b_means.push_back(mean(rng));
        causes.push_back(Cause{weights[k], std::move(c)});
        break;
      }
      case ModelVariant::Lqt: {
        causes.push_back(Cause{weights[k], LqtCause{qubit_from_bloch(random_bloch_vector(rng)),
                                                    qubit_from_bloch(random_bloch_vector(rng))}});
        break;
      }
      case ModelVariant::Lrt: {
        std::uniform_int_distribution<int> lambda_count(1, 3);
        const int nl = lambda_count(rng);
        LrtCause c;
        const std::vector<double> lw = dirichlet_weights(rng, nl);
        for (int l = 0; l < nl; ++l) {
          LrtResponse r;
          r.weight = lw[l];
          for (int s = 0; s < 2; ++s) r.a_signs.push_back(coin(rng) ? +1 : -1);
          for (int s = 0; s < 2; ++s) r.b_signs.push_back(coin(rng) ? +1 : -1);
          c.lambdas.push_back(std::move(r));
        }
        causes.push_back(Cause{weights[k], std::move(c)});
        break;
      }
    }
  }
  return CommonCauseModel(variant, std::move(ta), std::move(tb), std::move(causes));
}

}  // namespace qcorr
