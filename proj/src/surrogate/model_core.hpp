#pragma once
// Internal forward/backward cores shared by the trainers, the gradient
// checker and the predictors. Parameter vectors are flat; layouts are
// documented per core.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "finfom/dataio.hpp"
#include "finfom/domain.hpp"
#include "finfom/surrogate.hpp"

namespace finfom::detail {

// ---------------------------------------------------------------------------
// Monomial basis over the 4 normalized features.

struct MonomialBasis {
  int degree;
  std::vector<std::array<int, 4>> exponents;  // graded order, constant first

  explicit MonomialBasis(int degree);
  std::size_t size() const noexcept { return exponents.size(); }
  void expand(const std::array<double, 4>& x, double* out) const noexcept;
};

// ---------------------------------------------------------------------------
// Feed-forward core. Layout: [W0 (w x in), b0, W1 (w x w), b1, ..., Wo (1 x w), bo].
// Hidden activation tanh, linear output.

struct MlpDims {
  int n_inputs = 4;
  int width = 64;
  int hidden_layers = 2;

  std::size_t param_count() const noexcept;
  static MlpDims from_arch(const std::vector<std::int64_t>& arch);
  std::vector<std::int64_t> to_arch() const;
};

struct MlpScratch {
  std::vector<std::vector<double>> pre;   // pre-activations per hidden layer
  std::vector<std::vector<double>> act;   // activations per hidden layer
  double output = 0.0;
};

double mlp_forward(const MlpDims& dims, const double* params, const double* x,
                   MlpScratch& scratch);
// Accumulates dLoss/dparams for dLoss/doutput = upstream into grad.
void mlp_backward(const MlpDims& dims, const double* params, const double* x,
                  const MlpScratch& scratch, double upstream, double* grad);
void mlp_init(const MlpDims& dims, std::mt19937_64& rng, std::vector<double>& params);

// ---------------------------------------------------------------------------
// Recurrent gated-memory core. Gate order i, f, g, o. Layout:
// [W (4H x (in+H)), b (4H), Wout (H), bout (1)].

struct LstmDims {
  int n_inputs = 6;
  int hidden = 32;

  std::size_t param_count() const noexcept;
  static LstmDims from_arch(const std::vector<std::int64_t>& arch);
};

struct LstmScratch {
  // Per-step caches, each sized steps x width.
  std::vector<double> gates;   // 4H per step, post-activation
  std::vector<double> cell;    // H per step
  std::vector<double> cell_tanh;
  std::vector<double> hidden;  // H per step
  std::vector<double> output;  // 1 per step
  std::vector<double> concat;  // in+H workspace
  void resize(const LstmDims& dims, std::size_t steps);
};

// inputs: steps x n_inputs row-major. Outputs per step into scratch.output.
void lstm_forward(const LstmDims& dims, const double* params, const double* inputs,
                  std::size_t steps, LstmScratch& scratch);
// upstream: dLoss/doutput per step. Accumulates into grad.
void lstm_backward(const LstmDims& dims, const double* params, const double* inputs,
                   std::size_t steps, const LstmScratch& scratch,
                   const double* upstream, double* grad);
void lstm_init(const LstmDims& dims, std::mt19937_64& rng, std::vector<double>& params);

// Per-step inputs for one gait/series: [stroke/55, pitch/55, features...].
std::vector<double> lstm_inputs_from_series(const FeatureBounds& bounds,
                                            const GaitParams& gait,
                                            const CycleSeries& series);
std::vector<double> lstm_inputs_from_gait(const FeatureBounds& bounds,
                                          const GaitParams& gait, std::size_t steps);

// ---------------------------------------------------------------------------
// Adam optimizer.

struct Adam {
  explicit Adam(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
  void step(std::vector<double>& params, const std::vector<double>& grad, double lr);

  std::vector<double> m, v;
  double beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8;
  long t = 0;
};

// ---------------------------------------------------------------------------
// Central finite differences over a random parameter subset.

template <typename LossFn>
double finite_difference_max_error(const std::vector<double>& params,
                                   const std::vector<double>& analytic, LossFn&& loss_at,
                                   std::mt19937_64& rng, int n_params) {
  constexpr double kStep = 1e-5;
  std::vector<double> perturbed = params;
  double worst = 0.0;
  const std::size_t count = params.size();
  for (int s = 0; s < n_params; ++s) {
    const std::size_t idx = static_cast<std::size_t>(rng() % count);
    const double saved = perturbed[idx];
    perturbed[idx] = saved + kStep;
    const double up = loss_at(perturbed);
    perturbed[idx] = saved - kStep;
    const double down = loss_at(perturbed);
    perturbed[idx] = saved;
    const double numeric = (up - down) / (2.0 * kStep);
    const double a = analytic[idx];
    const double denom = std::max({std::abs(a), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(a - numeric) / denom);
  }
  return worst;
}

}  // namespace finfom::detail
