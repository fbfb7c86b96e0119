#pragma once
// Forward models mapping gait parameters to thrust or power: polynomial
// least squares (degree 1 and 4), a feed-forward net, and a recurrent
// gated-memory model emitting per-timestep series. Training, evaluation,
// gradient verification and a versioned binary model format.

#include <cstdint>
#include <string>
#include <vector>

#include "finfom/dataio.hpp"
#include "finfom/domain.hpp"

namespace finfom {

enum class ModelKind { Linear = 0, Quartic = 1, Mlp = 2, Lstm = 3 };

const char* model_kind_name(ModelKind kind) noexcept;
ModelKind model_kind_from_name(const std::string& name);  // throws InvalidArgument

struct TrainingMeta {
  std::uint32_t epochs = 0;
  double final_loss = 0.0;
  std::uint64_t data_hash = 0;
  std::vector<double> loss_history;  // in-memory only, not serialized
};

struct SurrogateModel {
  ModelKind kind = ModelKind::Linear;
  Target target = Target::Thrust;
  FinMaterialId material = FinMaterialId::Rigid;
  // Architecture descriptor.
  //   Linear/Quartic: {degree}
  //   Mlp:  {n_inputs, width..., 1}
  //   Lstm: {n_inputs, hidden_size, 1, n_steps}
  std::vector<std::int64_t> arch;
  double target_offset = 0.0;
  double target_scale = 1.0;
  std::vector<double> params;
  TrainingMeta meta;
};

struct MlpHyper {
  int hidden_layers = 2;
  int width = 64;
  int epochs = 3000;
  double learning_rate = 1e-3;
  int batch_size = 32;
  std::uint64_t seed = 42;
};

struct LstmHyper {
  int hidden_size = 32;
  int epochs = 1000;
  double learning_rate = 1e-3;
  int batch_size = 32;
  double weight_decay = 0.0;
  // Extra squared-error weight on the cycle mean of each predicted series;
  // the mean is what the efficiency pipeline consumes.
  double mean_loss_weight = 0.0;
  // Seeded Gaussian jitter (normalized feature units) applied to the static
  // features of each training presentation; smooths the learned response
  // between grid points. 0 disables.
  double feature_jitter = 0.0;
  std::uint64_t seed = 42;
};

struct EvalReport {
  double mean_absolute_error = 0.0;
  std::vector<double> per_gait_error;
  double forward_passes_per_second = 0.0;
};

// Ridge-regularized least squares over all monomials of the normalized
// features up to total degree 1 or 4. Deterministic.
SurrogateModel fit_polynomial(const Dataset& data, Target target, int degree,
                              FinMaterialId material);

// Feed-forward net on cycle-mean targets, squared-error loss, mini-batch
// Adam. Deterministic given the seed.
SurrogateModel fit_mlp(const Dataset& data, Target target, FinMaterialId material,
                       const MlpHyper& hyper = {});

// Single-layer recurrent gated-memory model consuming
// [stroke_k, pitch_k, f, stroke_amp, pitch_amp, spo] (normalized) per step
// and emitting the per-timestep target series.
SurrogateModel fit_lstm(const Dataset& data, Target target, FinMaterialId material,
                        const LstmHyper& hyper = {});

// Cycle-mean prediction (series mean for the recurrent model).
// Throws UnattainableGait.
double predict_mean(const SurrogateModel& model, const GaitParams& gait);

// Per-timestep prediction over one cycle; recurrent models only.
std::vector<double> predict_series(const SurrogateModel& model, const GaitParams& gait,
                                   std::size_t n_steps);

// MAE of cycle-mean predictions over the holdout gaits plus a single-thread
// throughput measurement (>= 1000 timed predictions).
EvalReport evaluate(const SurrogateModel& model, const Dataset& data,
                    const std::vector<GaitParams>& holdout);

// Compares analytic loss gradients against central finite differences
// (step 1e-5) on n_params randomly chosen parameters of a freshly
// initialized model. Returns the max relative error.
double check_gradients(ModelKind kind, const Dataset& data, std::uint64_t seed,
                       int n_params = 100);

void save_model(const SurrogateModel& model, const std::string& path);
SurrogateModel load_model(const std::string& path);

std::uint64_t model_hash(const SurrogateModel& model) noexcept;

// The benchmark split: hold out every gait whose stroke and pitch are both
// strictly inside the experiment grid, train on the rest.
std::vector<GaitParams> interior_holdout(const Dataset& data, FinMaterialId material);
Dataset without_gaits(const Dataset& data, const std::vector<GaitParams>& holdout);
Dataset material_subset(const Dataset& data, FinMaterialId material);

}  // namespace finfom
