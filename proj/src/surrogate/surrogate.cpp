#include "finfom/surrogate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "finfom/errors.hpp"
#include "finfom/hash.hpp"
#include "finfom/kernels.hpp"
#include "finfom/linalg.hpp"
#include "model_core.hpp"

namespace finfom {

using detail::Adam;
using detail::LstmDims;
using detail::LstmScratch;
using detail::MlpDims;
using detail::MlpScratch;
using detail::MonomialBasis;

const char* model_kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Quartic: return "quartic";
    case ModelKind::Mlp: return "mlp";
    case ModelKind::Lstm: return "lstm";
  }
  return "unknown";
}

ModelKind model_kind_from_name(const std::string& name) {
  for (ModelKind kind : {ModelKind::Linear, ModelKind::Quartic, ModelKind::Mlp,
                         ModelKind::Lstm}) {
    if (name == model_kind_name(kind)) return kind;
  }
  raise(ErrorCode::InvalidArgument, "unknown model kind '" + name + "'");
}

Dataset material_subset(const Dataset& data, FinMaterialId material) {
  Dataset subset;
  subset.normalization = data.normalization;
  subset.n_steps = data.n_steps;
  for (const DatasetRecord& rec : data.records) {
    if (rec.material == material) subset.records.push_back(rec);
  }
  return subset;
}

std::vector<GaitParams> interior_holdout(const Dataset& data, FinMaterialId material) {
  const ExperimentGrid grid = ExperimentGrid::standard();
  auto interior = [](const std::vector<double>& levels, double v) {
    for (std::size_t i = 1; i + 1 < levels.size(); ++i) {
      if (v == levels[i]) return true;
    }
    return false;
  };
  std::vector<GaitParams> holdout;
  for (const DatasetRecord& rec : data.records) {
    if (rec.material != material) continue;
    if (interior(grid.strokes, rec.gait.stroke_amplitude_deg) &&
        interior(grid.pitches, rec.gait.pitch_amplitude_deg)) {
      holdout.push_back(rec.gait);
    }
  }
  return holdout;
}

Dataset without_gaits(const Dataset& data, const std::vector<GaitParams>& holdout) {
  Dataset out;
  out.normalization = data.normalization;
  out.n_steps = data.n_steps;
  for (const DatasetRecord& rec : data.records) {
    const bool held = std::find(holdout.begin(), holdout.end(), rec.gait) != holdout.end();
    if (!held) out.records.push_back(rec);
  }
  return out;
}

namespace {

struct TargetScaling {
  double offset = 0.0;
  double scale = 1.0;
};

TargetScaling scaling_from_values(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  TargetScaling s;
  s.offset = *lo;
  s.scale = (*hi - *lo) > 1e-12 ? (*hi - *lo) : 1.0;
  return s;
}

void require_nonempty(const Dataset& subset) {
  if (subset.empty()) raise(ErrorCode::EmptyDataset, "no records for requested material");
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial least squares

SurrogateModel fit_polynomial(const Dataset& data, Target target, int degree,
                              FinMaterialId material) {
  if (degree != 1 && degree != 4) {
    raise(ErrorCode::InvalidArgument, "polynomial degree must be 1 or 4");
  }
  const Dataset subset = material_subset(data, material);
  require_nonempty(subset);

  const MonomialBasis basis(degree);
  const std::size_t n = subset.records.size();
  const std::size_t k = basis.size();
  std::vector<double> design(n * k);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<double, 4> x = subset.normalization.normalize(subset.records[i].gait);
    basis.expand(x, design.data() + i * k);
    y[i] = cycle_mean_target(subset.records[i].series, target);
  }
  constexpr double kRidge = 1e-8;
  std::vector<double> coeffs = linalg::ridge_least_squares(design, n, k, y, kRidge);

  SurrogateModel model;
  model.kind = degree == 1 ? ModelKind::Linear : ModelKind::Quartic;
  model.target = target;
  model.material = material;
  model.arch = {degree};
  model.params = std::move(coeffs);
  model.meta.data_hash = dataset_hash(subset);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = kernels::dot(design.data() + i * k, model.params.data(), k);
    sq += (pred - y[i]) * (pred - y[i]);
  }
  model.meta.final_loss = sq / static_cast<double>(n);
  return model;
}

// ---------------------------------------------------------------------------
// Feed-forward net

SurrogateModel fit_mlp(const Dataset& data, Target target, FinMaterialId material,
                       const MlpHyper& hyper) {
  const Dataset subset = material_subset(data, material);
  require_nonempty(subset);
  if (hyper.hidden_layers < 1 || hyper.width < 1 || hyper.epochs < 0) {
    raise(ErrorCode::InvalidArgument, "bad feed-forward hyperparameters");
  }

  const std::size_t n = subset.records.size();
  std::vector<std::array<double, 4>> features(n);
  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    features[i] = subset.normalization.normalize(subset.records[i].gait);
    targets[i] = cycle_mean_target(subset.records[i].series, target);
  }
  const TargetScaling scaling = scaling_from_values(targets);
  std::vector<double> norm_targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    norm_targets[i] = (targets[i] - scaling.offset) / scaling.scale;
  }

  MlpDims dims;
  dims.n_inputs = 4;
  dims.width = hyper.width;
  dims.hidden_layers = hyper.hidden_layers;

  SurrogateModel model;
  model.kind = ModelKind::Mlp;
  model.target = target;
  model.material = material;
  model.arch = dims.to_arch();
  model.target_offset = scaling.offset;
  model.target_scale = scaling.scale;
  model.meta.data_hash = dataset_hash(subset);

  std::mt19937_64 rng(hyper.seed);
  detail::mlp_init(dims, rng, model.params);

  const std::size_t param_count = model.params.size();
  std::vector<double> grad(param_count);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Adam adam(param_count);
  MlpScratch scratch;

  const int batch_size = std::max(1, hyper.batch_size);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t end = std::min(n, start + batch_size);
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t i = order[b];
        const double pred =
            detail::mlp_forward(dims, model.params.data(), features[i].data(), scratch);
        const double err = pred - norm_targets[i];
        batch_loss += err * err * inv_batch;
        detail::mlp_backward(dims, model.params.data(), features[i].data(), scratch,
                             2.0 * err * inv_batch, grad.data());
      }
      adam.step(model.params, grad, hyper.learning_rate);
      epoch_loss += batch_loss;
      ++n_batches;
    }
    epoch_loss /= static_cast<double>(n_batches);
    if (!std::isfinite(epoch_loss)) {
      raise(ErrorCode::DivergedTraining, "feed-forward training loss became non-finite");
    }
    model.meta.loss_history.push_back(epoch_loss);
  }
  model.meta.epochs = static_cast<std::uint32_t>(hyper.epochs);
  if (!model.meta.loss_history.empty()) {
    model.meta.final_loss = model.meta.loss_history.back();
  } else {
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double pred =
          detail::mlp_forward(dims, model.params.data(), features[i].data(), scratch);
      loss += (pred - norm_targets[i]) * (pred - norm_targets[i]);
    }
    model.meta.final_loss = loss / static_cast<double>(n);
  }
  return model;
}

// ---------------------------------------------------------------------------
// Recurrent model

SurrogateModel fit_lstm(const Dataset& data, Target target, FinMaterialId material,
                        const LstmHyper& hyper) {
  const Dataset subset = material_subset(data, material);
  require_nonempty(subset);
  if (hyper.hidden_size < 1 || hyper.epochs < 0) {
    raise(ErrorCode::InvalidArgument, "bad recurrent hyperparameters");
  }

  const std::size_t n = subset.records.size();
  const std::size_t steps = subset.n_steps;
  std::vector<std::vector<double>> inputs(n);
  std::vector<std::vector<double>> targets(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const DatasetRecord& rec = subset.records[i];
    inputs[i] = detail::lstm_inputs_from_series(subset.normalization, rec.gait, rec.series);
    targets[i] = series_target(rec.series, target);
    for (double v : targets[i]) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double scale = (hi - lo) > 1e-12 ? (hi - lo) : 1.0;
  for (auto& series : targets) {
    for (double& v : series) v = (v - lo) / scale;
  }

  LstmDims dims;
  dims.n_inputs = 6;
  dims.hidden = hyper.hidden_size;

  SurrogateModel model;
  model.kind = ModelKind::Lstm;
  model.target = target;
  model.material = material;
  model.arch = {6, hyper.hidden_size, 1, static_cast<std::int64_t>(steps)};
  model.target_offset = lo;
  model.target_scale = scale;
  model.meta.data_hash = dataset_hash(subset);

  std::mt19937_64 rng(hyper.seed);
  detail::lstm_init(dims, rng, model.params);

  const std::size_t param_count = model.params.size();
  std::vector<double> grad(param_count);
  std::vector<double> upstream(steps);
  std::vector<double> jittered;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Adam adam(param_count);
  LstmScratch scratch;
  auto gaussian = [](std::mt19937_64& engine) {
    double u1 = 0.0;
    do {
      u1 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    } while (u1 <= 0.0);
    const double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  };

  const int batch_size = std::max(1, hyper.batch_size);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t end = std::min(n, start + batch_size);
      const double inv_count =
          1.0 / (static_cast<double>(end - start) * static_cast<double>(steps));
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t i = order[b];
        const double* sample_inputs = inputs[i].data();
        if (hyper.feature_jitter > 0.0) {
          jittered = inputs[i];
          double delta[4];
          for (double& d : delta) d = hyper.feature_jitter * gaussian(rng);
          for (std::size_t t = 0; t < steps; ++t) {
            double* row = &jittered[t * 6];
            // Amplitude columns scale with their jittered features so the
            // per-step angles stay consistent with the static inputs.
            const double stroke_ratio =
                row[3] != 0.0 ? (row[3] + delta[1]) / row[3] : 1.0;
            const double pitch_ratio =
                row[4] != 0.0 ? (row[4] + delta[2]) / row[4] : 1.0;
            row[0] *= stroke_ratio;
            row[1] *= pitch_ratio;
            row[2] += delta[0];
            row[3] += delta[1];
            row[4] += delta[2];
            row[5] += delta[3];
          }
          sample_inputs = jittered.data();
        }
        detail::lstm_forward(dims, model.params.data(), sample_inputs, steps, scratch);
        double mean_err = 0.0;
        for (std::size_t t = 0; t < steps; ++t) {
          const double err = scratch.output[t] - targets[i][t];
          batch_loss += err * err * inv_count;
          upstream[t] = 2.0 * err * inv_count;
          mean_err += err;
        }
        if (hyper.mean_loss_weight > 0.0) {
          mean_err /= static_cast<double>(steps);
          const double w = hyper.mean_loss_weight / static_cast<double>(end - start);
          batch_loss += w * mean_err * mean_err;
          const double extra = 2.0 * w * mean_err / static_cast<double>(steps);
          for (std::size_t t = 0; t < steps; ++t) upstream[t] += extra;
        }
        detail::lstm_backward(dims, model.params.data(), sample_inputs, steps, scratch,
                              upstream.data(), grad.data());
      }
      if (hyper.weight_decay > 0.0) {
        kernels::axpy(hyper.weight_decay, model.params.data(), grad.data(), param_count);
      }
      adam.step(model.params, grad, hyper.learning_rate);
      epoch_loss += batch_loss;
      ++n_batches;
    }
    epoch_loss /= static_cast<double>(n_batches);
    if (!std::isfinite(epoch_loss)) {
      raise(ErrorCode::DivergedTraining, "recurrent training loss became non-finite");
    }
    model.meta.loss_history.push_back(epoch_loss);
  }
  model.meta.epochs = static_cast<std::uint32_t>(hyper.epochs);
  model.meta.final_loss =
      model.meta.loss_history.empty() ? 0.0 : model.meta.loss_history.back();
  return model;
}

// ---------------------------------------------------------------------------
// Prediction

namespace {

double poly_predict(const SurrogateModel& model, const GaitParams& gait) {
  const MonomialBasis basis(static_cast<int>(model.arch.at(0)));
  std::vector<double> mono(basis.size());
  basis.expand(FeatureBounds::envelope().normalize(gait), mono.data());
  return kernels::dot(mono.data(), model.params.data(), mono.size());
}

double mlp_predict(const SurrogateModel& model, const GaitParams& gait) {
  const MlpDims dims = MlpDims::from_arch(model.arch);
  const std::array<double, 4> x = FeatureBounds::envelope().normalize(gait);
  MlpScratch scratch;
  const double y = detail::mlp_forward(dims, model.params.data(), x.data(), scratch);
  return y * model.target_scale + model.target_offset;
}

std::vector<double> lstm_predict_series(const SurrogateModel& model, const GaitParams& gait,
                                        std::size_t n_steps) {
  const LstmDims dims = LstmDims::from_arch(model.arch);
  const std::vector<double> inputs =
      detail::lstm_inputs_from_gait(FeatureBounds::envelope(), gait, n_steps);
  LstmScratch scratch;
  detail::lstm_forward(dims, model.params.data(), inputs.data(), n_steps, scratch);
  std::vector<double> out(n_steps);
  for (std::size_t t = 0; t < n_steps; ++t) {
    out[t] = scratch.output[t] * model.target_scale + model.target_offset;
  }
  return out;
}

}  // namespace

double predict_mean(const SurrogateModel& model, const GaitParams& gait) {
  if (!is_attainable(gait)) {
    raise(ErrorCode::UnattainableGait, "prediction requested for unattainable gait");
  }
  switch (model.kind) {
    case ModelKind::Linear:
    case ModelKind::Quartic:
      return poly_predict(model, gait);
    case ModelKind::Mlp:
      return mlp_predict(model, gait);
    case ModelKind::Lstm: {
      const std::size_t steps = static_cast<std::size_t>(model.arch.at(3));
      const std::vector<double> series = lstm_predict_series(model, gait, steps);
      return kernels::mean(series.data(), series.size());
    }
  }
  raise(ErrorCode::InvalidArgument, "unknown model kind");
}

std::vector<double> predict_series(const SurrogateModel& model, const GaitParams& gait,
                                   std::size_t n_steps) {
  if (model.kind != ModelKind::Lstm) {
    raise(ErrorCode::WrongModelKind, "per-timestep prediction needs the recurrent model");
  }
  if (n_steps < 2) raise(ErrorCode::InvalidArgument, "predict_series needs n_steps >= 2");
  return lstm_predict_series(model, gait, n_steps);
}

// ---------------------------------------------------------------------------
// Evaluation

EvalReport evaluate(const SurrogateModel& model, const Dataset& data,
                    const std::vector<GaitParams>& holdout) {
  if (holdout.empty()) raise(ErrorCode::EmptyHoldout, "empty holdout list");
  EvalReport report;
  report.per_gait_error.reserve(holdout.size());
  double total = 0.0;
  for (const GaitParams& gait : holdout) {
    const DatasetRecord* found = nullptr;
    for (const DatasetRecord& rec : data.records) {
      if (rec.material == model.material && rec.gait == gait) {
        found = &rec;
        break;
      }
    }
    if (found == nullptr) {
      raise(ErrorCode::InvalidArgument, "holdout gait missing from dataset");
    }
    const double truth = cycle_mean_target(found->series, model.target);
    const double err = std::abs(predict_mean(model, gait) - truth);
    report.per_gait_error.push_back(err);
    total += err;
  }
  report.mean_absolute_error = total / static_cast<double>(holdout.size());

  // Single-thread throughput over >= 1000 predictions.
  const std::size_t kMinPasses = 1000;
  std::size_t passes = 0;
  volatile double sink = 0.0;
  const auto begin = std::chrono::steady_clock::now();
  double elapsed = 0.0;
  while (passes < kMinPasses || elapsed < 0.05) {
    for (std::size_t i = 0; i < 100; ++i) {
      sink = predict_mean(model, holdout[(passes + i) % holdout.size()]);
    }
    passes += 100;
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  }
  (void)sink;
  report.forward_passes_per_second = static_cast<double>(passes) / elapsed;
  return report;
}

// ---------------------------------------------------------------------------
// Gradient verification

double check_gradients(ModelKind kind, const Dataset& data, std::uint64_t seed,
                       int n_params) {
  if (kind != ModelKind::Mlp && kind != ModelKind::Lstm) {
    raise(ErrorCode::WrongModelKind, "gradient check applies to differentiable models");
  }
  if (data.empty()) raise(ErrorCode::EmptyDataset, "gradient check needs data");
  const std::size_t batch = std::min<std::size_t>(8, data.records.size());

  std::mt19937_64 rng(seed);
  std::vector<double> params;
  std::vector<double> analytic;

  if (kind == ModelKind::Mlp) {
    MlpDims dims;
    detail::mlp_init(dims, rng, params);
    std::vector<std::array<double, 4>> xs(batch);
    std::vector<double> ts(batch);
    for (std::size_t i = 0; i < batch; ++i) {
      xs[i] = data.normalization.normalize(data.records[i].gait);
      ts[i] = cycle_mean_target(data.records[i].series, Target::Thrust);
    }
    auto loss_at = [&](const std::vector<double>& p) {
      MlpScratch scratch;
      double loss = 0.0;
      for (std::size_t i = 0; i < batch; ++i) {
        const double pred = detail::mlp_forward(dims, p.data(), xs[i].data(), scratch);
        loss += (pred - ts[i]) * (pred - ts[i]);
      }
      return loss / static_cast<double>(batch);
    };
    analytic.assign(params.size(), 0.0);
    MlpScratch scratch;
    for (std::size_t i = 0; i < batch; ++i) {
      const double pred = detail::mlp_forward(dims, params.data(), xs[i].data(), scratch);
      detail::mlp_backward(dims, params.data(), xs[i].data(), scratch,
                           2.0 * (pred - ts[i]) / static_cast<double>(batch),
                           analytic.data());
    }
    return detail::finite_difference_max_error(params, analytic, loss_at, rng, n_params);
  }

  LstmDims dims;
  detail::lstm_init(dims, rng, params);
  const std::size_t steps = data.n_steps;
  std::vector<std::vector<double>> xs(batch);
  std::vector<std::vector<double>> ts(batch);
  for (std::size_t i = 0; i < batch; ++i) {
    const DatasetRecord& rec = data.records[i];
    xs[i] = detail::lstm_inputs_from_series(data.normalization, rec.gait, rec.series);
    ts[i] = series_target(rec.series, Target::Thrust);
  }
  auto loss_at = [&](const std::vector<double>& p) {
    LstmScratch scratch;
    double loss = 0.0;
    for (std::size_t i = 0; i < batch; ++i) {
      detail::lstm_forward(dims, p.data(), xs[i].data(), steps, scratch);
      for (std::size_t t = 0; t < steps; ++t) {
        const double err = scratch.output[t] - ts[i][t];
        loss += err * err;
      }
    }
    return loss / (static_cast<double>(batch) * static_cast<double>(steps));
  };
  analytic.assign(params.size(), 0.0);
  LstmScratch scratch;
  std::vector<double> upstream(steps);
  const double inv_count = 1.0 / (static_cast<double>(batch) * static_cast<double>(steps));
  for (std::size_t i = 0; i < batch; ++i) {
    detail::lstm_forward(dims, params.data(), xs[i].data(), steps, scratch);
    for (std::size_t t = 0; t < steps; ++t) {
      upstream[t] = 2.0 * (scratch.output[t] - ts[i][t]) * inv_count;
    }
    detail::lstm_backward(dims, params.data(), xs[i].data(), steps, scratch,
                          upstream.data(), analytic.data());
  }
  return detail::finite_difference_max_error(params, analytic, loss_at, rng, n_params);
}

}  // namespace finfom
