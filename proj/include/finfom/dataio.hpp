#pragma once
// Trial-record file format, multi-cycle segmentation, and dataset assembly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "finfom/domain.hpp"

namespace finfom {

// One experimental (or synthetic) run: a gait driven for n_cycles full
// cycles while all channels are sampled uniformly.
struct TrialRecord {
  FinMaterialId material = FinMaterialId::Rigid;
  GaitParams gait;
  double sample_rate_hz = 0.0;
  int n_cycles = 0;
  std::vector<double> stroke_angle_deg;
  std::vector<double> pitch_angle_deg;
  std::vector<double> thrust_n;
  std::vector<double> lift_n;
  std::vector<double> side_n;
  std::vector<double> stroke_current_a;
  std::vector<double> pitch_current_a;
  double voltage_v = 0.0;

  std::size_t total_samples() const noexcept { return thrust_n.size(); }
  std::size_t samples_per_cycle() const noexcept {
    return n_cycles > 0 ? total_samples() / static_cast<std::size_t>(n_cycles) : 0;
  }
};

// Test protocol constants: 10 cycles per trial, the 5 middle ones kept.
inline constexpr int kProtocolCycles = 10;
inline constexpr int kKeptCycleFirst = 2;  // 0-indexed, inclusive
inline constexpr int kKeptCycleLast = 6;   // inclusive

// The experimental gait grid (one trial per attainable combination).
struct ExperimentGrid {
  std::vector<double> frequencies;
  std::vector<double> strokes;
  std::vector<double> pitches;
  std::vector<double> spos;
  double voltage_v = 4.98;

  static ExperimentGrid standard();

  // Full product in (frequency, stroke, pitch, spo) ascending order.
  std::vector<GaitParams> all_gaits() const;
  // Product filtered by is_attainable, same order.
  std::vector<GaitParams> attainable_gaits() const;
};

// Feature min/max used to map gaits into [0,1]^4. Defaults to the rig
// envelope so models trained on subsets share a feature space.
struct FeatureBounds {
  double frequency_min = 0.75, frequency_max = 2.0;
  double stroke_min = 0.0, stroke_max = 55.0;
  double pitch_min = 0.0, pitch_max = 55.0;
  double spo_min = -22.5, spo_max = 45.0;

  static FeatureBounds envelope() noexcept { return {}; }

  // Degenerate bounds (min == max) map to 0.
  std::array<double, 4> normalize(const GaitParams& g) const noexcept;
};

struct DatasetRecord {
  FinMaterialId material = FinMaterialId::Rigid;
  GaitParams gait;
  CycleSeries series;
};

struct Dataset {
  std::vector<DatasetRecord> records;
  FeatureBounds normalization;
  std::size_t n_steps = kCanonicalCycleSteps;

  bool empty() const noexcept { return records.empty(); }
};

// Trial CSV. One header line, then one row per sample:
//   material_id, frequency_hz, stroke_amp_deg, pitch_amp_deg, spo_deg,
//   sample_index, stroke_angle_deg, pitch_angle_deg, thrust_n, lift_n,
//   side_n, current_stroke_a, current_pitch_a, voltage_v
// Grouping key = (material_id, frequency_hz, stroke_amp_deg, pitch_amp_deg,
// spo_deg); row order within a group is time order. Floats carry 9
// significant digits.
std::vector<TrialRecord> load_trials(const std::string& path);
void write_trials(const std::vector<TrialRecord>& trials, const std::string& path);

// Keeps the middle cycles (2..6 of 10), phase-averages them into a single
// cycle and linearly resamples to n_steps. Throws TooFewCycles below 7.
CycleSeries segment_cycles(const TrialRecord& rec, std::size_t n_steps);

// Segments every trial and orders records by (material, frequency, stroke,
// pitch, spo). Normalization is the fixed envelope.
Dataset build_dataset(const std::vector<TrialRecord>& trials,
                      std::size_t n_steps = kCanonicalCycleSteps);

void save_dataset(const Dataset& data, const std::string& path);
Dataset load_dataset(const std::string& path);

std::uint64_t dataset_hash(const Dataset& data) noexcept;

// Cycle-mean / per-timestep training targets.
double cycle_mean_target(const CycleSeries& series, Target target) noexcept;
std::vector<double> series_target(const CycleSeries& series, Target target);

}  // namespace finfom
