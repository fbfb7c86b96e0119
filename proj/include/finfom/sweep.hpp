#pragma once
// Exhaustive model evaluation over the attainable gait grid: contour
// slices, frequency/offset trend tables, and the grid-wide optimum.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "finfom/domain.hpp"
#include "finfom/fom.hpp"
#include "finfom/surrogate.hpp"

namespace finfom {

// Interpolation axes: stroke and pitch 0..55 deg in 1 deg steps, frequency
// 0.75..2 Hz in 0.125 Hz steps, offset -22.5..45 deg in 5.625 deg steps.
struct SweepAxes {
  std::vector<double> frequencies;
  std::vector<double> spos;
  std::vector<double> strokes;
  std::vector<double> pitches;

  static SweepAxes standard();

  std::size_t raw_size() const noexcept {
    return frequencies.size() * spos.size() * strokes.size() * pitches.size();
  }
  // Storage is frequency-major, then offset, then stroke, then pitch.
  std::size_t index(std::size_t fi, std::size_t si, std::size_t ki,
                    std::size_t pi) const noexcept {
    return ((fi * spos.size() + si) * strokes.size() + ki) * pitches.size() + pi;
  }
  GaitParams gait_at(std::size_t fi, std::size_t si, std::size_t ki,
                     std::size_t pi) const noexcept {
    return {frequencies[fi], strokes[ki], pitches[pi], spos[si]};
  }
};

using MeanPredictor = std::function<double(const GaitParams&)>;

struct SweepGrid {
  FinMaterialId material = FinMaterialId::Rigid;
  SweepAxes axes;
  double velocity_mps = 1.0;
  std::vector<double> thrust_n;   // raw_size, valid where mask set
  std::vector<double> power_w;
  std::vector<double> eta;
  std::vector<std::uint8_t> mask;
  std::size_t attainable_count = 0;
  std::uint64_t thrust_model_hash = 0;
  std::uint64_t power_model_hash = 0;
};

// Number of interpolation points the reference analysis reports per data
// set; logged next to the attainable count, never asserted.
inline constexpr std::size_t kReferenceInterpolationCount = 435600;

// Evaluates both predictors and the figure of merit at every attainable
// grid point. Deterministic; worker partitioning never changes results.
SweepGrid run_sweep(const MeanPredictor& thrust, const MeanPredictor& power,
                    FinMaterialId material, double velocity_mps, int n_threads = 0);
SweepGrid run_sweep(const SurrogateModel& thrust_model, const SurrogateModel& power_model,
                    double velocity_mps, int n_threads = 0);

struct ContourCell {
  double stroke_deg, pitch_deg;
  double thrust_n, power_w, eta;
};

// The (stroke x pitch) plane at one on-axis (frequency, spo) pair.
// Throws OffAxisQuery for values not exactly on the axes.
std::vector<ContourCell> contour_slice(const SweepGrid& grid, double frequency_hz,
                                       double spo_deg);

struct TrendRow {
  double axis_value;
  double max_eta;
  double mean_eta;
};

std::vector<TrendRow> trend_by_frequency(const SweepGrid& grid);
std::vector<TrendRow> trend_by_spo(const SweepGrid& grid);

// Argmax of eta over unmasked points; ties broken by lower power, then
// lexicographic gait order. Throws EmptyGrid.
std::pair<GaitParams, FomReport> global_optimum(const SweepGrid& grid);

// CSV (one row per unmasked point, storage order) plus a sidecar with axis
// specs, counts and model hashes.
void save_grid(const SweepGrid& grid, const std::string& csv_path,
               const std::string& sidecar_path);
SweepGrid load_grid(const std::string& csv_path, const std::string& sidecar_path);

void save_contour_csv(const std::vector<ContourCell>& cells, const std::string& path);
void save_trend_csv(const std::vector<TrendRow>& rows, const char* axis_column,
                    const std::string& path);

}  // namespace finfom
