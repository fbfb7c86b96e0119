#pragma once
// Calibrated synthetic plant standing in for the rig. Produces raw trial
// records for any attainable gait, and exposes the noise-free closed-form
// cycle means used as ground truth by the tests.
//
// Cycle-mean response per material m:
//   thrust(f, S, P, o) = 0.5 * a_m * f^2 * (S/55) * bump_m(P) * trend_m(o)
//   power(f, S, P)     = (b_m * (S/55) + c_m * w_m * (P/55) + d_m) * f / 2
// with bump_m a Gaussian in pitch centered in the efficient 20-35 deg band
// and trend_m a small linear lift toward negative stroke-pitch offsets.
// Coefficients are fixed constants calibrated so the grid maxima reproduce
// the reference rig extremes (see configs/plant_default.cfg).

#include <cstdint>
#include <string>

#include "finfom/dataio.hpp"
#include "finfom/domain.hpp"

namespace finfom {

struct MaterialPlant {
  double thrust_scale_n = 0.0;   // a
  double pitch_peak_deg = 0.0;   // bump center
  double pitch_width_deg = 1.0;  // bump width
  double spo_gain = 0.0;         // thrust spread across the offset range
  double stroke_power_w = 0.0;   // b
  double pitch_power_w = 0.0;    // c
  double pitch_weight = 1.0;     // w
  double idle_power_w = 0.0;     // d
  double lift_scale_n = 0.0;
  double side_scale_n = 0.0;
};

struct PlantConfig {
  MaterialPlant materials[kMaterialCount];
  double noise_std = 0.02;     // fraction of the channel reference scale
  std::uint64_t rng_seed = 42;
  int samples_per_cycle = 64;
  int n_cycles = kProtocolCycles;
  double voltage_v = 4.98;
  // Channel reference scales the noise fraction applies to.
  double thrust_ref_n = 4.0;
  double force_ref_n = 2.0;    // lift / side
  double current_ref_a = 1.5;

  static PlantConfig calibrated_default() noexcept;

  const MaterialPlant& material(FinMaterialId id) const noexcept {
    return materials[static_cast<int>(id)];
  }
  MaterialPlant& material(FinMaterialId id) noexcept {
    return materials[static_cast<int>(id)];
  }

  void save_file(const std::string& path) const;
  static PlantConfig load_file(const std::string& path);
};

// Noise-free cycle means (plant truth).
double plant_thrust_mean(const PlantConfig& cfg, FinMaterialId material,
                         const GaitParams& gait) noexcept;
double plant_power_mean(const PlantConfig& cfg, FinMaterialId material,
                        const GaitParams& gait) noexcept;
double plant_stroke_power_mean(const PlantConfig& cfg, FinMaterialId material,
                               const GaitParams& gait) noexcept;
double plant_pitch_power_mean(const PlantConfig& cfg, FinMaterialId material,
                              const GaitParams& gait) noexcept;

// Generates a full raw trial (n_cycles of every channel). Deterministic in
// (material, gait, cfg.rng_seed). Throws UnattainableGait.
TrialRecord synth_trial(FinMaterialId material, const GaitParams& gait,
                        const PlantConfig& cfg);

}  // namespace finfom
