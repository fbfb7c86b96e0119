// Recomputes the plant coefficient scales from the shape parameters:
// thrust scale from the attainable-grid maximum, power scales from the
// rigid global peak and the PDMS f=2 contour peaks. The resulting block is
// what configs/plant_default.cfg and PlantConfig::calibrated_default() carry.

#include <cstdio>

#include "finfom/plant.hpp"
#include "finfom/sweep.hpp"
#include "finfom/textio.hpp"

using namespace finfom;

namespace {

struct GridExtremes {
  double max_thrust = 0.0;
  GaitParams max_thrust_gait;
  double max_power = 0.0;
  GaitParams max_power_gait;
  double contour_max_power = 0.0;  // f = 2 Hz plane
  double max_eta = 0.0;
  GaitParams max_eta_gait;
};

GridExtremes scan(const PlantConfig& cfg, FinMaterialId material) {
  const SweepAxes axes = SweepAxes::standard();
  GridExtremes ext;
  for (std::size_t fi = 0; fi < axes.frequencies.size(); ++fi) {
    for (std::size_t si = 0; si < axes.spos.size(); ++si) {
      for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
        for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
          const GaitParams g = axes.gait_at(fi, si, ki, pi);
          if (!is_attainable(g)) continue;
          const double t = plant_thrust_mean(cfg, material, g);
          const double p = plant_power_mean(cfg, material, g);
          if (t > ext.max_thrust) {
            ext.max_thrust = t;
            ext.max_thrust_gait = g;
          }
          if (p > ext.max_power) {
            ext.max_power = p;
            ext.max_power_gait = g;
          }
          if (g.frequency_hz == 2.0 && p > ext.contour_max_power) ext.contour_max_power = p;
          if (p > kZeroPowerEpsilonW) {
            const double eta = t / p;
            if (eta > ext.max_eta) {
              ext.max_eta = eta;
              ext.max_eta_gait = g;
            }
          }
        }
      }
    }
  }
  return ext;
}

void print_gait(const char* label, const GaitParams& g) {
  std::printf("    %s f=%.3f stroke=%.0f pitch=%.0f spo=%.3f\n", label, g.frequency_hz,
              g.stroke_amplitude_deg, g.pitch_amplitude_deg, g.stroke_pitch_offset_deg);
}

}  // namespace

int main() {
  PlantConfig cfg = PlantConfig::calibrated_default();

  const double thrust_targets[kMaterialCount] = {1.2, 2.1, 1.6};  // rigid, 1:10, 1:20
  // Rigid pinned at its global peak; PDMS pinned at the f=2 contour peak.
  const double rigid_power_target = 7.6;
  const double pdms_contour_target = 7.1;

  for (FinMaterialId id : kAllMaterials) {
    MaterialPlant& m = cfg.material(id);
    m.thrust_scale_n = 1.0;
    GridExtremes ext = scan(cfg, id);
    m.thrust_scale_n = thrust_targets[static_cast<int>(id)] / ext.max_thrust;

    ext = scan(cfg, id);
    const double power_scale = id == FinMaterialId::Rigid
                                   ? rigid_power_target / ext.max_power
                                   : pdms_contour_target / ext.contour_max_power;
    m.stroke_power_w *= power_scale;
    m.pitch_power_w *= power_scale;
    m.idle_power_w *= power_scale;

    ext = scan(cfg, id);
    std::printf("%s:\n", material_name(id));
    std::printf("  thrust_scale_n = %s\n", format_f64(m.thrust_scale_n, 17).c_str());
    std::printf("  stroke_power_w = %s\n", format_f64(m.stroke_power_w, 17).c_str());
    std::printf("  pitch_power_w  = %s\n", format_f64(m.pitch_power_w, 17).c_str());
    std::printf("  idle_power_w   = %s\n", format_f64(m.idle_power_w, 17).c_str());
    std::printf("  max thrust %.6f N, global power %.6f W, f2-contour power %.6f W\n",
                ext.max_thrust, ext.max_power, ext.contour_max_power);
    std::printf("  max eta %.6f\n", ext.max_eta);
    print_gait("thrust argmax:", ext.max_thrust_gait);
    print_gait("power argmax: ", ext.max_power_gait);
    print_gait("eta argmax:   ", ext.max_eta_gait);
  }
  return 0;
}
