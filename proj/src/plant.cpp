#include "finfom/plant.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "finfom/errors.hpp"
#include "finfom/hash.hpp"
#include "finfom/textio.hpp"

namespace finfom {

namespace {

// Deterministic Gaussian stream independent of library distributions.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

std::uint64_t trial_seed(const PlantConfig& cfg, FinMaterialId material,
                         const GaitParams& gait) {
  std::uint64_t h = cfg.rng_seed;
  h = fnv1a_u64(splitmix64(h), fnv1a_u64(static_cast<std::uint64_t>(material), kFnvOffset));
  h = fnv1a_f64(gait.frequency_hz, h);
  h = fnv1a_f64(gait.stroke_amplitude_deg, h);
  h = fnv1a_f64(gait.pitch_amplitude_deg, h);
  h = fnv1a_f64(gait.stroke_pitch_offset_deg, h);
  return h;
}

double pitch_bump(const MaterialPlant& m, double pitch_deg) {
  const double u = (pitch_deg - m.pitch_peak_deg) / m.pitch_width_deg;
  return std::exp(-u * u);
}

// Linear thrust trend across the offset range: mildly favors negative
// offsets, vanishing influence at the range midpoint.
double spo_trend(const MaterialPlant& m, double spo_deg) {
  const double norm = (spo_deg + 22.5) / 67.5;
  return 1.0 + m.spo_gain * (0.5 - norm);
}

}  // namespace

double plant_thrust_mean(const PlantConfig& cfg, FinMaterialId material,
                         const GaitParams& gait) noexcept {
  const MaterialPlant& m = cfg.material(material);
  const double f = gait.frequency_hz;
  return 0.5 * m.thrust_scale_n * f * f * (gait.stroke_amplitude_deg / 55.0) *
         pitch_bump(m, gait.pitch_amplitude_deg) * spo_trend(m, gait.stroke_pitch_offset_deg);
}

double plant_stroke_power_mean(const PlantConfig& cfg, FinMaterialId material,
                               const GaitParams& gait) noexcept {
  const MaterialPlant& m = cfg.material(material);
  return (m.stroke_power_w * (gait.stroke_amplitude_deg / 55.0) + 0.5 * m.idle_power_w) *
         gait.frequency_hz / 2.0;
}

double plant_pitch_power_mean(const PlantConfig& cfg, FinMaterialId material,
                              const GaitParams& gait) noexcept {
  const MaterialPlant& m = cfg.material(material);
  return (m.pitch_power_w * m.pitch_weight * (gait.pitch_amplitude_deg / 55.0) +
          0.5 * m.idle_power_w) *
         gait.frequency_hz / 2.0;
}

double plant_power_mean(const PlantConfig& cfg, FinMaterialId material,
                        const GaitParams& gait) noexcept {
  return plant_stroke_power_mean(cfg, material, gait) +
         plant_pitch_power_mean(cfg, material, gait);
}

TrialRecord synth_trial(FinMaterialId material, const GaitParams& gait,
                        const PlantConfig& cfg) {
  if (!is_attainable(gait)) {
    raise(ErrorCode::UnattainableGait, "synthetic trial requested for unattainable gait");
  }
  const MaterialPlant& m = cfg.material(material);
  const int spc = cfg.samples_per_cycle;
  const std::size_t total = static_cast<std::size_t>(spc) * cfg.n_cycles;

  TrialRecord rec;
  rec.material = material;
  rec.gait = gait;
  rec.n_cycles = cfg.n_cycles;
  rec.sample_rate_hz = static_cast<double>(spc) * gait.frequency_hz;
  rec.voltage_v = cfg.voltage_v;
  rec.stroke_angle_deg.resize(total);
  rec.pitch_angle_deg.resize(total);
  rec.thrust_n.resize(total);
  rec.lift_n.resize(total);
  rec.side_n.resize(total);
  rec.stroke_current_a.resize(total);
  rec.pitch_current_a.resize(total);

  const Trajectory traj = gait_trajectory(gait, static_cast<std::size_t>(spc));
  const double thrust_mean = plant_thrust_mean(cfg, material, gait);
  const double stroke_current = plant_stroke_power_mean(cfg, material, gait) / cfg.voltage_v;
  const double pitch_current = plant_pitch_power_mean(cfg, material, gait) / cfg.voltage_v;
  const double f2 = gait.frequency_hz * gait.frequency_hz;
  const double lift_amp = m.lift_scale_n * f2 * (gait.pitch_amplitude_deg / 55.0);
  const double side_amp = m.side_scale_n * f2 * (gait.stroke_amplitude_deg / 55.0);
  const double offset_rad = gait.stroke_pitch_offset_deg * std::numbers::pi / 180.0;

  GaussianStream noise(trial_seed(cfg, material, gait));
  const double thrust_sigma = cfg.noise_std * cfg.thrust_ref_n;
  const double force_sigma = cfg.noise_std * cfg.force_ref_n;
  const double current_sigma = cfg.noise_std * cfg.current_ref_a;
  const bool noisy = cfg.noise_std > 0.0;

  for (std::size_t s = 0; s < total; ++s) {
    const std::size_t j = s % static_cast<std::size_t>(spc);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(spc);
    const double sin_phase = std::sin(phase);

    rec.stroke_angle_deg[s] = traj.stroke_deg[j];
    rec.pitch_angle_deg[s] = traj.pitch_deg[j];

    double thrust = 2.0 * thrust_mean * sin_phase * sin_phase;
    double lift = lift_amp * std::sin(phase + std::numbers::pi / 4.0);
    double side = side_amp * std::sin(2.0 * phase);
    double i_stroke = stroke_current * (1.0 + 0.5 * std::cos(2.0 * phase));
    double i_pitch = pitch_current * (1.0 + 0.5 * std::cos(2.0 * phase + offset_rad));
    if (noisy) {
      thrust += thrust_sigma * noise.next();
      lift += force_sigma * noise.next();
      side += force_sigma * noise.next();
      i_stroke += current_sigma * noise.next();
      i_pitch += current_sigma * noise.next();
    }
    rec.thrust_n[s] = thrust;
    rec.lift_n[s] = lift;
    rec.side_n[s] = side;
    rec.stroke_current_a[s] = std::max(0.0, i_stroke);
    rec.pitch_current_a[s] = std::max(0.0, i_pitch);
  }
  return rec;
}

namespace {

void write_material(TextRecord& rec, const std::string& prefix, const MaterialPlant& m) {
  rec.set_f64(prefix + ".thrust_scale_n", m.thrust_scale_n);
  rec.set_f64(prefix + ".pitch_peak_deg", m.pitch_peak_deg);
  rec.set_f64(prefix + ".pitch_width_deg", m.pitch_width_deg);
  rec.set_f64(prefix + ".spo_gain", m.spo_gain);
  rec.set_f64(prefix + ".stroke_power_w", m.stroke_power_w);
  rec.set_f64(prefix + ".pitch_power_w", m.pitch_power_w);
  rec.set_f64(prefix + ".pitch_weight", m.pitch_weight);
  rec.set_f64(prefix + ".idle_power_w", m.idle_power_w);
  rec.set_f64(prefix + ".lift_scale_n", m.lift_scale_n);
  rec.set_f64(prefix + ".side_scale_n", m.side_scale_n);
}

MaterialPlant read_material(const TextRecord& rec, const std::string& prefix) {
  MaterialPlant m;
  m.thrust_scale_n = rec.get_f64(prefix + ".thrust_scale_n");
  m.pitch_peak_deg = rec.get_f64(prefix + ".pitch_peak_deg");
  m.pitch_width_deg = rec.get_f64(prefix + ".pitch_width_deg");
  m.spo_gain = rec.get_f64(prefix + ".spo_gain");
  m.stroke_power_w = rec.get_f64(prefix + ".stroke_power_w");
  m.pitch_power_w = rec.get_f64(prefix + ".pitch_power_w");
  m.pitch_weight = rec.get_f64(prefix + ".pitch_weight");
  m.idle_power_w = rec.get_f64(prefix + ".idle_power_w");
  m.lift_scale_n = rec.get_f64(prefix + ".lift_scale_n");
  m.side_scale_n = rec.get_f64(prefix + ".side_scale_n");
  return m;
}

}  // namespace

void PlantConfig::save_file(const std::string& path) const {
  TextRecord rec;
  rec.set_i64("schema_version", 1);
  rec.set_f64("noise_std", noise_std);
  rec.set_u64("rng_seed", rng_seed);
  rec.set_i64("samples_per_cycle", samples_per_cycle);
  rec.set_i64("n_cycles", n_cycles);
  rec.set_f64("voltage_v", voltage_v);
  rec.set_f64("thrust_ref_n", thrust_ref_n);
  rec.set_f64("force_ref_n", force_ref_n);
  rec.set_f64("current_ref_a", current_ref_a);
  for (FinMaterialId id : kAllMaterials) {
    write_material(rec, material_name(id), material(id));
  }
  rec.save_file(path);
}

PlantConfig PlantConfig::load_file(const std::string& path) {
  const TextRecord rec = TextRecord::load_file(path);
  if (rec.get_i64("schema_version") != 1) {
    raise(ErrorCode::VersionError, "unsupported plant config schema version");
  }
  PlantConfig cfg;
  cfg.noise_std = rec.get_f64("noise_std");
  cfg.rng_seed = rec.get_u64("rng_seed");
  cfg.samples_per_cycle = static_cast<int>(rec.get_i64("samples_per_cycle"));
  cfg.n_cycles = static_cast<int>(rec.get_i64("n_cycles"));
  cfg.voltage_v = rec.get_f64("voltage_v");
  cfg.thrust_ref_n = rec.get_f64("thrust_ref_n");
  cfg.force_ref_n = rec.get_f64("force_ref_n");
  cfg.current_ref_a = rec.get_f64("current_ref_a");
  for (FinMaterialId id : kAllMaterials) {
    cfg.material(id) = read_material(rec, material_name(id));
  }
  return cfg;
}

PlantConfig PlantConfig::calibrated_default() noexcept {
  // Coefficients frozen from tools/finfom-calibrate: thrust scales put the
  // attainable-grid maxima at 2.1 / 1.6 / 1.2 N and power scales put the
  // rigid global peak at 7.6 W and the PDMS f=2 contour peaks near 7.1 W.
  PlantConfig cfg;

  MaterialPlant& rigid = cfg.material(FinMaterialId::Rigid);
  rigid.thrust_scale_n = 0.88996763754045305;
  rigid.pitch_peak_deg = 20.0;
  rigid.pitch_width_deg = 18.0;
  rigid.spo_gain = 0.06;
  rigid.stroke_power_w = 7.1890787917875949;
  rigid.pitch_power_w = 2.1567236375362784;
  rigid.pitch_weight = 1.0;
  rigid.idle_power_w = 1.7972696979468987;
  rigid.lift_scale_n = 0.18;
  rigid.side_scale_n = 0.08;

  MaterialPlant& soft10 = cfg.material(FinMaterialId::Pdms1to10);
  soft10.thrust_scale_n = 1.5574433656957929;
  soft10.pitch_peak_deg = 22.0;
  soft10.pitch_width_deg = 18.0;
  soft10.spo_gain = 0.06;
  soft10.stroke_power_w = 7.4380952380952374;
  soft10.pitch_power_w = 1.8595238095238094;
  soft10.pitch_weight = 1.0;
  soft10.idle_power_w = 1.4876190476190476;
  soft10.lift_scale_n = 0.14;
  soft10.side_scale_n = 0.06;

  MaterialPlant& soft20 = cfg.material(FinMaterialId::Pdms1to20);
  soft20.thrust_scale_n = 1.1985492813296492;
  soft20.pitch_peak_deg = 24.0;
  soft20.pitch_width_deg = 20.0;
  soft20.spo_gain = 0.06;
  soft20.stroke_power_w = 7.4380952380952374;
  soft20.pitch_power_w = 9.2976190476190474;
  soft20.pitch_weight = 0.2;
  soft20.idle_power_w = 1.4876190476190476;
  soft20.lift_scale_n = 0.16;
  soft20.side_scale_n = 0.05;

  return cfg;
}

}  // namespace finfom
