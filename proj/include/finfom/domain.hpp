#pragma once
// Core gait kinematics: the parameter envelope, frequency-dependent
// attainability limits, analytic stroke/pitch trajectories, and
// cycle-averaged force/power.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace finfom {

enum class FinMaterialId { Rigid = 0, Pdms1to10 = 1, Pdms1to20 = 2 };

inline constexpr int kMaterialCount = 3;
inline constexpr std::array<FinMaterialId, kMaterialCount> kAllMaterials = {
    FinMaterialId::Rigid, FinMaterialId::Pdms1to10, FinMaterialId::Pdms1to20};

const char* material_name(FinMaterialId id) noexcept;
FinMaterialId material_from_name(const std::string& name);  // throws InvalidArgument

struct FinMaterial {
  FinMaterialId id;
  double youngs_modulus_pa;

  static FinMaterial from_id(FinMaterialId id) noexcept;
};

// One flapping gait. Angles carried in degrees, frequency in Hz.
struct GaitParams {
  double frequency_hz = 0.0;
  double stroke_amplitude_deg = 0.0;   // peak stroke angle over a cycle
  double pitch_amplitude_deg = 0.0;    // peak pitch angle over a cycle
  double stroke_pitch_offset_deg = 0.0;  // phase lead of pitch, in degrees of cycle

  friend bool operator==(const GaitParams&, const GaitParams&) = default;
};

// Lexicographic order (frequency, stroke, pitch, offset); the deterministic
// tie-break order used by sweep and selector.
bool gait_less(const GaitParams& a, const GaitParams& b) noexcept;

// Test-rig envelope the data grid lives in.
struct GaitEnvelope {
  double frequency_min = 0.75, frequency_max = 2.0;
  double stroke_min = 0.0, stroke_max = 55.0;
  double pitch_min = 0.0, pitch_max = 55.0;
  double spo_min = -22.5, spo_max = 45.0;

  bool contains(const GaitParams& g) const noexcept;
};

// Frequency-dependent amplitude limits: at frequency f the rig can reach
// stroke < 97 - 30 f and pitch < 75 - 26 f (zero amplitude allowed).
bool is_attainable(const GaitParams& g) noexcept;
double attainable_stroke_limit(double frequency_hz) noexcept;
double attainable_pitch_limit(double frequency_hz) noexcept;

inline constexpr std::size_t kCanonicalCycleSteps = 64;

struct Trajectory {
  std::vector<double> stroke_deg;
  std::vector<double> pitch_deg;
};

// One full cycle sampled at n_steps uniform phase points, endpoint excluded:
//   stroke_k = Phi * sin(2 pi k / n)
//   pitch_k  = Theta * sin(2 pi k / n + spo * pi / 180)
// Positive offset means pitch leads stroke.
Trajectory gait_trajectory(const GaitParams& g, std::size_t n_steps);

// Uniformly resampled time histories over one flap cycle.
struct CycleSeries {
  std::vector<double> stroke_angle_deg;
  std::vector<double> pitch_angle_deg;
  std::vector<double> thrust_n;
  std::vector<double> lift_n;
  std::vector<double> side_n;
  std::vector<double> stroke_current_a;
  std::vector<double> pitch_current_a;
  double voltage_v = 0.0;

  std::size_t n_steps() const noexcept { return thrust_n.size(); }
};

// Throws InvalidArgument unless all channels share length >= 2,
// voltage > 0 and currents >= 0.
void validate(const CycleSeries& series);

enum class ForceAxis { Thrust, Lift, SideForce };
enum class Actuator { Stroke, Pitch };

// Quantity a surrogate model predicts.
enum class Target { Thrust = 0, Power = 1 };

const char* force_axis_name(ForceAxis axis) noexcept;
const char* target_name(Target target) noexcept;
Target target_from_name(const std::string& name);  // throws InvalidArgument

// Cycle mean of the total electrical power (I_stroke + I_pitch) * V.
double mean_power(const CycleSeries& series) noexcept;

// Cycle mean of one force channel.
double mean_force(const CycleSeries& series, ForceAxis axis) noexcept;

// Cycle mean of one actuator's electrical power.
double actuator_power(const CycleSeries& series, Actuator actuator) noexcept;

}  // namespace finfom
