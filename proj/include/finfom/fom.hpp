#pragma once
// Propulsive-efficiency figure of merit: mean force times a reference
// velocity over mean electrical power, plus per-axis and per-actuator
// variants.

#include <optional>

#include "finfom/domain.hpp"
#include "finfom/textio.hpp"

namespace finfom {

struct SurrogateModel;  // surrogate.hpp

// Below this the gait is treated as idle and the metric is an error
// rather than an unbounded number.
inline constexpr double kZeroPowerEpsilonW = 1e-9;

struct FomReport {
  double eta = 0.0;          // force * velocity / total power
  double eta_thrust = 0.0;
  std::optional<double> eta_lift;
  std::optional<double> eta_side;
  std::optional<double> eta_stroke_actuator;
  std::optional<double> eta_pitch_actuator;
  double mean_force_n = 0.0;
  double mean_power_w = 0.0;
  double reference_velocity_mps = 0.0;

  TextRecord to_text() const;
  static FomReport from_text(const TextRecord& rec);
};

// force / power. Throws ZeroPower when power <= epsilon.
double fom_basic(double mean_force_n, double mean_power_w);

// force * velocity / power; velocity >= 0. At velocity 1 this reduces to
// fom_basic bit-for-bit.
double fom(double mean_force_n, double mean_power_w, double velocity_mps);

// Optional velocity provider: force / power used as the reference speed.
double characteristic_velocity(double mean_force_n, double mean_power_w);

// Selected axis mean force over total mean power.
double fom_axis(const CycleSeries& series, ForceAxis axis, double velocity_mps);

// Force over a single actuator's power. Throws ZeroActuatorPower.
double fom_actuator(const CycleSeries& series, Actuator actuator,
                    ForceAxis force_axis, double velocity_mps);

// Full report from a measured/synthetic cycle (all fields populated).
FomReport fom_report(const CycleSeries& series, double velocity_mps);

// Report from forward models; per-axis and per-actuator fields stay absent
// because the models predict thrust and total power only.
FomReport fom_report(const SurrogateModel& thrust_model,
                     const SurrogateModel& power_model, const GaitParams& gait,
                     double velocity_mps);

FomReport fom_report_from_means(double thrust_n, double power_w, double velocity_mps);

}  // namespace finfom
