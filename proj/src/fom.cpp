#include "finfom/fom.hpp"

#include <cmath>

#include "finfom/errors.hpp"
#include "finfom/surrogate.hpp"

namespace finfom {

namespace {

void check_power(double power_w) {
  if (!(power_w > kZeroPowerEpsilonW)) {
    raise(ErrorCode::ZeroPower, "mean power below idle threshold");
  }
}

void check_velocity(double velocity_mps) {
  if (!(velocity_mps >= 0.0)) {
    raise(ErrorCode::InvalidArgument, "reference velocity must be nonnegative");
  }
}

}  // namespace

double fom_basic(double mean_force_n, double mean_power_w) {
  check_power(mean_power_w);
  return mean_force_n / mean_power_w;
}

double fom(double mean_force_n, double mean_power_w, double velocity_mps) {
  check_velocity(velocity_mps);
  check_power(mean_power_w);
  return mean_force_n * velocity_mps / mean_power_w;
}

double characteristic_velocity(double mean_force_n, double mean_power_w) {
  check_power(mean_power_w);
  return mean_force_n / mean_power_w;
}

double fom_axis(const CycleSeries& series, ForceAxis axis, double velocity_mps) {
  return fom(mean_force(series, axis), mean_power(series), velocity_mps);
}

double fom_actuator(const CycleSeries& series, Actuator actuator,
                    ForceAxis force_axis, double velocity_mps) {
  check_velocity(velocity_mps);
  const double power = actuator_power(series, actuator);
  if (!(power > kZeroPowerEpsilonW)) {
    raise(ErrorCode::ZeroActuatorPower, "actuator power below idle threshold");
  }
  return mean_force(series, force_axis) * velocity_mps / power;
}

FomReport fom_report(const CycleSeries& series, double velocity_mps) {
  FomReport rep;
  rep.reference_velocity_mps = velocity_mps;
  rep.mean_force_n = mean_force(series, ForceAxis::Thrust);
  rep.mean_power_w = mean_power(series);
  rep.eta = fom(rep.mean_force_n, rep.mean_power_w, velocity_mps);
  rep.eta_thrust = rep.eta;
  rep.eta_lift = fom_axis(series, ForceAxis::Lift, velocity_mps);
  rep.eta_side = fom_axis(series, ForceAxis::SideForce, velocity_mps);
  if (actuator_power(series, Actuator::Stroke) > kZeroPowerEpsilonW) {
    rep.eta_stroke_actuator =
        fom_actuator(series, Actuator::Stroke, ForceAxis::Thrust, velocity_mps);
  }
  if (actuator_power(series, Actuator::Pitch) > kZeroPowerEpsilonW) {
    rep.eta_pitch_actuator =
        fom_actuator(series, Actuator::Pitch, ForceAxis::Thrust, velocity_mps);
  }
  return rep;
}

FomReport fom_report(const SurrogateModel& thrust_model,
                     const SurrogateModel& power_model, const GaitParams& gait,
                     double velocity_mps) {
  if (thrust_model.target != Target::Thrust || power_model.target != Target::Power) {
    raise(ErrorCode::InvalidArgument, "report needs a thrust model and a power model");
  }
  if (thrust_model.material != power_model.material) {
    raise(ErrorCode::InvalidArgument, "thrust and power models trained on different materials");
  }
  const double thrust = predict_mean(thrust_model, gait);
  const double power = predict_mean(power_model, gait);
  return fom_report_from_means(thrust, power, velocity_mps);
}

FomReport fom_report_from_means(double thrust_n, double power_w, double velocity_mps) {
  FomReport rep;
  rep.reference_velocity_mps = velocity_mps;
  rep.mean_force_n = thrust_n;
  rep.mean_power_w = power_w;
  rep.eta = fom(thrust_n, power_w, velocity_mps);
  rep.eta_thrust = rep.eta;
  return rep;
}

namespace {

void set_optional(TextRecord& rec, const char* key, const std::optional<double>& v) {
  if (v.has_value()) {
    rec.set_f64_short(key, *v);
  } else {
    rec.set(key, "nan");
  }
}

std::optional<double> get_optional(const TextRecord& rec, const char* key) {
  const double v = rec.get_f64(key);
  if (std::isnan(v)) return std::nullopt;
  return v;
}

}  // namespace

TextRecord FomReport::to_text() const {
  TextRecord rec;
  rec.set_f64_short("eta", eta);
  rec.set_f64_short("eta_thrust", eta_thrust);
  set_optional(rec, "eta_lift", eta_lift);
  set_optional(rec, "eta_side", eta_side);
  set_optional(rec, "eta_stroke_act", eta_stroke_actuator);
  set_optional(rec, "eta_pitch_act", eta_pitch_actuator);
  rec.set_f64_short("mean_force_n", mean_force_n);
  rec.set_f64_short("mean_power_w", mean_power_w);
  rec.set_f64_short("velocity_mps", reference_velocity_mps);
  return rec;
}

FomReport FomReport::from_text(const TextRecord& rec) {
  FomReport rep;
  rep.eta = rec.get_f64("eta");
  rep.eta_thrust = rec.get_f64("eta_thrust");
  rep.eta_lift = get_optional(rec, "eta_lift");
  rep.eta_side = get_optional(rec, "eta_side");
  rep.eta_stroke_actuator = get_optional(rec, "eta_stroke_act");
  rep.eta_pitch_actuator = get_optional(rec, "eta_pitch_act");
  rep.mean_force_n = rec.get_f64("mean_force_n");
  rep.mean_power_w = rec.get_f64("mean_power_w");
  rep.reference_velocity_mps = rec.get_f64("velocity_mps");
  return rep;
}

}  // namespace finfom
