#include "finfom/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "finfom/errors.hpp"
#include "finfom/kernels.hpp"

namespace finfom {

const char* material_name(FinMaterialId id) noexcept {
  switch (id) {
    case FinMaterialId::Rigid: return "rigid";
    case FinMaterialId::Pdms1to10: return "pdms1to10";
    case FinMaterialId::Pdms1to20: return "pdms1to20";
  }
  return "unknown";
}

FinMaterialId material_from_name(const std::string& name) {
  for (FinMaterialId id : kAllMaterials) {
    if (name == material_name(id)) return id;
  }
  raise(ErrorCode::InvalidArgument, "unknown material '" + name + "'");
}

FinMaterial FinMaterial::from_id(FinMaterialId id) noexcept {
  switch (id) {
    case FinMaterialId::Rigid: return {id, 1.0e9};
    case FinMaterialId::Pdms1to10: return {id, 850.0e3};
    case FinMaterialId::Pdms1to20: return {id, 310.0e3};
  }
  return {id, 0.0};
}

bool gait_less(const GaitParams& a, const GaitParams& b) noexcept {
  return std::tie(a.frequency_hz, a.stroke_amplitude_deg, a.pitch_amplitude_deg,
                  a.stroke_pitch_offset_deg) <
         std::tie(b.frequency_hz, b.stroke_amplitude_deg, b.pitch_amplitude_deg,
                  b.stroke_pitch_offset_deg);
}

bool GaitEnvelope::contains(const GaitParams& g) const noexcept {
  return g.frequency_hz >= frequency_min && g.frequency_hz <= frequency_max &&
         g.stroke_amplitude_deg >= stroke_min && g.stroke_amplitude_deg <= stroke_max &&
         g.pitch_amplitude_deg >= pitch_min && g.pitch_amplitude_deg <= pitch_max &&
         g.stroke_pitch_offset_deg >= spo_min && g.stroke_pitch_offset_deg <= spo_max;
}

double attainable_stroke_limit(double frequency_hz) noexcept {
  return 97.0 - 30.0 * frequency_hz;
}

double attainable_pitch_limit(double frequency_hz) noexcept {
  return 75.0 - 26.0 * frequency_hz;
}

bool is_attainable(const GaitParams& g) noexcept {
  return g.stroke_amplitude_deg >= 0.0 &&
         g.stroke_amplitude_deg < attainable_stroke_limit(g.frequency_hz) &&
         g.pitch_amplitude_deg >= 0.0 &&
         g.pitch_amplitude_deg < attainable_pitch_limit(g.frequency_hz);
}

Trajectory gait_trajectory(const GaitParams& g, std::size_t n_steps) {
  if (n_steps < 2) raise(ErrorCode::InvalidArgument, "trajectory needs n_steps >= 2");
  Trajectory t;
  t.stroke_deg.resize(n_steps);
  t.pitch_deg.resize(n_steps);
  const double offset_rad = g.stroke_pitch_offset_deg * std::numbers::pi / 180.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double phase = step * static_cast<double>(k);
    t.stroke_deg[k] = g.stroke_amplitude_deg * std::sin(phase);
    t.pitch_deg[k] = g.pitch_amplitude_deg * std::sin(phase + offset_rad);
  }
  return t;
}

void validate(const CycleSeries& series) {
  const std::size_t n = series.n_steps();
  if (n < 2) raise(ErrorCode::InvalidArgument, "cycle series needs at least 2 steps");
  const std::size_t lens[] = {series.stroke_angle_deg.size(), series.pitch_angle_deg.size(),
                              series.thrust_n.size(),         series.lift_n.size(),
                              series.side_n.size(),           series.stroke_current_a.size(),
                              series.pitch_current_a.size()};
  for (std::size_t len : lens) {
    if (len != n) raise(ErrorCode::InvalidArgument, "cycle series channel lengths differ");
  }
  if (!(series.voltage_v > 0.0)) raise(ErrorCode::InvalidArgument, "voltage must be positive");
  for (double i : series.stroke_current_a) {
    if (i < 0.0) raise(ErrorCode::InvalidArgument, "negative stroke current");
  }
  for (double i : series.pitch_current_a) {
    if (i < 0.0) raise(ErrorCode::InvalidArgument, "negative pitch current");
  }
}

const char* target_name(Target target) noexcept {
  return target == Target::Thrust ? "thrust" : "power";
}

Target target_from_name(const std::string& name) {
  if (name == "thrust") return Target::Thrust;
  if (name == "power") return Target::Power;
  raise(ErrorCode::InvalidArgument, "unknown target '" + name + "'");
}

const char* force_axis_name(ForceAxis axis) noexcept {
  switch (axis) {
    case ForceAxis::Thrust: return "thrust";
    case ForceAxis::Lift: return "lift";
    case ForceAxis::SideForce: return "side";
  }
  return "unknown";
}

double mean_power(const CycleSeries& series) noexcept {
  const std::size_t n = series.n_steps();
  if (n == 0) return 0.0;
  const double total_current = kernels::sum(series.stroke_current_a.data(), n) +
                               kernels::sum(series.pitch_current_a.data(), n);
  return total_current * series.voltage_v / static_cast<double>(n);
}

double mean_force(const CycleSeries& series, ForceAxis axis) noexcept {
  switch (axis) {
    case ForceAxis::Thrust: return kernels::mean(series.thrust_n.data(), series.thrust_n.size());
    case ForceAxis::Lift: return kernels::mean(series.lift_n.data(), series.lift_n.size());
    case ForceAxis::SideForce: return kernels::mean(series.side_n.data(), series.side_n.size());
  }
  return 0.0;
}

double actuator_power(const CycleSeries& series, Actuator actuator) noexcept {
  const std::vector<double>& current = actuator == Actuator::Stroke
                                           ? series.stroke_current_a
                                           : series.pitch_current_a;
  return kernels::mean(current.data(), current.size()) * series.voltage_v;
}

}  // namespace finfom
