#include "finfom/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finfom/errors.hpp"
#include "finfom/textio.hpp"

namespace finfom {

const char* selection_mode_name(SelectionMode mode) noexcept {
  switch (mode) {
    case SelectionMode::MeetThrust: return "meet-thrust";
    case SelectionMode::MaxThrust: return "max-thrust";
    case SelectionMode::MaxEfficiency: return "max-efficiency";
  }
  return "unknown";
}

SelectionMode selection_mode_from_name(const std::string& name) {
  for (SelectionMode mode : {SelectionMode::MeetThrust, SelectionMode::MaxThrust,
                             SelectionMode::MaxEfficiency}) {
    if (name == selection_mode_name(mode)) return mode;
  }
  raise(ErrorCode::InvalidArgument, "unknown selection mode '" + name + "'");
}

namespace {

struct Candidate {
  GaitParams gait;
  double thrust, power, eta;
  double score;  // lower is better
};

void validate_query(const SelectionQuery& query, const SweepGrid& grid) {
  if (query.material != grid.material) {
    raise(ErrorCode::InvalidArgument, "query material does not match grid material");
  }
  if (query.mode == SelectionMode::MeetThrust && !(query.tolerance_n > 0.0)) {
    raise(ErrorCode::InvalidArgument, "meet-thrust query needs tolerance > 0");
  }
  if (query.efficiency_weight < 0.0 || query.efficiency_weight > 1.0) {
    raise(ErrorCode::InvalidArgument, "efficiency weight must lie in [0,1]");
  }
  if (!(query.velocity_mps >= 0.0)) {
    raise(ErrorCode::InvalidArgument, "query velocity must be nonnegative");
  }
}

// Strict order, lower score first, deterministic tie chain.
bool better(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score < b.score;
  if (a.power != b.power) return a.power < b.power;
  return gait_less(a.gait, b.gait);
}

std::vector<Candidate> collect_candidates(const SelectionQuery& query,
                                          const SweepGrid& grid) {
  const SweepAxes& axes = grid.axes;
  double eta_max = 0.0;
  bool any = false;
  double nearest_thrust = 0.0;
  double nearest_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.mask.size(); ++i) {
    if (!grid.mask[i]) continue;
    if (!any || grid.eta[i] > eta_max) eta_max = grid.eta[i];
    if (query.mode == SelectionMode::MeetThrust) {
      const double gap = std::abs(grid.thrust_n[i] - query.target_thrust_n);
      if (gap < nearest_gap) {
        nearest_gap = gap;
        nearest_thrust = grid.thrust_n[i];
      }
    }
    any = true;
  }
  if (!any) raise(ErrorCode::EmptyGrid, "selection over an empty grid");

  std::vector<Candidate> candidates;
  for (std::size_t fi = 0; fi < axes.frequencies.size(); ++fi) {
    for (std::size_t si = 0; si < axes.spos.size(); ++si) {
      for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
        for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
          const std::size_t at = axes.index(fi, si, ki, pi);
          if (!grid.mask[at]) continue;
          Candidate c;
          c.gait = axes.gait_at(fi, si, ki, pi);
          c.thrust = grid.thrust_n[at];
          c.power = grid.power_w[at];
          c.eta = grid.eta[at];
          switch (query.mode) {
            case SelectionMode::MeetThrust: {
              if (std::abs(c.thrust - query.target_thrust_n) > query.tolerance_n) continue;
              if (query.efficiency_weight == 1.0) {
                c.score = -c.eta;
              } else {
                const double eta_norm = eta_max > 0.0 ? c.eta / eta_max : 0.0;
                c.score = std::abs(c.thrust - query.target_thrust_n) / query.tolerance_n -
                          query.efficiency_weight * eta_norm;
              }
              break;
            }
            case SelectionMode::MaxThrust:
              // Ties resolved toward higher efficiency before the shared
              // power/lexicographic chain (see better_for_mode).
              c.score = -c.thrust;
              break;
            case SelectionMode::MaxEfficiency:
              c.score = -c.eta;
              break;
          }
          candidates.push_back(c);
        }
      }
    }
  }
  if (candidates.empty()) {
    Error err(ErrorCode::NoFeasibleGait,
              "NoFeasibleGait: no grid point within the thrust window; nearest "
              "achievable thrust is " +
                  format_f64(nearest_thrust, 9) + " N");
    err.nearest_thrust = nearest_thrust;
    throw err;
  }
  return candidates;
}

bool better_for_mode(const SelectionQuery& query, const Candidate& a, const Candidate& b) {
  if (query.mode == SelectionMode::MaxThrust && a.score == b.score && a.eta != b.eta) {
    return a.eta > b.eta;
  }
  return better(a, b);
}

}  // namespace

std::pair<GaitParams, FomReport> select_gait(const SelectionQuery& query,
                                             const SweepGrid& grid) {
  validate_query(query, grid);
  const std::vector<Candidate> candidates = collect_candidates(query, grid);
  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (better_for_mode(query, c, *best)) best = &c;
  }
  return {best->gait, fom_report_from_means(best->thrust, best->power, query.velocity_mps)};
}

std::vector<std::pair<GaitParams, FomReport>> rank_gaits(const SelectionQuery& query,
                                                         const SweepGrid& grid,
                                                         std::size_t k) {
  if (k == 0) raise(ErrorCode::InvalidArgument, "rank_gaits needs k >= 1");
  validate_query(query, grid);
  std::vector<Candidate> candidates = collect_candidates(query, grid);
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              return better_for_mode(query, a, b);
            });
  if (candidates.size() > k) candidates.resize(k);
  std::vector<std::pair<GaitParams, FomReport>> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    out.emplace_back(c.gait,
                     fom_report_from_means(c.thrust, c.power, query.velocity_mps));
  }
  return out;
}

}  // namespace finfom
