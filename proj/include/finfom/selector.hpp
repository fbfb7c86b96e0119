#pragma once
// Inverse gait selection over a precomputed sweep grid: meet a thrust
// target at best efficiency, maximize thrust, or maximize efficiency.

#include <utility>
#include <vector>

#include "finfom/domain.hpp"
#include "finfom/fom.hpp"
#include "finfom/sweep.hpp"

namespace finfom {

enum class SelectionMode { MeetThrust, MaxThrust, MaxEfficiency };

const char* selection_mode_name(SelectionMode mode) noexcept;
SelectionMode selection_mode_from_name(const std::string& name);

struct SelectionQuery {
  FinMaterialId material = FinMaterialId::Rigid;
  SelectionMode mode = SelectionMode::MaxEfficiency;
  double target_thrust_n = 0.0;   // MeetThrust
  double tolerance_n = 0.0;       // MeetThrust, > 0
  double velocity_mps = 1.0;
  // MeetThrust ranking blend: 1 = pure efficiency over the feasible set,
  // 0 = closest thrust match.
  double efficiency_weight = 1.0;
};

// Throws NoFeasibleGait (with nearest achievable thrust attached) when no
// grid point meets the thrust window; EmptyGrid on an all-masked grid.
std::pair<GaitParams, FomReport> select_gait(const SelectionQuery& query,
                                             const SweepGrid& grid);

// Top-k under the query's ranking rule, strictly ordered, ties broken as in
// global_optimum.
std::vector<std::pair<GaitParams, FomReport>> rank_gaits(const SelectionQuery& query,
                                                         const SweepGrid& grid,
                                                         std::size_t k);

}  // namespace finfom
