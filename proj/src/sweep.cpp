#include "finfom/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "finfom/errors.hpp"
#include "finfom/hash.hpp"
#include "finfom/textio.hpp"

namespace finfom {

SweepAxes SweepAxes::standard() {
  SweepAxes axes;
  for (int i = 0; i <= 10; ++i) axes.frequencies.push_back(0.75 + 0.125 * i);
  for (int i = 0; i <= 12; ++i) axes.spos.push_back(-22.5 + 5.625 * i);
  for (int i = 0; i <= 55; ++i) axes.strokes.push_back(static_cast<double>(i));
  for (int i = 0; i <= 55; ++i) axes.pitches.push_back(static_cast<double>(i));
  return axes;
}

SweepGrid run_sweep(const MeanPredictor& thrust, const MeanPredictor& power,
                    FinMaterialId material, double velocity_mps, int n_threads) {
  SweepGrid grid;
  grid.material = material;
  grid.axes = SweepAxes::standard();
  grid.velocity_mps = velocity_mps;
  const SweepAxes& axes = grid.axes;
  const std::size_t raw = axes.raw_size();
  grid.thrust_n.assign(raw, 0.0);
  grid.power_w.assign(raw, 0.0);
  grid.eta.assign(raw, 0.0);
  grid.mask.assign(raw, 0);

  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }

  // Each worker owns whole (frequency, spo) slabs, so no point is written
  // twice and the result cannot depend on the partitioning.
  const std::size_t n_slabs = axes.frequencies.size() * axes.spos.size();
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&](int worker_id) {
    try {
      for (std::size_t slab = static_cast<std::size_t>(worker_id); slab < n_slabs;
           slab += static_cast<std::size_t>(n_threads)) {
        const std::size_t fi = slab / axes.spos.size();
        const std::size_t si = slab % axes.spos.size();
        for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
          for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
            const GaitParams gait = axes.gait_at(fi, si, ki, pi);
            if (!is_attainable(gait)) continue;
            const std::size_t at = axes.index(fi, si, ki, pi);
            const double t = thrust(gait);
            const double p = power(gait);
            grid.thrust_n[at] = t;
            grid.power_w[at] = p;
            grid.eta[at] = fom(t, p, velocity_mps);
            grid.mask[at] = 1;
          }
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker, i);
    for (std::thread& t : threads) t.join();
  }
  if (failed.load()) std::rethrow_exception(failure);

  grid.attainable_count = static_cast<std::size_t>(
      std::count(grid.mask.begin(), grid.mask.end(), std::uint8_t{1}));
  return grid;
}

SweepGrid run_sweep(const SurrogateModel& thrust_model, const SurrogateModel& power_model,
                    double velocity_mps, int n_threads) {
  if (thrust_model.target != Target::Thrust || power_model.target != Target::Power) {
    raise(ErrorCode::InvalidArgument, "sweep needs a thrust model and a power model");
  }
  if (thrust_model.material != power_model.material) {
    raise(ErrorCode::InvalidArgument, "sweep models trained on different materials");
  }
  SweepGrid grid = run_sweep(
      [&](const GaitParams& g) { return predict_mean(thrust_model, g); },
      [&](const GaitParams& g) { return predict_mean(power_model, g); },
      thrust_model.material, velocity_mps, n_threads);
  grid.thrust_model_hash = model_hash(thrust_model);
  grid.power_model_hash = model_hash(power_model);
  return grid;
}

namespace {

std::size_t axis_index(const std::vector<double>& axis, double value, const char* name) {
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (axis[i] == value) return i;
  }
  raise(ErrorCode::OffAxisQuery,
        std::string(name) + " " + format_f64(value, 9) + " is not on the sweep axis");
}

}  // namespace

std::vector<ContourCell> contour_slice(const SweepGrid& grid, double frequency_hz,
                                       double spo_deg) {
  const SweepAxes& axes = grid.axes;
  const std::size_t fi = axis_index(axes.frequencies, frequency_hz, "frequency");
  const std::size_t si = axis_index(axes.spos, spo_deg, "spo");
  std::vector<ContourCell> cells;
  for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
    for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
      const std::size_t at = axes.index(fi, si, ki, pi);
      if (!grid.mask[at]) continue;
      cells.push_back({axes.strokes[ki], axes.pitches[pi], grid.thrust_n[at],
                       grid.power_w[at], grid.eta[at]});
    }
  }
  return cells;
}

namespace {

std::vector<TrendRow> trend_over(const SweepGrid& grid, bool by_frequency) {
  const SweepAxes& axes = grid.axes;
  const std::vector<double>& axis = by_frequency ? axes.frequencies : axes.spos;
  std::vector<TrendRow> rows;
  rows.reserve(axis.size());
  for (std::size_t a = 0; a < axis.size(); ++a) {
    double best = 0.0, total = 0.0;
    std::size_t count = 0;
    for (std::size_t fi = 0; fi < axes.frequencies.size(); ++fi) {
      if (by_frequency && fi != a) continue;
      for (std::size_t si = 0; si < axes.spos.size(); ++si) {
        if (!by_frequency && si != a) continue;
        for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
          for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
            const std::size_t at = axes.index(fi, si, ki, pi);
            if (!grid.mask[at]) continue;
            const double e = grid.eta[at];
            best = count == 0 ? e : std::max(best, e);
            total += e;
            ++count;
          }
        }
      }
    }
    rows.push_back({axis[a], best, count ? total / static_cast<double>(count) : 0.0});
  }
  return rows;
}

}  // namespace

std::vector<TrendRow> trend_by_frequency(const SweepGrid& grid) {
  return trend_over(grid, true);
}

std::vector<TrendRow> trend_by_spo(const SweepGrid& grid) { return trend_over(grid, false); }

std::pair<GaitParams, FomReport> global_optimum(const SweepGrid& grid) {
  const SweepAxes& axes = grid.axes;
  bool found = false;
  std::size_t best_at = 0;
  GaitParams best_gait;
  for (std::size_t fi = 0; fi < axes.frequencies.size(); ++fi) {
    for (std::size_t si = 0; si < axes.spos.size(); ++si) {
      for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
        for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
          const std::size_t at = axes.index(fi, si, ki, pi);
          if (!grid.mask[at]) continue;
          const GaitParams gait = axes.gait_at(fi, si, ki, pi);
          if (!found) {
            found = true;
            best_at = at;
            best_gait = gait;
            continue;
          }
          const bool better =
              grid.eta[at] > grid.eta[best_at] ||
              (grid.eta[at] == grid.eta[best_at] &&
               (grid.power_w[at] < grid.power_w[best_at] ||
                (grid.power_w[at] == grid.power_w[best_at] && gait_less(gait, best_gait))));
          if (better) {
            best_at = at;
            best_gait = gait;
          }
        }
      }
    }
  }
  if (!found) raise(ErrorCode::EmptyGrid, "sweep grid has no attainable points");
  return {best_gait, fom_report_from_means(grid.thrust_n[best_at], grid.power_w[best_at],
                                           grid.velocity_mps)};
}

// ---------------------------------------------------------------------------
// Files

namespace {

void write_axis(TextRecord& rec, const char* name, const std::vector<double>& axis) {
  rec.set_f64(std::string(name) + "_min", axis.front());
  rec.set_f64(std::string(name) + "_step", axis.size() > 1 ? axis[1] - axis[0] : 0.0);
  rec.set_u64(std::string(name) + "_count", axis.size());
}

std::vector<double> read_axis(const TextRecord& rec, const char* name) {
  const double lo = rec.get_f64(std::string(name) + "_min");
  const double step = rec.get_f64(std::string(name) + "_step");
  const std::uint64_t count = rec.get_u64(std::string(name) + "_count");
  std::vector<double> axis(count);
  for (std::uint64_t i = 0; i < count; ++i) axis[i] = lo + step * static_cast<double>(i);
  return axis;
}

constexpr const char* kGridHeader =
    "frequency_hz,spo_deg,stroke_deg,pitch_deg,thrust_n,power_w,eta";

}  // namespace

void save_grid(const SweepGrid& grid, const std::string& csv_path,
               const std::string& sidecar_path) {
  {
    std::ofstream os(csv_path);
    if (!os) raise(ErrorCode::IoError, "cannot write '" + csv_path + "'");
    os << kGridHeader << "\n";
    const SweepAxes& axes = grid.axes;
    for (std::size_t fi = 0; fi < axes.frequencies.size(); ++fi) {
      for (std::size_t si = 0; si < axes.spos.size(); ++si) {
        for (std::size_t ki = 0; ki < axes.strokes.size(); ++ki) {
          for (std::size_t pi = 0; pi < axes.pitches.size(); ++pi) {
            const std::size_t at = axes.index(fi, si, ki, pi);
            if (!grid.mask[at]) continue;
            os << format_f64(axes.frequencies[fi], 9) << ','
               << format_f64(axes.spos[si], 9) << ',' << format_f64(axes.strokes[ki], 9)
               << ',' << format_f64(axes.pitches[pi], 9) << ','
               << format_f64(grid.thrust_n[at], 9) << ',' << format_f64(grid.power_w[at], 9)
               << ',' << format_f64(grid.eta[at], 9) << "\n";
          }
        }
      }
    }
    if (!os) raise(ErrorCode::IoError, "write failed for '" + csv_path + "'");
  }

  TextRecord rec;
  rec.set_i64("schema_version", 1);
  rec.set("material", material_name(grid.material));
  rec.set_f64("velocity_mps", grid.velocity_mps);
  write_axis(rec, "frequency", grid.axes.frequencies);
  write_axis(rec, "spo", grid.axes.spos);
  write_axis(rec, "stroke", grid.axes.strokes);
  write_axis(rec, "pitch", grid.axes.pitches);
  rec.set_u64("attainable_count", grid.attainable_count);
  rec.set_u64("reference_interpolation_count", kReferenceInterpolationCount);
  rec.set("thrust_model_hash", hash_hex(grid.thrust_model_hash));
  rec.set("power_model_hash", hash_hex(grid.power_model_hash));
  rec.save_file(sidecar_path);
}

SweepGrid load_grid(const std::string& csv_path, const std::string& sidecar_path) {
  const TextRecord rec = TextRecord::load_file(sidecar_path);
  if (rec.get_i64("schema_version") != 1) {
    raise(ErrorCode::VersionError, "unsupported grid schema version");
  }
  SweepGrid grid;
  grid.material = material_from_name(rec.get("material"));
  grid.velocity_mps = rec.get_f64("velocity_mps");
  grid.axes.frequencies = read_axis(rec, "frequency");
  grid.axes.spos = read_axis(rec, "spo");
  grid.axes.strokes = read_axis(rec, "stroke");
  grid.axes.pitches = read_axis(rec, "pitch");
  grid.thrust_model_hash = std::stoull(rec.get("thrust_model_hash"), nullptr, 16);
  grid.power_model_hash = std::stoull(rec.get("power_model_hash"), nullptr, 16);

  const std::size_t raw = grid.axes.raw_size();
  grid.thrust_n.assign(raw, 0.0);
  grid.power_w.assign(raw, 0.0);
  grid.eta.assign(raw, 0.0);
  grid.mask.assign(raw, 0);

  std::ifstream is(csv_path);
  if (!is) raise(ErrorCode::IoError, "cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(is, line) || line != kGridHeader) {
    raise(ErrorCode::InvalidArgument, "unexpected grid CSV header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double v[7];
    std::string field;
    for (int i = 0; i < 7; ++i) {
      if (!std::getline(row, field, ',')) {
        raise(ErrorCode::InvalidArgument, "short grid CSV row");
      }
      v[i] = parse_f64(field);
    }
    const std::size_t fi = axis_index(grid.axes.frequencies, v[0], "frequency");
    const std::size_t si = axis_index(grid.axes.spos, v[1], "spo");
    const std::size_t ki = axis_index(grid.axes.strokes, v[2], "stroke");
    const std::size_t pi = axis_index(grid.axes.pitches, v[3], "pitch");
    const std::size_t at = grid.axes.index(fi, si, ki, pi);
    grid.thrust_n[at] = v[4];
    grid.power_w[at] = v[5];
    grid.eta[at] = v[6];
    grid.mask[at] = 1;
  }
  grid.attainable_count = static_cast<std::size_t>(
      std::count(grid.mask.begin(), grid.mask.end(), std::uint8_t{1}));
  const std::uint64_t expected = rec.get_u64("attainable_count");
  if (grid.attainable_count != expected) {
    raise(ErrorCode::InvalidArgument, "grid CSV row count does not match sidecar");
  }
  return grid;
}

void save_contour_csv(const std::vector<ContourCell>& cells, const std::string& path) {
  std::ofstream os(path);
  if (!os) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  os << "stroke_deg,pitch_deg,thrust_n,power_w,eta\n";
  for (const ContourCell& c : cells) {
    os << format_f64(c.stroke_deg, 9) << ',' << format_f64(c.pitch_deg, 9) << ','
       << format_f64(c.thrust_n, 9) << ',' << format_f64(c.power_w, 9) << ','
       << format_f64(c.eta, 9) << "\n";
  }
  if (!os) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

void save_trend_csv(const std::vector<TrendRow>& rows, const char* axis_column,
                    const std::string& path) {
  std::ofstream os(path);
  if (!os) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  os << axis_column << ",max_eta,mean_eta\n";
  for (const TrendRow& row : rows) {
    os << format_f64(row.axis_value, 9) << ',' << format_f64(row.max_eta, 9) << ','
       << format_f64(row.mean_eta, 9) << "\n";
  }
  if (!os) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace finfom
