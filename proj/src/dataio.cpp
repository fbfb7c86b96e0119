#include "finfom/dataio.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "finfom/errors.hpp"
#include "finfom/hash.hpp"
#include "finfom/kernels.hpp"
#include "finfom/textio.hpp"

namespace finfom {

namespace {

constexpr const char* kTrialHeader =
    "material_id,frequency_hz,stroke_amp_deg,pitch_amp_deg,spo_deg,sample_index,"
    "stroke_angle_deg,pitch_angle_deg,thrust_n,lift_n,side_n,current_stroke_a,"
    "current_pitch_a,voltage_v";
constexpr int kTrialColumns = 14;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field(const std::string& text, long line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    Error err(ErrorCode::MalformedRow,
              "MalformedRow: bad float '" + text + "' at line " + std::to_string(line_no));
    err.line_number = line_no;
    throw err;
  }
  return v;
}

// Group key built from the raw column text, so identical rows always land
// in the same group without float-compare subtleties.
std::string group_key(const std::vector<std::string>& fields) {
  return fields[0] + '|' + fields[1] + '|' + fields[2] + '|' + fields[3] + '|' + fields[4];
}

const char* csv_fmt(double v, char* buf, std::size_t n) {
  std::snprintf(buf, n, "%.9g", v);
  return buf;
}

}  // namespace

ExperimentGrid ExperimentGrid::standard() {
  ExperimentGrid g;
  g.frequencies = {0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  g.strokes = {0.0, 15.0, 25.0, 32.5, 40.0, 55.0};
  g.pitches = {0.0, 15.0, 25.0, 32.0, 38.0, 55.0};
  g.spos = {-22.5, 0.0, 22.5, 45.0};
  return g;
}

std::vector<GaitParams> ExperimentGrid::all_gaits() const {
  std::vector<GaitParams> gaits;
  gaits.reserve(frequencies.size() * strokes.size() * pitches.size() * spos.size());
  for (double f : frequencies)
    for (double s : strokes)
      for (double p : pitches)
        for (double o : spos) gaits.push_back({f, s, p, o});
  return gaits;
}

std::vector<GaitParams> ExperimentGrid::attainable_gaits() const {
  std::vector<GaitParams> gaits = all_gaits();
  std::erase_if(gaits, [](const GaitParams& g) { return !is_attainable(g); });
  return gaits;
}

std::array<double, 4> FeatureBounds::normalize(const GaitParams& g) const noexcept {
  auto norm = [](double v, double lo, double hi) {
    return hi > lo ? (v - lo) / (hi - lo) : 0.0;
  };
  return {norm(g.frequency_hz, frequency_min, frequency_max),
          norm(g.stroke_amplitude_deg, stroke_min, stroke_max),
          norm(g.pitch_amplitude_deg, pitch_min, pitch_max),
          norm(g.stroke_pitch_offset_deg, spo_min, spo_max)};
}

std::vector<TrialRecord> load_trials(const std::string& path) {
  std::ifstream is(path);
  if (!is) raise(ErrorCode::IoError, "cannot open '" + path + "'");

  std::vector<TrialRecord> records;
  std::unordered_map<std::string, std::size_t> group_index;
  std::string line;
  long line_no = 0;

  if (!std::getline(is, line)) return records;  // empty file -> no trials
  ++line_no;
  // Tolerate but do not require a trailing \r from foreign writers.
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrialHeader) {
    Error err(ErrorCode::MalformedRow, "MalformedRow: unexpected header at line 1");
    err.line_number = 1;
    throw err;
  }

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != kTrialColumns) {
      Error err(ErrorCode::MalformedRow,
                "MalformedRow: expected 14 columns, got " + std::to_string(fields.size()) +
                    " at line " + std::to_string(line_no));
      err.line_number = line_no;
      throw err;
    }
    parse_field(fields[5], line_no);  // sample_index must at least parse

    const std::string key = group_key(fields);
    TrialRecord* rec = nullptr;
    if (auto it = group_index.find(key); it != group_index.end()) {
      rec = &records[it->second];
    } else {
      const GaitParams gait{parse_field(fields[1], line_no), parse_field(fields[2], line_no),
                            parse_field(fields[3], line_no), parse_field(fields[4], line_no)};
      if (!is_attainable(gait)) {
        raise(ErrorCode::UnattainableGait,
              "gait outside attainable range at line " + std::to_string(line_no));
      }
      TrialRecord fresh;
      fresh.material = material_from_name(fields[0]);
      fresh.gait = gait;
      fresh.n_cycles = kProtocolCycles;
      group_index.emplace(key, records.size());
      records.push_back(std::move(fresh));
      rec = &records.back();
    }
    rec->stroke_angle_deg.push_back(parse_field(fields[6], line_no));
    rec->pitch_angle_deg.push_back(parse_field(fields[7], line_no));
    rec->thrust_n.push_back(parse_field(fields[8], line_no));
    rec->lift_n.push_back(parse_field(fields[9], line_no));
    rec->side_n.push_back(parse_field(fields[10], line_no));
    rec->stroke_current_a.push_back(parse_field(fields[11], line_no));
    rec->pitch_current_a.push_back(parse_field(fields[12], line_no));
    const double voltage = parse_field(fields[13], line_no);
    if (rec->total_samples() == 1) {
      rec->voltage_v = voltage;
    } else if (voltage != rec->voltage_v) {
      raise(ErrorCode::InconsistentGroup,
            "voltage changes within a trial group at line " + std::to_string(line_no));
    }
  }

  for (TrialRecord& rec : records) {
    if (rec.total_samples() % kProtocolCycles != 0) {
      raise(ErrorCode::InconsistentGroup,
            "trial sample count " + std::to_string(rec.total_samples()) +
                " is not a multiple of the protocol cycle count");
    }
    rec.sample_rate_hz =
        static_cast<double>(rec.samples_per_cycle()) * rec.gait.frequency_hz;
  }
  return records;
}

void write_trials(const std::vector<TrialRecord>& trials, const std::string& path) {
  std::ofstream os(path);
  if (!os) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  os << kTrialHeader << "\n";
  char buf[40];
  for (const TrialRecord& rec : trials) {
    const std::string material = material_name(rec.material);
    std::string prefix = material;
    prefix += ',';
    prefix += csv_fmt(rec.gait.frequency_hz, buf, sizeof(buf));
    prefix += ',';
    prefix += csv_fmt(rec.gait.stroke_amplitude_deg, buf, sizeof(buf));
    prefix += ',';
    prefix += csv_fmt(rec.gait.pitch_amplitude_deg, buf, sizeof(buf));
    prefix += ',';
    prefix += csv_fmt(rec.gait.stroke_pitch_offset_deg, buf, sizeof(buf));
    for (std::size_t i = 0; i < rec.total_samples(); ++i) {
      os << prefix << ',' << i;
      os << ',' << csv_fmt(rec.stroke_angle_deg[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.pitch_angle_deg[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.thrust_n[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.lift_n[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.side_n[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.stroke_current_a[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.pitch_current_a[i], buf, sizeof(buf));
      os << ',' << csv_fmt(rec.voltage_v, buf, sizeof(buf));
      os << '\n';
    }
  }
  if (!os) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

CycleSeries segment_cycles(const TrialRecord& rec, std::size_t n_steps) {
  if (n_steps < 2) raise(ErrorCode::InvalidArgument, "segment needs n_steps >= 2");
  if (rec.n_cycles <= kKeptCycleLast) {
    raise(ErrorCode::TooFewCycles,
          "need at least " + std::to_string(kKeptCycleLast + 1) + " cycles, got " +
              std::to_string(rec.n_cycles));
  }
  const std::size_t spc = rec.samples_per_cycle();
  if (spc < 2 || rec.total_samples() != spc * static_cast<std::size_t>(rec.n_cycles)) {
    raise(ErrorCode::InvalidArgument, "trial channels inconsistent with cycle count");
  }

  auto average_and_resample = [&](const std::vector<double>& channel) {
    // Phase-average the kept cycles at each sample position.
    std::vector<double> cycle(spc, 0.0);
    constexpr double kInvKept = 1.0 / (kKeptCycleLast - kKeptCycleFirst + 1);
    for (int c = kKeptCycleFirst; c <= kKeptCycleLast; ++c) {
      const double* src = channel.data() + static_cast<std::size_t>(c) * spc;
      for (std::size_t j = 0; j < spc; ++j) cycle[j] += src[j];
    }
    for (double& v : cycle) v *= kInvKept;
    if (spc == n_steps) return cycle;
    // Periodic linear resample onto n_steps uniform phase points.
    std::vector<double> out(n_steps);
    for (std::size_t j = 0; j < n_steps; ++j) {
      const double pos = static_cast<double>(j) * static_cast<double>(spc) /
                         static_cast<double>(n_steps);
      const std::size_t i0 = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(i0);
      const std::size_t i1 = (i0 + 1) % spc;
      out[j] = cycle[i0] * (1.0 - frac) + cycle[i1] * frac;
    }
    return out;
  };

  CycleSeries series;
  series.stroke_angle_deg = average_and_resample(rec.stroke_angle_deg);
  series.pitch_angle_deg = average_and_resample(rec.pitch_angle_deg);
  series.thrust_n = average_and_resample(rec.thrust_n);
  series.lift_n = average_and_resample(rec.lift_n);
  series.side_n = average_and_resample(rec.side_n);
  series.stroke_current_a = average_and_resample(rec.stroke_current_a);
  series.pitch_current_a = average_and_resample(rec.pitch_current_a);
  series.voltage_v = rec.voltage_v;
  return series;
}

Dataset build_dataset(const std::vector<TrialRecord>& trials, std::size_t n_steps) {
  Dataset data;
  data.n_steps = n_steps;
  data.normalization = FeatureBounds::envelope();
  data.records.reserve(trials.size());
  for (const TrialRecord& trial : trials) {
    if (!is_attainable(trial.gait)) {
      raise(ErrorCode::UnattainableGait, "dataset gait outside attainable range");
    }
    data.records.push_back({trial.material, trial.gait, segment_cycles(trial, n_steps)});
  }
  std::sort(data.records.begin(), data.records.end(),
            [](const DatasetRecord& a, const DatasetRecord& b) {
              if (a.material != b.material) return a.material < b.material;
              return gait_less(a.gait, b.gait);
            });
  return data;
}

namespace {

void write_channel(std::ostream& os, const char* name, const std::vector<double>& v) {
  os << name << " =";
  for (double x : v) os << ' ' << format_f64(x, 17);
  os << "\n";
}

std::vector<double> parse_channel(const std::string& text, std::size_t expected) {
  std::vector<double> out;
  out.reserve(expected);
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) out.push_back(parse_f64(tok));
  if (out.size() != expected) {
    raise(ErrorCode::InvalidArgument, "channel length mismatch in dataset file");
  }
  return out;
}

}  // namespace

void save_dataset(const Dataset& data, const std::string& path) {
  std::ofstream os(path);
  if (!os) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  os << "schema_version = 1\n";
  os << "n_steps = " << data.n_steps << "\n";
  os << "n_records = " << data.records.size() << "\n";
  for (const DatasetRecord& rec : data.records) {
    os << "material = " << material_name(rec.material) << "\n";
    os << "frequency_hz = " << format_f64(rec.gait.frequency_hz, 17) << "\n";
    os << "stroke_amp_deg = " << format_f64(rec.gait.stroke_amplitude_deg, 17) << "\n";
    os << "pitch_amp_deg = " << format_f64(rec.gait.pitch_amplitude_deg, 17) << "\n";
    os << "spo_deg = " << format_f64(rec.gait.stroke_pitch_offset_deg, 17) << "\n";
    os << "voltage_v = " << format_f64(rec.series.voltage_v, 17) << "\n";
    write_channel(os, "stroke_angle_deg", rec.series.stroke_angle_deg);
    write_channel(os, "pitch_angle_deg", rec.series.pitch_angle_deg);
    write_channel(os, "thrust_n", rec.series.thrust_n);
    write_channel(os, "lift_n", rec.series.lift_n);
    write_channel(os, "side_n", rec.series.side_n);
    write_channel(os, "current_stroke_a", rec.series.stroke_current_a);
    write_channel(os, "current_pitch_a", rec.series.pitch_current_a);
  }
  if (!os) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

Dataset load_dataset(const std::string& path) {
  std::ifstream is(path);
  if (!is) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  auto read_kv = [&](const char* expected_key) {
    std::string line;
    if (!std::getline(is, line)) {
      raise(ErrorCode::InvalidArgument, "truncated dataset file (expected " +
                                            std::string(expected_key) + ")");
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      raise(ErrorCode::InvalidArgument, "bad dataset line '" + line + "'");
    }
    std::string key = line.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    if (key != expected_key) {
      raise(ErrorCode::InvalidArgument,
            "expected key '" + std::string(expected_key) + "', got '" + key + "'");
    }
    std::string value = line.substr(eq + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    return value;
  };

  if (parse_f64(read_kv("schema_version")) != 1.0) {
    raise(ErrorCode::VersionError, "unsupported dataset schema version");
  }
  Dataset data;
  data.n_steps = static_cast<std::size_t>(parse_f64(read_kv("n_steps")));
  const std::size_t n_records = static_cast<std::size_t>(parse_f64(read_kv("n_records")));
  data.records.reserve(n_records);
  for (std::size_t i = 0; i < n_records; ++i) {
    DatasetRecord rec;
    rec.material = material_from_name(read_kv("material"));
    rec.gait.frequency_hz = parse_f64(read_kv("frequency_hz"));
    rec.gait.stroke_amplitude_deg = parse_f64(read_kv("stroke_amp_deg"));
    rec.gait.pitch_amplitude_deg = parse_f64(read_kv("pitch_amp_deg"));
    rec.gait.stroke_pitch_offset_deg = parse_f64(read_kv("spo_deg"));
    rec.series.voltage_v = parse_f64(read_kv("voltage_v"));
    rec.series.stroke_angle_deg = parse_channel(read_kv("stroke_angle_deg"), data.n_steps);
    rec.series.pitch_angle_deg = parse_channel(read_kv("pitch_angle_deg"), data.n_steps);
    rec.series.thrust_n = parse_channel(read_kv("thrust_n"), data.n_steps);
    rec.series.lift_n = parse_channel(read_kv("lift_n"), data.n_steps);
    rec.series.side_n = parse_channel(read_kv("side_n"), data.n_steps);
    rec.series.stroke_current_a = parse_channel(read_kv("current_stroke_a"), data.n_steps);
    rec.series.pitch_current_a = parse_channel(read_kv("current_pitch_a"), data.n_steps);
    data.records.push_back(std::move(rec));
  }
  return data;
}

std::uint64_t dataset_hash(const Dataset& data) noexcept {
  std::uint64_t h = kFnvOffset;
  h = fnv1a_u64(data.n_steps, h);
  for (const DatasetRecord& rec : data.records) {
    h = fnv1a_u64(static_cast<std::uint64_t>(rec.material), h);
    h = fnv1a_f64(rec.gait.frequency_hz, h);
    h = fnv1a_f64(rec.gait.stroke_amplitude_deg, h);
    h = fnv1a_f64(rec.gait.pitch_amplitude_deg, h);
    h = fnv1a_f64(rec.gait.stroke_pitch_offset_deg, h);
    h = fnv1a_f64(rec.series.voltage_v, h);
    for (const std::vector<double>* ch :
         {&rec.series.stroke_angle_deg, &rec.series.pitch_angle_deg, &rec.series.thrust_n,
          &rec.series.lift_n, &rec.series.side_n, &rec.series.stroke_current_a,
          &rec.series.pitch_current_a}) {
      h = fnv1a_bytes(ch->data(), ch->size() * sizeof(double), h);
    }
  }
  return h;
}

double cycle_mean_target(const CycleSeries& series, Target target) noexcept {
  return target == Target::Thrust ? mean_force(series, ForceAxis::Thrust)
                                  : mean_power(series);
}

std::vector<double> series_target(const CycleSeries& series, Target target) {
  if (target == Target::Thrust) return series.thrust_n;
  std::vector<double> power(series.n_steps());
  for (std::size_t k = 0; k < power.size(); ++k) {
    power[k] = (series.stroke_current_a[k] + series.pitch_current_a[k]) * series.voltage_v;
  }
  return power;
}

}  // namespace finfom
