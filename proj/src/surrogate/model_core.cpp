#include "model_core.hpp"

#include <cmath>

#include "finfom/errors.hpp"
#include "finfom/kernels.hpp"

namespace finfom::detail {

// ---------------------------------------------------------------------------
// Monomials

MonomialBasis::MonomialBasis(int deg) : degree(deg) {
  if (degree < 0) raise(ErrorCode::InvalidArgument, "negative polynomial degree");
  for (int total = 0; total <= degree; ++total) {
    for (int e0 = total; e0 >= 0; --e0) {
      for (int e1 = total - e0; e1 >= 0; --e1) {
        for (int e2 = total - e0 - e1; e2 >= 0; --e2) {
          const int e3 = total - e0 - e1 - e2;
          exponents.push_back({e0, e1, e2, e3});
        }
      }
    }
  }
}

void MonomialBasis::expand(const std::array<double, 4>& x, double* out) const noexcept {
  // Power tables up to the basis degree.
  double pow_table[4][16];
  for (int j = 0; j < 4; ++j) {
    pow_table[j][0] = 1.0;
    for (int e = 1; e <= degree; ++e) pow_table[j][e] = pow_table[j][e - 1] * x[j];
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const auto& e = exponents[i];
    out[i] = pow_table[0][e[0]] * pow_table[1][e[1]] * pow_table[2][e[2]] *
             pow_table[3][e[3]];
  }
}

// ---------------------------------------------------------------------------
// MLP

std::size_t MlpDims::param_count() const noexcept {
  std::size_t n = static_cast<std::size_t>(width) * n_inputs + width;  // input layer
  for (int l = 1; l < hidden_layers; ++l) {
    n += static_cast<std::size_t>(width) * width + width;
  }
  n += static_cast<std::size_t>(width) + 1;  // output row + bias
  return n;
}

MlpDims MlpDims::from_arch(const std::vector<std::int64_t>& arch) {
  if (arch.size() < 3 || arch.back() != 1) {
    raise(ErrorCode::InvalidArgument, "bad feed-forward architecture descriptor");
  }
  MlpDims dims;
  dims.n_inputs = static_cast<int>(arch.front());
  dims.width = static_cast<int>(arch[1]);
  dims.hidden_layers = static_cast<int>(arch.size()) - 2;
  for (std::size_t i = 1; i + 1 < arch.size(); ++i) {
    if (arch[i] != dims.width) {
      raise(ErrorCode::InvalidArgument, "non-uniform hidden widths not supported");
    }
  }
  return dims;
}

std::vector<std::int64_t> MlpDims::to_arch() const {
  std::vector<std::int64_t> arch;
  arch.push_back(n_inputs);
  for (int l = 0; l < hidden_layers; ++l) arch.push_back(width);
  arch.push_back(1);
  return arch;
}

double mlp_forward(const MlpDims& dims, const double* params, const double* x,
                   MlpScratch& scratch) {
  const int w = dims.width;
  scratch.pre.resize(dims.hidden_layers);
  scratch.act.resize(dims.hidden_layers);
  const double* p = params;
  const double* input = x;
  int in_size = dims.n_inputs;
  for (int l = 0; l < dims.hidden_layers; ++l) {
    scratch.pre[l].resize(w);
    scratch.act[l].resize(w);
    const double* weights = p;
    const double* bias = p + static_cast<std::size_t>(w) * in_size;
    kernels::affine(weights, w, in_size, input, bias, scratch.pre[l].data());
    for (int i = 0; i < w; ++i) scratch.act[l][i] = std::tanh(scratch.pre[l][i]);
    p = bias + w;
    input = scratch.act[l].data();
    in_size = w;
  }
  const double* out_weights = p;
  const double out_bias = p[w];
  scratch.output = kernels::dot(out_weights, input, w) + out_bias;
  return scratch.output;
}

void mlp_backward(const MlpDims& dims, const double* params, const double* x,
                  const MlpScratch& scratch, double upstream, double* grad) {
  const int w = dims.width;
  // Parameter block offsets per layer.
  std::vector<std::size_t> offsets(dims.hidden_layers + 1);
  std::size_t off = 0;
  int in_size = dims.n_inputs;
  for (int l = 0; l < dims.hidden_layers; ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(w) * in_size + w;
    in_size = w;
  }
  offsets[dims.hidden_layers] = off;

  // Output layer.
  const double* last_act = scratch.act.back().data();
  double* gout = grad + offsets[dims.hidden_layers];
  kernels::axpy(upstream, last_act, gout, w);
  gout[w] += upstream;

  std::vector<double> delta(w), next_delta(w);
  const double* out_weights = params + offsets[dims.hidden_layers];
  for (int i = 0; i < w; ++i) {
    const double a = scratch.act.back()[i];
    delta[i] = upstream * out_weights[i] * (1.0 - a * a);
  }

  for (int l = dims.hidden_layers - 1; l >= 0; --l) {
    const int layer_in = l == 0 ? dims.n_inputs : w;
    const double* layer_input = l == 0 ? x : scratch.act[l - 1].data();
    double* gw = grad + offsets[l];
    double* gb = gw + static_cast<std::size_t>(w) * layer_in;
    for (int i = 0; i < w; ++i) {
      kernels::axpy(delta[i], layer_input, gw + static_cast<std::size_t>(i) * layer_in,
                    layer_in);
      gb[i] += delta[i];
    }
    if (l > 0) {
      const double* weights = params + offsets[l];
      for (int j = 0; j < w; ++j) {
        double acc = 0.0;
        for (int i = 0; i < w; ++i) acc += weights[static_cast<std::size_t>(i) * w + j] * delta[i];
        const double a = scratch.act[l - 1][j];
        next_delta[j] = acc * (1.0 - a * a);
      }
      delta.swap(next_delta);
    }
  }
}

namespace {

// Uniform init scaled by fan-in.
void fill_uniform(std::mt19937_64& rng, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    out[i] = scale * (2.0 * u - 1.0);
  }
}

}  // namespace

void mlp_init(const MlpDims& dims, std::mt19937_64& rng, std::vector<double>& params) {
  params.assign(dims.param_count(), 0.0);
  double* p = params.data();
  int in_size = dims.n_inputs;
  const int w = dims.width;
  for (int l = 0; l < dims.hidden_layers; ++l) {
    fill_uniform(rng, 1.0 / std::sqrt(static_cast<double>(in_size)), p,
                 static_cast<std::size_t>(w) * in_size);
    p += static_cast<std::size_t>(w) * in_size + w;  // biases stay zero
    in_size = w;
  }
  fill_uniform(rng, 1.0 / std::sqrt(static_cast<double>(w)), p, w);
}

// ---------------------------------------------------------------------------
// LSTM

std::size_t LstmDims::param_count() const noexcept {
  const std::size_t h = hidden;
  return 4 * h * (n_inputs + h) + 4 * h + h + 1;
}

LstmDims LstmDims::from_arch(const std::vector<std::int64_t>& arch) {
  if (arch.size() != 4 || arch[2] != 1) {
    raise(ErrorCode::InvalidArgument, "bad recurrent architecture descriptor");
  }
  LstmDims dims;
  dims.n_inputs = static_cast<int>(arch[0]);
  dims.hidden = static_cast<int>(arch[1]);
  return dims;
}

void LstmScratch::resize(const LstmDims& dims, std::size_t steps) {
  const std::size_t h = dims.hidden;
  gates.assign(steps * 4 * h, 0.0);
  cell.assign(steps * h, 0.0);
  cell_tanh.assign(steps * h, 0.0);
  hidden.assign(steps * h, 0.0);
  output.assign(steps, 0.0);
  concat.assign(dims.n_inputs + h, 0.0);
}

namespace {

inline double sigmoid(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

void lstm_forward(const LstmDims& dims, const double* params, const double* inputs,
                  std::size_t steps, LstmScratch& scratch) {
  const int h = dims.hidden;
  const int in = dims.n_inputs;
  const int cols = in + h;
  const double* w_gates = params;
  const double* b_gates = params + static_cast<std::size_t>(4 * h) * cols;
  const double* w_out = b_gates + 4 * h;
  const double b_out = w_out[h];

  scratch.resize(dims, steps);
  std::vector<double> z(4 * h);
  for (std::size_t t = 0; t < steps; ++t) {
    double* concat = scratch.concat.data();
    for (int j = 0; j < in; ++j) concat[j] = inputs[t * in + j];
    const double* h_prev = t == 0 ? nullptr : &scratch.hidden[(t - 1) * h];
    for (int j = 0; j < h; ++j) concat[in + j] = h_prev ? h_prev[j] : 0.0;

    kernels::affine(w_gates, 4 * h, cols, concat, b_gates, z.data());

    double* gate = &scratch.gates[t * 4 * h];
    double* cell = &scratch.cell[t * h];
    double* cell_tanh = &scratch.cell_tanh[t * h];
    double* hidden = &scratch.hidden[t * h];
    const double* c_prev = t == 0 ? nullptr : &scratch.cell[(t - 1) * h];
    for (int j = 0; j < h; ++j) {
      const double gi = sigmoid(z[j]);
      const double gf = sigmoid(z[h + j]);
      const double gg = std::tanh(z[2 * h + j]);
      const double go = sigmoid(z[3 * h + j]);
      gate[j] = gi;
      gate[h + j] = gf;
      gate[2 * h + j] = gg;
      gate[3 * h + j] = go;
      const double c = gf * (c_prev ? c_prev[j] : 0.0) + gi * gg;
      cell[j] = c;
      cell_tanh[j] = std::tanh(c);
      hidden[j] = go * cell_tanh[j];
    }
    scratch.output[t] = kernels::dot(w_out, hidden, h) + b_out;
  }
}

void lstm_backward(const LstmDims& dims, const double* params, const double* inputs,
                   std::size_t steps, const LstmScratch& scratch,
                   const double* upstream, double* grad) {
  const int h = dims.hidden;
  const int in = dims.n_inputs;
  const int cols = in + h;
  const std::size_t w_gate_count = static_cast<std::size_t>(4 * h) * cols;
  const double* w_gates = params;
  const double* w_out = params + w_gate_count + 4 * h;
  double* g_w_gates = grad;
  double* g_b_gates = grad + w_gate_count;
  double* g_w_out = g_b_gates + 4 * h;
  double* g_b_out = g_w_out + h;

  std::vector<double> dh(h, 0.0);   // dLoss/dh_t carried backwards
  std::vector<double> dc(h, 0.0);
  std::vector<double> dz(4 * h);
  std::vector<double> concat(cols);

  for (std::size_t t = steps; t-- > 0;) {
    const double* hidden = &scratch.hidden[t * h];
    const double* cell_tanh = &scratch.cell_tanh[t * h];
    const double* gate = &scratch.gates[t * 4 * h];
    const double* c_prev = t == 0 ? nullptr : &scratch.cell[(t - 1) * h];
    const double* h_prev = t == 0 ? nullptr : &scratch.hidden[(t - 1) * h];

    // Output tap.
    const double up = upstream[t];
    kernels::axpy(up, hidden, g_w_out, h);
    *g_b_out += up;
    kernels::axpy(up, w_out, dh.data(), h);

    for (int j = 0; j < h; ++j) {
      const double gi = gate[j];
      const double gf = gate[h + j];
      const double gg = gate[2 * h + j];
      const double go = gate[3 * h + j];
      const double tc = cell_tanh[j];
      const double dcell = dc[j] + dh[j] * go * (1.0 - tc * tc);
      dz[j] = dcell * gg * gi * (1.0 - gi);                       // input gate
      dz[h + j] = dcell * (c_prev ? c_prev[j] : 0.0) * gf * (1.0 - gf);  // forget gate
      dz[2 * h + j] = dcell * gi * (1.0 - gg * gg);               // candidate
      dz[3 * h + j] = dh[j] * tc * go * (1.0 - go);               // output gate
      dc[j] = dcell * gf;  // becomes dc for t-1
    }

    for (int j = 0; j < in; ++j) concat[j] = inputs[t * in + j];
    for (int j = 0; j < h; ++j) concat[in + j] = h_prev ? h_prev[j] : 0.0;
    for (int r = 0; r < 4 * h; ++r) {
      kernels::axpy(dz[r], concat.data(), g_w_gates + static_cast<std::size_t>(r) * cols,
                    cols);
      g_b_gates[r] += dz[r];
    }

    // dh for t-1 from the recurrent half of W.
    std::fill(dh.begin(), dh.end(), 0.0);
    if (t > 0) {
      for (int r = 0; r < 4 * h; ++r) {
        const double* row = w_gates + static_cast<std::size_t>(r) * cols + in;
        kernels::axpy(dz[r], row, dh.data(), h);
      }
    }
  }
}

void lstm_init(const LstmDims& dims, std::mt19937_64& rng, std::vector<double>& params) {
  params.assign(dims.param_count(), 0.0);
  const int h = dims.hidden;
  const int cols = dims.n_inputs + h;
  const std::size_t w_gate_count = static_cast<std::size_t>(4 * h) * cols;
  fill_uniform(rng, 1.0 / std::sqrt(static_cast<double>(cols)), params.data(), w_gate_count);
  // Forget-gate biases start open.
  double* b_gates = params.data() + w_gate_count;
  for (int j = 0; j < h; ++j) b_gates[h + j] = 1.0;
  double* w_out = b_gates + 4 * h;
  fill_uniform(rng, 1.0 / std::sqrt(static_cast<double>(h)), w_out, h);
}

std::vector<double> lstm_inputs_from_series(const FeatureBounds& bounds,
                                            const GaitParams& gait,
                                            const CycleSeries& series) {
  const std::array<double, 4> feat = bounds.normalize(gait);
  const std::size_t steps = series.n_steps();
  std::vector<double> inputs(steps * 6);
  for (std::size_t t = 0; t < steps; ++t) {
    double* row = &inputs[t * 6];
    row[0] = series.stroke_angle_deg[t] / 55.0;
    row[1] = series.pitch_angle_deg[t] / 55.0;
    row[2] = feat[0];
    row[3] = feat[1];
    row[4] = feat[2];
    row[5] = feat[3];
  }
  return inputs;
}

std::vector<double> lstm_inputs_from_gait(const FeatureBounds& bounds,
                                          const GaitParams& gait, std::size_t steps) {
  const Trajectory traj = gait_trajectory(gait, steps);
  const std::array<double, 4> feat = bounds.normalize(gait);
  std::vector<double> inputs(steps * 6);
  for (std::size_t t = 0; t < steps; ++t) {
    double* row = &inputs[t * 6];
    row[0] = traj.stroke_deg[t] / 55.0;
    row[1] = traj.pitch_deg[t] / 55.0;
    row[2] = feat[0];
    row[3] = feat[1];
    row[4] = feat[2];
    row[5] = feat[3];
  }
  return inputs;
}

// ---------------------------------------------------------------------------
// Adam

void Adam::step(std::vector<double>& params, const std::vector<double>& grad, double lr) {
  ++t;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + epsilon);
  }
}

}  // namespace finfom::detail
