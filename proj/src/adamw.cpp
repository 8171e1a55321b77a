#include "emoret/adamw.hpp"

#include <cmath>
#include <stdexcept>

namespace emoret {

AdamWState make_adamw_state(const ProjectionNet& net, const AdamWConfig& cfg) {
  AdamWState s;
  s.cfg = cfg;
  for (const auto& layer : net.layers) {
    s.m_w.emplace_back(layer.weight.rows, layer.weight.cols);
    s.v_w.emplace_back(layer.weight.rows, layer.weight.cols);
    s.m_b.emplace_back(layer.bias.size(), 0.0);
    s.v_b.emplace_back(layer.bias.size(), 0.0);
  }
  return s;
}

namespace {

void update_block(std::span<double> p, std::span<const double> g, std::span<double> m,
                  std::span<double> v, const AdamWConfig& c, double bc1, double bc2) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    p[i] -= c.lr * (mhat / (std::sqrt(vhat) + c.eps) + c.weight_decay * p[i]);
  }
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void adamw_step(AdamWState& state, ProjectionNet& net, const Gradients& grads,
                const std::string& name) {
  const std::size_t nl = net.layers.size();
  if (grads.weight.size() != nl || state.m_w.size() != nl) {
    throw std::runtime_error("adamw_step: layer count mismatch for " + name);
  }
  for (std::size_t l = 0; l < nl; ++l) {
    if (!grads.weight[l].same_shape(net.layers[l].weight) ||
        grads.bias[l].size() != net.layers[l].bias.size()) {
      throw std::runtime_error("adamw_step: gradient shape mismatch for " + name +
                               " layer " + std::to_string(l));
    }
    if (!all_finite(grads.weight[l].data)) {
      throw std::runtime_error("adamw_step: non-finite gradient in " + name +
                               " layer " + std::to_string(l) + " weight");
    }
    if (!all_finite(grads.bias[l])) {
      throw std::runtime_error("adamw_step: non-finite gradient in " + name +
                               " layer " + std::to_string(l) + " bias");
    }
  }

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.cfg.beta2, static_cast<double>(state.step));
  for (std::size_t l = 0; l < nl; ++l) {
    update_block(net.layers[l].weight.data, grads.weight[l].data, state.m_w[l].data,
                 state.v_w[l].data, state.cfg, bc1, bc2);
    update_block(net.layers[l].bias, grads.bias[l], state.m_b[l], state.v_b[l],
                 state.cfg, bc1, bc2);
  }
}

}  // namespace emoret
