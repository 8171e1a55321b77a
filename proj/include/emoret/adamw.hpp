#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emoret/matrix.hpp"
#include "emoret/network.hpp"

namespace emoret {

struct AdamWConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

// Per-parameter first/second moments mirroring a net's layer shapes.
struct AdamWState {
  AdamWConfig cfg;
  std::uint64_t step = 0;
  std::vector<Matrix> m_w, v_w;
  std::vector<std::vector<double>> m_b, v_b;
};

AdamWState make_adamw_state(const ProjectionNet& net, const AdamWConfig& cfg);

// One decoupled-weight-decay update:
//   m = b1 m + (1-b1) g;  v = b2 v + (1-b2) g^2
//   p -= lr * (mhat / (sqrt(vhat) + eps) + weight_decay * p)
// A non-finite gradient aborts the whole step, naming the parameter.
void adamw_step(AdamWState& state, ProjectionNet& net, const Gradients& grads,
                const std::string& name);

}  // namespace emoret
