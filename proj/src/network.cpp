#include "emoret/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace emoret {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

std::size_t ProjectionNet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weight.size() + l.bias.size();
  return n;
}

ProjectionNet make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                       std::size_t output_dim, Rng& rng) {
  if (input_dim == 0 || output_dim == 0) {
    throw std::runtime_error("make_mlp: zero dimension");
  }
  std::vector<std::size_t> dims;
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(output_dim);

  ProjectionNet net;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    Layer layer;
    layer.weight = Matrix(dims[l], dims[l + 1]);
    layer.bias.assign(dims[l + 1], 0.0);
    layer.activation =
        (l + 2 < dims.size()) ? Activation::Relu : Activation::Linear;
    const double bound = std::sqrt(6.0 / static_cast<double>(dims[l] + dims[l + 1]));
    for (double& w : layer.weight.data) w = rng.uniform(-bound, bound);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

std::pair<Matrix, Tape> forward(const ProjectionNet& net, const Matrix& batch) {
  if (net.layers.empty()) throw std::runtime_error("forward: empty net");
  if (batch.cols != net.input_dim()) {
    throw std::runtime_error("forward: batch is " + shape_str(batch.rows, batch.cols) +
                             " but net input_dim is " + std::to_string(net.input_dim()));
  }
  Tape tape;
  tape.input = batch;
  const Matrix* cur = &tape.input;
  for (const auto& layer : net.layers) {
    Matrix z = kernels::matmul(*cur, layer.weight);
    kernels::add_bias_rows(z, layer.bias);
    tape.pre.push_back(z);
    if (layer.activation == Activation::Relu) kernels::relu_inplace(z);
    tape.post.push_back(std::move(z));
    cur = &tape.post.back();
  }
  Matrix out = tape.post.back();
  check_finite(out, "forward output");
  return {std::move(out), std::move(tape)};
}

void Gradients::add_scaled(const Gradients& other, double scale) {
  for (std::size_t l = 0; l < weight.size(); ++l) {
    for (std::size_t i = 0; i < weight[l].size(); ++i) {
      weight[l].data[i] += scale * other.weight[l].data[i];
    }
    for (std::size_t i = 0; i < bias[l].size(); ++i) {
      bias[l][i] += scale * other.bias[l][i];
    }
  }
  if (input.size() > 0 && other.input.size() > 0) {
    for (std::size_t i = 0; i < input.size(); ++i) {
      input.data[i] += scale * other.input.data[i];
    }
  }
}

Gradients backward(const ProjectionNet& net, const Tape& tape, const Matrix& output_grad) {
  const std::size_t nl = net.layers.size();
  if (tape.pre.size() != nl || tape.post.size() != nl ||
      tape.input.cols != net.input_dim()) {
    throw std::runtime_error("backward: tape does not match net");
  }
  for (std::size_t l = 0; l < nl; ++l) {
    if (tape.pre[l].rows != tape.input.rows ||
        tape.pre[l].cols != net.layers[l].weight.cols) {
      throw std::runtime_error("backward: stale tape at layer " + std::to_string(l));
    }
  }
  if (output_grad.rows != tape.input.rows || output_grad.cols != net.output_dim()) {
    throw std::runtime_error("backward: output_grad is " +
                             shape_str(output_grad.rows, output_grad.cols) +
                             ", expected " +
                             shape_str(tape.input.rows, net.output_dim()));
  }

  Gradients g;
  g.weight.resize(nl);
  g.bias.resize(nl);

  Matrix d = output_grad;
  for (std::size_t li = nl; li-- > 0;) {
    const Layer& layer = net.layers[li];
    if (layer.activation == Activation::Relu) {
      kernels::relu_backward_inplace(d, tape.pre[li]);
    }
    const Matrix& prev = (li == 0) ? tape.input : tape.post[li - 1];
    g.weight[li] = kernels::matmul_tn(prev, d);
    g.bias[li] = kernels::colsum(d);
    d = kernels::matmul_nt(d, layer.weight);
  }
  g.input = std::move(d);
  check_finite(g.input, "backward input grad");
  return g;
}

}  // namespace emoret
