#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "emoret/matrix.hpp"
#include "emoret/rng.hpp"

namespace emoret {

enum class Activation : std::uint8_t { Linear = 0, Relu = 1 };

struct Layer {
  Matrix weight;              // (in, out)
  std::vector<double> bias;   // (out)
  Activation activation = Activation::Linear;
};

// Projection MLP mapping fixed input features into the joint embedding
// space. The final layer is always a linear output head.
struct ProjectionNet {
  std::vector<Layer> layers;

  std::size_t input_dim() const { return layers.front().weight.rows; }
  std::size_t output_dim() const { return layers.back().weight.cols; }
  std::size_t parameter_count() const;
};

// Builds input -> hidden... -> output with ReLU on hidden layers and a
// linear head. Weights drawn uniform in +-sqrt(6/(fan_in+fan_out)), biases
// zero, so runs are reproducible from the seed.
ProjectionNet make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                       std::size_t output_dim, Rng& rng);

// Intermediate activations of one forward pass, enough to replay an exact
// backward pass.
struct Tape {
  Matrix input;
  std::vector<Matrix> pre;   // pre-activation per layer
  std::vector<Matrix> post;  // post-activation per layer; post.back() is the output
};

// output is (batch.rows, net.output_dim). Rejects dimension mismatches.
std::pair<Matrix, Tape> forward(const ProjectionNet& net, const Matrix& batch);

struct Gradients {
  std::vector<Matrix> weight;
  std::vector<std::vector<double>> bias;
  Matrix input;  // dL/dinput

  void add_scaled(const Gradients& other, double scale);
};

// Exact backpropagation over the recorded tape. Rejects a tape whose shapes
// do not match the net or an output_grad of the wrong shape.
Gradients backward(const ProjectionNet& net, const Tape& tape, const Matrix& output_grad);

}  // namespace emoret
