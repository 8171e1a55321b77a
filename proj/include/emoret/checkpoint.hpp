#pragma once

#include <string>
#include <vector>

#include "emoret/adamw.hpp"
#include "emoret/network.hpp"

namespace emoret {

struct NamedNet {
  std::string name;  // "speech", "music", "tag"
  ProjectionNet net;
};

// Checkpoint file, magic "EMR1". The base section holds the projection nets
// (selected-epoch parameters when written by the trainer). The optional
// train-state section carries what a resumed run needs: last-epoch
// parameters are the base nets in that case, plus optimizer moments, PRNG
// state, best-so-far bookkeeping and the best parameter snapshot.
struct Checkpoint {
  std::vector<NamedNet> nets;

  bool has_train_state = false;
  std::uint32_t epoch = 0;
  std::string rng_state;
  std::uint32_t best_epoch = 0;
  double best_metric = 0.0;
  std::uint32_t epochs_since_improve = 0;
  std::vector<AdamWState> opt;        // parallel to nets
  std::vector<NamedNet> best_nets;

  const ProjectionNet& net(const std::string& name) const;
  bool has_net(const std::string& name) const;
};

void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace emoret
