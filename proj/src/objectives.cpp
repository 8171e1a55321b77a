#include "emoret/objectives.hpp"

#include <cmath>
#include <stdexcept>

#include "emoret/errors.hpp"

namespace emoret::objectives {

Objective objective_from_string(const std::string& s) {
  if (s == "triplet") return Objective::Triplet;
  if (s == "triplet-sp") return Objective::TripletSP;
  if (s == "triplet-emosim") return Objective::TripletEmoSim;
  throw ConfigError("unknown objective '" + s +
                    "' (expected triplet | triplet-sp | triplet-emosim)");
}

std::string objective_name(Objective o) {
  switch (o) {
    case Objective::Triplet: return "triplet";
    case Objective::TripletSP: return "triplet-sp";
    case Objective::TripletEmoSim: return "triplet-emosim";
  }
  return "?";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sqnorm(std::span<const double> a) { return dot(a, a); }

// out += scale * d cos(a,b)/da. Zero vectors use the orthogonal convention
// (constant cosine), so they contribute no gradient.
void add_cosine_grad(std::span<const double> a, std::span<const double> b, double scale,
                     std::span<double> out) {
  const double na2 = sqnorm(a);
  const double nb2 = sqnorm(b);
  if (na2 == 0.0 || nb2 == 0.0) return;
  const double na = std::sqrt(na2);
  const double nb = std::sqrt(nb2);
  const double c = dot(a, b) / (na * nb);
  const double inv = 1.0 / (na * nb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] += scale * (b[i] * inv - c * a[i] / na2);
  }
}

void check_indices(const std::vector<Triple>& triplets, std::size_t anchor_rows,
                   std::size_t item_rows, const char* what) {
  for (const auto& t : triplets) {
    if (t.anchor >= anchor_rows || t.positive >= item_rows || t.negative >= item_rows) {
      throw std::runtime_error(std::string(what) + ": triplet index out of range");
    }
  }
}

}  // namespace

double triplet_loss(std::span<const double> anchor, std::span<const double> positive,
                    std::span<const double> negative, double margin, TripletGrads* grads) {
  if (anchor.size() != positive.size() || anchor.size() != negative.size()) {
    throw std::runtime_error("triplet_loss: embedding dim mismatch");
  }
  const double dp = cosine_distance(anchor, positive);
  const double dn = cosine_distance(anchor, negative);
  const double arg = dp - dn + margin;
  const double loss = arg > 0.0 ? arg : 0.0;
  if (grads) {
    grads->anchor.assign(anchor.size(), 0.0);
    grads->positive.assign(anchor.size(), 0.0);
    grads->negative.assign(anchor.size(), 0.0);
    if (arg > 0.0) {
      // D = 1 - cos, so dD/dx = -dcos/dx
      add_cosine_grad(anchor, positive, -1.0, grads->anchor);
      add_cosine_grad(anchor, negative, +1.0, grads->anchor);
      add_cosine_grad(positive, anchor, -1.0, grads->positive);
      add_cosine_grad(negative, anchor, +1.0, grads->negative);
    }
  }
  return loss;
}

CrossLossResult cross_loss(const Matrix& speech, const Matrix& music,
                           const std::vector<Triple>& triplets, double margin) {
  if (speech.cols != music.cols) {
    throw std::runtime_error("cross_loss: embedding dim mismatch");
  }
  check_indices(triplets, speech.rows, music.rows, "cross_loss");
  CrossLossResult r;
  r.d_speech = Matrix(speech.rows, speech.cols);
  r.d_music = Matrix(music.rows, music.cols);
  if (triplets.empty()) return r;

  const double inv_n = 1.0 / static_cast<double>(triplets.size());
  TripletGrads g;
  double total = 0.0;
  for (const auto& t : triplets) {
    total += triplet_loss(speech.row(t.anchor), music.row(t.positive),
                          music.row(t.negative), margin, &g);
    auto da = r.d_speech.row(t.anchor);
    auto dp = r.d_music.row(t.positive);
    auto dn = r.d_music.row(t.negative);
    for (std::size_t k = 0; k < speech.cols; ++k) {
      da[k] += inv_n * g.anchor[k];
      dp[k] += inv_n * g.positive[k];
      dn[k] += inv_n * g.negative[k];
    }
  }
  r.loss = total * inv_n;
  return r;
}

SpLossResult sp_losses(const Matrix& tag, const Matrix& speech, const Matrix& music,
                       const SpTriplets& triplets, double margin) {
  if (tag.cols != speech.cols || tag.cols != music.cols) {
    throw std::runtime_error("sp_losses: embedding dim mismatch");
  }
  check_indices(triplets.speech, tag.rows, speech.rows, "sp_losses(speech)");
  check_indices(triplets.music, tag.rows, music.rows, "sp_losses(music)");

  SpLossResult r;
  r.d_tag_speech = Matrix(tag.rows, tag.cols);
  r.d_tag_music = Matrix(tag.rows, tag.cols);
  r.d_speech = Matrix(speech.rows, speech.cols);
  r.d_music = Matrix(music.rows, music.cols);

  TripletGrads g;
  if (!triplets.speech.empty()) {
    const double inv_n = 1.0 / static_cast<double>(triplets.speech.size());
    double total = 0.0;
    for (const auto& t : triplets.speech) {
      total += triplet_loss(tag.row(t.anchor), speech.row(t.positive),
                            speech.row(t.negative), margin, &g);
      auto da = r.d_tag_speech.row(t.anchor);
      auto dp = r.d_speech.row(t.positive);
      auto dn = r.d_speech.row(t.negative);
      for (std::size_t k = 0; k < tag.cols; ++k) {
        da[k] += inv_n * g.anchor[k];
        dp[k] += inv_n * g.positive[k];
        dn[k] += inv_n * g.negative[k];
      }
    }
    r.loss_speech = total * inv_n;
  }
  if (!triplets.music.empty()) {
    const double inv_n = 1.0 / static_cast<double>(triplets.music.size());
    double total = 0.0;
    for (const auto& t : triplets.music) {
      total += triplet_loss(tag.row(t.anchor), music.row(t.positive),
                            music.row(t.negative), margin, &g);
      auto da = r.d_tag_music.row(t.anchor);
      auto dp = r.d_music.row(t.positive);
      auto dn = r.d_music.row(t.negative);
      for (std::size_t k = 0; k < tag.cols; ++k) {
        da[k] += inv_n * g.anchor[k];
        dp[k] += inv_n * g.positive[k];
        dn[k] += inv_n * g.negative[k];
      }
    }
    r.loss_music = total * inv_n;
  }
  return r;
}

double combined_sp_loss(double cross, double sp_speech, double sp_music,
                        const LossConfig& cfg) {
  return cfg.w1 * cross + cfg.w2 * sp_speech + cfg.w3 * sp_music;
}

Matrix unique_first_occurrence_mask(const Matrix& s_y) {
  Matrix mask(s_y.rows, s_y.cols);
  std::vector<double> seen;
  for (std::size_t i = 0; i < s_y.rows; ++i) {
    seen.clear();
    for (std::size_t j = 0; j < s_y.cols; ++j) {
      const double v = s_y(i, j);
      bool dup = false;
      for (double s : seen) {
        if (s == v) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        seen.push_back(v);
        mask(i, j) = 1.0;
      }
    }
  }
  return mask;
}

EmoSimResult emosim_loss(const Matrix& s_y, const Matrix& s_z, const Matrix& unique_mask) {
  if (!s_y.same_shape(s_z) || !s_y.same_shape(unique_mask)) {
    throw std::runtime_error("emosim_loss: shape mismatch");
  }
  const std::size_t n = s_y.rows;
  if (n == 0) throw std::runtime_error("emosim_loss: empty batch");

  EmoSimResult r;
  r.d_sz = Matrix(s_z.rows, s_z.cols);
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t kept = 0;
    for (std::size_t j = 0; j < s_y.cols; ++j) {
      if (unique_mask(i, j) != 0.0) ++kept;
    }
    if (kept == 0) throw std::runtime_error("emosim_loss: empty row after masking");
    const double inv_k = 1.0 / static_cast<double>(kept);
    double row_mse = 0.0;
    for (std::size_t j = 0; j < s_y.cols; ++j) {
      if (unique_mask(i, j) == 0.0) continue;
      const double diff = s_y(i, j) - s_z(i, j);
      row_mse += diff * diff;
      r.d_sz(i, j) = inv_n * inv_k * 2.0 * (s_z(i, j) - s_y(i, j));
    }
    total += row_mse * inv_k;
  }
  r.loss = total * inv_n;
  return r;
}

Matrix feature_similarity_matrix(const Matrix& speech, const Matrix& music) {
  Matrix out = kernels::pairwise_cosine(speech, music);
  for (double& v : out.data) v = (1.0 + v) * 0.5;
  return out;
}

SimilarityGrads feature_similarity_backward(const Matrix& speech, const Matrix& music,
                                            const Matrix& d_sz) {
  if (d_sz.rows != speech.rows || d_sz.cols != music.rows) {
    throw std::runtime_error("feature_similarity_backward: shape mismatch");
  }
  SimilarityGrads g;
  g.d_speech = Matrix(speech.rows, speech.cols);
  g.d_music = Matrix(music.rows, music.cols);
  // dS/dcos = 1/2; one writer per output row keeps this deterministic.
  const std::int64_t nq = static_cast<std::int64_t>(speech.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < music.rows; ++j) {
      const double up = d_sz(i, j);
      if (up == 0.0) continue;
      add_cosine_grad(speech.row(i), music.row(j), 0.5 * up, g.d_speech.row(i));
    }
  }
  const std::int64_t nm = static_cast<std::int64_t>(music.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < nm; ++j) {
    for (std::size_t i = 0; i < speech.rows; ++i) {
      const double up = d_sz(i, j);
      if (up == 0.0) continue;
      add_cosine_grad(music.row(j), speech.row(i), 0.5 * up, g.d_music.row(j));
    }
  }
  return g;
}

}  // namespace emoret::objectives
