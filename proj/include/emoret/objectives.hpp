#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emoret/matrix.hpp"

namespace emoret::objectives {

enum class Objective : std::uint8_t { Triplet, TripletSP, TripletEmoSim };

Objective objective_from_string(const std::string& s);
std::string objective_name(Objective o);

struct LossConfig {
  double margin = 0.4;
  double w1 = 0.4, w2 = 0.3, w3 = 0.3;  // cross / sp-speech / sp-music
  double lambda = 0.5;
  Objective objective = Objective::Triplet;
};

// Index triple into embedding matrices. For the cross loss, anchor indexes
// the speech matrix and positive/negative index the music matrix; for the
// structure-preserving losses, anchor indexes the tag matrix.
struct Triple {
  std::size_t anchor, positive, negative;
};

struct TripletGrads {
  std::vector<double> anchor, positive, negative;
};

// Hinge triplet loss max{0, D(z,z+) - D(z,z-) + margin} over cosine
// distance. Gradients are zero when the hinge is inactive (argument <= 0).
double triplet_loss(std::span<const double> anchor, std::span<const double> positive,
                    std::span<const double> negative, double margin,
                    TripletGrads* grads = nullptr);

struct CrossLossResult {
  double loss = 0.0;
  Matrix d_speech, d_music;
};

// Mean triplet loss over the batch with speech anchors and music
// positives/negatives.
CrossLossResult cross_loss(const Matrix& speech, const Matrix& music,
                           const std::vector<Triple>& triplets, double margin);

struct SpTriplets {
  std::vector<Triple> speech;  // (tag anchor, speech pos, speech neg)
  std::vector<Triple> music;   // (tag anchor, music pos, music neg)
};

struct SpLossResult {
  double loss_speech = 0.0;
  double loss_music = 0.0;
  Matrix d_tag_speech, d_tag_music;  // tag grads kept per loss so the
  Matrix d_speech, d_music;          // combination weights stay applicable
};

// Structure-preserving losses anchored at emotion-tag embeddings, one per
// domain, each a mean of triplet losses.
SpLossResult sp_losses(const Matrix& tag, const Matrix& speech, const Matrix& music,
                       const SpTriplets& triplets, double margin);

// w1*cross + w2*sp_speech + w3*sp_music
double combined_sp_loss(double cross, double sp_speech, double sp_music,
                        const LossConfig& cfg);

// Per-row similarity structure of one batch: S_y from emotion labels, S_z
// from features, and the per-row retained-entry mask.
struct BatchSimilarities {
  Matrix s_y;
  Matrix s_z;
  Matrix unique_mask;  // 0/1, at least one retained entry per row
};

// Per row, keep the first column (in column order) of each distinct S_y
// value, so each distinct label relation votes once.
Matrix unique_first_occurrence_mask(const Matrix& s_y);

struct EmoSimResult {
  double loss = 0.0;
  Matrix d_sz;
};

// (1/N) sum_i MSE over row i's retained entries of (S_y - S_z). Gradient
// flows only through retained S_z entries.
EmoSimResult emosim_loss(const Matrix& s_y, const Matrix& s_z, const Matrix& unique_mask);

// Entry (i,j) = (1 + cos(speech_i, music_j)) / 2, in [0,1].
Matrix feature_similarity_matrix(const Matrix& speech, const Matrix& music);

struct SimilarityGrads {
  Matrix d_speech, d_music;
};

// Backward pass of feature_similarity_matrix for a given upstream d_sz.
SimilarityGrads feature_similarity_backward(const Matrix& speech, const Matrix& music,
                                            const Matrix& d_sz);

}  // namespace emoret::objectives
