#pragma once

#include <map>
#include <string>
#include <vector>

#include "emoret/matrix.hpp"

namespace emoret {

// Valence-arousal coordinate in the unit square.
struct VAPoint {
  double valence = 0.0;
  double arousal = 0.0;
};

// Word -> VA lookup ingested from a lexicon file. The file carries an
// optional dominance column which is ignored.
using Lexicon = std::map<std::string, VAPoint>;

// Lexicon file: one `word valence arousal [dominance]` record per line,
// values in [0,1], '#' comments skipped. Duplicate words: last wins, with a
// warning.
Lexicon load_lexicon(const std::string& path);

struct Taxonomy {
  std::string name;
  std::vector<std::string> labels;         // unique, ordered
  std::map<std::string, VAPoint> coords;   // every label resolved

  const VAPoint& coord(const std::string& label) const;
  bool has(const std::string& label) const { return coords.count(label) > 0; }
  std::size_t size() const { return labels.size(); }
};

// Taxonomy file: one label per line, '#' comments skipped.
std::vector<std::string> load_taxonomy_labels(const std::string& path);

// Resolves every label against the lexicon. A missing word is a hard error
// naming it, except "neutral" which falls back to (0.5, 0.5) with a warning.
Taxonomy resolve_taxonomy(const std::string& name, const std::vector<std::string>& labels,
                          const Lexicon& lexicon);

// sim = 1 - d(a,b)/sqrt(2); 1 iff the points coincide, 0 at opposite corners.
double va_similarity(const VAPoint& a, const VAPoint& b);

struct SimilarityMatrix {
  std::string row_taxonomy;
  std::string col_taxonomy;
  Matrix values;
};

SimilarityMatrix similarity_matrix(const Taxonomy& rows, const Taxonomy& cols);

// Argmax of va_similarity over the music taxonomy; ties go to the
// lexicographically smaller label.
std::string most_similar_label(const VAPoint& query, const Taxonomy& music);
std::string most_similar_label(const std::string& label, const Taxonomy& own,
                               const Taxonomy& music);

}  // namespace emoret
