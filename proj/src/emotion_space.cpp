#include "emoret/emotion_space.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "emoret/errors.hpp"

namespace emoret {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open lexicon: " + path);
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    std::istringstream ls(line);
    std::string word;
    double v = 0, a = 0, d = 0;
    ls >> word >> v >> a;
    if (ls.fail()) {
      throw ConfigError("lexicon " + path + " line " + std::to_string(lineno) +
                        ": expected `word valence arousal [dominance]`");
    }
    ls >> d;  // dominance column ignored if present
    if (v < 0.0 || v > 1.0 || a < 0.0 || a > 1.0) {
      throw ConfigError("lexicon " + path + " line " + std::to_string(lineno) +
                        ": values out of [0,1] for '" + word + "'");
    }
    if (lex.count(word)) {
      std::fprintf(stderr, "warning: lexicon %s: duplicate word '%s', last wins\n",
                   path.c_str(), word.c_str());
    }
    lex[word] = VAPoint{v, a};
  }
  return lex;
}

std::vector<std::string> load_taxonomy_labels(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open taxonomy: " + path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(is, line)) {
    if (is_comment_or_blank(line)) continue;
    std::istringstream ls(line);
    std::string label;
    ls >> label;
    labels.push_back(label);
  }
  return labels;
}

const VAPoint& Taxonomy::coord(const std::string& label) const {
  auto it = coords.find(label);
  if (it == coords.end()) {
    throw ConfigError("taxonomy '" + name + "' has no label '" + label + "'");
  }
  return it->second;
}

Taxonomy resolve_taxonomy(const std::string& name, const std::vector<std::string>& labels,
                          const Lexicon& lexicon) {
  Taxonomy tax;
  tax.name = name;
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw ConfigError("taxonomy '" + name + "': duplicate label '" + label + "'");
    }
    tax.labels.push_back(label);
    auto it = lexicon.find(label);
    if (it != lexicon.end()) {
      tax.coords[label] = it->second;
    } else if (label == "neutral") {
      std::fprintf(stderr,
                   "warning: taxonomy '%s': 'neutral' missing from lexicon, "
                   "using (0.5, 0.5)\n",
                   name.c_str());
      tax.coords[label] = VAPoint{0.5, 0.5};
    } else {
      throw ConfigError("taxonomy '" + name + "': no lexicon entry for '" + label + "'");
    }
  }
  return tax;
}

double va_similarity(const VAPoint& a, const VAPoint& b) {
  const double dv = a.valence - b.valence;
  const double da = a.arousal - b.arousal;
  return 1.0 - std::sqrt(dv * dv + da * da) / std::sqrt(2.0);
}

SimilarityMatrix similarity_matrix(const Taxonomy& rows, const Taxonomy& cols) {
  SimilarityMatrix sm;
  sm.row_taxonomy = rows.name;
  sm.col_taxonomy = cols.name;
  sm.values = Matrix(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const VAPoint& a = rows.coord(rows.labels[i]);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      sm.values(i, j) = va_similarity(a, cols.coord(cols.labels[j]));
    }
  }
  return sm;
}

std::string most_similar_label(const VAPoint& query, const Taxonomy& music) {
  if (music.labels.empty()) throw ConfigError("most_similar_label: empty taxonomy");
  std::string best;
  double best_sim = -1.0;
  for (const auto& label : music.labels) {
    const double sim = va_similarity(query, music.coord(label));
    if (sim > best_sim || (sim == best_sim && label < best)) {
      best_sim = sim;
      best = label;
    }
  }
  return best;
}

std::string most_similar_label(const std::string& label, const Taxonomy& own,
                               const Taxonomy& music) {
  return most_similar_label(own.coord(label), music);
}

}  // namespace emoret
