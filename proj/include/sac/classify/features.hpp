#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sac {
namespace classify {

/// Lowercased tokens split on any non-alphanumeric byte; tokens shorter
/// than two characters are dropped, order and duplicates kept. No stemming,
/// no stopword removal.
std::vector<std::string> tokenize(const std::string& text);

/// Bag-of-words vocabulary with smoothed idf weights,
/// idf(t) = ln((1+N)/(1+df(t))) + 1.
struct FeatureSpace {
  std::vector<std::string> vocab;  // (df desc, term asc), capped at max_terms
  std::vector<double> idf;         // parallel to vocab
  size_t max_terms = 2000;

  size_t dim() const { return vocab.size(); }
  /// Index of term, -1 when out of vocabulary.
  int index_of(const std::string& term) const;
  /// Rebuilds the term index; fit_feature_space and the model loader call
  /// this, hand-assembled spaces fall back to a linear scan.
  void finalize();

  std::unordered_map<std::string, int> index;  // term -> vocab position
};

/// Document frequencies over the training texts only. Throws
/// std::invalid_argument on an empty corpus or max_terms == 0.
FeatureSpace fit_feature_space(const std::vector<std::string>& train_texts,
                               size_t max_terms = 2000);

/// Dense tf-idf vector: raw term count times idf, then L2-normalized.
/// All-zero input stays all-zero; out-of-vocabulary terms are ignored.
std::vector<double> vectorize(const FeatureSpace& fs, const std::string& text);

}  // namespace classify
}  // namespace sac
