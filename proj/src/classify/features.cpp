#include "sac/classify/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace sac {
namespace classify {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2) tokens.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (c >= 'A' && c <= 'Z') cur.push_back(char(c - 'A' + 'a'));
    else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) cur.push_back(char(c));
    else flush();  // any non-alphanumeric byte separates
  }
  flush();
  return tokens;
}

int FeatureSpace::index_of(const std::string& term) const {
  if (!index.empty()) {
    auto it = index.find(term);
    return it == index.end() ? -1 : it->second;
  }
  for (size_t i = 0; i < vocab.size(); ++i)
    if (vocab[i] == term) return int(i);
  return -1;
}

void FeatureSpace::finalize() {
  index.clear();
  index.reserve(vocab.size());
  for (size_t i = 0; i < vocab.size(); ++i) index.emplace(vocab[i], int(i));
}

FeatureSpace fit_feature_space(const std::vector<std::string>& train_texts,
                               size_t max_terms) {
  if (train_texts.empty())
    throw std::invalid_argument("cannot fit a feature space on an empty corpus");
  if (max_terms == 0) throw std::invalid_argument("max_terms must be positive");

  std::map<std::string, size_t> df;
  for (const std::string& text : train_texts) {
    std::set<std::string> seen;
    for (const std::string& tok : tokenize(text))
      if (seen.insert(tok).second) ++df[tok];
  }

  std::vector<std::pair<std::string, size_t>> terms(df.begin(), df.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (terms.size() > max_terms) terms.resize(max_terms);

  FeatureSpace fs;
  fs.max_terms = max_terms;
  const double n = double(train_texts.size());
  for (const auto& [term, count] : terms) {
    fs.vocab.push_back(term);
    fs.idf.push_back(std::log((1.0 + n) / (1.0 + double(count))) + 1.0);
  }
  fs.finalize();
  return fs;
}

std::vector<double> vectorize(const FeatureSpace& fs, const std::string& text) {
  std::vector<double> v(fs.dim(), 0.0);
  for (const std::string& tok : tokenize(text)) {
    int idx = fs.index_of(tok);
    if (idx >= 0) v[size_t(idx)] += fs.idf[size_t(idx)];
  }
  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
  }
  return v;
}

}  // namespace classify
}  // namespace sac
