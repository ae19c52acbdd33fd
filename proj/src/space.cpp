#include "mforge/space.hpp"

#include <unordered_set>

#include "mforge/errors.hpp"

namespace mforge {

Space::Space(std::vector<std::string> labels, int word_length)
    : labels_(std::move(labels)), word_length_(word_length) {
  if (labels_.size() < 2) throw ValidationError("space needs at least 2 elements");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw ValidationError("duplicate space label: " + l);
  }
}

Space Space::with_size(int n) {
  if (n < 2) throw ValidationError("space needs at least 2 elements");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Space(std::move(labels));
}

Space Space::with_labels(std::vector<std::string> labels) { return Space(std::move(labels)); }

Space Space::binary_words(int m) {
  if (m < 1) throw ValidationError("word length must be positive");
  if (m > 30) throw ValidationError("word length too large for label table");
  const int n = 1 << m;
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    std::string s(static_cast<std::size_t>(m), '0');
    for (int j = 0; j < m; ++j) {
      if ((w >> (m - 1 - j)) & 1) s[static_cast<std::size_t>(j)] = '1';
    }
    labels.push_back(std::move(s));
  }
  return Space(std::move(labels), m);
}

int Space::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace mforge
