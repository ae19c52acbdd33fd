// The finite set the channel and metric live on. Labels are always
// materialized: decimal indices by default, binary words for product spaces.
#pragma once

#include <string>
#include <vector>

namespace mforge {

class Space {
 public:
  static Space with_size(int n);
  static Space with_labels(std::vector<std::string> labels);
  /// All binary words of length m in lexicographic order; bit j of word w is
  /// the coefficient of 2^(m-1-j), so labels read left to right.
  static Space binary_words(int m);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a label, -1 if absent.
  int index_of(const std::string& label) const;

  int word_length() const { return word_length_; }  // m for binary-word spaces, else 0
  bool is_binary_words() const { return word_length_ > 0; }

  friend bool operator==(const Space& a, const Space& b) { return a.labels_ == b.labels_; }

 private:
  explicit Space(std::vector<std::string> labels, int word_length = 0);

  std::vector<std::string> labels_;
  int word_length_ = 0;
};

}  // namespace mforge
