#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kmlab/gcm.hpp"

namespace kmlab {

using Word = std::vector<int>;

// Element of W, identified by the depth of w(rho) below rho.
class WeylElement {
 public:
  const DepthVec& rho_depth() const { return rho_depth_; }
  Weight rho_image() const { return {Anchor(rho_depth_.size(), 1), rho_depth_}; }
  const Word& reduced_word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.rho_depth_ == b.rho_depth_;
  }
  // length first, then the canonical reduced word
  friend bool operator<(const WeylElement& a, const WeylElement& b) {
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    return a.word_ < b.word_;
  }

 private:
  friend WeylElement element_from_rho(const Gcm&, DepthVec);
  DepthVec rho_depth_;
  Word word_;
};

WeylElement identity_element(const Gcm& g);
WeylElement element_from_rho(const Gcm& g, DepthVec rho_depth);
// The word (i_1, ..., i_k) means s_{i_1} ... s_{i_k}.
WeylElement canonicalize(const Gcm& g, const Word& word);
WeylElement left_multiply(const Gcm& g, int i, const WeylElement& w);
WeylElement right_multiply(const Gcm& g, const WeylElement& w, int i);
WeylElement inverse(const Gcm& g, const WeylElement& w);
WeylElement product(const Gcm& g, const WeylElement& a, const WeylElement& b);
std::size_t length(const WeylElement& w);
Weight act(const Gcm& g, const WeylElement& w, Weight x);
Weight act_word(const Gcm& g, const Word& word, Weight x);
bool is_left_descent(const Gcm& g, int i, const WeylElement& w);
bool is_right_descent(const Gcm& g, const WeylElement& w, int i);

bool bruhat_leq(const Gcm& g, const WeylElement& v, const WeylElement& w);
bool bruhat_leq_oracle(const Gcm& g, const WeylElement& v, const WeylElement& w);

// All elements of length <= max_len, sorted by (length, reduced word).
std::vector<WeylElement> enumerate(const Gcm& g, int max_len);
// Throws EmptyWithinBound.
std::vector<WeylElement> minimal_upper_bounds(const Gcm& g, const std::vector<WeylElement>& S,
                                              int search_len);
std::vector<Word> all_reduced_words(const Gcm& g, const WeylElement& w);
// minimal length representative of w W_J, J = {i : lambda_i = 0}
WeylElement min_coset_representative(const Gcm& g, const WeylElement& w, const Anchor& lambda);

// "1.2.1" using labels, "e" for the identity
std::string format_word(const Gcm& g, const Word& w);
std::string format_element(const Gcm& g, const WeylElement& w);
// accepts '.'- or ','-separated labels, or "e"
Word parse_word(const Gcm& g, std::string_view s);
// elements separated by ',', letters by '.'; a list with no dots is read as simple reflections
std::vector<WeylElement> parse_element_list(const Gcm& g, std::string_view s);

}  // namespace kmlab
