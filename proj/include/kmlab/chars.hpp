#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "kmlab/gcm.hpp"
#include "kmlab/weyl.hpp"

namespace kmlab {

// sum_m c_m e^{lambda - sum m_i alpha_i}, truncated at total depth.
class CharacterPoly {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();
  using Coeffs = std::map<DepthVec, std::int64_t>;

  CharacterPoly(Anchor anchor, int depth_bound) : anchor_(std::move(anchor)), bound_(depth_bound) {}
  static CharacterPoly monomial(Anchor anchor, DepthVec m, int depth_bound, std::int64_t c = 1);

  const Anchor& anchor() const { return anchor_; }
  int depth_bound() const { return bound_; }
  const Coeffs& coeffs() const { return coeffs_; }
  std::int64_t coefficient(const DepthVec& m) const;
  std::int64_t total_mass() const;
  int max_depth() const;  // -1 for the zero polynomial
  bool is_zero() const { return coeffs_.empty(); }

  void add_term(const DepthVec& m, std::int64_t c);
  CharacterPoly truncated(int d) const;

  CharacterPoly& operator+=(const CharacterPoly& o);
  CharacterPoly& operator-=(const CharacterPoly& o);
  friend CharacterPoly operator+(CharacterPoly a, const CharacterPoly& b) { return a += b; }
  friend CharacterPoly operator-(CharacterPoly a, const CharacterPoly& b) { return a -= b; }
  friend CharacterPoly operator*(const CharacterPoly& a, const CharacterPoly& b);
  friend bool operator==(const CharacterPoly& a, const CharacterPoly& b) {
    return a.anchor_ == b.anchor_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Anchor anchor_;
  int bound_;
  Coeffs coeffs_;
};

// coefficientwise a <= b
bool dominated_by(const CharacterPoly& a, const CharacterPoly& b);

struct RootEntry {
  std::int64_t multiplicity = 0;
  bool is_real = false;
};

struct RootTable {
  int depth_bound = 0;
  std::map<DepthVec, RootEntry> entries;  // keyed by positive depth vectors
};

RootTable real_roots(const Gcm& g, int d);
RootTable peterson_mults(const Gcm& g, int d);

// Monomialwise closed form; the result is truncated at f's bound.
CharacterPoly demazure_op(const Gcm& g, int i, const CharacterPoly& f);
// D_{i_1} ... D_{i_l} e^lambda along the given word, untruncated until the end.
CharacterPoly char_demazure_word(const Gcm& g, const Anchor& lambda, const Word& word, int d);
CharacterPoly char_demazure(const Gcm& g, const Anchor& lambda, const WeylElement& w, int d);

struct CharLInfo {
  int sweeps = 0;
  bool fully_stable = false;  // the untruncated polynomial stopped changing (finite type)
};
CharacterPoly char_L(const Gcm& g, const Anchor& lambda, int d, CharLInfo* info = nullptr);

struct WeylKacReport {
  bool equal = false;
  int depth = 0;
  std::optional<DepthVec> first_mismatch;
  std::int64_t lhs_coeff = 0;
  std::int64_t rhs_coeff = 0;
  std::size_t numerator_terms = 0;
  std::size_t roots_used = 0;
};
WeylKacReport check_weyl_kac(const Gcm& g, const Anchor& lambda, int d);

}  // namespace kmlab
