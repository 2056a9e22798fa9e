#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmlab/chars.hpp"
#include "kmlab/gcm.hpp"
#include "kmlab/linalg.hpp"
#include "kmlab/weyl.hpp"

namespace kmlab {

// F_{i_1}^{(a_1)} ... F_{i_k}^{(a_k)} v_lambda; normalized words have a_j >= 1
// and no two adjacent factors with the same index.
struct FWord {
  std::vector<std::pair<int, int>> factors;

  DepthVec content(int rank) const;
  bool empty() const { return factors.empty(); }
  friend bool operator==(const FWord&, const FWord&) = default;
  friend auto operator<=>(const FWord&, const FWord&) = default;
};

// Merges adjacent equal indices (F^(a)F^(b) = C(a+b,a) F^(a+b)) and drops zero powers.
std::pair<Integer, FWord> normalize_word(const std::vector<std::pair<int, int>>& factors);
// All normalized words of the given content, in lexicographic order.
std::vector<FWord> words_of_content(const DepthVec& m);
std::string format_fword(const Gcm& g, const FWord& w);

using DimHint = std::function<std::optional<std::size_t>(const DepthVec&)>;
DimHint hint_from_character(const CharacterPoly& ch);

// A vector of L(lambda) in the pivot basis of its weight space.
struct ModuleVector {
  DepthVec depth;
  QVector coords;
};

// L(lambda) realized on the quotient of the Verma module by the radical of the
// contravariant form, weight space by weight space. The weight spaces computed
// form a down-set of depth vectors: everything of total depth <= depth_bound,
// plus the down-closure of any extra depths requested.
class HighestWeightModule {
 public:
  HighestWeightModule(const Gcm& g, Anchor lambda, int depth_bound,
                      const std::vector<DepthVec>& extra = {}, DimHint hint = {});

  const Gcm& gcm() const { return g_; }
  const Anchor& highest_weight() const { return lambda_; }
  int depth_bound() const { return bound_; }

  bool has_layer(const DepthVec& m) const { return layers_.count(m) > 0; }
  std::vector<DepthVec> layers() const;  // computed depths, ordered by total then lex
  std::size_t dim(const DepthVec& m) const;
  const std::vector<FWord>& basis_words(const DepthVec& m) const;
  const QMatrix& gram(const DepthVec& m) const;
  // every normalized word of content m (empty for layers known to vanish)
  const std::vector<FWord>& all_words(const DepthVec& m) const;

  // pivot coordinates of word * v_lambda; throws if the layer was not computed
  QVector coords(const FWord& w) const;
  Rational pair(const FWord& u, const FWord& v) const;
  Rational form(const DepthVec& m, const QVector& x, const QVector& y) const;

  // E_i^{(a)} : L_m -> L_{m - a e_i}; zero-length result when m_i < a
  QVector apply_E(int i, int a, const DepthVec& m, const QVector& x) const;
  // F_i^{(a)} : L_m -> L_{m + a e_i}; nullopt when the target was not computed
  std::optional<QVector> apply_F(int i, int a, const DepthVec& m, const QVector& x) const;
  // matrix of E_i (single step) from L_m to L_{m - e_i}
  const QMatrix& e_matrix(int i, const DepthVec& m) const;

  // true when no weight of L(lambda) has total depth depth_bound + 1 (checked
  // by E_j F_i v = 0 on the boundary layers); for finite type this means the
  // window holds the whole module
  bool window_complete() const;

 private:
  struct Layer {
    DepthVec depth;
    std::vector<FWord> words;
    std::map<FWord, std::size_t> index;
    std::vector<QVector> coords;  // per word, in the pivot basis
    std::vector<std::size_t> basis;
    std::vector<FWord> basis_words;
    QMatrix gram;
    std::vector<QMatrix> e;  // per i, dim(m - e_i) x dim(m); empty when m_i = 0
  };

  void build_layer(const DepthVec& m, const DimHint& hint);
  const Layer& layer(const DepthVec& m) const;
  QVector coords_in(const Layer& L, const FWord& w) const;
  QVector f_into(int i, int a, const Layer& src, const QVector& x, const Layer& dst) const;
  QVector e_single(int i, const FWord& u, const DepthVec& m) const;

  Gcm g_;
  Anchor lambda_;
  int bound_;
  std::map<DepthVec, Layer> layers_;
};

enum class FamilyKind { Thin, Thick };

// Weightwise subspaces of L(lambda) indexed by the module's computed depths.
struct DemazureFamily {
  Anchor lambda;
  WeylElement w;  // minimal coset representative
  FamilyKind kind = FamilyKind::Thick;
  int depth_bound = 0;
  std::map<DepthVec, QSubspace> spaces;

  std::size_t dim(const DepthVec& m) const;
  const QSubspace& at(const DepthVec& m) const;
};

ModuleVector extremal_vector(const HighestWeightModule& L, const WeylElement& w);
ModuleVector extremal_vector_word(const HighestWeightModule& L, const Word& word);
DepthVec extremal_depth(const Gcm& g, const Anchor& lambda, const WeylElement& w);

// U(n^-) v_{w lambda}. Throws DepthTooSmall when the extremal weight is outside
// the computed layers, unless allow_outside (then the family is zero).
DemazureFamily thick_demazure(const HighestWeightModule& L, const WeylElement& w,
                              bool allow_outside = false);
// U(n) v_{w lambda}, built by parabolic induction along a reduced word.
DemazureFamily thin_demazure(const HighestWeightModule& L, const WeylElement& w);
// U(n) v_{w lambda} as the E-closure of the extremal vector; needs w lambda in the layers.
DemazureFamily thin_demazure_by_raising(const HighestWeightModule& L, const WeylElement& w);
DemazureFamily full_family(const HighestWeightModule& L);

DemazureFamily family_sum(const DemazureFamily& a, const DemazureFamily& b);
DemazureFamily family_intersect(const DemazureFamily& a, const DemazureFamily& b);
bool family_equal(const DemazureFamily& a, const DemazureFamily& b);
bool family_contains(const DemazureFamily& big, const DemazureFamily& small);
// first depth (in layer order, total depth <= bound) where the two differ
std::optional<DepthVec> family_difference(const DemazureFamily& a, const DemazureFamily& b);

struct PairVerdict {
  WeylElement v, w;
  bool bruhat = false;     // v <= w
  bool contained = false;  // L^w subset of L^v
  bool window_consistent = true;
  std::optional<DepthVec> witness;  // a depth where containment fails
};

struct ContainmentReport {
  Anchor lambda;
  int max_len = 0;
  int depth = 0;
  bool strict_precondition = false;
  std::size_t pairs = 0;
  std::vector<PairVerdict> verdicts;
  std::vector<PairVerdict> counterexamples;
  bool pass() const { return counterexamples.empty(); }
};

ContainmentReport verify_containment_order(const Gcm& g, const Anchor& lambda, int max_len, int d);

struct DistributiveReport {
  Anchor lambda;
  std::vector<WeylElement> S;
  int depth = 0;
  int search_len = 0;
  bool success = false;
  bool candidate_worked = false;
  std::size_t subsets_searched = 0;
  std::vector<WeylElement> S_prime;
  std::vector<std::pair<DepthVec, std::size_t>> intersection_dims;
  // falsification certificate
  std::optional<DepthVec> mismatch_depth;
  std::size_t expected_dim = 0;
  std::size_t found_dim = 0;
};

DistributiveReport verify_distributive(const Gcm& g, const Anchor& lambda,
                                       const std::vector<WeylElement>& S, int d, int search_len);

struct LatticeReport {
  DepthVec depth;
  unsigned p = 0;
  std::size_t dim = 0;
  std::size_t lattice_rank = 0;
  std::size_t rank_mod_p = 0;
  std::size_t gram_rank_mod_p = 0;  // informational
  bool operators_integral = true;
  bool pass = false;
  std::string witness;
};

// Z-form of L(lambda)_m: HNF basis of the span of all divided-power words.
std::vector<QVector> integral_lattice(const HighestWeightModule& L, const DepthVec& m);
LatticeReport lattice_rank_stability(const HighestWeightModule& L, const DepthVec& m, unsigned p);

}  // namespace kmlab
