#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kmlab/modules.hpp"

namespace kmlab {

// Pivot: dual basis of the module's pivot word basis.
// Lattice: dual basis of the HNF basis of the divided-power Z-form; every
// structure constant is then an integer and the ring reduces mod p.
enum class RingBasis { Pivot, Lattice };

// Component of the coproduct embedding L(lambda+mu)_m -> L(lambda)_a (x) L(mu)_b.
// Row index k * dim(mu, b) + l, column index a basis vector of (lambda+mu, m).
struct TensorBlock {
  DepthVec a, b;
  QMatrix map;
};

struct Embedding {
  Anchor lambda, mu;
  DepthVec m;
  std::size_t target_dim = 0;
  std::vector<TensorBlock> blocks;
  std::size_t rank() const;  // injective iff rank() == target_dim
};

// Element of R_lambda = L(lambda)^dual; one coordinate vector per depth.
struct RingElement {
  Anchor degree;
  std::map<DepthVec, QVector> comps;
  bool is_zero() const;
};

// R = sum over dominant lambda with degree <= D of L(lambda)^dual, each truncated
// at total depth d.
class SectionRing {
 public:
  SectionRing(const Gcm& g, int degree_bound, int depth_bound, RingBasis basis = RingBasis::Pivot);

  const Gcm& gcm() const { return g_; }
  int degree_bound() const { return D_; }
  int depth_bound() const { return d_; }
  RingBasis basis_kind() const { return kind_; }
  bool finite_type() const { return finite_; }

  const std::vector<Anchor>& degrees() const { return degrees_; }  // by degree, then lex
  bool has_degree(const Anchor& l) const { return pieces_.count(l) > 0; }
  const HighestWeightModule& module(const Anchor& l) const;
  std::vector<DepthVec> depths(const Anchor& l) const;  // total <= d, nonzero pieces only
  std::size_t dim(const Anchor& l, const DepthVec& m) const;

  // rows: the basis of L(l)_m in pivot coordinates
  const QMatrix& basis_matrix(const Anchor& l, const DepthVec& m) const;
  QVector to_basis(const Anchor& l, const DepthVec& m, const QVector& pivot_coords) const;

  const Embedding& embedding(const Anchor& l, const Anchor& mu, const DepthVec& m) const;

  RingElement unit() const;
  RingElement basis_element(const Anchor& l, const DepthVec& m, std::size_t k) const;
  RingElement multiply(const RingElement& f, const RingElement& g) const;
  // depth-(a+b) component of f * g for f in R_{l,a}, g in R_{mu,b}; empty when out of window
  QVector multiply_at(const Anchor& l, const DepthVec& a, const QVector& f, const Anchor& mu,
                      const DepthVec& b, const QVector& g) const;

  // f(x) for x in L(l)_m given in pivot coordinates
  Rational evaluate(const Anchor& l, const DepthVec& m, const QVector& f,
                    const QVector& x_pivot) const;
  // dual of E_i^{(k)}: R_{l, m - k e_i} -> R_{l, m}, (e f)(x) = f(E_i^{(k)} x)
  QMatrix dual_E(int i, int k, const Anchor& l, const DepthVec& m) const;

 private:
  struct Piece {
    QMatrix basis, inverse;
  };
  struct ModuleData {
    HighestWeightModule module;
    std::map<DepthVec, Piece> pieces;
  };

  Embedding build_embedding(const Anchor& l, const Anchor& mu, const DepthVec& m) const;
  const Piece& piece(const Anchor& l, const DepthVec& m) const;

  Gcm g_;
  int D_, d_;
  RingBasis kind_;
  bool finite_ = false;
  std::vector<Anchor> degrees_;
  std::map<Anchor, ModuleData> pieces_;
  std::map<std::tuple<Anchor, Anchor, DepthVec>, Embedding> embeddings_;
};

// all dominant weights of degree <= D, ordered by degree then lex
std::vector<Anchor> dominant_weights(int rank, int D);

struct RingAxiomReport {
  std::size_t products = 0;
  std::size_t triples = 0;
  bool surjective = true;
  bool commutative = true;
  bool associative = true;
  std::vector<std::string> failures;
  bool pass() const { return surjective && commutative && associative; }
};

// surjectivity of every stored m_{l,mu}, commutativity on all basis pairs and
// associativity on all basis triples of fundamental degrees
RingAxiomReport check_ring_axioms(const SectionRing& R);

struct QuadricTerm {
  DepthVec a;
  std::size_t k;
  DepthVec b;
  std::size_t l;
  Rational c;
};

// sum of c * x^{(i)}_{a,k} x^{(j)}_{b,l}; for i = j each unordered pair appears once
struct Quadric {
  int i = 0, j = 0;
  DepthVec m;
  std::vector<QuadricTerm> terms;
};

std::vector<Quadric> pluecker_quadrics(const SectionRing& R);
// the quadric at the point with coordinates v_{w w_i} and v_{w w_j}
Rational evaluate_at_extremal(const SectionRing& R, const Quadric& q, const WeylElement& w);

struct PresentationCell {
  Anchor lambda;
  DepthVec m;
  std::size_t relations = 0;  // kernel of Sym^3 -> R in this cell
  std::size_t generated = 0;  // span of (generators) * (quadrics)
};

struct PresentationReport {
  int depth = 0;
  int degree = 0;
  bool complete_windows = false;  // every stored module fits in the window
  std::size_t quadrics = 0;
  std::vector<PresentationCell> cells;
  std::vector<PresentationCell> mismatches;
  bool pass() const { return mismatches.empty(); }
};

// WindowTooSmall for finite type when some fundamental module is cut by the window
PresentationReport verify_degree2_presentation(const Gcm& g, int d, int D = 3);

struct IdealTruncation {
  WeylElement w;
  std::map<std::pair<Anchor, DepthVec>, QSubspace> pieces;  // in ring basis coordinates
};

IdealTruncation demazure_ideal(const SectionRing& R, const WeylElement& w);
bool ideal_contains(const IdealTruncation& big, const IdealTruncation& small);

struct IdealReport {
  std::size_t pieces = 0;
  bool closed = true;
  bool dims_match = true;
  std::string failure;
  bool pass() const { return closed && dims_match; }
};

// closure under multiplication by the generators, and dim R/I^w = dim L^w per piece
IdealReport verify_ideal(const SectionRing& R, const IdealTruncation& I);

// <P v_l, f> for a dual-basis vector f in ring coordinates
Rational eval_pairing(const SectionRing& R, const Anchor& l, const FWord& P, const QVector& f);

}  // namespace kmlab
