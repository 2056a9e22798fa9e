#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmlab/ring.hpp"

namespace kmlab {

using FpVector = std::vector<PrimeField::value_type>;
using FpMatrix = Matrix<PrimeField::value_type>;

// The lattice form of the section ring reduced mod p, with the divided-power
// actions and the Demazure ideals over F_p.
class FrobeniusWindow {
 public:
  // UnstableLattice when some weight space of the window loses rank mod p
  FrobeniusWindow(const Gcm& g, unsigned p, int degree_bound, int depth_bound);

  unsigned prime() const { return p_; }
  const PrimeField& field() const { return f_; }
  const SectionRing& ring() const { return R_; }
  const Gcm& gcm() const { return R_.gcm(); }
  int degree_bound() const { return R_.degree_bound(); }
  int depth_bound() const { return R_.depth_bound(); }
  std::size_t dim(const Anchor& l, const DepthVec& m) const { return R_.dim(l, m); }

  FpVector multiply_at(const Anchor& l, const DepthVec& a, const FpVector& f, const Anchor& mu,
                       const DepthVec& b, const FpVector& g) const;
  // dual of E_i^{(k)} mod p: R_{l, m - k e_i} -> R_{l, m}
  FpMatrix dual_E(int i, int k, const Anchor& l, const DepthVec& m) const;
  // U(n^-)_{F_p} v_{w l}: closure of the reduced extremal word under all F_i^{(a)}
  std::map<DepthVec, PSubspace> thick_mod_p(const Anchor& l, const WeylElement& w) const;
  // annihilator of thick_mod_p at every stored piece
  std::map<std::pair<Anchor, DepthVec>, PSubspace> ideal_mod_p(const WeylElement& w) const;

 private:
  unsigned p_;
  PrimeField f_;
  SectionRing R_;
  std::map<std::tuple<Anchor, Anchor, DepthVec>, std::vector<std::pair<DepthVec, FpMatrix>>> prod_;
};

// phi on R_{p l, source} with values in R_{l, target}; the H-graded maps have
// source = p * target, other shapes only arise in test fixtures
struct SplitPiece {
  Anchor lambda;
  DepthVec source, target;
  FpMatrix map;  // dim(l, target) x dim(p l, source)
};

struct SplittingCandidate {
  unsigned p = 0;
  int degree_bound = 0, depth_bound = 0;
  std::map<std::pair<Anchor, DepthVec>, SplitPiece> pieces;  // keyed by (l, source)

  // phi of f in R_{deg, c}; nullopt when phi vanishes there
  std::optional<std::pair<DepthVec, FpVector>> apply(const Anchor& deg, const DepthVec& c,
                                                     const FpVector& f) const;
};

struct SplittingOptions {
  std::vector<WeylElement> compatible;  // impose phi(I^w) in I^w
  bool canonical = false;               // impose the B-canonical degree bound for every i
};

struct SplittingResult {
  std::optional<SplittingCandidate> phi;
  std::size_t variables = 0;
  std::size_t equations = 0;
  std::size_t linearity_equations = 0;
  std::size_t compatibility_equations = 0;
  std::size_t canonical_equations = 0;
  std::size_t solution_dim = 0;  // affine dimension of the solution set
};

// WindowTooSmall when D < p
SplittingResult find_splitting(const FrobeniusWindow& W, const SplittingOptions& opt = {});

struct LinearityReport {
  bool unit = false;
  std::size_t checked = 0;
  bool pass = false;
  std::string failure;
};

// phi(1) = 1 and phi(f^p g) = f phi(g) for all basis f, g whose product fits in the window
LinearityReport check_splitting(const FrobeniusWindow& W, const SplittingCandidate& phi);
bool check_compatibility(const FrobeniusWindow& W, const SplittingCandidate& phi, const WeylElement& w);
// phi induces a splitting of R / I^w: well defined, unit survives, linear on the quotient
bool check_quotient_splitting(const FrobeniusWindow& W, const SplittingCandidate& phi,
                              const WeylElement& w);

struct CanonicalReport {
  int i = 0;
  std::size_t coefficients_checked = 0;  // (f, N) pairs with N >= p inside the window
  bool pass = false;
  std::string failure;
};

// G_N(f) = sum_{pk + m = N} (-1)^m e_i^{(k)} phi(e_i^{(m)} f) must vanish for N >= p.
// WindowTooSmall when no coefficient with N >= p is computable.
CanonicalReport check_canonical_degree(const FrobeniusWindow& W, const SplittingCandidate& phi, int i);

}  // namespace kmlab
