#include "doctest.h"

#include "kmlab/frobenius.hpp"

using namespace kmlab;

namespace {

bool zero(const FpVector& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

std::vector<WeylElement> all_elements(const Gcm& g, int len) { return enumerate(g, len); }

}  // namespace

TEST_CASE("P^1, p = 2: the monomial Frobenius splitting") {
  const Gcm a1 = preset("A1");
  FrobeniusWindow W(a1, 2, 4, 5);
  auto res = find_splitting(W);
  REQUIRE(res.phi);
  const auto& phi = *res.phi;
  CHECK(check_splitting(W, phi).pass);
  // on k[x, y] the solution sends x^{2a} y^{2b} to x^a y^b and kills odd monomials
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      auto v = phi.apply({n}, {k}, FpVector{1});
      if (n % 2 || k % 2) {
        CHECK((!v || zero(v->second)));
        continue;
      }
      REQUIRE(v);
      CHECK(v->first == DepthVec{k / 2});
      CHECK(v->second == FpVector{1});
    }
  auto s1 = canonicalize(a1, {0});
  CHECK(check_compatibility(W, phi, s1));
  CHECK(check_compatibility(W, phi, identity_element(a1)));
  CHECK(check_quotient_splitting(W, phi, s1));
}

TEST_CASE("P^1, p = 2: canonical degree bound") {
  const Gcm a1 = preset("A1");
  FrobeniusWindow W(a1, 2, 3, 3);
  SplittingOptions opt;
  opt.canonical = true;
  opt.compatible = {canonicalize(a1, {0})};
  auto res = find_splitting(W, opt);
  REQUIRE(res.phi);
  CHECK(res.canonical_equations > 0);
  auto rep = check_canonical_degree(W, *res.phi, 0);
  CHECK(rep.pass);
  CHECK(rep.coefficients_checked > 0);

  // a weight-shifted map: phi'(y^2) = x
  SplittingCandidate shifted;
  shifted.p = 2;
  shifted.degree_bound = 3;
  shifted.depth_bound = 3;
  shifted.pieces.emplace(std::make_pair(Anchor{0}, DepthVec{0}),
                         SplitPiece{{0}, {0}, {0}, FpMatrix(1, 1, 1)});
  shifted.pieces.emplace(std::make_pair(Anchor{1}, DepthVec{2}),
                         SplitPiece{{1}, {2}, {0}, FpMatrix(1, 1, 1)});
  auto bad = check_canonical_degree(W, shifted, 0);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.failure.empty());
}

TEST_CASE("P^1, p = 3") {
  const Gcm a1 = preset("A1");
  FrobeniusWindow W(a1, 3, 3, 4);
  SplittingOptions opt;
  opt.canonical = true;
  opt.compatible = {identity_element(a1), canonicalize(a1, {0})};
  auto res = find_splitting(W, opt);
  REQUIRE(res.phi);
  CHECK(check_splitting(W, *res.phi).pass);
  CHECK(check_canonical_degree(W, *res.phi, 0).pass);
  auto v = res.phi->apply({3}, {3}, FpVector{1});
  REQUIRE(v);
  CHECK(v->first == DepthVec{1});
  CHECK(v->second == FpVector{1});
}

TEST_CASE("flag variety of A2, p = 2") {
  const Gcm a2 = preset("A2");
  FrobeniusWindow W(a2, 2, 3, 6);
  SplittingOptions opt;
  opt.canonical = true;
  opt.compatible = all_elements(a2, 3);
  auto res = find_splitting(W, opt);
  REQUIRE(res.phi);
  const auto& phi = *res.phi;
  CHECK(check_splitting(W, phi).pass);
  for (const auto& w : all_elements(a2, 3)) {
    CHECK(check_compatibility(W, phi, w));
    CHECK(check_quotient_splitting(W, phi, w));
  }
  for (int i = 0; i < 2; ++i) CHECK(check_canonical_degree(W, phi, i).pass);
}

TEST_CASE("thick Demazure modules mod p") {
  const Gcm a2 = preset("A2");
  FrobeniusWindow W(a2, 2, 2, 4);
  SectionRing R(a2, 2, 4);
  for (const auto& w : all_elements(a2, 3))
    for (const auto& l : R.degrees()) {
      auto fam = thick_demazure(R.module(l), w);
      for (const auto& [m, s] : W.thick_mod_p(l, w)) CHECK(s.dim() == fam.dim(m));
    }
}

TEST_CASE("window and lattice errors") {
  CHECK_THROWS_AS(find_splitting(FrobeniusWindow(preset("A1"), 3, 2, 3)), WindowTooSmall);
  CHECK_THROWS_AS(FrobeniusWindow(preset("A1"), 4, 2, 3), UsageError);
  // every weight space is stable for these small windows
  CHECK_NOTHROW(FrobeniusWindow(preset("A1"), 2, 2, 2));
  CHECK_NOTHROW(FrobeniusWindow(preset("A2"), 2, 2, 4));
  // depth 0 only: no coefficient of degree >= p is visible
  FrobeniusWindow tiny(preset("A1"), 2, 2, 0);
  auto res = find_splitting(tiny);
  REQUIRE(res.phi);
  CHECK_THROWS_AS(check_canonical_degree(tiny, *res.phi, 0), WindowTooSmall);
}
