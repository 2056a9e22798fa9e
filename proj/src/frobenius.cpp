#include "kmlab/frobenius.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kmlab {

namespace {

FpVector fp_unit(std::size_t n, std::size_t k) {
  FpVector v(n, 0);
  v[k] = 1;
  return v;
}

bool divisible(const DepthVec& m, unsigned p) {
  return std::all_of(m.begin(), m.end(), [p](int x) { return x % static_cast<int>(p) == 0; });
}

DepthVec divide(DepthVec m, unsigned p) {
  for (auto& x : m) x /= static_cast<int>(p);
  return m;
}

Anchor scale(Anchor a, unsigned p) {
  for (auto& x : a) x *= static_cast<int>(p);
  return a;
}

DepthVec shift(DepthVec m, int i, int a) {
  m[i] += a;
  return m;
}

void add_into(const PrimeField& f, FpVector& y, const FpVector& x, PrimeField::value_type c = 1) {
  if (y.empty()) y.assign(x.size(), 0);
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = f.add(y[k], f.mul(c, x[k]));
}

unsigned checked_prime(unsigned p) {
  if (!is_prime(p)) throw UsageError("not a prime: " + std::to_string(p));
  return p;
}

struct Block {
  Anchor lambda;
  DepthVec target, source;
  std::size_t rows, cols, offset;
};

}  // namespace

FrobeniusWindow::FrobeniusWindow(const Gcm& g, unsigned p, int degree_bound, int depth_bound)
    : p_(checked_prime(p)), f_(p), R_(g, degree_bound, depth_bound, RingBasis::Lattice) {
  for (const auto& l : R_.degrees())
    for (const auto& m : R_.depths(l)) {
      auto rep = lattice_rank_stability(R_.module(l), m, p_);
      if (!rep.pass)
        throw UnstableLattice("lattice of L(" + format_vector(l) + ") at depth (" + format_vector(m) +
                              ") is unstable mod " + std::to_string(p_) + ": " + rep.witness);
    }
  for (const auto& l : R_.degrees()) {
    if (degree(l) == 0) continue;
    for (const auto& mu : R_.degrees()) {
      if (degree(mu) == 0 || degree(l) + degree(mu) > R_.degree_bound()) continue;
      for (const auto& m : R_.depths(add(l, mu))) {
        std::vector<std::pair<DepthVec, FpMatrix>> blocks;
        for (const auto& b : R_.embedding(l, mu, m).blocks) blocks.emplace_back(b.a, reduce_matrix(f_, b.map));
        prod_.emplace(std::make_tuple(l, mu, m), std::move(blocks));
      }
    }
  }
}

FpVector FrobeniusWindow::multiply_at(const Anchor& l, const DepthVec& a, const FpVector& f,
                                      const Anchor& mu, const DepthVec& b, const FpVector& g) const {
  if (degree(l) == 0 || degree(mu) == 0) {
    const FpVector& x = degree(l) == 0 ? g : f;
    const auto c = degree(l) == 0 ? f[0] : g[0];
    FpVector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = f_.mul(c, x[k]);
    return out;
  }
  const DepthVec m = add(a, b);
  auto it = prod_.find(std::make_tuple(l, mu, m));
  if (it == prod_.end()) return {};
  const std::size_t n = R_.dim(add(l, mu), m);
  FpVector out(n, 0);
  const std::size_t n2 = g.size();
  for (const auto& [left, M] : it->second) {
    if (left != a) continue;
    for (std::size_t p = 0; p < f.size(); ++p) {
      if (f[p] == 0) continue;
      for (std::size_t q = 0; q < n2; ++q) {
        if (g[q] == 0) continue;
        const auto fg = f_.mul(f[p], g[q]);
        for (std::size_t c = 0; c < n; ++c) out[c] = f_.add(out[c], f_.mul(fg, M(p * n2 + q, c)));
      }
    }
  }
  return out;
}

FpMatrix FrobeniusWindow::dual_E(int i, int k, const Anchor& l, const DepthVec& m) const {
  return reduce_matrix(f_, R_.dual_E(i, k, l, m));
}

std::map<DepthVec, PSubspace> FrobeniusWindow::thick_mod_p(const Anchor& l, const WeylElement& w) const {
  const Gcm& g = R_.gcm();
  const auto& L = R_.module(l);
  std::map<DepthVec, PSubspace> out;
  for (const auto& m : R_.depths(l)) out.emplace(m, PSubspace(f_, R_.dim(l, m)));
  auto rep = min_coset_representative(g, w, l);
  DepthVec top = extremal_depth(g, l, rep);
  if (!L.has_layer(top) || R_.dim(l, top) == 0) return out;
  // the divided-power word F_{i_1}^{(n_1)} ... F_{i_k}^{(n_k)} v_l, without rescaling
  QVector x{Rational(1)};
  DepthVec at = zero_depth(g.rank());
  Weight mu = weight_of(l);
  const Word& word = rep.reduced_word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int n = pairing(g, *it, mu);
    if (n > 0) {
      x = *L.apply_F(*it, n, at, x);
      at[*it] += n;
    }
    mu = reflect(g, *it, mu);
  }
  auto reduce_vec = [&](const QVector& v) {
    FpVector r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = f_.from_rational(v[k]);
    return r;
  };
  out.at(top).insert(reduce_vec(R_.to_basis(l, top, x)));
  for (const auto& m : R_.depths(l)) {
    if (!leq(top, m) || m == top) continue;
    PSubspace& s = out.at(m);
    for (int i = 0; i < g.rank(); ++i)
      for (int a = 1; a <= m[i] - top[i]; ++a) {
        DepthVec low = shift(m, i, -a);
        auto lt = out.find(low);
        if (lt == out.end() || lt->second.dim() == 0) continue;
        // F_i^{(a)} on the lattice basis of the lower piece
        const QMatrix& B = R_.basis_matrix(l, low);
        std::vector<FpVector> cols;
        for (std::size_t r = 0; r < B.rows(); ++r)
          cols.push_back(reduce_vec(R_.to_basis(l, m, *L.apply_F(i, a, low, B.row(r)))));
        for (const auto& v : lt->second.basis()) {
          FpVector y(R_.dim(l, m), 0);
          for (std::size_t r = 0; r < v.size(); ++r)
            if (v[r]) add_into(f_, y, cols[r], v[r]);
          s.insert(y);
        }
      }
  }
  return out;
}

std::map<std::pair<Anchor, DepthVec>, PSubspace> FrobeniusWindow::ideal_mod_p(const WeylElement& w) const {
  std::map<std::pair<Anchor, DepthVec>, PSubspace> out;
  for (const auto& l : R_.degrees())
    for (auto& [m, s] : thick_mod_p(l, w)) out.emplace(std::make_pair(l, m), s.annihilator());
  return out;
}

std::optional<std::pair<DepthVec, FpVector>> SplittingCandidate::apply(const Anchor& deg, const DepthVec& c,
                                                                       const FpVector& f) const {
  Anchor l = deg;
  for (auto& x : l) {
    if (x % static_cast<int>(p) != 0) return std::nullopt;
    x /= static_cast<int>(p);
  }
  auto it = pieces.find({l, c});
  if (it == pieces.end()) return std::nullopt;
  const PrimeField fp(p);
  return std::make_pair(it->second.target, kmlab::apply(fp, it->second.map, f));
}

SplittingResult find_splitting(const FrobeniusWindow& W, const SplittingOptions& opt) {
  const unsigned p = W.prime();
  const PrimeField& F = W.field();
  const SectionRing& R = W.ring();
  const int r = R.gcm().rank();
  const int d = R.depth_bound();
  if (R.degree_bound() < static_cast<int>(p))
    throw WindowTooSmall("degree bound " + std::to_string(R.degree_bound()) + " is below p = " +
                         std::to_string(p));

  std::vector<Block> blocks;
  std::map<std::pair<Anchor, DepthVec>, std::size_t> by_target;
  std::size_t nvars = 0;
  for (const auto& l : R.degrees()) {
    Anchor pl = scale(l, p);
    if (!R.has_degree(pl)) continue;
    for (const auto& m : R.depths(l)) {
      DepthVec src = scale(m, p);
      if (R.dim(pl, src) == 0) continue;
      by_target[{l, m}] = blocks.size();
      blocks.push_back({l, m, src, R.dim(l, m), R.dim(pl, src), nvars});
      nvars += R.dim(l, m) * R.dim(pl, src);
    }
  }
  auto find_block = [&](const Anchor& l, const DepthVec& m) -> const Block* {
    auto it = by_target.find({l, m});
    return it == by_target.end() ? nullptr : &blocks[it->second];
  };

  SplittingResult res;
  res.variables = nvars;
  std::vector<FpVector> rows;
  FpVector rhs;
  auto new_row = [&]() -> FpVector& {
    rows.emplace_back(nvars, 0);
    rhs.push_back(0);
    return rows.back();
  };

  // unit
  {
    const Block* b = find_block(Anchor(r, 0), zero_depth(r));
    FpVector& row = new_row();
    row[b->offset] = 1;
    rhs.back() = 1;
  }

  // phi(f^p g) = f phi(g), f a generator, g a basis vector of a p-divisible piece
  for (int i = 0; i < r; ++i) {
    Anchor wi = fundamental(r, i);
    for (const auto& a : R.depths(wi)) {
      for (std::size_t k = 0; k < R.dim(wi, a); ++k) {
        FpVector f = fp_unit(R.dim(wi, a), k);
        FpVector fp = f;
        Anchor deg = wi;
        DepthVec dep = a;
        bool ok = true;
        for (unsigned t = 1; t < p && ok; ++t) {
          if (degree(deg) + 1 > R.degree_bound()) {
            ok = false;
            break;
          }
          fp = W.multiply_at(deg, dep, fp, wi, a, f);
          deg = add(deg, wi);
          dep = add(dep, a);
          if (fp.empty()) ok = false;
        }
        if (!ok) continue;
        for (const auto& kappa : R.degrees()) {
          Anchor pk = scale(kappa, p);
          Anchor top = add(wi, kappa);
          if (!R.has_degree(pk) || !R.has_degree(scale(top, p))) continue;
          for (const auto& b : R.depths(pk)) {
            if (!divisible(b, p)) continue;
            DepthVec bb = divide(b, p);
            DepthVec hs = add(dep, b);
            if (total(hs) > d) continue;
            DepthVec tgt = add(a, bb);
            const std::size_t T = R.dim(top, tgt);
            if (T == 0) continue;
            const Block* lhs = find_block(top, tgt);
            const Block* gb = find_block(kappa, bb);
            for (std::size_t q = 0; q < R.dim(pk, b); ++q) {
              FpVector g = fp_unit(R.dim(pk, b), q);
              FpVector h = W.multiply_at(deg, dep, fp, pk, b, g);
              // f e_s for each basis vector e_s of R_{kappa, bb}
              std::vector<FpVector> fe;
              if (gb)
                for (std::size_t s = 0; s < gb->rows; ++s)
                  fe.push_back(W.multiply_at(wi, a, f, kappa, bb, fp_unit(gb->rows, s)));
              for (std::size_t o = 0; o < T; ++o) {
                FpVector& row = new_row();
                ++res.linearity_equations;
                if (lhs && !h.empty())
                  for (std::size_t c = 0; c < lhs->cols; ++c)
                    if (h[c]) row[lhs->offset + o * lhs->cols + c] = F.add(row[lhs->offset + o * lhs->cols + c], h[c]);
                if (gb)
                  for (std::size_t s = 0; s < gb->rows; ++s)
                    if (!fe[s].empty() && fe[s][o]) {
                      auto& v = row[gb->offset + s * gb->cols + q];
                      v = F.sub(v, fe[s][o]);
                    }
              }
            }
          }
        }
      }
    }
  }

  // compatibility: phi(I^w) vanishes on L^w
  for (const auto& w : opt.compatible) {
    auto I = W.ideal_mod_p(w);
    std::map<Anchor, std::map<DepthVec, PSubspace>> thick;
    for (const auto& b : blocks) {
      auto it = thick.find(b.lambda);
      if (it == thick.end()) it = thick.emplace(b.lambda, W.thick_mod_p(b.lambda, w)).first;
      const PSubspace& xs = it->second.at(b.target);
      const PSubspace& fs = I.at({scale(b.lambda, p), b.source});
      for (const auto& fv : fs.basis())
        for (const auto& xv : xs.basis()) {
          FpVector& row = new_row();
          ++res.compatibility_equations;
          for (std::size_t rr = 0; rr < b.rows; ++rr) {
            if (!xv[rr]) continue;
            for (std::size_t c = 0; c < b.cols; ++c)
              if (fv[c]) row[b.offset + rr * b.cols + c] = F.add(row[b.offset + rr * b.cols + c], F.mul(xv[rr], fv[c]));
          }
        }
    }
  }

  // B-canonical degree bound, in the H-graded form
  if (opt.canonical)
    for (int i = 0; i < r; ++i)
      for (const auto& kappa : R.degrees()) {
        Anchor pk = scale(kappa, p);
        if (!R.has_degree(pk)) continue;
        for (const auto& c : R.depths(pk)) {
          bool others = true;
          for (int j = 0; j < r; ++j)
            if (j != i && c[j] % static_cast<int>(p) != 0) others = false;
          if (!others) continue;
          for (int N = static_cast<int>(p); N <= static_cast<int>(p) * d; ++N) {
            if ((c[i] + N) % static_cast<int>(p) != 0) continue;
            DepthVec out = divide(shift(c, i, N), p);
            if (total(out) > d) break;
            const std::size_t T = R.dim(kappa, out);
            if (T == 0) continue;
            struct Term {
              const Block* b;
              FpMatrix Dk;
              FpMatrix Em;
              int sign;
            };
            std::vector<Term> terms;
            bool computable = true;
            for (int m = 0; m <= N; ++m) {
              if ((N - m) % static_cast<int>(p) != 0) continue;
              DepthVec src = shift(c, i, m);
              if (total(src) > d) {
                computable = false;
                break;
              }
              const Block* b = find_block(kappa, divide(src, p));
              if (!b) continue;
              int k = (N - m) / static_cast<int>(p);
              terms.push_back({b, W.dual_E(i, k, kappa, out), W.dual_E(i, m, pk, src), m % 2 ? -1 : 1});
            }
            if (!computable) continue;
            for (std::size_t s = 0; s < R.dim(pk, c); ++s)
              for (std::size_t o = 0; o < T; ++o) {
                FpVector& row = new_row();
                ++res.canonical_equations;
                for (const auto& t : terms) {
                  // y = e^{(m)} f_s, then the (o, rr) entry of e^{(k)}
                  for (std::size_t col = 0; col < t.b->cols; ++col) {
                    auto y = t.Em(col, s);
                    if (!y) continue;
                    for (std::size_t rr = 0; rr < t.b->rows; ++rr) {
                      auto dk = t.Dk(o, rr);
                      if (!dk) continue;
                      auto v = F.mul(dk, y);
                      if (t.sign < 0) v = F.neg(v);
                      auto& cell = row[t.b->offset + rr * t.b->cols + col];
                      cell = F.add(cell, v);
                    }
                  }
                }
              }
          }
        }
      }

  res.equations = rows.size();
  FpMatrix A(rows.size(), nvars, 0);
  for (std::size_t q = 0; q < rows.size(); ++q)
    for (std::size_t v = 0; v < nvars; ++v) A(q, v) = rows[q][v];
  auto sol = solve(F, A, rhs);
  if (!sol) return res;
  res.solution_dim = nvars - rank(F, A);
  SplittingCandidate phi;
  phi.p = p;
  phi.degree_bound = R.degree_bound();
  phi.depth_bound = d;
  for (const auto& b : blocks) {
    SplitPiece piece{b.lambda, b.source, b.target, FpMatrix(b.rows, b.cols, 0)};
    for (std::size_t rr = 0; rr < b.rows; ++rr)
      for (std::size_t c = 0; c < b.cols; ++c) piece.map(rr, c) = (*sol)[b.offset + rr * b.cols + c];
    phi.pieces.emplace(std::make_pair(b.lambda, b.source), std::move(piece));
  }
  res.phi = std::move(phi);
  return res;
}

namespace {

// runs phi(f^p g) - f phi(g) over all basis pairs whose terms fit the window and
// hands each difference to the predicate; returns the number of pairs checked
std::size_t linearity_pairs(
    const FrobeniusWindow& W, const SplittingCandidate& phi,
    const std::function<bool(const Anchor&, const DepthVec&, const FpVector&)>& ok, std::string& failure) {
  const SectionRing& R = W.ring();
  const PrimeField& F = W.field();
  const unsigned p = W.prime();
  const int d = R.depth_bound();
  std::size_t checked = 0;
  for (const auto& kf : R.degrees()) {
    if (degree(kf) == 0) continue;
    Anchor pf = scale(kf, p);
    if (!R.has_degree(pf)) continue;
    for (const auto& a : R.depths(kf))
      for (std::size_t k = 0; k < R.dim(kf, a); ++k) {
        FpVector f = fp_unit(R.dim(kf, a), k);
        FpVector fp = f;
        Anchor deg = kf;
        DepthVec dep = a;
        for (unsigned t = 1; t < p && !fp.empty(); ++t) {
          fp = W.multiply_at(deg, dep, fp, kf, a, f);
          deg = add(deg, kf);
          dep = add(dep, a);
        }
        if (fp.empty()) continue;
        for (const auto& nu : R.degrees()) {
          Anchor hd = add(pf, nu);
          if (!R.has_degree(hd)) continue;
          for (const auto& b : R.depths(nu)) {
            DepthVec hs = add(dep, b);
            if (total(hs) > d) continue;
            for (std::size_t q = 0; q < R.dim(nu, b); ++q) {
              FpVector g = fp_unit(R.dim(nu, b), q);
              FpVector h = W.multiply_at(pf, dep, fp, nu, b, g);
              std::map<DepthVec, FpVector> diff;
              if (!h.empty())
                if (auto l = phi.apply(hd, hs, h)) add_into(F, diff[l->first], l->second);
              bool comparable = true;
              if (auto rg = phi.apply(nu, b, g)) {
                Anchor pd = nu;
                for (auto& x : pd) x /= static_cast<int>(p);
                DepthVec t = add(a, rg->first);
                if (total(t) > d) {
                  comparable = false;
                } else if (R.dim(add(kf, pd), t) > 0) {
                  FpVector fr = W.multiply_at(kf, a, f, pd, rg->first, rg->second);
                  if (!fr.empty()) add_into(F, diff[t], fr, F.neg(1));
                }
              }
              if (!comparable) continue;
              ++checked;
              for (const auto& [t, v] : diff) {
                Anchor td = hd;
                for (auto& x : td) x /= static_cast<int>(p);
                if (!ok(td, t, v) && failure.empty())
                  failure = "linearity fails for f in (" + format_vector(kf) + ";" + format_vector(a) +
                            "), g in (" + format_vector(nu) + ";" + format_vector(b) + ")";
              }
            }
          }
        }
      }
  }
  return checked;
}

}  // namespace

LinearityReport check_splitting(const FrobeniusWindow& W, const SplittingCandidate& phi) {
  LinearityReport rep;
  const int r = W.gcm().rank();
  auto u = phi.apply(Anchor(r, 0), zero_depth(r), FpVector{1});
  rep.unit = u && u->first == zero_depth(r) && u->second == FpVector{1};
  rep.checked = linearity_pairs(
      W, phi, [](const Anchor&, const DepthVec&, const FpVector& v) {
        return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
      },
      rep.failure);
  if (!rep.unit && rep.failure.empty()) rep.failure = "phi(1) != 1";
  rep.pass = rep.unit && rep.failure.empty();
  return rep;
}

bool check_compatibility(const FrobeniusWindow& W, const SplittingCandidate& phi, const WeylElement& w) {
  auto I = W.ideal_mod_p(w);
  const unsigned p = W.prime();
  for (const auto& [key, piece] : phi.pieces) {
    const PSubspace& src = I.at({scale(piece.lambda, p), piece.source});
    auto it = I.find({piece.lambda, piece.target});
    for (const auto& f : src.basis()) {
      FpVector z = apply(W.field(), piece.map, f);
      if (it == I.end()) {
        if (!std::all_of(z.begin(), z.end(), [](auto x) { return x == 0; })) return false;
        continue;
      }
      if (!it->second.contains(z)) return false;
    }
  }
  return true;
}

bool check_quotient_splitting(const FrobeniusWindow& W, const SplittingCandidate& phi, const WeylElement& w) {
  if (!check_compatibility(W, phi, w)) return false;
  auto I = W.ideal_mod_p(w);
  const int r = W.gcm().rank();
  // the unit is not in I^w, so phi(1) = 1 survives in the quotient
  if (I.at({Anchor(r, 0), zero_depth(r)}).dim() != 0) return false;
  std::string failure;
  linearity_pairs(
      W, phi,
      [&](const Anchor& l, const DepthVec& m, const FpVector& v) {
        auto it = I.find({l, m});
        return it == I.end() ? std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; })
                             : it->second.contains(v);
      },
      failure);
  return failure.empty();
}

CanonicalReport check_canonical_degree(const FrobeniusWindow& W, const SplittingCandidate& phi, int i) {
  CanonicalReport rep;
  rep.i = i;
  const SectionRing& R = W.ring();
  const PrimeField& F = W.field();
  const int p = static_cast<int>(W.prime());
  const int d = R.depth_bound();
  for (const auto& nu : R.degrees()) {
    bool pdeg = std::all_of(nu.begin(), nu.end(), [p](int x) { return x % p == 0; });
    if (!pdeg) continue;
    Anchor kappa = nu;
    for (auto& x : kappa) x /= p;
    for (const auto& c : R.depths(nu))
      for (std::size_t s = 0; s < R.dim(nu, c); ++s) {
        FpVector f = fp_unit(R.dim(nu, c), s);
        for (int N = p; N <= p * d + d; ++N) {
          std::map<DepthVec, FpVector> G;
          bool computable = true;
          for (int m = 0; m <= N && computable; ++m) {
            if ((N - m) % p != 0) continue;
            const int k = (N - m) / p;
            DepthVec src = shift(c, i, m);
            if (total(src) > d) {
              computable = false;
              break;
            }
            if (R.dim(nu, src) == 0) continue;
            FpVector y = m == 0 ? f : apply(F, W.dual_E(i, m, nu, src), f);
            auto z = phi.apply(nu, src, y);
            if (!z) continue;
            DepthVec out = shift(z->first, i, k);
            if (total(out) > d) {
              computable = false;
              break;
            }
            if (R.dim(kappa, out) == 0) continue;
            FpVector t = k == 0 ? z->second : apply(F, W.dual_E(i, k, kappa, out), z->second);
            add_into(F, G[out], t, m % 2 ? F.neg(1) : 1);
          }
          if (!computable) continue;
          ++rep.coefficients_checked;
          for (const auto& [out, v] : G)
            if (!std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }) && rep.failure.empty())
              rep.failure = "t^" + std::to_string(N) + " coefficient nonzero for f in (" + format_vector(nu) +
                            ";" + format_vector(c) + "), basis " + std::to_string(s);
        }
      }
  }
  if (rep.coefficients_checked == 0)
    throw WindowTooSmall("no coefficient of degree >= p fits the window");
  rep.pass = rep.failure.empty();
  return rep;
}

}  // namespace kmlab
