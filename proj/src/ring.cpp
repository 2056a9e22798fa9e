#include "kmlab/ring.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kmlab {

namespace {

const RationalField kQ;

QVector row_times(const QVector& x, const QMatrix& m) {
  QVector out(m.cols(), Rational(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (sgn(x[r]) == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) out[c] += x[r] * m(r, c);
  }
  return out;
}

QMatrix identity(std::size_t n) {
  QMatrix m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVector unit_vector(std::size_t n, std::size_t k) {
  QVector v(n, Rational(0));
  v[k] = 1;
  return v;
}

// a generator of R: basis vector k of R_{w_i, a}
struct Gen {
  int i;
  DepthVec a;
  std::size_t k;
};

std::vector<Gen> generators(const SectionRing& R) {
  std::vector<Gen> out;
  const int r = R.gcm().rank();
  for (int i = 0; i < r; ++i) {
    Anchor w = fundamental(r, i);
    if (!R.has_degree(w)) continue;
    for (const auto& a : R.depths(w))
      for (std::size_t k = 0; k < R.dim(w, a); ++k) out.push_back({i, a, k});
  }
  return out;
}

using Monomial = std::vector<std::size_t>;  // nondecreasing generator indices

std::vector<Monomial> monomials(const std::vector<Gen>& gens, int r, const Anchor& lambda,
                                const DepthVec& m, int deg) {
  std::vector<Monomial> out;
  Monomial cur;
  Anchor left = lambda;
  DepthVec dleft = m;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == deg) {
      if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; }) &&
          std::all_of(dleft.begin(), dleft.end(), [](int x) { return x == 0; }))
        out.push_back(cur);
      return;
    }
    for (std::size_t g = start; g < gens.size(); ++g) {
      const Gen& x = gens[g];
      if (left[x.i] == 0 || !leq(x.a, dleft)) continue;
      --left[x.i];
      for (int t = 0; t < r; ++t) dleft[t] -= x.a[t];
      cur.push_back(g);
      rec(g);
      cur.pop_back();
      for (int t = 0; t < r; ++t) dleft[t] += x.a[t];
      ++left[x.i];
    }
  };
  rec(0);
  return out;
}

// image of a monomial in R_{lambda, m}
QVector monomial_image(const SectionRing& R, const std::vector<Gen>& gens, const Monomial& mono) {
  const int r = R.gcm().rank();
  const Gen& g0 = gens[mono[0]];
  Anchor deg = fundamental(r, g0.i);
  DepthVec depth = g0.a;
  QVector v = unit_vector(R.dim(deg, depth), g0.k);
  for (std::size_t t = 1; t < mono.size(); ++t) {
    const Gen& g = gens[mono[t]];
    Anchor w = fundamental(r, g.i);
    v = R.multiply_at(deg, depth, v, w, g.a, unit_vector(R.dim(w, g.a), g.k));
    deg = add(deg, w);
    depth = add(depth, g.a);
    if (v.empty()) return v;
  }
  return v;
}

// kernel of the evaluation map on the monomial basis of one cell
std::vector<QVector> cell_kernel(const SectionRing& R, const std::vector<Gen>& gens,
                                 const std::vector<Monomial>& monos, const Anchor& lambda,
                                 const DepthVec& m) {
  const std::size_t n = monos.size();
  const std::size_t t = R.has_degree(lambda) ? R.dim(lambda, m) : 0;
  QMatrix A(t, n, Rational(0));
  if (t > 0)
    for (std::size_t c = 0; c < n; ++c) {
      QVector v = monomial_image(R, gens, monos[c]);
      for (std::size_t r = 0; r < t && !v.empty(); ++r) A(r, c) = v[r];
    }
  if (t == 0) {
    std::vector<QVector> out;
    for (std::size_t c = 0; c < n; ++c) out.push_back(unit_vector(n, c));
    return out;
  }
  return kernel(kQ, A);
}

}  // namespace

std::size_t Embedding::rank() const {
  std::vector<QVector> rows;
  for (const auto& b : blocks)
    for (std::size_t r = 0; r < b.map.rows(); ++r) rows.push_back(b.map.row(r));
  if (rows.empty() || target_dim == 0) return 0;
  return kmlab::rank(kQ, QMatrix::from_rows(rows, target_dim, Rational(0)));
}

bool RingElement::is_zero() const {
  for (const auto& [m, v] : comps)
    if (!is_zero_vector(kQ, v)) return false;
  return true;
}

std::vector<Anchor> dominant_weights(int rank, int D) {
  std::vector<Anchor> out;
  for (const auto& m : depth_window(rank, D)) out.push_back(m);
  return out;
}

SectionRing::SectionRing(const Gcm& g, int degree_bound, int depth_bound, RingBasis basis)
    : g_(g), D_(degree_bound), d_(depth_bound), kind_(basis) {
  if (D_ < 0 || d_ < 0) throw UsageError("negative window bound");
  finite_ = is_finite_type(g_);
  degrees_ = dominant_weights(g_.rank(), D_);
  for (const auto& l : degrees_) {
    DimHint hint;
    // finite type: the exact character is cheap and lets the Gram search stop early
    if (finite_) hint = hint_from_character(char_L(g_, l, d_));
    ModuleData md{HighestWeightModule(g_, l, d_, {}, hint), {}};
    for (const auto& m : md.module.layers()) {
      const std::size_t n = md.module.dim(m);
      if (n == 0) continue;
      Piece p;
      if (kind_ == RingBasis::Pivot) {
        p.basis = identity(n);
        p.inverse = identity(n);
      } else {
        p.basis = QMatrix::from_rows(integral_lattice(md.module, m), n, Rational(0));
        p.inverse = *inverse(kQ, p.basis);
      }
      md.pieces.emplace(m, std::move(p));
    }
    pieces_.emplace(l, std::move(md));
  }
  for (const auto& l : degrees_) {
    if (degree(l) == 0) continue;
    for (const auto& mu : degrees_) {
      if (degree(mu) == 0 || degree(l) + degree(mu) > D_) continue;
      Anchor s = add(l, mu);
      for (const auto& m : depths(s))
        embeddings_.emplace(std::make_tuple(l, mu, m), build_embedding(l, mu, m));
    }
  }
}

const HighestWeightModule& SectionRing::module(const Anchor& l) const {
  auto it = pieces_.find(l);
  if (it == pieces_.end()) throw UsageError("degree (" + format_vector(l) + ") is not stored");
  return it->second.module;
}

std::vector<DepthVec> SectionRing::depths(const Anchor& l) const {
  std::vector<DepthVec> out;
  auto it = pieces_.find(l);
  if (it == pieces_.end()) return out;
  for (const auto& [m, p] : it->second.pieces) out.push_back(m);
  std::sort(out.begin(), out.end(), depth_order);
  return out;
}

std::size_t SectionRing::dim(const Anchor& l, const DepthVec& m) const {
  auto it = pieces_.find(l);
  if (it == pieces_.end()) return 0;
  auto jt = it->second.pieces.find(m);
  return jt == it->second.pieces.end() ? 0 : jt->second.basis.rows();
}

const SectionRing::Piece& SectionRing::piece(const Anchor& l, const DepthVec& m) const {
  auto it = pieces_.find(l);
  if (it == pieces_.end()) throw UsageError("degree (" + format_vector(l) + ") is not stored");
  auto jt = it->second.pieces.find(m);
  if (jt == it->second.pieces.end())
    throw DepthTooSmall("no piece at degree (" + format_vector(l) + "), depth (" + format_vector(m) + ")");
  return jt->second;
}

const QMatrix& SectionRing::basis_matrix(const Anchor& l, const DepthVec& m) const {
  return piece(l, m).basis;
}

QVector SectionRing::to_basis(const Anchor& l, const DepthVec& m, const QVector& x) const {
  return row_times(x, piece(l, m).inverse);
}

Embedding SectionRing::build_embedding(const Anchor& l, const Anchor& mu, const DepthVec& m) const {
  const int r = g_.rank();
  const Anchor s = add(l, mu);
  const HighestWeightModule& L1 = module(l);
  const HighestWeightModule& L2 = module(mu);
  const HighestWeightModule& L3 = module(s);
  Embedding e;
  e.lambda = l;
  e.mu = mu;
  e.m = m;
  e.target_dim = dim(s, m);
  const auto& words = L3.basis_words(m);

  // pivot-coordinate tensors of Delta(word) (v (x) v), keyed by the left depth
  std::vector<std::map<DepthVec, QMatrix>> tensors(words.size());
  for (std::size_t c = 0; c < words.size(); ++c) {
    const auto& f = words[c].factors;
    std::vector<int> split(f.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
      if (t < f.size()) {
        for (int x = 0; x <= f[t].second; ++x) {
          split[t] = x;
          rec(t + 1);
        }
        return;
      }
      std::vector<std::pair<int, int>> lf, rf;
      for (std::size_t u = 0; u < f.size(); ++u) {
        lf.emplace_back(f[u].first, split[u]);
        rf.emplace_back(f[u].first, f[u].second - split[u]);
      }
      auto [cl, wl] = normalize_word(lf);
      auto [cr, wr] = normalize_word(rf);
      DepthVec a = wl.content(r), b = wr.content(r);
      if (L1.dim(a) == 0 || L2.dim(b) == 0) return;
      QVector xl = L1.coords(wl), xr = L2.coords(wr);
      Rational coef = Rational(cl) * Rational(cr);
      auto [it, fresh] = tensors[c].try_emplace(a, xl.size(), xr.size(), Rational(0));
      QMatrix& T = it->second;
      for (std::size_t p = 0; p < xl.size(); ++p) {
        if (sgn(xl[p]) == 0) continue;
        for (std::size_t q = 0; q < xr.size(); ++q)
          if (sgn(xr[q]) != 0) T(p, q) += coef * xl[p] * xr[q];
      }
    };
    rec(0);
  }

  const Piece& P3 = piece(s, m);
  for (const auto& a : depths(l)) {
    if (!leq(a, m)) continue;
    DepthVec b = sub(m, a);
    if (dim(mu, b) == 0) continue;
    const Piece& P1 = piece(l, a);
    const Piece& P2 = piece(mu, b);
    const std::size_t n1 = P1.basis.rows(), n2 = P2.basis.rows();
    TensorBlock blk{a, b, QMatrix(n1 * n2, e.target_dim, Rational(0))};
    for (std::size_t k = 0; k < e.target_dim; ++k) {
      // target basis vector k in pivot coordinates, then into the factor bases
      QMatrix T(n1, n2, Rational(0));
      for (std::size_t c = 0; c < words.size(); ++c) {
        const Rational& y = P3.basis(k, c);
        if (sgn(y) == 0) continue;
        auto it = tensors[c].find(a);
        if (it == tensors[c].end()) continue;
        for (std::size_t p = 0; p < n1; ++p)
          for (std::size_t q = 0; q < n2; ++q)
            if (sgn(it->second(p, q)) != 0) T(p, q) += y * it->second(p, q);
      }
      // coordinates: x = c M, so T_basis = Minv1^T T Minv2
      QMatrix left(n1, n2, Rational(0));
      for (std::size_t p = 0; p < n1; ++p)
        for (std::size_t u = 0; u < n1; ++u) {
          const Rational& w = P1.inverse(u, p);
          if (sgn(w) == 0) continue;
          for (std::size_t q = 0; q < n2; ++q)
            if (sgn(T(u, q)) != 0) left(p, q) += w * T(u, q);
        }
      QMatrix Tb = kmlab::multiply(kQ, left, P2.inverse);
      for (std::size_t p = 0; p < n1; ++p)
        for (std::size_t q = 0; q < n2; ++q) blk.map(p * n2 + q, k) = Tb(p, q);
    }
    e.blocks.push_back(std::move(blk));
  }
  return e;
}

const Embedding& SectionRing::embedding(const Anchor& l, const Anchor& mu, const DepthVec& m) const {
  auto it = embeddings_.find(std::make_tuple(l, mu, m));
  if (it == embeddings_.end())
    throw DepthTooSmall("no stored product into degree (" + format_vector(add(l, mu)) + "), depth (" +
                        format_vector(m) + ")");
  return it->second;
}

RingElement SectionRing::unit() const {
  RingElement e;
  e.degree = Anchor(g_.rank(), 0);
  e.comps[zero_depth(g_.rank())] = QVector{Rational(1)};
  return e;
}

RingElement SectionRing::basis_element(const Anchor& l, const DepthVec& m, std::size_t k) const {
  RingElement e;
  e.degree = l;
  e.comps[m] = unit_vector(dim(l, m), k);
  return e;
}

QVector SectionRing::multiply_at(const Anchor& l, const DepthVec& a, const QVector& f, const Anchor& mu,
                                 const DepthVec& b, const QVector& g) const {
  const Anchor s = add(l, mu);
  const DepthVec m = add(a, b);
  // R_0 is the unit line
  if (degree(l) == 0) {
    QVector out = g;
    for (auto& x : out) x *= f[0];
    return out;
  }
  if (degree(mu) == 0) {
    QVector out = f;
    for (auto& x : out) x *= g[0];
    return out;
  }
  if (!has_degree(s) || dim(s, m) == 0) return {};
  const Embedding& e = embedding(l, mu, m);
  QVector out(e.target_dim, Rational(0));
  for (const auto& blk : e.blocks) {
    if (blk.a != a) continue;
    const std::size_t n2 = g.size();
    for (std::size_t p = 0; p < f.size(); ++p) {
      if (sgn(f[p]) == 0) continue;
      for (std::size_t q = 0; q < n2; ++q) {
        if (sgn(g[q]) == 0) continue;
        Rational fg = f[p] * g[q];
        for (std::size_t c = 0; c < e.target_dim; ++c) {
          const Rational& w = blk.map(p * n2 + q, c);
          if (sgn(w) != 0) out[c] += fg * w;
        }
      }
    }
  }
  return out;
}

RingElement SectionRing::multiply(const RingElement& f, const RingElement& g) const {
  RingElement out;
  out.degree = add(f.degree, g.degree);
  for (const auto& [a, x] : f.comps)
    for (const auto& [b, y] : g.comps) {
      QVector v = multiply_at(f.degree, a, x, g.degree, b, y);
      if (v.empty()) continue;
      DepthVec m = add(a, b);
      auto [it, fresh] = out.comps.try_emplace(m, v.size(), Rational(0));
      for (std::size_t c = 0; c < v.size(); ++c) it->second[c] += v[c];
    }
  return out;
}

Rational SectionRing::evaluate(const Anchor& l, const DepthVec& m, const QVector& f,
                               const QVector& x) const {
  return dot(kQ, f, to_basis(l, m, x));
}

QMatrix SectionRing::dual_E(int i, int k, const Anchor& l, const DepthVec& m) const {
  const std::size_t n = dim(l, m);
  DepthVec low = m;
  low[i] -= k;
  if (low[i] < 0 || dim(l, low) == 0) return QMatrix(n, 0, Rational(0));
  const HighestWeightModule& L = module(l);
  const Piece& P = piece(l, m);
  QMatrix out(n, dim(l, low), Rational(0));
  for (std::size_t r = 0; r < n; ++r) {
    QVector u = to_basis(l, low, L.apply_E(i, k, m, P.basis.row(r)));
    for (std::size_t s = 0; s < u.size(); ++s) out(r, s) = u[s];
  }
  return out;
}

RingAxiomReport check_ring_axioms(const SectionRing& R) {
  RingAxiomReport rep;
  const auto& degs = R.degrees();
  const int d = R.depth_bound();
  for (const auto& l : degs)
    for (const auto& mu : degs) {
      if (degree(l) == 0 || degree(mu) == 0 || degree(l) + degree(mu) > R.degree_bound()) continue;
      for (const auto& m : R.depths(add(l, mu))) {
        const auto& e = R.embedding(l, mu, m);
        ++rep.products;
        if (e.rank() != e.target_dim) {
          rep.surjective = false;
          rep.failures.push_back("m_{" + format_vector(l) + ";" + format_vector(mu) +
                                 "} not surjective at depth (" + format_vector(m) + ")");
        }
      }
      if (!(l < mu) && l != mu) continue;
      for (const auto& a : R.depths(l))
        for (const auto& b : R.depths(mu)) {
          if (total(a) + total(b) > d) continue;
          for (std::size_t k = 0; k < R.dim(l, a); ++k)
            for (std::size_t q = 0; q < R.dim(mu, b); ++q) {
              QVector f = unit_vector(R.dim(l, a), k), g = unit_vector(R.dim(mu, b), q);
              if (R.multiply_at(l, a, f, mu, b, g) != R.multiply_at(mu, b, g, l, a, f)) {
                rep.commutative = false;
                rep.failures.push_back("noncommuting pair in degrees (" + format_vector(l) + "), (" +
                                       format_vector(mu) + ")");
              }
            }
        }
    }
  // associativity on triples of stored degrees
  std::vector<Anchor> pos;
  for (const auto& l : degs)
    if (degree(l) > 0) pos.push_back(l);
  for (const auto& x : pos)
    for (const auto& y : pos)
      for (const auto& z : pos) {
        if (degree(x) + degree(y) + degree(z) > R.degree_bound()) continue;
        for (const auto& a : R.depths(x))
          for (const auto& b : R.depths(y))
            for (const auto& c : R.depths(z)) {
              if (total(a) + total(b) + total(c) > d) continue;
              for (std::size_t i = 0; i < R.dim(x, a); ++i)
                for (std::size_t j = 0; j < R.dim(y, b); ++j)
                  for (std::size_t k = 0; k < R.dim(z, c); ++k) {
                    ++rep.triples;
                    auto f = R.basis_element(x, a, i), g = R.basis_element(y, b, j),
                         h = R.basis_element(z, c, k);
                    auto lhs = R.multiply(R.multiply(f, g), h);
                    auto rhs = R.multiply(f, R.multiply(g, h));
                    if (lhs.comps != rhs.comps) {
                      rep.associative = false;
                      rep.failures.push_back("nonassociative triple at depth (" +
                                             format_vector(add(add(a, b), c)) + ")");
                    }
                  }
            }
      }
  return rep;
}

std::vector<Quadric> pluecker_quadrics(const SectionRing& R) {
  if (R.degree_bound() < 2) throw WindowTooSmall("quadrics need degree bound >= 2");
  const int r = R.gcm().rank();
  auto gens = generators(R);
  std::vector<Quadric> out;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Anchor l = add(fundamental(r, i), fundamental(r, j));
      for (const auto& m : depth_window(r, R.depth_bound())) {
        auto monos = monomials(gens, r, l, m, 2);
        if (monos.empty()) continue;
        for (const auto& v : cell_kernel(R, gens, monos, l, m)) {
          Quadric q{i, j, m, {}};
          for (std::size_t c = 0; c < monos.size(); ++c) {
            if (sgn(v[c]) == 0) continue;
            const Gen& g1 = gens[monos[c][0]];
            const Gen& g2 = gens[monos[c][1]];
            // first factor carries index i
            if (g1.i == i)
              q.terms.push_back({g1.a, g1.k, g2.a, g2.k, v[c]});
            else
              q.terms.push_back({g2.a, g2.k, g1.a, g1.k, v[c]});
          }
          out.push_back(std::move(q));
        }
      }
    }
  return out;
}

Rational evaluate_at_extremal(const SectionRing& R, const Quadric& q, const WeylElement& w) {
  const int r = R.gcm().rank();
  auto point = [&](int i) -> std::pair<DepthVec, QVector> {
    Anchor l = fundamental(r, i);
    const auto& L = R.module(l);
    DepthVec top = extremal_depth(R.gcm(), l, w);
    if (!L.has_layer(top) || R.dim(l, top) == 0) return {top, {}};
    return {top, R.to_basis(l, top, extremal_vector(L, w).coords)};
  };
  auto [di, xi] = point(q.i);
  auto [dj, xj] = point(q.j);
  if (xi.empty() || xj.empty()) return 0;
  Rational s = 0;
  for (const auto& t : q.terms) {
    if (t.a == di && t.b == dj) s += t.c * xi[t.k] * xj[t.l];
  }
  return s;
}

PresentationReport verify_degree2_presentation(const Gcm& g, int d, int D) {
  PresentationReport rep;
  rep.depth = d;
  rep.degree = D;
  if (D < 3) throw WindowTooSmall("degree-3 relations need degree bound >= 3");
  SectionRing R(g, D, d);
  const int r = g.rank();
  if (R.finite_type())
    for (int i = 0; i < r; ++i)
      if (!R.module(fundamental(r, i)).window_complete())
        throw WindowTooSmall("depth " + std::to_string(d) + " does not contain L(w_" + g.label(i) + ")");
  rep.complete_windows = R.finite_type();
  for (const auto& l : R.degrees())
    if (!R.module(l).window_complete()) rep.complete_windows = false;

  auto gens = generators(R);
  std::map<std::pair<Anchor, DepthVec>, std::pair<std::vector<Monomial>, std::vector<QVector>>> deg2;
  for (const auto& l : R.degrees()) {
    if (degree(l) != 2) continue;
    for (const auto& m : depth_window(r, d)) {
      auto monos = monomials(gens, r, l, m, 2);
      if (monos.empty()) continue;
      auto ker = cell_kernel(R, gens, monos, l, m);
      rep.quadrics += ker.size();
      deg2.emplace(std::make_pair(l, m), std::make_pair(std::move(monos), std::move(ker)));
    }
  }
  for (const auto& l : R.degrees()) {
    if (degree(l) != 3) continue;
    for (const auto& m : depth_window(r, d)) {
      auto monos = monomials(gens, r, l, m, 3);
      if (monos.empty()) continue;
      std::map<Monomial, std::size_t> index;
      for (std::size_t c = 0; c < monos.size(); ++c) index[monos[c]] = c;
      PresentationCell cell{l, m, 0, 0};
      auto ker3 = cell_kernel(R, gens, monos, l, m);
      cell.relations = ker3.size();
      QSubspace K3(kQ, monos.size());
      for (const auto& v : ker3) K3.insert(v);
      QSubspace span(kQ, monos.size());
      bool inside = true;
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const Gen& x = gens[gi];
        if (l[x.i] == 0 || !leq(x.a, m)) continue;
        Anchor rest = l;
        --rest[x.i];
        auto it = deg2.find({rest, sub(m, x.a)});
        if (it == deg2.end()) continue;
        const auto& [m2, ker2] = it->second;
        for (const auto& q : ker2) {
          QVector v(monos.size(), Rational(0));
          for (std::size_t c = 0; c < m2.size(); ++c) {
            if (sgn(q[c]) == 0) continue;
            Monomial t = m2[c];
            t.push_back(gi);
            std::sort(t.begin(), t.end());
            v[index.at(t)] += q[c];
          }
          if (!K3.contains(v)) inside = false;
          span.insert(v);
        }
      }
      cell.generated = span.dim();
      rep.cells.push_back(cell);
      if (cell.generated != cell.relations || !inside) rep.mismatches.push_back(cell);
    }
  }
  return rep;
}

IdealTruncation demazure_ideal(const SectionRing& R, const WeylElement& w) {
  IdealTruncation I;
  I.w = w;
  for (const auto& l : R.degrees()) {
    const auto& L = R.module(l);
    auto fam = thick_demazure(L, w, true);
    for (const auto& m : R.depths(l)) {
      QSubspace S(kQ, R.dim(l, m));
      for (const auto& x : fam.at(m).basis()) S.insert(R.to_basis(l, m, x));
      I.pieces.emplace(std::make_pair(l, m), S.annihilator());
    }
  }
  return I;
}

bool ideal_contains(const IdealTruncation& big, const IdealTruncation& small) {
  for (const auto& [key, s] : small.pieces) {
    auto it = big.pieces.find(key);
    if (it == big.pieces.end()) throw AmbientMismatch("ideals over different truncations");
    if (!it->second.contains(s)) return false;
  }
  return true;
}

IdealReport verify_ideal(const SectionRing& R, const IdealTruncation& I) {
  IdealReport rep;
  const int r = R.gcm().rank();
  auto gens = generators(R);
  for (const auto& [key, S] : I.pieces) {
    const auto& [l, b] = key;
    ++rep.pieces;
    for (const auto& x : gens) {
      Anchor w = fundamental(r, x.i);
      Anchor s = add(l, w);
      DepthVec m = add(b, x.a);
      if (!R.has_degree(s) || R.dim(s, m) == 0) continue;
      const QSubspace& target = I.pieces.at({s, m});
      for (const auto& h : S.basis()) {
        QVector p = R.multiply_at(w, x.a, unit_vector(R.dim(w, x.a), x.k), l, b, h);
        if (!target.contains(p)) {
          rep.closed = false;
          if (rep.failure.empty())
            rep.failure = "product leaves the ideal at degree (" + format_vector(s) + "), depth (" +
                          format_vector(m) + ")";
        }
      }
    }
  }
  for (const auto& l : R.degrees()) {
    auto fam = thick_demazure(R.module(l), I.w, true);
    for (const auto& m : R.depths(l))
      if (R.dim(l, m) - I.pieces.at({l, m}).dim() != fam.dim(m)) {
        rep.dims_match = false;
        if (rep.failure.empty())
          rep.failure = "quotient dimension differs at degree (" + format_vector(l) + "), depth (" +
                        format_vector(m) + ")";
      }
  }
  return rep;
}

Rational eval_pairing(const SectionRing& R, const Anchor& l, const FWord& P, const QVector& f) {
  const auto& L = R.module(l);
  DepthVec m = normalize_word(P.factors).second.content(R.gcm().rank());
  if (R.dim(l, m) == 0) return 0;
  return R.evaluate(l, m, f, L.coords(P));
}

}  // namespace kmlab
