#include <algorithm>
#include <stdexcept>

#include "kmlab/modules.hpp"

namespace kmlab {

namespace {

const RationalField kQ;

QSubspace zero_space(std::size_t n) { return QSubspace(kQ, n); }

DepthVec shift(DepthVec m, int i, int a) {
  m[i] += a;
  return m;
}

std::vector<DepthVec> sorted_keys(const DemazureFamily& f) {
  std::vector<DepthVec> out;
  for (const auto& [m, s] : f.spaces) out.push_back(m);
  std::sort(out.begin(), out.end(), depth_order);
  return out;
}

void require_same_ambient(const DemazureFamily& a, const DemazureFamily& b) {
  if (a.lambda != b.lambda) throw AmbientMismatch("families of different highest weights");
  if (a.spaces.size() != b.spaces.size())
    throw AmbientMismatch("families over different sets of weights");
  for (auto ia = a.spaces.begin(), ib = b.spaces.begin(); ia != a.spaces.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.ambient() != ib->second.ambient())
      throw AmbientMismatch("families over different weight spaces");
}

DemazureFamily empty_family(const HighestWeightModule& L, const WeylElement& w, FamilyKind kind) {
  DemazureFamily f;
  f.lambda = L.highest_weight();
  f.w = w;
  f.kind = kind;
  f.depth_bound = L.depth_bound();
  for (const auto& m : L.layers()) f.spaces.emplace(m, zero_space(L.dim(m)));
  return f;
}

QVector image_F(const HighestWeightModule& L, int i, const DepthVec& m, const QVector& x) {
  auto y = L.apply_F(i, 1, m, x);
  if (!y) throw std::logic_error("F-target outside the computed layers");
  return *y;
}

// pivot-coordinate matrix from a rational lattice basis (rows)
QMatrix rows_matrix(const std::vector<QVector>& rows, std::size_t n) {
  return QMatrix::from_rows(rows, n, Rational(0));
}

QVector row_times(const QVector& x, const QMatrix& m) {
  QVector out(m.cols(), Rational(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (sgn(x[r]) == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += x[r] * m(r, c);
  }
  return out;
}

bool integral(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace

std::size_t DemazureFamily::dim(const DepthVec& m) const { return at(m).dim(); }

const QSubspace& DemazureFamily::at(const DepthVec& m) const {
  auto it = spaces.find(m);
  if (it == spaces.end())
    throw DepthTooSmall("family has no weight space at depth (" + format_vector(m) + ")");
  return it->second;
}

DepthVec extremal_depth(const Gcm& g, const Anchor& lambda, const WeylElement& w) {
  return act(g, w, weight_of(lambda)).depth;
}

ModuleVector extremal_vector_word(const HighestWeightModule& L, const Word& word) {
  const Gcm& g = L.gcm();
  Weight mu = weight_of(L.highest_weight());
  ModuleVector v{zero_depth(g.rank()), QVector{Rational(1)}};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int i = *it;
    const int n = pairing(g, i, mu);
    if (n < 0) throw std::invalid_argument("extremal_vector_word needs a reduced word");
    if (n > 0) {
      if (!L.has_layer(shift(v.depth, i, n)))
        throw DepthTooSmall("extremal weight at depth (" + format_vector(shift(v.depth, i, n)) +
                            ") is outside the computed layers");
      v.coords = *L.apply_F(i, n, v.depth, v.coords);
      v.depth[i] += n;
    }
    mu = reflect(g, i, mu);
  }
  for (const auto& c : v.coords)
    if (sgn(c) != 0) {
      Rational s = c;
      for (auto& x : v.coords) x /= s;
      break;
    }
  return v;
}

ModuleVector extremal_vector(const HighestWeightModule& L, const WeylElement& w) {
  auto rep = min_coset_representative(L.gcm(), w, L.highest_weight());
  return extremal_vector_word(L, rep.reduced_word());
}

DemazureFamily thick_demazure(const HighestWeightModule& L, const WeylElement& w, bool allow_outside) {
  const Gcm& g = L.gcm();
  auto rep = min_coset_representative(g, w, L.highest_weight());
  DemazureFamily f = empty_family(L, rep, FamilyKind::Thick);
  DepthVec top = extremal_depth(g, L.highest_weight(), rep);
  if (!L.has_layer(top)) {
    if (allow_outside) return f;
    throw DepthTooSmall("extremal weight at depth (" + format_vector(top) +
                        ") lies outside the window");
  }
  ModuleVector ext = extremal_vector(L, rep);
  for (const auto& m : L.layers()) {
    if (!leq(top, m)) continue;
    QSubspace& s = f.spaces.at(m);
    if (m == top) {
      s.insert(ext.coords);
      continue;
    }
    for (int i = 0; i < g.rank(); ++i) {
      if (m[i] - top[i] < 1) continue;
      DepthVec low = shift(m, i, -1);
      for (const auto& b : f.spaces.at(low).basis()) s.insert(image_F(L, i, low, b));
    }
  }
  return f;
}

DemazureFamily thin_demazure(const HighestWeightModule& L, const WeylElement& w) {
  const Gcm& g = L.gcm();
  auto rep = min_coset_representative(g, w, L.highest_weight());
  DemazureFamily f = empty_family(L, rep, FamilyKind::Thin);
  f.spaces.at(zero_depth(g.rank())).insert(QVector{Rational(1)});
  const auto layers = L.layers();
  const Word& word = rep.reduced_word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int i = *it;
    for (const auto& m : layers) {
      if (m[i] < 1) continue;
      DepthVec low = shift(m, i, -1);
      std::vector<QVector> add;
      for (const auto& b : f.spaces.at(low).basis()) add.push_back(image_F(L, i, low, b));
      QSubspace& s = f.spaces.at(m);
      for (const auto& v : add) s.insert(v);
    }
  }
  return f;
}

DemazureFamily thin_demazure_by_raising(const HighestWeightModule& L, const WeylElement& w) {
  const Gcm& g = L.gcm();
  auto rep = min_coset_representative(g, w, L.highest_weight());
  DemazureFamily f = empty_family(L, rep, FamilyKind::Thin);
  DepthVec top = extremal_depth(g, L.highest_weight(), rep);
  if (!L.has_layer(top))
    throw DepthTooSmall("extremal weight at depth (" + format_vector(top) +
                        ") is outside the computed layers");
  ModuleVector ext = extremal_vector(L, rep);
  auto layers = L.layers();
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    const DepthVec& m = *it;
    if (!leq(m, top)) continue;
    QSubspace& s = f.spaces.at(m);
    if (m == top) s.insert(ext.coords);
    for (int i = 0; i < g.rank(); ++i) {
      DepthVec up = shift(m, i, 1);
      if (!L.has_layer(up) || !leq(up, top)) continue;
      for (const auto& b : f.spaces.at(up).basis()) s.insert(L.apply_E(i, 1, up, b));
    }
  }
  return f;
}

DemazureFamily full_family(const HighestWeightModule& L) {
  DemazureFamily f;
  f.lambda = L.highest_weight();
  f.w = identity_element(L.gcm());
  f.kind = FamilyKind::Thick;
  f.depth_bound = L.depth_bound();
  for (const auto& m : L.layers()) f.spaces.emplace(m, QSubspace::full(kQ, L.dim(m)));
  return f;
}

DemazureFamily family_sum(const DemazureFamily& a, const DemazureFamily& b) {
  require_same_ambient(a, b);
  DemazureFamily out = a;
  for (auto& [m, s] : out.spaces) s.insert_all(b.spaces.at(m));
  return out;
}

DemazureFamily family_intersect(const DemazureFamily& a, const DemazureFamily& b) {
  require_same_ambient(a, b);
  DemazureFamily out = a;
  for (auto& [m, s] : out.spaces) s = subspace_intersect(s, b.spaces.at(m));
  return out;
}

bool family_contains(const DemazureFamily& big, const DemazureFamily& small) {
  require_same_ambient(big, small);
  for (const auto& [m, s] : small.spaces)
    if (!big.spaces.at(m).contains(s)) return false;
  return true;
}

bool family_equal(const DemazureFamily& a, const DemazureFamily& b) {
  require_same_ambient(a, b);
  for (const auto& [m, s] : a.spaces)
    if (!(s == b.spaces.at(m))) return false;
  return true;
}

std::optional<DepthVec> family_difference(const DemazureFamily& a, const DemazureFamily& b) {
  require_same_ambient(a, b);
  const int bound = std::min(a.depth_bound, b.depth_bound);
  for (const auto& m : sorted_keys(a)) {
    if (total(m) > bound) continue;
    if (!(a.spaces.at(m) == b.spaces.at(m))) return m;
  }
  return std::nullopt;
}

ContainmentReport verify_containment_order(const Gcm& g, const Anchor& lambda, int max_len, int d) {
  require_dominant(lambda);
  ContainmentReport rep;
  rep.lambda = lambda;
  rep.max_len = max_len;
  rep.depth = d;
  rep.strict_precondition = is_strictly_dominant(lambda);
  auto elems = enumerate(g, max_len);
  std::vector<DepthVec> extras;
  for (const auto& w : elems) extras.push_back(extremal_depth(g, lambda, w));
  HighestWeightModule L(g, lambda, d, extras);

  std::vector<DemazureFamily> thick;
  std::vector<ModuleVector> ext;
  for (const auto& w : elems) {
    thick.push_back(thick_demazure(L, w));
    ext.push_back(extremal_vector(L, w));
  }
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      PairVerdict pv;
      pv.v = elems[a];
      pv.w = elems[b];
      pv.bruhat = bruhat_leq(g, pv.v, pv.w);
      pv.contained = thick[a].at(ext[b].depth).contains(ext[b].coords);
      if (pv.contained) {
        // generated by v_{w lambda}, so membership must give containment everywhere
        pv.window_consistent = family_contains(thick[a], thick[b]);
      } else {
        pv.witness = ext[b].depth;
      }
      ++rep.pairs;
      bool bad = !pv.window_consistent;
      if (rep.strict_precondition)
        bad = bad || pv.contained != pv.bruhat;
      else
        bad = bad || (pv.bruhat && !pv.contained);
      if (bad) rep.counterexamples.push_back(pv);
      rep.verdicts.push_back(std::move(pv));
    }
  return rep;
}

DistributiveReport verify_distributive(const Gcm& g, const Anchor& lambda,
                                       const std::vector<WeylElement>& S, int d, int search_len) {
  require_dominant(lambda);
  if (S.empty()) throw UsageError("verify_distributive needs a nonempty set S");
  DistributiveReport rep;
  rep.lambda = lambda;
  rep.S = S;
  rep.depth = d;
  rep.search_len = search_len;
  HighestWeightModule L(g, lambda, d);

  DemazureFamily X = thick_demazure(L, S.front(), true);
  for (std::size_t k = 1; k < S.size(); ++k)
    X = family_intersect(X, thick_demazure(L, S[k], true));
  for (const auto& m : sorted_keys(X)) rep.intersection_dims.emplace_back(m, X.dim(m));

  auto sum_of = [&](const std::vector<DemazureFamily>& fams, const std::vector<std::size_t>& idx) {
    DemazureFamily s = empty_family(L, identity_element(g), FamilyKind::Thick);
    for (auto k : idx) s = family_sum(s, fams[k]);
    return s;
  };

  auto candidate = minimal_upper_bounds(g, S, search_len);
  {
    std::vector<DemazureFamily> fams;
    std::vector<std::size_t> idx;
    for (const auto& v : candidate) {
      idx.push_back(fams.size());
      fams.push_back(thick_demazure(L, v, true));
    }
    if (family_equal(sum_of(fams, idx), X)) {
      rep.success = rep.candidate_worked = true;
      rep.S_prime = candidate;
      return rep;
    }
  }

  // fallback: only families inside X can appear in S'
  std::vector<WeylElement> admissible;
  std::vector<DemazureFamily> fams;
  for (const auto& v : enumerate(g, search_len)) {
    auto f = thick_demazure(L, v, true);
    if (family_contains(X, f)) {
      admissible.push_back(v);
      fams.push_back(std::move(f));
    }
  }
  std::vector<std::size_t> all(admissible.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  DemazureFamily total_sum = sum_of(fams, all);
  if (auto diff = family_difference(X, total_sum)) {
    rep.mismatch_depth = diff;
    rep.expected_dim = X.dim(*diff);
    rep.found_dim = total_sum.dim(*diff);
    return rep;
  }

  constexpr std::size_t kSubsetCap = 20000;
  const std::size_t n = admissible.size();
  std::vector<std::size_t> best;
  bool found = false;
  for (std::size_t k = 1; k <= n && !found && rep.subsets_searched < kSubsetCap; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t t = 0; t < k; ++t) pick[t] = t;
    while (true) {
      ++rep.subsets_searched;
      if (family_equal(sum_of(fams, pick), X)) {
        best = pick;
        found = true;
        break;
      }
      if (rep.subsets_searched >= kSubsetCap) break;
      // next k-combination in lexicographic order
      std::size_t t = k;
      while (t > 0 && pick[t - 1] == n - k + t - 1) --t;
      if (t == 0) break;
      ++pick[t - 1];
      for (std::size_t u = t; u < k; ++u) pick[u] = pick[u - 1] + 1;
    }
  }
  if (!found) {
    best = all;
    for (std::size_t k = best.size(); k-- > 0;) {
      auto trial = best;
      trial.erase(trial.begin() + k);
      if (family_equal(sum_of(fams, trial), X)) best = trial;
    }
  }
  rep.success = true;
  for (auto k : best) rep.S_prime.push_back(admissible[k]);
  std::sort(rep.S_prime.begin(), rep.S_prime.end());
  return rep;
}

std::vector<QVector> integral_lattice(const HighestWeightModule& L, const DepthVec& m) {
  const std::size_t n = L.dim(m);
  if (n == 0) return {};
  std::vector<QVector> vecs;
  for (const auto& w : L.all_words(m)) vecs.push_back(L.coords(w));
  return lattice_basis(vecs, n);
}

LatticeReport lattice_rank_stability(const HighestWeightModule& L, const DepthVec& m, unsigned p) {
  if (!is_prime(p)) throw UsageError("lattice check needs a prime, got " + std::to_string(p));
  LatticeReport rep;
  rep.depth = m;
  rep.p = p;
  rep.dim = L.dim(m);
  if (rep.dim == 0) {
    rep.pass = true;
    return rep;
  }
  const PrimeField fp(p);
  auto basis = integral_lattice(L, m);
  rep.lattice_rank = basis.size();
  if (rep.lattice_rank != rep.dim) {
    rep.witness = "word lattice has rank " + std::to_string(rep.lattice_rank);
    return rep;
  }
  QMatrix B = rows_matrix(basis, rep.dim);
  QMatrix Binv = *inverse(kQ, B);

  std::vector<QVector> word_rows;
  for (const auto& w : L.all_words(m)) word_rows.push_back(row_times(L.coords(w), Binv));
  QMatrix W = QMatrix::from_rows(word_rows, rep.dim, Rational(0));
  rep.rank_mod_p = rank(fp, reduce_matrix(fp, W));

  QMatrix G = multiply(kQ, multiply(kQ, B, L.gram(m)), [&] {
    QMatrix t(rep.dim, rep.dim, Rational(0));
    for (std::size_t a = 0; a < rep.dim; ++a)
      for (std::size_t b = 0; b < rep.dim; ++b) t(a, b) = B(b, a);
    return t;
  }());
  try {
    rep.gram_rank_mod_p = rank(fp, reduce_matrix(fp, G));
  } catch (const std::domain_error&) {
    rep.gram_rank_mod_p = 0;
  }

  // divided powers must preserve the Z-forms of neighbouring weight spaces
  const Gcm& g = L.gcm();
  auto check_into = [&](const DepthVec& t, auto&& op, const std::string& name) {
    if (!L.has_layer(t) || L.dim(t) == 0) return;
    auto tb = integral_lattice(L, t);
    QMatrix tinv = *inverse(kQ, rows_matrix(tb, L.dim(t)));
    for (const auto& b : basis) {
      QVector img = row_times(op(b), tinv);
      if (!integral(img)) {
        rep.operators_integral = false;
        if (rep.witness.empty()) rep.witness = name + " into (" + format_vector(t) + ") is not integral";
      }
    }
  };
  for (int i = 0; i < g.rank(); ++i) {
    for (int a = 1; a <= m[i]; ++a)
      check_into(shift(m, i, -a), [&](const QVector& x) { return L.apply_E(i, a, m, x); },
                 "E" + g.label(i) + "^(" + std::to_string(a) + ")");
    for (int a = 1;; ++a) {
      DepthVec t = shift(m, i, a);
      if (!L.has_layer(t)) break;
      check_into(t, [&](const QVector& x) { return *L.apply_F(i, a, m, x); },
                 "F" + g.label(i) + "^(" + std::to_string(a) + ")");
    }
  }
  rep.pass = rep.rank_mod_p == rep.dim && rep.operators_integral;
  if (!rep.pass && rep.witness.empty())
    rep.witness = "word matrix has rank " + std::to_string(rep.rank_mod_p) + " mod p";
  return rep;
}

}  // namespace kmlab
