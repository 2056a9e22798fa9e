#include "kmlab/modules.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kmlab {

namespace {

const RationalField kQ;

void add_scaled(QVector& y, const Rational& a, const QVector& x) {
  if (sgn(a) == 0) return;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (sgn(x[k]) != 0) y[k] += a * x[k];
}

}  // namespace

DepthVec FWord::content(int rank) const {
  DepthVec m(rank, 0);
  for (const auto& [i, a] : factors) m[i] += a;
  return m;
}

std::pair<Integer, FWord> normalize_word(const std::vector<std::pair<int, int>>& factors) {
  Integer coef = 1;
  FWord out;
  for (const auto& [i, a] : factors) {
    if (a == 0) continue;
    if (a < 0) throw std::invalid_argument("negative divided power");
    if (!out.factors.empty() && out.factors.back().first == i) {
      int& b = out.factors.back().second;
      coef *= binomial(a + b, a);
      b += a;
    } else {
      out.factors.emplace_back(i, a);
    }
  }
  return {coef, out};
}

std::vector<FWord> words_of_content(const DepthVec& m) {
  std::vector<FWord> out;
  DepthVec left = m;
  FWord cur;
  std::function<void(int)> rec = [&](int prev) {
    bool done = std::all_of(left.begin(), left.end(), [](int x) { return x == 0; });
    if (done) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < static_cast<int>(left.size()); ++i) {
      if (i == prev || left[i] == 0) continue;
      for (int a = 1; a <= left[i]; ++a) {
        cur.factors.emplace_back(i, a);
        left[i] -= a;
        rec(i);
        left[i] += a;
        cur.factors.pop_back();
      }
    }
  };
  rec(-1);
  return out;
}

std::string format_fword(const Gcm& g, const FWord& w) {
  if (w.empty()) return "v";
  std::string s;
  for (const auto& [i, a] : w.factors) {
    s += "F" + g.label(i);
    if (a != 1) s += "^(" + std::to_string(a) + ")";
    s += ' ';
  }
  return s + "v";
}

DimHint hint_from_character(const CharacterPoly& ch) {
  return [ch](const DepthVec& m) -> std::optional<std::size_t> {
    if (total(m) > ch.depth_bound()) return std::nullopt;
    return static_cast<std::size_t>(ch.coefficient(m));
  };
}

HighestWeightModule::HighestWeightModule(const Gcm& g, Anchor lambda, int depth_bound,
                                         const std::vector<DepthVec>& extra, DimHint hint)
    : g_(g), lambda_(std::move(lambda)), bound_(depth_bound) {
  require_dominant(lambda_);
  if (static_cast<int>(lambda_.size()) != g_.rank())
    throw UsageError("weight has the wrong number of coordinates");
  auto support = depth_window(g_.rank(), depth_bound);
  if (!extra.empty()) {
    for (const auto& e : extra)
      if (!nonnegative(e)) throw UsageError("extra depth with a negative entry");
    auto dc = down_closure(extra);
    support.insert(support.end(), dc.begin(), dc.end());
    std::sort(support.begin(), support.end(), depth_order);
    support.erase(std::unique(support.begin(), support.end()), support.end());
  }
  for (const auto& m : support) build_layer(m, hint);
}

const HighestWeightModule::Layer& HighestWeightModule::layer(const DepthVec& m) const {
  auto it = layers_.find(m);
  if (it == layers_.end())
    throw DepthTooSmall("weight space at depth (" + format_vector(m) + ") was not computed");
  return it->second;
}

std::vector<DepthVec> HighestWeightModule::layers() const {
  std::vector<DepthVec> out;
  for (const auto& [m, L] : layers_) out.push_back(m);
  std::sort(out.begin(), out.end(), depth_order);
  return out;
}

std::size_t HighestWeightModule::dim(const DepthVec& m) const { return layer(m).basis.size(); }

const std::vector<FWord>& HighestWeightModule::basis_words(const DepthVec& m) const {
  return layer(m).basis_words;
}

const QMatrix& HighestWeightModule::gram(const DepthVec& m) const { return layer(m).gram; }

const std::vector<FWord>& HighestWeightModule::all_words(const DepthVec& m) const {
  return layer(m).words;
}

QVector HighestWeightModule::coords_in(const Layer& L, const FWord& w) const {
  if (L.basis.empty()) return {};
  auto it = L.index.find(w);
  if (it == L.index.end()) throw std::logic_error("word missing from its layer");
  return L.coords[it->second];
}

QVector HighestWeightModule::coords(const FWord& w0) const {
  auto [c, w] = normalize_word(w0.factors);
  const Layer& L = layer(w.content(g_.rank()));
  QVector x = coords_in(L, w);
  if (c != 1)
    for (auto& v : x) v *= c;
  return x;
}

Rational HighestWeightModule::form(const DepthVec& m, const QVector& x, const QVector& y) const {
  const Layer& L = layer(m);
  Rational s = 0;
  const std::size_t n = L.basis.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    Rational t = 0;
    for (std::size_t b = 0; b < n; ++b)
      if (sgn(y[b]) != 0) t += L.gram(a, b) * y[b];
    s += x[a] * t;
  }
  return s;
}

Rational HighestWeightModule::pair(const FWord& u, const FWord& v) const {
  DepthVec mu = normalize_word(u.factors).second.content(g_.rank());
  DepthVec mv = normalize_word(v.factors).second.content(g_.rank());
  if (mu != mv) return 0;
  if (dim(mu) == 0) return 0;
  return form(mu, coords(u), coords(v));
}

QVector HighestWeightModule::f_into(int i, int a, const Layer& src, const QVector& x,
                                    const Layer& dst) const {
  QVector y(dst.basis.size(), Rational(0));
  if (dst.basis.empty()) return y;
  for (std::size_t k = 0; k < src.basis.size(); ++k) {
    if (sgn(x[k]) == 0) continue;
    std::vector<std::pair<int, int>> f{{i, a}};
    const auto& bw = src.basis_words[k].factors;
    f.insert(f.end(), bw.begin(), bw.end());
    auto [c, w] = normalize_word(f);
    add_scaled(y, x[k] * Rational(c), coords_in(dst, w));
  }
  return y;
}

std::optional<QVector> HighestWeightModule::apply_F(int i, int a, const DepthVec& m,
                                                    const QVector& x) const {
  DepthVec t = m;
  t[i] += a;
  if (!has_layer(t)) return std::nullopt;
  return f_into(i, a, layer(m), x, layer(t));
}

const QMatrix& HighestWeightModule::e_matrix(int i, const DepthVec& m) const {
  const Layer& L = layer(m);
  if (m[i] < 1) throw std::invalid_argument("e_matrix below depth zero");
  return L.e[i];
}

QVector HighestWeightModule::apply_E(int i, int a, const DepthVec& m, const QVector& x) const {
  if (m[i] < a) return {};
  QVector y = x;
  DepthVec cur = m;
  for (int k = 1; k <= a; ++k) {
    y = kmlab::apply(kQ, e_matrix(i, cur), y);
    if (k > 1)
      for (auto& v : y) v /= k;
    cur[i] -= 1;
  }
  return y;
}

// E_i on the word u (content m), as a vector of layer m - e_i:
//   E_i F_j^{(b)} u' = F_j^{(b)} E_i u' + delta_ij (<alpha_i^vee, wt u'> - b + 1) F_i^{(b-1)} u'
QVector HighestWeightModule::e_single(int i, const FWord& u, const DepthVec& m) const {
  DepthVec low = m;
  low[i] -= 1;
  const Layer& dst = layer(low);
  QVector out(dst.basis.size(), Rational(0));
  if (dst.basis.empty()) return out;
  const auto [j, b] = u.factors.front();
  FWord rest{std::vector<std::pair<int, int>>(u.factors.begin() + 1, u.factors.end())};
  DepthVec c = m;
  c[j] -= b;
  if (c[i] >= 1) {
    const Layer& mid = layer(c);
    if (!mid.basis.empty()) {
      DepthVec c2 = c;
      c2[i] -= 1;
      const Layer& midlow = layer(c2);
      if (!midlow.basis.empty()) {
        QVector y = kmlab::apply(kQ, mid.e[i], coords_in(mid, rest));
        add_scaled(out, Rational(1), f_into(j, b, midlow, y, dst));
      }
    }
  }
  if (i == j) {
    int n = pairing(g_, i, lambda_, c) - b + 1;
    if (n != 0) {
      FWord w = rest;
      if (b - 1 >= 1) w.factors.insert(w.factors.begin(), {i, b - 1});
      add_scaled(out, Rational(n), coords_in(dst, w));
    }
  }
  return out;
}

void HighestWeightModule::build_layer(const DepthVec& m, const DimHint& hint) {
  const int r = g_.rank();
  Layer L;
  L.depth = m;
  L.e.resize(r);
  auto finish_empty = [&]() {
    for (int i = 0; i < r; ++i)
      if (m[i] >= 1) {
        DepthVec low = m;
        low[i] -= 1;
        L.e[i] = QMatrix(layer(low).basis.size(), 0, Rational(0));
      }
    L.gram = QMatrix(0, 0, Rational(0));
    layers_.emplace(m, std::move(L));
  };

  if (total(m) == 0) {
    L.words = {FWord{}};
    L.index[FWord{}] = 0;
    L.coords = {QVector{Rational(1)}};
    L.basis = {0};
    L.basis_words = {FWord{}};
    L.gram = QMatrix(1, 1, Rational(1));
    layers_.emplace(m, std::move(L));
    return;
  }
  std::optional<std::size_t> hinted;
  if (hint) hinted = hint(m);
  if (hinted && *hinted == 0) return finish_empty();
  bool any_lower = false;
  for (int i = 0; i < r; ++i)
    if (m[i] >= 1) {
      DepthVec low = m;
      low[i] -= 1;
      if (!layer(low).basis.empty()) any_lower = true;
    }
  // a vector killed by every E_i in an irreducible module is a multiple of v_lambda
  if (!any_lower) return finish_empty();

  L.words = words_of_content(m);
  const std::size_t N = L.words.size();
  for (std::size_t k = 0; k < N; ++k) L.index[L.words[k]] = k;

  // <F_i^{(a)} v', x> = <v', E_i^{(a)} x>: row vectors coords(v')^T G(m - a e_i)
  std::vector<QVector> rows(N);
  std::vector<std::pair<int, int>> lead(N);
  for (std::size_t k = 0; k < N; ++k) {
    const auto& w = L.words[k];
    lead[k] = w.factors.front();
    DepthVec c = m;
    c[lead[k].first] -= lead[k].second;
    const Layer& low = layer(c);
    if (low.basis.empty()) continue;
    FWord rest{std::vector<std::pair<int, int>>(w.factors.begin() + 1, w.factors.end())};
    QVector x = coords_in(low, rest);
    const std::size_t n = low.basis.size();
    QVector row(n, Rational(0));
    for (std::size_t a = 0; a < n; ++a) {
      if (sgn(x[a]) == 0) continue;
      for (std::size_t b = 0; b < n; ++b) row[b] += x[a] * low.gram(a, b);
    }
    rows[k] = std::move(row);
  }

  // E_i^{(a)} u for all (i, a) with a <= m_i; index [i][a-1]
  auto e_powers = [&](const FWord& u) {
    std::vector<std::vector<QVector>> ep(r);
    for (int i = 0; i < r; ++i) {
      if (m[i] < 1) continue;
      QVector y = e_single(i, u, m);
      DepthVec cur = m;
      cur[i] -= 1;
      ep[i].push_back(y);
      for (int a = 2; a <= m[i]; ++a) {
        const Layer& lc = layer(cur);
        if (lc.basis.empty() || m[i] < a) break;
        DepthVec nx = cur;
        nx[i] -= 1;
        y = kmlab::apply(kQ, lc.e[i], y);
        for (auto& v : y) v /= a;
        ep[i].push_back(y);
        cur = nx;
      }
    }
    return ep;
  };
  auto column = [&](const std::vector<std::vector<QVector>>& ep) {
    QVector col(N, Rational(0));
    for (std::size_t k = 0; k < N; ++k) {
      if (rows[k].empty()) continue;
      auto [i, a] = lead[k];
      if (static_cast<int>(ep[i].size()) < a) continue;
      const QVector& y = ep[i][a - 1];
      Rational s = 0;
      for (std::size_t t = 0; t < y.size(); ++t)
        if (sgn(y[t]) != 0) s += rows[k][t] * y[t];
      col[k] = s;
    }
    return col;
  };

  QSubspace span(kQ, N);
  std::vector<QVector> pivot_cols;
  std::vector<std::vector<QVector>> pivot_e1;  // [pivot][i] = E_i u
  for (std::size_t u = 0; u < N; ++u) {
    if (hinted && span.dim() == *hinted) break;
    auto ep = e_powers(L.words[u]);
    QVector col = column(ep);
    if (!span.insert(col)) continue;
    L.basis.push_back(u);
    pivot_cols.push_back(std::move(col));
    std::vector<QVector> e1(r);
    for (int i = 0; i < r; ++i)
      if (!ep[i].empty()) e1[i] = ep[i][0];
    pivot_e1.push_back(std::move(e1));
  }
  if (hinted && span.dim() != *hinted)
    throw std::logic_error("dimension hint disagrees with the Gram rank at depth (" +
                           format_vector(m) + ")");
  const std::size_t n = L.basis.size();
  if (n == 0) {
    L.words.clear();
    L.index.clear();
    return finish_empty();
  }
  L.gram = QMatrix(n, n, Rational(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) L.gram(a, b) = pivot_cols[b][L.basis[a]];
  auto ginv = inverse(kQ, L.gram);
  if (!ginv) throw std::logic_error("Gram matrix on the pivot words is singular");
  L.coords.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    QVector rhs(n);
    for (std::size_t b = 0; b < n; ++b) rhs[b] = pivot_cols[b][k];
    L.coords[k] = kmlab::apply(kQ, *ginv, rhs);
  }
  for (std::size_t b = 0; b < n; ++b) L.basis_words.push_back(L.words[L.basis[b]]);
  for (int i = 0; i < r; ++i) {
    if (m[i] < 1) continue;
    DepthVec low = m;
    low[i] -= 1;
    const std::size_t nl = layer(low).basis.size();
    L.e[i] = QMatrix(nl, n, Rational(0));
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t t = 0; t < nl; ++t) L.e[i](t, b) = pivot_e1[b][i][t];
  }
  layers_.emplace(m, std::move(L));
}

bool HighestWeightModule::window_complete() const {
  const int r = g_.rank();
  for (const auto& [m, L] : layers_) {
    if (total(m) != bound_ || L.basis.empty()) continue;
    const std::size_t n = L.basis.size();
    for (std::size_t k = 0; k < n; ++k) {
      QVector v(n, Rational(0));
      v[k] = 1;
      for (int i = 0; i < r; ++i) {
        int h = pairing(g_, i, lambda_, m);
        for (int j = 0; j < r; ++j) {
          // E_j F_i v = F_i E_j v + delta_ij h v
          QVector out(n, Rational(0));
          if (m[j] >= 1) {
            DepthVec low = m;
            low[j] -= 1;
            QVector y = apply_E(j, 1, m, v);
            DepthVec back = low;
            back[i] += 1;
            if (!has_layer(back)) return false;
            if (!y.empty() && !layer(low).basis.empty()) {
              QVector z = f_into(i, 1, layer(low), y, layer(back));
              if (i != j) {
                if (!is_zero_vector(kQ, z)) return false;
                continue;
              }
              out = z;
            }
          }
          if (i == j) {
            out[k] += h;
            if (!is_zero_vector(kQ, out)) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace kmlab
