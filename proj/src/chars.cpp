#include "kmlab/chars.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace kmlab {

namespace {

constexpr int kMaxSweeps = 400;
constexpr std::size_t kMaxMonomials = 4'000'000;

}  // namespace

CharacterPoly CharacterPoly::monomial(Anchor anchor, DepthVec m, int depth_bound, std::int64_t c) {
  CharacterPoly f(std::move(anchor), depth_bound);
  f.add_term(m, c);
  return f;
}

std::int64_t CharacterPoly::coefficient(const DepthVec& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? 0 : it->second;
}

std::int64_t CharacterPoly::total_mass() const {
  std::int64_t s = 0;
  for (const auto& [m, c] : coeffs_) s += c;
  return s;
}

int CharacterPoly::max_depth() const {
  int d = -1;
  for (const auto& [m, c] : coeffs_) d = std::max(d, total(m));
  return d;
}

void CharacterPoly::add_term(const DepthVec& m, std::int64_t c) {
  if (c == 0 || total(m) > bound_) return;
  auto [it, inserted] = coeffs_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

CharacterPoly CharacterPoly::truncated(int d) const {
  CharacterPoly out(anchor_, d);
  for (const auto& [m, c] : coeffs_)
    if (total(m) <= d) out.coeffs_.emplace(m, c);
  return out;
}

CharacterPoly& CharacterPoly::operator+=(const CharacterPoly& o) {
  if (o.anchor_ != anchor_) throw AmbientMismatch("adding characters with different anchors");
  bound_ = std::min(bound_, o.bound_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = total(it->first) > bound_ ? coeffs_.erase(it) : std::next(it);
  for (const auto& [m, c] : o.coeffs_) add_term(m, c);
  return *this;
}

CharacterPoly& CharacterPoly::operator-=(const CharacterPoly& o) {
  if (o.anchor_ != anchor_) throw AmbientMismatch("subtracting characters with different anchors");
  bound_ = std::min(bound_, o.bound_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = total(it->first) > bound_ ? coeffs_.erase(it) : std::next(it);
  for (const auto& [m, c] : o.coeffs_) add_term(m, -c);
  return *this;
}

CharacterPoly operator*(const CharacterPoly& a, const CharacterPoly& b) {
  Anchor an(a.anchor_.size());
  for (std::size_t i = 0; i < an.size(); ++i) an[i] = a.anchor_[i] + b.anchor_[i];
  CharacterPoly out(std::move(an), std::min(a.bound_, b.bound_));
  for (const auto& [ma, ca] : a.coeffs_)
    for (const auto& [mb, cb] : b.coeffs_) out.add_term(add(ma, mb), ca * cb);
  return out;
}

bool dominated_by(const CharacterPoly& a, const CharacterPoly& b) {
  for (const auto& [m, c] : a.coeffs()) {
    if (c > b.coefficient(m)) return false;
  }
  for (const auto& [m, c] : b.coeffs())
    if (c < 0 && a.coefficient(m) > c) return false;
  return true;
}

RootTable real_roots(const Gcm& g, int d) {
  const int r = g.rank();
  RootTable t;
  t.depth_bound = d;
  std::deque<DepthVec> queue;
  for (int i = 0; i < r && d >= 1; ++i) {
    auto e = unit_depth(r, i);
    t.entries[e] = {1, true};
    queue.push_back(e);
  }
  while (!queue.empty()) {
    DepthVec beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      int n = coroot_on_root(g, i, beta);
      if (n >= 0) continue;  // s_i would not increase depth
      DepthVec nb = beta;
      nb[i] -= n;
      if (total(nb) > d) continue;
      if (t.entries.emplace(nb, RootEntry{1, true}).second) queue.push_back(nb);
    }
  }
  return t;
}

RootTable peterson_mults(const Gcm& g, int d) {
  if (!g.symmetrizable()) throw NotSymmetrizable("Peterson recursion needs a symmetrizable matrix");
  const int r = g.rank();
  auto real = real_roots(g, d);
  std::map<DepthVec, mpq_class> c;
  std::map<DepthVec, mpq_class> mult;
  auto window = depth_window(r, d);
  // sum_{k >= 2, beta/k integral} mult(beta/k)/k
  auto multiple_part = [&](const DepthVec& beta) {
    mpq_class s = 0;
    int t = total(beta);
    for (int k = 2; k <= t; ++k) {
      bool divisible = true;
      DepthVec q(r);
      for (int i = 0; i < r; ++i) {
        if (beta[i] % k) {
          divisible = false;
          break;
        }
        q[i] = beta[i] / k;
      }
      if (!divisible) continue;
      auto it = mult.find(q);
      if (it != mult.end()) s += it->second / k;
    }
    return s;
  };
  for (const auto& beta : window) {
    int t = total(beta);
    if (t == 0) continue;
    if (t == 1) {
      c[beta] = 1;
      mult[beta] = 1;
      continue;
    }
    mpq_class rhs = 0;
    for (const auto& b1 : window) {
      int t1 = total(b1);
      if (t1 == 0 || t1 >= t || !leq(b1, beta)) continue;
      DepthVec b2 = sub(beta, b1);
      auto i1 = c.find(b1), i2 = c.find(b2);
      if (i1 == c.end() || i2 == c.end()) continue;
      if (sgn(i1->second) == 0 || sgn(i2->second) == 0) continue;
      rhs += mpq_class(g.form(b1, b2)) * i1->second * i2->second;
    }
    long denom = g.form(beta, beta) - 2 * g.rho_form(beta);
    mpq_class mp = multiple_part(beta);
    mpq_class cb;
    if (denom != 0) {
      cb = rhs / denom;
    } else {
      if (sgn(rhs) != 0) throw std::logic_error("Peterson recursion: inconsistent zero denominator");
      cb = mp;
    }
    mpq_class m = cb - mp;
    if (real.entries.count(beta)) {
      m = 1;
      cb = 1 + mp;
    }
    if (m.get_den() != 1 || sgn(m) < 0)
      throw std::logic_error("Peterson recursion produced a non-integral multiplicity");
    c[beta] = cb;
    if (sgn(m) != 0) mult[beta] = m;
  }
  RootTable out;
  out.depth_bound = d;
  for (const auto& [beta, m] : mult)
    out.entries[beta] = {m.get_num().get_si(), real.entries.count(beta) > 0};
  return out;
}

CharacterPoly demazure_op(const Gcm& g, int i, const CharacterPoly& f) {
  CharacterPoly out(f.anchor(), f.depth_bound());
  for (const auto& [m, c] : f.coeffs()) {
    int n = pairing(g, i, f.anchor(), m);
    DepthVec mm = m;
    if (n >= 0) {
      for (int k = 0; k <= n; ++k) {
        mm[i] = m[i] + k;
        out.add_term(mm, c);
      }
    } else if (n <= -2) {
      for (int k = 1; k <= -n - 1; ++k) {
        mm[i] = m[i] - k;
        out.add_term(mm, -c);
      }
    }
  }
  return out;
}

CharacterPoly char_demazure_word(const Gcm& g, const Anchor& lambda, const Word& word, int d) {
  require_dominant(lambda);
  auto f = CharacterPoly::monomial(lambda, zero_depth(g.rank()), CharacterPoly::kUnbounded);
  for (auto it = word.rbegin(); it != word.rend(); ++it) f = demazure_op(g, *it, f);
  return f.truncated(d);
}

CharacterPoly char_demazure(const Gcm& g, const Anchor& lambda, const WeylElement& w, int d) {
  return char_demazure_word(g, lambda, w.reduced_word(), d);
}

CharacterPoly char_L(const Gcm& g, const Anchor& lambda, int d, CharLInfo* info) {
  require_dominant(lambda);
  auto f = CharacterPoly::monomial(lambda, zero_depth(g.rank()), CharacterPoly::kUnbounded);
  CharLInfo local;
  for (;;) {
    auto before = f;
    for (int i = 0; i < g.rank(); ++i) f = demazure_op(g, i, f);
    ++local.sweeps;
    if (f == before) {
      local.fully_stable = true;
      break;
    }
    if (f.truncated(d) == before.truncated(d)) break;
    if (local.sweeps > kMaxSweeps || f.coeffs().size() > kMaxMonomials)
      throw std::runtime_error("char_L: sweep budget exhausted before the window stabilized");
  }
  if (info) *info = local;
  return f.truncated(d);
}

WeylKacReport check_weyl_kac(const Gcm& g, const Anchor& lambda, int d) {
  if (!g.symmetrizable()) throw NotSymmetrizable("Weyl-Kac check needs a symmetrizable matrix");
  require_dominant(lambda);
  const int r = g.rank();
  WeylKacReport rep;
  rep.depth = d;
  auto roots = peterson_mults(g, d);
  CharacterPoly lhs = char_L(g, lambda, d);
  for (const auto& [beta, e] : roots.entries) {
    CharacterPoly factor(Anchor(r, 0), d);
    factor.add_term(zero_depth(r), 1);
    factor.add_term(beta, -1);
    for (std::int64_t k = 0; k < e.multiplicity; ++k) lhs = lhs * factor;
    ++rep.roots_used;
  }
  // numerator: BFS over the regular orbit of lambda + rho, pruned by depth
  Anchor lr(r);
  for (int i = 0; i < r; ++i) lr[i] = lambda[i] + 1;
  CharacterPoly rhs(lambda, d);
  std::set<DepthVec> seen{zero_depth(r)};
  std::vector<DepthVec> level{zero_depth(r)};
  int sign = 1;
  while (!level.empty()) {
    std::vector<DepthVec> next;
    for (const auto& m : level) {
      rhs.add_term(m, sign);
      ++rep.numerator_terms;
      for (int i = 0; i < r; ++i) {
        int n = pairing(g, i, lr, m);
        if (n <= 0) continue;
        DepthVec nm = m;
        nm[i] += n;
        if (total(nm) > d) continue;
        if (seen.insert(nm).second) next.push_back(nm);
      }
    }
    level = std::move(next);
    sign = -sign;
  }
  rep.equal = (lhs == rhs);
  if (!rep.equal) {
    std::set<DepthVec, bool (*)(const DepthVec&, const DepthVec&)> keys(depth_order);
    for (const auto& [m, c] : lhs.coeffs()) keys.insert(m);
    for (const auto& [m, c] : rhs.coeffs()) keys.insert(m);
    for (const auto& m : keys)
      if (lhs.coefficient(m) != rhs.coefficient(m)) {
        rep.first_mismatch = m;
        rep.lhs_coeff = lhs.coefficient(m);
        rep.rhs_coeff = rhs.coefficient(m);
        break;
      }
  }
  return rep;
}

}  // namespace kmlab
