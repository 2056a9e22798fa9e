#include "kmlab/weyl.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace kmlab {

namespace {

Weight rho_weight(int r) { return {rho_anchor(r), zero_depth(r)}; }

}  // namespace

WeylElement element_from_rho(const Gcm& g, DepthVec rho_depth) {
  WeylElement w;
  w.rho_depth_ = rho_depth;
  Weight cur{rho_anchor(g.rank()), std::move(rho_depth)};
  // greedy left descent, smallest index first
  for (;;) {
    int found = -1;
    for (int i = 0; i < g.rank(); ++i)
      if (pairing(g, i, cur) < 0) {
        found = i;
        break;
      }
    if (found < 0) break;
    w.word_.push_back(found);
    cur = reflect(g, found, cur);
  }
  if (!std::all_of(cur.depth.begin(), cur.depth.end(), [](int x) { return x == 0; }))
    throw std::logic_error("greedy descent did not return to rho");
  return w;
}

WeylElement identity_element(const Gcm& g) { return element_from_rho(g, zero_depth(g.rank())); }

Weight act_word(const Gcm& g, const Word& word, Weight x) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = reflect(g, *it, x);
  return x;
}

WeylElement canonicalize(const Gcm& g, const Word& word) {
  for (int i : word)
    if (i < 0 || i >= g.rank()) throw UsageError("letter out of range in Weyl word");
  return element_from_rho(g, act_word(g, word, rho_weight(g.rank())).depth);
}

WeylElement left_multiply(const Gcm& g, int i, const WeylElement& w) {
  return element_from_rho(g, reflect(g, i, w.rho_image()).depth);
}

WeylElement right_multiply(const Gcm& g, const WeylElement& w, int i) {
  Word word = w.reduced_word();
  word.push_back(i);
  return canonicalize(g, word);
}

WeylElement inverse(const Gcm& g, const WeylElement& w) {
  Word word(w.reduced_word().rbegin(), w.reduced_word().rend());
  return canonicalize(g, word);
}

WeylElement product(const Gcm& g, const WeylElement& a, const WeylElement& b) {
  Word word = a.reduced_word();
  word.insert(word.end(), b.reduced_word().begin(), b.reduced_word().end());
  return canonicalize(g, word);
}

std::size_t length(const WeylElement& w) { return w.length(); }

Weight act(const Gcm& g, const WeylElement& w, Weight x) { return act_word(g, w.reduced_word(), x); }

bool is_left_descent(const Gcm& g, int i, const WeylElement& w) {
  return pairing(g, i, w.rho_image()) < 0;
}

bool is_right_descent(const Gcm& g, const WeylElement& w, int i) {
  return is_left_descent(g, i, inverse(g, w));
}

bool bruhat_leq(const Gcm& g, const WeylElement& v0, const WeylElement& w0) {
  WeylElement v = v0, w = w0;
  for (;;) {
    if (v.length() > w.length()) return false;
    if (w.is_identity()) return v.is_identity();
    if (v == w) return true;
    int i = w.reduced_word().front();  // a left descent of w
    WeylElement sw = left_multiply(g, i, w);
    if (is_left_descent(g, i, v)) v = left_multiply(g, i, v);
    w = std::move(sw);
  }
}

bool bruhat_leq_oracle(const Gcm& g, const WeylElement& v, const WeylElement& w) {
  const Word& word = w.reduced_word();
  const std::size_t n = word.size();
  if (v.length() > n) return false;
  // every subword; only those of length >= l(v) can reach v
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) < v.length()) continue;
    Word sub;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::uint64_t(1) << k)) sub.push_back(word[k]);
    if (canonicalize(g, sub) == v) return true;
  }
  return false;
}

std::vector<WeylElement> enumerate(const Gcm& g, int max_len) {
  std::vector<WeylElement> out;
  std::set<DepthVec> seen;
  std::vector<WeylElement> frontier{identity_element(g)};
  seen.insert(frontier.front().rho_depth());
  for (int len = 0; len <= max_len; ++len) {
    std::vector<WeylElement> next;
    for (const auto& w : frontier) {
      out.push_back(w);
      if (len == max_len) continue;
      Weight rw = w.rho_image();
      for (int i = 0; i < g.rank(); ++i) {
        if (pairing(g, i, rw) <= 0) continue;  // s_i w would be shorter
        Weight nr = reflect(g, i, rw);
        if (seen.insert(nr.depth).second) next.push_back(element_from_rho(g, nr.depth));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeylElement> minimal_upper_bounds(const Gcm& g, const std::vector<WeylElement>& S,
                                              int search_len) {
  if (S.empty()) throw UsageError("minimal_upper_bounds needs a nonempty set");
  std::vector<WeylElement> ub;
  for (const auto& v : enumerate(g, search_len)) {
    bool ok = true;
    for (const auto& w : S)
      if (!bruhat_leq(g, w, v)) {
        ok = false;
        break;
      }
    if (ok) ub.push_back(v);
  }
  if (ub.empty())
    throw EmptyWithinBound("no common upper bound of length <= " + std::to_string(search_len));
  std::vector<WeylElement> out;
  for (const auto& v : ub) {
    bool minimal = true;
    for (const auto& u : ub)
      if (!(u == v) && bruhat_leq(g, u, v)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(v);
  }
  return out;
}

std::vector<Word> all_reduced_words(const Gcm& g, const WeylElement& w) {
  if (w.is_identity()) return {Word{}};
  std::vector<Word> out;
  for (int i = 0; i < g.rank(); ++i) {
    if (!is_left_descent(g, i, w)) continue;
    for (auto& tail : all_reduced_words(g, left_multiply(g, i, w))) {
      Word word{i};
      word.insert(word.end(), tail.begin(), tail.end());
      out.push_back(std::move(word));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeylElement min_coset_representative(const Gcm& g, const WeylElement& w0, const Anchor& lambda) {
  WeylElement w = w0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int j = 0; j < g.rank(); ++j) {
      if (lambda[j] != 0) continue;
      WeylElement ws = right_multiply(g, w, j);
      if (ws.length() < w.length()) {
        w = std::move(ws);
        changed = true;
      }
    }
  }
  return w;
}

std::string format_word(const Gcm& g, const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += '.';
    s += g.label(w[k]);
  }
  return s;
}

std::string format_element(const Gcm& g, const WeylElement& w) {
  return format_word(g, w.reduced_word());
}

Word parse_word(const Gcm& g, std::string_view s) {
  Word out;
  if (s.empty() || s == "e") return out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw UsageError("empty letter in word '" + std::string(s) + "'");
    out.push_back(g.index_of(cur));
    cur.clear();
  };
  for (char c : s) {
    if (c == '.' || c == ',') {
      flush();
    } else if (c != ' ') {
      cur += c;
    }
  }
  flush();
  return out;
}

std::vector<WeylElement> parse_element_list(const Gcm& g, std::string_view s) {
  std::vector<WeylElement> out;
  std::string cur;
  auto flush = [&]() {
    out.push_back(canonicalize(g, parse_word(g, cur)));
    cur.clear();
  };
  for (char c : s) {
    if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace kmlab
