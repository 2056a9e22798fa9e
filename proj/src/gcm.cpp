#include "kmlab/gcm.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include "json.hpp"

#ifndef KMLAB_DATA_DIR
#define KMLAB_DATA_DIR ""
#endif

namespace kmlab {

using json = nlohmann::json;

namespace {

std::optional<std::vector<int>> compute_symmetrizer(const std::vector<std::vector<int>>& c) {
  const int r = static_cast<int>(c.size());
  std::vector<mpq_class> d(r, 0);
  std::vector<int> block(r, -1);
  int nblocks = 0;
  for (int s = 0; s < r; ++s) {
    if (block[s] >= 0) continue;
    d[s] = 1;
    block[s] = nblocks;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < r; ++j) {
        if (j == i || c[i][j] == 0) continue;
        mpq_class dj = d[i] * c[i][j] / c[j][i];
        if (block[j] < 0) {
          block[j] = nblocks;
          d[j] = dj;
          q.push(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    ++nblocks;
  }
  std::vector<int> out(r);
  for (int b = 0; b < nblocks; ++b) {
    mpz_class l = 1, g = 0;
    for (int i = 0; i < r; ++i)
      if (block[i] == b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d[i].get_den_mpz_t());
    for (int i = 0; i < r; ++i)
      if (block[i] == b) {
        mpq_class v = d[i] * l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
      }
    for (int i = 0; i < r; ++i)
      if (block[i] == b) {
        mpq_class v = d[i] * l / g;
        out[i] = static_cast<int>(v.get_num().get_si());
      }
  }
  return out;
}

struct BuiltinPreset {
  const char* name;
  std::vector<std::vector<int>> matrix;
  std::vector<std::string> labels;
};

const std::vector<BuiltinPreset>& builtin_presets() {
  static const std::vector<BuiltinPreset> table = {
      {"A1", {{2}}, {"1"}},
      {"A2", {{2, -1}, {-1, 2}}, {"1", "2"}},
      {"B2", {{2, -1}, {-2, 2}}, {"1", "2"}},
      {"G2", {{2, -1}, {-3, 2}}, {"1", "2"}},
      {"A1^(1)", {{2, -2}, {-2, 2}}, {"0", "1"}},
      {"A2^(2)", {{2, -4}, {-1, 2}}, {"0", "1"}},
      {"hyperbolic", {{2, -3}, {-3, 2}}, {"1", "2"}},
  };
  return table;
}

std::string canonical_preset_name(std::string_view name) {
  if (name == "A1_1" || name == "A1(1)" || name == "affine-A1") return "A1^(1)";
  if (name == "A2_2" || name == "A2(2)") return "A2^(2)";
  if (name == "H33" || name == "hyp33") return "hyperbolic";
  return std::string(name);
}

Gcm gcm_from_json(const json& j) {
  if (!j.contains("matrix")) throw UsageError("GCM JSON lacks \"matrix\"");
  auto m = j.at("matrix").get<std::vector<std::vector<int>>>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return Gcm::validate(std::move(m), std::move(labels));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Gcm Gcm::validate(std::vector<std::vector<int>> matrix, std::vector<std::string> labels) {
  const std::size_t r = matrix.size();
  if (r == 0) throw NotGcm(0, 0, "empty matrix");
  for (std::size_t i = 0; i < r; ++i)
    if (matrix[i].size() != r) throw NotGcm(static_cast<int>(i), 0, "matrix not square");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      int a = matrix[i][j];
      int ii = static_cast<int>(i), jj = static_cast<int>(j);
      if (i == j && a != 2) throw NotGcm(ii, jj, "diagonal entry is not 2");
      if (i != j && a > 0) throw NotGcm(ii, jj, "positive off-diagonal entry");
      if (i != j && (a == 0) != (matrix[j][i] == 0))
        throw NotGcm(ii, jj, "asymmetric zero pattern");
    }
  if (labels.empty())
    for (std::size_t i = 0; i < r; ++i) labels.push_back(std::to_string(i + 1));
  if (labels.size() != r) throw UsageError("label count does not match matrix size");
  Gcm g;
  g.sym_ = compute_symmetrizer(matrix);
  g.c_ = std::move(matrix);
  g.labels_ = std::move(labels);
  return g;
}

int Gcm::index_of(std::string_view label) const {
  for (int i = 0; i < rank(); ++i)
    if (labels_[i] == label) return i;
  throw UsageError("unknown index label '" + std::string(label) + "'");
}

long Gcm::form(int i, int j) const {
  if (!sym_) throw NotSymmetrizable("matrix has no symmetrizer");
  return static_cast<long>((*sym_)[i]) * c_[i][j];
}

long Gcm::form(const DepthVec& a, const DepthVec& b) const {
  long s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank(); ++j)
      if (b[j] != 0) s += static_cast<long>(a[i]) * b[j] * form(i, j);
  }
  return s;
}

long Gcm::rho_form(const DepthVec& b) const {
  if (!sym_) throw NotSymmetrizable("matrix has no symmetrizer");
  long s = 0;
  for (int i = 0; i < rank(); ++i) s += static_cast<long>((*sym_)[i]) * b[i];
  return s;
}

bool is_finite_type(const Gcm& g) {
  if (!g.symmetrizable()) return false;
  const int r = g.rank();
  // elimination without pivoting: positive definite iff every pivot is positive
  std::vector<std::vector<mpq_class>> b(r, std::vector<mpq_class>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) b[i][j] = g.form(i, j);
  for (int k = 0; k < r; ++k) {
    if (sgn(b[k][k]) <= 0) return false;
    for (int i = k + 1; i < r; ++i) {
      mpq_class f = b[i][k] / b[k][k];
      for (int j = k; j < r; ++j) b[i][j] -= f * b[k][j];
    }
  }
  return true;
}

int pairing(const Gcm& g, int i, const Anchor& anchor, const DepthVec& depth) {
  int s = anchor[i];
  for (int j = 0; j < g.rank(); ++j) s -= g(i, j) * depth[j];
  return s;
}

int pairing(const Gcm& g, int i, const Weight& w) { return pairing(g, i, w.anchor, w.depth); }

int coroot_on_root(const Gcm& g, int i, const DepthVec& root) {
  int s = 0;
  for (int j = 0; j < g.rank(); ++j) s += g(i, j) * root[j];
  return s;
}

Weight reflect(const Gcm& g, int i, Weight w) {
  w.depth[i] += pairing(g, i, w);
  return w;
}

Weight weight_of(const Anchor& anchor) { return {anchor, DepthVec(anchor.size(), 0)}; }
Anchor rho_anchor(int rank) { return Anchor(rank, 1); }
Anchor fundamental(int rank, int i) {
  Anchor a(rank, 0);
  a[i] = 1;
  return a;
}

bool is_dominant(const Anchor& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}
bool is_strictly_dominant(const Anchor& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 1; });
}
void require_dominant(const Anchor& a) {
  if (!is_dominant(a)) throw NotDominant("weight (" + format_vector(a) + ") is not dominant");
}

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }
int degree(const Anchor& a) { return total(a); }
DepthVec zero_depth(int rank) { return DepthVec(rank, 0); }
DepthVec unit_depth(int rank, int i, int scale) {
  DepthVec v(rank, 0);
  v[i] = scale;
  return v;
}
DepthVec add(const DepthVec& a, const DepthVec& b) {
  DepthVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
DepthVec sub(const DepthVec& a, const DepthVec& b) {
  DepthVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}
bool leq(const DepthVec& a, const DepthVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
bool nonnegative(const DepthVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

bool depth_order(const DepthVec& a, const DepthVec& b) {
  int ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

std::vector<DepthVec> depth_window(int rank, int d) {
  std::vector<DepthVec> out;
  DepthVec cur(rank, 0);
  // odometer over the simplex
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
    cur[i] = 0;
  };
  if (d >= 0) rec(0, d);
  std::sort(out.begin(), out.end(), depth_order);
  return out;
}

std::vector<DepthVec> down_closure(const std::vector<DepthVec>& tops) {
  std::vector<DepthVec> out;
  for (const auto& t : tops) {
    DepthVec cur(t.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == t.size()) {
        out.push_back(cur);
        return;
      }
      for (int v = 0; v <= t[i]; ++v) {
        cur[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end(), depth_order);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : builtin_presets()) out.push_back(p.name);
  return out;
}

Gcm gcm_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad GCM JSON: ") + e.what());
  }
  return gcm_from_json(j);
}

std::map<std::string, Gcm> load_catalog(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError("bad preset catalog " + path + ": " + e.what());
  }
  std::map<std::string, Gcm> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace(it.key(), gcm_from_json(it.value()));
  return out;
}

Gcm preset(std::string_view name0) {
  std::string name = canonical_preset_name(name0);
  std::vector<std::string> paths;
  if (const char* env = std::getenv("KMLAB_PRESETS"); env && *env) paths.emplace_back(env);
  if (std::string(KMLAB_DATA_DIR).size()) paths.push_back(std::string(KMLAB_DATA_DIR) + "/presets.json");
  for (const auto& p : paths) {
    std::ifstream probe(p);
    if (!probe) continue;
    auto cat = load_catalog(p);
    if (auto it = cat.find(name); it != cat.end()) return it->second;
  }
  for (const auto& p : builtin_presets())
    if (name == p.name) return Gcm::validate(p.matrix, p.labels);
  throw UsageError("unknown preset '" + std::string(name0) + "'");
}

Gcm load_gcm(const std::string& source) {
  std::ifstream probe(source);
  if (probe && source.find('/') != std::string::npos) return gcm_from_json_text(read_file(source));
  if (probe && source.size() > 5 && source.substr(source.size() - 5) == ".json")
    return gcm_from_json_text(read_file(source));
  return preset(source);
}

std::string format_vector(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw UsageError("empty entry in integer list '" + std::string(s) + "'");
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(cur, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + cur + "'");
    }
    if (pos != cur.size()) throw UsageError("bad integer '" + cur + "'");
    out.push_back(v);
    cur.clear();
  };
  for (char c : s) {
    if (c == ',' || c == ' ') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace kmlab
