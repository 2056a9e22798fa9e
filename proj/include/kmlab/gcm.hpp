#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmlab/errors.hpp"

namespace kmlab {

// m = (m_i) stands for the element  lambda - sum_i m_i alpha_i
using DepthVec = std::vector<int>;
// lambda in the basis of fundamental weights
using Anchor = std::vector<int>;

class Gcm {
 public:
  // Throws NotGcm with the offending entry.
  static Gcm validate(std::vector<std::vector<int>> matrix, std::vector<std::string> labels = {});

  int rank() const { return static_cast<int>(c_.size()); }
  int operator()(int i, int j) const { return c_[i][j]; }
  const std::vector<std::vector<int>>& matrix() const { return c_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  int index_of(std::string_view label) const;

  bool symmetrizable() const { return sym_.has_value(); }
  const std::optional<std::vector<int>>& symmetrizer() const { return sym_; }
  // (alpha_i | alpha_j) = d_i c_ij ; throws NotSymmetrizable
  long form(int i, int j) const;
  long form(const DepthVec& a, const DepthVec& b) const;
  // (rho | beta) = sum d_i m_i
  long rho_form(const DepthVec& b) const;

  friend bool operator==(const Gcm& a, const Gcm& b) { return a.c_ == b.c_; }

 private:
  std::vector<std::vector<int>> c_;
  std::vector<std::string> labels_;
  std::optional<std::vector<int>> sym_;
};

struct Weight {
  Anchor anchor;
  DepthVec depth;
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

// <alpha_i^vee, lambda - sum m_j alpha_j>
int pairing(const Gcm& g, int i, const Weight& w);
int pairing(const Gcm& g, int i, const Anchor& anchor, const DepthVec& depth);
// <alpha_i^vee, sum m_j alpha_j>
int coroot_on_root(const Gcm& g, int i, const DepthVec& root);
Weight reflect(const Gcm& g, int i, Weight w);

Weight weight_of(const Anchor& anchor);
Anchor rho_anchor(int rank);
Anchor fundamental(int rank, int i);
bool is_dominant(const Anchor& a);
bool is_strictly_dominant(const Anchor& a);
void require_dominant(const Anchor& a);
int total(const std::vector<int>& v);
int degree(const Anchor& a);
DepthVec zero_depth(int rank);
DepthVec unit_depth(int rank, int i, int scale = 1);
DepthVec add(const DepthVec& a, const DepthVec& b);
DepthVec sub(const DepthVec& a, const DepthVec& b);
bool leq(const DepthVec& a, const DepthVec& b);  // componentwise
bool nonnegative(const DepthVec& a);

// All depth vectors with nonnegative entries and total <= d, ordered by total then lex.
std::vector<DepthVec> depth_window(int rank, int d);
// Down-closure of a set of nonnegative depth vectors; same ordering.
std::vector<DepthVec> down_closure(const std::vector<DepthVec>& tops);
bool depth_order(const DepthVec& a, const DepthVec& b);

// symmetrizable with positive definite symmetrized form (finite Weyl group)
bool is_finite_type(const Gcm& g);

// Preset catalog. Lookup order: KMLAB_PRESETS env var, then the installed
// catalog file, then the builtin table.
std::vector<std::string> preset_names();
Gcm preset(std::string_view name);
std::map<std::string, Gcm> load_catalog(const std::string& path);
Gcm gcm_from_json_text(const std::string& text);
// preset name or path to a GCM JSON file
Gcm load_gcm(const std::string& source);

std::string format_vector(const std::vector<int>& v, char sep = ',');
std::vector<int> parse_int_list(std::string_view s);

}  // namespace kmlab
