#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kmlab {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

// Field policies. Elements are plain values; all arithmetic goes through the
// policy object so that F_p can carry its modulus at runtime.
struct RationalField {
  using value_type = Rational;
  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return Rational(1) / a; }
  value_type from_int(long v) const { return Rational(v); }
};

struct PrimeField {
  using value_type = std::uint32_t;
  std::uint32_t p = 2;

  explicit PrimeField(std::uint32_t modulus) : p(modulus) {}
  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<value_type>(s % p);
  }
  value_type sub(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t(a) + p - b) % p);
  }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(std::uint64_t(a) * b % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type pow(value_type a, std::uint64_t e) const {
    std::uint64_t r = 1 % p, b = a;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<value_type>(r);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    return pow(a, p - 2);
  }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += p;
    return static_cast<value_type>(r);
  }
  value_type from_integer(const Integer& v) const {
    Integer r = v % p;
    if (r < 0) r += p;
    return static_cast<value_type>(r.get_ui());
  }
  // requires the denominator to be a unit mod p
  value_type from_rational(const Rational& q) const {
    value_type d = from_integer(q.get_den());
    if (d == 0) throw std::domain_error("denominator divisible by p");
    return mul(from_integer(q.get_num()), inv(d));
  }
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols, const T& zero) {
    Matrix m(rows.size(), cols, zero);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

template <class F>
struct Echelon {
  Matrix<typename F::value_type> rref;  // only the first rank() rows are nonzero
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

// Reduced row echelon form, pivots chosen left to right.
template <class F>
Echelon<F> row_reduce(const F& f, Matrix<typename F::value_type> a) {
  Echelon<F> out;
  const std::size_t R = a.rows(), C = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = R;
    for (std::size_t i = r; i < R; ++i)
      if (!f.is_zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(a(piv, j), a(r, j));
    auto inv = f.inv(a(r, c));
    for (std::size_t j = c; j < C; ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      auto factor = a(i, c);
      for (std::size_t j = c; j < C; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rref = std::move(a);
  return out;
}

template <class F>
std::size_t rank(const F& f, const Matrix<typename F::value_type>& a) {
  return row_reduce(f, a).rank();
}

// Basis of {x : A x = 0}.
template <class F>
std::vector<std::vector<typename F::value_type>> kernel(const F& f,
                                                         const Matrix<typename F::value_type>& a) {
  auto e = row_reduce(f, a);
  const std::size_t C = a.cols();
  std::vector<char> is_pivot(C, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<std::vector<typename F::value_type>> out;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> x(C, f.zero());
    x[free] = f.one();
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = f.neg(e.rref(k, free));
    out.push_back(std::move(x));
  }
  return out;
}

// A particular solution of A x = b (free variables set to zero), if one exists.
template <class F>
std::optional<std::vector<typename F::value_type>> solve(
    const F& f, const Matrix<typename F::value_type>& a,
    const std::vector<typename F::value_type>& b) {
  const std::size_t R = a.rows(), C = a.cols();
  Matrix<typename F::value_type> aug(R, C + 1, f.zero());
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) aug(i, j) = a(i, j);
    aug(i, C) = b[i];
  }
  auto e = row_reduce(f, std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == C) return std::nullopt;
  std::vector<typename F::value_type> x(C, f.zero());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.rref(k, C);
  return x;
}

template <class F>
std::optional<Matrix<typename F::value_type>> inverse(const F& f,
                                                       const Matrix<typename F::value_type>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<typename F::value_type> aug(n, 2 * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  auto e = row_reduce(f, std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<typename F::value_type> out(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = e.rref(i, n + j);
  return out;
}

template <class F>
Matrix<typename F::value_type> multiply(const F& f, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix<typename F::value_type> out(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <class F>
std::vector<typename F::value_type> apply(const F& f, const Matrix<typename F::value_type>& a,
                                          const std::vector<typename F::value_type>& x) {
  std::vector<typename F::value_type> out(a.rows(), f.zero());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (f.is_zero(x[j])) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = f.add(out[i], f.mul(a(i, j), x[j]));
  }
  return out;
}

template <class F>
typename F::value_type dot(const F& f, const std::vector<typename F::value_type>& a,
                           const std::vector<typename F::value_type>& b) {
  auto s = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.is_zero(a[i]) && !f.is_zero(b[i])) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

template <class F>
bool is_zero_vector(const F& f, const std::vector<typename F::value_type>& v) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

// Subspace of F^n kept in reduced row echelon form.
template <class F>
class Subspace {
 public:
  using T = typename F::value_type;

  Subspace(F f, std::size_t ambient) : f_(std::move(f)), n_(ambient) {}

  static Subspace full(F f, std::size_t n) {
    Subspace s(f, n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<T> e(n, f.zero());
      e[i] = f.one();
      s.insert(e);
    }
    return s;
  }

  const F& field() const { return f_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::vector<T>>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      auto c = v[pivots_[k]];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = pivots_[k]; j < n_; ++j)
        v[j] = f_.sub(v[j], f_.mul(c, rows_[k][j]));
    }
    return v;
  }

  bool contains(const std::vector<T>& v) const { return is_zero_vector(f_, reduce(v)); }

  bool contains(const Subspace& other) const {
    for (const auto& r : other.rows_)
      if (!contains(r)) return false;
    return true;
  }

  // returns true when the dimension grew
  bool insert(const std::vector<T>& v0) {
    if (v0.size() != n_) throw std::invalid_argument("subspace ambient mismatch");
    auto v = reduce(v0);
    std::size_t p = 0;
    while (p < n_ && f_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    auto inv = f_.inv(v[p]);
    for (std::size_t j = p; j < n_; ++j) v[j] = f_.mul(v[j], inv);
    for (auto& r : rows_) {
      auto c = r[p];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = p; j < n_; ++j) r[j] = f_.sub(r[j], f_.mul(c, v[j]));
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

  void insert_all(const Subspace& other) {
    for (const auto& r : other.rows_) insert(r);
  }

  // {x : <x, b> = 0 for all basis rows b} under the standard dot product
  Subspace annihilator() const {
    Subspace out(f_, n_);
    if (rows_.empty()) return full(f_, n_);
    auto m = Matrix<T>::from_rows(rows_, n_, f_.zero());
    for (auto& k : kernel(f_, m)) out.insert(k);
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  F f_;
  std::size_t n_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
  Subspace<F> out = a;
  out.insert_all(b);
  return out;
}

template <class F>
Subspace<F> subspace_intersect(const Subspace<F>& a, const Subspace<F>& b) {
  return subspace_sum(a.annihilator(), b.annihilator()).annihilator();
}

using QSubspace = Subspace<RationalField>;
using PSubspace = Subspace<PrimeField>;

// Row-style Hermite normal form of an integer matrix; returns the nonzero rows
// (upper triangular, positive pivots, entries above pivots reduced).
std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows,
                                               std::size_t cols);

// HNF basis of the Z-span of rational vectors, as rational vectors.
std::vector<QVector> lattice_basis(const std::vector<QVector>& vectors, std::size_t cols);

Integer common_denominator(const std::vector<QVector>& vectors);
Integer binomial(long n, long k);
Integer factorial(long n);
bool is_prime(unsigned long p);

Matrix<PrimeField::value_type> reduce_matrix(const PrimeField& f, const QMatrix& a);

}  // namespace kmlab
