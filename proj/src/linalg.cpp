#include "kmlab/linalg.hpp"

#include <map>

namespace kmlab {

namespace {

void axpy(std::vector<Integer>& y, const Integer& a, const std::vector<Integer>& x) {
  if (a == 0) return;
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

}  // namespace

std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows,
                                               std::size_t cols) {
  // pivot column -> row; rows kept with positive pivot entries
  std::map<std::size_t, std::vector<Integer>> basis;
  for (auto& v : rows) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (v[c] == 0) continue;
      auto it = basis.find(c);
      if (it == basis.end()) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        basis.emplace(c, std::move(v));
        break;
      }
      auto& h = it->second;
      if (v[c] % h[c] == 0) {
        Integer q = v[c] / h[c];
        axpy(v, -q, h);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[c].get_mpz_t(), v[c].get_mpz_t());
      std::vector<Integer> nh(cols), nv(cols);
      Integer vc = v[c] / g, hc = h[c] / g;
      for (std::size_t j = 0; j < cols; ++j) {
        nh[j] = s * h[j] + t * v[j];
        nv[j] = vc * h[j] - hc * v[j];
      }
      if (nh[c] < 0)
        for (auto& x : nh) x = -x;
      h = std::move(nh);
      v = std::move(nv);
    }
  }
  std::vector<std::vector<Integer>> out;
  for (auto& [c, h] : basis) out.push_back(h);
  // reduce entries above each pivot into [0, pivot)
  std::vector<std::size_t> piv;
  for (auto& [c, h] : basis) piv.push_back(c);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::size_t c = piv[k];
    for (std::size_t i = 0; i < k; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), out[i][c].get_mpz_t(), out[k][c].get_mpz_t());
      axpy(out[i], -q, out[k]);
    }
  }
  return out;
}

Integer common_denominator(const std::vector<QVector>& vectors) {
  Integer l = 1;
  for (const auto& v : vectors)
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

std::vector<QVector> lattice_basis(const std::vector<QVector>& vectors, std::size_t cols) {
  Integer l = common_denominator(vectors);
  std::vector<std::vector<Integer>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<Integer> r(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      Rational s = v[j] * l;
      r[j] = s.get_num();
    }
    rows.push_back(std::move(r));
  }
  auto h = hermite_rows(std::move(rows), cols);
  std::vector<QVector> out;
  for (auto& r : h) {
    QVector q(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      q[j] = Rational(r[j], l);
      q[j].canonicalize();
    }
    out.push_back(std::move(q));
  }
  return out;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Matrix<PrimeField::value_type> reduce_matrix(const PrimeField& f, const QMatrix& a) {
  Matrix<PrimeField::value_type> out(a.rows(), a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.from_rational(a(i, j));
  return out;
}

}  // namespace kmlab
