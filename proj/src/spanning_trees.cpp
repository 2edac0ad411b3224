#include "ztower/spanning_trees.hpp"

#include <stdexcept>
#include <utility>

#include "ztower/errors.hpp"

namespace ztower {

std::uint64_t ord_prime(const BigInt& k, std::uint32_t ell) {
  if (sgn(k) == 0) throw std::domain_error("valuation of zero is infinite");
  if (ell < 2) throw std::invalid_argument("ord_prime needs a prime >= 2");
  mpz_class rest;
  mpz_class p = ell;
  return mpz_remove(rest.get_mpz_t(), k.get_mpz_t(), p.get_mpz_t());
}

BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n) {
  if (m.size() != n * n) throw std::invalid_argument("matrix size mismatch");
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  mpz_class t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k * n + k]) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && sgn(m[pivot * n + k]) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[pivot * n + j]);
      sign = -sign;
    }
    mpz_srcptr pkk = m[k * n + k].get_mpz_t();
    mpz_srcptr pprev = prev.get_mpz_t();
    const bool unit_prev = prev == 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      mpz_ptr pik = m[i * n + k].get_mpz_t();
      const bool zero_ik = mpz_sgn(pik) == 0;
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_ptr pij = m[i * n + j].get_mpz_t();
        // m_ij <- (m_kk m_ij - m_ik m_kj) / prev
        mpz_mul(t.get_mpz_t(), pkk, pij);
        if (!zero_ik) mpz_submul(t.get_mpz_t(), pik, m[k * n + j].get_mpz_t());
        if (unit_prev) {
          mpz_swap(pij, t.get_mpz_t());
        } else {
          mpz_divexact(pij, t.get_mpz_t(), pprev);
        }
      }
      mpz_set_ui(pik, 0);
    }
    prev = m[k * n + k];
  }
  BigInt det = m[(n - 1) * n + (n - 1)];
  return sign < 0 ? BigInt(-det) : det;
}

std::vector<BigInt> reduced_laplacian(const MultiGraph& g, std::size_t removed) {
  const std::size_t n = g.vertex_count();
  if (removed >= n) throw std::out_of_range("removed vertex out of range");
  const std::size_t r = n - 1;
  auto index = [removed](std::size_t v) { return v < removed ? v : v - 1; };
  std::vector<BigInt> lap(r * r, 0);
  for (const auto& e : g.edges()) {
    // Loops add one to D and one to A per directed edge; they cancel.
    if (e.origin == e.terminus) continue;
    if (e.origin == removed) continue;
    std::size_t i = index(e.origin);
    lap[i * r + i] += 1;
    if (e.terminus != removed) lap[i * r + index(e.terminus)] -= 1;
  }
  return lap;
}

TreeCount kappa_matrix_tree(const MultiGraph& g, std::uint32_t ell) {
  if (!g.is_connected()) throw DisconnectedLayer("spanning trees of a disconnected graph");
  const std::size_t r = g.vertex_count() - 1;
  TreeCount out;
  out.ell = ell;
  out.kappa = bareiss_determinant(reduced_laplacian(g), r);
  out.ord_ell = ord_prime(out.kappa, ell);
  return out;
}

}  // namespace ztower
