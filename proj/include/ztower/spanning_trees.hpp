#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ztower/int_poly.hpp"
#include "ztower/multigraph.hpp"

namespace ztower {

struct TreeCount {
  BigInt kappa;
  std::uint64_t ord_ell = 0;
  std::uint32_t ell = 0;
};

/// Largest e with ell^e | k. Throws std::domain_error for k = 0.
std::uint64_t ord_prime(const BigInt& k, std::uint32_t ell);

/// Determinant of a dense row-major n x n integer matrix by fraction-free
/// (Bareiss) elimination with row pivoting. The matrix is consumed.
BigInt bareiss_determinant(std::vector<BigInt> matrix, std::size_t n);

/// Laplacian D - A with row and column `removed` deleted, row-major.
std::vector<BigInt> reduced_laplacian(const MultiGraph& g, std::size_t removed = 0);

/// Number of spanning trees by the Matrix-Tree theorem. Throws
/// DisconnectedLayer for disconnected graphs.
TreeCount kappa_matrix_tree(const MultiGraph& g, std::uint32_t ell);

}  // namespace ztower
