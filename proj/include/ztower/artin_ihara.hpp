#pragma once

// Twisted adjacency matrices, special values h_X(1, psi) of Artin-Ihara
// L-functions, Galois orbits of characters of G(n) = (Z/ell^n)^d, and the
// product-formula route to the spanning-tree count of each layer:
//
//   ell^(d n) * kappa_n = kappa_X * prod over nontrivial orbits Psi of h_X(1, Psi).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ztower/cyclotomic.hpp"
#include "ztower/determinant.hpp"
#include "ztower/spanning_trees.hpp"
#include "ztower/upoly.hpp"
#include "ztower/voltage.hpp"

namespace ztower {

/// The character psi_a(b) = zeta_{ell^n}^(a . b) of G(n).
struct CharacterIndex {
  std::uint32_t n = 0;
  Voltage a;  // entries in [0, ell^n)

  bool is_trivial() const;
  friend bool operator==(const CharacterIndex&, const CharacterIndex&) = default;
};

/// The same character written at its exact level: psi_a = psi_{a'} with a'
/// primitive at level k, a = ell^(n-k) a'. Level 0 for the trivial character.
CharacterIndex exact_level(const CharacterIndex& chi, std::uint32_t ell);

struct CharacterOrbit {
  CharacterIndex representative;  // lexicographically least member
  std::uint32_t exact_level = 0;  // the character has order ell^exact_level
  std::uint64_t size = 0;
  std::vector<CharacterIndex> members;  // empty when not materialised
};

/// Generators of (Z/ell^k)^x: one primitive root for odd ell, {-1, 5} for
/// ell = 2 and k >= 3, {-1} for k = 2, nothing for the trivial group.
std::vector<std::uint64_t> unit_group_generators(std::uint32_t ell, std::uint32_t k);

/// Orbits of the diagonal (Z/ell^n)^x action on G(n) minus {0}, each with its
/// members, sorted by representative.
std::vector<CharacterOrbit> enumerate_orbits(std::uint32_t ell, std::uint32_t n, std::uint32_t d);

/// Orbits of primitive vectors of (Z/ell^k)^d (the characters of exact order
/// ell^k), representatives only. Scaling by ell^(n-k) maps them bijectively
/// onto the orbits of G(n) of exact order ell^k.
std::vector<CharacterOrbit> primitive_orbits(std::uint32_t ell, std::uint32_t k, std::uint32_t d);

/// A_psi with entry (i, j) the sum of psi(alpha_n(e)) over directed edges e
/// from v_i to v_j.
Matrix<CycInt> twisted_adjacency(const VoltageSpec& spec, const CharacterIndex& chi);

/// h_X(1, psi) = det(D - A_psi), by a division-free determinant.
CycInt l_value_at_one(const VoltageSpec& spec, const CharacterIndex& chi);

/// For a bouquet: sum over section edges of eps(a . alpha(s)).
CycInt l_value_bouquet(const VoltageSpec& spec, const CharacterIndex& chi);

/// h_X(u, psi) = det(I - A_psi u + (D - I) u^2).
UPoly<CycInt> ihara_h_twisted(const VoltageSpec& spec, const CharacterIndex& chi);

struct LValueRecord {
  CharacterOrbit orbit;
  BigInt integer_value;  // product of h_X(1, psi) over the orbit
  std::uint64_t ord_ell = 0;
};

/// Orbit product, computed as the absolute norm of the representative's
/// value at its exact level. Throws DisconnectedLayer when that value is 0.
LValueRecord orbit_value(const VoltageSpec& spec, const CharacterOrbit& orbit);

/// Evaluates the L-value records of a whole tower level by level, caching
/// each level so consecutive layers share work.
class TowerEvaluator {
 public:
  explicit TowerEvaluator(VoltageSpec spec, unsigned jobs = 1);

  const VoltageSpec& spec() const { return spec_; }
  const TreeCount& base_kappa() const { return base_kappa_; }

  /// Records for characters of exact order ell^k (k >= 1).
  const std::vector<LValueRecord>& level_records(std::uint32_t k);

  /// All nontrivial orbit records of G(n), sorted by exact level then
  /// representative, with representatives written at level n.
  std::vector<LValueRecord> layer_records(std::uint32_t n);

  /// ord_ell(kappa_n) = -d n + ord_ell(kappa_X) + sum of orbit valuations.
  std::int64_t ord_kappa(std::uint32_t n);

  /// kappa_n itself, divided out exactly; throws RouteMismatch if
  /// ell^(d n) does not divide the product.
  TreeCount kappa(std::uint32_t n);

 private:
  VoltageSpec spec_;
  unsigned jobs_;
  TreeCount base_kappa_;
  std::vector<std::vector<LValueRecord>> levels_;  // index k - 1
};

/// kappa of layer n through the product formula.
TreeCount kappa_via_lfunctions(const VoltageSpec& spec, std::uint32_t n, unsigned jobs = 1);

}  // namespace ztower
