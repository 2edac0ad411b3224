#include "ztower/artin_ihara.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ztower/errors.hpp"

namespace ztower {

bool CharacterIndex::is_trivial() const {
  return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

CharacterIndex exact_level(const CharacterIndex& chi, std::uint32_t ell) {
  if (chi.is_trivial()) return CharacterIndex{0, Voltage(chi.a.size(), 0)};
  CharacterIndex out = chi;
  while (out.n > 0 &&
         std::all_of(out.a.begin(), out.a.end(), [ell](std::int64_t x) { return x % ell == 0; })) {
    for (auto& x : out.a) x /= ell;
    --out.n;
  }
  return out;
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 result = 1 % m, b = base % m;
  while (e > 0) {
    if (e & 1) result = result * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= x; ++q) {
    if (x % q == 0) {
      out.push_back(q);
      while (x % q == 0) x /= q;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

std::uint64_t power_of(std::uint32_t ell, std::uint32_t k) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= ell;
  return r;
}

// Scales every coordinate by the unit u modulo m.
Voltage scale(const Voltage& a, std::uint64_t u, std::uint64_t m) {
  Voltage out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<std::int64_t>(
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(a[i])) * u % m);
  }
  return out;
}

bool is_primitive(const Voltage& a, std::uint32_t ell) {
  return std::any_of(a.begin(), a.end(), [ell](std::int64_t x) { return x % ell != 0; });
}

// Closure of `start` under the generators; marks visited indices and returns
// the members when `collect` is set, otherwise only the count.
std::uint64_t close_orbit(const Voltage& start, const std::vector<std::uint64_t>& gens,
                          const GroupIndexer& group, std::vector<char>& visited, bool collect,
                          std::vector<Voltage>& members) {
  std::deque<Voltage> todo;
  visited[group.encode(start)] = 1;
  todo.push_back(start);
  std::uint64_t count = 0;
  while (!todo.empty()) {
    Voltage x = std::move(todo.front());
    todo.pop_front();
    ++count;
    for (std::uint64_t g : gens) {
      Voltage y = scale(x, g, group.modulus());
      const std::uint64_t idx = group.encode(y);
      if (!visited[idx]) {
        visited[idx] = 1;
        todo.push_back(std::move(y));
      }
    }
    if (collect) members.push_back(std::move(x));
  }
  return count;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned w = 0; w < n; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

BigInt product_tree(std::vector<BigInt> values) {
  if (values.empty()) return 1;
  while (values.size() > 1) {
    std::vector<BigInt> next;
    next.reserve((values.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(values[i] * values[i + 1]);
    if (values.size() % 2 == 1) next.push_back(std::move(values.back()));
    values = std::move(next);
  }
  return values.front();
}

}  // namespace

std::vector<std::uint64_t> unit_group_generators(std::uint32_t ell, std::uint32_t k) {
  if (k == 0) return {};
  const std::uint64_t m = power_of(ell, k);
  if (ell == 2) {
    if (k == 1) return {};
    if (k == 2) return {3};
    return {m - 1, 5};
  }
  const std::uint64_t phi = m / ell * (ell - 1);
  const auto factors = prime_factors(phi);
  for (std::uint64_t g = 2; g < m; ++g) {
    if (g % ell == 0) continue;
    bool generator = true;
    for (std::uint64_t q : factors) {
      if (pow_mod(g, phi / q, m) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return {g};
  }
  throw std::logic_error("no primitive root found");
}

std::vector<CharacterOrbit> enumerate_orbits(std::uint32_t ell, std::uint32_t n, std::uint32_t d) {
  if (n == 0) throw std::invalid_argument("orbit enumeration needs n >= 1");
  GroupIndexer group(ell, n, d);
  const auto gens = unit_group_generators(ell, n);
  std::vector<char> visited(group.size(), 0);
  visited[0] = 1;
  std::vector<CharacterOrbit> out;
  std::vector<Voltage> members;
  for (std::uint64_t idx = 1; idx < group.size(); ++idx) {
    if (visited[idx]) continue;
    const Voltage rep = group.decode(idx);
    members.clear();
    close_orbit(rep, gens, group, visited, true, members);
    CharacterOrbit orbit;
    orbit.representative = CharacterIndex{n, rep};
    orbit.exact_level = exact_level(orbit.representative, ell).n;
    orbit.size = members.size();
    std::sort(members.begin(), members.end());
    for (auto& m : members) orbit.members.push_back(CharacterIndex{n, std::move(m)});
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<CharacterOrbit> primitive_orbits(std::uint32_t ell, std::uint32_t k, std::uint32_t d) {
  if (k == 0) throw std::invalid_argument("primitive orbits need k >= 1");
  GroupIndexer group(ell, k, d);
  const auto gens = unit_group_generators(ell, k);
  std::vector<char> visited(group.size(), 0);
  std::vector<CharacterOrbit> out;
  std::vector<Voltage> unused;
  for (std::uint64_t idx = 0; idx < group.size(); ++idx) {
    if (visited[idx]) continue;
    const Voltage rep = group.decode(idx);
    if (!is_primitive(rep, ell)) continue;
    CharacterOrbit orbit;
    orbit.size = close_orbit(rep, gens, group, visited, false, unused);
    orbit.representative = CharacterIndex{k, rep};
    orbit.exact_level = k;
    out.push_back(std::move(orbit));
  }
  return out;
}

namespace {

std::int64_t dot_mod(const Voltage& a, const Voltage& b, std::uint64_t m) {
  __int128 acc = 0;
  const auto mm = static_cast<__int128>(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    __int128 bi = b[i] % mm;
    acc = (acc + static_cast<__int128>(a[i]) * bi) % mm;
  }
  if (acc < 0) acc += mm;
  return static_cast<std::int64_t>(acc);
}

void check_character(const VoltageSpec& spec, const CharacterIndex& chi) {
  if (chi.a.size() != spec.d) throw std::invalid_argument("character rank differs from d");
}

}  // namespace

Matrix<CycInt> twisted_adjacency(const VoltageSpec& spec, const CharacterIndex& chi) {
  check_character(spec, chi);
  const CycLevel level{spec.ell, chi.n};
  const std::uint64_t m = level.order();
  const std::size_t g = spec.base.vertex_count();
  Matrix<CycInt> a(g, std::vector<CycInt>(g, CycInt(level)));
  const auto volt = directed_voltages(spec);
  for (EdgeId e = 0; e < spec.base.directed_edge_count(); ++e) {
    a[spec.base.origin(e)][spec.base.terminus(e)] += zeta_power(level, dot_mod(chi.a, volt[e], m));
  }
  return a;
}

CycInt l_value_at_one(const VoltageSpec& spec, const CharacterIndex& chi) {
  const CycLevel level{spec.ell, chi.n};
  auto a = twisted_adjacency(spec, chi);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = -a[i][j];
    a[i][i] += CycInt(level, BigInt(static_cast<unsigned long>(spec.base.valency(static_cast<VertexId>(i)))));
  }
  return berkowitz_determinant(a, CycInt(level), CycInt(level, BigInt(1)));
}

CycInt l_value_bouquet(const VoltageSpec& spec, const CharacterIndex& chi) {
  check_character(spec, chi);
  if (spec.base.vertex_count() != 1) throw std::invalid_argument("bouquet fast path on a non-bouquet");
  const CycLevel level{spec.ell, chi.n};
  const std::uint64_t m = level.order();
  CycInt sum(level);
  for (const auto& alpha : spec.alpha) sum += epsilon(level, dot_mod(chi.a, alpha, m));
  return sum;
}

UPoly<CycInt> ihara_h_twisted(const VoltageSpec& spec, const CharacterIndex& chi) {
  const CycLevel level{spec.ell, chi.n};
  const CycInt zero(level);
  const CycInt one(level, BigInt(1));
  const auto a = twisted_adjacency(spec, chi);
  const std::size_t g = a.size();
  using P = UPoly<CycInt>;
  Matrix<P> m(g, std::vector<P>(g, P(zero)));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      std::vector<CycInt> c(3, zero);
      if (i == j) {
        c[0] = one;
        c[2] = CycInt(level, BigInt(static_cast<long>(spec.base.valency(static_cast<VertexId>(i))) - 1));
      }
      c[1] = -a[i][j];
      m[i][j] = P(std::move(c), zero);
    }
  }
  return berkowitz_determinant(m, P(zero), P({one}, zero));
}

LValueRecord orbit_value(const VoltageSpec& spec, const CharacterOrbit& orbit) {
  const CharacterIndex chi = exact_level(orbit.representative, spec.ell);
  if (chi.n == 0) throw std::invalid_argument("orbit of the trivial character");
  const CycInt value =
      spec.base.vertex_count() == 1 ? l_value_bouquet(spec, chi) : l_value_at_one(spec, chi);
  if (value.is_zero()) {
    std::ostringstream msg;
    msg << "h_X(1, psi) vanishes at character (";
    for (std::size_t i = 0; i < chi.a.size(); ++i) msg << (i ? "," : "") << chi.a[i];
    msg << ") of order " << spec.ell << "^" << chi.n << "; the layer is disconnected";
    throw DisconnectedLayer(msg.str());
  }
  LValueRecord record;
  record.orbit = orbit;
  record.integer_value = norm_to_int(value);
  record.ord_ell = ord_prime(record.integer_value, spec.ell);
  return record;
}

TowerEvaluator::TowerEvaluator(VoltageSpec spec, unsigned jobs)
    : spec_(std::move(spec)), jobs_(std::max(jobs, 1u)) {
  check_spec_shape(spec_);
  require_valid_base(spec_.base);
  base_kappa_ = kappa_matrix_tree(spec_.base, spec_.ell);
}

const std::vector<LValueRecord>& TowerEvaluator::level_records(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("level records start at k = 1");
  while (levels_.size() < k) {
    const auto level = static_cast<std::uint32_t>(levels_.size() + 1);
    const auto orbits = primitive_orbits(spec_.ell, level, spec_.d);
    std::vector<LValueRecord> records(orbits.size());
    parallel_for(orbits.size(), jobs_,
                 [&](std::size_t i) { records[i] = orbit_value(spec_, orbits[i]); });
    levels_.push_back(std::move(records));
  }
  return levels_[k - 1];
}

std::vector<LValueRecord> TowerEvaluator::layer_records(std::uint32_t n) {
  std::vector<LValueRecord> out;
  for (std::uint32_t k = 1; k <= n; ++k) {
    const std::uint64_t lift = power_of(spec_.ell, n - k);
    for (const auto& r : level_records(k)) {
      LValueRecord lifted = r;
      for (auto& x : lifted.orbit.representative.a) x *= static_cast<std::int64_t>(lift);
      lifted.orbit.representative.n = n;
      out.push_back(std::move(lifted));
    }
  }
  return out;
}

std::int64_t TowerEvaluator::ord_kappa(std::uint32_t n) {
  auto total = static_cast<std::int64_t>(base_kappa_.ord_ell) -
               static_cast<std::int64_t>(spec_.d) * static_cast<std::int64_t>(n);
  for (std::uint32_t k = 1; k <= n; ++k) {
    for (const auto& r : level_records(k)) total += static_cast<std::int64_t>(r.ord_ell);
  }
  return total;
}

TreeCount TowerEvaluator::kappa(std::uint32_t n) {
  std::vector<BigInt> factors{base_kappa_.kappa};
  for (std::uint32_t k = 1; k <= n; ++k) {
    for (const auto& r : level_records(k)) factors.push_back(r.integer_value);
  }
  BigInt product = product_tree(std::move(factors));
  BigInt divisor;
  mpz_ui_pow_ui(divisor.get_mpz_t(), spec_.ell, static_cast<unsigned long>(spec_.d) * n);
  if (!mpz_divisible_p(product.get_mpz_t(), divisor.get_mpz_t())) {
    throw RouteMismatch("ell^(d n) does not divide kappa_X times the orbit products at layer " +
                        std::to_string(n));
  }
  TreeCount out;
  out.ell = spec_.ell;
  mpz_divexact(out.kappa.get_mpz_t(), product.get_mpz_t(), divisor.get_mpz_t());
  if (sgn(out.kappa) <= 0) throw RouteMismatch("product formula gave a non-positive tree count");
  out.ord_ell = ord_prime(out.kappa, spec_.ell);
  return out;
}

TreeCount kappa_via_lfunctions(const VoltageSpec& spec, std::uint32_t n, unsigned jobs) {
  TowerEvaluator eval(spec, jobs);
  return eval.kappa(n);
}

}  // namespace ztower
