// Constructions for the group catalog: cyclic groups, metacyclic Burnside
// groups, U(3,3), Z_9 ⋊ Z_3, S_3, abelian groups by invariants, and direct
// products of any of these.

#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcurv13/group_table.hpp"

namespace pcurv13::groups {

struct BurnsideParams {
  std::int64_t m = 1;
  std::int64_t n = 1;
  std::int64_t r = 1;
};

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  if (mod == 1) return 0;
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

/// Multiplicative order of r modulo m (1 when m = 1). Requires gcd(r, m) = 1.
inline std::int64_t multiplicative_order(std::int64_t r, std::int64_t m) {
  if (m == 1) return 1;
  if (std::gcd(r, m) != 1) throw std::invalid_argument("r is not a unit modulo m");
  std::int64_t x = ((r % m) + m) % m;
  std::int64_t k = 1;
  while (x != 1) {
    x = x * (((r % m) + m) % m) % m;
    ++k;
  }
  return k;
}

/// Empty string when the parameters define a Burnside group, else the failing condition.
inline std::string burnside_violation(const BurnsideParams& p) {
  if (p.m < 1 || p.n < 1 || p.r < 1) return "m, n, r must be positive";
  if (p.m * p.n > static_cast<std::int64_t>(kMaxOrder)) return "m*n exceeds the order cap of 512";
  const std::int64_t g = std::gcd((p.r - 1) * p.n, p.m);
  if (g != 1) return "gcd((r-1)*n, m) = " + std::to_string(g) + ", expected 1";
  if (pow_mod(p.r, p.n, p.m) != 1 % p.m) return "r^n is not 1 modulo m";
  return {};
}

inline bool is_valid(const BurnsideParams& p) { return burnside_violation(p).empty(); }

/// Z_m ⋊ Z_n with B A B^{-1} = A^r. Element (i, j) has index i + m*j and stands
/// for A^i B^j; the product is (i + r^j i', j + j'). Needs r^n = 1 mod m.
inline GroupTable semidirect_cyclic(std::int64_t m, std::int64_t n, std::int64_t r) {
  if (m < 1 || n < 1 || m * n > static_cast<std::int64_t>(kMaxOrder))
    throw std::invalid_argument("semidirect product out of range");
  if (m > 1 && (std::gcd(r, m) != 1 || pow_mod(r, n, m) != 1))
    throw std::invalid_argument("r^n must be 1 modulo m");
  const auto size = static_cast<std::size_t>(m * n);
  std::vector<std::int64_t> rpow(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) rpow[j] = pow_mod(r, j, m);
  std::vector<Element> table(size * size);
  for (std::int64_t a = 0; a < m * n; ++a)
    for (std::int64_t b = 0; b < m * n; ++b) {
      const std::int64_t i = a % m, j = a / m, i2 = b % m, j2 = b / m;
      const std::int64_t ni = (i + rpow[j] * i2) % m;
      const std::int64_t nj = (j + j2) % n;
      table[a * m * n + b] = static_cast<Element>(ni + m * nj);
    }
  return GroupTable(size, std::move(table));
}

inline GroupTable build_burnside(const BurnsideParams& p) {
  if (auto why = burnside_violation(p); !why.empty()) throw std::invalid_argument("invalid Burnside parameters: " + why);
  return semidirect_cyclic(p.m, p.n, p.r);
}

/// A = (1, 0) and B = (0, 1) in build_burnside's indexing.
inline Element burnside_a(const BurnsideParams& p) { return p.m > 1 ? 1 : 0; }
inline Element burnside_b(const BurnsideParams& p) { return p.n > 1 ? static_cast<Element>(p.m) : 0; }

inline GroupTable cyclic(std::size_t n) { return semidirect_cyclic(static_cast<std::int64_t>(n), 1, 1); }

/// (a, b) has index a + |A| * b.
inline GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > kMaxOrder) throw std::invalid_argument("direct product exceeds the order cap of 512");
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Element first = a.mul(static_cast<Element>(x % na), static_cast<Element>(y % na));
      const Element second = b.mul(static_cast<Element>(x / na), static_cast<Element>(y / na));
      table[x * n + y] = static_cast<Element>(first + na * second);
    }
  return GroupTable(n, std::move(table));
}

/// Upper unitriangular 3x3 matrices over Z_3, entries (x, y, z) in
/// [[1, x, z], [0, 1, y], [0, 0, 1]]. Index x + 3y + 9z.
inline GroupTable unitriangular_33() {
  std::vector<Element> table(27 * 27);
  for (int a = 0; a < 27; ++a)
    for (int b = 0; b < 27; ++b) {
      const int x = a % 3, y = (a / 3) % 3, z = a / 9;
      const int x2 = b % 3, y2 = (b / 3) % 3, z2 = b / 9;
      const int nx = (x + x2) % 3, ny = (y + y2) % 3, nz = (z + z2 + x * y2) % 3;
      table[a * 27 + b] = static_cast<Element>(nx + 3 * ny + 9 * nz);
    }
  return GroupTable(27, std::move(table));
}

/// Z_9 ⋊ Z_3 with b a b^{-1} = a^4.
inline GroupTable z9_semi_z3() { return semidirect_cyclic(9, 3, 4); }

/// S_3 as permutations of {0,1,2}; the identity comes first.
inline GroupTable symmetric_3() {
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  auto index_of = [&](const int* p) {
    for (int k = 0; k < 6; ++k)
      if (perms[k][0] == p[0] && perms[k][1] == p[1] && perms[k][2] == p[2]) return k;
    return -1;
  };
  std::vector<Element> table(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int c[3];
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // (a∘b)(i)
      table[a * 6 + b] = static_cast<Element>(index_of(c));
    }
  return GroupTable(6, std::move(table));
}

/// Z_{d1} × Z_{d2} × ...
inline GroupTable abelian(const std::vector<std::size_t>& invariants) {
  GroupTable g = cyclic(1);
  for (auto d : invariants) g = direct_product(g, cyclic(d));
  return g;
}

namespace detail {

class NameParser {
 public:
  explicit NameParser(std::string_view s) : s_(s) {}

  GroupTable parse() {
    GroupTable g = factor();
    while (skip_spaces(), pos_ < s_.size()) {
      if (!consume_product_sign()) fail("expected 'x' between factors");
      g = direct_product(g, factor());
    }
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("unknown group name '" + std::string(s_) + "': " + why);
  }

  void skip_spaces() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume(std::string_view token) {
    skip_spaces();
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  bool consume_product_sign() { return consume("×") || consume("x") || consume("*"); }

  std::int64_t number() {
    skip_spaces();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 4) fail("number too large");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  GroupTable factor() {
    if (consume("U33") || consume("U(3,3)")) return unitriangular_33();
    if (consume("Z9semiZ3") || consume("Z9:Z3")) return z9_semi_z3();
    if (consume("S3") || consume("S_3")) return symmetric_3();
    if (consume("Burnside(") || consume("B(")) {
      BurnsideParams p;
      p.m = number();
      if (!consume(",")) fail("expected ','");
      p.n = number();
      if (!consume(",")) fail("expected ','");
      p.r = number();
      if (!consume(")")) fail("expected ')'");
      return build_burnside(p);
    }
    if (consume("Z_") || consume("Z")) {
      const std::int64_t n = number();
      if (n < 1 || n > static_cast<std::int64_t>(kMaxOrder)) fail("cyclic order out of range");
      return cyclic(static_cast<std::size_t>(n));
    }
    fail("unrecognised factor");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Names: Z_n (or Zn), U33, Z9semiZ3, S3, Burnside(m,n,r), and products of these
/// joined by 'x' or '×', e.g. "Z_9xZ_3" or "Z6 x Burnside(7,3,2)".
inline GroupTable build_standard(std::string_view name) { return detail::NameParser(name).parse(); }

}  // namespace pcurv13::groups
