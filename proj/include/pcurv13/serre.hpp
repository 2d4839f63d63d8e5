// Mod-p Serre spectral sequence for a Borel fibration M -> M_G -> BG with
// G = Z_p x Z_p and H^*(M; F_p) = H^*(S^2 x S^3; F_p).
//
// E_2 = B (x) F with B = F_p[t1, t2] (x) Lambda(s1, s2) (|t_i| = 2, |s_i| = 1) and
// F spanned by 1, y, x, xy in degrees 0, 2, 3, 5. The window is m + n <= 7.
// Differentials are searched as linear maps on page subquotients, subject to
// B-linearity and the Leibniz rule on products of fiber-row-2 and fiber-row-3
// classes. The relations y^2 = 0 and x^2 = 0 are not imposed, so the search
// space contains every genuine spectral sequence and possibly more.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pcurv13/fp_linalg.hpp"
#include "pcurv13/parallel.hpp"

namespace pcurv13::serre {

inline constexpr int kWindow = 7;
inline constexpr int kMaxDim = kWindow + 1;  // dim B^7
inline constexpr int kFiberDegrees[4] = {0, 2, 3, 5};
inline constexpr int kLastPage = 6;
inline constexpr int kInfinityPage = kLastPage + 1;

/// s1^e1 s2^e2 t1^a t2^b
struct Monomial {
  int e1 = 0, e2 = 0, a = 0, b = 0;
  int degree() const { return e1 + e2 + 2 * (a + b); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Basis of H^k(BG): exterior part major (1, s1, s2, s1s2), then t1^a t2^b by decreasing a.
inline std::vector<Monomial> base_basis(int k) {
  std::vector<Monomial> out;
  const int ext[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (auto& e : ext) {
    const int rest = k - e[0] - e[1];
    if (rest < 0 || rest % 2 != 0) continue;
    for (int a = rest / 2; a >= 0; --a) out.push_back({e[0], e[1], a, rest / 2 - a});
  }
  return out;
}

inline void require_odd_prime(std::int64_t p) {
  bool prime = p >= 3 && p < 256;
  for (std::int64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
  if (!prime || p % 2 == 0) throw std::invalid_argument("p must be an odd prime below 256, got " + std::to_string(p));
}

inline std::vector<std::int64_t> bg_dims(std::int64_t p, int max_deg) {
  require_odd_prime(p);
  if (max_deg < 0) throw std::invalid_argument("max_deg must be >= 0");
  std::vector<std::int64_t> dims;
  for (int k = 0; k <= max_deg; ++k) {
    std::int64_t n = 0;
    for (int ext : {0, 1, 1, 2})
      if (k >= ext && (k - ext) % 2 == 0) n += (k - ext) / 2 + 1;
    dims.push_back(n);
  }
  return dims;
}

/// Dimensions E_r^{m,n} over the window; r = kInfinityPage marks E_infinity.
/// Entries at total degree 7 only see incoming differentials.
struct BigradedPage {
  int r = 2;
  std::map<std::pair<int, int>, std::int64_t> dims;

  std::int64_t at(int m, int n) const {
    auto it = dims.find({m, n});
    return it == dims.end() ? 0 : it->second;
  }
  std::int64_t total(int degree) const {
    std::int64_t s = 0;
    for (const auto& [pos, d] : dims)
      if (pos.first + pos.second == degree) s += d;
    return s;
  }
  friend bool operator==(const BigradedPage&, const BigradedPage&) = default;
};

inline BigradedPage e2_page(std::int64_t p) {
  const auto b = bg_dims(p, kWindow);
  BigradedPage page;
  for (int n : kFiberDegrees)
    for (int m = 0; m + n <= kWindow; ++m) page.dims[{m, n}] = b[m];
  return page;
}

/// Values of the differentials on module generators, plus coordinates for
/// whatever freedom remains on each page once those are fixed.
struct DifferentialChoice {
  std::array<std::uint32_t, 3> d2_x{};  // on t1 y, t2 y, s1s2 y
  std::array<std::uint32_t, 4> d3_y{};  // on s1t1, s1t2, s2t1, s2t2
  std::map<int, std::vector<std::uint32_t>> free;  // page -> coordinates, zero-padded
};

struct VerdictReport {
  std::int64_t p = 0;
  std::string choices_examined;  // exact decimal count; can exceed 64 bits
  std::int64_t min_deg6_survivors = 0;
  std::int64_t min_e_inf_6_0 = 0;
  bool verdict = false;
};

/// A free G-action makes H^i(M_G) vanish above the manifold dimension.
inline int free_quotient_ceiling(int manifold_dim) {
  if (manifold_dim < 1) throw std::invalid_argument("manifold dimension must be positive");
  return manifold_dim;
}

namespace detail {

using Vec = std::array<fp::Scalar, kMaxDim>;

struct Position {
  int m = 0;
  int row = 0;  // index into kFiberDegrees
  int n() const { return kFiberDegrees[row]; }
  int total() const { return m + n(); }
  int dim() const { return m + 1; }
};

/// Page data at one position: cycles Z and boundaries B inside E_2^{m,n} = B^m,
/// class representatives C spanning a complement of B in Z, and the inverse of
/// the basis [B; C; completion] for reading off coordinates.
struct PosData {
  std::uint8_t kB = 0, kZ = 0, e = 0;
  std::array<Vec, kMaxDim> B{}, Z{}, C{}, inv{};
};

class Engine;

struct PageState {
  int r = 2;
  std::vector<PosData> pos;
};

/// Unknown block for d_r from `source` to `target` (class coordinates), row-major.
struct Block {
  int source = -1;
  int target = -1;
  int rows = 0, cols = 0;
  int offset = 0;
};

struct PageSystem {
  std::vector<Block> blocks;
  std::vector<int> block_of;  // position -> block index or -1
  int unknowns = 0;
  fp::Matrix equations;
};

class Engine {
 public:
  explicit Engine(unsigned p) : field_(p), p_(p) {
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b) {
        add_[a * p + b] = static_cast<fp::Scalar>((a + b) % p);
        mul_[a * p + b] = static_cast<fp::Scalar>(a * b % p);
      }
    for (int k = 0; k <= kWindow; ++k) basis_[k] = base_basis(k);
    for (int k1 = 0; k1 <= kWindow; ++k1)
      for (int k2 = 0; k1 + k2 <= kWindow; ++k2) {
        auto& tab = prod_[k1][k2];
        tab.resize(basis_[k1].size() * basis_[k2].size());
        for (std::size_t i = 0; i < basis_[k1].size(); ++i)
          for (std::size_t j = 0; j < basis_[k2].size(); ++j) tab[i * basis_[k2].size() + j] = mono_product(basis_[k1][i], basis_[k2][j], k1 + k2);
      }
    for (int row = 0; row < 4; ++row)
      for (int m = 0; m + kFiberDegrees[row] <= kWindow; ++m) {
        index_[m][row] = static_cast<int>(positions_.size());
        positions_.push_back({m, row});
      }
  }

  unsigned p() const { return p_; }
  const fp::Field& field() const { return field_; }
  const std::vector<Position>& positions() const { return positions_; }

  int index(int m, int row) const {
    if (m < 0 || row < 0 || row > 3 || m + kFiberDegrees[row] > kWindow) return -1;
    return index_[m][row];
  }
  static int row_of_degree(int n) {
    for (int r = 0; r < 4; ++r)
      if (kFiberDegrees[r] == n) return r;
    return -1;
  }
  int target_of(int pos, int r) const {
    const auto& P = positions_[pos];
    const int row = row_of_degree(P.n() - r + 1);
    return row < 0 ? -1 : index(P.m + r, row);
  }

  fp::Scalar add(fp::Scalar a, fp::Scalar b) const { return add_[a * p_ + b]; }
  fp::Scalar mul(fp::Scalar a, fp::Scalar b) const { return mul_[a * p_ + b]; }
  fp::Scalar neg(fp::Scalar a) const { return a ? static_cast<fp::Scalar>(p_ - a) : 0; }

  PageState e2_state() const {
    PageState st;
    st.r = 2;
    st.pos.resize(positions_.size());
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      auto& d = st.pos[i];
      const int n = positions_[i].dim();
      d.kB = 0;
      d.kZ = d.e = static_cast<std::uint8_t>(n);
      for (int k = 0; k < n; ++k) {
        d.Z[k] = unit(k);
        d.C[k] = unit(k);
        d.inv[k] = unit(k);
      }
    }
    return st;
  }

  /// Generators s1, s2, t1, t2 as (degree, index in the basis of that degree).
  static constexpr std::pair<int, int> kGenerators[4] = {{1, 0}, {1, 1}, {2, 0}, {2, 1}};

  /// g * v for v at base degree m.
  Vec gen_mul(int g, int m, const Vec& v) const {
    const auto [deg, gi] = kGenerators[g];
    Vec out{};
    const auto& tab = prod_[deg][m];
    const std::size_t w = basis_[m].size();
    for (std::size_t j = 0; j < w; ++j) {
      if (!v[j]) continue;
      const auto [idx, sign] = tab[gi * w + j];
      if (!sign) continue;
      out[idx] = add(out[idx], sign > 0 ? v[j] : neg(v[j]));
    }
    return out;
  }

  /// (b (x) alpha)(c (x) beta) = (-1)^{|alpha||c|} bc (x) alpha beta. Returns the
  /// product position, or -1 when the fiber product vanishes or leaves the window.
  int product(int pa, const Vec& a, int pb, const Vec& b, Vec& out) const {
    const auto& A = positions_[pa];
    const auto& Bp = positions_[pb];
    const int frow = fiber_product_row(A.row, Bp.row);
    if (frow < 0) return -1;
    const int pc = index(A.m + Bp.m, frow);
    if (pc < 0) return -1;
    out = Vec{};
    const bool flip = (A.n() * Bp.m) % 2 != 0;
    const auto& tab = prod_[A.m][Bp.m];
    const std::size_t w = basis_[Bp.m].size();
    for (std::size_t i = 0; i < basis_[A.m].size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < w; ++j) {
        if (!b[j]) continue;
        const auto [idx, sign] = tab[i * w + j];
        if (!sign) continue;
        const fp::Scalar v = mul(a[i], b[j]);
        out[idx] = add(out[idx], (sign > 0) != flip ? v : neg(v));
      }
    }
    return pc;
  }

  /// Class coordinates of a cycle v at `pos`; throws if v is not a cycle.
  std::array<fp::Scalar, kMaxDim> class_coords(const PosData& d, int pos, const Vec& v) const {
    const int n = positions_[pos].dim();
    std::array<fp::Scalar, kMaxDim> coeff{};
    for (int i = 0; i < n; ++i) {
      if (!v[i]) continue;
      for (int j = 0; j < n; ++j) coeff[j] = add(coeff[j], mul(v[i], d.inv[i][j]));
    }
    for (int j = d.kB + d.e; j < n; ++j)
      if (coeff[j]) throw std::logic_error("product of cycles is not a cycle");
    std::array<fp::Scalar, kMaxDim> out{};
    for (int j = 0; j < d.e; ++j) out[j] = coeff[d.kB + j];
    return out;
  }

  /// Unknown blocks and the homogeneous constraint system for d_r.
  PageSystem build_system(const PageState& st) const {
    const int r = st.r;
    PageSystem sys;
    sys.block_of.assign(positions_.size(), -1);
    std::vector<int> sources;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (positions_[i].total() > kWindow - 1) continue;
      const int t = target_of(static_cast<int>(i), r);
      if (t < 0 || st.pos[i].e == 0 || st.pos[t].e == 0) continue;
      sources.push_back(static_cast<int>(i));
    }
    // Module generators (base degree 0) last, so that they end up as free columns.
    std::sort(sources.begin(), sources.end(), [&](int a, int b) {
      const auto &A = positions_[a], &B = positions_[b];
      return A.m != B.m ? A.m > B.m : A.row > B.row;
    });
    for (int s : sources) {
      Block b;
      b.source = s;
      b.target = target_of(s, r);
      b.rows = st.pos[b.target].e;
      b.cols = st.pos[s].e;
      b.offset = sys.unknowns;
      sys.unknowns += b.rows * b.cols;
      sys.block_of[s] = static_cast<int>(sys.blocks.size());
      sys.blocks.push_back(b);
    }
    sys.equations = fp::Matrix(0, static_cast<std::size_t>(sys.unknowns));
    if (sys.unknowns == 0) return sys;
    std::vector<fp::Scalar> eq(static_cast<std::size_t>(sys.unknowns));

    // B-linearity: D(g c) = (-1)^{|g|} g D(c).
    for (std::size_t P = 0; P < positions_.size(); ++P) {
      const int Pt = target_of(static_cast<int>(P), r);
      if (Pt < 0) continue;
      for (int g = 0; g < 4; ++g) {
        const int deg = kGenerators[g].first;
        const int Q = index(positions_[P].m + deg, positions_[P].row);
        if (Q < 0 || positions_[Q].total() > kWindow - 1) continue;
        const int Qt = target_of(Q, r);
        const int eqs = st.pos[Qt].e;
        if (eqs == 0) continue;
        const int bP = sys.block_of[P], bQ = sys.block_of[Q];
        if (bP < 0 && bQ < 0) continue;
        const bool odd = deg % 2 != 0;
        // g times each target class rep of P, in coordinates at Qt.
        std::vector<std::array<fp::Scalar, kMaxDim>> g_target;
        if (bP >= 0)
          for (int k = 0; k < st.pos[Pt].e; ++k)
            g_target.push_back(class_coords(st.pos[Qt], Qt, gen_mul(g, positions_[Pt].m, st.pos[Pt].C[k])));
        for (int j = 0; j < st.pos[P].e; ++j) {
          std::array<fp::Scalar, kMaxDim> gc{};
          if (bQ >= 0) gc = class_coords(st.pos[Q], Q, gen_mul(g, positions_[P].m, st.pos[P].C[j]));
          for (int i = 0; i < eqs; ++i) {
            std::fill(eq.begin(), eq.end(), 0);
            bool nonzero = false;
            if (bQ >= 0) {
              const Block& b = sys.blocks[bQ];
              for (int l = 0; l < b.cols; ++l) {
                eq[b.offset + i * b.cols + l] = gc[l];
                nonzero |= gc[l] != 0;
              }
            }
            if (bP >= 0) {
              const Block& b = sys.blocks[bP];
              for (int k = 0; k < b.rows; ++k) {
                const fp::Scalar c = odd ? g_target[k][i] : neg(g_target[k][i]);
                auto& slot = eq[b.offset + k * b.cols + j];
                slot = add(slot, c);
                nonzero |= c != 0;
              }
            }
            if (nonzero) sys.equations.append_row(eq);
          }
        }
      }
    }

    // Leibniz: D(uv) = D(u) v + (-1)^{|u|} u D(v), u in fiber row 2, v in fiber row 3.
    for (int m1 = 0; m1 <= kWindow; ++m1)
      for (int m2 = 0; m1 + m2 <= kWindow; ++m2) {
        const int P1 = index(m1, 1), P2 = index(m2, 2), P3 = index(m1 + m2, 3);
        if (P1 < 0 || P2 < 0 || P3 < 0 || positions_[P3].total() > kWindow - 1) continue;
        const int T1 = target_of(P1, r), T2 = target_of(P2, r), T3 = target_of(P3, r);
        if (T3 < 0 || st.pos[T3].e == 0) continue;
        const int b1 = sys.block_of[P1], b2 = sys.block_of[P2], b3 = sys.block_of[P3];
        if (b1 < 0 && b2 < 0 && b3 < 0) continue;
        const bool u_odd = (m1 + 2) % 2 != 0;
        for (int iu = 0; iu < st.pos[P1].e; ++iu)
          for (int iv = 0; iv < st.pos[P2].e; ++iv) {
            const Vec& U = st.pos[P1].C[iu];
            const Vec& W = st.pos[P2].C[iv];
            Vec uv{};
            std::array<fp::Scalar, kMaxDim> uv_c{};
            if (b3 >= 0 && product(P1, U, P2, W, uv) == P3) uv_c = class_coords(st.pos[P3], P3, uv);
            std::vector<std::array<fp::Scalar, kMaxDim>> du_v, u_dv;
            if (b1 >= 0)
              for (int k = 0; k < st.pos[T1].e; ++k) {
                Vec w{};
                const int at = product(T1, st.pos[T1].C[k], P2, W, w);
                du_v.push_back(at == T3 ? class_coords(st.pos[T3], T3, w) : std::array<fp::Scalar, kMaxDim>{});
              }
            if (b2 >= 0)
              for (int k = 0; k < st.pos[T2].e; ++k) {
                Vec w{};
                const int at = product(P1, U, T2, st.pos[T2].C[k], w);
                u_dv.push_back(at == T3 ? class_coords(st.pos[T3], T3, w) : std::array<fp::Scalar, kMaxDim>{});
              }
            for (int i = 0; i < st.pos[T3].e; ++i) {
              std::fill(eq.begin(), eq.end(), 0);
              bool nonzero = false;
              if (b3 >= 0) {
                const Block& b = sys.blocks[b3];
                for (int l = 0; l < b.cols; ++l) {
                  eq[b.offset + i * b.cols + l] = uv_c[l];
                  nonzero |= uv_c[l] != 0;
                }
              }
              if (b1 >= 0) {
                const Block& b = sys.blocks[b1];
                for (int k = 0; k < b.rows; ++k) {
                  auto& slot = eq[b.offset + k * b.cols + iu];
                  slot = add(slot, neg(du_v[k][i]));
                  nonzero |= du_v[k][i] != 0;
                }
              }
              if (b2 >= 0) {
                const Block& b = sys.blocks[b2];
                for (int k = 0; k < b.rows; ++k) {
                  const fp::Scalar c = u_odd ? u_dv[k][i] : neg(u_dv[k][i]);
                  auto& slot = eq[b.offset + k * b.cols + iv];
                  slot = add(slot, c);
                  nonzero |= c != 0;
                }
              }
              if (nonzero) sys.equations.append_row(eq);
            }
          }
      }
    return sys;
  }

  int block_rank(const Block& b, const fp::Scalar* u) const {
    std::array<Vec, kMaxDim> rows{};
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) rows[i][j] = u[b.offset + i * b.cols + j];
    return echelon_rank(rows, b.rows, b.cols);
  }

  /// Page r+1 from page r and the values u of the unknowns of `sys`.
  PageState advance(const PageState& st, const PageSystem& sys, const fp::Scalar* u) const {
    PageState next = st;
    next.r = st.r + 1;
    std::vector<char> dirty(positions_.size(), 0);
    for (const Block& b : sys.blocks) {
      const PosData& src = st.pos[b.source];
      const PosData& tgt = st.pos[b.target];
      const int ns = positions_[b.source].dim(), nt = positions_[b.target].dim();
      // Matrix of d in class coordinates: column j is the image of class j.
      std::array<Vec, kMaxDim> cols{};
      for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) cols[j][i] = u[b.offset + i * b.cols + j];
      // Image: new boundaries at the target.
      Echelon img(*this, nt);
      for (int k = 0; k < tgt.kB; ++k) img.add(tgt.B[k]);
      for (int j = 0; j < b.cols; ++j) {
        Vec v{};
        for (int k = 0; k < b.rows; ++k)
          if (cols[j][k])
            for (int c = 0; c < nt; ++c) v[c] = add(v[c], mul(cols[j][k], tgt.C[k][c]));
        img.add(v);
      }
      PosData& nt_d = next.pos[b.target];
      nt_d.kB = static_cast<std::uint8_t>(img.k);
      for (int k = 0; k < img.k; ++k) nt_d.B[k] = img.rows[k];
      dirty[b.target] = 1;
      // Kernel: new cycles at the source.
      std::array<Vec, kMaxDim> kernel{};
      const int kdim = kernel_of(cols, b.rows, b.cols, kernel);
      Echelon cyc(*this, ns);
      for (int k = 0; k < src.kB; ++k) cyc.add(src.B[k]);
      for (int k = 0; k < kdim; ++k) {
        Vec v{};
        for (int j = 0; j < b.cols; ++j)
          if (kernel[k][j])
            for (int c = 0; c < ns; ++c) v[c] = add(v[c], mul(kernel[k][j], src.C[j][c]));
        cyc.add(v);
      }
      PosData& ns_d = next.pos[b.source];
      ns_d.kZ = static_cast<std::uint8_t>(cyc.k);
      for (int k = 0; k < cyc.k; ++k) ns_d.Z[k] = cyc.rows[k];
      dirty[b.source] = 1;
    }
    for (std::size_t i = 0; i < positions_.size(); ++i)
      if (dirty[i]) refresh(next.pos[i], positions_[i].dim());
    return next;
  }

  /// Recompute class representatives and the coordinate inverse from B and Z.
  void refresh(PosData& d, int n) const {
    Echelon ech(*this, n);
    std::array<Vec, kMaxDim> full{};
    int k = 0;
    for (int i = 0; i < d.kB; ++i) {
      ech.add(d.B[i]);
      full[k++] = d.B[i];
    }
    int e = 0;
    for (int i = 0; i < d.kZ; ++i)
      if (ech.add(d.Z[i])) {
        d.C[e++] = d.Z[i];
        full[k++] = d.Z[i];
      }
    d.e = static_cast<std::uint8_t>(e);
    for (int i = 0; i < n && k < n; ++i)
      if (ech.add(unit(i))) full[k++] = unit(i);
    d.inv = invert(full, n);
  }

  std::int64_t dims_at(const PageState& st, int pos) const { return st.pos[pos].e; }

 private:
  struct Echelon {
    const Engine& eng;
    int n;
    int k = 0;
    std::array<Vec, kMaxDim> rows{};
    std::array<int, kMaxDim> piv{};
    Echelon(const Engine& e, int dim) : eng(e), n(dim) {}
    bool add(Vec v) {
      for (int i = 0; i < k; ++i) {
        const fp::Scalar c = v[piv[i]];
        if (!c) continue;
        for (int j = 0; j < n; ++j) v[j] = eng.add(v[j], eng.neg(eng.mul(c, rows[i][j])));
      }
      int pc = 0;
      while (pc < n && !v[pc]) ++pc;
      if (pc == n) return false;
      const fp::Scalar s = eng.field_.inv(v[pc]);
      for (int j = 0; j < n; ++j) v[j] = eng.mul(v[j], s);
      rows[k] = v;
      piv[k] = pc;
      ++k;
      return true;
    }
  };

  static Vec unit(int i) {
    Vec v{};
    v[i] = 1;
    return v;
  }

  int echelon_rank(std::array<Vec, kMaxDim> rows, int nr, int nc) const {
    int rank = 0;
    for (int c = 0; c < nc && rank < nr; ++c) {
      int piv = rank;
      while (piv < nr && !rows[piv][c]) ++piv;
      if (piv == nr) continue;
      std::swap(rows[piv], rows[rank]);
      const fp::Scalar s = field_.inv(rows[rank][c]);
      for (int i = rank + 1; i < nr; ++i) {
        const fp::Scalar f = mul(rows[i][c], s);
        if (!f) continue;
        for (int j = c; j < nc; ++j) rows[i][j] = add(rows[i][j], neg(mul(f, rows[rank][j])));
      }
      ++rank;
    }
    return rank;
  }

  /// Kernel of the nr x nc matrix whose column j is cols[j]; basis vectors in F_p^nc.
  int kernel_of(const std::array<Vec, kMaxDim>& cols, int nr, int nc, std::array<Vec, kMaxDim>& out) const {
    std::array<Vec, kMaxDim> m{};
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) m[i][j] = cols[j][i];
    std::array<int, kMaxDim> piv{};
    const int rank = reduce(m, nr, nc, piv);
    std::array<char, kMaxDim> is_pivot{};
    for (int i = 0; i < rank; ++i) is_pivot[piv[i]] = 1;
    int k = 0;
    for (int f = 0; f < nc; ++f) {
      if (is_pivot[f]) continue;
      Vec v{};
      v[f] = 1;
      for (int i = 0; i < rank; ++i) v[piv[i]] = neg(m[i][f]);
      out[k++] = v;
    }
    return k;
  }

  std::array<Vec, kMaxDim> invert(const std::array<Vec, kMaxDim>& rows, int n) const {
    std::array<Vec, kMaxDim> a = rows, out{};
    for (int i = 0; i < n; ++i) out[i] = unit(i);
    for (int c = 0; c < n; ++c) {
      int piv = c;
      while (piv < n && !a[piv][c]) ++piv;
      if (piv == n) throw std::logic_error("basis matrix is singular");
      std::swap(a[piv], a[c]);
      std::swap(out[piv], out[c]);
      const fp::Scalar s = field_.inv(a[c][c]);
      for (int j = 0; j < n; ++j) {
        a[c][j] = mul(a[c][j], s);
        out[c][j] = mul(out[c][j], s);
      }
      for (int i = 0; i < n; ++i) {
        const fp::Scalar f = a[i][c];
        if (i == c || !f) continue;
        const fp::Scalar g = neg(f);
        for (int j = 0; j < n; ++j) {
          a[i][j] = add(a[i][j], mul(g, a[c][j]));
          out[i][j] = add(out[i][j], mul(g, out[c][j]));
        }
      }
    }
    return out;
  }

  /// Reduced row echelon form of the leading nr x nc block, in place. Returns the rank.
  int reduce(std::array<Vec, kMaxDim>& m, int nr, int nc, std::array<int, kMaxDim>& piv) const {
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
      int p = r;
      while (p < nr && !m[p][c]) ++p;
      if (p == nr) continue;
      std::swap(m[p], m[r]);
      const fp::Scalar s = field_.inv(m[r][c]);
      for (int j = 0; j < nc; ++j) m[r][j] = mul(m[r][j], s);
      for (int i = 0; i < nr; ++i) {
        const fp::Scalar f = m[i][c];
        if (i == r || !f) continue;
        const fp::Scalar g = neg(f);
        for (int j = 0; j < nc; ++j) m[i][j] = add(m[i][j], mul(g, m[r][j]));
      }
      piv[r++] = c;
    }
    return r;
  }

  static int fiber_product_row(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) return 3;  // y x = x y = xy
    return -1;
  }

  std::pair<int, int> mono_product(const Monomial& x, const Monomial& y, int deg) const {
    if ((x.e1 && y.e1) || (x.e2 && y.e2)) return {0, 0};
    const Monomial z{x.e1 + y.e1, x.e2 + y.e2, x.a + y.a, x.b + y.b};
    const int sign = (x.e2 && y.e1) ? -1 : 1;
    const auto& basis = basis_[deg];
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == z) return {static_cast<int>(i), sign};
    throw std::logic_error("monomial missing from basis");
  }

  fp::Field field_;
  unsigned p_;
  std::array<fp::Scalar, 256 * 256> add_{}, mul_{};
  std::array<std::vector<Monomial>, kWindow + 1> basis_;
  std::array<std::array<std::vector<std::pair<int, int>>, kWindow + 1>, kWindow + 1> prod_;
  std::vector<Position> positions_;
  int index_[kWindow + 1][4] = {};
};

inline BigradedPage to_page(const Engine& eng, const PageState& st, int r) {
  BigradedPage page;
  page.r = r;
  for (std::size_t i = 0; i < eng.positions().size(); ++i) {
    const auto& P = eng.positions()[i];
    page.dims[{P.m, P.n()}] = st.pos[i].e;
  }
  return page;
}

/// No source in the window has a target for r > kLastPage.
inline void assert_no_late_differentials(const Engine& eng) {
  for (int r = kLastPage + 1; r <= kWindow + 1; ++r)
    for (std::size_t i = 0; i < eng.positions().size(); ++i)
      if (eng.positions()[i].total() < kWindow && eng.target_of(static_cast<int>(i), r) >= 0)
        throw std::logic_error("differential d_" + std::to_string(r) + " has a target in the window");
}

/// Named values of the choice as extra equations on page r.
inline void named_equations(const Engine& eng, const PageState& st, const PageSystem& sys, const DifferentialChoice& c,
                            fp::Matrix& rows, std::vector<fp::Scalar>& rhs) {
  auto impose = [&](int m, int row, const std::uint32_t* values, int count) {
    const int src = eng.index(m, row);
    const int b = sys.block_of[src];
    bool any = false;
    for (int i = 0; i < count; ++i) any |= values[i] != 0;
    if (b < 0) {
      if (any) throw std::invalid_argument("choice names a differential that is zero on this page");
      return;
    }
    const Block& blk = sys.blocks[b];
    if (blk.rows != count || st.pos[src].e != 1) throw std::logic_error("unexpected generator block shape");
    for (int i = 0; i < count; ++i) {
      std::vector<fp::Scalar> eq(static_cast<std::size_t>(sys.unknowns), 0);
      eq[blk.offset + i * blk.cols] = 1;
      rows.append_row(eq);
      rhs.push_back(static_cast<fp::Scalar>(values[i]));
    }
  };
  if (st.r == 2) impose(0, 2, c.d2_x.data(), 3);
  if (st.r == 3) impose(0, 1, c.d3_y.data(), 4);
}

using Count = unsigned __int128;

struct Tally {
  Count leaves = 0;
  std::int64_t min_deg6 = std::numeric_limits<std::int64_t>::max();
  std::int64_t min_60 = std::numeric_limits<std::int64_t>::max();

  void merge(const Tally& o) {
    leaves += o.leaves;
    min_deg6 = std::min(min_deg6, o.min_deg6);
    min_60 = std::min(min_60, o.min_60);
  }
};

/// Adds every combination of rows first..k-1 of `dirs` to u, calling f(u) for each.
template <typename F>
void odometer(const Engine& eng, const fp::Matrix& dirs, std::size_t first, std::vector<fp::Scalar>& u, F&& f) {
  const std::size_t k = dirs.rows(), n = dirs.cols();
  std::vector<fp::Scalar> coeff(k, 0);
  while (true) {
    f(u.data());
    std::size_t i = first;
    while (i < k) {
      for (std::size_t j = 0; j < n; ++j) u[j] = eng.add(u[j], dirs.at(i, j));
      if (++coeff[i] < eng.p()) break;
      coeff[i] = 0;  // wrapped: p * dirs[i] = 0
      ++i;
    }
    if (i >= k) return;
  }
}

/// Every point of the span of `dirs`.
template <typename F>
void for_each_solution(const Engine& eng, const fp::Matrix& dirs, F&& f) {
  std::vector<fp::Scalar> u(dirs.cols(), 0);
  odometer(eng, dirs, 0, u, f);
}

/// One point per line through the origin of the span of `dirs` (weight p - 1),
/// plus the origin (weight 1). Scaling a differential by a unit does not change
/// its kernel or image, hence not any later page either.
template <typename F>
void for_each_projective(const Engine& eng, const fp::Matrix& dirs, F&& f) {
  std::vector<fp::Scalar> u(dirs.cols(), 0);
  f(u.data(), Count{1});
  for (std::size_t lead = 0; lead < dirs.rows(); ++lead) {
    u = dirs.row_vector(lead);
    odometer(eng, dirs, lead + 1, u, [&](const fp::Scalar* v) { f(v, Count{eng.p() - 1}); });
  }
}

inline std::string to_decimal(Count v) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  } while (v);
  return s;
}

inline Count power(Count base, std::size_t e) {
  Count r = 1;
  while (e--) r *= base;
  return r;
}

class Search {
 public:
  explicit Search(const Engine& eng) : eng_(eng) {
    for (std::size_t i = 0; i < eng.positions().size(); ++i) {
      const auto& P = eng.positions()[i];
      if (P.total() == 6) deg6_.push_back(static_cast<int>(i));
    }
    pos60_ = eng.index(6, 0);
  }

  /// `weight` is the number of choices on earlier pages that lead to `st`.
  void run(const PageState& st, Count weight, Tally& tally) const {
    Tally t = solve(st);
    t.leaves *= weight;
    tally.merge(t);
  }

  /// Page-3 states reached from E_2, one per line of page-2 choices, with weights.
  std::vector<std::pair<PageState, Count>> branches(const PageState& e2) const {
    std::vector<std::pair<PageState, Count>> out;
    const PageSystem sys = eng_.build_system(e2);
    const fp::Matrix dirs = fp::nullspace(sys.equations, eng_.field());
    for_each_projective(eng_, dirs, [&](const fp::Scalar* u, Count w) { out.emplace_back(eng_.advance(e2, sys, u), w); });
    return out;
  }

 private:
  Tally solve(const PageState& st) const {
    Tally t;
    if (st.r > kLastPage) {
      record(st, 1, 0, 0, t);
      return t;
    }
    const PageSystem sys = eng_.build_system(st);
    if (sys.unknowns == 0) {
      PageState next = st;
      ++next.r;
      return solve(next);
    }
    const fp::Matrix dirs = fp::nullspace(sys.equations, eng_.field());
    if (st.r == kLastPage) {
      last_page(st, sys, dirs, 1, t);
      return t;
    }
    for_each_projective(eng_, dirs, [&](const fp::Scalar* u, Count w) {
      Tally child = solve(eng_.advance(st, sys, u));
      child.leaves *= w;
      t.merge(child);
    });
    return t;
  }

  void record(const PageState& st, Count leaves, std::int64_t killed6, std::int64_t killed60, Tally& tally) const {
    std::int64_t deg6 = 0;
    for (int pos : deg6_) deg6 += st.pos[pos].e;
    tally.leaves += leaves;
    tally.min_deg6 = std::min(tally.min_deg6, deg6 - killed6);
    tally.min_60 = std::min(tally.min_60, std::int64_t{st.pos[pos60_].e} - killed60);
  }

  /// The last page's choices split into independent groups of blocks (no basis
  /// vector of the solution space touches two groups). Survivors are minimized
  /// group by group; every choice is still counted.
  void last_page(const PageState& st, const PageSystem& sys, const fp::Matrix& dirs, Count weight, Tally& tally) const {
    const std::size_t nb = sys.blocks.size();
    std::vector<std::size_t> parent(nb);
    for (std::size_t b = 0; b < nb; ++b) parent[b] = b;
    auto find = [&](std::size_t b) {
      while (parent[b] != b) b = parent[b] = parent[parent[b]];
      return b;
    };
    auto block_at = [&](std::size_t unknown) {
      std::size_t b = 0;
      while (b + 1 < nb && static_cast<std::size_t>(sys.blocks[b + 1].offset) <= unknown) ++b;
      return b;
    };
    std::vector<std::size_t> first_block(dirs.rows());
    for (std::size_t k = 0; k < dirs.rows(); ++k) {
      std::size_t anchor = nb;
      for (std::size_t j = 0; j < dirs.cols(); ++j) {
        if (!dirs.at(k, j)) continue;
        const std::size_t b = block_at(j);
        if (anchor == nb) anchor = b;
        else parent[find(b)] = find(anchor);
      }
      first_block[k] = anchor;
    }

    auto deg6_role = [&](const Block& b) {
      return eng_.positions()[b.source].total() == 6 || eng_.positions()[b.target].total() == 6;
    };

    std::int64_t killed6 = 0, killed60 = 0;
    for (std::size_t root = 0; root < nb; ++root) {
      if (find(root) != root) continue;
      std::vector<std::size_t> members;
      for (std::size_t b = 0; b < nb; ++b)
        if (find(b) == root) members.push_back(b);
      if (std::none_of(members.begin(), members.end(), [&](std::size_t b) { return deg6_role(sys.blocks[b]); })) continue;
      fp::Matrix sub(0, dirs.cols());
      for (std::size_t k = 0; k < dirs.rows(); ++k)
        if (find(first_block[k]) == root) sub.append_row(dirs.row(k));
      if (sub.rows() == 0) continue;
      const Block& only = sys.blocks[members.front()];
      std::int64_t best6 = 0, best60 = 0;
      if (members.size() == 1 && sub.rows() == static_cast<std::size_t>(only.rows * only.cols)) {
        // Unconstrained block: full rank is attained.
        best6 = std::min(only.rows, only.cols);
        best60 = only.target == pos60_ ? best6 : 0;
      } else {
        for_each_projective(eng_, sub, [&](const fp::Scalar* u, Count) {
          std::int64_t s6 = 0, s60 = 0;
          for (std::size_t b : members) {
            const Block& blk = sys.blocks[b];
            if (!deg6_role(blk)) continue;
            const int rk = eng_.block_rank(blk, u);
            s6 += rk;
            if (blk.target == pos60_) s60 += rk;
          }
          best6 = std::max(best6, s6);
          best60 = std::max(best60, s60);
        });
      }
      killed6 += best6;
      killed60 += best60;
    }
    record(st, weight * power(eng_.p(), dirs.rows()), killed6, killed60, tally);
  }

  const Engine& eng_;
  std::vector<int> deg6_;
  int pos60_ = -1;
};

}  // namespace detail

/// Every page from E_2 to E_infinity for one choice, with the rank of each
/// differential keyed by (page, source position).
struct SpectralRun {
  std::vector<BigradedPage> pages;
  std::map<int, std::map<std::pair<int, int>, std::int64_t>> ranks;
};

inline SpectralRun run_pages(std::int64_t p, const DifferentialChoice& c) {
  require_odd_prime(p);
  for (auto v : c.d2_x)
    if (v >= p) throw std::invalid_argument("choice entries must be reduced modulo p");
  for (auto v : c.d3_y)
    if (v >= p) throw std::invalid_argument("choice entries must be reduced modulo p");
  for (const auto& [page, coords] : c.free) {
    if (page < 2 || page > kLastPage) throw std::invalid_argument("free coordinates given for page " + std::to_string(page));
    for (auto v : coords)
      if (v >= p) throw std::invalid_argument("choice entries must be reduced modulo p");
  }

  const detail::Engine eng(static_cast<unsigned>(p));
  detail::assert_no_late_differentials(eng);
  SpectralRun run;
  detail::PageState st = eng.e2_state();
  for (int r = 2; r <= kLastPage; ++r) {
    st.r = r;
    run.pages.push_back(detail::to_page(eng, st, r));
    const detail::PageSystem sys = eng.build_system(st);
    fp::Matrix rows = sys.equations;
    std::vector<fp::Scalar> rhs(rows.rows(), 0);
    detail::named_equations(eng, st, sys, c, rows, rhs);
    const auto sol = fp::solve(rows, rhs, eng.field());
    if (!sol) throw std::invalid_argument("choice is inconsistent on page " + std::to_string(r));
    std::vector<fp::Scalar> u = sol->particular;
    std::vector<std::uint32_t> coords;
    if (auto it = c.free.find(r); it != c.free.end()) coords = it->second;
    if (coords.size() > sol->directions.rows())
      throw std::invalid_argument("page " + std::to_string(r) + " has " + std::to_string(sol->directions.rows()) +
                                  " free coordinates, got " + std::to_string(coords.size()));
    for (std::size_t k = 0; k < coords.size(); ++k)
      for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = eng.add(u[j], eng.mul(static_cast<fp::Scalar>(coords[k]), sol->directions.at(k, j)));
    for (const auto& b : sys.blocks) {
      const auto& P = eng.positions()[b.source];
      run.ranks[r][{P.m, P.n()}] = eng.block_rank(b, u.data());
    }
    st = eng.advance(st, sys, u.data());
  }
  run.pages.push_back(detail::to_page(eng, st, kInfinityPage));
  return run;
}

inline BigradedPage run_choice(std::int64_t p, const DifferentialChoice& c) { return run_pages(p, c).pages.back(); }

/// Every admissible choice of differentials mod p. Work is split over the page-2
/// branches; `threads` = 0 reads PCURV13_THREADS.
inline VerdictReport exhaustive_verdict(std::int64_t p, unsigned threads = 0) {
  if (p != 3 && p != 5 && p != 7) throw std::invalid_argument("exhaustive search supports p = 3, 5, 7; got " + std::to_string(p));
  const detail::Engine eng(static_cast<unsigned>(p));
  detail::assert_no_late_differentials(eng);
  const detail::Search search(eng);
  const auto branches = search.branches(eng.e2_state());

  std::vector<detail::Tally> tallies(branches.size());
  parallel::for_each_index(branches.size(), threads,
                           [&](std::size_t i) { search.run(branches[i].first, branches[i].second, tallies[i]); });
  detail::Tally total;
  for (const auto& t : tallies) total.merge(t);

  VerdictReport rep;
  rep.p = p;
  rep.choices_examined = detail::to_decimal(total.leaves);
  rep.min_deg6_survivors = total.min_deg6;
  rep.min_e_inf_6_0 = total.min_60;
  rep.verdict = total.min_deg6 >= 1;
  return rep;
}

}  // namespace pcurv13::serre
