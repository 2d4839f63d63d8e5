// Bazaikin parameter tuples: normal form, freeness and curvature conditions,
// integral cohomology and its mod-p reduction.
//
// All arithmetic is exact. Entries are 64-bit; the cubic sum e3 stays in range
// for |q_i| up to about 10^6, which is far beyond anything enumerated here.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcurv13::bazaikin {

using Weights = std::array<std::int64_t, 5>;

/// Five integer weights q1..q5, kept as given. canonicalize() gives the normal
/// form under permutations and the global sign flip: sorted non-increasing, with
/// the sign chosen so that positive entries are in the majority.
class QTuple {
 public:
  QTuple() = default;
  explicit QTuple(const Weights& raw) : q_(raw) {}
  QTuple(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e)
      : QTuple(Weights{a, b, c, d, e}) {}

  const Weights& weights() const { return q_; }
  std::int64_t operator[](std::size_t i) const { return q_[i]; }
  std::int64_t q0() const { return std::accumulate(q_.begin(), q_.end(), std::int64_t{0}); }

  friend bool operator==(const QTuple&, const QTuple&) = default;
  friend auto operator<=>(const QTuple&, const QTuple&) = default;

  /// Sort non-increasing and fix the global sign. Ties in the count of positive
  /// entries go to the lexicographically larger candidate.
  static Weights canonical_weights(Weights q) {
    auto sorted_desc = [](Weights w) {
      std::sort(w.begin(), w.end(), std::greater<>());
      return w;
    };
    Weights flipped = q;
    for (auto& v : flipped) v = -v;
    const Weights a = sorted_desc(q);
    const Weights b = sorted_desc(flipped);
    auto positives = [](const Weights& w) {
      return std::count_if(w.begin(), w.end(), [](std::int64_t v) { return v > 0; });
    };
    const auto pa = positives(a);
    const auto pb = positives(b);
    if (pa != pb) return pa > pb ? a : b;
    return std::max(a, b);
  }

 private:
  Weights q_{};
};

inline QTuple canonicalize(const QTuple& q) { return QTuple(QTuple::canonical_weights(q.weights())); }

inline bool is_canonical(const QTuple& q) { return QTuple::canonical_weights(q.weights()) == q.weights(); }

/// Two disjoint index pairs {i,j},{k,l} and the gcd of their sums.
struct PairGcd {
  std::pair<int, int> first;
  std::pair<int, int> second;
  std::int64_t gcd = 0;
};

struct FreenessReport {
  bool all_odd = false;
  std::vector<PairGcd> failing_pairs;
  bool verdict = false;
};

/// The 15 unordered pairs of disjoint 2-subsets of {0,..,4}, in lexicographic order.
inline const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>& disjoint_pair_combinations() {
  static const auto combos = [] {
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (int k = i + 1; k < 5; ++k)
          for (int l = k + 1; l < 5; ++l) {
            if (k == j || l == j) continue;
            out.push_back({{i, j}, {k, l}});
          }
    return out;
  }();
  return combos;
}

/// Freeness of the Sp(2)·S^1 action: every weight odd, and every pair of
/// disjoint pair-sums has gcd exactly 2. Quantifying over S_5 reduces to the
/// 15 combinations returned by disjoint_pair_combinations().
inline FreenessReport check_free(const QTuple& q) {
  FreenessReport report;
  const auto& w = q.weights();
  report.all_odd = std::all_of(w.begin(), w.end(), [](std::int64_t v) { return v % 2 != 0; });
  for (const auto& [a, b] : disjoint_pair_combinations()) {
    const std::int64_t g = std::gcd(w[a.first] + w[a.second], w[b.first] + w[b.second]);
    if (g != 2) report.failing_pairs.push_back({a, b, g});
  }
  report.verdict = report.all_odd && report.failing_pairs.empty();
  return report;
}

enum class Curvature { PositiveAll, NegativeAll, Mixed };

inline const char* to_string(Curvature c) {
  switch (c) {
    case Curvature::PositiveAll: return "positive";
    case Curvature::NegativeAll: return "negative";
    case Curvature::Mixed: return "mixed";
  }
  return "mixed";
}

inline Curvature check_curvature(const QTuple& q) {
  bool all_pos = true;
  bool all_neg = true;
  const auto& w = q.weights();
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      const std::int64_t s = w[i] + w[j];
      all_pos = all_pos && s > 0;
      all_neg = all_neg && s < 0;
    }
  if (all_pos) return Curvature::PositiveAll;
  if (all_neg) return Curvature::NegativeAll;
  return Curvature::Mixed;
}

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
  }
  bool is_integer() const { return den == 1; }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Third elementary symmetric polynomial, summed over the ten triples.
inline std::int64_t e3(const QTuple& q) {
  const auto& w = q.weights();
  std::int64_t sum = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k) sum += w[i] * w[j] * w[k];
  return sum;
}

struct H6Order {
  std::int64_t e3 = 0;
  Rational m;
  bool integral = false;
};

/// m = e3/8, kept exact. Non-integral values are flagged, not rejected.
inline H6Order h6_order(const QTuple& q) {
  const std::int64_t s = e3(q);
  const Rational m = Rational::make(s, 8);
  return {s, m, m.is_integer()};
}

struct CohomologyGroup {
  enum class Kind { Zero, Free, Torsion };
  Kind kind = Kind::Zero;
  std::int64_t value = 0;  // rank for Free, order for Torsion

  static CohomologyGroup zero() { return {}; }
  static CohomologyGroup free(std::int64_t rank) { return {Kind::Free, rank}; }
  static CohomologyGroup torsion(std::int64_t order) { return {Kind::Torsion, order}; }
  friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

inline constexpr int kTopDegree = 13;

/// Integral cohomology in degrees 0..13.
struct CohomologyProfile {
  std::array<CohomologyGroup, kTopDegree + 1> groups{};

  std::int64_t torsion_order() const {
    for (const auto& g : groups)
      if (g.kind == CohomologyGroup::Kind::Torsion) return g.value;
    return 1;
  }
};

/// Profile with torsion Z_m in degrees 6 and 8 (none when m = 1).
inline CohomologyProfile bazaikin_profile(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("torsion order must be positive");
  CohomologyProfile p;
  for (int k : {0, 2, 4, 9, 11, 13}) p.groups[k] = CohomologyGroup::free(1);
  if (m > 1) {
    p.groups[6] = CohomologyGroup::torsion(m);
    p.groups[8] = CohomologyGroup::torsion(m);
  }
  return p;
}

/// Requires a free tuple with integral m.
inline CohomologyProfile integral_cohomology(const QTuple& q) {
  if (!check_free(q).verdict) throw std::invalid_argument("tuple does not give a free action");
  const auto h = h6_order(q);
  if (!h.integral) throw std::invalid_argument("e3/8 = " + h.m.str() + " is not an integer");
  return bazaikin_profile(std::llabs(h.m.num));
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using BettiVector = std::vector<std::int64_t>;

/// Universal-coefficient expansion of the integral profile with Z_p coefficients.
inline BettiVector mod_p_betti(const CohomologyProfile& profile, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  auto p_torsion = [&](int k) {
    if (k > kTopDegree) return 0;
    const auto& g = profile.groups[k];
    return g.kind == CohomologyGroup::Kind::Torsion && g.value % p == 0 ? 1 : 0;
  };
  BettiVector dims(kTopDegree + 1, 0);
  for (int k = 0; k <= kTopDegree; ++k) {
    const auto& g = profile.groups[k];
    dims[k] = (g.kind == CohomologyGroup::Kind::Free ? g.value : 0) + p_torsion(k) + p_torsion(k + 1);
  }
  return dims;
}

enum class Mod3Type { CP2xS9, CP4xS5 };

inline const char* to_string(Mod3Type t) { return t == Mod3Type::CP2xS9 ? "CP2xS9" : "CP4xS5"; }

inline Mod3Type mod3_type(const CohomologyProfile& profile) {
  return profile.torsion_order() % 3 == 0 ? Mod3Type::CP4xS5 : Mod3Type::CP2xS9;
}

/// All canonical free tuples with positive curvature and max|q_i| <= bound, sorted.
inline std::vector<QTuple> enumerate_spaces(std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<std::int64_t> odd;
  for (std::int64_t v = bound; v >= -bound; --v)
    if (v % 2 != 0) odd.push_back(v);
  std::vector<QTuple> out;
  const std::size_t n = odd.size();
  // Non-increasing tuples are exactly index sequences i0 <= i1 <= ... into `odd`.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d)
          for (std::size_t e = d; e < n; ++e) {
            const Weights w{odd[a], odd[b], odd[c], odd[d], odd[e]};
            if (QTuple::canonical_weights(w) != w) continue;
            const QTuple q(w);
            if (check_curvature(q) != Curvature::PositiveAll) continue;
            if (!check_free(q).verdict) continue;
            out.push_back(q);
          }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pcurv13::bazaikin
