// Finite groups as explicit multiplication tables.
//
// Element 0 is the identity. Tables are validated on construction (Latin
// square, identity row/column, associativity), and are immutable afterwards;
// copies share the underlying storage.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcurv13::groups {

using Element = std::uint32_t;

inline constexpr std::size_t kMaxOrder = 512;

class GroupTable {
 public:
  GroupTable() : GroupTable(1, {0}) {}

  /// `table` is row-major: table[a * n + b] = a * b.
  GroupTable(std::size_t n, std::vector<Element> table) : data_(std::make_shared<Data>()) {
    if (n == 0) throw std::invalid_argument("group order must be positive");
    if (n > kMaxOrder) throw std::invalid_argument("group order " + std::to_string(n) + " exceeds the cap of 512");
    if (table.size() != n * n) throw std::invalid_argument("table size does not match order");
    data_->n = n;
    data_->table = std::move(table);
    validate();
    compute_caches();
  }

  std::size_t order() const { return data_->n; }
  Element mul(Element a, Element b) const { return data_->table[a * data_->n + b]; }
  Element inv(Element a) const { return data_->inverse[a]; }
  std::uint32_t element_order(Element a) const { return data_->element_order[a]; }
  const std::vector<std::uint32_t>& element_orders() const { return data_->element_order; }
  const std::vector<Element>& raw_table() const { return data_->table; }

  Element pow(Element a, std::int64_t k) const {
    const auto o = static_cast<std::int64_t>(element_order(a));
    k %= o;
    if (k < 0) k += o;
    Element r = 0;
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  Element conj(Element g, Element h) const { return mul(mul(g, h), inv(g)); }

  bool commute(Element a, Element b) const { return mul(a, b) == mul(b, a); }

  bool is_abelian() const {
    for (Element a = 0; a < order(); ++a)
      for (Element b = a + 1; b < order(); ++b)
        if (!commute(a, b)) return false;
    return true;
  }

  std::uint32_t exponent() const {
    std::uint32_t e = 1;
    for (auto o : element_orders()) e = std::lcm(e, o);
    return e;
  }

  std::uint32_t max_element_order() const {
    return *std::max_element(element_orders().begin(), element_orders().end());
  }

  std::vector<Element> center() const {
    std::vector<Element> z;
    for (Element a = 0; a < order(); ++a) {
      bool central = true;
      for (Element b = 0; b < order() && central; ++b) central = commute(a, b);
      if (central) z.push_back(a);
    }
    return z;
  }

  /// Sorted histogram: count of elements of each order.
  std::vector<std::pair<std::uint32_t, std::size_t>> order_profile() const {
    std::vector<std::uint32_t> orders = element_orders();
    std::sort(orders.begin(), orders.end());
    std::vector<std::pair<std::uint32_t, std::size_t>> out;
    for (auto o : orders) {
      if (out.empty() || out.back().first != o) out.push_back({o, 0});
      ++out.back().second;
    }
    return out;
  }

  bool same_storage(const GroupTable& other) const { return data_ == other.data_; }

 private:
  struct Data {
    std::size_t n = 0;
    std::vector<Element> table;
    std::vector<Element> inverse;
    std::vector<std::uint32_t> element_order;
  };

  void validate() const {
    const std::size_t n = data_->n;
    const auto& t = data_->table;
    for (std::size_t a = 0; a < n; ++a) {
      if (t[a] != a || t[a * n] != a) throw std::invalid_argument("element 0 is not the identity");
      std::vector<char> row(n, 0), col(n, 0);
      for (std::size_t b = 0; b < n; ++b) {
        const Element r = t[a * n + b];
        const Element c = t[b * n + a];
        if (r >= n || c >= n) throw std::invalid_argument("table entry out of range");
        if (row[r]++ || col[c]++) throw std::invalid_argument("table is not a Latin square");
      }
    }
    // Associativity only needs checking against a generating set: the elements c
    // with (ab)c = a(bc) for all a, b are closed under multiplication.
    for (Element c : magma_generators()) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const Element lhs = t[t[a * n + b] * n + c];
          const Element rhs = t[a * n + t[b * n + c]];
          if (lhs != rhs) throw std::invalid_argument("table is not associative");
        }
    }
  }

  /// Greedy generating set for the table viewed as a magma (closure under products).
  std::vector<Element> magma_generators() const {
    const std::size_t n = data_->n;
    const auto& t = data_->table;
    std::vector<char> in(n, 0);
    std::vector<Element> members{0};
    in[0] = 1;
    std::vector<Element> gens;
    for (Element g = 1; g < n; ++g) {
      if (in[g]) continue;
      gens.push_back(g);
      // Right-multiplication closure of the current members by all generators.
      std::deque<Element> queue(members.begin(), members.end());
      while (!queue.empty()) {
        const Element x = queue.front();
        queue.pop_front();
        for (Element s : gens) {
          for (Element y : {t[x * n + s], t[s * n + x]}) {
            if (!in[y]) {
              in[y] = 1;
              members.push_back(y);
              queue.push_back(y);
            }
          }
        }
      }
    }
    return gens;
  }

  void compute_caches() {
    const std::size_t n = data_->n;
    data_->inverse.assign(n, 0);
    data_->element_order.assign(n, 1);
    for (Element a = 0; a < n; ++a) {
      Element x = a;
      std::uint32_t k = 1;
      while (x != 0) {
        x = data_->table[x * n + a];
        ++k;
      }
      data_->element_order[a] = k;
      for (Element b = 0; b < n; ++b)
        if (data_->table[a * n + b] == 0) data_->inverse[a] = b;
    }
  }

  std::shared_ptr<Data> data_;
};

/// A subgroup of a parent table, as a sorted element list.
class SubgroupHandle {
 public:
  SubgroupHandle() = default;
  SubgroupHandle(GroupTable parent, std::vector<Element> elements)
      : parent_(std::move(parent)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  const GroupTable& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return parent_.order() / elements_.size(); }
  bool contains(Element e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

  bool is_subgroup() const {
    if (!contains(0)) return false;
    for (Element a : elements_) {
      if (!contains(parent_.inv(a))) return false;
      for (Element b : elements_)
        if (!contains(parent_.mul(a, b))) return false;
    }
    return true;
  }

  bool is_normal() const {
    for (Element g = 0; g < parent_.order(); ++g)
      for (Element h : elements_)
        if (!contains(parent_.conj(g, h))) return false;
    return true;
  }

  bool is_cyclic() const {
    return std::any_of(elements_.begin(), elements_.end(),
                       [&](Element e) { return parent_.element_order(e) == elements_.size(); });
  }

  /// Re-index the subgroup as a standalone table (element i maps to elements()[i]).
  GroupTable as_group() const {
    const std::size_t n = elements_.size();
    std::vector<Element> table(n * n);
    auto local = [&](Element e) {
      return static_cast<Element>(std::lower_bound(elements_.begin(), elements_.end(), e) - elements_.begin());
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i * n + j] = local(parent_.mul(elements_[i], elements_[j]));
    return GroupTable(n, std::move(table));
  }

  friend bool operator==(const SubgroupHandle& a, const SubgroupHandle& b) {
    return a.parent_.same_storage(b.parent_) && a.elements_ == b.elements_;
  }

 private:
  GroupTable parent_;
  std::vector<Element> elements_{0};
};

/// Subgroup generated by `gens`. Returns an empty list if the closure grows past `limit`.
inline std::vector<Element> closure_elements(const GroupTable& g, const std::vector<Element>& gens,
                                             std::size_t limit = kMaxOrder + 1) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element x = members[i];
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
        if (members.size() > limit) return {};
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

inline SubgroupHandle closure(const GroupTable& g, const std::vector<Element>& gens) {
  return SubgroupHandle(g, closure_elements(g, gens));
}

inline SubgroupHandle whole_group(const GroupTable& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  return SubgroupHandle(g, std::move(all));
}

inline SubgroupHandle trivial_subgroup(const GroupTable& g) { return SubgroupHandle(g, {0}); }

/// Text format: `order n`, then n rows of n space-separated indices.
inline void write_table(std::ostream& os, const GroupTable& g) {
  const std::size_t n = g.order();
  os << "order " << n << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) os << (b ? " " : "") << g.mul(a, b);
    os << '\n';
  }
}

inline GroupTable read_table(std::istream& is) {
  std::string keyword;
  long long n = 0;
  if (!(is >> keyword >> n) || keyword != "order") throw std::invalid_argument("expected header `order n`");
  if (n <= 0 || static_cast<std::size_t>(n) > kMaxOrder) throw std::invalid_argument("order out of range");
  const std::size_t size = static_cast<std::size_t>(n);
  std::vector<Element> table(size * size);
  for (auto& entry : table) {
    long long v = 0;
    if (!(is >> v)) throw std::invalid_argument("table truncated");
    if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
    entry = static_cast<Element>(v);
  }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("trailing data after table");
  return GroupTable(size, std::move(table));
}

}  // namespace pcurv13::groups
