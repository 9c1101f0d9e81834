#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace galab {

/// Encoded group element. The meaning of the code depends on the group:
///   lattice Z^d  - exactly d integer coordinates;
///   cayley       - a single index in [0, order);
///   free F_k     - a reduced word of nonzero letters in [-k, k], where +i is
///                  the i-th generator and -i its inverse.
/// Ordering is lexicographic on the code, which fixes window ordering.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<std::int64_t> code) : code_(std::move(code)) {}
  Element(std::initializer_list<std::int64_t> code) : code_(code) {}

  static Element index(std::int64_t i) { return Element(std::vector<std::int64_t>{i}); }

  std::span<const std::int64_t> code() const { return code_; }
  const std::vector<std::int64_t>& vec() const { return code_; }
  std::size_t size() const { return code_.size(); }
  bool empty() const { return code_.empty(); }
  std::int64_t operator[](std::size_t i) const { return code_[i]; }

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::vector<std::int64_t> code_;
};

std::string to_string(const Element& x);

struct ElementHash {
  std::size_t operator()(const Element& x) const noexcept;
};

class Window;

enum class GroupKind { lattice, cayley, free };

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

/// A concrete discrete group. Immutable; copies share the Cayley table.
class GroupSpec {
 public:
  static GroupSpec lattice(int rank);
  static GroupSpec free(int rank);
  /// Validates the table: square, entries in range, Latin square, identity
  /// row/column trivial, associative. Inverses are precomputed.
  static GroupSpec cayley(const std::vector<std::vector<int>>& table, int identity = 0);

  GroupKind kind() const { return kind_; }
  /// Rank d of Z^d or k of F_k; 0 for Cayley groups.
  int rank() const { return rank_; }
  /// Order of a Cayley group; 0 for infinite groups.
  std::size_t order() const;
  bool is_finite() const { return kind_ == GroupKind::cayley; }

  Element identity() const;
  bool contains(const Element& x) const;
  /// Throws UsageError naming the element when it is not a valid encoding.
  void require(const Element& x) const;

  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  bool is_identity(const Element& a) const;

  /// Word length: l1 norm on Z^d, reduced length on F_k, 0/1 on Cayley groups.
  std::int64_t length(const Element& x) const;

  /// Number of elements in ball(r), saturated at SIZE_MAX.
  std::size_t ball_size(int r) const;
  /// Box [-r,r]^d on Z^d, word-length ball on F_k, the whole group (r >= 1)
  /// or {e} (r = 0) on Cayley groups. Lexicographically ordered.
  Window ball(int r, std::size_t cap = kDefaultBallCap) const;

  /// Flat row-major Cayley table; empty for infinite groups.
  std::span<const int> table() const;
  std::span<const int> inverse_table() const;

  std::string describe() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

 private:
  struct CayleyData {
    int order = 0;
    int identity = 0;
    std::vector<int> table;
    std::vector<int> inverse;
  };

  GroupSpec() = default;

  GroupKind kind_ = GroupKind::lattice;
  int rank_ = 1;
  std::shared_ptr<const CayleyData> cayley_;
};

/// Ordered finite set of distinct group elements with a reverse index.
class Window {
 public:
  Window() = default;
  /// Keeps the given order; throws UsageError on duplicates.
  explicit Window(std::vector<Element> elements);
  /// Sorts lexicographically and removes duplicates.
  static Window sorted(std::vector<Element> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  std::optional<std::size_t> index_of(const Element& x) const;
  bool contains(const Element& x) const { return index_.contains(x); }

 private:
  std::vector<Element> elements_;
  std::map<Element, std::size_t> index_;
};

// Named finite groups, all returned as validated Cayley tables.
GroupSpec cyclic_group(int n);
/// Elements are pairs (a, b) encoded as a * |B| + b.
GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b);
/// Dihedral group of order 2n: rotations r^i are 0..n-1, reflections s r^i are n..2n-1.
GroupSpec dihedral_group(int n);
/// Permutations of {0..n-1} in lexicographic order, (a*b)(i) = a(b(i)).
GroupSpec symmetric_group(int n);
/// Quaternion group {1,-1,i,-i,j,-j,k,-k} in that index order.
GroupSpec quaternion_group();
/// Z/m1 x ... x Z/md with mixed-radix index, last coordinate fastest.
GroupSpec cyclic_product_group(std::span<const std::int64_t> moduli);

/// Reduction Z^d -> Z/m1 x ... x Z/md. The target is represented by
/// mixed-radix indices, matching cyclic_product_group(moduli).
class QuotientMap {
 public:
  explicit QuotientMap(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  int rank() const { return static_cast<int>(moduli_.size()); }
  std::size_t order() const { return order_; }

  /// Coordinatewise residues in [0, m_i).
  std::vector<std::int64_t> residues(const Element& x) const;
  std::int64_t index_of_residues(std::span<const std::int64_t> residues) const;
  std::vector<std::int64_t> residues_of_index(std::int64_t index) const;
  /// Image of a lattice element as a Cayley index element.
  Element operator()(const Element& x) const;
  /// Product in the quotient via residue arithmetic (no table needed).
  Element multiply(const Element& a, const Element& b) const;

  /// Builds the Cayley table of the target group; throws ResourceError above max_order.
  GroupSpec target_group(std::size_t max_order = 256) const;

 private:
  std::vector<std::int64_t> moduli_;
  std::size_t order_ = 1;
};

}  // namespace galab
