#pragma once

#include <span>
#include <vector>

namespace gepi {

/// A finite abelian group given as a direct sum of cyclic groups.
/// Elements are mixed-radix indices in 0..order-1, the last cyclic factor
/// varying fastest, with componentwise addition modulo the factor orders.
class FiniteAbelianGroup {
 public:
  /// Orders must all be >= 2 and their product at most 4096 (dense
  /// distributions and the O(|G|^2) convolution stay tractable there).
  explicit FiniteAbelianGroup(std::vector<int> cyclic_orders);

  static FiniteAbelianGroup cyclic(int m);

  int order() const { return order_; }
  const std::vector<int>& cyclic_orders() const { return orders_; }

  int add(int a, int b) const;
  int subtract(int a, int b) const;
  int negate(int a) const;

  std::vector<int> decode(int index) const;
  int encode(std::span<const int> digits) const;

  bool is_two_group() const;
  /// n with order == 2^n; throws UnsupportedGroupError for non 2-groups.
  int exponent() const;

  /// G^k, the direct sum of k copies of this group.
  FiniteAbelianGroup power(int k) const;

  bool operator==(const FiniteAbelianGroup& other) const {
    return orders_ == other.orders_;
  }

 private:
  std::vector<int> orders_;
  std::vector<int> strides_;
  int order_ = 1;
};

/// The canonical nested subgroup chain {0} = level 0 < ... < level n = G of a
/// 2-group of order 2^n. Cyclic factors are taken in decreasing order and the
/// chain grows by doubling inside the first factor that still has room, so for
/// Z_{2^n} level k is the set of multiples of 2^{n-k}.
class SubgroupChain {
 public:
  static SubgroupChain canonical(const FiniteAbelianGroup& group);

  const FiniteAbelianGroup& group() const { return group_; }
  int levels() const { return static_cast<int>(members_.size()); }

  /// Sorted element indices of the level-k subgroup (2^k of them).
  const std::vector<int>& level(int k) const;

  bool contains(int k, int element) const;

  /// Smallest element of level k+1 not in level k; the default representative
  /// of the nontrivial coset C_1 of level k inside level k+1.
  int default_offset(int k) const;

 private:
  explicit SubgroupChain(FiniteAbelianGroup group) : group_(std::move(group)) {}

  FiniteAbelianGroup group_;
  std::vector<std::vector<int>> members_;        // per level, sorted
  std::vector<std::vector<char>> membership_;    // per level, indicator
};

}  // namespace gepi
