#include "gepi/group.hpp"

#include <algorithm>
#include <string>

#include "gepi/error.hpp"

namespace gepi {

namespace {

constexpr int kMaxOrder = 4096;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

int log2_exact(int m) {
  int n = 0;
  while ((1 << n) < m) ++n;
  return n;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> cyclic_orders)
    : orders_(std::move(cyclic_orders)) {
  if (orders_.empty()) throw DomainError("group: no cyclic factors");
  for (int m : orders_) {
    if (m < 2) throw DomainError("group: cyclic order must be >= 2");
    if (m > kMaxOrder) throw CapacityError("group: order exceeds 4096");
    if (order_ > kMaxOrder / m) throw CapacityError("group: order exceeds 4096");
    order_ *= m;
  }
  strides_.assign(orders_.size(), 1);
  for (int i = static_cast<int>(orders_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * orders_[i + 1];
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(int m) {
  return FiniteAbelianGroup({m});
}

int FiniteAbelianGroup::add(int a, int b) const {
  int out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const int da = (a / strides_[i]) % orders_[i];
    const int db = (b / strides_[i]) % orders_[i];
    out += ((da + db) % orders_[i]) * strides_[i];
  }
  return out;
}

int FiniteAbelianGroup::subtract(int a, int b) const { return add(a, negate(b)); }

int FiniteAbelianGroup::negate(int a) const {
  int out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const int da = (a / strides_[i]) % orders_[i];
    out += ((orders_[i] - da) % orders_[i]) * strides_[i];
  }
  return out;
}

std::vector<int> FiniteAbelianGroup::decode(int index) const {
  if (index < 0 || index >= order_) throw DomainError("decode: index out of range");
  std::vector<int> digits(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    digits[i] = (index / strides_[i]) % orders_[i];
  }
  return digits;
}

int FiniteAbelianGroup::encode(std::span<const int> digits) const {
  if (digits.size() != orders_.size()) throw DomainError("encode: digit count mismatch");
  int index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= orders_[i]) {
      throw DomainError("encode: digit out of range");
    }
    index += digits[i] * strides_[i];
  }
  return index;
}

bool FiniteAbelianGroup::is_two_group() const {
  return std::all_of(orders_.begin(), orders_.end(), is_power_of_two);
}

int FiniteAbelianGroup::exponent() const {
  if (!is_two_group()) throw UnsupportedGroupError("exponent: not a 2-group");
  return log2_exact(order_);
}

FiniteAbelianGroup FiniteAbelianGroup::power(int k) const {
  if (k < 1) throw DomainError("power: k must be >= 1");
  std::vector<int> orders;
  orders.reserve(orders_.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) orders.insert(orders.end(), orders_.begin(), orders_.end());
  return FiniteAbelianGroup(std::move(orders));
}

SubgroupChain SubgroupChain::canonical(const FiniteAbelianGroup& group) {
  if (!group.is_two_group()) {
    throw UnsupportedGroupError("canonical chain: not a 2-group");
  }
  const int n = group.exponent();
  const auto& orders = group.cyclic_orders();
  const int r = static_cast<int>(orders.size());

  // Factor visit order: decreasing cyclic order, ties by original position.
  std::vector<int> factor_rank(r);
  for (int i = 0; i < r; ++i) factor_rank[i] = i;
  std::stable_sort(factor_rank.begin(), factor_rank.end(),
                   [&](int a, int b) { return orders[a] > orders[b]; });

  std::vector<int> exps(r);
  for (int i = 0; i < r; ++i) exps[i] = log2_exact(orders[i]);

  SubgroupChain chain(group);
  std::vector<int> filled(r, 0);  // per factor: current subgroup exponent
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      for (int idx : factor_rank) {
        if (filled[idx] < exps[idx]) {
          ++filled[idx];
          break;
        }
      }
    }
    // Level-k members: digit i must be a multiple of 2^{exps_i - filled_i}.
    std::vector<char> member(group.order(), 0);
    std::vector<int> elems;
    elems.reserve(1 << k);
    for (int e = 0; e < group.order(); ++e) {
      const auto digits = group.decode(e);
      bool ok = true;
      for (int i = 0; i < r && ok; ++i) {
        const int gen = 1 << (exps[i] - filled[i]);
        ok = digits[i] % gen == 0;
      }
      if (ok) {
        member[e] = 1;
        elems.push_back(e);
      }
    }
    chain.membership_.push_back(std::move(member));
    chain.members_.push_back(std::move(elems));
  }
  return chain;
}

const std::vector<int>& SubgroupChain::level(int k) const {
  if (k < 0 || k >= levels()) throw DomainError("chain level out of range");
  return members_[static_cast<std::size_t>(k)];
}

bool SubgroupChain::contains(int k, int element) const {
  if (k < 0 || k >= levels()) throw DomainError("chain level out of range");
  return membership_[static_cast<std::size_t>(k)][static_cast<std::size_t>(element)] != 0;
}

int SubgroupChain::default_offset(int k) const {
  if (k < 0 || k + 1 >= levels()) throw DomainError("chain level out of range");
  for (int e : members_[static_cast<std::size_t>(k + 1)]) {
    if (!contains(k, e)) return e;
  }
  throw Error("chain: no coset representative found");
}

}  // namespace gepi
