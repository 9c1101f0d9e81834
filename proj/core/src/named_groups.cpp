#include <algorithm>
#include <numeric>

#include "galab/error.hpp"
#include "galab/group.hpp"

namespace galab {

namespace {

using Table = std::vector<std::vector<int>>;

constexpr std::size_t kMaxNamedOrder = 4096;

}  // namespace

GroupSpec cyclic_group(int n) {
  if (n < 1) throw UsageError("cyclic group order must be >= 1");
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return GroupSpec::cayley(t, 0);
}

GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  if (!a.is_finite() || !b.is_finite()) throw UsageError("direct_product needs two Cayley groups");
  const int na = static_cast<int>(a.order());
  const int nb = static_cast<int>(b.order());
  if (static_cast<std::size_t>(na) * nb > kMaxNamedOrder)
    throw ResourceError("direct product order too large");
  const auto ta = a.table();
  const auto tb = b.table();
  const int n = na * nb;
  Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int p = ta[static_cast<std::size_t>(x / nb) * na + y / nb];
      const int q = tb[static_cast<std::size_t>(x % nb) * nb + y % nb];
      t[x][y] = p * nb + q;
    }
  return GroupSpec::cayley(t, static_cast<int>(a.identity()[0] * nb + b.identity()[0]));
}

GroupSpec dihedral_group(int n) {
  if (n < 1) throw UsageError("dihedral parameter must be >= 1");
  // r^i -> i, s r^i -> n + i, with s r s = r^-1.
  const int order = 2 * n;
  Table t(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const bool xs = x >= n, ys = y >= n;
      const int i = x % n, j = y % n;
      if (!xs && !ys) t[x][y] = (i + j) % n;                  // r^i r^j
      else if (!xs && ys) t[x][y] = n + ((j - i) % n + n) % n;  // r^i s r^j = s r^(j-i)
      else if (xs && !ys) t[x][y] = n + (i + j) % n;          // s r^i r^j
      else t[x][y] = ((j - i) % n + n) % n;                   // s r^i s r^j = r^(j-i)
    }
  return GroupSpec::cayley(t, 0);
}

GroupSpec symmetric_group(int n) {
  if (n < 1 || n > 6) throw UsageError("symmetric_group supports 1 <= n <= 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const int order = static_cast<int>(perms.size());
  const auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table t(order, std::vector<int>(order));
  std::vector<int> c(n);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(c);
    }
  return GroupSpec::cayley(t, 0);
}

GroupSpec quaternion_group() {
  // Units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k; index = 2*axis + (sign<0).
  // Product of basis units: axis_mul[a][b] = (sign, axis).
  static constexpr int kSign[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static constexpr int kAxis[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  Table t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int ax = x / 2, ay = y / 2;
      const int sx = x % 2 ? -1 : 1, sy = y % 2 ? -1 : 1;
      const int s = sx * sy * kSign[ax][ay];
      t[x][y] = 2 * kAxis[ax][ay] + (s < 0 ? 1 : 0);
    }
  return GroupSpec::cayley(t, 0);
}

GroupSpec cyclic_product_group(std::span<const std::int64_t> moduli) {
  const QuotientMap q(std::vector<std::int64_t>(moduli.begin(), moduli.end()));
  if (q.order() > kMaxNamedOrder) throw ResourceError("cyclic product order too large");
  const int n = static_cast<int>(q.order());
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[a][b] = static_cast<int>(q.multiply(Element::index(a), Element::index(b))[0]);
  return GroupSpec::cayley(t, 0);
}

}  // namespace galab
