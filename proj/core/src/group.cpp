#include "galab/group.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "galab/error.hpp"

namespace galab {

std::string to_string(const Element& x) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ',';
    os << x[i];
  }
  os << ']';
  return os.str();
}

std::size_t ElementHash::operator()(const Element& x) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ x.size();
  for (auto v : x.code()) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::lattice(int rank) {
  if (rank < 1) throw UsageError("lattice rank must be >= 1");
  GroupSpec g;
  g.kind_ = GroupKind::lattice;
  g.rank_ = rank;
  return g;
}

GroupSpec GroupSpec::free(int rank) {
  if (rank < 1) throw UsageError("free group rank must be >= 1");
  GroupSpec g;
  g.kind_ = GroupKind::free;
  g.rank_ = rank;
  return g;
}

GroupSpec GroupSpec::cayley(const std::vector<std::vector<int>>& table, int identity) {
  const int n = static_cast<int>(table.size());
  if (n < 1) throw UsageError("Cayley table must be non-empty");
  if (identity < 0 || identity >= n) throw UsageError("identity index out of range");

  auto data = std::make_shared<CayleyData>();
  data->order = n;
  data->identity = identity;
  data->table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) throw UsageError("Cayley table is not square");
    for (int b = 0; b < n; ++b) {
      const int v = table[a][b];
      if (v < 0 || v >= n) throw UsageError("Cayley table entry out of range");
      data->table[static_cast<std::size_t>(a) * n + b] = v;
    }
  }
  const auto at = [&](int a, int b) { return data->table[static_cast<std::size_t>(a) * n + b]; };

  for (int a = 0; a < n; ++a) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row_seen[at(a, b)]++ || col_seen[at(b, a)]++)
        throw UsageError("Cayley table is not a Latin square");
    }
    if (at(identity, a) != a || at(a, identity) != a)
      throw UsageError("identity row/column does not act trivially");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          throw UsageError("Cayley table is not associative");

  data->inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (at(a, b) == identity) {
        data->inverse[a] = b;
        break;
      }
    }
    if (at(data->inverse[a], a) != identity) throw UsageError("element lacks a two-sided inverse");
  }

  GroupSpec g;
  g.kind_ = GroupKind::cayley;
  g.rank_ = 0;
  g.cayley_ = std::move(data);
  return g;
}

std::size_t GroupSpec::order() const {
  return kind_ == GroupKind::cayley ? static_cast<std::size_t>(cayley_->order) : 0;
}

Element GroupSpec::identity() const {
  switch (kind_) {
    case GroupKind::lattice:
      return Element(std::vector<std::int64_t>(rank_, 0));
    case GroupKind::cayley:
      return Element::index(cayley_->identity);
    case GroupKind::free:
      return Element{};
  }
  return {};
}

bool GroupSpec::contains(const Element& x) const {
  switch (kind_) {
    case GroupKind::lattice:
      return static_cast<int>(x.size()) == rank_;
    case GroupKind::cayley:
      return x.size() == 1 && x[0] >= 0 && x[0] < cayley_->order;
    case GroupKind::free:
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0 || x[i] > rank_ || x[i] < -rank_) return false;
        if (i + 1 < x.size() && x[i] == -x[i + 1]) return false;
      }
      return true;
  }
  return false;
}

void GroupSpec::require(const Element& x) const {
  if (!contains(x)) throw UsageError("element " + to_string(x) + " does not belong to " + describe());
}

Element GroupSpec::multiply(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case GroupKind::lattice: {
      std::vector<std::int64_t> out(a.vec());
      for (int i = 0; i < rank_; ++i) out[i] += b[i];
      return Element(std::move(out));
    }
    case GroupKind::cayley:
      return Element::index(cayley_->table[static_cast<std::size_t>(a[0]) * cayley_->order + b[0]]);
    case GroupKind::free: {
      // Cancel the longest suffix of a against the prefix of b.
      std::size_t cancel = 0;
      while (cancel < a.size() && cancel < b.size() &&
             a[a.size() - 1 - cancel] == -b[cancel])
        ++cancel;
      std::vector<std::int64_t> out(a.vec().begin(), a.vec().end() - static_cast<std::ptrdiff_t>(cancel));
      out.insert(out.end(), b.vec().begin() + static_cast<std::ptrdiff_t>(cancel), b.vec().end());
      return Element(std::move(out));
    }
  }
  return {};
}

Element GroupSpec::inverse(const Element& a) const {
  require(a);
  switch (kind_) {
    case GroupKind::lattice: {
      std::vector<std::int64_t> out(a.vec());
      for (auto& v : out) v = -v;
      return Element(std::move(out));
    }
    case GroupKind::cayley:
      return Element::index(cayley_->inverse[a[0]]);
    case GroupKind::free: {
      std::vector<std::int64_t> out(a.vec().rbegin(), a.vec().rend());
      for (auto& v : out) v = -v;
      return Element(std::move(out));
    }
  }
  return {};
}

bool GroupSpec::is_identity(const Element& a) const { return a == identity(); }

std::int64_t GroupSpec::length(const Element& x) const {
  require(x);
  switch (kind_) {
    case GroupKind::lattice: {
      std::int64_t s = 0;
      for (auto v : x.code()) s += v < 0 ? -v : v;
      return s;
    }
    case GroupKind::cayley:
      return x[0] == cayley_->identity ? 0 : 1;
    case GroupKind::free:
      return static_cast<std::int64_t>(x.size());
  }
  return 0;
}

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max()
                                                         : a + b;
}

}  // namespace

std::size_t GroupSpec::ball_size(int r) const {
  if (r < 0) throw UsageError("ball radius must be >= 0");
  switch (kind_) {
    case GroupKind::lattice: {
      std::size_t s = 1;
      for (int i = 0; i < rank_; ++i) s = saturating_mul(s, 2 * static_cast<std::size_t>(r) + 1);
      return s;
    }
    case GroupKind::cayley:
      return r == 0 ? 1 : order();
    case GroupKind::free: {
      // Sphere of radius m has 2k(2k-1)^(m-1) words.
      std::size_t total = 1;
      std::size_t sphere = 2 * static_cast<std::size_t>(rank_);
      for (int m = 1; m <= r; ++m) {
        total = saturating_add(total, sphere);
        sphere = saturating_mul(sphere, 2 * static_cast<std::size_t>(rank_) - 1);
      }
      return total;
    }
  }
  return 0;
}

Window GroupSpec::ball(int r, std::size_t cap) const {
  const std::size_t n = ball_size(r);
  if (n > cap)
    throw ResourceError("ball of radius " + std::to_string(r) + " in " + describe() + " has " +
                        std::to_string(n) + " elements, cap is " + std::to_string(cap));
  std::vector<Element> out;
  out.reserve(n);
  switch (kind_) {
    case GroupKind::lattice: {
      std::vector<std::int64_t> x(rank_, -r);
      while (true) {
        out.emplace_back(x);
        int i = rank_ - 1;
        while (i >= 0 && x[i] == r) x[i--] = -r;
        if (i < 0) break;
        ++x[i];
      }
      break;
    }
    case GroupKind::cayley:
      if (r == 0) {
        out.push_back(identity());
      } else {
        for (int i = 0; i < cayley_->order; ++i) out.push_back(Element::index(i));
      }
      break;
    case GroupKind::free: {
      std::vector<Element> frontier{Element{}};
      out.push_back(Element{});
      for (int m = 1; m <= r; ++m) {
        std::vector<Element> next;
        for (const auto& w : frontier) {
          for (std::int64_t l = -rank_; l <= rank_; ++l) {
            if (l == 0 || (!w.empty() && w[w.size() - 1] == -l)) continue;
            std::vector<std::int64_t> code(w.vec());
            code.push_back(l);
            next.emplace_back(std::move(code));
          }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
      }
      break;
    }
  }
  return Window::sorted(std::move(out));
}

std::span<const int> GroupSpec::table() const {
  if (!cayley_) return {};
  return cayley_->table;
}

std::span<const int> GroupSpec::inverse_table() const {
  if (!cayley_) return {};
  return cayley_->inverse;
}

std::string GroupSpec::describe() const {
  switch (kind_) {
    case GroupKind::lattice:
      return "Z^" + std::to_string(rank_);
    case GroupKind::cayley:
      return "Cayley group of order " + std::to_string(cayley_->order);
    case GroupKind::free:
      return "F_" + std::to_string(rank_);
  }
  return "?";
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind_ != b.kind_ || a.rank_ != b.rank_) return false;
  if (a.kind_ != GroupKind::cayley) return true;
  if (a.cayley_ == b.cayley_) return true;
  return a.cayley_->identity == b.cayley_->identity && a.cayley_->table == b.cayley_->table;
}

// ---------------------------------------------------------------------------
// Window

Window::Window(std::vector<Element> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], i).second)
      throw UsageError("window contains duplicate element " + to_string(elements_[i]));
  }
}

Window Window::sorted(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Window(std::move(elements));
}

std::optional<std::size_t> Window::index_of(const Element& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// QuotientMap

QuotientMap::QuotientMap(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw UsageError("quotient needs at least one modulus");
  for (auto m : moduli_) {
    if (m < 1) throw UsageError("quotient moduli must be >= 1, got " + std::to_string(m));
    order_ = saturating_mul(order_, static_cast<std::size_t>(m));
  }
}

std::vector<std::int64_t> QuotientMap::residues(const Element& x) const {
  if (x.size() != moduli_.size())
    throw UsageError("element " + to_string(x) + " has wrong rank for quotient");
  std::vector<std::int64_t> r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = x[i] % moduli_[i];
    if (r[i] < 0) r[i] += moduli_[i];
  }
  return r;
}

std::int64_t QuotientMap::index_of_residues(std::span<const std::int64_t> residues) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + residues[i];
  return idx;
}

std::vector<std::int64_t> QuotientMap::residues_of_index(std::int64_t index) const {
  std::vector<std::int64_t> r(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    r[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return r;
}

Element QuotientMap::operator()(const Element& x) const {
  return Element::index(index_of_residues(residues(x)));
}

Element QuotientMap::multiply(const Element& a, const Element& b) const {
  auto ra = residues_of_index(a[0]);
  const auto rb = residues_of_index(b[0]);
  for (std::size_t i = 0; i < ra.size(); ++i) ra[i] = (ra[i] + rb[i]) % moduli_[i];
  return Element::index(index_of_residues(ra));
}

GroupSpec QuotientMap::target_group(std::size_t max_order) const {
  if (order_ > max_order)
    throw ResourceError("quotient of order " + std::to_string(order_) + " exceeds cap " +
                        std::to_string(max_order));
  return cyclic_product_group(moduli_);
}

}  // namespace galab
