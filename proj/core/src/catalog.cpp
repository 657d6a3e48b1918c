#include "baire/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>

namespace baire {

FinGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic group of order 0");
  std::vector<Label> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Label>((a + b) % n + 1);
  }
  return FinGroup::trusted(n, std::move(t), "C" + std::to_string(n));
}

FinGroup dihedral_group(std::size_t m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "dihedral group needs m >= 1");
  const std::size_t n = 2 * m;
  std::vector<Label> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t i = x % m, a = x / m;
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t k = y % m, b = y / m;
      const std::size_t r = a == 0 ? (i + k) % m : (i + m - k) % m;
      t[x * n + y] = static_cast<Label>(((a + b) % 2) * m + r + 1);
    }
  }
  return FinGroup::trusted(n, std::move(t), "D" + std::to_string(m));
}

namespace {

bool even(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  }
  return inversions % 2 == 0;
}

FinGroup permutation_group(std::size_t k, bool only_even, std::string name) {
  if (k == 0 || k > 6) throw Error(ErrorKind::LimitExceeded, "permutation degree must be in 1..6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!only_even || even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Label> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Label>(i + 1);
  const std::size_t n = perms.size();
  std::vector<Label> t(n * n);
  std::vector<int> q(k);
  // Right action: x*y applies x first, then y.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < k; ++i) q[i] = perms[b][perms[a][i]];
      t[a * n + b] = index.at(q);
    }
  }
  return FinGroup::trusted(n, std::move(t), std::move(name));
}

std::vector<FinGroup> build_catalog(std::size_t max_order) {
  std::vector<FinGroup> found;
  std::vector<Fingerprint> prints;
  auto add = [&](FinGroup g) {
    if (g.order() > max_order) return false;
    const auto f = fingerprint(g);
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (prints[i] == f && find_isomorphism(found[i], g)) return false;
    }
    found.push_back(std::move(g));
    prints.push_back(f);
    return true;
  };
  for (std::size_t n = 1; n <= max_order; ++n) add(cyclic_group(n));
  for (std::size_t k = 3; k <= 5; ++k) {
    std::size_t fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= i;
    if (fact <= max_order) add(symmetric_group(k));
    if (fact / 2 <= max_order) add(alternating_group(k));
  }
  for (std::size_t m = 4; 2 * m <= max_order; ++m) add(dihedral_group(m));
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t count = found.size();
    for (std::size_t i = 1; i < count; ++i) {
      for (std::size_t j = i; j < count; ++j) {
        if (found[i].order() * found[j].order() > max_order) continue;
        grew |= add(direct_product(found[i], found[j]).group);
      }
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const FinGroup& a, const FinGroup& b) { return a.order() < b.order(); });
  return found;
}

}  // namespace

FinGroup symmetric_group(std::size_t k) { return permutation_group(k, false, "S" + std::to_string(k)); }

FinGroup alternating_group(std::size_t k) { return permutation_group(k, true, "A" + std::to_string(k)); }

const std::vector<FinGroup>& catalog(std::size_t max_order, std::size_t limit) {
  limit = std::min(limit, kCatalogHardLimit);
  if (max_order > limit) {
    throw Error(ErrorKind::LimitExceeded,
                "catalog order " + std::to_string(max_order) + " exceeds limit " + std::to_string(limit));
  }
  if (max_order == 0) throw Error(ErrorKind::InvalidArgument, "catalog order must be >= 1");
  static std::mutex mu;
  static std::map<std::size_t, std::vector<FinGroup>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(max_order);
  if (it == cache.end()) it = cache.emplace(max_order, build_catalog(max_order)).first;
  return it->second;
}

FinGroup group_by_name(std::string_view name) {
  auto fail = [&]() -> FinGroup {
    throw Error(ErrorKind::ParseError, "unknown group name '" + std::string(name) + "'");
  };
  std::vector<FinGroup> factors;
  std::size_t pos = 0;
  while (pos <= name.size()) {
    const std::size_t end = std::min(name.find('x', pos), name.size());
    const auto part = name.substr(pos, end - pos);
    if (part.size() < 2) return fail();
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(part.data() + 1, part.data() + part.size(), n);
    if (ec != std::errc{} || ptr != part.data() + part.size() || n == 0 || n > kCatalogHardLimit) return fail();
    switch (part[0]) {
      case 'C': factors.push_back(cyclic_group(n)); break;
      case 'D': factors.push_back(dihedral_group(n)); break;
      case 'S': factors.push_back(symmetric_group(n)); break;
      case 'A': factors.push_back(alternating_group(n)); break;
      default: return fail();
    }
    pos = end + 1;
  }
  FinGroup g = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, factors[i]).group;
  return g;
}

}  // namespace baire
