#include "baire/abelian.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include <nlohmann/json.hpp>

namespace baire {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_pow(std::uint64_t p, std::uint32_t m) {
  u128 r = 1;
  for (std::uint32_t k = 0; k < m; ++k) {
    r *= p;
    if (r > kMaxDenominator) throw Error(ErrorKind::Overflow, "denominator exceeds 2^62");
  }
  return static_cast<std::uint64_t>(r);
}

// Reduces a/p^m to lowest terms in place; a == 0 sets m = 0.
void reduce(PruferCoord& c) {
  if (c.a == 0) {
    c.m = 0;
    return;
  }
  while (c.m > 0 && c.a % c.p == 0) {
    c.a /= c.p;
    --c.m;
  }
  if (c.m == 0) c.a = 0;
}

bool key_less(const PruferCoord& x, const PruferCoord& y) { return x.p != y.p ? x.p < y.p : x.i < y.i; }

PruferCoord add_coord(const PruferCoord& x, const PruferCoord& y) {
  PruferCoord r = x;
  r.m = std::max(x.m, y.m);
  const std::uint64_t d = checked_pow(x.p, r.m);
  const u128 ax = static_cast<u128>(x.a) * (d / x.denominator());
  const u128 ay = static_cast<u128>(y.a) * (d / y.denominator());
  r.a = static_cast<std::uint64_t>((ax + ay) % d);
  reduce(r);
  return r;
}

// Inverse of u modulo d, gcd(u, d) = 1.
std::uint64_t mod_inverse(std::uint64_t u, std::uint64_t d) {
  __int128 t = 0, new_t = 1;
  __int128 r = d, new_r = u % d;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += d;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t euler_phi_prime_power(std::uint64_t p, std::uint64_t q) { return q / p * (p - 1); }

}  // namespace

std::uint64_t PruferCoord::denominator() const { return checked_pow(p, m); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

AbelianElement AbelianElement::coord(std::uint64_t p, std::uint64_t i, std::uint64_t a, std::uint32_t m) {
  return from_coords({PruferCoord{p, i, a, m}});
}

AbelianElement AbelianElement::from_coords(const std::vector<PruferCoord>& coords) {
  AbelianElement out;
  for (auto c : coords) {
    if (!is_prime(c.p)) throw Error(ErrorKind::InvalidArgument, std::to_string(c.p) + " is not prime");
    c.a %= c.denominator();
    reduce(c);
    if (c.a == 0) continue;
    AbelianElement single;
    single.coords_.push_back(c);
    out = add(out, single);
  }
  return out;
}

std::uint64_t AbelianElement::weight() const {
  std::uint64_t w = 0;
  for (const auto& c : coords_) w += c.denominator() + c.i;
  return w;
}

AbelianElement add(const AbelianElement& x, const AbelianElement& y) {
  AbelianElement out;
  out.coords_.reserve(x.coords_.size() + y.coords_.size());
  auto a = x.coords_.begin(), b = y.coords_.begin();
  while (a != x.coords_.end() || b != y.coords_.end()) {
    if (b == y.coords_.end() || (a != x.coords_.end() && key_less(*a, *b))) {
      out.coords_.push_back(*a++);
    } else if (a == x.coords_.end() || key_less(*b, *a)) {
      out.coords_.push_back(*b++);
    } else {
      const auto c = add_coord(*a++, *b++);
      if (c.a != 0) out.coords_.push_back(c);
    }
  }
  return out;
}

AbelianElement negate(const AbelianElement& x) {
  AbelianElement out = x;
  for (auto& c : out.coords_) c.a = c.denominator() - c.a;
  return out;
}

AbelianElement subtract(const AbelianElement& x, const AbelianElement& y) { return add(x, negate(y)); }

AbelianElement multiply(const AbelianElement& x, std::uint64_t k) {
  std::vector<PruferCoord> coords;
  for (auto c : x.coords()) {
    const std::uint64_t d = c.denominator();
    c.a = static_cast<std::uint64_t>(static_cast<u128>(c.a) * (k % d) % d);
    coords.push_back(c);
  }
  return AbelianElement::from_coords(coords);
}

std::uint64_t order(const AbelianElement& x) {
  u128 l = 1;
  for (const auto& c : x.coords()) {
    const std::uint64_t d = c.denominator();
    const u128 g = std::gcd(static_cast<std::uint64_t>(l), d);
    l = l / g * d;
    if (l > kMaxDenominator) throw Error(ErrorKind::Overflow, "element order exceeds 2^62");
  }
  return static_cast<std::uint64_t>(l);
}

AbelianElement divide(const AbelianElement& x, std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "cannot divide by 0");
  AbelianElement out;
  for (const auto& c : x.coords_) {
    std::uint64_t u = k;
    std::uint32_t s = 0;
    while (u % c.p == 0) {
      u /= c.p;
      ++s;
    }
    PruferCoord r = c;
    r.m = c.m + s;
    const std::uint64_t d = checked_pow(c.p, r.m);
    r.a = static_cast<std::uint64_t>(static_cast<u128>(mod_inverse(u % d, d)) * c.a % d);
    out.coords_.push_back(r);
  }
  return out;
}

bool enumeration_less(const AbelianElement& x, const AbelianElement& y) {
  const auto wx = x.weight(), wy = y.weight();
  if (wx != wy) return wx < wy;
  if (x.coords().size() != y.coords().size()) return x.coords().size() < y.coords().size();
  auto tuple = [](const PruferCoord& c) { return std::tuple(c.p, c.i, c.m, c.a); };
  return std::lexicographical_compare(x.coords().begin(), x.coords().end(), y.coords().begin(), y.coords().end(),
                                      [&](const PruferCoord& a, const PruferCoord& b) { return tuple(a) < tuple(b); });
}

void FinAbelian::validate() const {
  for (auto q : factors) {
    std::uint64_t p = 2;
    while (q % p != 0 && p <= q) ++p;
    std::uint64_t r = q;
    while (r % p == 0 && r > 1) r /= p;
    if (q < 2 || r != 1) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power >= 2");
  }
}

std::uint64_t FinAbelian::order() const {
  std::uint64_t n = 1;
  for (auto q : factors) n *= q;
  return n;
}

std::string FinAbelian::name() const {
  if (factors.empty()) return "C1";
  std::string out;
  for (auto q : factors) {
    if (!out.empty()) out += 'x';
    out += "C" + std::to_string(q);
  }
  return out;
}

namespace {

std::uint64_t smallest_prime_factor(std::uint64_t q) {
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) return p;
  }
  return q;
}

void partitions(std::uint32_t n, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(n - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

FinAbelian canonical(FinAbelian h) {
  h.validate();
  std::sort(h.factors.begin(), h.factors.end(), [](std::uint64_t a, std::uint64_t b) {
    const auto pa = smallest_prime_factor(a), pb = smallest_prime_factor(b);
    return pa != pb ? pa < pb : a < b;
  });
  return h;
}

std::vector<FinAbelian> fin_abelian_groups(std::uint64_t max_order) {
  std::vector<FinAbelian> out;
  for (std::uint64_t n = 1; n <= max_order; ++n) {
    std::vector<std::vector<std::uint64_t>> choices{{}};
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; rest > 1; ++p) {
      std::uint32_t e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e == 0) continue;
      std::vector<std::vector<std::uint32_t>> parts;
      std::vector<std::uint32_t> cur;
      partitions(e, e, cur, parts);
      std::vector<std::vector<std::uint64_t>> next;
      for (const auto& prefix : choices) {
        for (auto part : parts) {
          std::sort(part.begin(), part.end());
          auto f = prefix;
          for (auto k : part) f.push_back(checked_pow(p, k));
          next.push_back(std::move(f));
        }
      }
      choices = std::move(next);
    }
    std::sort(choices.begin(), choices.end());
    for (auto& f : choices) out.push_back(FinAbelian{std::move(f)});
  }
  return out;
}

std::vector<std::uint64_t> fin_abelian_coordinates(const FinAbelian& h, Label x) {
  std::vector<std::uint64_t> e;
  std::uint64_t rest = x - 1;
  for (auto q : h.factors) {
    e.push_back(rest % q);
    rest /= q;
  }
  return e;
}

FinGroup fin_abelian_group(const FinAbelian& h) {
  h.validate();
  const std::uint64_t n = h.order();
  if (n > 4096) throw Error(ErrorKind::LimitExceeded, "finite Abelian group too large to tabulate");
  std::vector<std::vector<std::uint64_t>> coords(n);
  for (Label x = 1; x <= n; ++x) coords[x - 1] = fin_abelian_coordinates(h, x);
  std::vector<Label> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      std::uint64_t label = 0, stride = 1;
      for (std::size_t j = 0; j < h.factors.size(); ++j) {
        label += (coords[a][j] + coords[b][j]) % h.factors[j] * stride;
        stride *= h.factors[j];
      }
      table[a * n + b] = static_cast<Label>(label + 1);
    }
  }
  return FinGroup::trusted(n, std::move(table), h.name());
}

std::vector<AbelianElement> embed_fin_abelian(const FinAbelian& h,
                                              const std::map<std::uint64_t, std::uint64_t>& next_copy) {
  h.validate();
  auto copies = next_copy;
  std::vector<AbelianElement> out;
  for (auto q : h.factors) {
    const auto p = smallest_prime_factor(q);
    std::uint32_t e = 0;
    for (auto r = q; r > 1; r /= p) ++e;
    auto& copy = copies[p];
    out.push_back(AbelianElement::coord(p, copy++, 1, e));
  }
  return out;
}

std::vector<AbelianElement> fin_abelian_image(const FinAbelian& h, const std::vector<AbelianElement>& generators) {
  if (generators.size() != h.factors.size()) {
    throw Error(ErrorKind::LengthMismatch, "one generator image per factor is required");
  }
  const std::uint64_t n = h.order();
  std::vector<AbelianElement> out;
  out.reserve(n);
  for (Label x = 1; x <= n; ++x) {
    const auto e = fin_abelian_coordinates(h, x);
    AbelianElement acc;
    for (std::size_t j = 0; j < e.size(); ++j) acc = add(acc, multiply(generators[j], e[j]));
    out.push_back(std::move(acc));
  }
  return out;
}

bool verify_abelian_embedding(const FinAbelian& h, const std::vector<AbelianElement>& generators) {
  if (generators.size() != h.factors.size()) return false;
  const auto g = fin_abelian_group(h);
  const auto image = fin_abelian_image(h, generators);
  if (!image[0].is_identity()) return false;
  for (std::size_t a = 0; a < image.size(); ++a) {
    for (std::size_t b = a + 1; b < image.size(); ++b) {
      if (image[a] == image[b]) return false;
    }
  }
  for (Label a = 1; a <= g.order(); ++a) {
    for (Label b = 1; b <= g.order(); ++b) {
      if (add(image[a - 1], image[b - 1]) != image[g.mul(a, b) - 1]) return false;
    }
  }
  return true;
}

AbelianStructure abelian_structure(const FinGroup& g) {
  if (!g.is_abelian()) throw Error(ErrorKind::InvalidArgument, "group is not Abelian");
  FinAbelian h;
  std::uint64_t rest = g.order();
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    // c[k] = log_p #{x : x^(p^k) = 1} = sum_j min(e_j, k)
    std::vector<std::uint32_t> c{0};
    for (std::uint64_t pk = p;; pk *= p) {
      std::uint64_t count = 0;
      for (Label x = 1; x <= g.order(); ++x) count += pk % g.element_order(x) == 0;
      std::uint32_t log = 0;
      for (auto r = count; r > 1; r /= p) ++log;
      if (log == c.back()) break;
      c.push_back(log);
    }
    // Factors of exponent exactly k: (c_k - c_{k-1}) - (c_{k+1} - c_k).
    for (std::size_t k = 1; k < c.size(); ++k) {
      const std::uint32_t at_least_k = c[k] - c[k - 1];
      const std::uint32_t at_least_next = k + 1 < c.size() ? c[k + 1] - c[k] : 0;
      for (std::uint32_t r = 0; r < at_least_k - at_least_next; ++r) h.factors.push_back(checked_pow(p, k));
    }
  }
  h = canonical(h);
  auto iso = find_isomorphism(fin_abelian_group(h), g);
  if (!iso) throw Error(ErrorKind::InvalidArgument, "internal: abelian invariants did not match");
  return {std::move(h), std::move(*iso)};
}

namespace {

constexpr std::uint64_t kW = 48;

// count[w][s][k]: ways to pick s coordinates with keys of index >= k whose
// costs add up to w.
class EnumerationCounts {
 public:
  struct Key {
    std::uint64_t p;
    std::uint64_t i;
  };

  static const EnumerationCounts& get() {
    static const EnumerationCounts instance;
    return instance;
  }

  std::uint64_t count(std::uint64_t w, std::uint64_t s, std::size_t k) const {
    if (w > kW || s > kW / 2) return 0;
    return table_[(w * (kW / 2 + 1) + s) * (keys_.size() + 1) + k];
  }

  std::uint64_t level(std::uint64_t w) const {
    std::uint64_t total = 0;
    for (std::uint64_t s = 0; s <= kW / 2; ++s) total += count(w, s, 0);
    return total;
  }

  const std::vector<Key>& keys() const { return keys_; }

  std::size_t key_index(std::uint64_t p, std::uint64_t i) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), Key{p, i}, [](const Key& a, const Key& b) {
      return a.p != b.p ? a.p < b.p : a.i < b.i;
    });
    return static_cast<std::size_t>(it - keys_.begin());
  }

 private:
  EnumerationCounts() {
    for (std::uint64_t p = 2; p <= kW; ++p) {
      if (!is_prime(p)) continue;
      for (std::uint64_t i = 0; i + p <= kW; ++i) keys_.push_back({p, i});
    }
    const std::size_t nk = keys_.size() + 1;
    table_.assign((kW + 1) * (kW / 2 + 1) * nk, 0);
    auto at = [&](std::uint64_t w, std::uint64_t s, std::size_t k) -> std::uint64_t& {
      return table_[(w * (kW / 2 + 1) + s) * nk + k];
    };
    for (std::size_t k = nk; k-- > 0;) {
      for (std::uint64_t w = 0; w <= kW; ++w) {
        for (std::uint64_t s = 0; s <= kW / 2; ++s) {
          if (k == keys_.size()) {
            at(w, s, k) = (w == 0 && s == 0) ? 1 : 0;
            continue;
          }
          std::uint64_t total = at(w, s, k + 1);
          if (s > 0) {
            const auto [p, i] = keys_[k];
            for (std::uint64_t q = p; q + i <= w; q *= p) {
              total += euler_phi_prime_power(p, q) * at(w - q - i, s - 1, k + 1);
            }
          }
          at(w, s, k) = total;
        }
      }
    }
  }

  std::vector<Key> keys_;
  std::vector<std::uint64_t> table_;
};

}  // namespace

std::uint64_t count_up_to_weight(std::uint64_t w) {
  if (w > kW) throw Error(ErrorKind::LimitExceeded, "weight beyond the enumeration bound");
  const auto& c = EnumerationCounts::get();
  std::uint64_t total = 0;
  for (std::uint64_t v = 0; v <= w; ++v) total += c.level(v);
  return total;
}

std::uint64_t encode(const AbelianElement& x) {
  const std::uint64_t w = x.weight();
  if (w > kW) throw Error(ErrorKind::LimitExceeded, "element weight " + std::to_string(w) + " beyond the enumeration bound");
  const auto& c = EnumerationCounts::get();
  std::uint64_t rank = 1;
  for (std::uint64_t v = 0; v < w; ++v) rank += c.level(v);
  const std::uint64_t s = x.coords().size();
  for (std::uint64_t t = 0; t < s; ++t) rank += c.count(w, t, 0);
  std::uint64_t rem_w = w, rem_s = s;
  std::size_t start = 0;
  for (const auto& coord : x.coords()) {
    const std::size_t target = c.key_index(coord.p, coord.i);
    for (std::size_t k = start; k <= target; ++k) {
      const auto [p, i] = c.keys()[k];
      std::uint32_t m = 1;
      for (std::uint64_t q = p; q + i <= rem_w; q *= p, ++m) {
        const std::uint64_t rest = c.count(rem_w - q - i, rem_s - 1, k + 1);
        if (k < target || m < coord.m) {
          rank += euler_phi_prime_power(p, q) * rest;
        } else if (m == coord.m) {
          const std::uint64_t below = (coord.a - 1) - (coord.a - 1) / p;
          rank += below * rest;
          break;
        } else {
          break;
        }
      }
    }
    rem_w -= coord.denominator() + coord.i;
    --rem_s;
    start = target + 1;
  }
  return rank;
}

AbelianElement enumerate(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "enumeration starts at 1");
  const auto& c = EnumerationCounts::get();
  std::uint64_t rank = n - 1;
  std::uint64_t w = 0;
  for (;; ++w) {
    if (w > kW) throw Error(ErrorKind::LimitExceeded, "index beyond the enumeration bound");
    const auto lv = c.level(w);
    if (rank < lv) break;
    rank -= lv;
  }
  std::uint64_t s = 0;
  while (rank >= c.count(w, s, 0)) rank -= c.count(w, s++, 0);
  std::vector<PruferCoord> coords;
  std::uint64_t rem_w = w, rem_s = s;
  std::size_t k = 0;
  while (rem_s > 0) {
    bool placed = false;
    for (; k < c.keys().size() && !placed; ++k) {
      const auto [p, i] = c.keys()[k];
      std::uint32_t m = 1;
      for (std::uint64_t q = p; q + i <= rem_w; q *= p, ++m) {
        const std::uint64_t rest = c.count(rem_w - q - i, rem_s - 1, k + 1);
        const std::uint64_t block = euler_phi_prime_power(p, q) * rest;
        if (rank >= block) {
          rank -= block;
          continue;
        }
        const std::uint64_t idx = rank / rest;
        rank %= rest;
        coords.push_back(PruferCoord{p, i, idx + idx / (p - 1) + 1, m});
        rem_w -= q + i;
        --rem_s;
        placed = true;
        break;
      }
    }
    if (!placed) throw Error(ErrorKind::InvalidArgument, "internal: enumeration fell off the key list");
  }
  return AbelianElement::from_coords(coords);
}

PartialTable a_prefix_table(std::size_t n) {
  if (n > kMaxPrefix) {
    throw Error(ErrorKind::LimitExceeded, "prefix size " + std::to_string(n) + " exceeds " + std::to_string(kMaxPrefix));
  }
  std::vector<AbelianElement> elems;
  for (std::uint64_t k = 1; k <= n; ++k) elems.push_back(enumerate(k));
  PartialTable t;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      t.set(static_cast<Label>(a + 1), static_cast<Label>(b + 1), static_cast<Label>(encode(add(elems[a], elems[b]))));
    }
  }
  return t;
}

std::optional<Label> table_power(const PartialTable& t, Label m, std::uint64_t k) {
  if (k == 0) return kIdentity;
  Label acc = m;
  for (std::uint64_t j = 1; j < k; ++j) {
    auto next = t.product(acc, m);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

AbelianMonitorReport abelian_monitors(const PartialTable& t, std::uint64_t bound) {
  AbelianMonitorReport r;
  auto labels = t.labels();
  labels.insert(kIdentity);
  for (Label n = 1; n <= bound; ++n) {
    for (std::uint64_t k = 1; k <= bound; ++k) {
      DivisibilityStatus st{n, k, std::nullopt};
      for (Label m : labels) {
        if (table_power(t, m, k) == n) {
          st.witness = m;
          break;
        }
      }
      r.divisibility.push_back(st);
    }
    TorsionStatus ts{n, std::nullopt};
    if (labels.contains(n)) {
      Label acc = n;
      for (std::uint64_t k = 1; k <= std::max<std::uint64_t>(bound, 64); ++k) {
        if (acc == kIdentity) {
          ts.exponent = k;
          break;
        }
        auto next = t.product(acc, n);
        if (!next) break;
        acc = *next;
      }
    }
    r.torsion.push_back(ts);
  }
  for (const auto& h : fin_abelian_groups(bound)) {
    r.embedding.push_back({h, embed_into_table(fin_abelian_group(h), t)});
  }
  return r;
}

void to_json(nlohmann::json& j, const PruferCoord& c) {
  j = nlohmann::json{{"p", c.p}, {"i", c.i}, {"a", c.a}, {"m", c.m}};
}

void to_json(nlohmann::json& j, const AbelianElement& x) {
  j = nlohmann::json{{"coords", x.coords()}};
}

void from_json(const nlohmann::json& j, AbelianElement& x) {
  std::vector<PruferCoord> coords;
  for (const auto& c : j.at("coords")) {
    PruferCoord pc{c.at("p").get<std::uint64_t>(), c.value("i", std::uint64_t{0}), c.at("a").get<std::uint64_t>(),
                   c.at("m").get<std::uint32_t>()};
    if (pc.a >= pc.denominator()) {
      throw Error(ErrorKind::InvalidArgument, "numerator must be below p^m");
    }
    coords.push_back(pc);
  }
  x = AbelianElement::from_coords(coords);
}

void to_json(nlohmann::json& j, const FinAbelian& h) {
  j = nlohmann::json{{"factors", h.factors}, {"name", h.name()}};
}

void from_json(const nlohmann::json& j, FinAbelian& h) {
  h.factors = j.is_array() ? j.get<std::vector<std::uint64_t>>() : j.at("factors").get<std::vector<std::uint64_t>>();
  h.validate();
}

void to_json(nlohmann::json& j, const AbelianMonitorReport& r) {
  auto d = nlohmann::json::array();
  for (const auto& s : r.divisibility) {
    d.push_back({{"n", s.n}, {"k", s.k}, {"witness", s.witness ? nlohmann::json(*s.witness) : nlohmann::json()}});
  }
  auto t = nlohmann::json::array();
  for (const auto& s : r.torsion) {
    t.push_back({{"n", s.n}, {"exponent", s.exponent ? nlohmann::json(*s.exponent) : nlohmann::json()}});
  }
  auto f = nlohmann::json::array();
  for (const auto& s : r.embedding) {
    f.push_back({{"group", s.group.name()}, {"image", s.image ? nlohmann::json(*s.image) : nlohmann::json()}});
  }
  j = nlohmann::json{{"divisibility", d}, {"torsion", t}, {"embedding", f}};
}

}  // namespace baire
