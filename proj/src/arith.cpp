#include "coversys/arith.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace coversys {

namespace {

constexpr std::uint64_t kValueLimit = std::uint64_t{1} << 63;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kValueLimit / a) throw CapacityError("modulus exceeds 2^63");
  return a * b;
}

std::uint64_t ipow(std::uint64_t p, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, p);
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Inverse of a modulo m, for gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::invalid_argument("non-invertible residue in CRT");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  if (s.empty()) throw std::invalid_argument("empty " + std::string(what));
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
      throw std::invalid_argument(std::string(what) + " overflows");
    }
    v = v * 10 + digit;
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

FactoredModulus::FactoredModulus(FactorMap factors) {
  for (const auto& [p, e] : factors) {
    if (e == 0) continue;
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    factors_[p] = e;
  }
}

FactoredModulus FactoredModulus::from_integer(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("modulus must be positive");
  FactorMap f;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  }
  if (n > 1) ++f[n];
  FactoredModulus out;
  out.factors_ = std::move(f);
  return out;
}

FactoredModulus FactoredModulus::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) throw std::invalid_argument("empty modulus");
  FactoredModulus out;
  std::size_t start = 0;
  while (start <= compact.size()) {
    const std::size_t star = compact.find('*', start);
    const std::string_view token =
        std::string_view(compact).substr(start, star == std::string::npos ? std::string::npos
                                                                          : star - start);
    const std::size_t caret = token.find('^');
    const std::uint64_t base = parse_uint(token.substr(0, caret), "modulus base");
    const std::uint64_t exp =
        caret == std::string_view::npos ? 1 : parse_uint(token.substr(caret + 1), "exponent");
    if (base == 0) throw std::invalid_argument("modulus base must be positive");
    if (exp > 64) throw std::invalid_argument("exponent too large");
    const FactoredModulus part = from_integer(base);
    for (const auto& [p, e] : part.factors()) {
      if (exp > 0) out.factors_[p] += e * static_cast<std::uint32_t>(exp);
    }
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return out;
}

std::uint32_t FactoredModulus::exponent(std::uint64_t p) const {
  auto it = factors_.find(p);
  return it == factors_.end() ? 0 : it->second;
}

std::optional<std::uint64_t> FactoredModulus::value() const {
  try {
    return value_or_throw();
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

std::uint64_t FactoredModulus::value_or_throw() const {
  std::uint64_t v = 1;
  for (const auto& [p, e] : factors_) v = checked_mul(v, ipow(p, e));
  return v;
}

bool FactoredModulus::divides(const FactoredModulus& other) const {
  for (const auto& [p, e] : factors_) {
    if (other.exponent(p) < e) return false;
  }
  return true;
}

FactoredModulus FactoredModulus::lcm(const FactoredModulus& other) const {
  FactoredModulus out = *this;
  for (const auto& [p, e] : other.factors_) {
    auto& slot = out.factors_[p];
    slot = std::max(slot, e);
  }
  return out;
}

std::size_t FactoredModulus::index_count() const {
  std::size_t n = 0;
  for (const auto& [p, e] : factors_) n += e;
  return n;
}

std::string FactoredModulus::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : factors_) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

std::vector<IndexPair> index_set(const FactoredModulus& n) {
  std::vector<IndexPair> out;
  for (const auto& [p, g] : n.factors()) {
    for (std::uint32_t e = 1; e <= g; ++e) out.push_back({p, e});
  }
  return out;
}

std::vector<IndexPair> index_set_above(const FactoredModulus& n, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  std::vector<IndexPair> out;
  for (const IndexPair& pe : index_set(n)) {
    if (static_cast<double>(pe.p) * delta > 1.0) out.push_back(pe);
  }
  return out;
}

ProductSpace index_space(const FactoredModulus& n) {
  std::vector<std::uint32_t> sizes;
  for (const IndexPair& pe : index_set(n)) {
    if (pe.p >= Hyperplane::kFree) throw CapacityError("prime too large for a coordinate");
    sizes.push_back(static_cast<std::uint32_t>(pe.p));
  }
  return ProductSpace(std::move(sizes));
}

Progression::Progression(std::uint64_t a, FactoredModulus d) : d_(std::move(d)) {
  a_ = a % d_.value_or_throw();
}

bool operator<(const Progression& x, const Progression& y) {
  const std::uint64_t dx = x.modulus_value();
  const std::uint64_t dy = y.modulus_value();
  if (dx != dy) return dx < dy;
  return x.residue() < y.residue();
}

std::string to_string(const Progression& p) {
  return std::to_string(p.residue()) + " (mod " + std::to_string(p.modulus_value()) + ")";
}

Point digit_map(std::uint64_t x, const FactoredModulus& n) {
  const std::uint64_t nv = n.value_or_throw();
  if (x >= nv) throw std::invalid_argument("residue out of range for digit map");
  Point out;
  out.reserve(n.index_count());
  for (const auto& [p, g] : n.factors()) {
    std::uint64_t r = x % ipow(p, g);
    for (std::uint32_t e = 1; e <= g; ++e) {
      out.push_back(static_cast<std::uint32_t>(r % p));
      r /= p;
    }
  }
  return out;
}

namespace {

// CRT over the prime powers p^j_p, given residues r_p mod p^j_p.
std::uint64_t crt(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& parts) {
  std::uint64_t modulus = 1;
  std::uint64_t x = 0;
  for (const auto& [r, m] : parts) {
    if (m == 1) continue;
    // x' = x + modulus * t with t = (r - x) * modulus^{-1} mod m.
    const std::uint64_t inv = invmod(modulus % m, m);
    const std::uint64_t diff = (r + m - x % m) % m;
    const std::uint64_t t = mulmod(diff, inv, m);
    x += modulus * t;
    modulus = checked_mul(modulus, m);
  }
  return x;
}

}  // namespace

std::uint64_t digit_unmap(std::span<const std::uint32_t> point, const FactoredModulus& n) {
  if (point.size() != n.index_count()) throw std::invalid_argument("dimension mismatch");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;
  std::size_t c = 0;
  for (const auto& [p, g] : n.factors()) {
    std::uint64_t r = 0;
    std::uint64_t place = 1;
    for (std::uint32_t e = 1; e <= g; ++e, ++c) {
      if (point[c] >= p) throw std::invalid_argument("digit out of range");
      r += place * point[c];
      place *= p;
    }
    parts.emplace_back(r, place);
  }
  return crt(parts);
}

Hyperplane progression_to_hyperplane(const Progression& a, const FactoredModulus& n) {
  if (!a.modulus().divides(n)) {
    throw std::invalid_argument("modulus " + a.modulus().to_string() + " does not divide " +
                                n.to_string());
  }
  std::vector<std::uint32_t> c;
  c.reserve(n.index_count());
  for (const auto& [p, g] : n.factors()) {
    const std::uint32_t v = a.modulus().exponent(p);
    std::uint64_t r = a.residue() % ipow(p, v);
    for (std::uint32_t e = 1; e <= g; ++e) {
      if (e <= v) {
        c.push_back(static_cast<std::uint32_t>(r % p));
        r /= p;
      } else {
        c.push_back(Hyperplane::kFree);
      }
    }
  }
  return Hyperplane(std::move(c));
}

bool is_arithmetic(const Hyperplane& h, const FactoredModulus& n) {
  if (h.dim() != n.index_count()) return false;
  std::size_t c = 0;
  for (const auto& [p, g] : n.factors()) {
    bool seen_free = false;
    for (std::uint32_t e = 1; e <= g; ++e, ++c) {
      if (h.is_free(c)) {
        seen_free = true;
      } else if (seen_free) {
        return false;
      }
    }
  }
  return true;
}

Progression hyperplane_to_progression(const Hyperplane& h, const FactoredModulus& n) {
  if (!is_arithmetic(h, n)) {
    throw std::invalid_argument("hyperplane " + to_string(h) + " is not arithmetic");
  }
  FactoredModulus::FactorMap d;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;
  std::size_t c = 0;
  for (const auto& [p, g] : n.factors()) {
    std::uint64_t r = 0;
    std::uint64_t place = 1;
    std::uint32_t j = 0;
    for (std::uint32_t e = 1; e <= g; ++e, ++c) {
      if (h.is_fixed(c)) {
        if (h.value(c) >= p) throw std::invalid_argument("digit out of range");
        r += place * h.value(c);
        place *= p;
        ++j;
      }
    }
    if (j > 0) d[p] = j;
    parts.emplace_back(r, place);
  }
  return Progression(crt(parts), FactoredModulus(std::move(d)));
}

FactoredModulus lcm_of(std::span<const Progression> system) {
  if (system.empty()) throw std::invalid_argument("lcm of an empty system");
  FactoredModulus out;
  for (const Progression& a : system) out = out.lcm(a.modulus());
  return out;
}

}  // namespace coversys
