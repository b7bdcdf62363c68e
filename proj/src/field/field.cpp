#include "bbring/field.hpp"

#include "bbring/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace bbring {

namespace {

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;
}

// Remainder of `num` modulo monic `den`, coefficients mod p. Both constant-first.
std::vector<std::uint64_t> poly_rem(std::vector<std::uint64_t> num,
                                    std::span<const std::uint64_t> den,
                                    std::uint64_t p) {
  const std::size_t d = den.size() - 1;
  for (std::size_t i = num.size(); i-- > d;) {
    const std::uint64_t c = num[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) {
      num[i - d + j] = (num[i - d + j] + p - mod_mul(c, den[j], p)) % p;
    }
  }
  num.resize(std::min(num.size(), d));
  return num;
}

std::uint64_t parse_uint(std::string_view s, const char *what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError(std::string("cannot parse ") + what + " from '" +
                     std::string(s) + "'");
  }
  return v;
}

} // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> poly) {
  if (poly.size() < 2 || poly.back() % p != 1) return false;
  const std::size_t m = poly.size() - 1;
  if (m == 1) return true;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      // Monic trial divisor of degree d whose low coefficients are the base-p digits of code.
      std::vector<std::uint64_t> divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = c % p;
        c /= p;
      }
      divisor[d] = 1;
      auto rem = poly_rem({poly.begin(), poly.end()}, divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](auto x) { return x == 0; })) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::uint64_t> default_irreducible(std::uint64_t p, std::size_t m) {
  if (m == 1) return {0, 1};
  if (p == 3 && m == 2) return {1, 0, 1};    // x^2 + 1
  if (p == 5 && m == 2) return {2, 0, 1};    // x^2 + 2
  if (p == 3 && m == 3) return {1, 2, 0, 1}; // x^3 + 2x + 1
  if (p == 7 && m == 2) return {1, 0, 1};    // x^2 + 1
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint64_t> poly(m + 1, 0);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < m; ++i) {
      poly[i] = c % p;
      c /= p;
    }
    poly[m] = 1;
    if (is_irreducible(p, poly)) return poly;
  }
  throw DomainError("no irreducible polynomial found");
}

FieldParams FieldParams::make(std::uint64_t p, std::size_t m,
                              std::vector<std::uint64_t> irreducible) {
  if (p == 2 || !is_prime(p)) {
    throw UsageError("p must be an odd prime, got " + std::to_string(p));
  }
  if (m < 1 || m > kMaxDegree) {
    throw UsageError("extension degree m must be in [1, " +
                     std::to_string(kMaxDegree) + "]");
  }
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) {
      throw UsageError("q = p^m exceeds the supported bound 2^20");
    }
  }
  if (m == 1) {
    irreducible = {0, 1};
  } else {
    if (irreducible.size() != m + 1) {
      throw UsageError("irreducible polynomial needs m + 1 = " +
                       std::to_string(m + 1) + " coefficients");
    }
    for (auto c : irreducible) {
      if (c >= p) throw UsageError("irreducible coefficients must lie in [0, p)");
    }
    if (irreducible.back() != 1) {
      throw UsageError("irreducible polynomial must be monic");
    }
    if (!is_irreducible(p, irreducible)) {
      throw UsageError("polynomial is reducible over F_" + std::to_string(p));
    }
  }
  FieldParams out;
  out.p = p;
  out.m = m;
  out.irreducible = std::move(irreducible);
  out.q = q;
  return out;
}

FieldParams FieldParams::for_order(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) {
    throw UsageError("q must be odd and at least 3, got " + std::to_string(q));
  }
  if (q > kMaxFieldOrder) {
    throw UsageError("q exceeds the supported bound 2^20");
  }
  std::uint64_t p = 3;
  while (q % p != 0) p += 2;
  if (!is_prime(p)) throw UsageError("q is not a prime power");
  std::size_t m = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) {
    throw UsageError("q = " + std::to_string(q) + " is not a prime power");
  }
  return make(p, m, default_irreducible(p, m));
}

FieldParams FieldParams::parse(std::string_view text) {
  std::uint64_t p = 0;
  std::size_t m = 1;
  std::vector<std::uint64_t> irr;
  bool in_irr = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (tok.empty()) continue;
    if (tok.starts_with("p=")) {
      p = parse_uint(tok.substr(2), "p");
      in_irr = false;
    } else if (tok.starts_with("m=")) {
      m = static_cast<std::size_t>(parse_uint(tok.substr(2), "m"));
      in_irr = false;
    } else if (tok.starts_with("irr=")) {
      irr.push_back(parse_uint(tok.substr(4), "irr"));
      in_irr = true;
    } else if (in_irr) {
      irr.push_back(parse_uint(tok, "irr"));
    } else {
      throw UsageError("unexpected token '" + std::string(tok) +
                       "' in field parameters");
    }
  }
  if (p == 0) throw UsageError("field parameters need p=<prime>");
  if (irr.empty() && m > 1) irr = default_irreducible(p, m);
  return make(p, m, std::move(irr));
}

std::string FieldParams::to_string() const {
  std::ostringstream os;
  os << "p=" << p << ",m=" << m;
  if (m > 1) {
    os << ",irr=";
    for (std::size_t i = 0; i < irreducible.size(); ++i) {
      os << (i ? "," : "") << irreducible[i];
    }
  }
  return os.str();
}

Field::Field(FieldParams params) : params_(std::move(params)) {
  if (params_.q == 0) throw UsageError("uninitialized field parameters");
  limb_width_ = 1;
  while ((std::uint64_t{1} << (8 * limb_width_)) < params_.p) ++limb_width_;
}

FqElement Field::one() const noexcept {
  FqElement r;
  r.coeffs[0] = 1;
  return r;
}

FqElement Field::from_integer(std::int64_t n) const noexcept {
  const auto p = static_cast<std::int64_t>(params_.p);
  std::int64_t r = n % p;
  if (r < 0) r += p;
  FqElement out;
  out.coeffs[0] = static_cast<std::uint32_t>(r);
  return out;
}

FqElement Field::from_index(std::uint64_t index) const {
  if (index >= params_.q) throw UsageError("field index out of range");
  FqElement out;
  for (std::size_t i = 0; i < params_.m; ++i) {
    out.coeffs[i] = static_cast<std::uint32_t>(index % params_.p);
    index /= params_.p;
  }
  return out;
}

std::uint64_t Field::index_of(const FqElement &a) const noexcept {
  std::uint64_t idx = 0;
  for (std::size_t i = params_.m; i-- > 0;) idx = idx * params_.p + a.coeffs[i];
  return idx;
}

FqElement Field::add(const FqElement &a, const FqElement &b) const noexcept {
  FqElement r;
  const auto p = params_.p;
  for (std::size_t i = 0; i < params_.m; ++i) {
    std::uint64_t s = std::uint64_t{a.coeffs[i]} + b.coeffs[i];
    r.coeffs[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  return r;
}

FqElement Field::neg(const FqElement &a) const noexcept {
  FqElement r;
  for (std::size_t i = 0; i < params_.m; ++i) {
    r.coeffs[i] = a.coeffs[i] == 0
                      ? 0
                      : static_cast<std::uint32_t>(params_.p - a.coeffs[i]);
  }
  return r;
}

FqElement Field::sub(const FqElement &a, const FqElement &b) const noexcept {
  return add(a, neg(b));
}

FqElement Field::mul(const FqElement &a, const FqElement &b) const noexcept {
  const auto p = params_.p;
  const std::size_t m = params_.m;
  FqElement r;
  if (m == 1) {
    r.coeffs[0] = static_cast<std::uint32_t>(
        (std::uint64_t{a.coeffs[0]} * b.coeffs[0]) % p);
    return r;
  }
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (std::size_t i = 0; i < m; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a.coeffs[i]} * b.coeffs[j]) % p;
    }
  }
  const auto &f = params_.irreducible;
  for (std::size_t i = 2 * m - 1; i-- > m;) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
    for (std::size_t j = 0; j < m; ++j) {
      prod[i - m + j] = (prod[i - m + j] + (p - c) * f[j]) % p;
    }
  }
  for (std::size_t i = 0; i < m; ++i) r.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

FqElement Field::pow(FqElement a, std::uint64_t n) const noexcept {
  FqElement r = one();
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

FqElement Field::inv(const FqElement &a) const {
  if (is_zero(a)) throw DomainError("inverse of zero in F_" + std::to_string(params_.q));
  return pow(a, params_.q - 2);
}

void Field::serialize(const FqElement &a, std::span<std::uint8_t> out) const {
  if (out.size() != serialized_size()) {
    throw UsageError("serialization buffer has the wrong size");
  }
  for (std::size_t i = 0; i < params_.m; ++i) {
    std::uint32_t v = a.coeffs[i];
    for (std::size_t b = 0; b < limb_width_; ++b) {
      out[i * limb_width_ + b] = static_cast<std::uint8_t>(v & 0xff);
      v >>= 8;
    }
  }
}

FqElement Field::deserialize(std::span<const std::uint8_t> in) const {
  if (in.size() != serialized_size()) {
    throw UsageError("serialized field element has the wrong size");
  }
  FqElement r;
  for (std::size_t i = 0; i < params_.m; ++i) {
    std::uint64_t v = 0;
    for (std::size_t b = limb_width_; b-- > 0;) v = (v << 8) | in[i * limb_width_ + b];
    if (v >= params_.p) throw DomainError("limb not reduced modulo p");
    r.coeffs[i] = static_cast<std::uint32_t>(v);
  }
  return r;
}

std::string Field::to_string(const FqElement &a) const {
  if (params_.m == 1) return std::to_string(a.coeffs[0]);
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < params_.m; ++i) os << (i ? "," : "") << a.coeffs[i];
  os << ")";
  return os.str();
}

std::uint64_t gl2_exponent(const FieldParams &params) {
  const std::uint64_t q = params.q;
  return q * (q * q - 1);
}

} // namespace bbring
