#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bbring {

/// Largest supported field order. Keeps q(q^2 - 1) below 2^61.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

/// Largest extension degree reachable under kMaxFieldOrder (3^12 < 2^20 < 3^13).
inline constexpr std::size_t kMaxDegree = 12;

/// Parameters of F_q = F_p[x] / (irreducible), q = p^m, p odd.
///
/// `irreducible` holds m + 1 coefficients, constant term first, and is monic.
/// For m = 1 it is the polynomial x and plays no role in arithmetic.
struct FieldParams {
  std::uint64_t p = 0;
  std::size_t m = 0;
  std::vector<std::uint64_t> irreducible;
  std::uint64_t q = 0;

  /// Validates and builds parameters. Throws UsageError on any violation.
  static FieldParams make(std::uint64_t p, std::size_t m,
                          std::vector<std::uint64_t> irreducible);

  /// Splits q into p^m and picks the built-in (or first found) irreducible.
  static FieldParams for_order(std::uint64_t q);

  /// Parses "p=3,m=2,irr=1,0,1"; `irr` may be omitted to use the default.
  static FieldParams parse(std::string_view text);

  std::string to_string() const;

  bool operator==(const FieldParams &) const = default;
};

bool is_prime(std::uint64_t n);

/// Full irreducibility test by trial division with every monic polynomial of
/// degree <= m/2. Intended for desk-scale p^m only.
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> poly);

/// Built-in modulus for (p, m): fixed choices for q in {9, 25, 27, 49},
/// otherwise the lexicographically first monic irreducible.
std::vector<std::uint64_t> default_irreducible(std::uint64_t p, std::size_t m);

/// An element of F_q as coefficients of a residue polynomial, constant first.
/// Coefficients at positions >= m are always zero.
struct FqElement {
  std::array<std::uint32_t, kMaxDegree> coeffs{};

  bool operator==(const FqElement &) const = default;
};

/// Arithmetic in F_q for a fixed set of parameters.
class Field {
public:
  explicit Field(FieldParams params);

  const FieldParams &params() const noexcept { return params_; }
  std::uint64_t order() const noexcept { return params_.q; }
  std::uint64_t characteristic() const noexcept { return params_.p; }
  std::size_t degree() const noexcept { return params_.m; }

  FqElement zero() const noexcept { return {}; }
  FqElement one() const noexcept;
  /// Image of an integer in the prime subfield.
  FqElement from_integer(std::int64_t n) const noexcept;
  /// Bijection [0, q) -> F_q reading `index` in base p (constant digit first).
  FqElement from_index(std::uint64_t index) const;
  std::uint64_t index_of(const FqElement &a) const noexcept;

  bool is_zero(const FqElement &a) const noexcept { return a == FqElement{}; }

  FqElement add(const FqElement &a, const FqElement &b) const noexcept;
  FqElement sub(const FqElement &a, const FqElement &b) const noexcept;
  FqElement neg(const FqElement &a) const noexcept;
  FqElement mul(const FqElement &a, const FqElement &b) const noexcept;
  FqElement pow(FqElement a, std::uint64_t n) const noexcept;
  /// a^(q-2). Throws DomainError for a = 0.
  FqElement inv(const FqElement &a) const;

  /// Bytes per coefficient in the canonical serialization.
  std::size_t limb_width() const noexcept { return limb_width_; }
  std::size_t serialized_size() const noexcept { return params_.m * limb_width_; }
  /// m little-endian limbs of limb_width() bytes each.
  void serialize(const FqElement &a, std::span<std::uint8_t> out) const;
  /// Throws DomainError when a limb is not reduced mod p.
  FqElement deserialize(std::span<const std::uint8_t> in) const;

  std::string to_string(const FqElement &a) const;

private:
  FieldParams params_;
  std::size_t limb_width_;
};

/// q (q^2 - 1), the exponent of GL_2(F_q).
std::uint64_t gl2_exponent(const FieldParams &params);

} // namespace bbring
