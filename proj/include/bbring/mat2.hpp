#pragma once

#include "bbring/field.hpp"

#include <array>
#include <string>

namespace bbring {

/// 2x2 matrix over F_q, entries in row-major order.
struct Mat2 {
  std::array<FqElement, 4> entries{};

  const FqElement &at(std::size_t row, std::size_t col) const { return entries[2 * row + col]; }
  FqElement &at(std::size_t row, std::size_t col) { return entries[2 * row + col]; }

  bool operator==(const Mat2 &) const = default;
};

/// The ring M_2(F_q).
class MatrixRing {
public:
  explicit MatrixRing(const Field &field) : field_(field) {}

  const Field &field() const noexcept { return field_; }

  Mat2 zero() const noexcept { return {}; }
  Mat2 identity() const noexcept { return scalar(field_.one()); }
  Mat2 scalar(const FqElement &c) const noexcept;
  Mat2 diag(const FqElement &a, const FqElement &b) const noexcept;
  /// Matrix from four small integers (row-major), reduced into the prime subfield.
  Mat2 from_integers(std::int64_t a, std::int64_t b, std::int64_t c,
                     std::int64_t d) const noexcept;

  Mat2 add(const Mat2 &a, const Mat2 &b) const noexcept;
  Mat2 sub(const Mat2 &a, const Mat2 &b) const noexcept;
  Mat2 neg(const Mat2 &a) const noexcept;
  Mat2 mul(const Mat2 &a, const Mat2 &b) const noexcept;
  Mat2 scale(const FqElement &c, const Mat2 &a) const noexcept;
  Mat2 pow(Mat2 a, std::uint64_t n) const noexcept;
  /// ab - ba.
  Mat2 commutator(const Mat2 &a, const Mat2 &b) const noexcept;
  FqElement det(const Mat2 &a) const noexcept;
  FqElement trace(const Mat2 &a) const noexcept;
  /// Throws DomainError when det(a) = 0.
  Mat2 inverse(const Mat2 &a) const;

  bool is_scalar(const Mat2 &a) const noexcept;
  bool is_invertible(const Mat2 &a) const noexcept { return !field_.is_zero(det(a)); }

  std::string to_string(const Mat2 &a) const;

private:
  const Field &field_;
};

} // namespace bbring
