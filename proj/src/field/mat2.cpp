#include "bbring/mat2.hpp"

#include "bbring/errors.hpp"

namespace bbring {

Mat2 MatrixRing::scalar(const FqElement &c) const noexcept { return diag(c, c); }

Mat2 MatrixRing::diag(const FqElement &a, const FqElement &b) const noexcept {
  Mat2 m;
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  return m;
}

Mat2 MatrixRing::from_integers(std::int64_t a, std::int64_t b, std::int64_t c,
                               std::int64_t d) const noexcept {
  return Mat2{{field_.from_integer(a), field_.from_integer(b), field_.from_integer(c),
               field_.from_integer(d)}};
}

Mat2 MatrixRing::add(const Mat2 &a, const Mat2 &b) const noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.entries[i] = field_.add(a.entries[i], b.entries[i]);
  return r;
}

Mat2 MatrixRing::sub(const Mat2 &a, const Mat2 &b) const noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.entries[i] = field_.sub(a.entries[i], b.entries[i]);
  return r;
}

Mat2 MatrixRing::neg(const Mat2 &a) const noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.entries[i] = field_.neg(a.entries[i]);
  return r;
}

Mat2 MatrixRing::mul(const Mat2 &a, const Mat2 &b) const noexcept {
  const Field &f = field_;
  Mat2 r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      r.at(i, j) = f.add(f.mul(a.at(i, 0), b.at(0, j)), f.mul(a.at(i, 1), b.at(1, j)));
    }
  }
  return r;
}

Mat2 MatrixRing::scale(const FqElement &c, const Mat2 &a) const noexcept {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.entries[i] = field_.mul(c, a.entries[i]);
  return r;
}

Mat2 MatrixRing::pow(Mat2 a, std::uint64_t n) const noexcept {
  Mat2 r = identity();
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Mat2 MatrixRing::commutator(const Mat2 &a, const Mat2 &b) const noexcept {
  return sub(mul(a, b), mul(b, a));
}

FqElement MatrixRing::det(const Mat2 &a) const noexcept {
  return field_.sub(field_.mul(a.at(0, 0), a.at(1, 1)), field_.mul(a.at(0, 1), a.at(1, 0)));
}

FqElement MatrixRing::trace(const Mat2 &a) const noexcept {
  return field_.add(a.at(0, 0), a.at(1, 1));
}

Mat2 MatrixRing::inverse(const Mat2 &a) const {
  const FqElement d = det(a);
  if (field_.is_zero(d)) throw DomainError("inverse of a singular matrix");
  const FqElement di = field_.inv(d);
  Mat2 adj{{a.at(1, 1), field_.neg(a.at(0, 1)), field_.neg(a.at(1, 0)), a.at(0, 0)}};
  return scale(di, adj);
}

bool MatrixRing::is_scalar(const Mat2 &a) const noexcept {
  return field_.is_zero(a.at(0, 1)) && field_.is_zero(a.at(1, 0)) && a.at(0, 0) == a.at(1, 1);
}

std::string MatrixRing::to_string(const Mat2 &a) const {
  return "[[" + field_.to_string(a.at(0, 0)) + "," + field_.to_string(a.at(0, 1)) + "],[" +
         field_.to_string(a.at(1, 0)) + "," + field_.to_string(a.at(1, 1)) + "]]";
}

} // namespace bbring
