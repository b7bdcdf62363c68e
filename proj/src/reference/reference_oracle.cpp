#include "bbring/reference_oracle.hpp"

#include "bbring/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <vector>

namespace bbring {

namespace {

std::atomic<SessionId> next_session{1};

enum Stream : std::uint64_t { kSecretStream = 1, kSessionStream = 2, kHarnessStream = 3 };

} // namespace

ReferenceOracle::ReferenceOracle(FieldParams params, std::uint64_t seed)
    : field_(std::make_unique<Field>(std::move(params))),
      matrices_(std::make_unique<MatrixRing>(*field_)),
      seed_(seed),
      session_(next_session.fetch_add(1)),
      string_length_(4 * field_->serialized_size() + kNonceBytes),
      rng_(seed, kSessionStream),
      harness_rng_(seed, kHarnessStream) {
  CounterRng secret_rng(seed, kSecretStream);
  const std::uint64_t q = field_->order();
  do {
    for (auto &e : secret_.conjugator.entries) e = field_->from_index(secret_rng.below(q));
  } while (!matrices_->is_invertible(secret_.conjugator));
  secret_.conjugator_inverse = matrices_->inverse(secret_.conjugator);
  for (auto &k : secret_.round_keys) k = secret_rng();
}

void ReferenceOracle::check(const Cryptoelement &x) const {
  if (x.session() != session_) {
    throw UsageError("cryptoelement belongs to session " + std::to_string(x.session()) +
                     ", not " + std::to_string(session_));
  }
  if (x.size() != string_length_) throw UsageError("cryptoelement has the wrong length");
}

void ReferenceOracle::round_function(std::uint64_t key, std::span<const std::uint8_t> in,
                                     std::span<std::uint8_t> out) const {
  std::uint64_t h = key;
  for (std::size_t i = 0; i < in.size(); i += 8) {
    std::uint64_t chunk = 0;
    const std::size_t n = std::min<std::size_t>(8, in.size() - i);
    std::memcpy(&chunk, in.data() + i, n);
    h = splitmix64(h ^ chunk ^ (std::uint64_t{n} << 56));
  }
  for (std::size_t i = 0; i < out.size(); i += 8) {
    const std::uint64_t block = splitmix64(h + i);
    const std::size_t n = std::min<std::size_t>(8, out.size() - i);
    for (std::size_t b = 0; b < n; ++b) out[i + b] ^= static_cast<std::uint8_t>(block >> (8 * b));
  }
}

// Round i maps (L, R) to (R, L ^ F_i(R)).
void ReferenceOracle::feistel_forward(std::span<std::uint8_t> buf) const {
  const std::size_t half = buf.size() / 2;
  std::vector<std::uint8_t> tmp(half);
  for (unsigned round = 0; round < kFeistelRounds; ++round) {
    auto left = buf.first(half);
    auto right = buf.subspan(half);
    std::copy(left.begin(), left.end(), tmp.begin());
    round_function(secret_.round_keys[round], right, tmp);
    std::copy(right.begin(), right.end(), left.begin());
    std::copy(tmp.begin(), tmp.end(), right.begin());
  }
}

void ReferenceOracle::feistel_backward(std::span<std::uint8_t> buf) const {
  const std::size_t half = buf.size() / 2;
  std::vector<std::uint8_t> tmp(half);
  for (unsigned round = kFeistelRounds; round-- > 0;) {
    auto left = buf.first(half);
    auto right = buf.subspan(half);
    std::copy(right.begin(), right.end(), tmp.begin());
    round_function(secret_.round_keys[round], left, tmp);
    std::copy(left.begin(), left.end(), right.begin());
    std::copy(tmp.begin(), tmp.end(), left.begin());
  }
}

Cryptoelement ReferenceOracle::seal(const Mat2 &plain, CounterRng &nonce_source) const {
  const Mat2 hidden =
      matrices_->mul(secret_.conjugator_inverse, matrices_->mul(plain, secret_.conjugator));
  std::vector<std::uint8_t> buf(string_length_);
  const std::size_t width = field_->serialized_size();
  for (std::size_t i = 0; i < 4; ++i) {
    field_->serialize(hidden.entries[i], std::span(buf).subspan(i * width, width));
  }
  const std::uint64_t nonce = nonce_source();
  for (std::size_t b = 0; b < kNonceBytes; ++b) {
    buf[4 * width + b] = static_cast<std::uint8_t>(nonce >> (8 * b));
  }
  feistel_forward(buf);
  return Cryptoelement(std::move(buf), session_);
}

Mat2 ReferenceOracle::decode(const Cryptoelement &x) const {
  check(x);
  std::vector<std::uint8_t> buf(x.bytes().begin(), x.bytes().end());
  feistel_backward(buf);
  const std::size_t width = field_->serialized_size();
  Mat2 hidden;
  for (std::size_t i = 0; i < 4; ++i) {
    hidden.entries[i] = field_->deserialize(std::span<const std::uint8_t>(buf).subspan(i * width, width));
  }
  return matrices_->mul(secret_.conjugator, matrices_->mul(hidden, secret_.conjugator_inverse));
}

Cryptoelement ReferenceOracle::encode(const Mat2 &m) { return seal(m, harness_rng_); }

Mat2 ReferenceOracle::uniform_matrix() {
  Mat2 m;
  for (auto &e : m.entries) e = field_->from_index(rng_.below(field_->order()));
  return m;
}

Cryptoelement ReferenceOracle::random() {
  ++counts_.random;
  return seal(uniform_matrix(), rng_);
}

Cryptoelement ReferenceOracle::add(const Cryptoelement &x, const Cryptoelement &y) {
  check(x);
  check(y);
  ++counts_.add;
  return seal(matrices_->add(decode(x), decode(y)), rng_);
}

Cryptoelement ReferenceOracle::negate(const Cryptoelement &x) {
  check(x);
  ++counts_.neg;
  return seal(matrices_->neg(decode(x)), rng_);
}

Cryptoelement ReferenceOracle::multiply(const Cryptoelement &x, const Cryptoelement &y) {
  check(x);
  check(y);
  ++counts_.mul;
  return seal(matrices_->mul(decode(x), decode(y)), rng_);
}

bool ReferenceOracle::equal(const Cryptoelement &x, const Cryptoelement &y) {
  check(x);
  check(y);
  ++counts_.eq;
  return decode(x) == decode(y);
}

} // namespace bbring
