#pragma once

// Reference black box encrypting M_2(F_q). Simulation device only: the
// recovery library does not see this header (it is outside its include path).

#include "bbring/counter_rng.hpp"
#include "bbring/field.hpp"
#include "bbring/mat2.hpp"
#include "bbring/oracle.hpp"

#include <array>
#include <cstdint>
#include <memory>

namespace bbring {

/// Hidden state realizing the unknown homomorphism: a secret conjugator and
/// the round keys of the string transform.
struct ReferenceOracleSecret {
  Mat2 conjugator;
  Mat2 conjugator_inverse;
  std::array<std::uint64_t, 4> round_keys{};
};

/// Cryptoelement layout before the keyed transform:
///   [4 entries x m limbs x limb_width bytes of g^-1 M g, row-major] [8-byte nonce]
/// The whole buffer then passes through a 4-round balanced Feistel network.
class ReferenceOracle final : public RingOracle {
public:
  static constexpr std::size_t kNonceBytes = 8;
  static constexpr unsigned kFeistelRounds = 4;

  ReferenceOracle(FieldParams params, std::uint64_t seed);

  Cryptoelement random() override;
  Cryptoelement add(const Cryptoelement &x, const Cryptoelement &y) override;
  Cryptoelement negate(const Cryptoelement &x) override;
  Cryptoelement multiply(const Cryptoelement &x, const Cryptoelement &y) override;
  bool equal(const Cryptoelement &x, const Cryptoelement &y) override;

  std::size_t string_length() const noexcept override { return string_length_; }
  SessionId session_id() const noexcept override { return session_; }
  QueryCounts counts() const noexcept override { return counts_; }

  const Field &field() const noexcept { return *field_; }
  const MatrixRing &matrices() const noexcept { return *matrices_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Harness-only access to the plaintext side. None of these count as queries,
  // and encode() draws its nonces from a separate stream so that it does not
  // disturb the session's own randomness.

  /// The plaintext matrix encrypted by x.
  Mat2 decode(const Cryptoelement &x) const;
  /// A fresh encryption of m.
  Cryptoelement encode(const Mat2 &m);
  const ReferenceOracleSecret &secret() const noexcept { return secret_; }

private:
  void check(const Cryptoelement &x) const;
  Cryptoelement seal(const Mat2 &plain, CounterRng &nonce_source) const;
  void feistel_forward(std::span<std::uint8_t> buf) const;
  void feistel_backward(std::span<std::uint8_t> buf) const;
  void round_function(std::uint64_t key, std::span<const std::uint8_t> in,
                      std::span<std::uint8_t> out) const;
  Mat2 uniform_matrix();

  std::unique_ptr<Field> field_;
  std::unique_ptr<MatrixRing> matrices_;
  std::uint64_t seed_;
  SessionId session_;
  std::size_t string_length_;
  ReferenceOracleSecret secret_;
  CounterRng rng_;
  CounterRng harness_rng_;
  QueryCounts counts_;
};

} // namespace bbring
