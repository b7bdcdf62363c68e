#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bbring {

/// Identifier of one oracle instance; handles from other sessions are rejected.
using SessionId = std::uint64_t;

/// An opaque fixed-length string produced by a black box ring. Only the session
/// that produced it can interpret it; many strings may encrypt one element.
class Cryptoelement {
public:
  Cryptoelement() = default;
  Cryptoelement(std::vector<std::uint8_t> bytes, SessionId session)
      : bytes_(std::move(bytes)), session_(session) {}

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  SessionId session() const noexcept { return session_; }
  std::size_t size() const noexcept { return bytes_.size(); }

  /// Byte identity, not element identity. Use RingOracle::equal for the latter.
  bool same_string(const Cryptoelement &o) const noexcept {
    return session_ == o.session_ && bytes_ == o.bytes_;
  }

private:
  std::vector<std::uint8_t> bytes_;
  SessionId session_ = 0;
};

/// Number of oracle calls per axiom.
struct QueryCounts {
  std::uint64_t random = 0;
  std::uint64_t add = 0;
  std::uint64_t neg = 0;
  std::uint64_t mul = 0;
  std::uint64_t eq = 0;

  std::uint64_t total() const noexcept { return random + add + neg + mul + eq; }

  QueryCounts operator-(const QueryCounts &o) const noexcept {
    return {random - o.random, add - o.add, neg - o.neg, mul - o.mul, eq - o.eq};
  }
  QueryCounts &operator+=(const QueryCounts &o) noexcept {
    random += o.random;
    add += o.add;
    neg += o.neg;
    mul += o.mul;
    eq += o.eq;
    return *this;
  }
  bool operator==(const QueryCounts &) const = default;
};

/// A black box ring: random elements, ring operations and equality on
/// cryptoelements, and nothing else.
///
/// Implementations must throw UsageError for handles from another session.
/// A session is a single logical stream; callers serialize access to it.
class RingOracle {
public:
  virtual ~RingOracle() = default;

  /// A cryptoelement encrypting a uniformly random ring element.
  virtual Cryptoelement random() = 0;
  virtual Cryptoelement add(const Cryptoelement &x, const Cryptoelement &y) = 0;
  virtual Cryptoelement negate(const Cryptoelement &x) = 0;
  virtual Cryptoelement multiply(const Cryptoelement &x, const Cryptoelement &y) = 0;
  /// True iff x and y encrypt the same element.
  virtual bool equal(const Cryptoelement &x, const Cryptoelement &y) = 0;

  /// Length in bytes of every cryptoelement of this session.
  virtual std::size_t string_length() const noexcept = 0;
  virtual SessionId session_id() const noexcept = 0;
  virtual QueryCounts counts() const noexcept = 0;
};

} // namespace bbring
