#include "bbring/bbgroup.hpp"

#include "bbring/errors.hpp"

#include <map>

namespace bbring {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned a = 0;
    while (n % d == 0) {
      n /= d;
      ++a;
    }
    if (a) out.emplace_back(d, a);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

FactoredExponent FactoredExponent::for_order(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) throw UsageError("q must be odd and at least 3");
  std::map<std::uint64_t, unsigned> merged;
  for (std::uint64_t part : {q, q - 1, q + 1}) {
    for (auto [prime, mult] : factorize(part)) merged[prime] += mult;
  }
  FactoredExponent fe;
  fe.value = q * (q * q - 1);
  fe.factors.assign(merged.begin(), merged.end());
  return fe;
}

unsigned FactoredExponent::multiplicity(std::uint64_t prime) const noexcept {
  for (auto [p, a] : factors) {
    if (p == prime) return a;
  }
  return 0;
}

BlackBoxGroup::BlackBoxGroup(BlackBoxRing &ring, FactoredExponent exponent)
    : ring_(&ring), exponent_(std::move(exponent)) {
  if (!ring.has_identity() || ring.exponent() != exponent_.value) {
    throw UsageError("group needs the ring identity built for E = q(q^2 - 1)");
  }
}

GroupElement BlackBoxGroup::random(unsigned budget) const {
  for (unsigned i = 0; i < budget; ++i) {
    Cryptoelement x = ring_->random();
    if (ring_->is_invertible(x)) return GroupElement(std::move(x));
  }
  throw RecoveryError("random_invertible", "no invertible sample in " + std::to_string(budget) +
                                               " draws");
}

GroupElement BlackBoxGroup::adopt(const Cryptoelement &x) const {
  if (!ring_->is_invertible(x)) throw UsageError("cryptoelement is not invertible");
  return GroupElement(x);
}

QuotientContext::QuotientContext(const BlackBoxGroup &group, unsigned centrality_trials,
                                 unsigned witness_budget)
    : group_(&group), trials_(centrality_trials) {
  if (trials_ < kMinTrials) {
    throw UsageError("centrality trials must be at least " + std::to_string(kMinTrials));
  }
  // Powering by the full 2-part of E leaves the odd-order part.
  const std::uint64_t two_part = std::uint64_t{1}
                                 << group.exponent().multiplicity(2);
  bool noncommuting_pair = false;
  for (unsigned drawn = 0; drawn < witness_budget; ++drawn) {
    if (witnesses_.size() >= trials_ && noncommuting_pair) return;
    GroupElement w = group.pow(group.random(), two_part);
    if (!noncommuting_pair) {
      for (const auto &other : witnesses_) {
        if (!group.commute(w, other)) {
          noncommuting_pair = true;
          break;
        }
      }
    }
    if (witnesses_.size() < trials_ || !noncommuting_pair) witnesses_.push_back(std::move(w));
  }
  if (witnesses_.size() >= trials_ && noncommuting_pair) return;
  throw RecoveryError("quotient", "no non-commuting pair of odd-order witnesses found");
}

bool QuotientContext::is_identity(const GroupElement &x) {
  for (const auto &w : witnesses_) {
    if (!group_->commute(x, w)) return false;
  }
  return true;
}

bool QuotientContext::equal(const GroupElement &x, const GroupElement &y) {
  return is_identity(group_->mul(group_->inverse(x), y));
}

std::uint64_t element_order(const BlackBoxGroup &group, const GroupElement &g, GroupEquality &eq) {
  const FactoredExponent &fe = group.exponent();
  std::uint64_t n = fe.value;
  for (auto [prime, mult] : fe.factors) {
    for (unsigned i = 0; i < mult; ++i) {
      if (!eq.is_identity(group.pow(g, n / prime))) break;
      n /= prime;
    }
  }
  return n;
}

std::optional<GroupElement> involution_from(const BlackBoxGroup &group, const GroupElement &g,
                                            GroupEquality &eq) {
  const std::uint64_t n = element_order(group, g, eq);
  if (n % 2 != 0) return std::nullopt;
  return group.pow(g, n / 2);
}

bool is_central(const BlackBoxGroup &group, const GroupElement &g, unsigned trials) {
  for (unsigned i = 0; i < trials; ++i) {
    if (!group.commute(g, group.random())) return false;
  }
  return true;
}

BraySample bray_centralizer_sample(const BlackBoxGroup &group, const GroupElement &t,
                                   GroupEquality &eq) {
  return bray_centralizer_sample(group, t, group.random(), eq);
}

BraySample bray_centralizer_sample(const BlackBoxGroup &group, const GroupElement &t,
                                   const GroupElement &g, GroupEquality &eq) {
  // t is an involution under eq, so t stands in for t^-1.
  const GroupElement c = group.mul(group.mul(t, group.inverse(g)), group.mul(t, g));
  const std::uint64_t n = element_order(group, c, eq);
  if (n % 2 == 1) {
    return {group.mul(g, group.pow(c, n / 2)), true};
  }
  return {group.pow(c, n / 2), false};
}

CentralizerSampler::CentralizerSampler(const BlackBoxGroup &group, GroupElement t,
                                       GroupEquality &eq, CounterRng &rng, unsigned budget)
    : group_(&group), t_(std::move(t)), eq_(&eq), rng_(&rng), budget_(budget) {}

GroupElement CentralizerSampler::next() {
  constexpr std::size_t kPoolSize = 16;
  for (unsigned attempt = 0; attempt < budget_; ++attempt) {
    BraySample s = bray_centralizer_sample(*group_, t_, *eq_);
    ++draws_;
    if (!s.odd_branch) {
      if (pool_.size() < kPoolSize) pool_.push_back(std::move(s.element));
      continue;
    }
    GroupElement out = std::move(s.element);
    if (!pool_.empty()) {
      const auto len = rng_->below(kMaxWordLength);
      for (std::uint64_t i = 0; i < len; ++i) {
        out = group_->mul(out, pool_[rng_->below(pool_.size())]);
      }
    }
    if (pool_.size() < kPoolSize) {
      pool_.push_back(out);
    } else {
      pool_[rng_->below(kPoolSize)] = out;
    }
    return out;
  }
  throw RecoveryError("centralizer", "no odd-order commutator in " + std::to_string(budget_) +
                                         " Bray draws");
}

std::vector<GroupElement> random_in_centralizer(const BlackBoxGroup &group, const GroupElement &t,
                                                GroupEquality &eq, CounterRng &rng,
                                                std::size_t count) {
  CentralizerSampler sampler(group, t, eq, rng);
  std::vector<GroupElement> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

} // namespace bbring
