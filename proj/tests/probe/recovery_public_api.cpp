// Companion to recovery_sees_secret.cpp: the same target setup builds when only
// the axiom-level interface is used.

#include "bbring/recovery.hpp"

int run(bbring::RingOracle &oracle, std::uint64_t q) {
  bbring::BlackBoxRing ring(oracle);
  return bbring::recover(ring, q, bbring::RecoveryConfig{}).report.success ? 0 : 1;
}

int main() { return 0; }
