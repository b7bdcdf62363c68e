// Must not compile: the recovery library's include path does not reach the
// reference oracle, so its secret type is unnameable from recovery code.

#include "bbring/recovery.hpp"
#include "bbring/reference_oracle.hpp"

int main() {
  bbring::ReferenceOracleSecret secret;
  return static_cast<int>(secret.round_keys[0]);
}
