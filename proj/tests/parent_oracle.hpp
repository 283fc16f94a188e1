#pragma once

#include <cstddef>

#include "d2t/parent.hpp"

namespace d2t::testing {

// Naive re-derivation of the instance-level scores, kept deliberately
// different from the library: occurrence lists instead of hash multisets,
// linear table scans instead of a token set, exhaustive subsequence
// enumeration instead of the LCS DP, log-space order combination instead
// of pow of a product. Slow on purpose; keep inputs small.
struct OracleScore {
  double precision = 0.0;
  double recall_vs_reference = 0.0;
  double recall_vs_table = 0.0;
  double lambda = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

OracleScore oracle_parent(const Instance& instance, int n_max = 4);

// Exhaustive LCS: tries every subsequence of the shorter side, O(2^m * n).
std::size_t oracle_lcs(const TokenSeq& a, const TokenSeq& b);

}  // namespace d2t::testing
