#pragma once

#include <cstddef>
#include <optional>

#include "amm/semantics.hpp"
#include "amm/state.hpp"
#include "amm/tx.hpp"

namespace amm {

// Order-independence by token footprint: whenever either transaction is a
// swap, the two token sets must be disjoint; two non-swaps always qualify.
// Sufficient for commuting, not necessary.
// Throws Error(IdenticalTransactions) when tx1 == tx2.
bool concurrent(const Transaction& tx1, const Transaction& tx2);

// Ground truth on one state: runs tx1;tx2 and tx2;tx1 and compares finals.
// Throws Error(NotEnabled) naming the order that was rejected.
bool commutes(const State& s, const Transaction& tx1, const Transaction& tx2, double rel_tol,
              const SwapRateFn& rate = constant_product());

// True iff tr2 is reachable from tr1 by transposing adjacent concurrent
// pairs; decided by comparing normal forms (greedy layering by dependence,
// tx_less order inside each layer).
bool mazurkiewicz_equiv(const Trace& tr1, const Trace& tr2);

struct ReorderReport {
    bool ok = true;
    std::size_t explored = 0;  // distinct permutations visited, original included
    std::size_t enabled = 0;   // of those, how many executed fully
    bool budget_exhausted = false;
    std::optional<Trace> counterexample;  // enabled permutation with a differing final

    friend bool operator==(const ReorderReport&, const ReorderReport&) = default;
};

// Explores the permutations reachable by adjacent concurrent transpositions
// (breadth-first, at most `budget` traces) and checks that every enabled one
// ends state_eq with the original run.
// Throws Error(NotEnabled) when tr itself is rejected from s.
ReorderReport check_reorder_soundness(const State& s, const Trace& tr, double rel_tol,
                                      std::size_t budget = 4096,
                                      const SwapRateFn& rate = constant_product());

}  // namespace amm
