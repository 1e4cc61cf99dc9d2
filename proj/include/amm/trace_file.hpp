#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "amm/economics.hpp"
#include "amm/state.hpp"
#include "amm/tx.hpp"

namespace amm {

// Line-oriented trace format:
//   price t0 5            # oracle price of an atomic token
//   wallet A 100:t0 40:t1 # initial balances
//   A: dep(70:t0, 70:t1)  # transactions, in order
// Guarded forms attach min=/max= arguments:
//   A: swap(30:t0, t1, min=21)
//   A: rdm(30:{t0,t1}, min=1:t0, min=2:t1)
//   A: dep(min=10:t0, max=20:t0, min=10:t1, max=20:t1)
struct TraceFile {
    std::vector<std::pair<std::string, double>> prices;     // declaration order
    std::vector<std::pair<std::string, Balance>> wallets;   // declaration order
    Trace transactions;

    friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

struct ParseIssue {
    std::size_t line = 0;  // 1-based
    std::size_t col = 0;   // 1-based
    std::string message;

    friend bool operator==(const ParseIssue&, const ParseIssue&) = default;
};

std::string format_issue(const ParseIssue& issue);

struct ParseResult {
    TraceFile file;
    std::vector<ParseIssue> issues;  // every error found, not just the first

    bool ok() const { return issues.empty(); }
};

// Parses the whole text, recovering at line boundaries so one bad line does
// not hide errors in later ones. parse_trace(render_trace(tf)) == tf.
ParseResult parse_trace(const std::string& text);

std::string render_trace(const TraceFile& tf);

// Wallets only; passes is_initial.
State initial_state(const TraceFile& tf);

// Throws Error(NonPositivePrice) on bad declarations (parse already rejects
// them, so only hand-built TraceFiles can trip this).
PriceOracle oracle_of(const TraceFile& tf);

}  // namespace amm
