#include "amm/concurrency.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "amm/error.hpp"

namespace amm {

namespace {

bool footprints_independent(const Transaction& a, const Transaction& b) {
    if (!is_swap_kind(a) && !is_swap_kind(b)) return true;
    std::set<Token> ta = tokens(a);
    for (const Token& t : tokens(b))
        if (ta.count(t)) return false;
    return true;
}

// Dependence for normal forms: a transaction depends on itself and on
// anything it is not concurrent with.
bool dependent(const Transaction& a, const Transaction& b) {
    return a == b || !footprints_independent(a, b);
}

// Greedy layering: each transaction lands one layer after the last earlier
// transaction it depends on; layers are then sorted into a canonical order.
std::vector<std::vector<Transaction>> normal_form(const Trace& tr) {
    std::vector<std::vector<Transaction>> layers;
    for (const Transaction& tx : tr) {
        std::size_t at = 0;
        for (std::size_t i = layers.size(); i-- > 0;) {
            bool dep = std::any_of(layers[i].begin(), layers[i].end(),
                                   [&](const Transaction& other) { return dependent(tx, other); });
            if (dep) {
                at = i + 1;
                break;
            }
        }
        if (at == layers.size()) layers.emplace_back();
        layers[at].push_back(tx);
    }
    for (auto& layer : layers) std::sort(layer.begin(), layer.end(), tx_less);
    return layers;
}

std::string trace_key(const Trace& tr) {
    std::string key;
    for (const Transaction& tx : tr) {
        key += to_string(tx);
        key += '\n';
    }
    return key;
}

}  // namespace

bool concurrent(const Transaction& tx1, const Transaction& tx2) {
    if (tx1 == tx2) throw Error(Errc::IdenticalTransactions, to_string(tx1));
    return footprints_independent(tx1, tx2);
}

bool commutes(const State& s, const Transaction& tx1, const Transaction& tx2, double rel_tol,
              const SwapRateFn& rate) {
    auto run_order = [&](const Transaction& a, const Transaction& b, const char* label) {
        RunResult rr = run(s, Trace{a, b}, rate);
        if (!rr.ok)
            throw Error(Errc::NotEnabled, std::string(label) + " rejected at " +
                                              std::to_string(rr.failed_index) + ": " +
                                              std::string(reject_name(rr.reason)));
        return rr.final_state();
    };
    State s12 = run_order(tx1, tx2, "tx1;tx2");
    State s21 = run_order(tx2, tx1, "tx2;tx1");
    return state_eq(s12, s21, rel_tol);
}

bool mazurkiewicz_equiv(const Trace& tr1, const Trace& tr2) {
    return normal_form(tr1) == normal_form(tr2);
}

ReorderReport check_reorder_soundness(const State& s, const Trace& tr, double rel_tol,
                                      std::size_t budget, const SwapRateFn& rate) {
    RunResult base = run(s, tr, rate);
    if (!base.ok)
        throw Error(Errc::NotEnabled, "original trace rejected at " +
                                          std::to_string(base.failed_index) + ": " +
                                          std::string(reject_name(base.reason)));

    ReorderReport rep;
    std::set<std::string> seen{trace_key(tr)};
    std::deque<Trace> frontier{tr};
    rep.explored = 1;
    rep.enabled = 1;

    while (!frontier.empty()) {
        Trace cur = std::move(frontier.front());
        frontier.pop_front();
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            if (cur[i] == cur[i + 1]) continue;  // transposing equals changes nothing
            if (!concurrent(cur[i], cur[i + 1])) continue;
            Trace next = cur;
            std::swap(next[i], next[i + 1]);
            if (!seen.insert(trace_key(next)).second) continue;
            if (rep.explored == budget) {
                rep.budget_exhausted = true;
                return rep;
            }
            ++rep.explored;
            RunResult rr = run(s, next, rate);
            if (rr.ok) {
                ++rep.enabled;
                if (!state_eq(rr.final_state(), base.final_state(), rel_tol)) {
                    rep.ok = false;
                    rep.counterexample = next;
                    return rep;
                }
            }
            frontier.push_back(std::move(next));
        }
    }
    return rep;
}

}  // namespace amm
