#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amm/arbitrage.hpp"
#include "amm/concurrency.hpp"
#include "amm/economics.hpp"
#include "amm/error.hpp"
#include "amm/json_io.hpp"
#include "amm/properties.hpp"
#include "amm/semantics.hpp"
#include "amm/trace_file.hpp"

namespace {

using namespace amm;

constexpr int kExitOk = 0;         // success
constexpr int kExitParse = 1;      // unreadable input, parse errors, bad flags
constexpr int kExitRejected = 2;   // a transaction failed its rule premises
constexpr int kExitViolation = 3;  // an invariant or declared property failed

std::string num6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::string human_state(const State& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [user, bal] : s.wallets) {
        if (!first) os << " | ";
        first = false;
        os << user << "[";
        bool inner = true;
        for (const auto& [tok, amt] : bal.entries) {
            if (!inner) os << ", ";
            inner = false;
            os << num6(amt) << ":" << tok.str();
        }
        os << "]";
    }
    for (const Pool& p : s.pools) {
        if (!first) os << " | ";
        first = false;
        os << "(" << num6(p.r0) << ":" << p.tok0 << ", " << num6(p.r1) << ":" << p.tok1 << ")";
    }
    return os.str();
}

struct LoadedTrace {
    TraceFile tf;
    State s0;
};

int load_trace(const std::string& path, LoadedTrace& out) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "cannot read " << path << "\n";
        return kExitParse;
    }
    ParseResult pr = parse_trace(text);
    if (!pr.ok()) {
        for (const ParseIssue& issue : pr.issues) std::cerr << path << ":" << format_issue(issue) << "\n";
        return kExitParse;
    }
    out.tf = std::move(pr.file);
    out.s0 = initial_state(out.tf);
    return kExitOk;
}

// the unordered pairs the transactions touch, as sorted symbol pairs
std::set<std::pair<std::string, std::string>> trace_pairs(const Trace& tr) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const Transaction& tx : tr)
        for (const Token& t : tokens(tx))
            if (t.is_minted()) pairs.insert({t.pair0(), t.pair1()});
    return pairs;
}

std::unique_ptr<SwapRateFn> make_rate(const std::string& name) {
    if (name == "constprod") return std::make_unique<ConstantProduct>();
    if (name.rfind("constprod-fee:", 0) == 0) {
        double phi = std::strtod(name.c_str() + 14, nullptr);
        return std::make_unique<ConstantProductWithFee>(phi);
    }
    if (name.rfind("weighted:", 0) == 0) {
        std::string rest = name.substr(9);
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            double w_in = std::strtod(rest.substr(0, colon).c_str(), nullptr);
            double w_out = std::strtod(rest.substr(colon + 1).c_str(), nullptr);
            return std::make_unique<WeightedMean>(w_in, w_out);
        }
    }
    return nullptr;
}

int report_rejection(const RunResult& rr, const Trace& tr) {
    std::cerr << "step " << rr.failed_index << " rejected: " << reject_name(rr.reason) << " ("
              << to_string(tr[rr.failed_index]) << ")\n";
    return kExitRejected;
}

int cmd_run(const std::string& path, bool json_mode, bool csv_mode,
            const std::vector<std::string>& pair) {
    LoadedTrace lt;
    if (int rc = load_trace(path, lt)) return rc;
    RunResult rr = run(lt.s0, lt.tf.transactions);
    bool have_prices = !lt.tf.prices.empty();
    PriceOracle oracle = have_prices ? oracle_of(lt.tf) : PriceOracle();

    if (csv_mode) {
        std::string a, b;
        if (pair.size() == 2) {
            a = pair[0];
            b = pair[1];
            if (b < a) std::swap(a, b);
        } else {
            auto pairs = trace_pairs(lt.tf.transactions);
            if (pairs.size() != 1) {
                std::cerr << "trace touches " << pairs.size() << " pools; pass --pair T0 T1\n";
                return kExitParse;
            }
            a = pairs.begin()->first;
            b = pairs.begin()->second;
        }
        std::cout << "step,r_" << a << ",r_" << b << "\n";
        for (std::size_t i = 0; i < rr.states.size(); ++i) {
            const Pool* p = rr.states[i].find_pool(a, b);
            std::cout << i << "," << num17(p ? p->reserve(a) : 0.0) << ","
                      << num17(p ? p->reserve(b) : 0.0) << "\n";
        }
        if (!rr.ok) return report_rejection(rr, lt.tf.transactions);
        return kExitOk;
    }

    if (json_mode) {
        for (const State& s : rr.states)
            std::cout << dump_json17(state_json(s, have_prices ? &oracle : nullptr)) << "\n";
    } else {
        for (std::size_t i = 0; i < rr.states.size(); ++i)
            std::cout << "step " << i << ": " << human_state(rr.states[i]) << "\n";
    }
    if (!rr.ok) return report_rejection(rr, lt.tf.transactions);

    if (have_prices) {
        try {
            if (json_mode) {
                nlohmann::json gains = nlohmann::json::object();
                for (const auto& [user, bal] : lt.s0.wallets)
                    gains[user] =
                        net_worth(rr.final_state(), oracle, user) - net_worth(lt.s0, oracle, user);
                std::cout << dump_json17({{"gains", gains}}) << "\n";
            } else {
                for (const auto& [user, bal] : lt.s0.wallets)
                    std::cout << "gain " << user << ": "
                              << num6(net_worth(rr.final_state(), oracle, user) -
                                      net_worth(lt.s0, oracle, user))
                              << "\n";
            }
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return kExitParse;
        }
    }
    return kExitOk;
}

int cmd_check(const std::string& path) {
    LoadedTrace lt;
    if (int rc = load_trace(path, lt)) return rc;
    RunResult rr = run(lt.s0, lt.tf.transactions);
    bool have_prices = !lt.tf.prices.empty();
    PriceOracle oracle = have_prices ? oracle_of(lt.tf) : PriceOracle();

    std::set<std::string> atoms;
    for (const auto& [user, bal] : lt.s0.wallets)
        for (const auto& [tok, amt] : bal.entries) atoms.insert(tok.sym());
    for (const Transaction& tx : lt.tf.transactions)
        for (const Token& t : tokens(tx))
            if (t.is_atomic()) atoms.insert(t.sym());

    std::vector<std::string> violations;
    double w0 = 0.0;
    try {
        if (have_prices) w0 = global_net_worth(lt.s0, oracle);
        for (std::size_t i = 0; i < rr.states.size(); ++i) {
            const State& s = rr.states[i];
            std::string step = "step " + std::to_string(i) + ": ";
            for (const std::string& sym : atoms) {
                double before = supply(lt.s0, Token::atomic(sym));
                double now = supply(s, Token::atomic(sym));
                if (!amounts_close(before, now, 1e-9))
                    violations.push_back(step + "supply of " + sym + " drifted from " +
                                         num17(before) + " to " + num17(now));
            }
            for (const Pool& p : s.pools) {
                if (!(p.r0 > 0.0) || !(p.r1 > 0.0))
                    violations.push_back(step + "pool {" + p.tok0 + "," + p.tok1 +
                                         "} has a depleted reserve");
                else if (!(supply(s, p.minted()) > 0.0))
                    violations.push_back(step + "pool {" + p.tok0 + "," + p.tok1 +
                                         "} has no outstanding minted tokens");
            }
            if (have_prices) {
                double w = global_net_worth(s, oracle);
                if (!amounts_close(w0, w, 1e-9))
                    violations.push_back(step + "global net worth drifted from " + num17(w0) +
                                         " to " + num17(w));
            }
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    for (const std::string& v : violations) std::cerr << v << "\n";
    if (!violations.empty()) return kExitViolation;
    if (!rr.ok) return report_rejection(rr, lt.tf.transactions);
    std::cout << "ok: " << lt.tf.transactions.size() << " steps, invariants hold\n";
    return kExitOk;
}

int cmd_props(const std::string& rate_name, long long samples, std::uint64_t seed, bool serial) {
    std::unique_ptr<SwapRateFn> f = make_rate(rate_name);
    if (!f) {
        std::cerr << "unknown swap rate '" << rate_name
                  << "' (constprod, constprod-fee:<phi>, weighted:<w_in>:<w_out>)\n";
        return kExitParse;
    }
    PropertyCheckConfig cfg;
    cfg.samples = samples;
    cfg.rng_seed = seed;
    cfg.parallel = !serial;
    PropertyReport rep = certify(*f, cfg);
    std::cout << dump_json17(report_json(rep)) << "\n";
    for (const std::string& m : rep.declared_mismatches)
        if (m.find("declared but failed") != std::string::npos) return kExitViolation;
    return kExitOk;
}

int cmd_arb(const std::string& state_path, const std::string& user,
            const std::vector<std::string>& pair, const std::string& rate_name, double tol) {
    std::string text;
    if (!read_file(state_path, text)) {
        std::cerr << "cannot read " << state_path << "\n";
        return kExitParse;
    }
    StateDoc doc;
    try {
        doc = load_state_json(nlohmann::json::parse(text));
    } catch (const std::exception& e) {
        std::cerr << state_path << ": " << e.what() << "\n";
        return kExitParse;
    }
    const Pool* pool = doc.state.find_pool(pair[0], pair[1]);
    if (!pool) {
        std::cerr << "no pool {" << pair[0] << "," << pair[1] << "} in " << state_path << "\n";
        return kExitRejected;
    }
    std::unique_ptr<SwapRateFn> f = make_rate(rate_name);
    if (!f) {
        std::cerr << "unknown swap rate '" << rate_name << "'\n";
        return kExitParse;
    }
    ArbitrageProblem problem{*pool, doc.oracle, user, {}};
    if (auto it = doc.state.wallets.find(user); it != doc.state.wallets.end())
        problem.user_balance = it->second;
    try {
        ArbitrageSolution sol = rate_name == "constprod" ? solve_constant_product(problem)
                                                         : solve_generic(problem, *f, tol);
        std::cout << dump_json17(solution_json(sol)) << "\n";
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitRejected;
    }
    return kExitOk;
}

int cmd_reorder(const std::string& path, std::size_t budget) {
    LoadedTrace lt;
    if (int rc = load_trace(path, lt)) return rc;
    ReorderReport rep;
    try {
        rep = check_reorder_soundness(lt.s0, lt.tf.transactions, 1e-9, budget);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitRejected;
    }
    nlohmann::json j = {{"ok", rep.ok},
                        {"explored", rep.explored},
                        {"enabled", rep.enabled},
                        {"budget_exhausted", rep.budget_exhausted}};
    if (rep.counterexample) {
        nlohmann::json cex = nlohmann::json::array();
        for (const Transaction& tx : *rep.counterexample) cex.push_back(to_string(tx));
        j["counterexample"] = std::move(cex);
    }
    std::cout << dump_json17(j) << "\n";
    return rep.ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AMM trace interpreter: replay, invariant checks, swap-rate certification,\n"
                 "arbitrage solving and reorder analysis"};
    app.require_subcommand(1);

    std::string trace_path, state_path, user, rate_name = "constprod";
    std::vector<std::string> pair;
    bool json_mode = false, csv_mode = false, serial = false;
    long long samples = 10000;
    std::uint64_t seed = 1;
    std::size_t budget = 4096;
    double tol = 1e-12;

    CLI::App* c_run = app.add_subcommand("run", "Replay a trace; print states and per-user gains");
    c_run->add_option("trace", trace_path, "trace file")->required();
    CLI::Option* o_json = c_run->add_flag("--json", json_mode, "one state JSON object per line");
    CLI::Option* o_csv = c_run->add_flag("--csv", csv_mode, "per-step pool reserves, CSV");
    o_csv->excludes(o_json);
    c_run->add_option("--pair", pair, "pool for --csv (defaults to the only pool touched)")
        ->expected(2);

    CLI::App* c_check = app.add_subcommand("check", "Replay and assert per-step invariants");
    c_check->add_option("trace", trace_path, "trace file")->required();

    CLI::App* c_props = app.add_subcommand("props", "Certify a swap rate function's properties");
    c_props->add_option("--swaprate", rate_name, "constprod | constprod-fee:<phi> | weighted:<w_in>:<w_out>");
    c_props->add_option("--samples", samples, "samples per property");
    c_props->add_option("--seed", seed, "RNG seed");
    c_props->add_flag("--serial", serial, "disable parallel sampling");

    CLI::App* c_arb = app.add_subcommand("arb", "Solve the one-move arbitrage problem");
    c_arb->add_option("--state", state_path, "state JSON file")->required();
    c_arb->add_option("--user", user, "arbitrageur")->required();
    c_arb->add_option("--pair", pair, "pool tokens")->required()->expected(2);
    c_arb->add_option("--swaprate", rate_name, "swap rate function");
    c_arb->add_option("--tol", tol, "equilibrium tolerance for the generic solver");

    CLI::App* c_reorder = app.add_subcommand("reorder", "Check trace reorderings for agreement");
    c_reorder->add_option("trace", trace_path, "trace file")->required();
    c_reorder->add_option("--budget", budget, "max permutations to explore");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (c_run->parsed()) return cmd_run(trace_path, json_mode, csv_mode, pair);
        if (c_check->parsed()) return cmd_check(trace_path);
        if (c_props->parsed()) return cmd_props(rate_name, samples, seed, serial);
        if (c_arb->parsed()) return cmd_arb(state_path, user, pair, rate_name, tol);
        if (c_reorder->parsed()) return cmd_reorder(trace_path, budget);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
