#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "amm/arbitrage.hpp"
#include "amm/error.hpp"
#include "amm/semantics.hpp"

using namespace amm;

namespace {

// shallow pool left by the two-user session: marginal rate 3 against
// an exchange rate of 1.8
ArbitrageProblem example_problem() {
    ArbitrageProblem p;
    p.pool = Pool::make("t0", 18.0, "t1", 6.0);
    p.oracle = PriceOracle({{"t0", 5.0}, {"t1", 9.0}});
    p.user = "B";
    p.user_balance.set(Token::atomic("t1"), 27.0);
    return p;
}

ArbitrageProblem balanced_problem() {
    ArbitrageProblem p;
    p.pool = Pool::make("t0", 90.0, "t1", 50.0);  // reserve ratio = price ratio
    p.oracle = PriceOracle({{"t0", 5.0}, {"t1", 9.0}});
    p.user = "B";
    p.user_balance.set(Token::atomic("t0"), 100.0);
    p.user_balance.set(Token::atomic("t1"), 100.0);
    return p;
}

const double kX0 = std::sqrt(60.0) - 6.0;            // optimal t1 input
const double kGain = 144.0 - 18.0 * std::sqrt(60.0);  // its oracle-priced gain

// declares what the bisection needs but never reaches equilibrium
struct StubbornRate final : SwapRateFn {
    double rate(double, double, double) const override { return 10.0; }
    std::string name() const override { return "stubborn"; }
    RatePropertySet declared() const override {
        return {RateProperty::OutputBound, RateProperty::Monotonic, RateProperty::StrictlyMonotonic,
                RateProperty::Additive, RateProperty::Reversible, RateProperty::Homogeneous};
    }
};

}  // namespace

TEST_CASE("problem_state wraps the pool and wallet") {
    ArbitrageProblem p = example_problem();
    State s = problem_state(p);
    CHECK(s.pools.size() == 1);
    CHECK(s.balance_of("B", Token::atomic("t1")) == 27.0);
    CHECK(validate(s).empty());
}

TEST_CASE("direction goes where the marginal rate beats the price ratio") {
    std::optional<SwapDirection> d = pick_direction(example_problem());
    REQUIRE(d.has_value());
    CHECK(d->t_in == "t1");
    CHECK(d->t_out == "t0");

    ArbitrageProblem deep = example_problem();
    deep.pool = Pool::make("t0", 70.0, "t1", 70.0);  // marginal 1 > 5/9
    d = pick_direction(deep);
    REQUIRE(d.has_value());
    CHECK(d->t_in == "t0");
    CHECK(d->t_out == "t1");

    CHECK_FALSE(pick_direction(balanced_problem()).has_value());
}

TEST_CASE("a marginal edge inside the band does not count") {
    ArbitrageProblem p = balanced_problem();
    p.pool.r0 = 90.0 * (1.0 + 1e-12);
    CHECK_FALSE(pick_direction(p).has_value());
    p.pool.r0 = 90.0 * 1.01;
    CHECK(pick_direction(p).has_value());
}

TEST_CASE("problem preconditions") {
    ArbitrageProblem p = example_problem();
    p.user_balance.set(Token::minted("t0", "t1"), 1.0);
    CHECK_THROWS_AS(pick_direction(p), Error);

    p = example_problem();
    p.oracle = PriceOracle({{"t0", 5.0}});
    CHECK_THROWS_AS(solve_constant_product(p), Error);
}

TEST_CASE("closed-form solution on the example pool") {
    ArbitrageSolution sol = solve_constant_product(example_problem());
    REQUIRE_FALSE(sol.empty);
    CHECK(sol.t_in == "t1");
    CHECK(sol.t_out == "t0");
    CHECK(std::fabs(sol.x0 - kX0) <= 1e-12);
    CHECK(std::fabs(sol.expected_gain - kGain) <= 1e-9);
    CHECK(std::fabs(sol.expected_gain - 4.573) <= 1e-3);
    CHECK(sol.feasible);
}

TEST_CASE("the solved swap moves the pool to equilibrium") {
    ArbitrageProblem p = example_problem();
    ArbitrageSolution sol = solve_constant_product(p);
    REQUIRE_FALSE(sol.empty);
    State s = problem_state(p);
    StepResult step = apply(s, Transaction::swap("B", sol.x0, "t1", "t0"));
    REQUIRE(step.ok());
    const Pool& q = step.state().pools[0];
    // marginal rate settles on the exchange rate 9/5
    double marginal = constant_product().rate(0.0, q.reserve("t1"), q.reserve("t0"));
    CHECK(std::fabs(marginal - 1.8) <= 1e-6);

    ArbitrageProblem done = p;
    done.pool = q;
    CHECK_FALSE(pick_direction(done).has_value());
}

TEST_CASE("an equilibrium pool has no move") {
    ArbitrageSolution sol = solve_constant_product(balanced_problem());
    CHECK(sol.empty);
    CHECK(sol.expected_gain == 0.0);
    CHECK(solve_generic(balanced_problem(), constant_product()).empty);
}

TEST_CASE("infeasible optima are still reported") {
    ArbitrageProblem p = example_problem();
    p.user_balance.set(Token::atomic("t1"), 1.0);  // cannot fund x0 = 1.746
    ArbitrageSolution sol = solve_constant_product(p);
    REQUIRE_FALSE(sol.empty);
    CHECK_FALSE(sol.feasible);
    CHECK(std::fabs(sol.x0 - kX0) <= 1e-12);
    CHECK(std::fabs(sol.expected_gain - kGain) <= 1e-9);
}

TEST_CASE("bisection agrees with the closed form") {
    ArbitrageSolution generic = solve_generic(example_problem(), constant_product());
    REQUIRE_FALSE(generic.empty);
    CHECK(generic.t_in == "t1");
    CHECK(std::fabs(generic.x0 - kX0) <= 1e-6);
    CHECK(std::fabs(generic.expected_gain - kGain) <= 1e-6);
}

TEST_CASE("bisection refuses undeclared functions") {
    ConstantProductWithFee fee(0.997);
    CHECK_THROWS_AS(solve_generic(example_problem(), fee), Error);
    WeightedMean w(2.0, 1.0);
    CHECK_THROWS_AS(solve_generic(example_problem(), w), Error);
    try {
        solve_generic(example_problem(), fee);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UncertifiedFunction);
    }
}

TEST_CASE("a rate that never meets the price ratio is not bracketable") {
    try {
        solve_generic(example_problem(), StubbornRate{});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotBracketable);
    }
}

TEST_CASE("grid search lands within one cell of the optimum") {
    const long long grid = 100000;
    BruteForceResult b = brute_force(example_problem(), constant_product(), grid);
    REQUIRE_FALSE(b.empty);
    CHECK(b.t_in == "t1");
    CHECK(b.t_out == "t0");
    double cell = kX0 * (std::pow(1e9, 1.0 / static_cast<double>(grid - 1)) - 1.0);
    CHECK(std::fabs(b.x - kX0) <= cell * 1.0001);
    CHECK(b.gain <= kGain + 1e-12);
    CHECK(std::fabs(b.gain - kGain) <= 1e-3);
}

TEST_CASE("grid search on an equilibrium pool finds nothing material") {
    BruteForceResult b = brute_force(balanced_problem(), constant_product(), 2000);
    // worth-difference rounding can fake a sub-1e-10 gain at tiny sizes
    CHECK(b.gain <= 1e-10);
    if (!b.empty) CHECK(b.x <= 1e-4);
}

TEST_CASE("serial and parallel grid search agree exactly") {
    BruteForceResult a = brute_force(example_problem(), constant_product(), 5000, false);
    BruteForceResult b = brute_force(example_problem(), constant_product(), 5000, true);
    CHECK(a.empty == b.empty);
    CHECK(a.t_in == b.t_in);
    CHECK(a.x == b.x);
    CHECK(a.gain == b.gain);
}

TEST_CASE("grid must have at least two points") {
    CHECK_THROWS_AS(brute_force(example_problem(), constant_product(), 1), std::invalid_argument);
}

TEST_CASE("solution serialization") {
    nlohmann::json j = solution_json(solve_constant_product(example_problem()));
    CHECK(j.at("move").at("kind") == "swap");
    CHECK(j.at("move").at("in") == "t1");
    CHECK(j.at("move").at("out") == "t0");
    CHECK(std::fabs(j.at("move").at("x").get<double>() - kX0) <= 1e-12);
    CHECK(j.at("feasible") == true);
    CHECK(std::fabs(j.at("gain").get<double>() - kGain) <= 1e-9);

    nlohmann::json e = solution_json(ArbitrageSolution{});
    CHECK(e.at("move").at("kind") == "empty");
    CHECK(e.at("gain") == 0.0);
}
