#include <doctest.h>

#include "sldi/ncp.hpp"
#include "support.hpp"

using namespace sldi;

namespace {

PicInstance random_pic(std::mt19937& rng, std::size_t n) {
    return {testing::random_matrix(rng, n, -5, 5, 0.7), testing::random_matrix(rng, n, -5, 5, 0.7),
            testing::random_matrix(rng, n, -5, 5, 0.6)};
}

MpicInstance as_mpic(const PicInstance& p) { return {1, {p.P}, {p.I}, p.C}; }

// [min λ, max λ] of the q = 1 linear encoding, or empty.
Interval lp_projection(const PicInstance& p) {
    const auto ineqs = mpic_to_lp(as_mpic(p));
    const std::size_t n = p.C.rows();
    LpOptions lo, hi;
    lo.objective = {1.0};
    hi.objective = {-1.0};
    const LpResult a = lp_solve(n, 1, ineqs, lo);
    REQUIRE(a.status != LpResult::Status::failure);
    if (a.status == LpResult::Status::infeasible) return Interval::empty_set();
    const LpResult b = lp_solve(n, 1, ineqs, hi);
    REQUIRE(b.status != LpResult::Status::failure);
    return {a.status == LpResult::Status::unbounded ? NEG_INF : a.lambda[0],
            b.status == LpResult::Status::unbounded ? POS_INF : b.lambda[0], false};
}

}  // namespace

TEST_CASE("parametric solver on small instances") {
    const MpMatrix Z = MpMatrix::zero(2);
    const Interval all = solve_pic_ncp({Z, Z, Z});
    CHECK_FALSE(all.empty);
    CHECK(all.lo == NEG_INF);
    CHECK(all.hi == POS_INF);

    // P = C = 𝓔: least solution is the spectral radius of I
    const MpMatrix I = MpMatrix::from_rows({{NEG_INF, 3}, {1, NEG_INF}});
    const Interval sub = solve_pic_ncp({Z, I, Z});
    CHECK(sub.lo == doctest::Approx(2));
    CHECK(sub.hi == POS_INF);

    // positive circuit in C: no λ helps
    CHECK(solve_pic_ncp({Z, Z, MpMatrix::from_rows({{1, NEG_INF}, {NEG_INF, 0}})}).empty);

    // the circuit weighs (λ - 1) + (2 - λ) = 1 whatever λ is
    const MpMatrix P = MpMatrix::from_rows({{NEG_INF, -1}, {NEG_INF, NEG_INF}});
    const MpMatrix I2 = MpMatrix::from_rows({{NEG_INF, NEG_INF}, {2, NEG_INF}});
    const Interval e = solve_pic_ncp({P, I2, Z});
    CHECK(e.empty);
    CHECK(e.str() == "empty");

    CHECK_THROWS(solve_pic_ncp({MpMatrix::zero(3), Z, Z}));
}

TEST_CASE("interval helpers") {
    const Interval a{1, 4, false}, b{3, POS_INF, false};
    const Interval c = a.intersect(b);
    CHECK(c.lo == 3);
    CHECK(c.hi == 4);
    CHECK(a.intersect(Interval{5, 6, false}).empty);
    CHECK(a.str() == "[1, 4]");
    CHECK(b.str() == "[3, +inf)");
    CHECK(Interval{NEG_INF, 2, false}.str() == "(-inf, 2]");
    CHECK(a.contains(4));
    CHECK_FALSE(a.contains(4.1));
}

TEST_CASE("linear encoding") {
    MpicInstance z{1, {MpMatrix::zero(2)}, {MpMatrix::zero(2)}, MpMatrix::zero(2)};
    CHECK(mpic_to_lp(z).empty());

    MpicInstance one{1, {MpMatrix::zero(1)}, {MpMatrix::from_rows({{0}})}, MpMatrix::zero(1)};
    const auto ineqs = mpic_to_lp(one);
    REQUIRE(ineqs.size() == 1);
    CHECK(ineqs[0].slope == -1);
    CHECK(ineqs[0].rhs == 0);
    LpOptions o;
    o.objective = {1.0};
    const LpResult r = lp_solve(1, 1, ineqs, o);
    REQUIRE(r.status == LpResult::Status::feasible);
    CHECK(r.lambda[0] == doctest::Approx(0));
}

TEST_CASE("LP solver basics") {
    LpOptions o;
    o.nonnegative_lambda = true;
    o.objective = {1.0};
    const LpResult r = lp_solve(0, 1, {}, o);
    REQUIRE(r.status == LpResult::Status::feasible);
    CHECK(*r.objective == doctest::Approx(0));

    // -λ >= 1 and λ >= 0.5 on a single node
    const std::vector<LinIneq> bad{{0, 0, 0, +1, 1.0}, {0, 0, 0, -1, 0.5}};
    CHECK(lp_solve(1, 1, bad, {}).status == LpResult::Status::infeasible);

    LpOptions down;
    down.objective = {1.0};
    CHECK(lp_solve(1, 1, {{0, 0, 0, +1, -3.0}}, down).status == LpResult::Status::unbounded);
}

TEST_CASE("parametric solver agrees with grid membership on random instances") {
    std::mt19937 rng(2024);
    int nonempty = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 4;
        const PicInstance p = random_pic(rng, n);
        const Interval iv = solve_pic_ncp(p);
        if (!iv.empty) ++nonempty;
        for (int k = -40; k <= 40; ++k) {
            const double lam = 0.25 * k;
            CAPTURE(t);
            CAPTURE(lam);
            CHECK(iv.contains(lam, 1e-9) == in_gamma(p.at(lam)));
        }
    }
    CHECK(nonempty > 20);
}

TEST_CASE("parametric solver agrees with the LP projection") {
    std::mt19937 rng(99);
    for (int t = 0; t < 150; ++t) {
        const PicInstance p = random_pic(rng, 1 + t % 4);
        const Interval a = solve_pic_ncp(p), b = lp_projection(p);
        CAPTURE(t);
        CHECK(a.empty == b.empty);
        if (!a.empty && !b.empty) CHECK(a.approx_equal(b));
    }
}

TEST_CASE("LP points satisfy the system") {
    std::mt19937 rng(17);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + t % 5, q = 1 + t % 3;
        MpicInstance m;
        m.q = q;
        for (std::size_t h = 0; h < q; ++h) {
            m.P.push_back(testing::random_matrix(rng, n, -8, 2, 0.8));
            m.I.push_back(testing::random_matrix(rng, n, -2, 8, 0.8));
        }
        m.C = testing::random_matrix(rng, n, -6, 3, 0.6);
        const auto ineqs = mpic_to_lp(m);
        LpOptions o;
        o.nonnegative_lambda = true;
        o.objective.assign(q, 1.0);
        const LpResult r = lp_solve(n, q, ineqs, o);
        REQUIRE(r.status != LpResult::Status::failure);
        if (r.status != LpResult::Status::feasible) continue;
        CHECK(max_violation(ineqs, r.x, r.lambda) <= 10 * EPS);
        CHECK(in_gamma(m.at(r.lambda)));
    }
}

TEST_CASE("enlarging C never enlarges the interval") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> bump(0, 3);
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 1 + t % 4;
        PicInstance a = random_pic(rng, n);
        PicInstance b = a;
        for (auto& v : b.C.data()) v = v == NEG_INF ? (bump(rng) == 0 ? -4.0 : NEG_INF) : v + bump(rng);
        const Interval ia = solve_pic_ncp(a), ib = solve_pic_ncp(b);
        if (ib.empty) continue;
        REQUIRE_FALSE(ia.empty);
        CHECK(ib.lo >= ia.lo - EPS);
        CHECK(ib.hi <= ia.hi + EPS);
    }
}
