#include <doctest.h>

#include <algorithm>

#include "sldi/maxplus.hpp"
#include "support.hpp"

using namespace sldi;

namespace {

MpMatrix M(std::vector<std::vector<ExtReal>> rows) { return MpMatrix::from_rows(rows); }

// Largest mean over all simple circuits, by enumerating node sequences.
ExtReal brute_mcm(const MpMatrix& a) {
    const std::size_t n = a.rows();
    ExtReal best = NEG_INF;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(i);
        // fix the smallest node first to enumerate each circuit once per rotation
        std::sort(sub.begin() + 1, sub.end());
        do {
            ExtReal w = 0;
            for (std::size_t t = 0; t < sub.size(); ++t) w = otimes(w, a(sub[(t + 1) % sub.size()], sub[t]));
            if (w != NEG_INF) best = std::max(best, w / static_cast<double>(sub.size()));
        } while (std::next_permutation(sub.begin() + 1, sub.end()));
    }
    return best;
}

}  // namespace

TEST_CASE("scalar operations") {
    CHECK(otimes(2, 3) == 5);
    CHECK(otimes(NEG_INF, POS_INF) == NEG_INF);
    CHECK(dual_otimes(POS_INF, NEG_INF) == POS_INF);
    CHECK(oplus(2, 3) == 3);
    CHECK(dual_oplus(2, 3) == 2);
}

TEST_CASE("matrix products") {
    const MpMatrix a = M({{0, NEG_INF}, {2, 0}});
    CHECK(mat_mul(MpMatrix::identity(2), a) == a);
    CHECK(mat_mul(MpMatrix::zero(2), a) == MpMatrix::zero(2));
    // frozen from tests/oracle/oracle.py (path enumeration)
    CHECK(mat_mul(a, a) == M({{0, NEG_INF}, {2, 0}}));
    CHECK_THROWS(mat_mul(MpMatrix(2, 3), MpMatrix(2, 2)));
    CHECK(scalar_mat_mul(1.5, a) == M({{1.5, NEG_INF}, {3.5, 1.5}}));
    CHECK(dual_mat_mul(MpMatrix::top(2), M({{1, 2}, {3, 4}})) == MpMatrix::top(2));
}

TEST_CASE("sharp") {
    CHECK(sharp(MpMatrix::top(3)) == MpMatrix::zero(3));
    const MpMatrix s = sharp(MpMatrix::identity(2));
    CHECK(s == M({{0, POS_INF}, {POS_INF, 0}}));
    CHECK(sharp(M({{1, 2}, {3, 4}})) == M({{-1, -3}, {-2, -4}}));
}

TEST_CASE("kleene star") {
    auto r = kleene_star(M({{NEG_INF}}));
    REQUIRE(r.ok());
    CHECK(r.star == M({{0}}));

    r = kleene_star(M({{1}}));
    CHECK_FALSE(r.ok());
    CHECK(r.verdict.witness == std::vector<std::size_t>{0});

    // frozen from tests/oracle/oracle.py: the 2-circuit weighs -1 + 2 = 1
    const MpMatrix pos = M({{NEG_INF, -1}, {2, NEG_INF}});
    r = kleene_star(pos);
    CHECK_FALSE(r.ok());
    CHECK(r.verdict.witness.size() == 2);
    CHECK(walk_weight(pos, r.verdict.witness) == 1);

    r = kleene_star(M({{NEG_INF, -1}, {-2, NEG_INF}}));
    REQUIRE(r.ok());
    CHECK(r.star == M({{0, -1}, {-2, 0}}));

    // positive circuit through three nodes, witness must carry positive weight
    const MpMatrix c = M({{NEG_INF, NEG_INF, 1}, {1, NEG_INF, NEG_INF}, {NEG_INF, -1, NEG_INF}});
    r = kleene_star(c);
    CHECK_FALSE(r.ok());
    CHECK(walk_weight(c, r.verdict.witness) > 0);
}

TEST_CASE("maximum circuit mean") {
    CHECK(mcm(M({{1}})) == 1);
    CHECK(mcm(MpMatrix::zero(3)) == NEG_INF);
    CHECK(mcm(M({{NEG_INF, 2}, {0, NEG_INF}})) == doctest::Approx(1));
    // circuits in one component, an isolated node elsewhere
    CHECK(mcm(M({{NEG_INF, 4, NEG_INF}, {0, NEG_INF, NEG_INF}, {NEG_INF, NEG_INF, NEG_INF}})) == doctest::Approx(2));
}

TEST_CASE("star identities on random matrices in Gamma") {
    std::mt19937 rng(7);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 6;
        MpMatrix a = testing::random_matrix(rng, n, -6, 3, 0.5);
        const auto r = kleene_star(a);
        CHECK(r.ok() == in_gamma(a));
        const ExtReal rho = mcm(a);
        CHECK(r.ok() == (rho <= EPS));
        const ExtReal ref = brute_mcm(a);
        if (ref == NEG_INF) CHECK(rho == NEG_INF);
        else CHECK(rho == doctest::Approx(ref));
        if (!r.ok()) {
            CHECK(walk_weight(a, r.verdict.witness) > 0);
            continue;
        }
        ++checked;
        const MpMatrix& s = r.star;
        CHECK(approx_equal(mat_add(mat_mul(a, s), MpMatrix::identity(n)), s));
        CHECK(approx_equal(mat_mul(s, s), s));
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<ExtReal> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = s(i, c);
            const auto ax = mat_vec(a, x);
            for (std::size_t i = 0; i < n; ++i) CHECK(ax[i] <= x[i] + EPS);
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("product is associative with unit and zero") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + t % 5;
        const MpMatrix a = testing::random_matrix(rng, n, -5, 5, 0.3);
        const MpMatrix b = testing::random_matrix(rng, n, -5, 5, 0.3);
        const MpMatrix c = testing::random_matrix(rng, n, -5, 5, 0.3);
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
        CHECK(mat_mul(a, MpMatrix::identity(n)) == a);
        CHECK(mat_mul(MpMatrix::zero(n), a) == MpMatrix::zero(n));
    }
}

TEST_CASE("residuation: A x <= y iff x <= A# (*) y") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> v(-10, 10);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 4;
        const MpMatrix a = testing::random_matrix(rng, n, -5, 5, 0.3);
        std::vector<ExtReal> x(n), y(n);
        for (auto& e : x) e = v(rng);
        for (auto& e : y) e = v(rng);
        const auto ax = mat_vec(a, x);
        const auto r = dual_mat_vec(sharp(a), y);
        bool lhs = true, rhs = true;
        for (std::size_t i = 0; i < n; ++i) {
            lhs = lhs && ax[i] <= y[i];
            rhs = rhs && x[i] <= r[i];
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("parallel kernels agree with serial ones") {
    std::mt19937 rng(5);
    for (std::size_t n : {1u, 7u, 33u, 96u}) {
        const MpMatrix a = testing::random_matrix(rng, n, -9, 9, 0.2);
        const MpMatrix b = testing::random_matrix(rng, n, -9, 9, 0.2);
        CHECK(mat_mul_parallel(a, b) == mat_mul_serial(a, b));
        const MpMatrix g = testing::random_matrix(rng, n, -40, -1, 0.6);
        const auto p = kleene_star(g), s = kleene_star_serial(g);
        REQUIRE(p.ok() == s.ok());
        if (p.ok()) CHECK(approx_equal(p.star, s.star));
    }
}

TEST_CASE("formatting") {
    CHECK(format_ext(NEG_INF) == "-inf");
    CHECK(format_ext(POS_INF) == "inf");
    CHECK(format_ext(3.5) == "3.5");
}
