// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sldi/bench.hpp"
#include "sldi/cycletime.hpp"
#include "sldi/trajectory.hpp"

using namespace sldi;

namespace {

constexpr double kTol = 1e-6;

std::string data(const std::string& name) { return std::string(SLDI_DATA_DIR) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_end(double got, double want) {
    if (std::isinf(want)) return got == want;
    return std::abs(got - want) <= kTol;
}

bool matches(const Interval& got, bool empty, double lo, double hi) {
    if (empty) return got.empty;
    return !got.empty && same_end(got.lo, lo) && same_end(got.hi, hi);
}

struct Line {
    bool ok = true;
    std::ostringstream msg;
    void note(bool good, const std::string& what) {
        ok = ok && good;
        if (!good) msg << " [" << what << "]";
    }
};

int failures = 0;

void report(const std::string& id, const std::string& title, Line& l) {
    std::printf("%s %s %s%s\n", l.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), l.msg.str().c_str());
    if (!l.ok) ++failures;
}

// Times `f` and checks both its verdict and the 1 s budget.
void timed_case(Line& l, const std::string& name, const std::function<bool()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    bool good = false;
    try {
        good = f();
    } catch (const std::exception& e) {
        l.note(false, name + " threw: " + e.what());
        return;
    }
    const double dt = seconds_since(t0);
    l.note(good, name + " wrong");
    l.note(dt < 1.0, name + " took " + std::to_string(dt) + " s");
}

Word periodic_word(const std::string& v) { return parse_schedule("(" + v + ")^inf").groups[0].v; }

void criterion1() {
    Line l;
    const SldiSystem ex4 = load_system(data("three_mode.json"));
    const SldiSystem js = load_system(data("jobshop.json"));
    const SldiSystem phil = load_system(data("philosophers.json"));
    timed_case(l, "three-mode AB", [&] { return matches(periodic_fast(ex4, periodic_word("A B")), false, 3, 3); });
    timed_case(l, "three-mode AC", [&] { return matches(periodic_fast(ex4, periodic_word("A C")), true, 0, 0); });
    timed_case(l, "job shop A only", [&] {
        const SldiSystem a = load_system(data("jobshop_a.json"));
        return matches(ldi_one_periodic(a.modes.begin()->second), false, 73, POS_INF);
    });
    timed_case(l, "job shop B only", [&] {
        const SldiSystem b = load_system(data("jobshop_b.json"));
        return matches(ldi_one_periodic(b.modes.begin()->second), false, 72, 192);
    });
    timed_case(l, "job shop BA", [&] { return matches(periodic_fast(js, periodic_word("B A")), false, 77, 192); });
    timed_case(l, "intermittent job shop", [&] {
        const IntermittentAnswer a = intermittent_solve(js, parse_schedule("iB1 iB2 iA (B A)^2 fB1 fA fB2", js), true, {});
        return a.interval && matches(*a.interval, false, 77, 192);
    });
    timed_case(l, "philosophers P2P4P1P3P3",
               [&] { return matches(periodic_fast(phil, periodic_word("P2 P4 P1 P3 P3")), false, 7.5, 16); });
    timed_case(l, "philosophers optimum", [&] {
        const Schedule w = parse_schedule("init (P1 P1 P3 P2 P4)^2 P1 P3 P2 P4 (P2 P4 P1 P3 P3)^inf", phil);
        const IntermittentAnswer a = intermittent_solve(phil, w, true, {1.0, 1.0});
        return a.status == IntermittentAnswer::Status::feasible && same_end(*a.objective, 19) &&
               same_end(a.lambda[0], 11) && same_end(a.lambda[1], 8);
    });
    timed_case(l, "strict infeasible P-TEG", [&] {
        const SldiSystem f9 = load_system(data("strict_infeasible.json"));
        return strict_one_periodic(*f9.pteg).empty;
    });
    report("C1", "reference intervals", l);
}

// Runs a filtered subset of the unit-test binary; an empty selection fails.
void suite(Line& l, const std::string& name, const std::string& filter, double budget) {
    const std::string cmd = std::string("\"") + SLDI_TESTS_BIN + "\" " + filter + " 2>&1";
    const auto t0 = std::chrono::steady_clock::now();
    std::string out;
    int rc = -1;
    if (FILE* p = popen(cmd.c_str(), "r")) {
        char buf[4096];
        while (std::fgets(buf, sizeof buf, p)) out += buf;
        rc = pclose(p);
    }
    const double dt = seconds_since(t0);
    int ran = 0;
    const auto pos = out.find("test cases:");
    if (pos != std::string::npos) ran = std::atoi(out.c_str() + pos + 11);
    l.note(rc == 0, name + " failed");
    l.note(ran > 0, name + " selected no test case");
    l.note(dt < budget, name + " took " + std::to_string(dt) + " s");
    l.msg << " " << name << "=" << ran << " case(s) in " << static_cast<int>(dt * 1000) / 1000.0 << "s";
}

void criterion2() {
    Line l;
    suite(l, "fast~naive", "-tc=\"fast and naive agree on random systems\"", 60);
    suite(l, "tridiag~star", "-tc=\"tridiagonal star blocks equal the direct star\"", 60);
    suite(l, "reduced~full", "-tc=\"reduction preserves feasibility and optima\"", 60);
    suite(l, "ncp~grid", "-tc=\"parametric solver agrees with grid membership on random instances\"", 60);
    report("C2", "oracle equivalence suites", l);
}

void criterion3() {
    Line l;
    const SldiSystem phil = load_system(data("philosophers.json"));
    const Schedule w = parse_schedule("init (P1 P1 P3 P2 P4)^2 P1 P3 P2 P4 (P2 P4 P1 P3 P3)^inf", phil);
    const IntermittentInstance big = intermittent_build(phil, w);
    const ReducedMpic red = intermittent_reduce(big);
    const std::size_t full_ineqs = mpic_to_lp(big.mpic).size();
    const std::size_t red_ineqs = red.infeasible ? 0 : mpic_to_lp(red.mpic).size();
    const std::size_t full_vars = big.mpic.dim() + big.mpic.q, red_vars = red.mpic.dim() + red.mpic.q;
    l.note(big.mpic.dim() == 75, "full nodes " + std::to_string(big.mpic.dim()) + " != 75");
    l.note(!red.infeasible && red.mpic.dim() == 10, "reduced nodes " + std::to_string(red.mpic.dim()) + " != 10");
    l.note(full_ineqs == 212, "full ineqs " + std::to_string(full_ineqs) + " != 212");
    l.note(full_vars == 77, "full vars " + std::to_string(full_vars) + " != 77");
    l.note(red_ineqs == 146, "reduced ineqs " + std::to_string(red_ineqs) + " != 146");
    l.note(red_vars == 12, "reduced vars " + std::to_string(red_vars) + " != 12");
    l.msg << " full=" << full_ineqs << "/" << full_vars << " reduced=" << red_ineqs << "/" << red_vars;
    report("C3", "reduction bookkeeping", l);
}

void criterion4() {
    Line l;
    suite(l, "trajectory suite", "-sf=\"*test_trajectory*\"", 600);
    report("C4", "trajectory suite", l);
}

void criterion5() {
    Line l;
    const SldiSystem js = load_system(data("jobshop.json"));
    const Word base{"B", "A"};
    auto t = [&](const std::string& method, std::size_t V, int reps) {
        return bench_cell(js, repeat_word(base, V), method, reps).wall_time;
    };
    t("fast", 150, 1);  // warm-up
    const double f150 = t("fast", 150, 9), f300 = t("fast", 300, 9);
    const double f40 = t("fast", 40, 9), n40 = t("naive", 40, 3);
    l.note(f300 <= 3 * f150, "fast(300)/fast(150) > 3");
    l.note(n40 >= 10 * f40, "naive(40)/fast(40) < 10");
    l.msg << " fast(300)/fast(150)=" << f300 / f150 << " naive(40)/fast(40)=" << n40 / f40;
    report("C5", "scaling", l);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    return failures == 0 ? 0 : 1;
}
