#pragma once

#include <string>
#include <vector>

#include "sldi/cycletime.hpp"

namespace sldi {

struct BenchRecord {
    std::string method;
    std::size_t V = 0, n = 0;
    double wall_time = 0.0;  // seconds, median over repetitions
    Interval result;
};

struct BenchConfig {
    Word base;
    std::size_t v_min = 10, v_max = 300, step = 10;
    std::vector<std::string> methods{"fast"};
    std::size_t naive_cap = 40;  // naive and lp are only timed up to this V
    int repetitions = 5;
};

// Cyclic repetition of `base`, truncated to length V.
Word repeat_word(const Word& base, std::size_t V);

struct BenchMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Median wall time of `reps` runs of one method.
BenchRecord bench_cell(const SldiSystem& sys, const Word& v, const std::string& method, int reps);

// Throws BenchMismatch when methods disagree on some V; no records are
// returned in that case.
std::vector<BenchRecord> run_bench(const SldiSystem& sys, const BenchConfig& cfg);

std::string bench_csv(const std::vector<BenchRecord>& rows);

}  // namespace sldi
