#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sldi/maxplus.hpp"

namespace sldi {

// Closed real interval [lo, hi] ∩ ℝ; infinite endpoints mean unbounded.
struct Interval {
    ExtReal lo = NEG_INF;
    ExtReal hi = POS_INF;
    bool empty = false;

    static Interval empty_set() { return Interval{POS_INF, NEG_INF, true}; }
    static Interval all() { return Interval{}; }

    bool contains(double x, double tol = 0.0) const;
    Interval intersect(const Interval& o) const;
    bool approx_equal(const Interval& o, double tol = 1e-6) const;
    std::string str() const;
};

struct PicInstance {
    MpMatrix P, I, C;
    MpMatrix at(double lambda) const;  // λP ⊕ λ⁻¹I ⊕ C
};

Interval solve_pic_ncp(const PicInstance& inst);

struct MpicInstance {
    std::size_t q = 0;
    std::vector<MpMatrix> P, I;  // size q
    MpMatrix C;

    std::size_t dim() const { return C.rows(); }
    MpMatrix at(const std::vector<double>& lambda) const;
    void validate() const;
};

// x_i - x_j - s·λ_param >= rhs, i.e. rhs + s·λ + x_j <= x_i.
struct LinIneq {
    std::size_t i = 0, j = 0;
    long param = -1;  // -1 when λ-free
    int slope = 0;
    double rhs = 0.0;
};

std::vector<LinIneq> mpic_to_lp(const MpicInstance& inst);

struct LpOptions {
    bool nonnegative_lambda = false;
    std::vector<double> objective;  // coefficients on λ; empty = feasibility
    std::vector<std::optional<double>> lambda_lo, lambda_hi;
};

struct LpResult {
    enum class Status { feasible, infeasible, unbounded, failure };
    Status status = Status::failure;
    std::vector<double> x, lambda;
    std::optional<double> objective;
    std::string message;
};

const char* status_name(LpResult::Status s);

LpResult lp_solve(std::size_t n_x, std::size_t q, const std::vector<LinIneq>& ineqs, const LpOptions& opt = {});

// Largest violation of the system at (x, λ); <= 0 means satisfied.
double max_violation(const std::vector<LinIneq>& ineqs, const std::vector<double>& x, const std::vector<double>& lambda);

}  // namespace sldi
