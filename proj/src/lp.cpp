#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sldi/ncp.hpp"

namespace sldi {

namespace {

constexpr double kPivotTol = 1e-9;

// Dense tableau simplex for: minimize c·y subject to A y <= b, y >= 0.
// Two phases, Bland's rule throughout.
class Tableau {
public:
    enum class Outcome { optimal, infeasible, unbounded, stalled };

    Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b, const std::vector<double>& c)
        : m_(A.size()), ny_(c.size()), c_(c) {
        // Columns: y (ny), slacks (m), artificials (one per negative rhs row).
        std::vector<std::size_t> art_rows;
        for (std::size_t i = 0; i < m_; ++i)
            if (b[i] < 0) art_rows.push_back(i);
        n_art_ = art_rows.size();
        ncols_ = ny_ + m_ + n_art_;
        t_.assign(m_, std::vector<double>(ncols_ + 1, 0.0));
        basis_.assign(m_, 0);
        std::size_t next_art = ny_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = b[i] < 0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < ny_; ++j) t_[i][j] = sign * A[i][j];
            t_[i][ny_ + i] = sign;
            t_[i][ncols_] = sign * b[i];
            if (b[i] < 0) {
                t_[i][next_art] = 1.0;
                basis_[i] = next_art++;
            } else {
                basis_[i] = ny_ + i;
            }
        }
    }

    Outcome solve(std::size_t max_iter) {
        if (n_art_ > 0) {
            std::vector<double> phase1(ncols_, 0.0);
            for (std::size_t j = ny_ + m_; j < ncols_; ++j) phase1[j] = 1.0;
            Outcome o = run(phase1, ncols_, max_iter);
            if (o == Outcome::stalled) return o;
            double infeas = 0.0;
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] >= ny_ + m_) infeas += t_[i][ncols_];
            if (infeas > 1e-7) return Outcome::infeasible;
            drive_out_artificials();
        }
        std::vector<double> phase2(ncols_, 0.0);
        for (std::size_t j = 0; j < ny_; ++j) phase2[j] = c_[j];
        return run(phase2, ny_ + m_, max_iter);
    }

    std::vector<double> primal() const {
        std::vector<double> y(ny_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < ny_) y[basis_[i]] = t_[i][ncols_];
        return y;
    }

private:
    void pivot(std::size_t r, std::size_t col) {
        const double p = t_[r][col];
        for (double& v : t_[r]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = t_[i][col];
            if (f == 0.0) continue;
            const auto& rr = t_[r];
            auto& ri = t_[i];
            for (std::size_t j = 0; j <= ncols_; ++j) ri[j] -= f * rr[j];
            ri[col] = 0.0;
        }
        basis_[r] = col;
    }

    // Minimizes cost over columns [0, allowed); other columns never enter.
    Outcome run(const std::vector<double>& cost, std::size_t allowed, std::size_t max_iter) {
        for (std::size_t it = 0; it < max_iter; ++it) {
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < allowed; ++j) {
                double rc = cost[j];
                for (std::size_t i = 0; i < m_; ++i) rc -= cost[basis_[i]] * t_[i][j];
                if (rc < -kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) return Outcome::optimal;
            std::size_t leave = m_;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= kPivotTol) continue;
                const double ratio = t_[i][ncols_] / t_[i][enter];
                if (leave == m_ || ratio < best - kPivotTol ||
                    (std::fabs(ratio - best) <= kPivotTol && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return Outcome::unbounded;
            pivot(leave, enter);
        }
        return Outcome::stalled;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < ny_ + m_) continue;
            for (std::size_t j = 0; j < ny_ + m_; ++j) {
                if (std::fabs(t_[i][j]) > kPivotTol) {
                    pivot(i, j);
                    break;
                }
            }
            // A row with no usable column is redundant; its artificial stays at 0.
        }
    }

    std::size_t m_, ny_, n_art_ = 0, ncols_ = 0;
    std::vector<double> c_;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

const char* status_name(LpResult::Status s) {
    switch (s) {
        case LpResult::Status::feasible: return "feasible";
        case LpResult::Status::infeasible: return "infeasible";
        case LpResult::Status::unbounded: return "unbounded";
        case LpResult::Status::failure: return "failure";
    }
    return "?";
}

double max_violation(const std::vector<LinIneq>& ineqs, const std::vector<double>& x, const std::vector<double>& lambda) {
    double worst = -POS_INF;
    for (const LinIneq& e : ineqs) {
        double lhs = e.rhs + x[e.j];
        if (e.param >= 0) lhs += e.slope * lambda[static_cast<std::size_t>(e.param)];
        worst = std::max(worst, lhs - x[e.i]);
    }
    return worst;
}

LpResult lp_solve(std::size_t n_x, std::size_t q, const std::vector<LinIneq>& ineqs, const LpOptions& opt) {
    const std::size_t nv = n_x + q;  // free variables, split as v = v+ - v-
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    auto add_row = [&](const std::vector<std::pair<std::size_t, double>>& coeffs, double rhs) {
        std::vector<double> row(2 * nv, 0.0);
        for (auto [v, a] : coeffs) {
            row[v] += a;
            row[nv + v] -= a;
        }
        A.push_back(std::move(row));
        b.push_back(rhs);
    };
    for (const LinIneq& e : ineqs) {
        if (e.i >= n_x || e.j >= n_x || (e.param >= 0 && static_cast<std::size_t>(e.param) >= q))
            throw std::invalid_argument("lp_solve: inequality index out of range");
        // x_j - x_i + s·λ <= -rhs
        std::vector<std::pair<std::size_t, double>> coeffs{{e.j, 1.0}, {e.i, -1.0}};
        if (e.param >= 0 && e.slope != 0) coeffs.push_back({n_x + static_cast<std::size_t>(e.param), double(e.slope)});
        add_row(coeffs, -e.rhs);
    }
    for (std::size_t p = 0; p < q; ++p) {
        if (opt.nonnegative_lambda) add_row({{n_x + p, -1.0}}, 0.0);
        if (p < opt.lambda_lo.size() && opt.lambda_lo[p]) add_row({{n_x + p, -1.0}}, -*opt.lambda_lo[p]);
        if (p < opt.lambda_hi.size() && opt.lambda_hi[p]) add_row({{n_x + p, 1.0}}, *opt.lambda_hi[p]);
    }
    std::vector<double> c(2 * nv, 0.0);
    for (std::size_t p = 0; p < q && p < opt.objective.size(); ++p) {
        c[n_x + p] = opt.objective[p];
        c[nv + n_x + p] = -opt.objective[p];
    }

    LpResult res;
    Tableau tab(A, b, c);
    const std::size_t max_iter = 50 * (A.size() + 2 * nv) + 1000;
    switch (tab.solve(max_iter)) {
        case Tableau::Outcome::infeasible:
            res.status = LpResult::Status::infeasible;
            return res;
        case Tableau::Outcome::unbounded:
            res.status = LpResult::Status::unbounded;
            return res;
        case Tableau::Outcome::stalled:
            res.status = LpResult::Status::failure;
            res.message = "iteration limit reached";
            return res;
        case Tableau::Outcome::optimal: break;
    }
    const std::vector<double> y = tab.primal();
    res.x.resize(n_x);
    res.lambda.resize(q);
    for (std::size_t v = 0; v < n_x; ++v) res.x[v] = y[v] - y[nv + v];
    for (std::size_t p = 0; p < q; ++p) res.lambda[p] = y[n_x + p] - y[nv + n_x + p];
    if (!ineqs.empty() && max_violation(ineqs, res.x, res.lambda) > 10 * EPS) {
        res.status = LpResult::Status::failure;
        res.message = "solution fails re-check";
        return res;
    }
    res.status = LpResult::Status::feasible;
    if (!opt.objective.empty()) {
        double obj = 0.0;
        for (std::size_t p = 0; p < q && p < opt.objective.size(); ++p) obj += opt.objective[p] * res.lambda[p];
        res.objective = obj;
    }
    return res;
}

}  // namespace sldi
