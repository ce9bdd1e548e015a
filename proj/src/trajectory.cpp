#include "sldi/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sldi/cycletime.hpp"

namespace sldi {

Dater Dater::shifted(double t0) const {
    Dater d = *this;
    for (auto& row : d.x)
        for (double& v : row) v += t0;
    return d;
}

namespace {

// Nodes the column cannot reach are filled in as x = S ⊗ v: node u gets the
// largest offset v_u that leaves every entry already set unchanged.
std::vector<double> complete(const MpMatrix& star, std::vector<double> x) {
    const std::size_t N = star.rows();
    for (std::size_t u = 0; u < N; ++u) {
        if (is_finite(x[u])) continue;
        double vu = POS_INF;
        for (std::size_t i = 0; i < N; ++i)
            if (is_finite(x[i]) && is_finite(star(i, u))) vu = std::min(vu, x[i] - star(i, u));
        if (vu == POS_INF) vu = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            if (is_finite(star(i, u))) x[i] = std::max(x[i], star(i, u) + vu);
    }
    return x;
}

std::vector<double> pick_column(const MpMatrix& star, std::optional<std::size_t> column) {
    const std::size_t N = star.rows();
    auto col = [&](std::size_t c) {
        std::vector<double> out(N);
        for (std::size_t i = 0; i < N; ++i) out[i] = star(i, c);
        return out;
    };
    auto finite = [](const std::vector<double>& v) { return std::all_of(v.begin(), v.end(), is_finite); };
    if (N == 0) return {};
    if (column) {
        if (*column >= N) throw std::out_of_range("column index out of range");
        return complete(star, col(*column));
    }
    for (std::size_t c = 0; c < N; ++c) {
        std::vector<double> v = col(c);
        if (finite(v)) return v;
    }
    return complete(star, col(0));
}

}  // namespace

Dater synth_periodic(const SldiSystem& sys, const Word& v, double lambda, std::optional<std::size_t> column, long periods) {
    if (periods < 1) throw std::invalid_argument("horizon must be at least one period");
    const PicInstance inst = periodic_instance(sys, v);
    const StarResult st = kleene_star(inst.at(lambda));
    if (!st.ok()) throw std::domain_error("lambda lies outside the cycle-time set");
    const std::vector<double> xt = pick_column(st.star, column);
    const std::size_t n = sys.n, V = v.size();
    Dater d;
    for (long k = 0; k < periods; ++k)
        for (std::size_t h = 0; h < V; ++h) {
            std::vector<double> row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = xt[h * n + i] + static_cast<double>(k) * lambda;
            d.x.push_back(std::move(row));
            d.modes.push_back(v[h]);
        }
    return d;
}

Dater synth_intermittent(const SldiSystem& sys, const Schedule& s, const std::vector<double>& lambda,
                         std::optional<std::size_t> column, long horizon) {
    const IntermittentInstance big = intermittent_build(sys, s);
    const std::size_t q = big.layout.q(), n = sys.n;
    if (lambda.size() != q) throw std::invalid_argument("expected " + std::to_string(q) + " period value(s)");
    const StarResult st = kleene_star(big.mpic.at(lambda));
    if (!st.ok()) throw std::domain_error("period values are infeasible for this schedule");
    const std::vector<double> xi = pick_column(st.star, column);

    Dater d;
    std::size_t pos = 0;  // block position in the compressed instance
    double shift = 0.0;   // accumulated (m_j - 1)·λ_j of completed groups
    auto emit = [&](const std::string& mode, std::size_t block, double offset) {
        std::vector<double> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = xi[block * n + i] + offset;
        d.x.push_back(std::move(row));
        d.modes.push_back(mode);
    };
    for (const auto& mname : s.u0) emit(mname, pos++, shift);
    for (std::size_t h = 0; h < q; ++h) {
        const auto& g = s.groups[h];
        const long reps = g.m == kInfinite ? horizon : g.m;
        const std::size_t first = pos;
        for (long j = 0; j < reps; ++j)
            for (std::size_t r = 0; r < g.v.size(); ++r) emit(g.v[r], first + r, shift + static_cast<double>(j) * lambda[h]);
        pos += g.v.size();
        if (g.m != kInfinite) shift += static_cast<double>(g.m - 1) * lambda[h];
        for (const auto& mname : g.u) emit(mname, pos++, shift);
    }
    return d;
}

VerificationReport verify(const SldiSystem& sys, const Dater& d, bool check_nondecreasing) {
    VerificationReport rep;
    const std::size_t n = sys.n, K = d.K();
    if (d.modes.size() != K) throw std::invalid_argument("dater: modes and samples differ in length");
    for (const auto& row : d.x)
        if (row.size() != n) throw std::invalid_argument("dater: sample has wrong dimension");
    auto tol = [](double v) { return EPS * (1.0 + std::fabs(v)); };
    auto add = [&](std::size_t k, std::string what, double lhs, double rhs) {
        rep.violations.push_back({k + 1, std::move(what), lhs, rhs, rhs - lhs});
    };
    auto tag = [](const char* m, std::size_t i, std::size_t j) {
        return std::string(m) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
    };
    for (std::size_t k = 0; k < K; ++k) {
        const ModeMatrices& m = sys.mode(d.modes[k]);
        const auto& xk = d.x[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                // A0_ij + x_j(k) <= x_i(k) <= B0_ij + x_j(k)
                if (m.A0(i, j) != NEG_INF && m.A0(i, j) + xk[j] > xk[i] + tol(xk[i]))
                    add(k, tag("A0", i, j), m.A0(i, j) + xk[j], xk[i]);
                if (m.B0(i, j) != POS_INF && xk[i] > m.B0(i, j) + xk[j] + tol(xk[i]))
                    add(k, tag("B0", i, j), xk[i], m.B0(i, j) + xk[j]);
                if (k + 1 < K) {
                    const auto& xn = d.x[k + 1];
                    if (m.A1(i, j) != NEG_INF && m.A1(i, j) + xk[j] > xn[i] + tol(xn[i]))
                        add(k, tag("A1", i, j), m.A1(i, j) + xk[j], xn[i]);
                    if (m.B1(i, j) != POS_INF && xn[i] > m.B1(i, j) + xk[j] + tol(xn[i]))
                        add(k, tag("B1", i, j), xn[i], m.B1(i, j) + xk[j]);
                }
            }
    }
    if (check_nondecreasing) {
        std::map<std::string, std::size_t> last;
        for (std::size_t k = 0; k < K; ++k) {
            auto it = last.find(d.modes[k]);
            if (it != last.end()) {
                const auto& prev = d.x[it->second];
                for (std::size_t i = 0; i < n; ++i)
                    if (prev[i] > d.x[k][i] + tol(d.x[k][i]))
                        add(k, "nondecreasing[" + std::to_string(i + 1) + "] vs step " + std::to_string(it->second + 1), prev[i], d.x[k][i]);
            }
            last[d.modes[k]] = k;
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

std::string VerificationReport::str(const SldiSystem&) const {
    if (ok) return "OK\n";
    std::ostringstream os;
    os.precision(12);
    os << violations.size() << " violation(s)\n";
    for (const auto& v : violations)
        os << "step " << v.k << ": " << v.constraint << " lhs=" << v.lhs << " rhs=" << v.rhs << " slack=" << v.slack << "\n";
    return os.str();
}

std::string export_csv(const SldiSystem& sys, const Dater& d) {
    std::ostringstream os;
    os.precision(15);
    os << "k,mode,event,name,time\n";
    for (std::size_t k = 0; k < d.K(); ++k)
        for (std::size_t i = 0; i < d.x[k].size(); ++i)
            os << k + 1 << ',' << d.modes[k] << ',' << i + 1 << ',' << sys.event_name(i) << ',' << d.x[k][i] << '\n';
    return os.str();
}

Dater read_dater_csv(const std::string& text, std::size_t n) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return {};
    std::map<std::size_t, std::pair<std::string, std::vector<double>>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 5) throw std::invalid_argument("dater CSV line " + std::to_string(lineno) + ": expected 5 fields");
        const std::size_t k = std::stoul(f[0]), ev = std::stoul(f[2]);
        if (k < 1 || ev < 1 || ev > n) throw std::invalid_argument("dater CSV line " + std::to_string(lineno) + ": index out of range");
        auto& r = rows[k];
        if (r.second.empty()) {
            r.first = f[1];
            r.second.assign(n, std::nan(""));
        } else if (r.first != f[1]) {
            throw std::invalid_argument("dater CSV line " + std::to_string(lineno) + ": mode changes within a step");
        }
        r.second[ev - 1] = std::stod(f[4]);
    }
    Dater d;
    std::size_t expect = 1;
    for (auto& [k, r] : rows) {
        if (k != expect++) throw std::invalid_argument("dater CSV: steps are not contiguous");
        for (double v : r.second)
            if (std::isnan(v)) throw std::invalid_argument("dater CSV: step " + std::to_string(k) + " is missing events");
        d.modes.push_back(r.first);
        d.x.push_back(r.second);
    }
    return d;
}

}  // namespace sldi
