#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sldi/ncp.hpp"

namespace sldi {

bool Interval::contains(double x, double tol) const {
    if (empty) return false;
    return x >= lo - tol && x <= hi + tol;
}

Interval Interval::intersect(const Interval& o) const {
    if (empty || o.empty) return empty_set();
    Interval r{std::max(lo, o.lo), std::min(hi, o.hi), false};
    if (r.lo > r.hi) return empty_set();
    return r;
}

bool Interval::approx_equal(const Interval& o, double tol) const {
    if (empty || o.empty) return empty == o.empty;
    auto same = [tol](ExtReal a, ExtReal b) {
        if (!is_finite(a) || !is_finite(b)) return a == b;
        return std::fabs(a - b) <= tol;
    };
    return same(lo, o.lo) && same(hi, o.hi);
}

std::string Interval::str() const {
    if (empty) return "empty";
    const std::string l = lo == NEG_INF ? "(-inf" : "[" + format_ext(lo);
    const std::string h = hi == POS_INF ? "+inf)" : format_ext(hi) + "]";
    return l + ", " + h;
}

MpMatrix PicInstance::at(double lambda) const {
    return scalar_mat_mul(lambda, P) | scalar_mat_mul(-lambda, I) | C;
}

Interval solve_pic_ncp(const PicInstance& inst) {
    const std::size_t n = inst.C.rows();
    for (const MpMatrix* m : {&inst.P, &inst.I, &inst.C})
        if (m->rows() != n || m->cols() != n) throw std::invalid_argument("solve_pic_ncp: dimension mismatch");

    const StarResult cs = kleene_star(inst.C);
    if (!cs.ok()) return Interval::empty_set();
    const MpMatrix P = cs.star * inst.P * cs.star;
    const MpMatrix I = cs.star * inst.I * cs.star;

    const MpMatrix E = MpMatrix::identity(n);
    MpMatrix S = E;
    for (std::size_t it = 0; it < n / 2; ++it) {
        const MpMatrix S2 = S * S;
        MpMatrix next = (P * S2 * I) | (I * S2 * P) | E;
        // The iteration is monotone, so a fixed point stays fixed.
        if (next == S) break;
        S = std::move(next);
    }
    const StarResult ss = kleene_star(S);
    if (!ss.ok()) return Interval::empty_set();

    const ExtReal lo = mcm(I * ss.star);
    const ExtReal p = mcm(P * ss.star);
    const ExtReal hi = -p;
    if (lo > hi) {
        if (is_finite(lo) && is_finite(hi) && lo - hi <= EPS) return Interval{hi, hi, false};
        return Interval::empty_set();
    }
    return Interval{lo, hi, false};
}

MpMatrix MpicInstance::at(const std::vector<double>& lambda) const {
    if (lambda.size() != q) throw std::invalid_argument("MpicInstance::at: wrong parameter count");
    MpMatrix m = C;
    for (std::size_t h = 0; h < q; ++h) m = m | scalar_mat_mul(lambda[h], P[h]) | scalar_mat_mul(-lambda[h], I[h]);
    return m;
}

void MpicInstance::validate() const {
    const std::size_t n = C.rows();
    if (!C.square() || P.size() != q || I.size() != q) throw std::invalid_argument("MpicInstance: inconsistent shape");
    for (std::size_t h = 0; h < q; ++h)
        if (P[h].rows() != n || P[h].cols() != n || I[h].rows() != n || I[h].cols() != n)
            throw std::invalid_argument("MpicInstance: dimension mismatch");
}

std::vector<LinIneq> mpic_to_lp(const MpicInstance& inst) {
    inst.validate();
    const std::size_t n = inst.dim();
    std::vector<LinIneq> out;
    auto emit = [&](const MpMatrix& m, long param, int slope) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m(i, j) != NEG_INF) out.push_back({i, j, param, slope, m(i, j)});
    };
    for (std::size_t h = 0; h < inst.q; ++h) {
        emit(inst.P[h], static_cast<long>(h), +1);
        emit(inst.I[h], static_cast<long>(h), -1);
    }
    emit(inst.C, -1, 0);
    return out;
}

}  // namespace sldi
