#include "sldi/maxplus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#ifdef SLDI_HAVE_OPENMP
#include <omp.h>
#endif

namespace sldi {

namespace {

// Below this many inner-loop steps a thread team costs more than it saves.
constexpr std::size_t kParallelWork = std::size_t(1) << 18;

void require_same_shape(const MpMatrix& a, const MpMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_inner(const MpMatrix& a, const MpMatrix& b, const char* what) {
    if (a.cols() != b.rows()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void mul_rows(const MpMatrix& a, const MpMatrix& b, MpMatrix& c, std::size_t i) {
    const std::size_t inner = a.cols(), p = b.cols();
    ExtReal* crow = &c(i, 0);
    for (std::size_t k = 0; k < inner; ++k) {
        const ExtReal aik = a(i, k);
        if (aik == NEG_INF) continue;
        const ExtReal* brow = &b.data()[k * p];
        for (std::size_t j = 0; j < p; ++j) {
            const ExtReal v = brow[j];
            if (v == NEG_INF) continue;
            const ExtReal s = aik + v;
            if (s > crow[j]) crow[j] = s;
        }
    }
}

}  // namespace

std::string format_ext(ExtReal a) {
    if (a == NEG_INF) return "-inf";
    if (a == POS_INF) return "inf";
    std::ostringstream os;
    os.precision(12);
    os << (a == 0.0 ? 0.0 : a);
    return os.str();
}

MpMatrix::MpMatrix(std::size_t rows, std::size_t cols, std::vector<ExtReal> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("MpMatrix: entries length != rows*cols");
}

MpMatrix MpMatrix::identity(std::size_t n) {
    MpMatrix m(n, n, NEG_INF);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
    return m;
}

MpMatrix MpMatrix::from_rows(const std::vector<std::vector<ExtReal>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    MpMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("MpMatrix: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool MpMatrix::all_neg_inf() const {
    return std::all_of(data_.begin(), data_.end(), [](ExtReal v) { return v == NEG_INF; });
}

std::size_t MpMatrix::count_finite() const {
    return std::count_if(data_.begin(), data_.end(), [](ExtReal v) { return is_finite(v); });
}

MpMatrix MpMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("MpMatrix::block");
    MpMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void MpMatrix::set_block(std::size_t r0, std::size_t c0, const MpMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("MpMatrix::set_block");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void MpMatrix::oplus_block(std::size_t r0, std::size_t c0, const MpMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("MpMatrix::oplus_block");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            ExtReal& t = (*this)(r0 + i, c0 + j);
            t = oplus(t, b(i, j));
        }
}

MpMatrix mat_add(const MpMatrix& a, const MpMatrix& b) {
    require_same_shape(a, b, "mat_add");
    MpMatrix c(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = oplus(a.data()[k], b.data()[k]);
    return c;
}

MpMatrix dual_mat_add(const MpMatrix& a, const MpMatrix& b) {
    require_same_shape(a, b, "dual_mat_add");
    MpMatrix c(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = dual_oplus(a.data()[k], b.data()[k]);
    return c;
}

MpMatrix mat_mul_serial(const MpMatrix& a, const MpMatrix& b) {
    require_inner(a, b, "mat_mul");
    MpMatrix c(a.rows(), b.cols(), NEG_INF);
    for (std::size_t i = 0; i < a.rows(); ++i) mul_rows(a, b, c, i);
    return c;
}

MpMatrix mat_mul_parallel(const MpMatrix& a, const MpMatrix& b) {
    require_inner(a, b, "mat_mul");
    MpMatrix c(a.rows(), b.cols(), NEG_INF);
    const long m = static_cast<long>(a.rows());
#ifdef SLDI_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < m; ++i) mul_rows(a, b, c, static_cast<std::size_t>(i));
    return c;
}

MpMatrix mat_mul(const MpMatrix& a, const MpMatrix& b) {
    if (a.rows() * a.cols() * b.cols() >= kParallelWork) return mat_mul_parallel(a, b);
    return mat_mul_serial(a, b);
}

MpMatrix dual_mat_mul(const MpMatrix& a, const MpMatrix& b) {
    require_inner(a, b, "dual_mat_mul");
    MpMatrix c(a.rows(), b.cols(), POS_INF);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const ExtReal aik = a(i, k);
            if (aik == POS_INF) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = dual_oplus(c(i, j), dual_otimes(aik, b(k, j)));
        }
    return c;
}

MpMatrix scalar_mat_mul(ExtReal lambda, const MpMatrix& a) {
    MpMatrix c(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = otimes(lambda, a.data()[k]);
    return c;
}

MpMatrix sharp(const MpMatrix& a) {
    MpMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = -a(i, j);
    return c;
}

std::vector<ExtReal> mat_vec(const MpMatrix& a, const std::vector<ExtReal>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<ExtReal> y(a.rows(), NEG_INF);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] = oplus(y[i], otimes(a(i, j), x[j]));
    return y;
}

std::vector<ExtReal> dual_mat_vec(const MpMatrix& a, const std::vector<ExtReal>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("dual_mat_vec: dimension mismatch");
    std::vector<ExtReal> y(a.rows(), POS_INF);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] = dual_oplus(y[i], dual_otimes(a(i, j), x[j]));
    return y;
}

bool approx_equal(const MpMatrix& a, const MpMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        const ExtReal x = a.data()[k], y = b.data()[k];
        if (is_finite(x) != is_finite(y)) return false;
        if (!is_finite(x)) {
            if (x != y) return false;
        } else if (std::fabs(x - y) > tol) {
            return false;
        }
    }
    return true;
}

std::string to_string(const MpMatrix& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? "\n[" : "[");
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << format_ext(a(i, j));
        os << "]";
    }
    return os.str();
}

ExtReal walk_weight(const MpMatrix& a, const std::vector<std::size_t>& walk) {
    if (walk.empty()) return NEG_INF;
    ExtReal w = 0.0;
    for (std::size_t t = 0; t < walk.size(); ++t) {
        const std::size_t from = walk[t], to = walk[(t + 1) % walk.size()];
        w = otimes(w, a(to, from));
    }
    return w;
}

namespace {

// Floyd-Warshall closure on S (S_ij = best path j -> i). via(i,j) records the
// intermediate node that last improved the entry, -1 for a direct arc.
template <bool Parallel>
StarResult floyd_warshall_star(const MpMatrix& a) {
    if (!a.square()) throw std::invalid_argument("kleene_star: non-square input");
    const std::size_t n = a.rows();
    StarResult res;
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) > EPS) {
            res.verdict.in_gamma = false;
            res.verdict.witness = {i};
            return res;
        }
    }
    MpMatrix s = a;
    std::vector<long> via(n * n, -1);
    std::vector<ExtReal> rowk(n), colk(n);

    std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t)> expand;
    // Appends the nodes of path j -> i, excluding i itself.
    expand = [&](std::size_t j, std::size_t i, std::vector<std::size_t>& out, std::size_t depth) {
        if (depth > n * n + 4) throw std::logic_error("kleene_star: witness reconstruction diverged");
        const long k = via[i * n + j];
        if (k < 0) {
            out.push_back(j);
            return;
        }
        expand(j, static_cast<std::size_t>(k), out, depth + 1);
        expand(static_cast<std::size_t>(k), i, out, depth + 1);
    };

    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < n; ++t) {
            rowk[t] = s(k, t);  // best path t -> k
            colk[t] = s(t, k);  // best path k -> t
        }
        auto relax_row = [&](std::size_t i) {
            const ExtReal sik = colk[i];
            if (sik == NEG_INF) return;
            for (std::size_t j = 0; j < n; ++j) {
                const ExtReal skj = rowk[j];
                if (skj == NEG_INF) continue;
                const ExtReal cand = sik + skj;
                if (cand > s(i, j)) {
                    s(i, j) = cand;
                    via[i * n + j] = static_cast<long>(k);
                }
            }
        };
        if constexpr (Parallel) {
            const long ln = static_cast<long>(n);
#ifdef SLDI_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (long i = 0; i < ln; ++i) relax_row(static_cast<std::size_t>(i));
        } else {
            for (std::size_t i = 0; i < n; ++i) relax_row(i);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (s(i, i) > EPS) {
                res.verdict.in_gamma = false;
                std::vector<std::size_t> walk;
                expand(i, i, walk, 0);
                res.verdict.witness = std::move(walk);
                return res;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) s(i, i) = oplus(s(i, i), 0.0);
    res.star = std::move(s);
    return res;
}

}  // namespace

StarResult kleene_star_serial(const MpMatrix& a) { return floyd_warshall_star<false>(a); }

StarResult kleene_star(const MpMatrix& a) {
    const std::size_t n = a.rows();
    if (n * n * n >= kParallelWork) return floyd_warshall_star<true>(a);
    return floyd_warshall_star<false>(a);
}

bool in_gamma(const MpMatrix& a) { return kleene_star(a).ok(); }

namespace {

std::vector<std::vector<std::size_t>> tarjan_scc(const MpMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) != NEG_INF) succ[j].push_back(i);

    std::vector<long> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    long counter = 0;

    // Iterative DFS: frame = (node, next successor position).
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < succ[v].size()) {
                const std::size_t w = succ[v][pos++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                comps.push_back(std::move(comp));
            }
            const std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const std::size_t parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comps;
}

ExtReal karp_component(const MpMatrix& a, const std::vector<std::size_t>& comp) {
    const std::size_t m = comp.size();
    if (m == 1) return a(comp[0], comp[0]);
    std::vector<long> local(a.rows(), -1);
    for (std::size_t t = 0; t < m; ++t) local[comp[t]] = static_cast<long>(t);
    struct Arc { std::size_t from, to; double w; };
    std::vector<Arc> arcs;
    for (std::size_t ti = 0; ti < m; ++ti)
        for (std::size_t tj = 0; tj < m; ++tj) {
            const ExtReal w = a(comp[ti], comp[tj]);
            if (w != NEG_INF) arcs.push_back({tj, ti, w});
        }
    // d[k][v]: max weight of a walk with exactly k arcs from node 0 to v.
    std::vector<std::vector<ExtReal>> d(m + 1, std::vector<ExtReal>(m, NEG_INF));
    d[0][0] = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
        for (const Arc& e : arcs)
            if (d[k - 1][e.from] != NEG_INF) d[k][e.to] = std::max(d[k][e.to], d[k - 1][e.from] + e.w);
    ExtReal best = NEG_INF;
    for (std::size_t v = 0; v < m; ++v) {
        if (d[m][v] == NEG_INF) continue;
        ExtReal worst = POS_INF;
        for (std::size_t k = 0; k < m; ++k) {
            if (d[k][v] == NEG_INF) continue;
            worst = std::min(worst, (d[m][v] - d[k][v]) / static_cast<double>(m - k));
        }
        if (worst != POS_INF) best = std::max(best, worst);
    }
    return best;
}

}  // namespace

ExtReal mcm(const MpMatrix& a) {
    if (!a.square()) throw std::invalid_argument("mcm: non-square input");
    ExtReal best = NEG_INF;
    for (const auto& comp : tarjan_scc(a)) best = oplus(best, karp_component(a, comp));
    return best;
}

}  // namespace sldi
