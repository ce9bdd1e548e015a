#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace sldi {

// Extended reals: a double where the IEEE infinities play the role of the
// max-plus zero (-inf) and the min-plus zero (+inf).
using ExtReal = double;

inline constexpr ExtReal NEG_INF = -std::numeric_limits<double>::infinity();
inline constexpr ExtReal POS_INF = std::numeric_limits<double>::infinity();
inline constexpr double EPS = 1e-9;

inline bool is_finite(ExtReal a) { return a != NEG_INF && a != POS_INF; }

inline ExtReal oplus(ExtReal a, ExtReal b) { return a > b ? a : b; }
inline ExtReal dual_oplus(ExtReal a, ExtReal b) { return a < b ? a : b; }

inline ExtReal otimes(ExtReal a, ExtReal b) {
    if (a == NEG_INF || b == NEG_INF) return NEG_INF;
    return a + b;
}

inline ExtReal dual_otimes(ExtReal a, ExtReal b) {
    if (a == POS_INF || b == POS_INF) return POS_INF;
    return a + b;
}

inline ExtReal neg(ExtReal a) { return -a; }

std::string format_ext(ExtReal a);

class MpMatrix {
public:
    MpMatrix() = default;
    MpMatrix(std::size_t rows, std::size_t cols, ExtReal fill = NEG_INF)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    MpMatrix(std::size_t rows, std::size_t cols, std::vector<ExtReal> data);

    static MpMatrix zero(std::size_t n) { return MpMatrix(n, n, NEG_INF); }  // 𝓔
    static MpMatrix top(std::size_t n) { return MpMatrix(n, n, POS_INF); }   // 𝓣
    static MpMatrix identity(std::size_t n);                                  // E⊗
    static MpMatrix from_rows(const std::vector<std::vector<ExtReal>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    ExtReal& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    ExtReal operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<ExtReal>& data() const { return data_; }
    std::vector<ExtReal>& data() { return data_; }

    bool operator==(const MpMatrix& o) const = default;

    bool all_neg_inf() const;
    std::size_t count_finite() const;

    MpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const MpMatrix& b);
    void oplus_block(std::size_t r0, std::size_t c0, const MpMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<ExtReal> data_;
};

MpMatrix mat_add(const MpMatrix& a, const MpMatrix& b);
MpMatrix dual_mat_add(const MpMatrix& a, const MpMatrix& b);
MpMatrix mat_mul(const MpMatrix& a, const MpMatrix& b);
MpMatrix dual_mat_mul(const MpMatrix& a, const MpMatrix& b);
MpMatrix scalar_mat_mul(ExtReal lambda, const MpMatrix& a);
MpMatrix sharp(const MpMatrix& a);

// Serial kernels; mat_mul may dispatch to an OpenMP version for large inputs.
MpMatrix mat_mul_serial(const MpMatrix& a, const MpMatrix& b);
MpMatrix mat_mul_parallel(const MpMatrix& a, const MpMatrix& b);

inline MpMatrix operator|(const MpMatrix& a, const MpMatrix& b) { return mat_add(a, b); }
inline MpMatrix operator*(const MpMatrix& a, const MpMatrix& b) { return mat_mul(a, b); }

std::vector<ExtReal> mat_vec(const MpMatrix& a, const std::vector<ExtReal>& x);
std::vector<ExtReal> dual_mat_vec(const MpMatrix& a, const std::vector<ExtReal>& x);

bool approx_equal(const MpMatrix& a, const MpMatrix& b, double tol = EPS);
std::string to_string(const MpMatrix& a);

struct GammaVerdict {
    bool in_gamma = true;
    std::vector<std::size_t> witness;  // closed walk v0 -> v1 -> ... -> v0 (v0 not repeated)
};

struct StarResult {
    GammaVerdict verdict;
    MpMatrix star;  // empty when !verdict.in_gamma
    bool ok() const { return verdict.in_gamma; }
};

StarResult kleene_star(const MpMatrix& a);
StarResult kleene_star_serial(const MpMatrix& a);
bool in_gamma(const MpMatrix& a);

// Weight of the closed walk in G(a); arcs j->i carry a(i, j).
ExtReal walk_weight(const MpMatrix& a, const std::vector<std::size_t>& walk);

ExtReal mcm(const MpMatrix& a);

}  // namespace sldi
