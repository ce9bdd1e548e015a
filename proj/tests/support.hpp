#pragma once

#include <random>
#include <string>

#include "sldi/cycletime.hpp"

#ifndef SLDI_DATA_DIR
#define SLDI_DATA_DIR "data"
#endif

namespace testing {

inline std::string data(const std::string& name) { return std::string(SLDI_DATA_DIR) + "/" + name; }

inline sldi::SldiSystem model(const std::string& name) { return sldi::load_system(data(name)); }

// Integer entries in [lo, hi], or -inf with probability p_inf.
inline sldi::MpMatrix random_matrix(std::mt19937& rng, std::size_t n, int lo, int hi, double p_inf) {
    std::uniform_int_distribution<int> val(lo, hi);
    std::bernoulli_distribution none(p_inf);
    sldi::MpMatrix m(n, n);
    for (auto& v : m.data()) v = none(rng) ? sldi::NEG_INF : val(rng);
    return m;
}

// Window matrices: lower bounds A (Rmax) and upper bounds B (Rmin) with
// B_ij >= A_ij wherever both are finite.
inline sldi::ModeMatrices random_mode(std::mt19937& rng, std::size_t n, double density = 0.4) {
    std::bernoulli_distribution on(density), upper(0.6);
    std::uniform_int_distribution<int> lo(0, 6), width(0, 8);
    auto m = sldi::ModeMatrices::unconstrained(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && on(rng)) {
                m.A0(i, j) = lo(rng);
                if (upper(rng)) m.B0(i, j) = m.A0(i, j) + width(rng);
            }
            if (on(rng)) {
                m.A1(i, j) = lo(rng);
                if (upper(rng)) m.B1(i, j) = m.A1(i, j) + width(rng);
            }
        }
    return m;
}

inline sldi::SldiSystem random_system(std::mt19937& rng, std::size_t n, std::size_t modes) {
    sldi::SldiSystem s;
    s.n = n;
    for (std::size_t k = 0; k < modes; ++k) s.modes[std::string(1, static_cast<char>('A' + k))] = random_mode(rng, n);
    return s;
}

inline sldi::Word random_word(std::mt19937& rng, const sldi::SldiSystem& s, std::size_t len) {
    const auto alpha = s.alphabet();
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    sldi::Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(alpha[pick(rng)]);
    return w;
}

}  // namespace testing
