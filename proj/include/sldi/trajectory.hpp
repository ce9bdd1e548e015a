#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sldi/model.hpp"

namespace sldi {

struct Dater {
    Word modes;                          // mode of each rendered step
    std::vector<std::vector<double>> x;  // x[k][i], k = 0..K-1
    std::size_t K() const { return x.size(); }
    Dater shifted(double t0) const;
};

struct Violation {
    std::size_t k = 0;       // 1-based step
    std::string constraint;  // e.g. "A1[2,1]"
    double lhs = 0.0, rhs = 0.0;
    double slack = 0.0;      // rhs - lhs, negative when violated
};

struct VerificationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::string str(const SldiSystem& sys) const;
};

// Column choice: nullopt picks the first column whose entries are all finite,
// or the first column if none is. Entries a column leaves at -inf are filled
// in so that the sample stays a solution.
Dater synth_periodic(const SldiSystem& sys, const Word& v, double lambda, std::optional<std::size_t> column = std::nullopt,
                     long periods = 3);

Dater synth_intermittent(const SldiSystem& sys, const Schedule& s, const std::vector<double>& lambda,
                         std::optional<std::size_t> column = std::nullopt, long horizon = 3);

VerificationReport verify(const SldiSystem& sys, const Dater& d, bool check_nondecreasing = false);

std::string export_csv(const SldiSystem& sys, const Dater& d);
Dater read_dater_csv(const std::string& text, std::size_t n);

}  // namespace sldi
