#include "sldi/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace sldi {

Word repeat_word(const Word& base, std::size_t V) {
    if (base.empty()) throw std::invalid_argument("base word is empty");
    Word w;
    w.reserve(V);
    for (std::size_t k = 0; k < V; ++k) w.push_back(base[k % base.size()]);
    return w;
}

BenchRecord bench_cell(const SldiSystem& sys, const Word& v, const std::string& method, int reps) {
    const Method m = parse_method(method);
    std::vector<double> times;
    BenchRecord rec{method, v.size(), sys.n, 0.0, {}};
    for (int r = 0; r < std::max(reps, 1); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        rec.result = periodic(sys, v, m);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    rec.wall_time = times[times.size() / 2];
    return rec;
}

std::vector<BenchRecord> run_bench(const SldiSystem& sys, const BenchConfig& cfg) {
    if (cfg.step == 0) throw std::invalid_argument("bench step must be positive");
    if (cfg.v_min == 0 || cfg.v_min > cfg.v_max) throw std::invalid_argument("bench needs 1 <= v-min <= v-max");
    for (const auto& m : cfg.methods)
        if (m != "fast" && m != "naive" && m != "lp") throw std::invalid_argument("unknown bench method '" + m + "'");
    std::vector<BenchRecord> out;
    for (std::size_t V = cfg.v_min; V <= cfg.v_max; V += cfg.step) {
        const Word v = repeat_word(cfg.base, V);
        std::vector<BenchRecord> row;
        for (const auto& m : cfg.methods) {
            if (m != "fast" && V > cfg.naive_cap) continue;
            row.push_back(bench_cell(sys, v, m, cfg.repetitions));
        }
        for (std::size_t k = 1; k < row.size(); ++k)
            if (!row[k].result.approx_equal(row[0].result))
                throw BenchMismatch("methods disagree at V = " + std::to_string(V) + ": " + row[0].method + " " +
                                    row[0].result.str() + " vs " + row[k].method + " " + row[k].result.str());
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRecord>& rows) {
    std::ostringstream os;
    os << "method,V,n,wall_time,result\n";
    for (const auto& r : rows) os << r.method << ',' << r.V << ',' << r.n << ',' << r.wall_time << ",\"" << r.result.str() << "\"\n";
    return os.str();
}

}  // namespace sldi
