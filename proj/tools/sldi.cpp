// sldi: cycle times and trajectories of switched max-plus linear-dual inequalities.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sldi/bench.hpp"
#include "sldi/cycletime.hpp"
#include "sldi/trajectory.hpp"

using namespace sldi;

namespace {

constexpr int kOk = 0, kError = 1, kEmpty = 2;

std::string num(double v) {
    if (!std::isfinite(v)) return format_ext(v);
    return format_ext(std::round(v * 1e9) / 1e9);
}

std::string tuple_str(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s + ")";
}

struct Loaded {
    SldiSystem sys;
    Schedule sched;
    bool has_sched = false;
};

// Strict models become the two-mode system "init A" with schedule init (A)^inf.
Loaded load(const std::string& model, const std::string& schedule, bool strict) {
    Loaded l;
    l.sys = load_system(model);
    if (strict) {
        if (!l.sys.pteg || !l.sys.pteg->strict) throw std::invalid_argument("--strict needs a model with strict initial conditions");
        auto [s, w] = strict_to_sldi(*l.sys.pteg);
        l.sys = std::move(s);
        l.sched = std::move(w);
        l.has_sched = true;
    }
    if (!schedule.empty()) {
        l.sched = parse_schedule(schedule, l.sys);
        l.has_sched = true;
    } else if (!l.has_sched && l.sys.modes.size() == 1) {
        l.sched = parse_schedule("(" + l.sys.modes.begin()->first + ")^inf", l.sys);
        l.has_sched = true;
    }
    if (!l.has_sched) throw std::invalid_argument("--schedule is required for models with several modes");
    return l;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_cycle_time(const std::string& model, const std::string& schedule, const std::string& method, bool nonneg, bool strict) {
    const Loaded l = load(model, schedule, strict);
    Interval iv;
    if (strict && schedule.empty()) {
        iv = strict_one_periodic(*load_system(model).pteg);
    } else if (l.sched.kind() == Schedule::Kind::periodic) {
        iv = periodic(l.sys, l.sched.groups[0].v, parse_method(method));
    } else if (l.sched.kind() == Schedule::Kind::intermittent && l.sched.groups.size() == 1) {
        iv = *intermittent_solve(l.sys, l.sched, false, {}).interval;
    } else {
        throw std::invalid_argument("cycle-time needs a schedule (v)^inf or one with a single periodic group");
    }
    if (nonneg) iv = iv.intersect(Interval{0.0, POS_INF, false});
    std::cout << iv.str() << "\n";
    return iv.empty ? kEmpty : kOk;
}

int cmd_intermittent(const std::string& model, const std::string& schedule, const std::string& objective, bool nonneg,
                     bool strict, const std::string& sweep) {
    const Loaded l = load(model, schedule, strict);
    if (l.sched.groups.empty()) throw std::invalid_argument("schedule has no periodic group");
    const std::size_t q = l.sched.groups.size();

    if (!sweep.empty()) {
        if (q != 1) throw std::invalid_argument("--sweep needs a single periodic group");
        double lo, hi, step;
        char c1, c2;
        std::istringstream ss(sweep);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || hi < lo)
            throw std::invalid_argument("--sweep expects LO:HI:STEP with STEP > 0");
        const IntermittentInstance big = intermittent_build(l.sys, l.sched);
        std::optional<double> first, last;
        std::size_t count = 0, total = 0;
        for (double lam = lo; lam <= hi + 1e-12; lam = lo + static_cast<double>(++total) * step) {
            if (!in_gamma(big.mpic.at({lam}))) continue;
            if (!first) first = lam;
            last = lam;
            ++count;
        }
        if (!first) {
            std::cout << "infeasible\n";
            return kEmpty;
        }
        const std::size_t span = static_cast<std::size_t>(std::llround((*last - *first) / step)) + 1;
        std::cout << "[" << num(*first) << ", " << num(*last) << "]" << (span == count ? "" : " (not contiguous)") << "\n";
        return kOk;
    }

    std::vector<double> obj;
    if (objective == "sum") obj.assign(q, 1.0);
    else if (objective != "none") throw std::invalid_argument("--objective must be 'sum' or 'none'");
    const IntermittentAnswer a = intermittent_solve(l.sys, l.sched, nonneg, obj);
    using S = IntermittentAnswer::Status;
    if (a.status == S::failure) throw std::runtime_error("LP solver failure");
    if (obj.empty() && a.interval) {
        std::cout << a.interval->str() << "\n";
        return a.interval->empty ? kEmpty : kOk;
    }
    switch (a.status) {
        case S::infeasible: std::cout << "infeasible\n"; return kEmpty;
        case S::unbounded: std::cout << "unbounded below\n"; return kOk;
        default: break;
    }
    if (obj.empty()) std::cout << "feasible at " << tuple_str(a.lambda) << "\n";
    else std::cout << num(*a.objective) << " at " << tuple_str(a.lambda) << "\n";
    return kOk;
}

int cmd_trajectory(const std::string& model, const std::string& schedule, const std::vector<double>& lambda, int column,
                   long horizon, const std::string& out, bool strict) {
    const Loaded l = load(model, schedule, strict);
    std::optional<std::size_t> col;
    if (column > 0) col = static_cast<std::size_t>(column - 1);
    Dater d;
    if (l.sched.kind() == Schedule::Kind::periodic) {
        if (lambda.size() != 1) throw std::invalid_argument("periodic schedules take one --lambda value");
        d = synth_periodic(l.sys, l.sched.groups[0].v, lambda[0], col, horizon);
    } else if (l.sched.kind() == Schedule::Kind::intermittent) {
        d = synth_intermittent(l.sys, l.sched, lambda, col, horizon);
    } else {
        throw std::invalid_argument("trajectory needs a schedule with at least one periodic group");
    }
    const std::string csv = export_csv(l.sys, d);
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        f << csv;
        std::cerr << "wrote " << d.K() << " steps to " << out << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& model, const std::string& dater, bool nondecreasing, bool strict) {
    SldiSystem sys = load_system(model);
    if (strict) {
        if (!sys.pteg || !sys.pteg->strict) throw std::invalid_argument("--strict needs a model with strict initial conditions");
        sys = strict_to_sldi(*sys.pteg).first;
    }
    const Dater d = read_dater_csv(slurp(dater), sys.n);
    const VerificationReport rep = verify(sys, d, nondecreasing);
    std::cout << rep.str(sys);
    return rep.ok ? kOk : kEmpty;
}

int cmd_bench(const std::string& model, const std::string& base, BenchConfig cfg, const std::string& out) {
    const SldiSystem sys = load_system(model);
    std::istringstream ss(base);
    for (std::string t; ss >> t;) {
        if (!sys.has_mode(t)) throw std::invalid_argument("unknown mode '" + t + "'");
        cfg.base.push_back(t);
    }
    const auto rows = run_bench(sys, cfg);
    const std::string csv = bench_csv(rows);
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        f << csv;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle times and consistent trajectories for switched max-plus linear-dual inequalities"};
    app.require_subcommand(1);

    std::string model, schedule, method = "fast", objective = "none", out, dater, sweep, base, methods = "fast";
    bool nonneg = true, strict = false, nondecreasing = false;
    std::vector<double> lambda;
    int column = 0;
    long horizon = 3;
    BenchConfig bc;

    auto common = [&](CLI::App* c, bool needs_schedule_flags = true) {
        c->add_option("--model", model, "model file (JSON)")->required()->check(CLI::ExistingFile);
        if (needs_schedule_flags) c->add_option("--schedule", schedule, "schedule expression, e.g. \"(B A)^inf\"");
        c->add_flag("--strict", strict, "use the strict initial conditions of the model's P-TEG");
    };

    auto* ct = app.add_subcommand("cycle-time", "interval of admissible periods");
    common(ct);
    ct->add_option("--method", method, "fast | naive | lp | auto")->check(CLI::IsMember({"fast", "naive", "lp", "auto"}));
    ct->add_flag("--nonnegative,!--raw", nonneg, "intersect with [0, +inf) (default on)");

    auto* im = app.add_subcommand("intermittent", "analysis of intermittently periodic schedules");
    common(im);
    im->add_option("--objective", objective, "none | sum")->check(CLI::IsMember({"none", "sum"}));
    im->add_flag("--nonnegative,!--raw", nonneg, "require nonnegative periods (default on)");
    im->add_option("--sweep", sweep, "LO:HI:STEP grid of periods tested on the unreduced instance (q = 1)");

    auto* tr = app.add_subcommand("trajectory", "synthesize a consistent trajectory as CSV");
    common(tr);
    tr->add_option("--lambda", lambda, "period value(s), comma separated")->required()->delimiter(',');
    tr->add_option("--column", column, "1-based star column (default: first finite one)")->check(CLI::PositiveNumber);
    tr->add_option("--horizon", horizon, "repetitions rendered for an infinite group")->check(CLI::PositiveNumber);
    tr->add_option("--out", out, "output CSV path (default stdout)");

    auto* vf = app.add_subcommand("verify", "check a dater CSV against the model");
    common(vf, false);
    vf->add_option("--dater", dater, "dater CSV (k,mode,event,name,time)")->required()->check(CLI::ExistingFile);
    vf->add_flag("--nondecreasing", nondecreasing, "also require x(h) >= x(k) for repeated modes");

    auto* bn = app.add_subcommand("bench", "time the cycle-time methods for growing schedule lengths");
    bn->add_option("--model", model, "model file (JSON)")->required()->check(CLI::ExistingFile);
    bn->add_option("--base", base, "base word repeated to length V, e.g. \"B A\"")->required();
    bn->add_option("--v-min", bc.v_min, "smallest V");
    bn->add_option("--v-max", bc.v_max, "largest V");
    bn->add_option("--step", bc.step, "V increment");
    bn->add_option("--methods", methods, "comma separated subset of fast,naive,lp");
    bn->add_option("--naive-cap", bc.naive_cap, "largest V timed for naive and lp");
    bn->add_option("--repetitions", bc.repetitions, "runs per cell (median reported)")->check(CLI::PositiveNumber);
    bn->add_option("--out", out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*ct) return cmd_cycle_time(model, schedule, method, nonneg, strict);
        if (*im) return cmd_intermittent(model, schedule, objective, nonneg, strict, sweep);
        if (*tr) return cmd_trajectory(model, schedule, lambda, column, horizon, out, strict);
        if (*vf) return cmd_verify(model, dater, nondecreasing, strict);
        if (*bn) {
            bc.methods.clear();
            std::stringstream ms(methods);
            for (std::string m; std::getline(ms, m, ',');) bc.methods.push_back(m);
            return cmd_bench(model, base, bc, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
