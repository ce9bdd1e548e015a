#include "sldi/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sldi {

using nlohmann::json;

ModeMatrices ModeMatrices::unconstrained(std::size_t n) {
    return {MpMatrix::zero(n), MpMatrix::zero(n), MpMatrix::top(n), MpMatrix::top(n)};
}

void ModeMatrices::validate() const {
    const std::size_t d = A0.rows();
    for (const MpMatrix* m : {&A0, &A1, &B0, &B1})
        if (m->rows() != d || m->cols() != d) throw std::invalid_argument("mode matrices must share one square dimension");
    for (const MpMatrix* m : {&A0, &A1})
        for (ExtReal v : m->data())
            if (v == POS_INF) throw std::invalid_argument("A0/A1 must not contain +inf");
    for (const MpMatrix* m : {&B0, &B1})
        for (ExtReal v : m->data())
            if (v == NEG_INF) throw std::invalid_argument("B0/B1 must not contain -inf");
}

const ModeMatrices& SldiSystem::mode(const std::string& name) const {
    auto it = modes.find(name);
    if (it == modes.end()) throw std::invalid_argument("unknown mode '" + name + "'");
    return it->second;
}

std::vector<std::string> SldiSystem::alphabet() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : modes) out.push_back(k);
    return out;
}

std::string SldiSystem::event_name(std::size_t i) const {
    if (i < event_names.size()) return event_names[i];
    return "x" + std::to_string(i + 1);
}

void SldiSystem::validate() const {
    for (const auto& [name, m] : modes) {
        m.validate();
        if (m.n() != n) throw std::invalid_argument("mode '" + name + "' has dimension " + std::to_string(m.n()) + ", expected " + std::to_string(n));
    }
    if (!event_names.empty() && event_names.size() != n) throw std::invalid_argument("events list length differs from n");
}

ModeMatrices pteg_to_mode(const Pteg& p) {
    ModeMatrices m = ModeMatrices::unconstrained(p.n);
    std::set<std::tuple<std::size_t, std::size_t, int>> seen;
    for (const Place& pl : p.places) {
        if (pl.up >= p.n || pl.down >= p.n) throw std::invalid_argument("place refers to a transition out of range");
        if (pl.marking != 0 && pl.marking != 1) throw std::invalid_argument("place marking must be 0 or 1");
        if (!is_finite(pl.lo) || pl.lo < 0) throw std::invalid_argument("place lower bound must be a finite non-negative time");
        if (pl.hi < pl.lo) throw std::invalid_argument("place window has lo > hi");
        if (!seen.insert({pl.down, pl.up, pl.marking}).second)
            throw std::invalid_argument("duplicate place between transitions " + std::to_string(pl.up + 1) + " -> " +
                                        std::to_string(pl.down + 1) + " with marking " + std::to_string(pl.marking));
        MpMatrix& A = pl.marking ? m.A1 : m.A0;
        MpMatrix& B = pl.marking ? m.B1 : m.B0;
        A(pl.down, pl.up) = pl.lo;
        B(pl.down, pl.up) = pl.hi;
    }
    return m;
}

ModeMatrices enforce_nondecreasing(const ModeMatrices& m) {
    ModeMatrices out = m;
    out.A1 = m.A1 | MpMatrix::identity(m.n());
    return out;
}

StrictMatrices strict_matrices(const Pteg& p) {
    const ModeMatrices m = pteg_to_mode(p);
    std::map<std::pair<std::size_t, std::size_t>, double> rho;
    for (const Place& pl : p.places)
        if (pl.marking == 1) rho[{pl.down, pl.up}] = pl.rho.value_or(0.0);
    StrictMatrices s{MpMatrix::zero(p.n), MpMatrix::top(p.n)};
    for (const auto& [ij, r] : rho) {
        const auto [i, j] = ij;
        if (r < 0) throw std::invalid_argument("time tags must be non-negative");
        if (is_finite(m.A1(i, j))) s.lower(i, j) = m.A1(i, j) - r;
        if (is_finite(m.B1(i, j))) s.upper(i, j) = m.B1(i, j) - r;
    }
    return s;
}

std::pair<SldiSystem, Schedule> strict_to_sldi(const Pteg& p) {
    if (!p.strict) throw std::invalid_argument("P-TEG carries no strict initial conditions");
    const StrictMatrices s = strict_matrices(p);
    SldiSystem sys;
    sys.n = p.n;
    sys.pteg = p;
    sys.pteg_mode = "A";
    sys.modes["A"] = pteg_to_mode(p);
    ModeMatrices init;
    init.A0 = MpMatrix(p.n, p.n, 0.0);
    init.B0 = MpMatrix(p.n, p.n, 0.0);
    init.A1 = s.lower;
    init.B1 = s.upper;
    sys.modes[kInitMode] = init;
    Schedule sched;
    sched.u0 = {kInitMode};
    sched.groups.push_back({{"A"}, kInfinite, {}});
    return {sys, sched};
}

// ---- schedules ------------------------------------------------------------

Schedule::Kind Schedule::kind() const {
    if (groups.empty()) return Kind::finite;
    if (u0.empty() && groups.size() == 1 && groups[0].u.empty()) return Kind::periodic;
    return Kind::intermittent;
}

Word Schedule::expand(long horizon) const {
    Word w = u0;
    for (const auto& g : groups) {
        const long reps = g.m == kInfinite ? horizon : g.m;
        for (long r = 0; r < reps; ++r) w.insert(w.end(), g.v.begin(), g.v.end());
        w.insert(w.end(), g.u.begin(), g.u.end());
    }
    return w;
}

namespace {

struct Token {
    enum Kind { name, lparen, rparen, caret, end } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (c == '(') {
            out.push_back({Token::lparen, "(", i++});
        } else if (c == ')') {
            out.push_back({Token::rparen, ")", i++});
        } else if (c == '^') {
            out.push_back({Token::caret, "^", i++});
        } else {
            const std::size_t start = i;
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' && s[i] != '^') ++i;
            out.push_back({Token::name, s.substr(start, i - start), start});
        }
    }
    out.push_back({Token::end, "", s.size()});
    return out;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ScheduleError("schedule: " + msg + " at offset " + std::to_string(t.pos));
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
    const std::vector<Token> toks = lex(text);
    std::size_t k = 0;
    auto word = [&]() {
        Word w;
        while (toks[k].kind == Token::name) w.push_back(toks[k++].text);
        return w;
    };
    Schedule s;
    s.u0 = word();
    while (toks[k].kind != Token::end) {
        if (!s.groups.empty() && s.groups.back().m == kInfinite) fail(toks[k], "content after a '^inf' group");
        if (toks[k].kind != Token::lparen) fail(toks[k], "expected '('");
        ++k;
        ScheduleGroup g;
        g.v = word();
        if (g.v.empty()) fail(toks[k], "empty group");
        if (toks[k].kind != Token::rparen) fail(toks[k], "expected ')'");
        ++k;
        if (toks[k].kind != Token::caret) fail(toks[k], "expected '^' after group");
        ++k;
        if (toks[k].kind != Token::name) fail(toks[k], "expected repetition count");
        const std::string& e = toks[k].text;
        if (e == "inf") {
            g.m = kInfinite;
        } else {
            if (e.empty() || !std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                fail(toks[k], "repetition count must be a positive integer or 'inf'");
            g.m = std::stol(e);
            if (g.m < 1) fail(toks[k], "repetition count must be at least 1");
        }
        ++k;
        g.u = word();
        s.groups.push_back(std::move(g));
    }
    for (std::size_t h = 0; h < s.groups.size(); ++h) {
        const bool last = h + 1 == s.groups.size();
        const auto& g = s.groups[h];
        if (g.m == kInfinite && !g.u.empty()) throw ScheduleError("schedule: content after a '^inf' group");
        if (!last && g.m < 2) throw ScheduleError("schedule: non-final group needs a repetition count of at least 2");
        if (last && g.m != kInfinite && g.m < 2 && !g.u.empty())
            throw ScheduleError("schedule: group followed by a transient needs a repetition count of at least 2");
    }
    return s;
}

Schedule parse_schedule(const std::string& text, const SldiSystem& sys) {
    Schedule s = parse_schedule(text);
    auto check = [&](const Word& w) {
        for (const auto& m : w)
            if (!sys.has_mode(m)) throw ScheduleError("schedule: unknown mode '" + m + "'");
    };
    check(s.u0);
    for (const auto& g : s.groups) {
        check(g.v);
        check(g.u);
    }
    return s;
}

std::string render(const Word& w) {
    std::string out;
    for (const auto& m : w) out += (out.empty() ? "" : " ") + m;
    return out;
}

std::string render(const Schedule& s) {
    std::string out = render(s.u0);
    auto append = [&out](const std::string& piece) {
        if (piece.empty()) return;
        if (!out.empty()) out += ' ';
        out += piece;
    };
    for (const auto& g : s.groups) {
        append("(" + render(g.v) + ")^" + (g.m == kInfinite ? std::string("inf") : std::to_string(g.m)));
        append(render(g.u));
    }
    return out;
}

// ---- model files ----------------------------------------------------------

namespace {

ExtReal parse_entry(const json& v, bool rmax) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "-inf" && rmax) return NEG_INF;
        if ((s == "inf" || s == "+inf") && !rmax) return POS_INF;
        throw std::invalid_argument("matrix entry '" + s + "' not allowed here");
    }
    throw std::invalid_argument("matrix entries must be numbers or \"-inf\"/\"inf\"");
}

MpMatrix parse_matrix(const json& j, std::size_t n, bool rmax, const std::string& what) {
    if (!j.is_array() || j.size() != n) throw std::invalid_argument(what + ": expected " + std::to_string(n) + " rows");
    MpMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw std::invalid_argument(what + ": row " + std::to_string(i + 1) + " has wrong length");
        for (std::size_t c = 0; c < n; ++c) m(i, c) = parse_entry(j[i][c], rmax);
    }
    return m;
}

json matrix_to_json(const MpMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const ExtReal v = m(i, c);
            if (v == NEG_INF) row.push_back("-inf");
            else if (v == POS_INF) row.push_back("inf");
            else row.push_back(v);
        }
        rows.push_back(row);
    }
    return rows;
}

std::size_t parse_index(const json& v, std::size_t n, const char* what) {
    if (!v.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
    const long i = v.get<long>();
    if (i < 1 || static_cast<std::size_t>(i) > n) throw std::invalid_argument(std::string(what) + " out of range (1-based)");
    return static_cast<std::size_t>(i - 1);
}

}  // namespace

SldiSystem parse_system_json(const std::string& text) {
    const json j = json::parse(text);
    SldiSystem sys;
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1) throw std::invalid_argument("model: 'n' must be a positive integer");
    sys.n = j["n"].get<std::size_t>();
    if (j.contains("events")) sys.event_names = j["events"].get<std::vector<std::string>>();
    if (j.contains("modes")) {
        for (const auto& [name, mj] : j["modes"].items()) {
            ModeMatrices m = ModeMatrices::unconstrained(sys.n);
            if (mj.contains("A0")) m.A0 = parse_matrix(mj["A0"], sys.n, true, name + ".A0");
            if (mj.contains("A1")) m.A1 = parse_matrix(mj["A1"], sys.n, true, name + ".A1");
            if (mj.contains("B0")) m.B0 = parse_matrix(mj["B0"], sys.n, false, name + ".B0");
            if (mj.contains("B1")) m.B1 = parse_matrix(mj["B1"], sys.n, false, name + ".B1");
            sys.modes[name] = m;
        }
    }
    if (j.contains("pteg")) {
        const json& pj = j["pteg"];
        Pteg p;
        p.n = sys.n;
        for (const json& pl : pj.at("places")) {
            Place place;
            place.up = parse_index(pl.at("from"), sys.n, "place.from");
            place.down = parse_index(pl.at("to"), sys.n, "place.to");
            place.marking = pl.value("marking", 0);
            place.lo = pl.value("lo", 0.0);
            place.hi = pl.contains("hi") ? parse_entry(pl["hi"], false) : POS_INF;
            p.places.push_back(place);
        }
        if (j.contains("strict")) {
            p.strict = true;
            const json& rho = j["strict"].at("rho");
            for (const auto& [key, val] : rho.items()) {
                const auto comma = key.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("strict.rho keys must look like \"i,j\"");
                const std::size_t i = std::stoul(key.substr(0, comma)) - 1;
                const std::size_t jj = std::stoul(key.substr(comma + 1)) - 1;
                bool found = false;
                for (Place& pl : p.places)
                    if (pl.down == i && pl.up == jj && pl.marking == 1) {
                        pl.rho = val.get<double>();
                        found = true;
                    }
                if (!found) throw std::invalid_argument("strict.rho entry " + key + " has no marked place");
            }
        }
        sys.pteg_mode = pj.value("mode", std::string("A"));
        if (sys.modes.count(sys.pteg_mode)) throw std::invalid_argument("pteg mode name clashes with an explicit mode");
        sys.modes[sys.pteg_mode] = pteg_to_mode(p);
        sys.pteg = p;
    } else if (j.contains("strict")) {
        throw std::invalid_argument("'strict' requires a 'pteg' section");
    }
    if (sys.modes.empty()) throw std::invalid_argument("model defines no modes");
    sys.validate();
    return sys;
}

SldiSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system_json(ss.str());
}

std::string system_to_json(const SldiSystem& sys) {
    json j;
    j["n"] = sys.n;
    if (!sys.event_names.empty()) j["events"] = sys.event_names;
    json modes = json::object();
    for (const auto& [name, m] : sys.modes) {
        modes[name] = {{"A0", matrix_to_json(m.A0)}, {"A1", matrix_to_json(m.A1)}, {"B0", matrix_to_json(m.B0)}, {"B1", matrix_to_json(m.B1)}};
    }
    j["modes"] = modes;
    return j.dump(1);
}

}  // namespace sldi
