#include "sldi/cycletime.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace sldi {

PeriodicBlocks periodic_blocks(const SldiSystem& sys, const Word& v) {
    if (v.empty()) throw std::invalid_argument("periodic schedule needs a non-empty word");
    PeriodicBlocks b;
    for (const auto& name : v) {
        const ModeMatrices& m = sys.mode(name);
        b.P.push_back(sharp(m.B1));
        b.I.push_back(m.A1);
        b.C.push_back(m.A0 | sharp(m.B0));
    }
    return b;
}

Interval ldi_one_periodic(const ModeMatrices& m) {
    return solve_pic_ncp({sharp(m.B1), m.A1, m.A0 | sharp(m.B0)});
}

PicInstance periodic_instance(const SldiSystem& sys, const Word& v) {
    const PeriodicBlocks b = periodic_blocks(sys, v);
    const std::size_t n = sys.n, V = b.V(), N = V * n;
    PicInstance inst{MpMatrix::zero(N), MpMatrix::zero(N), MpMatrix::zero(N)};
    for (std::size_t h = 0; h < V; ++h) {
        inst.C.oplus_block(h * n, h * n, b.C[h]);
        if (h + 1 < V) {
            inst.C.oplus_block(h * n, (h + 1) * n, b.P[h]);
            inst.C.oplus_block((h + 1) * n, h * n, b.I[h]);
        }
    }
    inst.I.oplus_block(0, (V - 1) * n, b.I[V - 1]);
    inst.P.oplus_block((V - 1) * n, 0, b.P[V - 1]);
    return inst;
}

Interval periodic_naive(const SldiSystem& sys, const Word& v) {
    return solve_pic_ncp(periodic_instance(sys, v));
}

Interval periodic_fast(const SldiSystem& sys, const Word& v) {
    const std::size_t V = v.size();
    if (V == 1) return ldi_one_periodic(sys.mode(v[0]));
    if (V == 2) return periodic_naive(sys, v);

    const PeriodicBlocks b = periodic_blocks(sys, v);
    const std::size_t n = sys.n;
    const MpMatrix E = MpMatrix::identity(n), Z = MpMatrix::zero(n);

    // every diagonal block C_h must be in Gamma
    std::vector<MpMatrix> cs(V);
    for (std::size_t h = 0; h < V; ++h) {
        StarResult r = kleene_star(b.C[h]);
        if (!r.ok()) return Interval::empty_set();
        cs[h] = std::move(r.star);
    }
    std::vector<MpMatrix> pp(V), ii(V);
    for (std::size_t h = 0; h < V; ++h) {
        const std::size_t nx = (h + 1) % V;
        pp[h] = cs[h] * b.P[h] * cs[nx];
        ii[h] = cs[nx] * b.I[h] * cs[h];
    }

    // chains of forward (P) and backward (I) loops; cp[h] pairs block h with h+1
    std::vector<MpMatrix> cp(V, Z), cps(V, E), ci(V, Z), cis(V, E);
    for (std::size_t h = V - 1; h-- > 0;) {
        cp[h] = pp[h] * cps[h + 1] * ii[h];
        StarResult r = kleene_star(cp[h]);
        if (!r.ok()) return Interval::empty_set();
        cps[h] = std::move(r.star);
    }
    for (std::size_t h = 1; h < V; ++h) {
        ci[h] = ii[h] * cis[h - 1] * pp[h];
        StarResult r = kleene_star(ci[h]);
        if (!r.ok()) return Interval::empty_set();
        cis[h] = std::move(r.star);
    }

    // what remains is a PIC instance on the first block
    MpMatrix mp = pp[0];
    for (std::size_t h = 1; h + 1 < V; ++h) mp = mp * cps[h] * pp[h];
    mp = mp * pp[V - 1];
    MpMatrix mi = ii[V - 1];
    for (std::size_t h = V - 2; h >= 1; --h) mi = mi * cis[h] * ii[h];
    mi = mi * ii[0];
    const MpMatrix mc = cp[0] | ci[V - 1];
    return solve_pic_ncp({mp, mi, mc});
}

Interval periodic_lp(const SldiSystem& sys, const Word& v) {
    const PicInstance pic = periodic_instance(sys, v);
    MpicInstance inst{1, {pic.P}, {pic.I}, pic.C};
    const auto ineqs = mpic_to_lp(inst);
    const std::size_t N = inst.dim();
    LpOptions lo_opt;
    lo_opt.objective = {1.0};
    const LpResult lo = lp_solve(N, 1, ineqs, lo_opt);
    if (lo.status == LpResult::Status::infeasible) return Interval::empty_set();
    if (lo.status == LpResult::Status::failure) throw std::runtime_error("LP solver failure: " + lo.message);
    LpOptions hi_opt;
    hi_opt.objective = {-1.0};
    const LpResult hi = lp_solve(N, 1, ineqs, hi_opt);
    if (hi.status == LpResult::Status::failure) throw std::runtime_error("LP solver failure: " + hi.message);
    Interval r;
    r.lo = lo.status == LpResult::Status::unbounded ? NEG_INF : lo.lambda[0];
    r.hi = hi.status == LpResult::Status::unbounded ? POS_INF : hi.lambda[0];
    return r;
}

Method parse_method(const std::string& s) {
    if (s == "fast") return Method::fast;
    if (s == "naive") return Method::naive;
    if (s == "lp") return Method::lp;
    if (s == "auto") return Method::automatic;
    throw std::invalid_argument("unknown method '" + s + "'");
}

Interval periodic(const SldiSystem& sys, const Word& v, Method method) {
    switch (method) {
        case Method::naive: return periodic_naive(sys, v);
        case Method::lp: return periodic_lp(sys, v);
        case Method::fast:
        case Method::automatic: return periodic_fast(sys, v);
    }
    return periodic_fast(sys, v);
}

PicInstance strict_instance(const Pteg& p) {
    const auto [sys, sched] = strict_to_sldi(p);
    const ModeMatrices& init = sys.mode(kInitMode);
    const ModeMatrices& a = sys.mode("A");
    const std::size_t n = p.n;
    PicInstance inst{MpMatrix::zero(2 * n), MpMatrix::zero(2 * n), MpMatrix::zero(2 * n)};
    inst.P.set_block(n, n, sharp(a.B1));
    inst.I.set_block(n, n, a.A1);
    inst.C.set_block(0, 0, init.A0 | sharp(init.B0));
    inst.C.set_block(0, n, sharp(init.B1));
    inst.C.set_block(n, 0, init.A1);
    inst.C.set_block(n, n, a.A0 | sharp(a.B0));
    return inst;
}

Interval strict_one_periodic(const Pteg& p) {
    if (!p.strict) throw std::invalid_argument("strict_one_periodic: P-TEG has no strict initial conditions");
    return solve_pic_ncp(strict_instance(p));
}

// ---- block-tridiagonal chains --------------------------------------------

MpMatrix BlockChain::assemble() const {
    const std::size_t L = length(), d = n();
    MpMatrix m = MpMatrix::zero(L * d);
    for (std::size_t k = 0; k < L; ++k) {
        m.set_block(k * d, k * d, C[k]);
        if (k + 1 < L) {
            m.set_block(k * d, (k + 1) * d, P[k]);
            m.set_block((k + 1) * d, k * d, I[k]);
        }
    }
    return m;
}

TridiagStar::TridiagStar(BlockChain chain) : ch_(std::move(chain)) {
    const std::size_t L = ch_.length(), d = ch_.n();
    if (L == 0) return;
    if (ch_.P.size() + 1 != L || ch_.I.size() + 1 != L) throw std::invalid_argument("BlockChain: need L-1 off-diagonal blocks");
    const MpMatrix E = MpMatrix::identity(d), Z = MpMatrix::zero(d);
    cs_.resize(L);
    for (std::size_t k = 0; k < L; ++k) {
        StarResult r = kleene_star(ch_.C[k]);
        if (!r.ok()) {
            ok_ = false;
            return;
        }
        cs_[k] = std::move(r.star);
    }
    pp_.resize(L - 1);
    ii_.resize(L - 1);
    for (std::size_t k = 0; k + 1 < L; ++k) {
        pp_[k] = cs_[k] * ch_.P[k] * cs_[k + 1];
        ii_[k] = cs_[k + 1] * ch_.I[k] * cs_[k];
    }
    // us_[k]: star of the loops at k that stay in blocks >= k; ds_[k]: blocks <= k.
    std::vector<MpMatrix> up(L, Z), down(L, Z);
    us_.assign(L, E);
    ds_.assign(L, E);
    for (std::size_t k = L - 1; k-- > 0;) {
        up[k] = pp_[k] * us_[k + 1] * ii_[k];
        StarResult r = kleene_star(up[k]);
        if (!r.ok()) {
            ok_ = false;
            return;
        }
        us_[k] = std::move(r.star);
    }
    for (std::size_t k = 1; k < L; ++k) {
        down[k] = ii_[k - 1] * ds_[k - 1] * pp_[k - 1];
        StarResult r = kleene_star(down[k]);
        if (!r.ok()) {
            ok_ = false;
            return;
        }
        ds_[k] = std::move(r.star);
    }
    diag_.resize(L);
    for (std::size_t k = 0; k < L; ++k) {
        StarResult r = kleene_star(up[k] | down[k]);
        if (!r.ok()) {
            ok_ = false;
            return;
        }
        diag_[k] = cs_[k] * r.star * cs_[k];
    }
}

MpMatrix TridiagStar::block(std::size_t i, std::size_t j) const {
    if (!ok_) throw std::logic_error("TridiagStar: chain has a positive circuit");
    const std::size_t L = ch_.length();
    if (i >= L || j >= L) throw std::out_of_range("TridiagStar::block");
    if (i == j) return diag_[i];
    if (i < j) {
        MpMatrix r = diag_[i] * ch_.P[i];
        for (std::size_t k = i + 1; k < j; ++k) r = r * (cs_[k] * us_[k] * cs_[k]) * ch_.P[k];
        return r * (cs_[j] * us_[j] * cs_[j]);
    }
    MpMatrix r = diag_[i] * ch_.I[i - 1];
    for (std::size_t k = i - 1; k > j; --k) r = r * (cs_[k] * ds_[k] * cs_[k]) * ch_.I[k - 1];
    return r * (cs_[j] * ds_[j] * cs_[j]);
}

std::map<std::pair<std::size_t, std::size_t>, MpMatrix> tridiag_star_blocks(
    const BlockChain& chain, const std::vector<std::pair<std::size_t, std::size_t>>& which) {
    TridiagStar ts(chain);
    if (!ts.in_gamma()) throw std::domain_error("tridiag_star_blocks: chain has a positive circuit");
    std::map<std::pair<std::size_t, std::size_t>, MpMatrix> out;
    for (const auto& ij : which) out.emplace(ij, ts.block(ij.first, ij.second));
    return out;
}

// ---- intermittently periodic schedules -----------------------------------

IntermittentInstance intermittent_build(const SldiSystem& sys, const Schedule& s) {
    IntermittentInstance out;
    IntermittentLayout& lay = out.layout;
    lay.n = sys.n;
    auto push_word = [&](const Word& w, long group) {
        for (std::size_t r = 0; r < w.size(); ++r) {
            sys.mode(w[r]);
            lay.blocks.push_back({w[r], group, r});
        }
    };
    push_word(s.u0, -1);
    for (std::size_t h = 0; h < s.groups.size(); ++h) {
        const auto& g = s.groups[h];
        if (g.v.empty()) throw std::invalid_argument("intermittent_build: empty periodic subschedule");
        if (g.m != kInfinite && g.m < 1) throw std::invalid_argument("intermittent_build: bad repetition count");
        if (g.m == kInfinite && !g.u.empty()) throw std::invalid_argument("intermittent_build: transient after an infinite group");
        const std::size_t first = lay.blocks.size();
        push_word(g.v, static_cast<long>(h));
        const std::size_t last = lay.blocks.size() - 1;
        if (g.m == kInfinite || g.m >= 2) lay.wrap.push_back(std::make_pair(first, last));
        else lay.wrap.push_back(std::nullopt);
        lay.m.push_back(g.m);
        push_word(g.u, -1);
    }
    const std::size_t n = sys.n, L = lay.blocks.size(), N = L * n, q = lay.q();
    if (L == 0) throw std::invalid_argument("intermittent_build: empty schedule");

    MpicInstance& mp = out.mpic;
    mp.q = q;
    mp.C = MpMatrix::zero(N);
    mp.P.assign(q, MpMatrix::zero(N));
    mp.I.assign(q, MpMatrix::zero(N));
    for (std::size_t p = 0; p < L; ++p) {
        const ModeMatrices& m = sys.mode(lay.blocks[p].mode);
        mp.C.oplus_block(p * n, p * n, m.A0 | sharp(m.B0));
        if (p + 1 < L) {
            mp.C.oplus_block(p * n, (p + 1) * n, sharp(m.B1));
            mp.C.oplus_block((p + 1) * n, p * n, m.A1);
        }
    }
    for (std::size_t h = 0; h < q; ++h) {
        if (!lay.wrap[h]) continue;
        const auto [first, last] = *lay.wrap[h];
        const ModeMatrices& m = sys.mode(lay.blocks[last].mode);
        mp.P[h].oplus_block(last * n, first * n, sharp(m.B1));
        mp.I[h].oplus_block(first * n, last * n, m.A1);
    }
    return out;
}

namespace {

// λ-dependence of a block term: param -1 means λ-free.
struct Tag {
    long param = -1;
    int slope = 0;
    bool operator<(const Tag& o) const { return std::tie(param, slope) < std::tie(o.param, o.slope); }
};

Tag combine(Tag a, Tag b) {
    if (a.param < 0) return b;
    if (b.param < 0) return a;
    if (a.param != b.param) throw std::logic_error("intermittent_reduce: term mixes two different parameters");
    const int s = a.slope + b.slope;
    if (s < -1 || s > 1) throw std::logic_error("intermittent_reduce: term is not affine in its parameter");
    return s == 0 ? Tag{} : Tag{a.param, s};
}

std::vector<std::pair<Tag, MpMatrix>> tagged_block(const MpicInstance& mp, std::size_t n, std::size_t r, std::size_t c) {
    std::vector<std::pair<Tag, MpMatrix>> out;
    auto take = [&](const MpMatrix& m, Tag t) {
        MpMatrix b = m.block(r * n, c * n, n, n);
        if (!b.all_neg_inf()) out.emplace_back(t, std::move(b));
    };
    take(mp.C, Tag{});
    for (std::size_t h = 0; h < mp.q; ++h) {
        take(mp.P[h], Tag{static_cast<long>(h), +1});
        take(mp.I[h], Tag{static_cast<long>(h), -1});
    }
    return out;
}

}  // namespace

ReducedMpic intermittent_reduce(const IntermittentInstance& big) {
    const IntermittentLayout& lay = big.layout;
    const MpicInstance& mp = big.mpic;
    const std::size_t n = lay.n, L = lay.blocks.size(), q = lay.q();

    ReducedMpic out;
    std::vector<long> a_index(L, -1);
    for (const auto& w : lay.wrap)
        if (w) {
            a_index[w->first] = static_cast<long>(out.provenance.size());
            out.provenance.push_back(w->first);
        }
    const std::size_t A = out.provenance.size(), R = A * n;
    out.mpic.q = q;
    out.mpic.C = MpMatrix::zero(R);
    out.mpic.P.assign(q, MpMatrix::zero(R));
    out.mpic.I.assign(q, MpMatrix::zero(R));

    // Terms of the reduced matrix before the a* sandwich, grouped by tag.
    std::map<Tag, MpMatrix> y;
    auto add_y = [&](Tag t, std::size_t ra, std::size_t ca, const MpMatrix& blk) {
        auto it = y.find(t);
        if (it == y.end()) it = y.emplace(t, MpMatrix::zero(R)).first;
        it->second.oplus_block(ra * n, ca * n, blk);
    };

    MpMatrix a0 = MpMatrix::zero(R);
    for (std::size_t ra = 0; ra < A; ++ra)
        for (std::size_t ca = 0; ca < A; ++ca) {
            const std::size_t r = out.provenance[ra], c = out.provenance[ca];
            if (r != c && r + 1 != c && c + 1 != r) continue;  // non-adjacent blocks never touch
            for (auto& [t, blk] : tagged_block(mp, n, r, c)) {
                if (t.param < 0) a0.oplus_block(ra * n, ca * n, blk);
                else add_y(t, ra, ca, blk);
            }
        }

    // Wrap-last blocks are the only non-adjacent contacts between a and d.
    std::vector<std::vector<std::size_t>> partners(L);
    for (std::size_t h = 0; h < q; ++h)
        if (lay.wrap[h]) {
            partners[lay.wrap[h]->second].push_back(lay.wrap[h]->first);
        }

    std::size_t s = 0;
    while (s < L) {
        if (a_index[s] >= 0) {
            ++s;
            continue;
        }
        std::size_t e = s;
        while (e + 1 < L && a_index[e + 1] < 0) ++e;

        BlockChain chain;
        for (std::size_t p = s; p <= e; ++p) {
            chain.C.push_back(mp.C.block(p * n, p * n, n, n));
            if (p < e) {
                chain.P.push_back(mp.C.block(p * n, (p + 1) * n, n, n));
                chain.I.push_back(mp.C.block((p + 1) * n, p * n, n, n));
            }
        }
        TridiagStar ts(std::move(chain));
        if (!ts.in_gamma()) {
            out.infeasible = true;
            out.reason = "positive circuit among blocks " + std::to_string(s + 1) + ".." + std::to_string(e + 1) + " (no parameter involved)";
            return out;
        }

        // Ports: segment blocks adjacent to an a-block or carrying a wrap arc.
        struct Contact { std::size_t p, a; };
        std::vector<Contact> contacts;
        for (std::size_t p = s; p <= e; ++p) {
            std::vector<std::size_t> cand = partners[p];
            if (p == s && s > 0 && a_index[s - 1] >= 0) cand.push_back(s - 1);
            if (p == e && e + 1 < L && a_index[e + 1] >= 0) cand.push_back(e + 1);
            for (std::size_t a : cand) contacts.push_back({p, a});
        }
        std::map<std::pair<std::size_t, std::size_t>, MpMatrix> dstar;
        auto dblock = [&](std::size_t p, std::size_t p2) -> const MpMatrix& {
            auto key = std::make_pair(p, p2);
            auto it = dstar.find(key);
            if (it == dstar.end()) it = dstar.emplace(key, ts.block(p - s, p2 - s)).first;
            return it->second;
        };
        for (const Contact& bc : contacts) {      // b: from d-block bc.p into a-block bc.a
            const auto bterms = tagged_block(mp, n, bc.a, bc.p);
            if (bterms.empty()) continue;
            for (const Contact& cc : contacts) {  // c: from a-block cc.a into d-block cc.p
                const auto cterms = tagged_block(mp, n, cc.p, cc.a);
                if (cterms.empty()) continue;
                const MpMatrix& mid = dblock(bc.p, cc.p);
                if (mid.all_neg_inf()) continue;
                for (const auto& [tb, mb] : bterms)
                    for (const auto& [tc, mc] : cterms)
                        add_y(combine(tb, tc), static_cast<std::size_t>(a_index[bc.a]), static_cast<std::size_t>(a_index[cc.a]), mb * mid * mc);
            }
        }
        s = e + 1;
    }

    const StarResult as = kleene_star(a0);
    if (!as.ok()) {
        out.infeasible = true;
        out.reason = "positive circuit among the wrap blocks (no parameter involved)";
        return out;
    }
    for (const auto& [t, m] : y) {
        const MpMatrix red = as.star * m * as.star;
        if (t.param < 0) out.mpic.C = out.mpic.C | red;
        else if (t.slope > 0) out.mpic.P[t.param] = out.mpic.P[t.param] | red;
        else out.mpic.I[t.param] = out.mpic.I[t.param] | red;
    }
    return out;
}

IntermittentAnswer intermittent_solve(const SldiSystem& sys, const Schedule& s, bool nonnegative,
                                      const std::vector<double>& objective) {
    IntermittentAnswer ans;
    const IntermittentInstance big = intermittent_build(sys, s);
    const ReducedMpic red = intermittent_reduce(big);
    const std::size_t q = big.layout.q();
    if (red.infeasible) {
        ans.status = IntermittentAnswer::Status::infeasible;
        if (q == 1) ans.interval = Interval::empty_set();
        return ans;
    }
    if (q == 1) {
        Interval iv = red.mpic.dim() == 0 ? Interval::all()
                                          : solve_pic_ncp({red.mpic.P[0], red.mpic.I[0], red.mpic.C});
        if (nonnegative) iv = iv.intersect(Interval{0.0, POS_INF, false});
        ans.interval = iv;
    }
    LpOptions opt;
    opt.nonnegative_lambda = nonnegative;
    opt.objective = objective;
    const LpResult lp = lp_solve(red.mpic.dim(), q, mpic_to_lp(red.mpic), opt);
    switch (lp.status) {
        case LpResult::Status::feasible: ans.status = IntermittentAnswer::Status::feasible; break;
        case LpResult::Status::infeasible: ans.status = IntermittentAnswer::Status::infeasible; break;
        case LpResult::Status::unbounded: ans.status = IntermittentAnswer::Status::unbounded; break;
        case LpResult::Status::failure: ans.status = IntermittentAnswer::Status::failure; break;
    }
    ans.lambda = lp.lambda;
    ans.objective = lp.objective;
    return ans;
}

}  // namespace sldi
