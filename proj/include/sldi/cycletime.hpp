#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sldi/model.hpp"
#include "sldi/ncp.hpp"

namespace sldi {

struct PeriodicBlocks {
    std::vector<MpMatrix> P, I, C;
    std::size_t V() const { return C.size(); }
};

PeriodicBlocks periodic_blocks(const SldiSystem& sys, const Word& v);

Interval ldi_one_periodic(const ModeMatrices& m);

// The Vn×Vn instance λ𝐏 ⊕ λ⁻¹𝐈 ⊕ 𝐂 of a periodic schedule v^∞.
PicInstance periodic_instance(const SldiSystem& sys, const Word& v);

Interval periodic_naive(const SldiSystem& sys, const Word& v);
Interval periodic_fast(const SldiSystem& sys, const Word& v);
// Projection of the q = 1 LP encoding of periodic_instance: [min λ, max λ].
Interval periodic_lp(const SldiSystem& sys, const Word& v);

enum class Method { fast, naive, lp, automatic };
Method parse_method(const std::string& s);
Interval periodic(const SldiSystem& sys, const Word& v, Method method);

PicInstance strict_instance(const Pteg& p);
Interval strict_one_periodic(const Pteg& p);

// ---- block-tridiagonal chains --------------------------------------------

// Chain of L blocks: C[k] on the diagonal, P[k] at block (k, k+1) and I[k] at
// block (k+1, k), both for k < L-1.
struct BlockChain {
    std::vector<MpMatrix> C, P, I;
    std::size_t length() const { return C.size(); }
    std::size_t n() const { return C.empty() ? 0 : C[0].rows(); }
    MpMatrix assemble() const;
};

class TridiagStar {
public:
    explicit TridiagStar(BlockChain chain);
    bool in_gamma() const { return ok_; }
    // Block (i, j) of the chain's Kleene star (paths from block j to block i).
    MpMatrix block(std::size_t i, std::size_t j) const;

private:
    BlockChain ch_;
    bool ok_ = true;
    std::vector<MpMatrix> cs_, pp_, ii_, us_, ds_, diag_;
};

std::map<std::pair<std::size_t, std::size_t>, MpMatrix> tridiag_star_blocks(
    const BlockChain& chain, const std::vector<std::pair<std::size_t, std::size_t>>& which);

// ---- intermittently periodic schedules -----------------------------------

struct BlockInfo {
    std::string mode;
    long group = -1;      // index h of the periodic group, -1 for transient positions
    std::size_t idx = 0;  // position inside v_h or inside the transient
};

struct IntermittentLayout {
    std::size_t n = 0;
    std::vector<BlockInfo> blocks;
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> wrap;  // per group: (first, last) block
    std::vector<long> m;                                                   // per group repetition counts
    std::size_t q() const { return m.size(); }
};

struct IntermittentInstance {
    MpicInstance mpic;
    IntermittentLayout layout;
};

IntermittentInstance intermittent_build(const SldiSystem& sys, const Schedule& s);

struct ReducedMpic {
    bool infeasible = false;  // a positive circuit avoids every λ-arc
    std::string reason;
    MpicInstance mpic;
    std::vector<std::size_t> provenance;  // original block of each reduced block
};

ReducedMpic intermittent_reduce(const IntermittentInstance& big);

struct IntermittentAnswer {
    enum class Status { feasible, infeasible, unbounded, failure } status = Status::failure;
    std::vector<double> lambda;
    std::optional<double> objective;
    std::optional<Interval> interval;  // q = 1 only
};

// Analysis of an intermittent schedule through the reduced instance.
// With an objective the LP minimizer is returned; with q = 1 the exact
// interval is also reported.
IntermittentAnswer intermittent_solve(const SldiSystem& sys, const Schedule& s, bool nonnegative,
                                      const std::vector<double>& objective);

}  // namespace sldi
