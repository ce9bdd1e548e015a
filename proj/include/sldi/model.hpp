#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sldi/maxplus.hpp"

namespace sldi {

struct ModeMatrices {
    MpMatrix A0, A1;  // over Rmax
    MpMatrix B0, B1;  // over Rmin

    static ModeMatrices unconstrained(std::size_t n);
    std::size_t n() const { return A0.rows(); }
    void validate() const;
    bool operator==(const ModeMatrices&) const = default;
};

// Place from transition `up` to transition `down` (0-based), window [lo, hi].
struct Place {
    std::size_t up = 0, down = 0;
    int marking = 0;
    double lo = 0.0;
    ExtReal hi = POS_INF;
    std::optional<double> rho;  // time tag of the initial token (strict initial conditions)
};

struct Pteg {
    std::size_t n = 0;
    std::vector<Place> places;
    bool strict = false;
};

struct StrictMatrices {
    MpMatrix lower;  // Rmax
    MpMatrix upper;  // Rmin
};

struct SldiSystem {
    std::size_t n = 0;
    std::map<std::string, ModeMatrices> modes;
    std::vector<std::string> event_names;
    std::optional<Pteg> pteg;
    std::string pteg_mode;  // mode name the P-TEG was loaded into

    const ModeMatrices& mode(const std::string& name) const;
    bool has_mode(const std::string& name) const { return modes.count(name) != 0; }
    std::vector<std::string> alphabet() const;
    std::string event_name(std::size_t i) const;
    void validate() const;
};

ModeMatrices pteg_to_mode(const Pteg& p);
ModeMatrices enforce_nondecreasing(const ModeMatrices& m);
StrictMatrices strict_matrices(const Pteg& p);

inline constexpr const char* kInitMode = "init";

// ---- schedules ------------------------------------------------------------

using Word = std::vector<std::string>;

inline constexpr long kInfinite = -1;

struct ScheduleGroup {
    Word v;
    long m = kInfinite;  // repetition count, kInfinite for ^inf
    Word u;              // transient that follows the group
    bool operator==(const ScheduleGroup&) const = default;
};

struct Schedule {
    enum class Kind { finite, periodic, intermittent };

    Word u0;
    std::vector<ScheduleGroup> groups;

    Kind kind() const;
    bool infinite() const { return !groups.empty() && groups.back().m == kInfinite; }
    // Concatenated word; an infinite final group is repeated `horizon` times.
    Word expand(long horizon = 3) const;
    bool operator==(const Schedule&) const = default;
};

struct ScheduleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Schedule parse_schedule(const std::string& text);
Schedule parse_schedule(const std::string& text, const SldiSystem& sys);
std::string render(const Schedule& s);
std::string render(const Word& w);

std::pair<SldiSystem, Schedule> strict_to_sldi(const Pteg& p);

// ---- model files ----------------------------------------------------------

SldiSystem parse_system_json(const std::string& text);
SldiSystem load_system(const std::string& path);
std::string system_to_json(const SldiSystem& sys);

}  // namespace sldi
