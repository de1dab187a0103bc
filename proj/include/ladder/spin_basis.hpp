#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ladder {

using SpinConfig = std::uint32_t;

enum class Leg { A, B };

// Site (rung j, leg). Leg-A sites occupy the low N bits, leg-B the high N bits,
// so a full-ladder index factorizes as idx = b * 2^N + a.
struct SiteIndex {
    int rung = 0;
    Leg leg = Leg::A;

    friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

constexpr int bit_position(SiteIndex site, int num_rungs) {
    return site.leg == Leg::A ? site.rung : num_rungs + site.rung;
}

constexpr SiteIndex site_from_bit(int bit, int num_rungs) {
    return bit < num_rungs ? SiteIndex{bit, Leg::A} : SiteIndex{bit - num_rungs, Leg::B};
}

constexpr bool is_up(SpinConfig config, int bit) { return (config >> bit) & 1u; }

// Spin quantum numbers are carried as twice their value so half-integers stay exact.
struct TwoSz {
    int value = 0;
    double sz() const { return 0.5 * value; }
    friend bool operator==(const TwoSz&, const TwoSz&) = default;
};

// Throws std::invalid_argument unless sz is a multiple of 1/2.
TwoSz two_sz_from(double sz);

enum class BasisKind { Ladder, Leg };

/// Fixed-S^z basis of spin configurations, ascending in bits.
///
/// Ladder bases live on 2N sites; leg bases on the N sites of one chain. A leg
/// basis built by `enumerate_leg` spans the whole 2^N space with
/// index == bits, which is the layout every leg-space operator uses.
class SectorBasis {
public:
    int num_rungs() const { return num_rungs_; }
    int num_sites() const { return kind_ == BasisKind::Ladder ? 2 * num_rungs_ : num_rungs_; }
    BasisKind kind() const { return kind_; }
    std::optional<TwoSz> two_sz() const { return two_sz_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<SpinConfig>& states() const { return states_; }
    SpinConfig state(std::size_t i) const { return states_[i]; }

    // Index of a configuration, or nullopt when it is outside the sector.
    std::optional<std::size_t> position(SpinConfig config) const;

    friend SectorBasis enumerate_sector(int num_rungs, TwoSz two_sz);
    friend SectorBasis enumerate_leg(int num_rungs);
    friend SectorBasis enumerate_leg_sector(int num_rungs, TwoSz two_sz);

private:
    SectorBasis(int num_rungs, BasisKind kind, std::optional<TwoSz> two_sz, std::vector<SpinConfig> states);

    int num_rungs_;
    BasisKind kind_;
    std::optional<TwoSz> two_sz_;
    std::vector<SpinConfig> states_;
    std::vector<std::int32_t> position_;  // dense lookup over all 2^num_sites configs, -1 outside
};

constexpr int kMaxRungs = 8;

// Ladder sector on 2N sites with total S^z = two_sz/2. Throws std::invalid_argument
// for N < 2 or an S^z value not reachable with 2N spins.
SectorBasis enumerate_sector(int num_rungs, TwoSz two_sz);

// All 2^N configurations of a single leg (no S^z constraint).
SectorBasis enumerate_leg(int num_rungs);

// Single-leg sector with S^z = two_sz/2.
SectorBasis enumerate_leg_sector(int num_rungs, TwoSz two_sz);

// Every admissible 2*S^z value for a ladder of N rungs, ascending.
std::vector<TwoSz> ladder_sectors(int num_rungs);

enum class BondOp { PlusMinus, MinusPlus, ZZ };

struct BondResult {
    SpinConfig config;
    double amplitude;
};

// S+_1 S-_2, S-_1 S+_2 or Sz_1 Sz_2 acting on one configuration. Annihilation
// is reported as nullopt.
std::optional<BondResult> apply_bond(SpinConfig config, BondOp op, int bit1, int bit2);
std::optional<BondResult> apply_bond(SpinConfig config, BondOp op, SiteIndex site1, SiteIndex site2, int num_rungs);

}  // namespace ladder
