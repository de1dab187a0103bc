#include "ladder/spin_basis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ladder {

TwoSz two_sz_from(double sz) {
    const double twice = 2.0 * sz;
    if (!std::isfinite(twice) || std::abs(twice - std::round(twice)) > 1e-12)
        throw std::invalid_argument("S^z must be a multiple of 1/2, got " + std::to_string(sz));
    return TwoSz{static_cast<int>(std::lround(twice))};
}

SectorBasis::SectorBasis(int num_rungs, BasisKind kind, std::optional<TwoSz> two_sz, std::vector<SpinConfig> states)
    : num_rungs_(num_rungs), kind_(kind), two_sz_(two_sz), states_(std::move(states)) {
    position_.assign(std::size_t{1} << num_sites(), -1);
    for (std::size_t i = 0; i < states_.size(); ++i)
        position_[states_[i]] = static_cast<std::int32_t>(i);
}

std::optional<std::size_t> SectorBasis::position(SpinConfig config) const {
    if (config >= position_.size() || position_[config] < 0)
        return std::nullopt;
    return static_cast<std::size_t>(position_[config]);
}

namespace {

void check_rungs(int num_rungs) {
    if (num_rungs < 2)
        throw std::invalid_argument("at least 2 rungs are required, got " + std::to_string(num_rungs));
    if (num_rungs > kMaxRungs)
        throw std::invalid_argument("at most " + std::to_string(kMaxRungs) + " rungs are supported");
}

// Up-spin count for `sites` spins with 2*S^z = two_sz.
int up_count(int sites, TwoSz two_sz) {
    if (std::abs(two_sz.value) > sites || (sites + two_sz.value) % 2 != 0)
        throw std::invalid_argument("S^z = " + std::to_string(two_sz.sz()) + " is not reachable with " +
                                    std::to_string(sites) + " spins");
    return (sites + two_sz.value) / 2;
}

std::vector<SpinConfig> with_popcount(int sites, int ups) {
    std::vector<SpinConfig> states;
    const SpinConfig end = SpinConfig{1} << sites;
    for (SpinConfig c = 0; c < end; ++c)
        if (std::popcount(c) == ups)
            states.push_back(c);
    return states;
}

}  // namespace

SectorBasis enumerate_sector(int num_rungs, TwoSz two_sz) {
    check_rungs(num_rungs);
    const int sites = 2 * num_rungs;
    return SectorBasis(num_rungs, BasisKind::Ladder, two_sz, with_popcount(sites, up_count(sites, two_sz)));
}

SectorBasis enumerate_leg(int num_rungs) {
    check_rungs(num_rungs);
    std::vector<SpinConfig> states(std::size_t{1} << num_rungs);
    for (std::size_t i = 0; i < states.size(); ++i)
        states[i] = static_cast<SpinConfig>(i);
    return SectorBasis(num_rungs, BasisKind::Leg, std::nullopt, std::move(states));
}

SectorBasis enumerate_leg_sector(int num_rungs, TwoSz two_sz) {
    check_rungs(num_rungs);
    return SectorBasis(num_rungs, BasisKind::Leg, two_sz, with_popcount(num_rungs, up_count(num_rungs, two_sz)));
}

std::vector<TwoSz> ladder_sectors(int num_rungs) {
    check_rungs(num_rungs);
    std::vector<TwoSz> out;
    for (int v = -2 * num_rungs; v <= 2 * num_rungs; v += 2)
        out.push_back(TwoSz{v});
    return out;
}

std::optional<BondResult> apply_bond(SpinConfig config, BondOp op, int bit1, int bit2) {
    if (bit1 == bit2)
        throw std::invalid_argument("bond needs two distinct sites");
    const bool up1 = is_up(config, bit1);
    const bool up2 = is_up(config, bit2);
    const SpinConfig flipped = config ^ ((SpinConfig{1} << bit1) | (SpinConfig{1} << bit2));
    switch (op) {
    case BondOp::PlusMinus:
        if (!up1 && up2)
            return BondResult{flipped, 1.0};
        return std::nullopt;
    case BondOp::MinusPlus:
        if (up1 && !up2)
            return BondResult{flipped, 1.0};
        return std::nullopt;
    case BondOp::ZZ:
        return BondResult{config, up1 == up2 ? 0.25 : -0.25};
    }
    return std::nullopt;
}

std::optional<BondResult> apply_bond(SpinConfig config, BondOp op, SiteIndex site1, SiteIndex site2, int num_rungs) {
    return apply_bond(config, op, bit_position(site1, num_rungs), bit_position(site2, num_rungs));
}

}  // namespace ladder
