#pragma once

/**
 * @file sweep.hpp
 * @brief Rate-versus-horizon sweeps.
 *
 * Runs the scheme at each horizon of a grid and reports, per horizon, the
 * across-trial medians of the achieved rate, the noise's empirical rate
 * target, the guaranteed floor, and the plug-in i.i.d. capacity of the
 * realized noise (log2 q minus the empirical symbol entropy; for a binary
 * alphabet this is 1 - h_b(fraction of ones)). The capacity column is the
 * comparison reference when the noise really is i.i.d.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moducom/core/noise.hpp"
#include "moducom/scheme/config.hpp"

namespace moducom::harness {

/// Parameters of one sweep; hashed into the output like a plan.
struct SweepSpec {
    core::Alphabet alphabet{2};
    core::NoiseSpec noise;
    std::vector<std::size_t> n_grid;  ///< strictly increasing horizons
    unsigned block_bits = 10;         ///< K
    double epsilon = 0.05;
    std::uint64_t trials = 1;         ///< sessions per horizon
    std::uint64_t seed = 0;

    /// @throws ValidationError on an empty or non-increasing grid, bad
    ///         trial count, or parameters no horizon admits.
    void validate() const;

    std::string canonical() const;
    std::uint64_t hash() const;
};

/// One sweep table row; each statistic is the median over the trials at n.
struct SweepRow {
    std::size_t n = 0;
    double actual_rate = 0.0;    ///< median R_act
    double empirical_rate = 0.0; ///< median r_emp
    double rate_floor = 0.0;     ///< median floor
    double iid_capacity = 0.0;   ///< median plug-in capacity of realized noise
};

/// Run the sweep; rows follow the grid order.
std::vector<SweepRow> sweep_rates(const SweepSpec& spec);

} // namespace moducom::harness
