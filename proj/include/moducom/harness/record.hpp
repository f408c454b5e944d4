#pragma once

/**
 * @file record.hpp
 * @brief Result rows and aggregates of an executed plan.
 *
 * One row per trial, in (entry, trial) order regardless of execution
 * schedule. Aggregates are a pure function of the rows — anything the
 * summary claims can be recomputed from the raw table, including the
 * floor-violation count, which a correct implementation keeps at zero.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

namespace moducom::harness {

/// Summary of one session, in output-table order.
struct TrialRow {
    std::size_t entry = 0;            ///< plan entry index
    std::uint64_t trial = 0;          ///< trial index within the entry
    std::uint64_t seed = 0;           ///< derived seed the session ran under
    std::uint64_t decoded_blocks = 0; ///< B
    std::uint64_t decoded_bits = 0;   ///< B * K
    double actual_rate = 0.0;         ///< R_act = B * K / n
    double empirical_rate = 0.0;      ///< r_emp of the realized noise
    double rate_floor = 0.0;          ///< guaranteed floor for error-free runs
    bool error = false;               ///< some decoded block was wrong
};

/// Statistics recomputable from rows alone.
struct Aggregates {
    double mean_actual_rate = 0.0;
    double median_actual_rate = 0.0;
    double error_rate = 0.0;            ///< fraction of rows with error
    std::uint64_t floor_violations = 0; ///< error-free rows with R_act < floor
};

/// Recompute aggregates from raw rows (the only way they are ever produced).
/// @throws ValidationError on an empty row set.
Aggregates aggregate_rows(const std::vector<TrialRow>& rows);

/// Everything a finished plan produced.
struct RunRecord {
    std::uint64_t plan_hash = 0;
    std::vector<TrialRow> rows;
    Aggregates aggregates;
};

/// Median of a value vector (average of the middle pair for even sizes).
/// @throws ValidationError on empty input.
double median(std::vector<double> values);

} // namespace moducom::harness
