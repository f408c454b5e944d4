#pragma once

/**
 * @file serialize.hpp
 * @brief Deterministic CSV/JSON rendering and atomic file output.
 *
 * All numbers render through shortest round-trip formatting, so equal values
 * produce equal bytes on every run and platform — the basis of the
 * byte-identical-replay guarantee. Files are written via a temp file and
 * rename, so readers never observe a half-written table.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "moducom/harness/record.hpp"

namespace moducom::harness {

struct SweepRow; // sweep.hpp

/// Shortest round-trip decimal rendering; non-finite values render as
/// "inf", "-inf", "nan".
std::string format_double(double value);

/**
 * Render a run record as CSV: a `# plan=<hash>` attribution line, a header,
 * one row per trial. Single-entry plans omit the redundant entry column and
 * use exactly the columns trial,seed,B,bits,R_act,r_emp,rate_floor,error.
 */
std::string record_to_csv(const RunRecord& record, bool include_entry_column);

/// JSON mirror of record_to_csv (same rows and aggregates, same key order).
std::string record_to_json(const RunRecord& record, bool include_entry_column);

/// CSV of a rate sweep: attribution line, then n,R_act,r_emp,rate_floor,iid_capacity.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, std::uint64_t hash);

/// JSON mirror of sweep_to_csv.
std::string sweep_to_json(const std::vector<SweepRow>& rows, std::uint64_t hash);

/// Write text to a file atomically (temp file, then rename).
/// @throws ValidationError when the destination is not writable.
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace moducom::harness
