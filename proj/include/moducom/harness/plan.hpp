#pragma once

/**
 * @file plan.hpp
 * @brief Serializable experiment plans.
 *
 * A plan is a list of (scheme configuration, noise model, trial count)
 * entries plus an output destination. Plans round-trip through JSON, and
 * their canonical text is hashed into every output file, so a result table
 * is always attributable to the exact plan that produced it and rerunning a
 * plan file reproduces the output byte for byte.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "moducom/core/noise.hpp"
#include "moducom/scheme/config.hpp"

namespace moducom::harness {

/// Output table format; CSV is the normative one, JSON mirrors it.
enum class OutputFormat { csv, json };

std::string format_to_string(OutputFormat format);
OutputFormat format_from_string(const std::string& text);

std::string metric_to_string(scheme::MetricKind metric);
scheme::MetricKind metric_from_string(const std::string& text);

/// One experiment arm: a fixed configuration and noise model, repeated for
/// `trials` independently seeded sessions.
struct PlanEntry {
    scheme::SchemeConfig config;
    core::NoiseSpec noise;
    std::uint64_t trials = 1;
};

/// A complete, replayable experiment description. The runner derives every
/// trial's seed from `seed` and the (entry, trial) position, so entries are
/// independently seeded no matter how the work is scheduled.
struct ExperimentPlan {
    std::vector<PlanEntry> entries;
    std::string out_path;                     ///< empty: caller handles output
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 0;

    /// @throws ValidationError on an empty plan or any invalid entry.
    void validate() const;

    /// Canonical text of the experiment content (entries and seed; the
    /// output destination is attribution-irrelevant and excluded).
    std::string canonical() const;

    /// FNV-1a hash of canonical(); embedded in every output file.
    std::uint64_t hash() const;
};

/// Serialize a plan as pretty JSON (the plan-file format).
std::string plan_to_json(const ExperimentPlan& plan);

/**
 * Parse a plan file. Top level: "entries" (required), "seed", "out",
 * "format". Per entry: "n", "q", "K", "eps", "noise", "trials" (required),
 * "metric", "kt_k_max", "work_budget" (optional). Unknown keys are rejected
 * to surface typos.
 * @throws ValidationError on malformed JSON or invalid values.
 */
ExperimentPlan plan_from_json(const std::string& text);

} // namespace moducom::harness
