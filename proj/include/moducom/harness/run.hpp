#pragma once

/**
 * @file run.hpp
 * @brief Plan execution: sessions, aggregation, output.
 *
 * Trials run concurrently up to a job limit; every trial's seed is derived
 * from the plan seed and its (entry, trial) position, so the result table is
 * identical whatever the schedule. Output, when the plan names a path, is
 * written before the floor check so that a violation leaves the evidence on
 * disk.
 */

#include "moducom/harness/plan.hpp"
#include "moducom/harness/record.hpp"

namespace moducom::harness {

/**
 * Execute every trial of the plan, aggregate, and (for a nonempty out_path)
 * write the table atomically in the plan's format.
 *
 * @throws ValidationError on an invalid plan or unwritable output.
 * @throws InvariantError if any error-free trial lands below its rate floor
 *         (the written output file is complete when this happens).
 */
RunRecord run_plan(const ExperimentPlan& plan, unsigned jobs = 1);

} // namespace moducom::harness
