#include "moducom/harness/run.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "moducom/core/errors.hpp"
#include "moducom/core/rng.hpp"
#include "moducom/harness/serialize.hpp"
#include "moducom/scheme/session.hpp"

namespace moducom::harness {

namespace {

struct Task {
    std::size_t entry = 0;
    std::uint64_t trial = 0;
};

TrialRow run_task(const ExperimentPlan& plan, const Task& task) {
    const PlanEntry& entry = plan.entries[task.entry];
    scheme::SchemeConfig config = entry.config;
    config.seed = core::prf64(plan.seed ^ core::domain::trial, task.entry, task.trial);

    const core::SymbolSeq z =
        core::noise_generate(entry.noise, config.alphabet, config.n, config.seed);
    auto messages = scheme::MessageSource::random(config.seed);
    const scheme::SessionLog log = scheme::run_session(config, z, messages);

    TrialRow row;
    row.entry = task.entry;
    row.trial = task.trial;
    row.seed = config.seed;
    row.decoded_blocks = log.decoded_blocks;
    row.decoded_bits = log.decoded_bits;
    row.actual_rate = log.actual_rate;
    row.empirical_rate = log.empirical_rate_value;
    row.rate_floor = log.rate_floor_value;
    row.error = log.error;
    return row;
}

} // namespace

RunRecord run_plan(const ExperimentPlan& plan, unsigned jobs) {
    plan.validate();
    require(jobs >= 1, "job count must be at least 1");

    std::vector<Task> tasks;
    for (std::size_t e = 0; e < plan.entries.size(); ++e)
        for (std::uint64_t t = 0; t < plan.entries[e].trials; ++t) tasks.push_back({e, t});

    RunRecord record;
    record.plan_hash = plan.hash();
    record.rows.resize(tasks.size());

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) record.rows[i] = run_task(plan, tasks[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    record.rows[i] = run_task(plan, tasks[i]);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    record.aggregates = aggregate_rows(record.rows);

    if (!plan.out_path.empty()) {
        const bool entry_column = plan.entries.size() > 1;
        const std::string text = plan.format == OutputFormat::csv
                                     ? record_to_csv(record, entry_column)
                                     : record_to_json(record, entry_column);
        write_text_atomic(plan.out_path, text);
    }

    if (record.aggregates.floor_violations > 0)
        throw InvariantError("an error-free session landed below its guaranteed rate floor (" +
                             std::to_string(record.aggregates.floor_violations) + " of " +
                             std::to_string(record.rows.size()) + " trials)");
    return record;
}

} // namespace moducom::harness
