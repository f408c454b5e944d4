#include "moducom/harness/record.hpp"

#include <algorithm>

#include "moducom/core/errors.hpp"

namespace moducom::harness {

double median(std::vector<double> values) {
    require(!values.empty(), "median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

Aggregates aggregate_rows(const std::vector<TrialRow>& rows) {
    require(!rows.empty(), "aggregating an empty row set");
    Aggregates agg;
    std::vector<double> rates;
    rates.reserve(rows.size());
    std::uint64_t errors = 0;
    for (const TrialRow& row : rows) {
        rates.push_back(row.actual_rate);
        errors += row.error;
        agg.floor_violations += !row.error && row.actual_rate < row.rate_floor;
    }
    double sum = 0.0;
    for (const double r : rates) sum += r;
    agg.mean_actual_rate = sum / static_cast<double>(rates.size());
    agg.median_actual_rate = median(std::move(rates));
    agg.error_rate = static_cast<double>(errors) / static_cast<double>(rows.size());
    return agg;
}

} // namespace moducom::harness
