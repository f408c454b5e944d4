#include "moducom/harness/sweep.hpp"

#include <cmath>

#include "moducom/core/errors.hpp"
#include "moducom/core/rng.hpp"
#include "moducom/harness/hash.hpp"
#include "moducom/harness/record.hpp"
#include "moducom/harness/serialize.hpp"
#include "moducom/scheme/session.hpp"

namespace moducom::harness {

namespace {

/// log2 q minus the empirical symbol entropy of z: the capacity a memoryless
/// channel with z's letter frequencies would have.
double plugin_iid_capacity(const core::SymbolSeq& z) {
    std::vector<std::uint64_t> counts(z.alphabet().q(), 0);
    for (std::size_t i = 0; i < z.size(); ++i) ++counts[z[i]];
    double entropy = 0.0;
    for (const std::uint64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(z.size());
        entropy -= p * std::log2(p);
    }
    return z.alphabet().log2q() - entropy;
}

} // namespace

void SweepSpec::validate() const {
    require(!n_grid.empty(), "sweep grid must be nonempty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        require(n_grid[i] >= 1, "sweep horizons must be at least 1");
        if (i > 0)
            require(n_grid[i] > n_grid[i - 1], "sweep grid must be strictly increasing");
    }
    require(trials >= 1, "sweep needs at least one trial per horizon");
    for (const std::size_t n : n_grid) {
        scheme::SchemeConfig config;
        config.n = n;
        config.alphabet = alphabet;
        config.block_bits = block_bits;
        config.epsilon = epsilon;
        config.validate();
        noise.validate(alphabet);
    }
}

std::string SweepSpec::canonical() const {
    std::string text = "sweep;seed=" + std::to_string(seed);
    text += ";q=" + std::to_string(alphabet.q());
    text += ";noise=" + noise.canonical();
    text += ";K=" + std::to_string(block_bits);
    text += ";eps=" + format_double(epsilon);
    text += ";trials=" + std::to_string(trials);
    text += ";grid=";
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (i > 0) text += ":";
        text += std::to_string(n_grid[i]);
    }
    return text;
}

std::uint64_t SweepSpec::hash() const { return fnv1a64(canonical()); }

std::vector<SweepRow> sweep_rates(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.n_grid.size());
    for (std::size_t g = 0; g < spec.n_grid.size(); ++g) {
        const std::size_t n = spec.n_grid[g];
        std::vector<double> actual, empirical, floors, capacities;
        for (std::uint64_t t = 0; t < spec.trials; ++t) {
            scheme::SchemeConfig config;
            config.n = n;
            config.alphabet = spec.alphabet;
            config.block_bits = spec.block_bits;
            config.epsilon = spec.epsilon;
            config.seed = core::prf64(spec.seed ^ core::domain::trial, g, t);

            const core::SymbolSeq z =
                core::noise_generate(spec.noise, config.alphabet, n, config.seed);
            auto messages = scheme::MessageSource::random(config.seed);
            const scheme::SessionLog log = scheme::run_session(config, z, messages);

            actual.push_back(log.actual_rate);
            empirical.push_back(log.empirical_rate_value);
            floors.push_back(log.rate_floor_value);
            capacities.push_back(plugin_iid_capacity(z));
        }
        SweepRow row;
        row.n = n;
        row.actual_rate = median(std::move(actual));
        row.empirical_rate = median(std::move(empirical));
        row.rate_floor = median(std::move(floors));
        row.iid_capacity = median(std::move(capacities));
        rows.push_back(row);
    }
    return rows;
}

} // namespace moducom::harness
