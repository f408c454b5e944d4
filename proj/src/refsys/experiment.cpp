#include "moducom/refsys/experiment.hpp"

#include "moducom/bounds/bounds.hpp"
#include "moducom/core/noise.hpp"

namespace moducom::refsys {

RedundancyResult redundancy_experiment(unsigned k, unsigned d, std::size_t n,
                                       const scheme::SchemeConfig& config) {
    core::NoiseSpec spec;
    spec.variant = core::TestChannel{k, d, 0};

    scheme::SchemeConfig run = config;
    run.n = n;
    run.validate();

    const core::SymbolSeq z = core::noise_generate(spec, run.alphabet, n, run.seed);
    auto messages = scheme::MessageSource::random(run.seed);
    const scheme::SessionLog log = scheme::run_session(run, z, messages);

    RedundancyResult result;
    result.reference_rate = static_cast<double>(d) / k * run.alphabet.log2q();
    result.universal_rate =
        bounds::effective_rate(log.actual_rate, run.epsilon, static_cast<unsigned>(n));
    result.gap = result.reference_rate - result.universal_rate;
    result.session_error = log.error;
    result.log = log;
    return result;
}

} // namespace moducom::refsys
