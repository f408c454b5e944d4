#include "moducom/core/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "moducom/core/modz_io.hpp"
#include "moducom/core/rng.hpp"

namespace moducom::core {

namespace {

constexpr double kDistributionTolerance = 1e-12;

void check_distribution(const std::vector<double>& dist, unsigned q, const std::string& what) {
    require(dist.size() == q, what + ": distribution must have exactly q entries");
    double sum = 0.0;
    for (double p : dist) {
        require(p >= 0.0 && p <= 1.0, what + ": probabilities must lie in [0,1]");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= kDistributionTolerance, what + ": distribution must sum to 1");
}

/// Inverse-CDF draw from a distribution using one uniform variate.
Symbol sample_distribution(const std::vector<double>& dist, double u) {
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < dist.size(); ++s) {
        acc += dist[s];
        if (u < acc) return static_cast<Symbol>(s);
    }
    return static_cast<Symbol>(dist.size() - 1);
}

std::string format_double(double v) {
    std::ostringstream oss;
    oss.precision(17);
    oss << v;
    return oss.str();
}

/// Split "a=1,b=2" style key/value lists; bare tokens get an empty key.
std::vector<std::pair<std::string, std::string>> split_kv(const std::string& body) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            out.emplace_back("", tok);
        else
            out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        require(pos == text.size(), what + ": trailing characters in number '" + text + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ValidationError(what + ": invalid number '" + text + "'");
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        require(pos == text.size(), what + ": trailing characters in integer '" + text + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ValidationError(what + ": invalid integer '" + text + "'");
    }
}

} // namespace

void NoiseSpec::validate(const Alphabet& alphabet) const {
    const unsigned q = alphabet.q();
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FixedFile>) {
                require(!v.path.empty(), "noise file path must not be empty");
            } else if constexpr (std::is_same_v<T, AllConstant>) {
                require(v.symbol < q, "constant noise symbol outside alphabet");
            } else if constexpr (std::is_same_v<T, BernoulliLike>) {
                check_distribution(v.distribution, q, "i.i.d. noise");
            } else if constexpr (std::is_same_v<T, Periodic>) {
                require(!v.pattern.empty(), "periodic noise pattern must not be empty");
                for (Symbol s : v.pattern) require(s < q, "periodic pattern symbol outside alphabet");
            } else if constexpr (std::is_same_v<T, MarkovChain>) {
                require(v.rows.size() == q, "markov noise needs one transition row per symbol");
                for (const auto& row : v.rows) check_distribution(row, q, "markov noise row");
            } else if constexpr (std::is_same_v<T, TestChannel>) {
                require(v.d >= 1 && v.d < v.k, "test channel requires 1 <= d < k");
            }
        },
        variant);
}

std::vector<double> spread_nonzero_distribution(const Alphabet& alphabet, double p) {
    require(p >= 0.0 && p <= 1.0, "noise probability must lie in [0,1]");
    const unsigned q = alphabet.q();
    std::vector<double> dist(q, p / static_cast<double>(q - 1));
    dist[0] = 1.0 - p;
    return dist;
}

namespace {

NoiseSpec parse_spec_text(const std::string& text, const Alphabet& alphabet) {
    auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);

    if (text == "zero") return NoiseSpec{AllConstant{0}};
    if (head == "const") {
        AllConstant v;
        for (const auto& [k, val] : split_kv(body)) {
            if (k == "s") v.symbol = static_cast<Symbol>(parse_u64(val, "const noise"));
            else throw ValidationError("const noise: unknown key '" + k + "'");
        }
        return NoiseSpec{v};
    }
    if (head == "bern") {
        double p = -1.0;
        std::uint64_t seed = 0;
        for (const auto& [k, val] : split_kv(body)) {
            if (k == "p") p = parse_double(val, "bern noise");
            else if (k == "seed") seed = parse_u64(val, "bern noise");
            else throw ValidationError("bern noise: unknown key '" + k + "'");
        }
        require(p >= 0.0, "bern noise: missing p=");
        BernoulliLike v;
        v.distribution = spread_nonzero_distribution(alphabet, p);
        v.seed = seed;
        return NoiseSpec{v};
    }
    if (head == "dist") {
        BernoulliLike v;
        for (const auto& [k, val] : split_kv(body)) {
            if (k.empty()) v.distribution.push_back(parse_double(val, "dist noise"));
            else if (k == "seed") v.seed = parse_u64(val, "dist noise");
            else throw ValidationError("dist noise: unknown key '" + k + "'");
        }
        require(!v.distribution.empty(), "dist noise: no probabilities given");
        return NoiseSpec{v};
    }
    if (head == "periodic") {
        Periodic v;
        for (const auto& [k, val] : split_kv(body)) {
            require(k.empty(), "periodic noise: unexpected key '" + k + "'");
            v.pattern.push_back(static_cast<Symbol>(parse_u64(val, "periodic noise")));
        }
        return NoiseSpec{v};
    }
    if (head == "markov") {
        MarkovChain v;
        std::string rows_text = body;
        std::uint64_t seed = 0;
        // A trailing ",seed=N" applies to the whole spec, not to a row.
        auto seed_pos = rows_text.rfind(",seed=");
        if (seed_pos != std::string::npos) {
            seed = parse_u64(rows_text.substr(seed_pos + 6), "markov noise");
            rows_text = rows_text.substr(0, seed_pos);
        }
        std::stringstream ss(rows_text);
        std::string row_text;
        while (std::getline(ss, row_text, ';')) {
            std::vector<double> row;
            std::stringstream rs(row_text);
            std::string cell;
            while (rs >> cell) row.push_back(parse_double(cell, "markov noise"));
            require(!row.empty(), "markov noise: empty transition row");
            v.rows.push_back(std::move(row));
        }
        v.seed = seed;
        return NoiseSpec{v};
    }
    if (head == "testchannel") {
        TestChannel v;
        for (const auto& [k, val] : split_kv(body)) {
            if (k == "k") v.k = static_cast<unsigned>(parse_u64(val, "test channel"));
            else if (k == "d") v.d = static_cast<unsigned>(parse_u64(val, "test channel"));
            else if (k == "seed") v.seed = parse_u64(val, "test channel");
            else throw ValidationError("test channel: unknown key '" + k + "'");
        }
        return NoiseSpec{v};
    }
    return NoiseSpec{FixedFile{text}};
}

} // namespace

NoiseSpec NoiseSpec::parse(const std::string& text, const Alphabet& alphabet) {
    NoiseSpec spec = parse_spec_text(text, alphabet);
    spec.validate(alphabet);
    return spec;
}

std::string NoiseSpec::canonical() const {
    std::ostringstream oss;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FixedFile>) {
                oss << "file:" << v.path;
            } else if constexpr (std::is_same_v<T, AllConstant>) {
                oss << "const:s=" << static_cast<unsigned>(v.symbol);
            } else if constexpr (std::is_same_v<T, BernoulliLike>) {
                oss << "dist:";
                for (std::size_t i = 0; i < v.distribution.size(); ++i)
                    oss << (i ? "," : "") << format_double(v.distribution[i]);
                oss << ",seed=" << v.seed;
            } else if constexpr (std::is_same_v<T, Periodic>) {
                oss << "periodic:";
                for (std::size_t i = 0; i < v.pattern.size(); ++i)
                    oss << (i ? "," : "") << static_cast<unsigned>(v.pattern[i]);
            } else if constexpr (std::is_same_v<T, MarkovChain>) {
                oss << "markov:";
                for (std::size_t r = 0; r < v.rows.size(); ++r) {
                    if (r) oss << ";";
                    for (std::size_t c = 0; c < v.rows[r].size(); ++c)
                        oss << (c ? " " : "") << format_double(v.rows[r][c]);
                }
                oss << ",seed=" << v.seed;
            } else if constexpr (std::is_same_v<T, TestChannel>) {
                oss << "testchannel:k=" << v.k << ",d=" << v.d << ",seed=" << v.seed;
            }
        },
        variant);
    return oss.str();
}

namespace {

SymbolSeq generate_testchannel(const TestChannel& tc, const Alphabet& alphabet, std::size_t n,
                               std::uint64_t key) {
    const unsigned q = alphabet.q();
    const unsigned prefix_len = tc.k - tc.d;
    std::vector<Symbol> out;
    out.reserve(n);
    std::map<std::vector<Symbol>, std::vector<Symbol>> registry;
    std::vector<Symbol> prefix(prefix_len), suffix(tc.d);
    for (std::uint64_t block = 0; out.size() < n; ++block) {
        for (unsigned t = 0; t < prefix_len; ++t)
            prefix[t] = static_cast<Symbol>(prf64(key, block, 0, t) % q);
        auto it = registry.find(prefix);
        if (it != registry.end()) {
            suffix = it->second;
        } else {
            for (unsigned t = 0; t < tc.d; ++t)
                suffix[t] = static_cast<Symbol>(prf64(key, block, 1, t) % q);
            registry.emplace(prefix, suffix);
        }
        for (unsigned t = 0; t < tc.k && out.size() < n; ++t)
            out.push_back(t < prefix_len ? prefix[t] : suffix[t - prefix_len]);
    }
    return SymbolSeq(alphabet, std::move(out));
}

} // namespace

SymbolSeq noise_generate(const NoiseSpec& spec, const Alphabet& alphabet, std::size_t n,
                         std::uint64_t seed) {
    require(n >= 1, "noise length must be at least 1");
    spec.validate(alphabet);
    const unsigned q = alphabet.q();

    return std::visit(
        [&](const auto& v) -> SymbolSeq {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FixedFile>) {
                SymbolSeq file_seq = read_modz(v.path);
                require(file_seq.alphabet() == alphabet,
                        "noise file alphabet does not match the requested alphabet");
                require(file_seq.size() >= n, "noise file shorter than requested length");
                return file_seq.prefix(n);
            } else if constexpr (std::is_same_v<T, AllConstant>) {
                return SymbolSeq(alphabet, std::vector<Symbol>(n, v.symbol));
            } else if constexpr (std::is_same_v<T, BernoulliLike>) {
                const std::uint64_t key = prf64(seed ^ domain::noise, v.seed);
                std::vector<Symbol> out(n);
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = sample_distribution(v.distribution, to_unit_double(prf64(key, i)));
                return SymbolSeq(alphabet, std::move(out));
            } else if constexpr (std::is_same_v<T, Periodic>) {
                std::vector<Symbol> out(n);
                for (std::size_t i = 0; i < n; ++i) out[i] = v.pattern[i % v.pattern.size()];
                return SymbolSeq(alphabet, std::move(out));
            } else if constexpr (std::is_same_v<T, MarkovChain>) {
                const std::uint64_t key = prf64(seed ^ domain::noise, v.seed);
                std::vector<Symbol> out(n);
                Symbol state = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    state = sample_distribution(v.rows[state], to_unit_double(prf64(key, i)));
                    out[i] = state;
                }
                return SymbolSeq(alphabet, std::move(out));
            } else {
                static_assert(std::is_same_v<T, TestChannel>);
                const std::uint64_t key = prf64(seed ^ domain::noise, v.seed);
                return generate_testchannel(v, alphabet, n, key);
            }
        },
        spec.variant);
}

} // namespace moducom::core
