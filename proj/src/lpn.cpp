#include "smoothlab/lpn.hpp"

#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "smoothlab/pmf.hpp"
#include "smoothlab/rng.hpp"
#include "smoothlab/util.hpp"

namespace smoothlab {

LpnInstance gen_lpn(int k, double delta, size_t N, uint64_t seed) {
    if (k < 1 || k > 63) throw std::invalid_argument("gen_lpn: k outside [1, 63]");
    if (delta < 0.0 || delta > 0.5)
        throw std::invalid_argument("gen_lpn: delta outside [0, 1/2]");
    if (N < 1) throw std::invalid_argument("gen_lpn: need at least one sample");

    auto g = make_engine(seed);
    LpnInstance inst;
    inst.k = k;
    inst.delta = delta;
    inst.secret = random_bits(g, k);
    inst.a.reserve(N);
    inst.b.reserve(N);
    for (size_t i = 0; i < N; ++i) {
        uint64_t a = random_bits(g, k);
        int noise = bernoulli(g, delta) ? 1 : 0;
        inst.a.push_back(a);
        inst.b.push_back(uint8_t((parity64(a & *inst.secret) ^ noise) & 1));
    }
    return inst;
}

GF2Vector solve_ml(const LpnInstance& inst) {
    if (inst.k < 1) throw std::invalid_argument("solve_ml: empty instance");
    if (inst.k > kMaxSolverDim)
        throw std::invalid_argument("solve_ml: k exceeds the exhaustive solver cap");
    if (inst.a.size() != inst.b.size() || inst.a.empty())
        throw std::invalid_argument("solve_ml: malformed sample list");

    // agreements(m') = (N + sum_i (-1)^{b_i} (-1)^{a_i . m'}) / 2, so the
    // best m' maximizes the Walsh transform of the signed histogram.
    size_t size = size_t{1} << inst.k;
    std::vector<int64_t> hist(size, 0);
    for (size_t i = 0; i < inst.a.size(); ++i) {
        if (inst.a[i] >= size) throw std::invalid_argument("solve_ml: sample wider than k");
        hist[inst.a[i]] += inst.b[i] ? -1 : 1;
    }
    fwht_butterfly(std::span<int64_t>(hist));
    uint64_t best = 0;
    int64_t best_corr = hist[0];
    for (uint64_t m = 1; m < size; ++m) {
        if (hist[m] > best_corr) {
            best_corr = hist[m];
            best = m;
        }
    }
    return GF2Vector::from_index(inst.k, best);
}

SolverStats estimate_alpha(int k, double delta, size_t N, size_t trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_alpha: need at least one trial");
    if (k > kMaxSolverDim)
        throw std::invalid_argument("estimate_alpha: k exceeds the solver cap");

    std::vector<uint8_t> won(trials, 0);
    parallel_for(trials, [&](size_t t) {
        LpnInstance inst = gen_lpn(k, delta, N, stream_seed(seed, t));
        won[t] = solve_ml(inst).to_index() == *inst.secret ? 1 : 0;
    });
    SolverStats stats;
    stats.trials = trials;
    for (uint8_t w : won) stats.successes += w;
    stats.alpha_hat = double(stats.successes) / double(trials);
    stats.ci_halfwidth = 1.96 * std::sqrt(stats.alpha_hat * (1.0 - stats.alpha_hat) / double(trials));
    return stats;
}

void save_lpn_csv(const LpnInstance& inst, std::ostream& out, uint64_t seed) {
    out << "# k=" << inst.k << " delta=" << (inst.delta ? *inst.delta : -1.0) << " seed=" << seed
        << "\n";
    out << "a_bits,b\n";
    for (size_t i = 0; i < inst.size(); ++i)
        out << GF2Vector::from_index(inst.k, inst.a[i]).to_string() << ',' << int(inst.b[i])
            << '\n';
}

LpnInstance load_lpn_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# k=", 0) != 0)
        throw std::runtime_error("load_lpn_csv: missing parameter comment line");
    LpnInstance inst;
    {
        std::istringstream hdr(line.substr(1));
        std::string tok;
        while (hdr >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq);
            std::string val = tok.substr(eq + 1);
            if (key == "k") inst.k = std::stoi(val);
            if (key == "delta") {
                double d = std::stod(val);
                if (d >= 0) inst.delta = d;
            }
        }
    }
    if (inst.k < 1) throw std::runtime_error("load_lpn_csv: bad k");
    if (!std::getline(in, line) || line != "a_bits,b")
        throw std::runtime_error("load_lpn_csv: expected 'a_bits,b' header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || int(comma) != inst.k)
            throw std::runtime_error("load_lpn_csv: malformed row");
        inst.a.push_back(GF2Vector::from_string(line.substr(0, comma)).to_index());
        int b = std::stoi(line.substr(comma + 1));
        if (b != 0 && b != 1) throw std::runtime_error("load_lpn_csv: b must be 0/1");
        inst.b.push_back(uint8_t(b));
    }
    if (inst.a.empty()) throw std::runtime_error("load_lpn_csv: no samples");
    return inst;
}

}  // namespace smoothlab
