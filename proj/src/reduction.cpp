#include "smoothlab/reduction.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "smoothlab/rng.hpp"
#include "smoothlab/smoothing.hpp"
#include "smoothlab/util.hpp"

namespace smoothlab {

namespace {

GF2Vector gen_transpose_mul(const LinearCode& c, const GF2Vector& m) {
    // G^T m = XOR of the generator rows selected by m.
    GF2Vector out(c.n());
    for (int r = 0; r < c.k(); ++r)
        if (m.get(r)) out ^= c.gen().row(r);
    return out;
}

GF2Vector random_weight_w(int n, int w, std::mt19937_64& g) {
    // Partial Fisher-Yates over coordinate labels.
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
    GF2Vector e(n);
    for (int i = 0; i < w; ++i) {
        int j = i + int(uniform_below(g, uint64_t(n - i)));
        std::swap(idx[size_t(i)], idx[size_t(j)]);
        e.set(idx[size_t(i)], true);
    }
    return e;
}

}  // namespace

WdpInstance gen_wdp(const LinearCode& c, int w, uint64_t seed) {
    if (w < 0 || w > c.n()) throw std::invalid_argument("gen_wdp: w outside [0, n]");
    auto g = make_engine(seed);
    GF2Vector m = GF2Vector::random(c.k(), g);
    GF2Vector e = w > 0 ? random_weight_w(c.n(), w, g) : GF2Vector(c.n());
    WdpInstance inst{c, gen_transpose_mul(c, m) ^ e, w, m, e};
    return inst;
}

ReduceOutcome reduce_once(const WdpInstance& inst, const PmfSampler& sampler, size_t N,
                          uint64_t seed) {
    const LinearCode& c = inst.code;
    if (sampler.n() != c.n()) throw std::invalid_argument("reduce_once: sampler dimension");
    if (N < 1) throw std::invalid_argument("reduce_once: need at least one sample");

    auto g = make_engine(seed);
    GF2Vector m_prime = GF2Vector::random(c.k(), g);
    uint64_t shifted = (inst.y ^ gen_transpose_mul(c, m_prime)).to_index();

    std::vector<uint64_t> col = column_images(c.gen());
    LpnInstance lpn;
    lpn.k = c.k();
    lpn.a.reserve(N);
    lpn.b.reserve(N);
    for (size_t i = 0; i < N; ++i) {
        uint64_t z = sampler.draw(g);
        lpn.a.push_back(apply_column_images(col, z));
        lpn.b.push_back(uint8_t(parity64(z & shifted)));
    }

    GF2Vector m_hat = solve_ml(lpn) ^ m_prime;
    GF2Vector residual = inst.y ^ gen_transpose_mul(c, m_hat);
    return ReduceOutcome{m_hat, residual.weight() == inst.w};
}

ReduceOutcome reduce_once(const WdpInstance& inst, const Pmf& p, size_t N, uint64_t seed) {
    return reduce_once(inst, PmfSampler(p), N, seed);
}

std::string ReductionReport::csv_row() const {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d",
                  n, k, w, N, gamma, delta, eps_exact, bias, alpha_hat, guarantee, success_rate,
                  meaningful_syndrome ? 1 : 0, meaningful_bias ? 1 : 0);
    return buf;
}

ReductionReport run_experiment(const LinearCode& c, int w, double gamma, size_t N, size_t trials,
                               uint64_t seed, MeaningfulBiasThreshold thr) {
    if (trials < 1) throw std::invalid_argument("run_experiment: need at least one trial");
    ReductionReport rep;
    rep.n = c.n();
    rep.k = c.k();
    rep.w = w;
    rep.N = N;
    rep.trials = trials;
    rep.gamma = gamma;
    rep.seed = seed;

    // Stream layout: 0 -> instance, 1 -> alpha estimation, 2 + t -> trial t.
    WdpInstance inst = gen_wdp(c, w, stream_seed(seed, 0));
    Pmf pz = achievability_dist(c.n(), gamma);

    rep.bias = bias_of(*inst.planted_e, pz);
    rep.delta = 0.5 - rep.bias;
    Pmf joint = joint_pushforward(c.gen(), *inst.planted_e, pz);
    rep.eps_exact = tv_distance(joint, product_with_bernoulli(Pmf::uniform(c.k()), rep.delta));
    rep.tv_syndrome = tv_distance(pushforward(c.gen(), pz), Pmf::uniform(c.k()));

    SolverStats alpha = estimate_alpha(c.k(), rep.delta, N, trials, stream_seed(seed, 1));
    rep.alpha_hat = alpha.alpha_hat;
    rep.alpha_ci = alpha.ci_halfwidth;

    PmfSampler sampler(pz);
    std::vector<uint8_t> won(trials, 0);
    parallel_for(trials, [&](size_t t) {
        won[t] = reduce_once(inst, sampler, N, stream_seed(seed, 2 + t)).success ? 1 : 0;
    });
    size_t successes = 0;
    for (uint8_t v : won) successes += v;
    rep.success_rate = double(successes) / double(trials);
    rep.success_ci =
        1.96 * std::sqrt(rep.success_rate * (1.0 - rep.success_rate) / double(trials));

    rep.guarantee = rep.alpha_hat - double(N) * rep.eps_exact;
    rep.sigma = std::sqrt(rep.alpha_hat * (1.0 - rep.alpha_hat) / double(trials) +
                          rep.success_rate * (1.0 - rep.success_rate) / double(trials));
    rep.no_guarantee =
        double(N) * rep.eps_exact >= rep.alpha_hat || rep.delta >= 0.5 - kNumericTol;
    rep.guarantee_ok = rep.success_rate >= rep.guarantee - 3.0 * rep.sigma;
    rep.meaningful_syndrome = rep.tv_syndrome < rep.alpha_hat / double(N);
    rep.meaningful_bias = rep.bias >= thr.coeff * std::pow(double(c.k()), -double(thr.l));
    return rep;
}

}  // namespace smoothlab
