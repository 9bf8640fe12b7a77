#include "smoothlab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smoothlab/code.hpp"
#include "smoothlab/krawtchouk.hpp"
#include "smoothlab/lpn.hpp"
#include "smoothlab/pmf.hpp"
#include "smoothlab/reduction.hpp"
#include "smoothlab/rng.hpp"
#include "smoothlab/smoothing.hpp"
#include "smoothlab/util.hpp"

namespace smoothlab {

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string run_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : path_(path) {
        if (path_ != "-") {
            file_.open(path_);
            if (!file_) throw std::runtime_error("cannot open output file " + path_);
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

  private:
    std::string path_;
    std::ofstream file_;
};

void check_dim_gate(const std::vector<int>& ns, int max_n) {
    for (int n : ns) {
        if (n < 1) throw CLI::ValidationError("--n", "n must be >= 1");
        if (n > max_n)
            throw CLI::ValidationError(
                "--n", "n=" + std::to_string(n) + " exceeds the cap " + std::to_string(max_n) +
                           " (raise with --max-n, hard limit " + std::to_string(kMaxPmfDim) + ")");
    }
}

// A pmf drawn from one of a few shapes; `which` selects the family.
Pmf random_pmf(int n, std::mt19937_64& g, int which) {
    switch (which & 3) {
        case 0: {  // exponential weights, normalized (uniform over the simplex)
            std::vector<double> mass(size_t{1} << n);
            for (double& m : mass) m = -std::log(1.0 - uniform01(g));
            double total = neumaier_total(mass);
            for (double& m : mass) m /= total;
            return Pmf::from_mass(std::move(mass), 1e-6);
        }
        case 1:
            return achievability_dist(n, uniform01(g));
        case 2:
            return Pmf::bernoulli_product(n, 0.5 * uniform01(g));
        default: {  // uniform background plus a few random atoms
            double lambda = 0.5 * uniform01(g);
            size_t size = size_t{1} << n;
            std::vector<double> mass(size, (1.0 - lambda) / double(size));
            int atoms = 1 + int(uniform_below(g, 4));
            for (int a = 0; a < atoms; ++a) mass[uniform_below(g, size)] += lambda / atoms;
            return Pmf::from_mass(std::move(mass), 1e-6);
        }
    }
}

LinearCode random_code_with_small_dual_distance(int n, std::mt19937_64& g) {
    // Rejection until d(C_perp) < n/2; overwhelmingly fast at the sizes the
    // bound suites use.
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int k = 1 + int(uniform_below(g, uint64_t(n - 1)));
        LinearCode c = random_linear_code(n, k, g());
        if (2 * min_distance(dual_code(c)) < n) return c;
    }
    throw std::runtime_error("could not draw a code with d_perp < n/2");
}

struct CommonOpts {
    uint64_t seed = 0;
    std::string out = "-";
    int max_n = kDefaultPmfDim;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--seed", o.seed, "Base RNG seed");
    sub->add_option("--out", o.out, "Output CSV path ('-' = stdout)");
    sub->add_option("--max-n", o.max_n, "Opt-in pmf dimension cap above 22")
        ->check(CLI::Range(1, kMaxPmfDim));
    sub->set_config("--config", "", "key=value config file (flags win)");
}

// ---------------------------------------------------------------- smooth-sweep

int cmd_smooth_sweep(int n, int k, const std::vector<double>& gammas, int codes,
                     const CommonOpts& opts) {
    check_dim_gate({n}, opts.max_n);
    if (k < 1 || k >= n) throw CLI::ValidationError("--k", "need 1 <= k < n");
    std::string ts = run_timestamp();
    size_t rows_n = size_t(codes) * gammas.size();
    std::vector<std::string> rows(rows_n);
    parallel_for(rows_n, [&](size_t idx) {
        size_t ci = idx / gammas.size();
        double gamma = gammas[idx % gammas.size()];
        std::ostringstream row;
        row << ts << ',' << n << ',' << k << ',' << ci << ',' << fmt(gamma) << ',';
        try {
            LinearCode code = random_linear_code(n, k, stream_seed(opts.seed, ci));
            SmoothingReport rep = smooths_check(code, achievability_dist(n, gamma));
            row << fmt(rep.tv_codeword) << ',' << fmt(rep.tv_syndrome) << ','
                << fmt(rep.tv_message) << ',' << fmt(rep.eq_residual()) << ",ok";
        } catch (const std::exception& e) {
            row << "0,0,0,0,error:" << e.what();
        }
        rows[idx] = row.str();
    });

    CsvWriter out(opts.out);
    out.stream() << "timestamp,n,k,code_idx,gamma,tv_codeword,tv_syndrome,tv_message,"
                    "eq_residual,status\n";
    for (const auto& r : rows) out.stream() << r << '\n';
    return 0;
}

// --------------------------------------------------------------- verify-bounds

struct BoundRow {
    std::string kind;
    BoundCertificate cert;
    bool counts_as_violation() const { return cert.hypotheses_ok && !cert.holds(); }
};

BoundCertificate flatness_as_certificate(int n, int k, const FlatnessCheck& f) {
    BoundCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.w = 0;
    cert.d_dual = f.d;  // primal distance of C0 for flatness rows
    cert.t_dual = f.t;
    cert.eps = f.eps;
    cert.kraw_C = 0;
    cert.lhs = std::max(f.low_tail, f.high_tail);
    cert.term_ball = f.bound - f.eps;
    cert.term_kraw = 0;
    cert.term_eps = f.eps;
    cert.hypotheses_ok = f.precondition_ok;
    if (!f.precondition_ok) cert.hypothesis_violation = "tv precondition";
    return cert;
}

int cmd_verify_bounds(const std::vector<int>& ns, int instances, double c_const,
                      const std::vector<int>& kbound_ns, const CommonOpts& opts) {
    check_dim_gate(ns, opts.max_n);
    if (instances < 1) throw CLI::ValidationError("--instances", "need >= 1");
    std::string ts = run_timestamp();

    std::map<int, KrawtchoukBoundParams> params_by_n;
    for (int n : ns) params_by_n.emplace(n, kbound_fit(n, c_const));

    const std::vector<std::string> kinds = {"flatness", "dual_bound", "theorem"};
    size_t per_kind = size_t(instances);
    std::vector<BoundRow> rows(kinds.size() * per_kind);

    parallel_for(rows.size(), [&](size_t idx) {
        size_t kind_idx = idx / per_kind;
        auto g = make_engine(opts.seed, idx);
        int n = ns[uniform_below(g, ns.size())];
        BoundRow row;
        row.kind = kinds[kind_idx];
        if (kind_idx == 0) {
            int k0 = 1 + int(uniform_below(g, uint64_t(n - 1)));
            LinearCode c0 = random_linear_code(n, k0, g());
            Pmf rho = random_pmf(n, g, int(uniform_below(g, 4)));
            double eps =
                tv_distance(convolve(Pmf::code_uniform(c0), rho), Pmf::uniform(n));
            row.cert = flatness_as_certificate(n, k0, verify_flatness(c0, rho, eps));
        } else if (kind_idx == 1) {
            LinearCode c = random_code_with_small_dual_distance(n, g);
            Pmf p = random_pmf(n, g, int(uniform_below(g, 4)));
            Pmf rho = convolve(p, p);
            double eps =
                tv_distance(convolve(Pmf::code_uniform(dual_code(c)), rho), Pmf::uniform(n));
            int w_cap = int(std::floor(c_const * n));
            int w = int(uniform_below(g, uint64_t(w_cap + 1)));
            row.cert = verify_dual_bound(c, rho, w, eps, params_by_n.at(n));
        } else {
            LinearCode c = random_code_with_small_dual_distance(n, g);
            Pmf p = random_pmf(n, g, int(uniform_below(g, 4)));
            double eps = tv_distance(pushforward(c.gen(), p), Pmf::uniform(c.k()));
            int w_cap = int(std::floor(c_const * n));
            int w = int(uniform_below(g, uint64_t(w_cap + 1)));
            row.cert = theorem_bound(c, p, w, eps, params_by_n.at(n));
        }
        rows[idx] = std::move(row);
    });

    // Lemma 1 certification rows (exempt from the pmf dimension gate: these
    // are pure integer scans).
    struct KbRow {
        int n;
        KboundReport rep;
        KrawtchoukBoundParams params;
    };
    std::vector<KbRow> kb_rows;
    for (int n : kbound_ns) {
        KrawtchoukBoundParams p{1.0, 0.16};
        if (n < 300) p = kbound_fit(n, 0.16);
        kb_rows.push_back({n, kbound_check(n, p), p});
    }

    CsvWriter out(opts.out);
    out.stream() << "timestamp,kind,idx,n,k,w,d_dual,t_dual,eps,C,lhs,rhs,term1,term2,term3,ok\n";
    int violations = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        out.stream() << ts << ',' << rows[i].kind << ',' << i << ',' << rows[i].cert.csv_row()
                     << '\n';
        if (rows[i].counts_as_violation()) ++violations;
    }
    for (size_t i = 0; i < kb_rows.size(); ++i) {
        const auto& kb = kb_rows[i];
        out.stream() << ts << ",kbound," << rows.size() + i << ',' << kb.n << ",0,"
                     << kb.rep.worst_w << ',' << kb.rep.worst_i << ",0," << fmt(kb.params.c)
                     << ',' << fmt(kb.params.C) << ',' << fmt(kb.rep.worst_ratio) << ','
                     << fmt(kb.params.C) << ",0,0,0," << (kb.rep.pass ? "1" : "0") << '\n';
        if (!kb.rep.pass) ++violations;
    }
    if (violations > 0) {
        std::cerr << violations << " bound violation(s) under valid hypotheses\n";
        return kExitViolation;
    }
    std::cerr << "all " << rows.size() << " certificates hold (" << kb_rows.size()
              << " kbound rows)\n";
    return 0;
}

// ------------------------------------------------------------------- reduction

int cmd_reduction(int n, int k, const std::vector<int>& ws, const std::vector<double>& gammas,
                  size_t N, size_t trials, int l, double bias_const, const CommonOpts& opts) {
    check_dim_gate({n}, opts.max_n);
    if (k < 1 || k >= n) throw CLI::ValidationError("--k", "need 1 <= k < n");
    if (k > kMaxSolverDim) throw CLI::ValidationError("--k", "k exceeds the ML solver cap");
    std::string ts = run_timestamp();

    LinearCode code = random_linear_code(n, k, stream_seed(opts.seed, 0x0c0de));
    std::vector<std::string> rows;
    int violations = 0;
    for (size_t wi = 0; wi < ws.size(); ++wi) {
        for (size_t gi = 0; gi < gammas.size(); ++gi) {
            size_t idx = wi * gammas.size() + gi;
            ReductionReport rep =
                run_experiment(code, ws[wi], gammas[gi], N, trials, stream_seed(opts.seed, 1 + idx),
                               MeaningfulBiasThreshold{l, bias_const});
            rows.push_back(ts + "," + rep.csv_row());
            if (rep.no_guarantee) {
                std::cerr << "w=" << rep.w << " gamma=" << rep.gamma
                          << ": no guarantee (N*eps=" << double(rep.N) * rep.eps_exact
                          << " >= alpha or delta at 1/2); success_rate=" << rep.success_rate
                          << "\n";
            } else {
                bool pass = rep.guarantee_ok;
                std::cerr << "w=" << rep.w << " gamma=" << rep.gamma
                          << ": success_rate=" << rep.success_rate
                          << " vs guarantee alpha-N*eps=" << rep.guarantee << " - 3sigma="
                          << 3 * rep.sigma << " -> " << (pass ? "OK" : "VIOLATED") << "\n";
                if (!pass) ++violations;
            }
        }
    }

    CsvWriter out(opts.out);
    out.stream() << "timestamp,n,k,w,N,gamma,delta,eps_exact,bias,alpha_hat,guarantee,"
                    "success_rate,meaningful_syndrome,meaningful_bias\n";
    for (const auto& r : rows) out.stream() << r << '\n';
    return violations > 0 ? kExitViolation : 0;
}

// -------------------------------------------------------------------- tradeoff

int cmd_tradeoff(int n, int k, std::vector<int> ws, const std::vector<double>& gammas,
                 const std::string& pmf_path, const CommonOpts& opts) {
    check_dim_gate({n}, opts.max_n);
    if (k < 1 || k >= n) throw CLI::ValidationError("--k", "need 1 <= k < n");
    std::string ts = run_timestamp();
    LinearCode code = random_linear_code(n, k, stream_seed(opts.seed, 0x7ade0ff));

    if (ws.empty()) {
        for (int w = 1; 2 * w < n; ++w) ws.push_back(w);
    }
    struct Source {
        std::string name;
        double gamma;
        Pmf pmf;
    };
    std::vector<Source> sources;
    for (double gamma : gammas)
        sources.push_back({"achievability", gamma, achievability_dist(n, gamma)});
    if (!pmf_path.empty()) {
        Pmf user = load_pmf_csv(pmf_path);
        if (user.n() != n) throw CLI::ValidationError("--pmf", "pmf dimension != --n");
        sources.push_back({"file", -1.0, std::move(user)});
    }

    CsvWriter out(opts.out);
    out.stream() << "timestamp,source,n,k,gamma,w,bias_worst,bias_avg,eps\n";
    BinomialTable binom(n);
    for (const auto& src : sources) {
        double eps = tv_distance(pushforward(code.gen(), src.pmf), Pmf::uniform(k));
        std::vector<double> bf(src.pmf.mass().begin(), src.pmf.mass().end());
        fwht_butterfly(std::span<double>(bf));
        for (int w : ws) {
            double worst = std::numeric_limits<double>::infinity();
            NeumaierSum avg;
            for (uint64_t x = 0; x < bf.size(); ++x) {
                if (std::popcount(x) != w) continue;
                double v = std::abs(bf[x]);
                avg.add(v);
                worst = std::min(worst, v);
            }
            double sphere = binom(n, w).convert_to<double>();
            out.stream() << ts << ',' << src.name << ',' << n << ',' << k << ','
                         << fmt(src.gamma) << ',' << w << ',' << fmt(0.5 * worst) << ','
                         << fmt(0.5 * avg.value() / sphere) << ',' << fmt(eps) << '\n';
        }
    }
    return 0;
}

// ----------------------------------------------------------------- kbound-scan

int cmd_kbound_scan(const std::vector<int>& ns, double c_const, std::optional<double> C_check,
                    const CommonOpts& opts) {
    std::string ts = run_timestamp();
    CsvWriter out(opts.out);
    out.stream() << "timestamp,n,c,C,worst_ratio,worst_w,worst_i,pass\n";
    for (int n : ns) {
        KrawtchoukBoundParams params{C_check ? *C_check : 0.0, c_const};
        if (!C_check) params = kbound_fit(n, c_const);
        KboundReport rep = kbound_check(n, params);
        out.stream() << ts << ',' << n << ',' << fmt(params.c) << ',' << fmt(params.C) << ','
                     << fmt(rep.worst_ratio) << ',' << rep.worst_w << ',' << rep.worst_i << ','
                     << (rep.pass ? 1 : 0) << '\n';
    }
    return 0;
}

// ------------------------------------------------------------------- lpn-bench

int cmd_lpn_bench(const std::vector<int>& ks, const std::vector<double>& deltas,
                  const std::vector<size_t>& Ns, size_t trials, const CommonOpts& opts) {
    std::string ts = run_timestamp();
    CsvWriter out(opts.out);
    out.stream() << "timestamp,k,delta,N,trials,alpha_hat,ci_halfwidth\n";
    size_t idx = 0;
    for (int k : ks) {
        for (double delta : deltas) {
            for (size_t N : Ns) {
                SolverStats stats =
                    estimate_alpha(k, delta, N, trials, stream_seed(opts.seed, idx++));
                out.stream() << ts << ',' << k << ',' << fmt(delta) << ',' << N << ',' << trials
                             << ',' << fmt(stats.alpha_hat) << ',' << fmt(stats.ci_halfwidth)
                             << '\n';
            }
        }
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"smoothlab: exact code-smoothing calculus and the decoding-to-LPN reduction"};
    app.require_subcommand(1);

    // smooth-sweep
    auto* sweep = app.add_subcommand("smooth-sweep", "Smoothing TV distances over (code, gamma) grids");
    int sw_n = 10, sw_k = 5, sw_codes = 4;
    std::vector<double> sw_gammas{0.0, 0.25, 0.5, 1.0};
    CommonOpts sw_opts;
    sweep->add_option("--n", sw_n, "Block length");
    sweep->add_option("--k", sw_k, "Code dimension");
    sweep->add_option("--gamma", sw_gammas, "Mixture weights (comma separated)")->delimiter(',');
    sweep->add_option("--codes", sw_codes, "Random codes per grid point");
    add_common(sweep, sw_opts);

    // verify-bounds
    auto* verify = app.add_subcommand("verify-bounds", "Batch certificates for the three bounds");
    std::vector<int> vb_ns{8, 9, 10, 11, 12, 13, 14};
    int vb_instances = 500;
    double vb_c = 0.16;
    std::vector<int> vb_kbound_ns{300};
    CommonOpts vb_opts;
    verify->add_option("--n", vb_ns, "Block lengths to sample from")->delimiter(',');
    verify->add_option("--instances", vb_instances, "Instances per bound kind");
    verify->add_option("--c", vb_c, "Krawtchouk bound constant c");
    verify->add_option("--kbound-n", vb_kbound_ns, "n values for Lemma-1 certification rows")
        ->delimiter(',');
    add_common(verify, vb_opts);

    // reduction
    auto* red = app.add_subcommand("reduction", "End-to-end WDP-to-LPN reduction experiments");
    int rd_n = 12, rd_k = 6, rd_l = 1;
    std::vector<int> rd_ws{1};
    std::vector<double> rd_gammas{0.6};
    size_t rd_N = 40, rd_trials = 2000;
    double rd_bias_const = 1.0;
    CommonOpts rd_opts;
    red->add_option("--n", rd_n, "Block length");
    red->add_option("--k", rd_k, "Code dimension");
    red->add_option("--w", rd_ws, "Error weights")->delimiter(',');
    red->add_option("--gamma", rd_gammas, "Mixture weights")->delimiter(',');
    red->add_option("--N", rd_N, "LPN sample complexity");
    red->add_option("--trials", rd_trials, "Monte-Carlo trials");
    red->add_option("--l", rd_l, "Meaningful-bias exponent: bias >= const * k^-l");
    red->add_option("--bias-const", rd_bias_const, "Meaningful-bias constant");
    add_common(red, rd_opts);

    // tradeoff
    auto* tr = app.add_subcommand("tradeoff", "Bias vs error weight surface at fixed smoothing");
    int tr_n = 12, tr_k = 6;
    std::vector<int> tr_ws;
    std::vector<double> tr_gammas{0.1, 0.5, 0.9};
    std::string tr_pmf;
    CommonOpts tr_opts;
    tr->add_option("--n", tr_n, "Block length");
    tr->add_option("--k", tr_k, "Code dimension");
    tr->add_option("--w", tr_ws, "Error weights (default 1..n/2-1)")->delimiter(',');
    tr->add_option("--gamma", tr_gammas, "Mixture weights")->delimiter(',');
    tr->add_option("--pmf", tr_pmf, "Also evaluate a pmf loaded from CSV");
    add_common(tr, tr_opts);

    // kbound-scan
    auto* kb = app.add_subcommand("kbound-scan", "Certify Krawtchouk bound constants per n");
    std::vector<int> kb_ns{8, 12, 16, 20, 40, 300};
    double kb_c = 0.16;
    double kb_C = -1.0;
    CommonOpts kb_opts;
    kb->add_option("--n", kb_ns, "Lengths to scan")->delimiter(',');
    kb->add_option("--c", kb_c, "Constant c");
    kb->add_option("--C", kb_C, "Check this C instead of fitting (-1 = fit)");
    add_common(kb, kb_opts);

    // lpn-bench
    auto* lb = app.add_subcommand("lpn-bench", "Monte-Carlo ML solver success rates");
    std::vector<int> lb_ks{8};
    std::vector<double> lb_deltas{0.0, 0.125, 0.25};
    std::vector<size_t> lb_Ns{100};
    size_t lb_trials = 500;
    CommonOpts lb_opts;
    lb->add_option("--k", lb_ks, "Secret lengths")->delimiter(',');
    lb->add_option("--delta", lb_deltas, "Noise rates")->delimiter(',');
    lb->add_option("--N", lb_Ns, "Sample complexities")->delimiter(',');
    lb->add_option("--trials", lb_trials, "Trials per configuration");
    add_common(lb, lb_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep->parsed()) return cmd_smooth_sweep(sw_n, sw_k, sw_gammas, sw_codes, sw_opts);
        if (verify->parsed())
            return cmd_verify_bounds(vb_ns, vb_instances, vb_c, vb_kbound_ns, vb_opts);
        if (red->parsed())
            return cmd_reduction(rd_n, rd_k, rd_ws, rd_gammas, rd_N, rd_trials, rd_l,
                                 rd_bias_const, rd_opts);
        if (tr->parsed()) return cmd_tradeoff(tr_n, tr_k, tr_ws, tr_gammas, tr_pmf, tr_opts);
        if (kb->parsed())
            return cmd_kbound_scan(kb_ns, kb_c,
                                   kb_C >= 0 ? std::optional<double>(kb_C) : std::nullopt,
                                   kb_opts);
        if (lb->parsed()) return cmd_lpn_bench(lb_ks, lb_deltas, lb_Ns, lb_trials, lb_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace smoothlab
