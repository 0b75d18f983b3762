#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "igw/config.hpp"
#include "igw/entanglement.hpp"
#include "igw/format.hpp"
#include "igw/reduced.hpp"
#include "igw/spectral.hpp"

namespace {

using namespace igw;

constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitNearExceptional = 3;

std::vector<double> linspace(double from, double to, int samples) {
    std::vector<double> ys(static_cast<std::size_t>(samples));
    if (samples == 1) {
        ys[0] = from;
        return ys;
    }
    const double step = (to - from) / static_cast<double>(samples - 1);
    for (int i = 0; i < samples; ++i)
        ys[static_cast<std::size_t>(i)] = from + static_cast<double>(i) * step;
    return ys;
}

int emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(cfg.out);
    if (!f) {
        std::cerr << "error: cannot open output file '" << cfg.out << "'\n";
        return kExitSolver;
    }
    f << text;
    f.flush();
    if (!f) {
        std::cerr << "error: failed writing '" << cfg.out << "'\n";
        return kExitSolver;
    }
    return 0;
}

int write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitSolver;
    }
    f << text;
    return f ? 0 : kExitSolver;
}

nlohmann::ordered_json json_complex(const std::complex<double>& z) {
    return nlohmann::ordered_json::array({z.real(), z.imag()});
}

const char* branch_name(Branch b) {
    return b == Branch::Plus ? "plus" : "minus";
}

int run_resonance(const RunConfig& cfg) {
    if (!cfg.has_range) {
        std::cerr << "usage error: resonance needs --y-range FROM TO SAMPLES\n";
        return kExitUsage;
    }
    if (cfg.samples < 1 || cfg.y_from > cfg.y_to) {
        std::cerr << "usage error: empty y range\n";
        return kExitUsage;
    }
    const PrimaryWave pw = cfg.wave();
    const double tol = cfg.tol("resonance", 1e-10);

    struct Row {
        double y, x, residual;
    };
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(cfg.samples));
    for (double y : linspace(cfg.y_from, cfg.y_to, cfg.samples)) {
        try {
            const ResonantPoint rp = solve_branch(pw, y, cfg.branch);
            if (rp.residual > tol)
                throw solver_error("residual " + fmt17(rp.residual) + " above tolerance");
            rows.push_back({y, rp.mu.mu1, rp.residual});
        } catch (const std::exception& ex) {
            std::cerr << "error at y = " << fmt17(y) << ": " << ex.what() << "\n";
            return kExitSolver;
        }
    }

    std::ostringstream os;
    if (cfg.format == OutputFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Row& r : rows)
            arr.push_back({{"y", r.y}, {"x", r.x}, {"residual", r.residual}});
        os << arr.dump(2) << '\n';
    } else {
        os << "y,x,residual\n";
        for (const Row& r : rows)
            os << fmt17(r.y) << ',' << fmt17(r.x) << ',' << fmt17(r.residual) << '\n';
    }
    return emit(cfg, os.str());
}

int run_growth(const RunConfig& cfg, bool simulate,
               const std::string& dump_spectrum, const std::string& dump_matrix) {
    if (cfg.ys.size() != 1) {
        std::cerr << "usage error: growth needs exactly one --y value\n";
        return kExitUsage;
    }
    const PrimaryWave pw = cfg.wave();
    const double y = cfg.ys.front();
    const ResonantPoint rp = solve_branch(pw, y, cfg.branch);
    if (rp.residual > cfg.tol("resonance", 1e-10))
        throw solver_error("resonance residual " + fmt17(rp.residual) + " above tolerance");

    const double freq_tol = cfg.tol("frequency", 1e-8);
    const SpectrumReport rep = spectrum_report(pw, rp.mu, cfg.M, cfg.gap_threshold, freq_tol);
    const InstabilityPrediction pred = lambda_pm(pw, rp.mu, freq_tol);

    nlohmann::ordered_json j = report_json(rep);
    j["e"] = pred.e_value;
    j["lambda_plus_pred"] = json_complex(pred.lambda_plus);
    j["lambda_minus_pred"] = json_complex(pred.lambda_minus);
    j["stable"] = pred.stable;
    j["unstable_pair"] = {json_complex(rep.unstable_pair[0]), json_complex(rep.unstable_pair[1])};
    j["y"] = y;
    j["branch"] = branch_name(cfg.branch);
    j["resonance_residual"] = rp.residual;
    j["gap"] = {{"alpha_plus", rep.gap.alpha_plus},
                {"alpha_minus", rep.gap.alpha_minus},
                {"ell_cutoff", rep.gap.ell_cutoff},
                {"worst_ell_plus", rep.gap.worst_ell_plus},
                {"worst_ell_minus", rep.gap.worst_ell_minus},
                {"near_exceptional", rep.gap.near_exceptional}};
    if (simulate) {
        const GrowthFit fit = growth_sim(pw, rp.mu, cfg.M, cfg.t_end, cfg.dt, cfg.seed);
        j["growth_fit"] = {{"rate", fit.rate},
                           {"t_start", fit.t_start},
                           {"t_end", fit.t_end},
                           {"residual_rms", fit.residual_rms},
                           {"seed", fit.seed},
                           {"degenerate", fit.degenerate}};
    }

    if (!dump_spectrum.empty()) {
        std::ostringstream os;
        write_spectrum_csv(rep.eigenvalues, os);
        if (int rc = write_file(dump_spectrum, os.str()); rc != 0)
            return rc;
    }
    if (!dump_matrix.empty()) {
        std::ostringstream os;
        write_matrix_csv(assemble(pw, rp.mu, cfg.M), os);
        if (int rc = write_file(dump_matrix, os.str()); rc != 0)
            return rc;
    }

    if (int rc = emit(cfg, j.dump(2) + "\n"); rc != 0)
        return rc;
    return rep.gap.near_exceptional ? kExitNearExceptional : 0;
}

int run_scan(const RunConfig& cfg) {
    std::vector<double> ys = cfg.ys;
    if (cfg.has_range) {
        if (cfg.samples < 1 || cfg.y_from > cfg.y_to) {
            std::cerr << "usage error: empty y range\n";
            return kExitUsage;
        }
        const auto extra = linspace(cfg.y_from, cfg.y_to, cfg.samples);
        ys.insert(ys.end(), extra.begin(), extra.end());
    }
    if (ys.empty()) {
        std::cerr << "usage error: scan needs --y values or --y-range\n";
        return kExitUsage;
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    const PrimaryWave pw = cfg.wave();
    const double freq_tol = cfg.tol("frequency", 1e-8);
    const double nhat = static_cast<double>(pw.n_hat);

    struct Row {
        double y, e, max_re, pred, residual;
        bool ok;
    };
    std::vector<Row> rows;
    rows.reserve(ys.size());
    bool any_failed = false;
    for (double y : ys) {
        Row row{y, std::nan(""), std::nan(""), std::nan(""), std::nan(""), false};
        try {
            const ResonantPoint rp = solve_branch(pw, y, cfg.branch);
            if (rp.residual > cfg.tol("resonance", 1e-10))
                throw solver_error("resonance residual above tolerance");
            row.e = e_mu(pw, rp.mu, freq_tol);
            const SpectrumReport rep =
                spectrum_report(pw, rp.mu, cfg.M, cfg.gap_threshold, freq_tol);
            row.max_re = rep.max_re;
            row.pred = rep.pred_max_re;
            row.residual = rep.residual;
            row.ok = true;
            if (std::abs(y) <= 0.02)
                std::cerr << "note: y = " << fmt17(y) << " is in the small-y regime, e ~ "
                          << fmt17(e_small_coeff(pw) * y / nhat) << " vs computed "
                          << fmt17(row.e) << "\n";
            if (y >= 500.0)
                std::cerr << "note: y = " << fmt17(y) << " is in the far regime, e -> "
                          << fmt17(e_large_limit(pw)) << " vs computed " << fmt17(row.e) << "\n";
        } catch (const std::exception& ex) {
            std::cerr << "scan failed at y = " << fmt17(y) << ": " << ex.what() << "\n";
            any_failed = true;
        }
        rows.push_back(row);
    }

    std::ostringstream os;
    if (cfg.format == OutputFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Row& r : rows)
            arr.push_back({{"y", r.y},
                           {"e_mu", r.e},
                           {"max_re_numeric", r.max_re},
                           {"pred", r.pred},
                           {"residual", r.residual}});
        os << arr.dump(2) << '\n';
    } else {
        os << "y,e_mu,max_re_numeric,pred,residual\n";
        for (const Row& r : rows)
            os << fmt17(r.y) << ',' << fmt17(r.e) << ',' << fmt17(r.max_re) << ','
               << fmt17(r.pred) << ',' << fmt17(r.residual) << '\n';
    }
    if (int rc = emit(cfg, os.str()); rc != 0)
        return rc;
    return any_failed ? kExitSolver : 0;
}

struct CheckLog {
    std::ostringstream os;
    int failed = 0;

    void report(const std::string& name, bool ok, const std::string& detail) {
        os << (ok ? "[pass] " : "[FAIL] ") << name;
        if (!detail.empty())
            os << " (" << detail << ")";
        os << '\n';
        if (!ok)
            ++failed;
    }
};

int run_validate(const RunConfig& cfg) {
    const PrimaryWave pw = cfg.wave();
    std::vector<double> ys = cfg.ys;
    if (ys.empty())
        ys = {0.3, 1.0, 3.0, 30.0, -0.7, -1.6, -5.0};

    const double freq_tol = cfg.tol("frequency", 1e-8);
    CheckLog log;

    std::vector<ResonantPoint> pts;
    double worst_res = 0.0;
    try {
        for (double y : ys) {
            const Branch br = y > 0.0 ? Branch::Plus : Branch::Minus;
            const ResonantPoint rp = solve_branch(pw, y, br);
            worst_res = std::max(worst_res, rp.residual);
            pts.push_back(rp);
        }
        log.report("resonance residual", worst_res <= cfg.tol("resonance", 1e-10),
                   "worst |F| = " + fmt17(worst_res));
    } catch (const std::exception& ex) {
        log.report("resonance residual", false, ex.what());
    }

    double worst_cf = 0.0;
    bool cf_ok = true;
    std::string cf_detail;
    try {
        for (const ResonantPoint& rp : pts)
            for (CoeffId id :
                 {CoeffId::E1DownMinusMinus, CoeffId::E1UpPlusPlus, CoeffId::L0ZeroPlusMinus,
                  CoeffId::L0ZeroMinusPlus, CoeffId::L0OnePlusMinus, CoeffId::L0OneMinusPlus,
                  CoeffId::L1UpMinusPlus, CoeffId::L1DownPlusMinus}) {
                PrimaryWave unit = pw;
                unit.epsilon = std::max(pw.epsilon, 1e-2);
                const EntCoefficient idx = coeff_indices(id);
                const std::complex<double> closed = closed_form(unit, rp.mu, id);
                const std::complex<double> brute =
                    ent_coeff_bruteforce(unit, rp.mu, idx.kind, idx.ell, idx.band, idx.j_dst,
                                         idx.j_src, idx.sigma_dst, idx.sigma_src);
                const double rel = std::abs(closed - brute) / std::max(1.0, std::abs(closed));
                worst_cf = std::max(worst_cf, rel);
            }
        cf_ok = worst_cf <= cfg.tol("coeff", 1e-12);
        cf_detail = "worst rel = " + fmt17(worst_cf);
    } catch (const std::exception& ex) {
        cf_ok = false;
        cf_detail = ex.what();
    }
    log.report("coupling closed forms", cf_ok, cf_detail);

    bool combo_ok = true, b_ok = true, phys_ok = true, gap_ok = !pts.empty();
    std::string combo_detail, b_detail, phys_detail, gap_detail;
    double worst_combo = 0.0, worst_b = 0.0, worst_phys = 0.0;
    try {
        for (const ResonantPoint& rp : pts) {
            const GapReport gr = gap_alpha(pw, rp.mu, cfg.gap_threshold, freq_tol);
            if (!(gr.alpha_plus > 0.0) || !(gr.alpha_minus > 0.0)) {
                gap_ok = false;
                gap_detail = "vanishing gap at y = " + fmt17(rp.y_param);
            }
            const double gap = std::min(gr.alpha_plus, gr.alpha_minus);
            const Combos closed = beta_gamma_combos(pw, rp.mu, freq_tol);
            const Combos res = beta_gamma_combos_residues(pw, rp.mu, gap, freq_tol);
            const double scale =
                std::max({1.0, std::abs(closed.combo1), std::abs(closed.combo0)});
            worst_combo = std::max({worst_combo, std::abs(closed.combo1 - res.combo1) / scale,
                                    std::abs(closed.combo0 - res.combo0) / scale});

            const Iota io = cluster_norms(pw, rp.mu);
            const BCoeffs b = b_coeffs(pw, rp.mu, freq_tol);
            worst_b = std::max({worst_b, std::abs(closed.combo1 / io.iota00 - b.b1),
                                std::abs(closed.combo0 / io.iota11 - b.b0)});

            const double kn = pw.wavevector_norm();
            if (std::abs(rp.mu.vec().norm() - kn) > 1e-6) {
                const double e_direct = e_mu(pw, rp.mu, freq_tol);
                const double e_phys = e_from_physics(pw, rp.mu, freq_tol);
                worst_phys = std::max(worst_phys,
                                      std::abs(e_direct - e_phys) / std::max(1.0, std::abs(e_direct)));
            }
        }
        combo_ok = worst_combo <= cfg.tol("combos", 1e-10);
        combo_detail = "worst rel = " + fmt17(worst_combo);
        b_ok = worst_b <= cfg.tol("combos", 1e-10);
        b_detail = "worst abs = " + fmt17(worst_b);
        phys_ok = worst_phys <= cfg.tol("combos", 1e-10);
        phys_detail = "worst rel = " + fmt17(worst_phys);
        if (gap_ok && gap_detail.empty())
            gap_detail = "all alphas positive";
    } catch (const std::exception& ex) {
        combo_ok = b_ok = phys_ok = gap_ok = false;
        combo_detail = b_detail = phys_detail = gap_detail = ex.what();
    }
    log.report("reduced couplings vs resolvent route", combo_ok, combo_detail);
    log.report("normalized couplings", b_ok, b_detail);
    log.report("growth discriminant vs coupling integrals", phys_ok, phys_detail);

    bool mat_ok = true;
    std::string mat_detail;
    try {
        PrimaryWave pe = pw;
        if (pe.epsilon == 0.0)
            pe.epsilon = 1e-2;
        const FloquetPoint mu = pts.empty() ? FloquetPoint{0.2, 1.0} : pts.front().mu;
        const int M = std::min(cfg.M, 12);
        const TruncatedOperator T = assemble(pe, mu, M);

        double scale = 0.0, worst_re = 0.0;
        for (int r = 0; r < T.dim(); ++r)
            for (int c = 0; c < T.dim(); ++c) {
                scale = std::max(scale, std::abs(T.entries(r, c)));
                worst_re = std::max(worst_re, std::abs(T.entries(r, c).real()));
            }
        if (worst_re > 1e-15 * scale) {
            mat_ok = false;
            mat_detail = "entries not purely imaginary";
        }

        for (int src = -M; src <= M && mat_ok; ++src)
            for (int dst = -M; dst <= M && mat_ok; ++dst) {
                if (std::abs(dst - src) <= 1)
                    continue;
                if (T.entries.block<2, 2>(T.block_start(dst), T.block_start(src)).cwiseAbs().sum() !=
                    0.0) {
                    mat_ok = false;
                    mat_detail = "coupling outside the three-band structure";
                }
            }

        PrimaryWave p0 = pe, p1 = pe;
        p0.epsilon = 0.0;
        p1.epsilon = 1.0;
        const Eigen::MatrixXcd A0 = assemble(p0, mu, M).entries;
        const Eigen::MatrixXcd A1 = assemble(p1, mu, M).entries;
        const Eigen::MatrixXcd affine = A0 + pe.epsilon * (A1 - A0);
        if (affine != T.entries) {
            mat_ok = false;
            mat_detail = "operator is not affine in the amplitude";
        }

        const auto eigs = eig_all(T);
        std::vector<std::complex<double>> mirrored;
        mirrored.reserve(eigs.size());
        for (const auto& z : eigs)
            mirrored.push_back(-std::conj(z));
        const double dm = spectrum_match_distance(eigs, mirrored);
        const auto eigs_neg = eig_all(assemble(pe, FloquetPoint{-mu.mu1, -mu.mu2}, M));
        std::vector<std::complex<double>> conj_neg;
        conj_neg.reserve(eigs_neg.size());
        for (const auto& z : eigs_neg)
            conj_neg.push_back(std::conj(z));
        const double dn = spectrum_match_distance(eigs, conj_neg);
        if (dm > 1e-8 || dn > 1e-8) {
            mat_ok = false;
            mat_detail = "spectrum symmetry broken: mirror " + fmt17(dm) + ", negation " + fmt17(dn);
        }
        if (mat_ok)
            mat_detail = "mirror " + fmt17(dm) + ", negation " + fmt17(dn);
    } catch (const std::exception& ex) {
        mat_ok = false;
        mat_detail = ex.what();
    }
    log.report("operator invariants", mat_ok, mat_detail);
    log.report("spectral gap", gap_ok, gap_detail);

    log.os << (log.failed == 0 ? "all checks passed\n"
                               : std::to_string(log.failed) + " check(s) failed\n");
    if (int rc = emit(cfg, log.os.str()); rc != 0)
        return rc;
    return log.failed == 0 ? 0 : std::min(3 + log.failed, 125);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric subharmonic instability of inviscid internal gravity waves"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<int> kvec;
    double N_val = 1.0, eps_val = 0.01, gap_thr = 1e-3, t_end = 1000.0, dt = 0.005;
    int M_val = 32;
    std::string branch_s, format_s, out_s;
    std::uint64_t seed_val = 12345;
    std::vector<double> ys, yrange;

    app.add_option("--config", config_path, "config file with key = value lines");
    app.add_option("--k", kvec, "primary wavevector components: m n")->expected(2);
    app.add_option("--N", N_val, "buoyancy frequency");
    app.add_option("--eps", eps_val, "primary wave amplitude");
    app.add_option("--M", M_val, "harmonic truncation half-width");
    app.add_option("--branch", branch_s, "resonant branch: plus or minus");
    app.add_option("--y", ys, "second Floquet component(s)");
    app.add_option("--y-range", yrange, "y sweep: FROM TO SAMPLES")->expected(3);
    app.add_option("--format", format_s, "output format: csv or json");
    app.add_option("--out", out_s, "output path (stdout when omitted)");
    app.add_option("--seed", seed_val, "random seed for the direct integration");
    app.add_option("--gap-threshold", gap_thr, "near-exceptional warning threshold");
    app.add_option("--t-end", t_end, "direct integration horizon");
    app.add_option("--dt", dt, "direct integration step");

    auto* sub_res =
        app.add_subcommand("resonance", "solve the resonant set over a y range");
    sub_res->fallthrough();
    auto* sub_growth =
        app.add_subcommand("growth", "spectrum and growth prediction at one resonant point");
    sub_growth->fallthrough();
    bool simulate = false;
    std::string dump_spectrum, dump_matrix;
    sub_growth->add_flag("--simulate", simulate, "integrate in time and fit the growth rate");
    sub_growth->add_option("--dump-spectrum", dump_spectrum, "write the spectrum CSV here");
    sub_growth->add_option("--dump-matrix", dump_matrix, "write the operator CSV here");
    auto* sub_scan = app.add_subcommand("scan", "tabulate e(mu) and max Re over y values");
    sub_scan->fallthrough();
    auto* sub_validate =
        app.add_subcommand("validate", "cross-check closed forms against direct evaluation");
    sub_validate->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        if (app.count("--config") > 0)
            cfg = load_config_file(config_path, cfg);
        if (app.count("--k") > 0) {
            cfg.m_hat = kvec[0];
            cfg.n_hat = kvec[1];
        }
        if (app.count("--N") > 0)
            cfg.N = N_val;
        if (app.count("--eps") > 0)
            cfg.eps = eps_val;
        if (app.count("--M") > 0)
            cfg.M = M_val;
        if (app.count("--branch") > 0)
            cfg.branch = parse_branch(branch_s);
        if (app.count("--format") > 0)
            cfg.format = parse_format(format_s);
        if (app.count("--out") > 0)
            cfg.out = out_s;
        if (app.count("--seed") > 0)
            cfg.seed = seed_val;
        if (app.count("--gap-threshold") > 0)
            cfg.gap_threshold = gap_thr;
        if (app.count("--t-end") > 0)
            cfg.t_end = t_end;
        if (app.count("--dt") > 0)
            cfg.dt = dt;
        if (app.count("--y") > 0)
            cfg.ys = ys;
        if (app.count("--y-range") > 0) {
            if (yrange[2] != std::floor(yrange[2]) || yrange[2] < 0.0)
                throw std::invalid_argument("--y-range sample count must be a non-negative integer");
            cfg.y_from = yrange[0];
            cfg.y_to = yrange[1];
            cfg.samples = static_cast<int>(yrange[2]);
            cfg.has_range = true;
        }
        validate(cfg.wave());
        if (cfg.M < 0)
            throw std::invalid_argument("truncation M must be non-negative");
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sub_res->parsed())
            return run_resonance(cfg);
        if (sub_growth->parsed())
            return run_growth(cfg, simulate, dump_spectrum, dump_matrix);
        if (sub_scan->parsed())
            return run_scan(cfg);
        return run_validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
