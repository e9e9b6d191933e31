// Command-line laboratory for the discrete determinantal ensembles: kernels,
// gap probabilities, sampling, ASEP / six-vertex simulation, q-Laplace
// utilities, and the verification experiments.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dpplab/dpp.hpp"
#include "dpplab/errors.hpp"
#include "dpplab/fredholm.hpp"
#include "dpplab/harness.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/qlaplace.hpp"
#include "dpplab/schur.hpp"

using namespace dpplab;

namespace {

struct Out {
    std::string path;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file " + path);
        }
        return file;
    }
    std::ofstream file;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

kernels::DiscreteEnsembleSpec make_ensemble(const std::string& name, double rho, double beta,
                                            double a, double b) {
    kernels::Base base = kernels::parse_base(name);
    kernels::Sign sign = name.size() >= 3 && name[2] == '-' ? kernels::Sign::minus : kernels::Sign::plus;
    switch (base) {
        case kernels::Base::DH: return kernels::DiscreteEnsembleSpec::dh(sign, rho);
        case kernels::Base::DL: return kernels::DiscreteEnsembleSpec::dl(sign, rho, beta);
        case kernels::Base::DJ: return kernels::DiscreteEnsembleSpec::dj(sign, rho, a, b);
    }
    throw std::invalid_argument("bad ensemble");
}

std::vector<double> parse_grid(const std::string& s) {
    // "lo:hi:step" or comma-separated values
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo, hi, step;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
            throw std::invalid_argument("grid must be lo:hi:step");
        for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(v);
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete determinantal ensemble laboratory"};
    app.set_config("--config", "", "flat key = value configuration file");
    app.require_subcommand(1);

    std::string ensemble = "DH+";
    double rho = 0.0, beta = 1.0, ja = 0.0, jb = 0.0;
    uint64_t seed = 0;
    std::string out_path;
    int workers = 0;

    auto add_common = [&](CLI::App* cmd, bool stochastic) {
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--workers", workers, "worker threads (default: all cores)");
        if (stochastic) cmd->add_option("--seed", seed, "master seed")->required();
    };
    auto add_ensemble = [&](CLI::App* cmd) {
        cmd->add_option("--ensemble", ensemble, "DH+/DH-/DL+/DL-/DJ+/DJ-")->required();
        cmd->add_option("--rho", rho, "cut point")->required();
        cmd->add_option("--beta", beta, "DL weight parameter");
        cmd->add_option("--a", ja, "DJ parameter a");
        cmd->add_option("--b", jb, "DJ parameter b");
    };

    // kernel
    auto* c_kernel = app.add_subcommand("kernel", "kernel entries over a window as CSV");
    int window = 10;
    std::string form = "quadrature";
    add_ensemble(c_kernel);
    c_kernel->add_option("--window", window, "window end Z");
    c_kernel->add_option("--form", form, "quadrature|integrable");
    add_common(c_kernel, false);

    // gap
    auto* c_gap = app.add_subcommand("gap", "gap probability det(1-K) on {0..N-1}");
    int gapN = 1;
    bool gap_continuous = false;
    add_ensemble(c_gap);
    c_gap->add_option("--N", gapN, "window size")->required();
    c_gap->add_flag("--continuous", gap_continuous, "use the dual continuous-side determinant");
    add_common(c_gap, false);

    // sample
    auto* c_sample = app.add_subcommand("sample", "exact DPP samples from a windowed kernel");
    long nsamples = 100;
    add_ensemble(c_sample);
    c_sample->add_option("--window", window, "window end Z");
    c_sample->add_option("--n-samples", nsamples, "number of configurations");
    add_common(c_sample, true);

    // simulate-asep
    auto* c_asep = app.add_subcommand("simulate-asep", "continuous-time ASEP heights as CSV");
    double q = 0.5, t = 1.0;
    std::string queries_s = "0";
    long replicas = 1000;
    c_asep->add_option("--q", q, "left jump rate in [0,1)")->required();
    c_asep->add_option("--t", t, "time")->required();
    c_asep->add_option("--queries", queries_s, "comma-separated positions");
    c_asep->add_option("--replicas", replicas, "replica count");
    add_common(c_asep, true);

    // simulate-6v
    auto* c_6v = app.add_subcommand("simulate-6v", "stochastic six-vertex heights as CSV");
    double u = 3.0;
    std::string smode = "six-vertex";
    int qM = 5, qN = 3;
    c_6v->add_option("--q", q, "q in (0,1)")->required();
    c_6v->add_option("--u", u, "spectral parameter")->required();
    c_6v->add_option("--s-mode", smode, "six-vertex|higher-spin");
    c_6v->add_option("--M", qM, "query column")->required();
    c_6v->add_option("--N", qN, "query row")->required();
    c_6v->add_option("--replicas", replicas, "replica count");
    add_common(c_6v, true);

    // qlaplace
    auto* c_ql = app.add_subcommand("qlaplace", "q-Laplace functional of an ensemble");
    double zeta = 0.5;
    add_ensemble(c_ql);
    c_ql->add_option("--q", q, "q in (0,1)")->required();
    c_ql->add_option("--zeta", zeta, "zeta > 0")->required();
    add_common(c_ql, false);

    // verify-identity
    auto* c_vi = app.add_subcommand("verify-identity", "ASEP vs DL multiplicative functional");
    std::string zetas_s = "0.25,0.5";
    int pos = 0;
    c_vi->add_option("--q", q)->required();
    c_vi->add_option("--t", t)->required();
    c_vi->add_option("--x", pos, "height position");
    c_vi->add_option("--zetas", zetas_s, "comma-separated zeta values");
    c_vi->add_option("--replicas", replicas);
    add_common(c_vi, true);

    // verify-limit
    auto* c_vl = app.add_subcommand("verify-limit", "entrywise + kernel limit transition scan");
    std::string kind_s = "charlier-dh";
    std::string ngrid_s = "50,100,200,400";
    c_vl->add_option("--from", kind_s,
                     "charlier-dh|meixner-dl|meixner-dh|krawtchouk-dh|hahn-dl|racah-dj|dl-dh");
    c_vl->add_option("--rho", rho)->required();
    c_vl->add_option("--beta", beta, "beta (meixner-dl)");
    c_vl->add_option("--a", ja, "a (hahn/racah)");
    c_vl->add_option("--b", jb, "b (hahn/racah)");
    c_vl->add_option("--N-grid", ngrid_s, "comma-separated N values");
    add_common(c_vl, false);

    // tw-table
    auto* c_tw = app.add_subcommand("tw-table", "GUE Tracy-Widom CDF table");
    std::string grid_s = "-5:2:0.25";
    c_tw->add_option("--grid", grid_s, "lo:hi:step");
    add_common(c_tw, false);

    // kpz-table
    auto* c_kpz = app.add_subcommand("kpz-table", "Airy-side KPZ Laplace transform table");
    std::string zhat_s = "0.25,0.5,1,2";
    double tau_hat = 1.0;
    c_kpz->add_option("--zeta-hats", zhat_s, "comma-separated zeta-hat values");
    c_kpz->add_option("--tau-hat", tau_hat, "tau-hat > 0");
    add_common(c_kpz, false);

    // schur-check
    auto* c_schur = app.add_subcommand("schur-check", "Schur-measure pushforward total-variation check");
    int sa = 2, sb = 3;
    double sx = 0.5, sy = 0.6;
    bool primed = false;
    c_schur->add_option("--a", sa)->required();
    c_schur->add_option("--b", sb)->required();
    c_schur->add_option("--x", sx)->required();
    c_schur->add_option("--y", sy)->required();
    c_schur->add_flag("--primed", primed, "use the dual (primed) measure");
    add_common(c_schur, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Out out;
    out.path = out_path;
    if (workers > 0) {
        static char buf[32];
        std::snprintf(buf, sizeof buf, "%d", workers);
        setenv("DPPLAB_WORKERS", buf, 1);
    }

    try {
        if (*c_kernel) {
            auto spec = make_ensemble(ensemble, rho, beta, ja, jb);
            auto& os = out.stream();
            os << "x,y,value\n";
            if (form == "quadrature") {
                kernels::KernelMatrix K = kernels::kernel_block(spec, window);
                for (int x = 0; x <= window; ++x)
                    for (int y = 0; y <= window; ++y)
                        os << x << "," << y << "," << fmt(K.at(x, y)) << "\n";
            } else if (form == "integrable") {
                for (int x = 0; x <= window; ++x)
                    for (int y = 0; y <= window; ++y) {
                        if (x == y) continue;
                        os << x << "," << y << ","
                           << fmt(kernels::discrete_kernel_integrable(spec, x, y)) << "\n";
                    }
            } else {
                std::cerr << "unknown --form '" << form << "' (quadrature|integrable)\n";
                return 2;
            }
        } else if (*c_gap) {
            auto spec = make_ensemble(ensemble, rho, beta, ja, jb);
            double v;
            if (gap_continuous) {
                auto side = spec.sign == kernels::Sign::plus ? fredholm::HalfLine::above
                                                             : fredholm::HalfLine::below;
                v = fredholm::gap_det_continuous(spec.family(), gapN, spec.rho, side);
            } else {
                v = fredholm::gap_det_discrete(spec, gapN);
            }
            out.stream() << fmt(v) << "\n";
        } else if (*c_sample) {
            auto spec = make_ensemble(ensemble, rho, beta, ja, jb);
            kernels::KernelMatrix K = kernels::kernel_block(spec, window);
            dpp::Sampler sampler(K);
            auto& os = out.stream();
            std::vector<std::string> lines(nsamples);
            parallel::for_index(nsamples, [&](long i) {
                rng::Stream st(seed, static_cast<uint64_t>(i));
                auto cfg = sampler.sample(st);
                std::string line;
                for (size_t k = 0; k < cfg.sites.size(); ++k) {
                    if (k) line += ' ';
                    line += std::to_string(cfg.sites[k]);
                }
                lines[i] = line;
            });
            for (auto& l : lines) os << l << "\n";
        } else if (*c_asep) {
            std::vector<int> queries;
            for (double v : parse_grid(queries_s)) queries.push_back(static_cast<int>(v));
            auto& os = out.stream();
            os << "replica,query,height\n";
            std::vector<simulators::HeightSample> all(replicas);
            parallel::for_index(replicas, [&](long i) {
                rng::Stream st(seed, static_cast<uint64_t>(i));
                all[i] = simulators::asep_simulate(q, t, queries, st);
            });
            for (long i = 0; i < replicas; ++i)
                for (size_t k = 0; k < queries.size(); ++k)
                    os << i << "," << queries[k] << "," << all[i].heights[k] << "\n";
        } else if (*c_6v) {
            simulators::SixVertexParams par;
            par.q = q;
            par.u = u;
            if (smode == "six-vertex") par.mode = simulators::SixVertexMode::six_vertex;
            else if (smode == "higher-spin") par.mode = simulators::SixVertexMode::higher_spin;
            else {
                std::cerr << "unknown --s-mode '" << smode << "'\n";
                return 2;
            }
            auto& os = out.stream();
            os << "replica,query,height\n";
            std::vector<long> hs(replicas);
            parallel::for_index(replicas, [&](long i) {
                rng::Stream st(seed, static_cast<uint64_t>(i));
                hs[i] = simulators::six_vertex_sample(par, {{qM, qN}}, st).heights[0];
            });
            for (long i = 0; i < replicas; ++i)
                os << i << ",(" << qM << ";" << qN << ")," << hs[i] << "\n";
        } else if (*c_ql) {
            auto spec = make_ensemble(ensemble, rho, beta, ja, jb);
            double v = fredholm::expect_multiplicative(
                spec, fredholm::MultiplicativeFunctional::q_geometric(zeta, q), 1e-9);
            out.stream() << fmt(v) << "\n";
        } else if (*c_vi) {
            auto zetas = parse_grid(zetas_s);
            auto rep = harness::verify_asep_dl_identity(q, t, pos, zetas, replicas, seed);
            out.stream() << rep.to_text();
            return rep.pass ? 0 : 1;
        } else if (*c_vl) {
            harness::LimitKind kind;
            if (kind_s == "charlier-dh") kind = harness::LimitKind::charlier_dh;
            else if (kind_s == "meixner-dl") kind = harness::LimitKind::meixner_dl;
            else if (kind_s == "meixner-dh") kind = harness::LimitKind::meixner_dh;
            else if (kind_s == "krawtchouk-dh") kind = harness::LimitKind::krawtchouk_dh;
            else if (kind_s == "hahn-dl") kind = harness::LimitKind::hahn_dl;
            else if (kind_s == "racah-dj") kind = harness::LimitKind::racah_dj;
            else if (kind_s == "dl-dh") kind = harness::LimitKind::dl_dh;
            else {
                std::cerr << "unknown --from '" << kind_s << "'\n";
                return 2;
            }
            double x1 = (kind == harness::LimitKind::meixner_dl) ? beta : ja;
            std::vector<int> ngrid;
            for (double v : parse_grid(ngrid_s)) ngrid.push_back(static_cast<int>(v));
            auto res = harness::verify_limit_transition(kind, rho, x1, jb, ngrid);
            auto rep = res.report();
            out.stream() << rep.to_text();
            return rep.pass ? 0 : 1;
        } else if (*c_tw) {
            auto grid = parse_grid(grid_s);
            auto& os = out.stream();
            os << "s,F\n";
            for (double s : grid) os << fmt(s) << "," << fmt(fredholm::tracy_widom_gue(s)) << "\n";
        } else if (*c_kpz) {
            auto zh = parse_grid(zhat_s);
            auto& os = out.stream();
            os << "zeta_hat,tau_hat,value\n";
            for (double z : zh)
                os << fmt(z) << "," << fmt(tau_hat) << ","
                   << fmt(fredholm::kpz_laplace_rhs(z, tau_hat, 1e-7)) << "\n";
        } else if (*c_schur) {
            // total variation between the pushforward law and the matching
            // orthogonal polynomial ensemble
            using namespace schur;
            int npts = primed ? sa : std::min(sa, sb);
            int cols = primed ? sb : 60;
            auto lams = partitions_in_box(npts, cols);
            orthopoly::FamilySpec fam =
                primed ? orthopoly::FamilySpec::krawtchouk(sx * sy / (1.0 + sx * sy), sa + sb - 1)
                       : orthopoly::FamilySpec::meixner(std::abs(sa - sb) + 1.0, sx * sy);
            int wtop = primed ? sa + sb - 1 : cols + npts + 2;
            kernels::KernelMatrix K = kernels::cd_kernel_direct(fam, npts, wtop);
            double tv = 0.0, pushed_mass = 0.0;
            for (const auto& lam : lams) {
                double w = schur_measure_weight(lam, sa, sx, sb, sy, primed);
                if (w == 0.0) continue;
                pushed_mass += w;
                auto cfg = pushforward_config(lam, sa, sb, primed);
                linalg::Matrix sub(npts, npts);
                for (int i = 0; i < npts; ++i)
                    for (int j = 0; j < npts; ++j) sub(i, j) = K.at(cfg.sites[i], cfg.sites[j]);
                tv += std::fabs(w - linalg::det_lu(sub));
            }
            auto& os = out.stream();
            os << "tv_bound=" << fmt(0.5 * (tv + (1.0 - pushed_mass))) << "\n";
            os << "enumerated_mass=" << fmt(pushed_mass) << "\n";
        }
        return 0;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
