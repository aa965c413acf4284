#include "gaugedyn/cli.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaugedyn/errors.hpp"
#include "gaugedyn/exp_dynamics.hpp"
#include "gaugedyn/geometry.hpp"
#include "gaugedyn/koenigs.hpp"
#include "gaugedyn/measure_estimator.hpp"
#include "gaugedyn/nested_family.hpp"
#include "gaugedyn/numeric.hpp"

namespace gaugedyn {

namespace {

using ordered_json = nlohmann::ordered_json;

struct MapChoice {
    double mu = 0;
    double lambda = 0;
    bool has_mu = false, has_lambda = false;

    ExpMap make(double tol = 1e-14) const {
        if (has_mu) return ExpMap::from_mu(mu, tol);
        return ExpMap::from_lambda(lambda, tol);
    }
    // Gauge parameter: the exact mu when given, else the recovered repeller.
    double gauge_mu() const {
        if (has_mu) return mu;
        return repelling_fixed_point(lambda);
    }
    void echo(ordered_json& cfg) const {
        if (has_mu) cfg["mu"] = mu;
        if (has_lambda) cfg["lambda"] = lambda;
    }
};

void add_map_options(CLI::App* sub, MapChoice& mc) {
    auto* om = sub->add_option("--mu", mc.mu,
                               "map parameter via lambda = mu*exp(-mu), mu > 1");
    auto* ol = sub->add_option("--lambda", mc.lambda, "map parameter in (0, 1/e)");
    om->excludes(ol);
    ol->excludes(om);
    sub->parse_complete_callback([&mc, om, ol]() {
        mc.has_mu = om->count() > 0;
        mc.has_lambda = ol->count() > 0;
        if (!mc.has_mu && !mc.has_lambda)
            throw CLI::RequiredError("--mu or --lambda");
    });
}

void add_format_option(CLI::App* sub, std::string& var, const char* natural) {
    var = natural;
    sub->add_option("--format", var,
                    std::string("output format (this command emits ") + natural + ")")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
}

void emit_json(std::ostream& os, const std::string& command, const ordered_json& cfg,
               const ordered_json& result) {
    ordered_json j;
    j["command"] = command;
    j["config"] = cfg;
    j["result"] = result;
    os << j.dump(2) << "\n";
}

int classify_exit(const std::exception& e) {
    if (dynamic_cast<const BudgetError*>(&e)) return 3;
    if (dynamic_cast<const DomainError*>(&e)) return 2;
    if (dynamic_cast<const ConvergenceError*>(&e)) return 2;
    if (dynamic_cast<const EmptyPackingError*>(&e)) return 2;
    return 1;
}

std::string join_address(const std::vector<std::uint32_t>& addr) {
    std::string s;
    for (std::size_t a = 0; a < addr.size(); ++a) {
        if (a) s += ".";
        s += std::to_string(addr[a]);
    }
    return s;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "Numerics for the family lambda*e^z, 0 < lambda < 1/e: linearizers at the "
        "repelling fixed point, gauge functions t^2*Phi(1/t)^gamma, strip packings, "
        "distortion bounds, nested certified box families with mass distributions, "
        "and gauged box-counting refinement probes."};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: GAUGEDYN_THREADS, then hardware); "
                   "output bytes never depend on it")
        ->capture_default_str();

    // ---- fixpoint ----
    auto* fix = app.add_subcommand(
        "fixpoint", "real fixed points of lambda*e^z: attracting alpha in (0,1), "
                    "repelling beta in (1,inf) (JSON)");
    MapChoice fix_mc;
    double fix_tol = 1e-14;
    std::string fix_fmt;
    add_map_options(fix, fix_mc);
    fix->add_option("--tol", fix_tol, "root tolerance")->capture_default_str();
    add_format_option(fix, fix_fmt, "json");

    // ---- koenigs ----
    auto* koe = app.add_subcommand(
        "koenigs", "linearizer Phi of mu*(e^x - 1) at 0: Phi(mu*(e^x - 1)) = "
                   "mu*Phi(x), Phi'(0) = 1 (JSON)");
    double koe_mu = 0, koe_x = 0, koe_tol = 1e-12;
    std::string koe_fmt;
    koe->add_option("--mu", koe_mu, "multiplier, mu > 1")->required();
    koe->add_option("--x", koe_x, "evaluation point, x >= 0")->required();
    koe->add_option("--tol", koe_tol, "limit tolerance")->capture_default_str();
    add_format_option(koe, koe_fmt, "json");

    // ---- gauge ----
    auto* gau = app.add_subcommand(
        "gauge", "gauge h(t) = t^2 * Phi(1/t)^gamma on (0, 1/(mu+1)] (JSON)");
    double gau_mu = 0, gau_gamma = 0, gau_t = 0, gau_tol = 1e-12;
    std::string gau_fmt;
    gau->add_option("--mu", gau_mu, "gauge parameter, mu > 1")->required();
    gau->add_option("--gamma", gau_gamma, "gauge exponent, gamma > 0")->required();
    gau->add_option("--t", gau_t, "evaluation point")->required();
    gau->add_option("--tol", gau_tol, "linearizer tolerance")->capture_default_str();
    add_format_option(gau, gau_fmt, "json");

    // ---- equivalence ----
    auto* eqv = app.add_subcommand(
        "equivalence", "ratio statistics of two gauges; requires mu1^gamma1 = "
                       "mu2^gamma2, the exact equivalence condition (JSON)");
    double eq_mu1 = 0, eq_g1 = 0, eq_mu2 = 0, eq_g2 = 0;
    double eq_thi = 1e-3, eq_tlo = 1e-60;
    std::size_t eq_points = 200;
    std::string eq_fmt;
    eqv->add_option("--mu1", eq_mu1)->required();
    eqv->add_option("--gamma1", eq_g1)->required();
    eqv->add_option("--mu2", eq_mu2)->required();
    eqv->add_option("--gamma2", eq_g2)->required();
    eqv->add_option("--t-hi", eq_thi, "largest t")->capture_default_str();
    eqv->add_option("--t-lo", eq_tlo, "smallest t")->capture_default_str();
    eqv->add_option("--points", eq_points, "log-spaced grid size")
        ->capture_default_str();
    add_format_option(eqv, eq_fmt, "json");

    // ---- pack ----
    auto* pck = app.add_subcommand(
        "pack", "grid packing of side-r boxes inside a host box, each box within "
                "one strip band (CSV ix,iy,band,center_re,center_im,side)");
    double pk_cre = 0, pk_cim = 0, pk_side = 0, pk_angle = 0, pk_r = 0;
    double pk_delta = 0.3, pk_arg = 0, pk_margin = -1, pk_cc = -1;
    std::size_t pk_samples = 1 << 17;
    std::uint64_t pk_seed = 0;
    bool pk_fatou = false;
    std::string pk_fmt;
    pck->add_option("--center-re", pk_cre, "host center, real part")->required();
    pck->add_option("--center-im", pk_cim, "host center, imaginary part")->required();
    pck->add_option("--side", pk_side, "host side")->required();
    pck->add_option("--angle", pk_angle, "host rotation")->capture_default_str();
    pck->add_option("--r", pk_r, "box side")->required();
    pck->add_option("--delta", pk_delta, "strip parameter in (0, pi/2)")
        ->capture_default_str();
    pck->add_option("--arg-lambda", pk_arg, "strip phase shift")
        ->capture_default_str();
    pck->add_flag("--fatou", pk_fatou, "use the complementary band family");
    pck->add_option("--margin", pk_margin, "grid slack (default r/16)");
    pck->add_option("--coarse-c", pk_cc,
                    "min host/box side ratio (default 64*max(1, 1/r))");
    pck->add_option("--samples", pk_samples,
                    "denominator samples when the host is rotated")
        ->capture_default_str();
    pck->add_option("--seed", pk_seed, "sampling seed")->capture_default_str();
    add_format_option(pck, pk_fmt, "csv");

    // ---- distortion ----
    auto* dis = app.add_subcommand(
        "distortion", "distortion constants ((K+1)/(K-3))^6 and its square, plus "
                      "an optional empirical check of exp on D(0, r) (JSON)");
    double ds_k = 0, ds_r = -1;
    std::size_t ds_pairs = 10000, ds_samples = 150;
    std::uint64_t ds_seed = 0;
    std::string ds_fmt;
    dis->add_option("--k", ds_k, "inradius ratio, K > 3")->required();
    dis->add_option("--r", ds_r, "sample disc radius for the empirical check");
    dis->add_option("--pairs", ds_pairs, "pair budget")->capture_default_str();
    dis->add_option("--samples", ds_samples, "sample point count")
        ->capture_default_str();
    dis->add_option("--seed", ds_seed, "sampling seed")->capture_default_str();
    add_format_option(dis, ds_fmt, "json");

    // ---- nested / frostman ----
    auto add_nested_options = [](CLI::App* sub, MapChoice& mc, double& sre,
                                 double& sim, double& sside, double& r, int& depth,
                                 double& delta, bool& fatou, NestedConfig& nc) {
        add_map_options(sub, mc);
        sub->add_option("--seed-re", sre, "seed box center, real part")->required();
        sub->add_option("--seed-im", sim, "seed box center, imaginary part")
            ->capture_default_str();
        sub->add_option("--seed-side", sside, "seed box side")->required();
        sub->add_option("--r", r, "child box side")->required();
        sub->add_option("--depth", depth, "generations to build")
            ->capture_default_str();
        sub->add_option("--delta", delta, "strip parameter")->capture_default_str();
        sub->add_flag("--fatou", fatou, "use the complementary band family");
        sub->add_option("--budget", nc.level_budget, "max cells kept per level")
            ->capture_default_str();
        sub->add_option("--margin", nc.margin, "packing grid slack (default r/64)");
        sub->add_option("--pack-span", nc.pack_span, "packing window side");
        sub->add_option("--coarse-c", nc.coarse_c, "min window/box side ratio");
        sub->add_option("--eps", nc.eps, "sandwich slack echoed in reports")
            ->capture_default_str();
    };

    auto* nst = app.add_subcommand(
        "nested", "nested certified box family: every child box pulls back inside "
                  "its parent (CSV level,address,center_re,center_im,side)");
    MapChoice ns_mc;
    double ns_sre = 0, ns_sim = 0, ns_sside = 0, ns_r = 0, ns_delta = 0.1;
    int ns_depth = 2;
    bool ns_fatou = false;
    NestedConfig ns_cfg;
    std::string ns_fmt;
    add_nested_options(nst, ns_mc, ns_sre, ns_sim, ns_sside, ns_r, ns_depth,
                       ns_delta, ns_fatou, ns_cfg);
    add_format_option(nst, ns_fmt, "csv");

    auto* fro = app.add_subcommand(
        "frostman", "mass distribution over a nested family, each parent's mass "
                    "split by |(E^k)'|^-2 (CSV level,address,mass)");
    MapChoice fr_mc;
    double fr_sre = 0, fr_sim = 0, fr_sside = 0, fr_r = 0, fr_delta = 0.1;
    int fr_depth = 2;
    bool fr_fatou = false;
    NestedConfig fr_cfg;
    std::string fr_fmt;
    add_nested_options(fro, fr_mc, fr_sre, fr_sim, fr_sside, fr_r, fr_depth,
                       fr_delta, fr_fatou, fr_cfg);
    add_format_option(fro, fr_fmt, "csv");

    // ---- product ----
    auto* prd = app.add_subcommand(
        "product", "log lower-bound mass products: log P_k = offset + k*(gamma*"
                   "ln(mu) + ln((1/2 - eps)/(1 + eps)^2)) (CSV k,log_value)");
    double pr_mu = 0, pr_gamma = 0, pr_eps = 0.01;
    int pr_kmax = 50;
    std::string pr_fmt;
    prd->add_option("--mu", pr_mu, "multiplier, mu > 1")->required();
    prd->add_option("--gamma", pr_gamma, "gauge exponent")->required();
    prd->add_option("--eps", pr_eps, "slack parameter")->capture_default_str();
    prd->add_option("--kmax", pr_kmax, "last product index")->capture_default_str();
    add_format_option(prd, pr_fmt, "csv");

    // ---- probe ----
    auto* prb = app.add_subcommand(
        "probe", "gauged box-counting refinement probe over a square region "
                 "(CSV level,resolution,non_fatou_count,gauged_sum,trend)");
    MapChoice pb_mc;
    double pb_gamma = 0, pb_cre = 2, pb_cim = 0, pb_side = 4, pb_res0 = 0.2;
    double pb_escape = -1;
    int pb_levels = 6, pb_factor = 2, pb_steps = 256;
    std::string pb_mode = "five", pb_fmt;
    add_map_options(prb, pb_mc);
    prb->add_option("--gamma", pb_gamma, "gauge exponent")->required();
    prb->add_option("--center-re", pb_cre, "region center, real part")
        ->capture_default_str();
    prb->add_option("--center-im", pb_cim, "region center, imaginary part")
        ->capture_default_str();
    prb->add_option("--side", pb_side, "region side")->capture_default_str();
    prb->add_option("--res0", pb_res0, "coarsest cell side")->capture_default_str();
    prb->add_option("--levels", pb_levels, "refinement levels (at most 8)")
        ->capture_default_str();
    prb->add_option("--factor", pb_factor, "subdivision factor")
        ->capture_default_str();
    prb->add_option("--max-steps", pb_steps, "orbit budget per sample")
        ->capture_default_str();
    prb->add_option("--escape-re", pb_escape,
                    "escape threshold (default max(50, 2*beta))");
    prb->add_option("--mode", pb_mode, "cell sampling: five | center")
        ->capture_default_str()
        ->check(CLI::IsMember({"five", "center"}));
    add_format_option(prb, pb_fmt, "csv");

    for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 64;
    }

    auto format_ok = [&err](const std::string& got, const char* natural,
                            const char* cmd) {
        if (got == natural) return true;
        err << cmd << " emits " << natural << " only\n";
        return false;
    };

    try {
        if (*fix) {
            if (!format_ok(fix_fmt, "json", "fixpoint")) return 64;
            ExpMap m = fix_mc.make(fix_tol);
            ordered_json cfg;
            fix_mc.echo(cfg);
            cfg["tol"] = fix_tol;
            ordered_json res;
            res["lambda"] = m.lambda().real();
            res["alpha"] = m.alpha();
            res["beta"] = m.beta();
            res["attraction_radius"] = m.attraction_radius();
            res["escape_re_default"] = m.default_escape_re();
            emit_json(out, "fixpoint", cfg, res);
        } else if (*koe) {
            if (!format_ok(koe_fmt, "json", "koenigs")) return 64;
            KoenigsEvaluator ev(koe_mu, koe_tol);
            ordered_json cfg{{"mu", koe_mu}, {"x", koe_x}, {"tol", koe_tol}};
            ordered_json res;
            res["x0"] = ev.x0();
            res["x1"] = ev.x1();
            res["reduction_count"] = koe_x >= ev.x0() ? ev.reduction_count(koe_x) : 0;
            res["phi"] = ev.linearizer_eval(koe_x);
            emit_json(out, "koenigs", cfg, res);
        } else if (*gau) {
            if (!format_ok(gau_fmt, "json", "gauge")) return 64;
            GaugeFunction h(gau_mu, gau_gamma, gau_tol);
            ordered_json cfg{{"mu", gau_mu},
                             {"gamma", gau_gamma},
                             {"t", gau_t},
                             {"tol", gau_tol}};
            ordered_json res;
            res["t_max"] = h.t_max();
            res["lambda"] = h.lambda();
            res["value"] = h(gau_t);
            res["phi"] = KoenigsEvaluator(gau_mu, gau_tol)
                             .linearizer_eval(1.0 / gau_t - gau_mu);
            emit_json(out, "gauge", cfg, res);
        } else if (*eqv) {
            if (!format_ok(eq_fmt, "json", "equivalence")) return 64;
            auto grid = log_spaced_desc(eq_thi, eq_tlo, eq_points);
            RatioStats st = equivalence_probe(eq_mu1, eq_g1, eq_mu2, eq_g2, grid);
            ordered_json cfg{{"mu1", eq_mu1},   {"gamma1", eq_g1},
                             {"mu2", eq_mu2},   {"gamma2", eq_g2},
                             {"t_hi", eq_thi},  {"t_lo", eq_tlo},
                             {"points", eq_points}};
            ordered_json res;
            res["min_ratio"] = st.min_ratio;
            res["max_ratio"] = st.max_ratio;
            res["log_spread"] = st.log_spread;
            res["drift_slope"] = st.drift_slope;
            res["max_reduction_gap"] = st.max_reduction_gap;
            emit_json(out, "equivalence", cfg, res);
        } else if (*pck) {
            if (!format_ok(pk_fmt, "csv", "pack")) return 64;
            StripSpec strip = make_strip(
                pk_delta, pk_arg, pk_fatou ? StripKind::Fatou : StripKind::Julia);
            Box host = make_box({pk_cre, pk_cim}, pk_side, pk_angle);
            PackOptions po;
            po.margin = pk_margin;
            po.coarse_c = pk_cc;
            po.denom_samples = pk_samples;
            po.seed = pk_seed;
            Packing pk = build_packing(host, strip, pk_r, po);
            double cc = pk_cc > 0 ? pk_cc : 64.0 * std::max(1.0, 1.0 / pk_r);
            std::string s;
            s += "# op=pack\n";
            s += "# center_re=" + format_double(pk_cre) + "\n";
            s += "# center_im=" + format_double(pk_cim) + "\n";
            s += "# side=" + format_double(pk_side) + "\n";
            s += "# angle=" + format_double(pk_angle) + "\n";
            s += "# r=" + format_double(pk_r) + "\n";
            s += "# delta=" + format_double(pk_delta) + "\n";
            s += "# arg_lambda=" + format_double(pk_arg) + "\n";
            s += "# kind=" + std::string(pk_fatou ? "fatou" : "julia") + "\n";
            s += "# margin=" + format_double(pk.margin) + "\n";
            s += "# coarse_c=" + format_double(cc) + "\n";
            s += "# samples=" + std::to_string(pk_samples) + "\n";
            s += "# seed=" + std::to_string(pk_seed) + "\n";
            s += "# boxes=" + std::to_string(pk.boxes.size()) + "\n";
            s += "# density=" + format_double(pk.density) + "\n";
            s += "# density_host=" + format_double(pk.density_host) + "\n";
            s += "ix,iy,band,center_re,center_im,side\n";
            for (const PackedBox& b : pk.boxes) {
                s += std::to_string(b.ix) + "," + std::to_string(b.iy) + "," +
                     std::to_string(b.band) + "," + format_double(b.center.real()) +
                     "," + format_double(b.center.imag()) + "," +
                     format_double(b.side) + "\n";
            }
            out << s;
        } else if (*dis) {
            if (!format_ok(ds_fmt, "json", "distortion")) return 64;
            ordered_json cfg{{"k", ds_k}};
            ordered_json res;
            res["single"] = distortion_bound_single(ds_k);
            res["composite"] = distortion_bound_composite(ds_k);
            if (ds_r > 0) {
                cfg["r"] = ds_r;
                cfg["pairs"] = ds_pairs;
                cfg["samples"] = ds_samples;
                cfg["seed"] = ds_seed;
                std::vector<std::pair<cplx, cplx>> pts;
                std::mt19937_64 rng(ds_seed);
                std::uniform_real_distribution<double> unit(-1.0, 1.0);
                while (pts.size() < ds_samples) {
                    cplx z{unit(rng) * ds_r, unit(rng) * ds_r};
                    if (std::abs(z) > ds_r) continue;
                    pts.emplace_back(z, std::exp(z));
                }
                DistortionEstimate de = empirical_distortion(pts, ds_pairs, ds_seed);
                ordered_json emp;
                emp["c_f"] = de.c_f;
                emp["C_f"] = de.C_f;
                emp["ratio"] = de.ratio;
                emp["pairs_used"] = de.pairs_used;
                res["empirical"] = emp;
            }
            emit_json(out, "distortion", cfg, res);
        } else if (*nst || *fro) {
            bool fros = fro->parsed();
            if (fros) {
                if (!format_ok(fr_fmt, "csv", "frostman")) return 64;
            } else {
                if (!format_ok(ns_fmt, "csv", "nested")) return 64;
            }
            MapChoice& mc = fros ? fr_mc : ns_mc;
            double sre = fros ? fr_sre : ns_sre, sim = fros ? fr_sim : ns_sim;
            double sside = fros ? fr_sside : ns_sside, r = fros ? fr_r : ns_r;
            double delta = fros ? fr_delta : ns_delta;
            int depth = fros ? fr_depth : ns_depth;
            bool fatou = fros ? fr_fatou : ns_fatou;
            NestedConfig nc = fros ? fr_cfg : ns_cfg;
            nc.threads = threads;

            ExpMap m = mc.make();
            StripSpec strip =
                make_strip(delta, std::arg(m.lambda()),
                           fatou ? StripKind::Fatou : StripKind::Julia);
            Box seed = make_box({sre, sim}, sside, 0.0);
            NestedFamily fam = construct_nested_family(m, strip, seed, r, depth, nc);
            if (!fros) {
                out << export_family_csv(fam);
            } else {
                FrostmanMass fm = frostman_mass(fam);
                std::string s;
                s += "# op=frostman\n";
                s += "# lambda_re=" + format_double(m.lambda().real()) + "\n";
                s += "# lambda_im=" + format_double(m.lambda().imag()) + "\n";
                s += "# kind=" + std::string(fatou ? "fatou" : "julia") + "\n";
                s += "# delta=" + format_double(delta) + "\n";
                s += "# seed_re=" + format_double(sre) + "\n";
                s += "# seed_im=" + format_double(sim) + "\n";
                s += "# seed_side=" + format_double(sside) + "\n";
                s += "# r=" + format_double(r) + "\n";
                s += "# depth=" + std::to_string(depth) + "\n";
                s += "# budget=" + std::to_string(fam.config.level_budget) + "\n";
                s += "# margin=" + format_double(fam.config.margin) + "\n";
                s += "# pack_span=" + format_double(fam.config.pack_span) + "\n";
                s += "# coarse_c=" + format_double(fam.config.coarse_c) + "\n";
                s += "# eps=" + format_double(fam.config.eps) + "\n";
                for (std::size_t k = 0; k < fm.mass.size(); ++k) {
                    double total = 0;
                    for (double v : fm.mass[k]) total += v;
                    s += "# mass_total_" + std::to_string(k) + "=" +
                         format_double(total) + "\n";
                }
                s += "level,address,mass\n";
                for (std::size_t k = 0; k < fam.levels.size(); ++k)
                    for (std::size_t i = 0; i < fam.levels[k].size(); ++i) {
                        s += std::to_string(k) + "," +
                             join_address(fam.levels[k][i].address) + "," +
                             format_double(fm.mass[k][i]) + "\n";
                    }
                out << s;
            }
        } else if (*prd) {
            if (!format_ok(pr_fmt, "csv", "product")) return 64;
            DivergenceProduct dp =
                divergence_product(pr_mu, pr_gamma, pr_eps, pr_kmax);
            std::string s;
            s += "# op=product\n";
            s += "# mu=" + format_double(pr_mu) + "\n";
            s += "# gamma=" + format_double(pr_gamma) + "\n";
            s += "# eps=" + format_double(pr_eps) + "\n";
            s += "# kmax=" + std::to_string(pr_kmax) + "\n";
            s += "# slope=" + format_double(dp.slope) + "\n";
            s += "# offset=" + format_double(dp.offset) + "\n";
            s += "# gamma_star=" +
                 format_double(dichotomy_gamma_star(pr_mu, pr_eps)) + "\n";
            s += "k,log_value\n";
            for (std::size_t k = 0; k < dp.log_values.size(); ++k)
                s += std::to_string(k) + "," + format_double(dp.log_values[k]) + "\n";
            out << s;
        } else if (*prb) {
            if (!format_ok(pb_fmt, "csv", "probe")) return 64;
            ExpMap m = pb_mc.make();
            ProbeConfig cfg;
            cfg.res0 = pb_res0;
            cfg.levels = pb_levels;
            cfg.factor = pb_factor;
            cfg.classify.max_steps = pb_steps;
            cfg.classify.escape_re = pb_escape;
            cfg.classify.threads = threads;
            cfg.classify.mode =
                pb_mode == "center" ? SampleMode::Center : SampleMode::FivePoint;
            Box region = make_box({pb_cre, pb_cim}, pb_side, 0.0);
            auto reports =
                dichotomy_probe(m, pb_mc.gauge_mu(), {pb_gamma}, region, cfg);
            out << probe_csv(m, pb_mc.gauge_mu(), region, cfg, reports.front());
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return classify_exit(e);
    }
}

}  // namespace gaugedyn
