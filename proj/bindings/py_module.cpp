#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "gaugedyn/cli.hpp"
#include "gaugedyn/exp_dynamics.hpp"
#include "gaugedyn/geometry.hpp"
#include "gaugedyn/koenigs.hpp"
#include "gaugedyn/measure_estimator.hpp"
#include "gaugedyn/nested_family.hpp"
#include "gaugedyn/numeric.hpp"

namespace py = pybind11;
using namespace gaugedyn;

namespace {

const char* verdict_name(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::Attracted: return "attracted";
        case OrbitVerdict::EscapingCandidate: return "escaping_candidate";
        default: return "undecided";
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerics for the family lambda*e^z on (0, 1/e): linearizers, "
              "gauge functions, strip packings, distortion bounds, nested box "
              "families, and gauged box-counting probes.";

    m.def("attracting_fixed_point", &attracting_fixed_point, py::arg("lam"),
          py::arg("tol") = 1e-14);
    m.def("repelling_fixed_point", &repelling_fixed_point, py::arg("lam"),
          py::arg("tol") = 1e-14);
    m.def("phi_eval", &phi_eval, py::arg("lam"), py::arg("x"),
          py::arg("tol") = 1e-12,
          "linearizer of lambda*e^z at beta, as a function of x >= beta");
    m.def("dichotomy_gamma_star", &dichotomy_gamma_star, py::arg("beta"),
          py::arg("eps"));
    m.def("packing_density_bound", &packing_density_bound, py::arg("delta"),
          py::arg("delta_slack"));
    m.def("distortion_bound_single", &distortion_bound_single, py::arg("k"));
    m.def("distortion_bound_composite", &distortion_bound_composite, py::arg("k"));
    m.def(
        "koebe_derivative_bounds",
        [](double r, double d, double deriv_mod) {
            DerivativeBounds b = koebe_derivative_bounds(r, d, deriv_mod);
            return py::make_tuple(b.lo, b.hi);
        },
        py::arg("r"), py::arg("d"), py::arg("deriv_mod") = 1.0);
    m.def(
        "koebe_displacement_bounds",
        [](double r, double d, double deriv_mod) {
            DerivativeBounds b = koebe_displacement_bounds(r, d, deriv_mod);
            return py::make_tuple(b.lo, b.hi);
        },
        py::arg("r"), py::arg("d"), py::arg("deriv_mod") = 1.0);
    m.def(
        "strip_contains",
        [](double delta, double arg_lambda, bool fatou, cplx z) {
            return strip_contains(
                make_strip(delta, arg_lambda,
                           fatou ? StripKind::Fatou : StripKind::Julia),
                z);
        },
        py::arg("delta"), py::arg("arg_lambda"), py::arg("fatou"), py::arg("z"));

    py::class_<ExpMap>(m, "ExpMap")
        .def_static("from_lambda", &ExpMap::from_lambda, py::arg("lam"),
                    py::arg("tol") = 1e-14)
        .def_static("from_mu", &ExpMap::from_mu, py::arg("mu"),
                    py::arg("tol") = 1e-14)
        .def_property_readonly("lam", &ExpMap::lambda)
        .def_property_readonly("alpha", &ExpMap::alpha)
        .def_property_readonly("beta", &ExpMap::beta)
        .def_property_readonly("attraction_radius", &ExpMap::attraction_radius)
        .def_property_readonly("default_escape_re", &ExpMap::default_escape_re)
        .def("apply", &ExpMap::apply, py::arg("z"))
        .def("deriv_log_abs", &ExpMap::deriv_log_abs, py::arg("z"))
        .def("inverse_branch", &ExpMap::inverse_branch, py::arg("w"), py::arg("k"))
        .def("inverse_branch_toward", &ExpMap::inverse_branch_toward, py::arg("w"),
             py::arg("im_target"))
        .def("postcritical_distance", &ExpMap::postcritical_distance, py::arg("z"))
        .def(
            "classify_orbit",
            [](const ExpMap& self, cplx z, int max_steps, double escape_re) {
                OrbitResult r = self.classify_orbit(z, max_steps, escape_re);
                return py::make_tuple(std::string(verdict_name(r.verdict)),
                                      r.steps_used);
            },
            py::arg("z"), py::arg("max_steps"), py::arg("escape_re") = -1.0);

    py::class_<KoenigsEvaluator>(m, "KoenigsEvaluator")
        .def(py::init<double, double>(), py::arg("mu"), py::arg("tol") = 1e-12)
        .def_property_readonly("mu", &KoenigsEvaluator::mu)
        .def_property_readonly("x0", &KoenigsEvaluator::x0)
        .def_property_readonly("x1", &KoenigsEvaluator::x1)
        .def("reduction_count", &KoenigsEvaluator::reduction_count, py::arg("x"))
        .def("__call__", &KoenigsEvaluator::linearizer_eval, py::arg("x"));

    py::class_<GaugeFunction>(m, "GaugeFunction")
        .def(py::init<double, double, double>(), py::arg("mu"), py::arg("gamma"),
             py::arg("tol") = 1e-12)
        .def_property_readonly("mu", &GaugeFunction::mu)
        .def_property_readonly("gamma", &GaugeFunction::gamma)
        .def_property_readonly("t_max", &GaugeFunction::t_max)
        .def("__call__", &GaugeFunction::operator(), py::arg("t"));

    py::class_<RatioStats>(m, "RatioStats")
        .def_readonly("min_ratio", &RatioStats::min_ratio)
        .def_readonly("max_ratio", &RatioStats::max_ratio)
        .def_readonly("log_spread", &RatioStats::log_spread)
        .def_readonly("drift_slope", &RatioStats::drift_slope)
        .def_readonly("max_reduction_gap", &RatioStats::max_reduction_gap);

    m.def(
        "equivalence_probe",
        [](double mu1, double g1, double mu2, double g2, double t_hi, double t_lo,
           std::size_t points) {
            return equivalence_probe(mu1, g1, mu2, g2,
                                     log_spaced_desc(t_hi, t_lo, points));
        },
        py::arg("mu1"), py::arg("gamma1"), py::arg("mu2"), py::arg("gamma2"),
        py::arg("t_hi") = 1e-3, py::arg("t_lo") = 1e-60, py::arg("points") = 200);

    py::class_<DivergenceProduct>(m, "DivergenceProduct")
        .def_readonly("log_values", &DivergenceProduct::log_values)
        .def_readonly("slope", &DivergenceProduct::slope)
        .def_readonly("offset", &DivergenceProduct::offset);

    m.def("divergence_product", &divergence_product, py::arg("mu"),
          py::arg("gamma"), py::arg("eps"), py::arg("k_max"),
          py::arg("tol") = 1e-12);

    m.def(
        "build_packing",
        [](double center_re, double center_im, double side, double angle, double r,
           double delta, bool fatou, double arg_lambda, double margin,
           double coarse_c, std::size_t samples, std::uint64_t seed) {
            StripSpec strip = make_strip(
                delta, arg_lambda, fatou ? StripKind::Fatou : StripKind::Julia);
            PackOptions po;
            po.margin = margin;
            po.coarse_c = coarse_c;
            po.denom_samples = samples;
            po.seed = seed;
            Packing pk =
                build_packing(make_box({center_re, center_im}, side, angle), strip,
                              r, po);
            py::list boxes;
            for (const PackedBox& b : pk.boxes)
                boxes.append(py::make_tuple(b.ix, b.iy, b.band, b.center.real(),
                                            b.center.imag(), b.side));
            py::dict d;
            d["boxes"] = boxes;
            d["density"] = pk.density;
            d["density_host"] = pk.density_host;
            d["margin"] = pk.margin;
            return d;
        },
        py::arg("center_re"), py::arg("center_im"), py::arg("side"),
        py::arg("angle"), py::arg("r"), py::arg("delta"), py::arg("fatou") = false,
        py::arg("arg_lambda") = 0.0, py::arg("margin") = -1.0,
        py::arg("coarse_c") = -1.0, py::arg("samples") = 1 << 17,
        py::arg("seed") = 0);

    m.def(
        "nested_family_summary",
        [](double mu, double seed_re, double seed_im, double seed_side, double r,
           int depth, double delta, bool fatou, std::size_t budget) {
            ExpMap map = ExpMap::from_mu(mu);
            StripSpec strip =
                make_strip(delta, std::arg(map.lambda()),
                           fatou ? StripKind::Fatou : StripKind::Julia);
            NestedConfig nc;
            nc.level_budget = budget;
            NestedFamily fam = construct_nested_family(
                map, strip, make_box({seed_re, seed_im}, seed_side, 0.0), r, depth,
                nc);
            NestingReport rep = verify_nesting(fam);
            FrostmanMass fm = frostman_mass(fam);
            py::list counts, mass_totals;
            for (const auto& lvl : fam.levels) counts.append(lvl.size());
            for (const auto& lvl : fm.mass) {
                double tot = 0;
                for (double v : lvl) tot += v;
                mass_totals.append(tot);
            }
            py::dict d;
            d["counts"] = counts;
            d["mass_totals"] = mass_totals;
            d["ok"] = rep.ok;
            d["containment_violations"] = rep.containment_violations;
            d["diameter_violations"] = rep.diameter_violations;
            d["min_postcritical_distance"] = rep.min_postcritical_distance;
            return d;
        },
        py::arg("mu"), py::arg("seed_re"), py::arg("seed_im"),
        py::arg("seed_side"), py::arg("r"), py::arg("depth"),
        py::arg("delta") = 0.1, py::arg("fatou") = false,
        py::arg("budget") = 600);

    m.def(
        "dichotomy_probe",
        [](double mu, const std::vector<double>& gammas, double center_re,
           double center_im, double side, double res0, int levels, int factor,
           int max_steps, bool five_point) {
            ExpMap map = ExpMap::from_mu(mu);
            ProbeConfig cfg;
            cfg.res0 = res0;
            cfg.levels = levels;
            cfg.factor = factor;
            cfg.classify.max_steps = max_steps;
            cfg.classify.mode =
                five_point ? SampleMode::FivePoint : SampleMode::Center;
            auto reps = dichotomy_probe(
                map, mu, gammas, make_box({center_re, center_im}, side, 0.0), cfg);
            py::list out;
            for (const DichotomyReport& rep : reps) {
                py::list rows;
                for (const ProbeLevel& row : rep.rows)
                    rows.append(py::make_tuple(row.resolution, row.non_fatou,
                                               row.gauged_sum));
                py::dict d;
                d["gamma"] = rep.gamma;
                d["slope"] = rep.slope;
                d["trend"] = trend_name(rep.trend);
                d["rows"] = rows;
                out.append(d);
            }
            return out;
        },
        py::arg("mu"), py::arg("gammas"), py::arg("center_re") = 2.0,
        py::arg("center_im") = 0.0, py::arg("side") = 4.0, py::arg("res0") = 0.2,
        py::arg("levels") = 6, py::arg("factor") = 2, py::arg("max_steps") = 256,
        py::arg("five_point") = true);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv;
            argv.push_back("gaugedyn");
            for (const std::string& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code = cli_main(static_cast<int>(argv.size()), argv.data(), out,
                                err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run the command-line front end in-process");
}
