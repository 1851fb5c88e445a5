#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "erosim/harness.hpp"
#include "erosim/killed.hpp"
#include "erosim/oracle.hpp"
#include "erosim/state.hpp"
#include "erosim/stats.hpp"
#include "erosim/variants.hpp"

namespace py = pybind11;
using namespace erosim;

namespace {

Mode parse_mode(const std::string& m)
{
    if (m == "exact")
        return Mode::Exact;
    if (m == "fast")
        return Mode::Fast;
    throw py::value_error("mode must be 'exact' or 'fast'");
}

py::dict certified(const CertifiedValue& v)
{
    py::dict d;
    d["value"] = v.value;
    d["lo"] = v.lo;
    d["hi"] = v.hi;
    d["terms"] = v.terms;
    return d;
}

} // namespace

PYBIND11_MODULE(_erosim, m)
{
    m.doc() = "Competitive erosion on Z: simulation, constants and limit-law samples";

    py::class_<ErosionState>(m, "State")
        .def(py::init([](std::uint64_t seed, bool layers, bool goodness, bool checks) {
                 return new_state(seed, {layers, goodness, checks});
             }),
             py::arg("seed") = 0, py::arg("layers") = true, py::arg("goodness") = true, py::arg("checks") = false)
        .def(
            "run_particles",
            [](ErosionState& s, std::uint64_t n, const std::string& mode) {
                py::gil_scoped_release nogil;
                run_until_particles(s, n, parse_mode(mode));
            },
            py::arg("n"), py::arg("mode") = "exact")
        .def(
            "run_microsteps",
            [](ErosionState& s, std::int64_t t) {
                py::gil_scoped_release nogil;
                run_until_microsteps(s, t);
            },
            py::arg("t"))
        .def("microstep", [](ErosionState& s) { microstep(s); })
        .def_readonly("particles", &ErosionState::particles)
        .def_readonly("microsteps", &ErosionState::microsteps)
        .def_readonly("martingale", &ErosionState::martingale)
        .def_property_readonly("support", [](const ErosionState& s) { return supports_at(s); },
                               "(S_W, S_E)")
        .def(
            "runs",
            [](const ErosionState& s, std::size_t k) {
                auto r = run_lengths(s.coloring, k);
                return py::make_tuple(r.east, r.west);
            },
            py::arg("k") = 1000, "(E(1..k), W(1..k)), outermost first")
        .def("coloring", [](const ErosionState& s) { return s.coloring.to_string(); })
        .def("goodness", [](const ErosionState& s, std::int64_t L) { return s.goodness.G(L); })
        .def("layers",
             [](const ErosionState& s) {
                 py::list out;
                 for (const auto& l : s.layers.layers())
                     out.append(py::make_tuple(l.east, l.west, std::string(1, color_char(l.eastColor))));
                 return out;
             })
        .def("hard_violations", [](const ErosionState& s) { return s.tally.hard(); })
        .def("save", [](const ErosionState& s, const std::string& path) { save_checkpoint(path, s); })
        .def_static("load", &load_checkpoint);

    m.def(
        "killed",
        [](std::int64_t L, std::uint64_t trials, std::uint64_t seed) {
            RatioEstimate e;
            {
                py::gil_scoped_release nogil;
                e = estimate_ratio(L, trials, seed);
            }
            py::dict d;
            d["mean_R"] = e.meanR;
            d["se_R"] = e.seR;
            d["mean_Q"] = e.meanQ;
            d["se_Q"] = e.seQ;
            d["ratio"] = e.ratio;
            d["se_ratio"] = e.seRatio;
            return d;
        },
        py::arg("L"), py::arg("trials"), py::arg("seed") = 0);

    m.def(
        "w_table",
        [](std::size_t K) {
            auto t = w_recursion(K);
            std::vector<std::string> out;
            for (const auto& w : t.w)
                out.push_back(w.get_str());
            return out;
        },
        py::arg("K"), "w_0..w_K as exact fractions 'p/q'");
    m.def("alpha", [](double tol) { return certified(alpha(tol)); }, py::arg("tolerance") = 1e-12);
    m.def("C", [](double tol) { return certified(C_constant(tol)); }, py::arg("tolerance") = 1e-12);

    m.def(
        "oracle",
        [](std::size_t trials, std::size_t steps, std::size_t k, std::uint64_t seed) {
            std::vector<LimitSample> xs;
            {
                py::gil_scoped_release nogil;
                xs = sample_limit(trials, steps, k, seed);
            }
            py::list out;
            for (const auto& s : xs) {
                py::dict d;
                d["x"] = s.x;
                d["carrier"] = s.carrier == Carrier::G ? "g" : "f";
                d["Tf"] = s.Tf;
                d["Tg"] = s.Tg;
                d["tie"] = s.tie;
                d["degenerate"] = s.degenerate;
                out.append(d);
            }
            return out;
        },
        py::arg("trials"), py::arg("steps") = 1'000'000, py::arg("k") = 2, py::arg("seed") = 0);

    m.def(
        "hitting_functional",
        [](std::vector<double> f, std::optional<std::vector<double>> g) {
            RealPath pf{std::move(f)};
            HittingResult h;
            if (g) {
                RealPath pg{std::move(*g)};
                h = hitting_functional(pf, &pg);
            } else {
                h = hitting_functional(pf, nullptr);
            }
            return py::make_tuple(h.x1, h.Tf, h.Tg);
        },
        py::arg("f"), py::arg("g") = py::none(),
        "Piecewise-linear paths on [0,1] given by equally spaced values; returns (x1, Tf, Tg).");

    m.def("ks_statistic", &ks_statistic, py::arg("a"), py::arg("b"));

    m.def(
        "variant_line",
        [](std::uint64_t n, int palette, const std::string& schedule, const std::string& antagonism,
           std::vector<int> pattern, bool originStops, std::uint64_t seed, const std::string& mode) {
            ColorRule r;
            r.palette = palette;
            if (schedule == "alternating")
                r.schedule = ColorRule::Schedule::Alternating;
            else if (schedule == "iid")
                r.schedule = ColorRule::Schedule::IidUniform;
            else if (schedule == "periodic")
                r.schedule = ColorRule::Schedule::Periodic;
            else
                throw py::value_error("schedule must be alternating, iid or periodic");
            if (antagonism != "mutual" && antagonism != "cyclic")
                throw py::value_error("antagonism must be mutual or cyclic");
            r.antagonism = antagonism == "cyclic" ? ColorRule::Antagonism::Cyclic : ColorRule::Antagonism::Mutual;
            r.pattern = std::move(pattern);
            r.originStops = originStops;
            auto v = run_variant_line(r, n, seed, parse_mode(mode));
            py::dict d;
            d["colored"] = v.colored();
            d["series"] = v.series;
            d["microsteps"] = v.microsteps;
            d["coloring"] = v.coloring.to_string();
            return d;
        },
        py::arg("n"), py::arg("palette") = 2, py::arg("schedule") = "alternating", py::arg("antagonism") = "mutual",
        py::arg("pattern") = std::vector<int>{}, py::arg("origin_stops") = false, py::arg("seed") = 0,
        py::arg("mode") = "exact");

    m.def(
        "zd",
        [](int d, std::uint64_t n, std::uint64_t seed) {
            auto z = run_zd(d, n, seed);
            py::dict out;
            out["series"] = z.series;
            out["colored"] = z.coloring.size();
            out["steps"] = z.steps;
            out["cap_hits"] = z.capHits;
            return out;
        },
        py::arg("d"), py::arg("n"), py::arg("seed") = 0);
}
