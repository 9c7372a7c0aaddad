#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "hopskip/dse.hpp"
#include "hopskip/energy.hpp"
#include "hopskip/errors.hpp"
#include "hopskip/generate.hpp"
#include "hopskip/metrics.hpp"
#include "hopskip/milp.hpp"
#include "hopskip/sdf.hpp"
#include "hopskip/sdf3.hpp"
#include "hopskip/timing.hpp"

namespace py = pybind11;
using namespace hopskip;

// Rational <-> fractions.Fraction. Also accepts int and "a/b" / decimal strings.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (py::isinstance<py::str>(src)) {
      value = Rational::parse(src.cast<std::string>());
      return true;
    }
    if (py::isinstance<py::float_>(src)) return false;
    if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
    value = Rational(src.attr("numerator").cast<std::int64_t>(), src.attr("denominator").cast<std::int64_t>());
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.num(), r.den()).release();
  }
};
}  // namespace pybind11::detail

namespace {

DecisionVector to_x(const py::object& obj, std::size_t groups) {
  if (obj.is_none()) return DecisionVector(groups);
  if (py::isinstance<py::str>(obj)) return DecisionVector::parse(obj.cast<std::string>());
  std::vector<std::uint8_t> bits;
  for (auto b : obj) bits.push_back(b.cast<bool>() ? 1 : 0);
  return DecisionVector(std::move(bits));
}

py::tuple point_tuple(const ExploredPoint& p) { return py::make_tuple(p.period, p.energy, p.x.str()); }

std::vector<ExploredPoint> to_points(const std::vector<py::tuple>& pts) {
  std::vector<ExploredPoint> out;
  for (const auto& t : pts) {
    const auto x = t.size() > 2 ? DecisionVector::parse(t[2].cast<std::string>()) : DecisionVector(1);
    out.push_back({t[0].cast<Rational>(), t[1].cast<Rational>(), x});
  }
  return out;
}

Front to_front(const std::vector<py::tuple>& pts) { return pareto_filter(to_points(pts)); }

py::list front_list(const Front& f) {
  py::list out;
  for (const auto& p : f) out.append(point_tuple(p));
  return out;
}

ScheduleAnchor to_anchor(const std::string& s) {
  if (s == "fireability") return ScheduleAnchor::fireability;
  if (s == "execution_start") return ScheduleAnchor::execution_start;
  throw InvalidArgumentError("anchor must be 'fireability' or 'execution_start'");
}

}  // namespace

PYBIND11_MODULE(_hopskip, m) {
  m.doc() = "Energy/throughput exploration of hybrid always-active and self-powered dataflow actors.";

  auto base = py::register_exception<Error>(m, "HopskipError");
  py::register_exception<DeadlockError>(m, "DeadlockError", base);
  py::register_exception<PeriodTooShortError>(m, "PeriodTooShortError", base);
  py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError", base);
  py::register_exception<TooManyGroupsError>(m, "TooManyGroupsError", base);
  py::register_exception<InvalidArgumentError>(m, "InvalidArgumentError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<SchemaError>(m, "SchemaError", base);
  py::register_exception<DegenerateError>(m, "DegenerateError", base);
  py::register_exception<IoError>(m, "IoError", base);

  py::class_<MarkedGraph>(m, "Graph")
      .def_property_readonly("actor_count", &MarkedGraph::actor_count)
      .def_property_readonly("group_count", &MarkedGraph::group_count)
      .def_property_readonly("actor_names",
                             [](const MarkedGraph& g) {
                               std::vector<std::string> names;
                               for (const auto& a : g.actors()) names.push_back(a.name);
                               return names;
                             })
      .def("__repr__", [](const MarkedGraph& g) {
        return "<Graph " + std::to_string(g.actor_count()) + " actors, " + std::to_string(g.group_count()) +
               " groups>";
      });

  m.def(
      "load_graph",
      [](const std::string& xml, std::optional<std::string> annotations) {
        std::optional<std::filesystem::path> a;
        if (annotations) a = *annotations;
        return unroll(load_sdf3(xml, a)).graph;
      },
      py::arg("xml"), py::arg("annotations") = py::none(), "Read an SDF3 file and unroll it to a marked graph.");

  m.def(
      "parse_graph",
      [](const std::string& xml_text, std::optional<std::string> annotations_text) {
        if (!annotations_text) return unroll(parse_sdf3(xml_text)).graph;
        auto ann = parse_annotations(*annotations_text);
        return unroll(parse_sdf3(xml_text, &ann)).graph;
      },
      py::arg("xml_text"), py::arg("annotations_text") = py::none());

  m.def(
      "generate",
      [](std::uint64_t seed, std::size_t actors, std::int64_t repetition_sum, std::int64_t rate_max) {
        GeneratorParams p;
        p.seed = seed;
        p.actors = actors;
        p.repetition_sum = repetition_sum;
        p.rate_max = rate_max;
        auto sdf = generate_random(p);
        return py::make_tuple(write_sdf3(sdf), write_annotations(sdf));
      },
      py::arg("seed"), py::arg("actors") = 15, py::arg("repetition_sum") = 250, py::arg("rate_max") = 20,
      "Random SDF graph as (xml_text, annotations_json).");

  m.def(
      "min_period", [](const MarkedGraph& g, const py::object& x) { return min_period(g, to_x(x, g.group_count())); },
      py::arg("graph"), py::arg("x") = py::none());

  m.def(
      "total_energy",
      [](const MarkedGraph& g, const Rational& p, const py::object& x) {
        return total_energy(g, p, to_x(x, g.group_count()));
      },
      py::arg("graph"), py::arg("period"), py::arg("x") = py::none());

  m.def(
      "schedule",
      [](const MarkedGraph& g, const Rational& p, const py::object& x, const std::string& anchor) -> py::object {
        const auto dv = to_x(x, g.group_count());
        auto r = schedule_for(g, dv, p);
        if (!r) return py::none();
        return py::cast(reanchor(g, dv, *r.schedule, to_anchor(anchor)).starts);
      },
      py::arg("graph"), py::arg("period"), py::arg("x") = py::none(), py::arg("anchor") = "fireability",
      "Start times sustaining the period, or None when infeasible.");

  m.def(
      "verify_schedule",
      [](const MarkedGraph& g, const Rational& p, const std::vector<Rational>& starts, const py::object& x,
         const std::string& anchor) {
        std::vector<std::string> out;
        for (const auto& v : verify_schedule(g, to_x(x, g.group_count()), Schedule{p, starts, to_anchor(anchor)}))
          out.push_back(v.describe(g));
        return out;
      },
      py::arg("graph"), py::arg("period"), py::arg("starts"), py::arg("x") = py::none(),
      py::arg("anchor") = "fireability", "Violated constraints; empty when the schedule is valid.");

  m.def(
      "min_energy_config",
      [](const MarkedGraph& g, const Rational& p) -> py::object {
        auto r = min_energy_config(g, p);
        if (!r) return py::none();
        return py::make_tuple(r.optimum->x.str(), r.optimum->energy);
      },
      py::arg("graph"), py::arg("period"), "(x, energy) of the cheapest configuration, or None.");

  m.def(
      "explore",
      [](const MarkedGraph& g, const std::string& strategy, const Rational& epsilon, std::size_t workers) {
        ExploreOptions opt;
        opt.workers = workers;
        Exploration e;
        {
          py::gil_scoped_release release;
          if (strategy == "xs")
            e = dse_xs(g, opt);
          else if (strategy == "ps")
            e = dse_ps(g, opt);
          else if (strategy == "hs")
            e = dse_hs(g, epsilon, opt);
          else
            throw InvalidArgumentError("strategy must be xs, ps or hs");
        }
        py::list pts;
        for (const auto& p : e.points) pts.append(point_tuple(p));
        return pts;
      },
      py::arg("graph"), py::arg("strategy") = "hs", py::arg("epsilon") = kDefaultEpsilon, py::arg("workers") = 1,
      "Explored points as (period, energy, x) tuples.");

  m.def(
      "pareto_filter", [](const std::vector<py::tuple>& pts) { return front_list(to_front(pts)); }, py::arg("points"));

  m.def(
      "hypervolume",
      [](const std::vector<std::pair<Rational, Rational>>& pts) {
        std::vector<NormalizedPoint> n;
        for (const auto& [p, e] : pts) n.push_back({p, e});
        return hypervolume(n);
      },
      py::arg("points"), "Area dominated inside the unit box, reference (1, 1).");

  m.def(
      "compare_fronts",
      [](const std::vector<py::tuple>& app, const std::vector<py::tuple>& ref) {
        return compare_fronts(to_front(app), to_front(ref));
      },
      py::arg("app"), py::arg("ref"));

  m.def(
      "weakly_covers",
      [](const std::vector<py::tuple>& app, const std::vector<py::tuple>& ref) {
        return weakly_covers(to_front(app), to_front(ref));
      },
      py::arg("app"), py::arg("ref"));
}
