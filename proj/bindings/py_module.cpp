#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pathinsert/generator.hpp"
#include "pathinsert/plot.hpp"
#include "pathinsert/query.hpp"

namespace py = pybind11;
using namespace pathinsert;

namespace {

InsertionRequest make_request(const std::string& origin, const std::string& destination,
                              int64_t window_start, int64_t window_end, int routes,
                              const std::vector<std::string>& no_stop,
                              const std::vector<std::string>& require_stop) {
  InsertionRequest req;
  req.origin = origin;
  req.destination = destination;
  req.window_start = TimePoint{window_start};
  req.window_end = TimePoint{window_end};
  req.route_count = routes;
  req.no_stop.insert(no_stop.begin(), no_stop.end());
  req.require_stop.insert(require_stop.begin(), require_stop.end());
  return req;
}

py::dict path_to_dict(const TrainPath& p) {
  py::dict d;
  d["departure"] = p.summary.departure;
  d["arrival"] = p.summary.arrival;
  d["slack"] = p.summary.slack;
  py::list stations;
  for (const PathStationEvent& ev : p.stations) {
    py::dict e;
    e["station"] = ev.station;
    e["arrival"] = ev.arrival.sec;
    e["departure"] = ev.departure.sec;
    e["track"] = ev.track;
    e["pattern"] = std::string(1, pattern_char(ev.pattern));
    stations.append(e);
  }
  d["stations"] = stations;
  py::list segments;
  for (const PathSegmentEvent& sv : p.segments) {
    py::dict e;
    e["segment"] = sv.segment;
    e["track"] = sv.track;
    e["enter"] = sv.enter.sec;
    e["exit"] = sv.exit.sec;
    segments.append(e);
  }
  d["segments"] = segments;
  return d;
}

TrainPath path_from_dict(const py::dict& d) {
  TrainPath p;
  p.summary = {d["departure"].cast<int64_t>(), d["arrival"].cast<int64_t>(),
               d["slack"].cast<int64_t>()};
  for (auto item : d["stations"].cast<py::list>()) {
    py::dict e = item.cast<py::dict>();
    p.stations.push_back({e["station"].cast<std::string>(),
                          TimePoint{e["arrival"].cast<int64_t>()},
                          TimePoint{e["departure"].cast<int64_t>()},
                          e["track"].cast<std::string>(),
                          e["pattern"].cast<std::string>() == "S"
                              ? StoppingPattern::stop
                              : StoppingPattern::run_through});
  }
  for (auto item : d["segments"].cast<py::list>()) {
    py::dict e = item.cast<py::dict>();
    p.segments.push_back({e["segment"].cast<std::string>(), e["track"].cast<std::string>(),
                          TimePoint{e["enter"].cast<int64_t>()},
                          TimePoint{e["exit"].cast<int64_t>()}});
  }
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact train path insertion into an existing timetable";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<Network>(m, "Network")
      .def_property_readonly("stations",
                             [](const Network& n) {
                               std::vector<std::string> out;
                               for (const Station& s : n.stations) out.push_back(s.id);
                               return out;
                             })
      .def_property_readonly("segments", [](const Network& n) {
        std::vector<std::string> out;
        for (const Segment& g : n.segments) out.push_back(g.id);
        return out;
      });
  py::class_<Timetable>(m, "Timetable").def_property_readonly("trains", [](const Timetable& t) {
    std::vector<std::string> out;
    for (const Train& tr : t.trains) out.push_back(tr.id);
    return out;
  });
  py::class_<ParameterSet>(m, "ParameterSet");

  py::class_<InsertionRequest>(m, "InsertionRequest")
      .def(py::init(&make_request), py::arg("origin"), py::arg("destination"),
           py::arg("window_start"), py::arg("window_end"), py::arg("routes") = 3,
           py::arg("no_stop") = std::vector<std::string>{},
           py::arg("require_stop") = std::vector<std::string>{});

  m.def("load_network", &load_network, py::arg("document"));
  m.def("load_timetable", &load_timetable, py::arg("document"), py::arg("network"));
  m.def("load_parameters",
        [](const std::string& doc, const Network& net) { return load_parameters(doc, net); },
        py::arg("document"), py::arg("network"));
  m.def("serialize_network", &serialize_network);
  m.def("serialize_timetable", &serialize_timetable);
  m.def("serialize_parameters", &serialize_parameters);
  m.def("validate", &validate, py::arg("network"), py::arg("timetable"), py::arg("params"));

  m.def(
      "insert",
      [](const Network& net, const Timetable& tt, const ParameterSet& ps,
         const InsertionRequest& req) {
        InsertionResult res = insert_train(net, tt, ps, req);
        py::dict out;
        py::list frontier;
        for (const FrontierPoint& p : res.frontier)
          frontier.append(py::make_tuple(p.departure, p.arrival, p.slack));
        out["frontier"] = frontier;
        py::list paths;
        for (const TrainPath& p : res.paths) paths.append(path_to_dict(p));
        out["paths"] = paths;
        out["violations"] = res.violations;
        py::dict report;
        report["preprocess_ms"] = res.report.preprocess_ms;
        report["dp_ms"] = res.report.dp_ms;
        report["reconstruct_ms"] = res.report.reconstruct_ms;
        py::list sizes;
        for (const auto& loc : res.report.table_sizes)
          sizes.append(py::make_tuple(loc.location, loc.table_items, loc.free_intervals));
        report["table_sizes"] = sizes;
        out["report"] = report;
        return out;
      },
      py::arg("network"), py::arg("timetable"), py::arg("params"), py::arg("request"));

  m.def(
      "oracle_frontier",
      [](const Network& net, const Timetable& tt, const ParameterSet& ps,
         const InsertionRequest& req, int64_t granularity) {
        auto points = oracle_frontier(net, tt, ps, req, Duration{granularity});
        py::list out;
        for (const FrontierPoint& p : points)
          out.append(py::make_tuple(p.departure, p.arrival, p.slack));
        return out;
      },
      py::arg("network"), py::arg("timetable"), py::arg("params"), py::arg("request"),
      py::arg("granularity") = 60);

  m.def(
      "verify_path",
      [](const py::dict& path, const Network& net, const Timetable& tt,
         const ParameterSet& ps) { return verify_path(path_from_dict(path), net, tt, ps); },
      py::arg("path"), py::arg("network"), py::arg("timetable"), py::arg("params"));

  m.def(
      "generate",
      [](uint64_t seed, int stations, int trains, int64_t window_start, int64_t window_end,
         int64_t grid, double double_ratio) {
        GenOptions opt;
        opt.seed = seed;
        opt.stations = stations;
        opt.trains = trains;
        opt.window_start = TimePoint{window_start};
        opt.window_end = TimePoint{window_end};
        opt.grid = grid;
        opt.double_ratio = double_ratio;
        InstanceTexts texts = generate_texts(opt);
        py::dict out;
        out["network"] = texts.network;
        out["timetable"] = texts.timetable;
        out["params"] = texts.params;
        return out;
      },
      py::arg("seed") = 1, py::arg("stations") = 5, py::arg("trains") = 4,
      py::arg("window_start") = 0, py::arg("window_end") = 14400, py::arg("grid") = 60,
      py::arg("double_ratio") = 0.4);

  m.def(
      "render_diagram",
      [](const Network& net, const Timetable& tt, const ParameterSet& ps,
         const std::vector<py::dict>& paths) {
        std::vector<TrainPath> parsed;
        for (const py::dict& d : paths) parsed.push_back(path_from_dict(d));
        return render_diagram(net, tt, ps, parsed, {});
      },
      py::arg("network"), py::arg("timetable"), py::arg("params"),
      py::arg("paths") = std::vector<py::dict>{});

  m.def("parse_time", [](const std::string& s) { return parse_time(s).sec; });
  m.def("format_time", [](int64_t t) { return format_time(TimePoint{t}); });
}
