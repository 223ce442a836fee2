#include <iostream>

#include <CLI11.hpp>

#include "pathinsert/generator.hpp"
#include "pathinsert/plot.hpp"
#include "pathinsert/query.hpp"

namespace pi = pathinsert;

namespace {

struct InstanceArgs {
  std::string network, timetable, params;
  void attach(CLI::App* app) {
    app->add_option("--network", network, "network document")->required();
    app->add_option("--timetable", timetable, "timetable document")->required();
    app->add_option("--params", params, "parameter document")->required();
  }
  pi::Network net;
  pi::Timetable tt;
  pi::ParameterSet ps;
  void load() {
    net = pi::load_network(pi::read_file(network));
    tt = pi::load_timetable(pi::read_file(timetable), net);
    ps = pi::load_parameters(pi::read_file(params), net);
  }
};

struct RequestArgs {
  std::string from, to, wstart, wend;
  int routes = 3;
  std::vector<std::string> no_stop, require_stop;
  void attach(CLI::App* app) {
    app->add_option("--from", from, "origin station")->required();
    app->add_option("--to", to, "destination station")->required();
    app->add_option("--window-start", wstart, "window start (seconds or timestamp)")->required();
    app->add_option("--window-end", wend, "window end")->required();
    app->add_option("--routes", routes, "number of shortest routes to cover");
    app->add_option("--no-stop", no_stop, "stations where stopping is forbidden");
    app->add_option("--require-stop", require_stop, "stations where the train must stop");
  }
  pi::InsertionRequest request() const {
    pi::InsertionRequest req;
    req.origin = from;
    req.destination = to;
    req.window_start = pi::parse_time(wstart);
    req.window_end = pi::parse_time(wend);
    req.route_count = routes;
    req.no_stop.insert(no_stop.begin(), no_stop.end());
    req.require_stop.insert(require_stop.begin(), require_stop.end());
    return req;
  }
};

void emit(const std::string& out_file, const std::string& content) {
  if (out_file.empty())
    std::cout << content;
  else
    pi::write_file(out_file, content);
}

std::string frontier_lines(const std::vector<pi::FrontierPoint>& frontier, bool iso) {
  std::ostringstream os;
  auto fmt = [&](int64_t t) {
    return iso ? pi::format_time(pi::TimePoint{t}) : std::to_string(t);
  };
  for (size_t i = 0; i < frontier.size(); ++i)
    os << "frontier " << (i + 1) << " dep " << fmt(frontier[i].departure) << " arr "
       << fmt(frontier[i].arrival) << " slack " << frontier[i].slack << "\n";
  return os.str();
}

int cmd_insert(InstanceArgs& inst, RequestArgs& reqargs, bool dump_tables, bool verbose, bool iso,
               const std::string& out_file) {
  inst.load();
  pi::QueryOptions opt;
  opt.keep_tables = dump_tables;
  pi::InsertionResult res = pi::insert_train(inst.net, inst.tt, inst.ps, reqargs.request(), opt);
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "preprocess_ms " << res.report.preprocess_ms << "\n";
  os << "dp_ms " << res.report.dp_ms << "\n";
  os << "reconstruct_ms " << res.report.reconstruct_ms << "\n";
  for (const std::string& line : res.report.routing_report) os << "routing " << line << "\n";
  if (verbose || dump_tables)
    for (const auto& loc : res.report.table_sizes)
      os << "tables " << loc.location << " items " << loc.table_items << " free "
         << loc.free_intervals << "\n";
  if (dump_tables) {
    pi::InsertionRequest req = reqargs.request();
    os << pi::format_free_intervals(inst.net, inst.tt, inst.ps, res.ordering,
                                    {req.window_start.sec, req.window_end.sec});
  }
  if (dump_tables && res.tables) os << pi::format_tables(*res.tables, inst.net);
  if (res.frontier.empty()) {
    os << "no feasible path\n";
    emit(out_file, os.str());
    return 0;
  }
  os << frontier_lines(res.frontier, iso);
  os << pi::format_path_records(res.paths, iso);
  bool broken = false;
  for (size_t i = 0; i < res.violations.size(); ++i)
    for (const std::string& v : res.violations[i]) {
      std::cerr << "verification failure on path " << (i + 1) << ": " << v << "\n";
      broken = true;
    }
  emit(out_file, os.str());
  return broken ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"train path insertion"};
  app.require_subcommand(1);

  InstanceArgs ins_inst, val_inst, ora_inst, plot_inst, bench_inst;
  RequestArgs ins_req, ora_req, bench_req;
  bool dump_tables = false, verbose = false, iso = false;
  std::string out_file;

  CLI::App* c_insert = app.add_subcommand("insert", "insert a train path");
  ins_inst.attach(c_insert);
  ins_req.attach(c_insert);
  c_insert->add_flag("--dump-tables", dump_tables, "dump the filled tables");
  c_insert->add_flag("--verbose", verbose, "print table sizes and routing detail");
  c_insert->add_flag("--iso", iso, "print timestamps instead of seconds");
  c_insert->add_option("--out", out_file, "write the report to a file");

  CLI::App* c_validate = app.add_subcommand("validate", "review the loaded artifacts");
  val_inst.attach(c_validate);

  CLI::App* c_oracle = app.add_subcommand("oracle", "grid brute-force frontier");
  ora_inst.attach(c_oracle);
  ora_req.attach(c_oracle);
  int64_t granularity = 60;
  c_oracle->add_option("--granularity", granularity, "grid step in seconds");

  CLI::App* c_gen = app.add_subcommand("gen", "generate a synthetic corridor instance");
  uint64_t seed = 1;
  int stations = 5, trains = 4;
  std::string gw_start = "0", gw_end = "14400", out_prefix = "instance";
  int64_t grid = 60;
  double double_ratio = 0.4;
  c_gen->add_option("--seed", seed);
  c_gen->add_option("--stations", stations);
  c_gen->add_option("--trains", trains);
  c_gen->add_option("--window-start", gw_start);
  c_gen->add_option("--window-end", gw_end);
  c_gen->add_option("--grid", grid, "align all generated times to this step");
  c_gen->add_option("--double-ratio", double_ratio, "share of double-track stretches");
  c_gen->add_option("--out", out_prefix, "output file prefix")->required();

  CLI::App* c_plot = app.add_subcommand("plot", "render a time-distance diagram");
  plot_inst.attach(c_plot);
  std::string paths_file, plot_out = "diagram.svg";
  bool vertical_time = false;
  c_plot->add_option("--paths", paths_file, "path records file (optional)");
  c_plot->add_option("--out", plot_out, "output SVG file");
  c_plot->add_flag("--vertical-time", vertical_time, "time on the vertical axis");

  CLI::App* c_bench = app.add_subcommand("bench", "query timing over growing windows");
  bench_inst.attach(c_bench);
  bench_req.attach(c_bench);
  std::vector<int> multipliers{1, 2, 4};
  int reps = 5;
  std::string bench_out;
  c_bench->add_option("--windows", multipliers, "window length multipliers");
  c_bench->add_option("--reps", reps, "repetitions per window");
  c_bench->add_option("--out", bench_out, "write the timing table to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_insert->parsed())
      return cmd_insert(ins_inst, ins_req, dump_tables, verbose, iso, out_file);

    if (c_validate->parsed()) {
      val_inst.load();
      for (const std::string& d : pi::validate(val_inst.net, val_inst.tt, val_inst.ps))
        std::cout << d << "\n";
      return 0;
    }

    if (c_oracle->parsed()) {
      ora_inst.load();
      auto points = pi::oracle_frontier(ora_inst.net, ora_inst.tt, ora_inst.ps,
                                        ora_req.request(), pi::Duration{granularity});
      if (points.empty()) {
        std::cout << "no feasible path\n";
        return 0;
      }
      std::cout << frontier_lines(points, false);
      return 0;
    }

    if (c_gen->parsed()) {
      pi::GenOptions opt;
      opt.seed = seed;
      opt.stations = stations;
      opt.trains = trains;
      opt.window_start = pi::parse_time(gw_start);
      opt.window_end = pi::parse_time(gw_end);
      opt.grid = grid;
      opt.double_ratio = double_ratio;
      pi::InstanceTexts texts = pi::generate_texts(opt);
      pi::write_file(out_prefix + ".network", texts.network);
      pi::write_file(out_prefix + ".timetable", texts.timetable);
      pi::write_file(out_prefix + ".params", texts.params);
      std::cout << "wrote " << out_prefix << ".network/.timetable/.params\n";
      return 0;
    }

    if (c_plot->parsed()) {
      plot_inst.load();
      std::vector<pi::TrainPath> paths;
      if (!paths_file.empty()) paths = pi::parse_path_records(pi::read_file(paths_file));
      pi::PlotOptions popt;
      popt.vertical_time = vertical_time;
      pi::write_file(plot_out,
                     pi::render_diagram(plot_inst.net, plot_inst.tt, plot_inst.ps, paths, popt));
      std::cout << "wrote " << plot_out << "\n";
      return 0;
    }

    if (c_bench->parsed()) {
      bench_inst.load();
      pi::InsertionRequest base = bench_req.request();
      int64_t base_len = base.window_end.sec - base.window_start.sec;
      std::ostringstream os;
      os << "windows\tmean_ms\truns\n";
      pi::InsertionResult last;
      for (int mult : multipliers) {
        pi::InsertionRequest req = base;
        req.window_end = pi::TimePoint{base.window_start.sec + base_len * mult};
        double total = 0;
        for (int r = 0; r < reps; ++r) {
          pi::QueryOptions opt;
          opt.verify = false;
          last = pi::insert_train(bench_inst.net, bench_inst.tt, bench_inst.ps, req, opt);
          total += last.report.dp_ms + last.report.reconstruct_ms;
        }
        os << mult << "\t" << (total / reps) << "\t" << reps << "\n";
      }
      for (const auto& loc : last.report.table_sizes)
        os << "tables\t" << loc.location << "\t" << loc.table_items << "\t"
           << loc.free_intervals << "\n";
      emit(bench_out, os.str());
      return 0;
    }
  } catch (const pi::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const pi::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
