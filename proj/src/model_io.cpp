#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pathinsert/model.hpp"

namespace pathinsert {

namespace {

using nlohmann::json;

struct Line {
  int no = 0;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

// Whitespace-separated tokens; double quotes group a token and may contain
// spaces. '#' starts a comment. '[section]' lines are cosmetic and skipped.
std::vector<Line> tokenize(const std::string& doc) {
  std::vector<Line> out;
  std::istringstream in(doc);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      std::string token;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
             raw[i] != '#') {
        if (raw[i] == '"') {
          size_t end = raw.find('"', i + 1);
          if (end == std::string::npos) fail(no, "unterminated quote");
          token += raw.substr(i + 1, end - i - 1);
          i = end + 1;
        } else {
          token += raw[i++];
        }
      }
      tokens.push_back(std::move(token));
    }
    if (tokens.empty()) continue;
    if (tokens.size() == 1 && tokens[0].front() == '[' && tokens[0].back() == ']') continue;
    out.push_back({no, std::move(tokens)});
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// key=value attribute, or empty if the token has no '='.
std::pair<std::string, std::string> attr(const std::string& token) {
  auto eq = token.find('=');
  if (eq == std::string::npos) return {"", ""};
  return {token.substr(0, eq), token.substr(eq + 1)};
}

TransitionDir parse_dir(const std::string& s, int line) {
  if (s == "departing") return TransitionDir::departing;
  if (s == "arriving") return TransitionDir::arriving;
  fail(line, "direction must be 'departing' or 'arriving', got '" + s + "'");
}

bool looks_like_json(const std::string& doc) {
  for (char c : doc) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

TimePoint json_time(const json& j) {
  if (j.is_number_integer()) return TimePoint{j.get<int64_t>()};
  return parse_time(j.get<std::string>());
}

Transition transition_from_tokens(const std::vector<std::string>& t, size_t at, int line) {
  if (at + 5 > t.size()) fail(line, "transition needs: station track segment track direction");
  return {t[at], t[at + 1], t[at + 2], t[at + 3], parse_dir(t[at + 4], line)};
}

Network network_from_json(const json& j) {
  Network net;
  for (const auto& s : j.value("stations", json::array())) {
    Station st;
    st.id = s.at("id").get<std::string>();
    st.name = s.value("name", st.id);
    for (const auto& t : s.at("tracks")) st.tracks.push_back(t.get<std::string>());
    if (s.contains("min_dwell")) st.constraints.min_dwell = Duration{s["min_dwell"].get<int64_t>()};
    if (s.contains("arrival_window"))
      st.constraints.arrival_window = {json_time(s["arrival_window"][0]),
                                       json_time(s["arrival_window"][1])};
    if (s.contains("departure_window"))
      st.constraints.departure_window = {json_time(s["departure_window"][0]),
                                         json_time(s["departure_window"][1])};
    net.stations.push_back(std::move(st));
  }
  for (const auto& s : j.value("segments", json::array())) {
    Segment g;
    g.id = s.at("id").get<std::string>();
    g.from = s.at("from").get<std::string>();
    g.to = s.at("to").get<std::string>();
    for (const auto& t : s.at("tracks")) g.tracks.push_back(t.get<std::string>());
    g.blocks = s.value("blocks", 1);
    g.resource = s.value("resource", std::string());
    net.segments.push_back(std::move(g));
  }
  auto tr_from_json = [](const json& t) {
    return Transition{t.at("station").get<std::string>(),
                      t.at("station_track").get<std::string>(),
                      t.at("segment").get<std::string>(),
                      t.at("segment_track").get<std::string>(),
                      t.at("dir").get<std::string>() == "arriving" ? TransitionDir::arriving
                                                                   : TransitionDir::departing};
  };
  for (const auto& t : j.value("transitions", json::array()))
    net.transitions.push_back(tr_from_json(t));
  net.finalize();
  for (const auto& c : j.value("conflicts", json::array())) {
    int a = net.transition_id(tr_from_json(c.at(0)));
    int b = net.transition_id(tr_from_json(c.at(1)));
    if (a < 0 || b < 0) throw DataError("conflict references an undeclared transition");
    net.conflicts.emplace_back(a, b);
  }
  return net;
}

}  // namespace

Network load_network(const std::string& document) {
  if (looks_like_json(document)) {
    try {
      return network_from_json(json::parse(document));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad network json: ") + e.what());
    }
  }
  Network net;
  std::vector<std::tuple<Transition, Transition, int>> raw_conflicts;
  for (const Line& ln : tokenize(document)) {
    const auto& t = ln.tokens;
    if (t[0] == "station") {
      if (t.size() < 2) fail(ln.no, "station needs an id");
      Station st;
      st.id = t[1];
      st.name = t[1];
      for (size_t i = 2; i < t.size(); ++i) {
        auto [k, v] = attr(t[i]);
        if (k == "name") st.name = v;
        else if (k == "tracks") st.tracks = split_commas(v);
        else if (k == "min_dwell") st.constraints.min_dwell = parse_duration(v);
        else if (k == "arrive") {
          auto parts = split_commas(v);
          if (parts.size() != 2) fail(ln.no, "arrive window needs two times");
          st.constraints.arrival_window = {parse_time(parts[0]), parse_time(parts[1])};
        } else if (k == "depart") {
          auto parts = split_commas(v);
          if (parts.size() != 2) fail(ln.no, "depart window needs two times");
          st.constraints.departure_window = {parse_time(parts[0]), parse_time(parts[1])};
        } else {
          fail(ln.no, "unknown station attribute '" + t[i] + "'");
        }
      }
      net.stations.push_back(std::move(st));
    } else if (t[0] == "segment") {
      if (t.size() < 4) fail(ln.no, "segment needs: id from to");
      Segment g;
      g.id = t[1];
      g.from = t[2];
      g.to = t[3];
      for (size_t i = 4; i < t.size(); ++i) {
        auto [k, v] = attr(t[i]);
        if (k == "tracks") g.tracks = split_commas(v);
        else if (k == "blocks") g.blocks = int(parse_duration(v).sec);
        else if (k == "resource") g.resource = v;
        else fail(ln.no, "unknown segment attribute '" + t[i] + "'");
      }
      net.segments.push_back(std::move(g));
    } else if (t[0] == "transition") {
      net.transitions.push_back(transition_from_tokens(t, 1, ln.no));
    } else if (t[0] == "conflict") {
      if (t.size() != 11) fail(ln.no, "conflict needs two transitions (10 fields)");
      raw_conflicts.emplace_back(transition_from_tokens(t, 1, ln.no),
                                 transition_from_tokens(t, 6, ln.no), ln.no);
    } else {
      fail(ln.no, "unknown record '" + t[0] + "'");
    }
  }
  net.finalize();
  for (const auto& [a, b, line] : raw_conflicts) {
    int ia = net.transition_id(a), ib = net.transition_id(b);
    if (ia < 0) fail(line, "conflict references undeclared transition " + to_string(a));
    if (ib < 0) fail(line, "conflict references undeclared transition " + to_string(b));
    net.conflicts.emplace_back(ia, ib);
  }
  return net;
}

Timetable load_timetable(const std::string& document, const Network& net) {
  Timetable tt;
  if (looks_like_json(document)) {
    json j;
    try {
      j = json::parse(document);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad timetable json: ") + e.what());
    }
    for (const auto& jt : j.value("trains", json::array())) {
      Train tr;
      tr.id = jt.at("id").get<std::string>();
      for (const auto& s : jt.value("stops", json::array())) {
        TrainEvent ev;
        ev.station = s.at("station").get<std::string>();
        ev.arrival = json_time(s.at("arrival"));
        ev.departure = json_time(s.at("departure"));
        ev.track = s.at("track").get<std::string>();
        ev.next_segment = s.value("segment", std::string());
        ev.next_segment_track = s.value("segment_track", std::string());
        tr.events.push_back(std::move(ev));
      }
      tt.trains.push_back(std::move(tr));
    }
  } else {
    Train* cur = nullptr;
    for (const Line& ln : tokenize(document)) {
      const auto& t = ln.tokens;
      if (t[0] == "train") {
        if (t.size() != 2) fail(ln.no, "train needs an id");
        tt.trains.push_back({t[1], {}});
        cur = &tt.trains.back();
      } else if (t[0] == "stop") {
        if (!cur) fail(ln.no, "stop before any train record");
        if (t.size() < 5) fail(ln.no, "stop needs: station arrival departure track");
        TrainEvent ev;
        ev.station = t[1];
        try {
          ev.arrival = parse_time(t[2]);
          ev.departure = parse_time(t[3]);
        } catch (const std::invalid_argument& e) {
          fail(ln.no, e.what());
        }
        ev.track = t[4];
        for (size_t i = 5; i < t.size(); ++i) {
          auto [k, v] = attr(t[i]);
          if (k == "seg") {
            auto parts = split_commas(v);
            auto colon = v.find(':');
            if (colon == std::string::npos) fail(ln.no, "seg needs segment:track");
            ev.next_segment = v.substr(0, colon);
            ev.next_segment_track = v.substr(colon + 1);
            (void)parts;
          } else {
            fail(ln.no, "unknown stop attribute '" + t[i] + "'");
          }
        }
        cur->events.push_back(std::move(ev));
      } else {
        fail(ln.no, "unknown record '" + t[0] + "'");
      }
    }
  }
  tt.derive(net);
  return tt;
}

namespace {

MarginPair margin_from(const std::vector<std::string>& t, size_t at, int line) {
  if (at + 2 > t.size()) fail(line, "expected two durations (after, before)");
  try {
    return {parse_duration(t[at]), parse_duration(t[at + 1])};
  } catch (const std::invalid_argument& e) {
    fail(line, e.what());
  }
}

}  // namespace

ParameterSet load_parameters(const std::string& document, const Network& net) {
  ParameterSet ps;
  auto check_segment = [&](const std::string& id, int line) {
    if (id != "*" && !net.segment_index.count(id))
      fail(line, "unknown segment '" + id + "'");
  };
  if (looks_like_json(document)) {
    json j;
    try {
      j = json::parse(document);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad parameter json: ") + e.what());
    }
    const auto d = j.value("defaults", json::object());
    if (d.contains("headway")) ps.headway_default = Duration{d["headway"].get<int64_t>()};
    if (d.contains("station")) ps.station_default = Duration{d["station"].get<int64_t>()};
    if (d.contains("transition")) ps.transition_default = Duration{d["transition"].get<int64_t>()};
    if (d.contains("transition_block"))
      ps.transition_block = Duration{d["transition_block"].get<int64_t>()};
    for (const auto& e : j.value("headways", json::array()))
      ps.headways.push_back({e.value("train", "*"), e.value("segment", "*"),
                             {Duration{e.at("after").get<int64_t>()},
                              Duration{e.at("before").get<int64_t>()}}});
    for (const auto& e : j.value("station_margins", json::array()))
      ps.station_margins.push_back({e.value("train", "*"), e.value("station", "*"),
                                    e.value("track", "*"),
                                    {Duration{e.at("after").get<int64_t>()},
                                     Duration{e.at("before").get<int64_t>()}}});
    for (const auto& e : j.value("transition_margins", json::array()))
      ps.transition_margins.push_back(
          {e.value("train", "*"), e.value("station", "*"), e.value("station_track", "*"),
           e.value("segment", "*"), e.value("segment_track", "*"), e.value("dir", "*"),
           {Duration{e.at("after").get<int64_t>()}, Duration{e.at("before").get<int64_t>()}}});
    for (const auto& e : j.value("run_times", json::array())) {
      std::string seg = e.at("segment").get<std::string>();
      if (!net.segment_index.count(seg)) throw DataError("unknown segment '" + seg + "'");
      for (const char* pp : {"RR", "SR", "RS", "SS"})
        if (e.contains(pp)) ps.run_times[{seg, pp}] = Duration{e[pp].get<int64_t>()};
    }
  } else {
    for (const Line& ln : tokenize(document)) {
      const auto& t = ln.tokens;
      if (t[0] == "default") {
        if (t.size() != 3) fail(ln.no, "default needs: kind seconds");
        Duration v = parse_duration(t[2]);
        if (t[1] == "headway") ps.headway_default = v;
        else if (t[1] == "station") ps.station_default = v;
        else if (t[1] == "transition") ps.transition_default = v;
        else if (t[1] == "transition_block") ps.transition_block = v;
        else fail(ln.no, "unknown default '" + t[1] + "'");
      } else if (t[0] == "headway") {
        if (t.size() != 5) fail(ln.no, "headway needs: train segment after before");
        check_segment(t[2], ln.no);
        ps.headways.push_back({t[1], t[2], margin_from(t, 3, ln.no)});
      } else if (t[0] == "station") {
        if (t.size() != 6) fail(ln.no, "station needs: train station track after before");
        ps.station_margins.push_back({t[1], t[2], t[3], margin_from(t, 4, ln.no)});
      } else if (t[0] == "transition") {
        if (t.size() != 9)
          fail(ln.no, "transition needs: train station strack segment sgtrack dir after before");
        ps.transition_margins.push_back(
            {t[1], t[2], t[3], t[4], t[5], t[6], margin_from(t, 7, ln.no)});
      } else if (t[0] == "run") {
        if (t.size() != 6) fail(ln.no, "run needs: segment RR SR RS SS");
        if (!net.segment_index.count(t[1])) fail(ln.no, "unknown segment '" + t[1] + "'");
        const char* pp[4] = {"RR", "SR", "RS", "SS"};
        for (int i = 0; i < 4; ++i) {
          try {
            ps.run_times[{t[1], pp[i]}] = parse_duration(t[size_t(2 + i)]);
          } catch (const std::invalid_argument& e) {
            fail(ln.no, e.what());
          }
        }
      } else if (t[0] == "run1") {
        if (t.size() != 4) fail(ln.no, "run1 needs: segment pattern seconds");
        if (!net.segment_index.count(t[1])) fail(ln.no, "unknown segment '" + t[1] + "'");
        if (t[2] != "RR" && t[2] != "SR" && t[2] != "RS" && t[2] != "SS")
          fail(ln.no, "pattern must be RR, SR, RS or SS");
        ps.run_times[{t[1], t[2]}] = parse_duration(t[3]);
      } else {
        fail(ln.no, "unknown record '" + t[0] + "'");
      }
    }
  }
  // Stopping never shortens a traversal.
  for (const auto& [key, dur] : ps.run_times) {
    if (key.second == "RR") continue;
    auto rr = ps.run_times.find({key.first, "RR"});
    if (rr != ps.run_times.end() && dur < rr->second)
      throw DataError("running time " + key.second + " for segment '" + key.first +
                      "' is below RR");
    auto ss = ps.run_times.find({key.first, "SS"});
    if (ss != ps.run_times.end() && key.second != "SS" && ss->second < dur)
      throw DataError("running time SS for segment '" + key.first + "' is below " + key.second);
  }
  return ps;
}

std::string serialize_network(const Network& net) {
  std::ostringstream out;
  out << "[stations]\n";
  for (const Station& s : net.stations) {
    out << "station " << s.id << " name=\"" << s.name << "\" tracks=";
    for (size_t i = 0; i < s.tracks.size(); ++i) out << (i ? "," : "") << s.tracks[i];
    if (s.constraints.min_dwell) out << " min_dwell=" << s.constraints.min_dwell->sec;
    if (s.constraints.arrival_window)
      out << " arrive=" << s.constraints.arrival_window->first.sec << ","
          << s.constraints.arrival_window->second.sec;
    if (s.constraints.departure_window)
      out << " depart=" << s.constraints.departure_window->first.sec << ","
          << s.constraints.departure_window->second.sec;
    out << "\n";
  }
  out << "[segments]\n";
  for (const Segment& g : net.segments) {
    out << "segment " << g.id << " " << g.from << " " << g.to << " tracks=";
    for (size_t i = 0; i < g.tracks.size(); ++i) out << (i ? "," : "") << g.tracks[i];
    out << " blocks=" << g.blocks << " resource=" << g.resource << "\n";
  }
  out << "[transitions]\n";
  for (const Transition& t : net.transitions)
    out << "transition " << t.station << " " << t.station_track << " " << t.segment << " "
        << t.segment_track << " "
        << (t.dir == TransitionDir::departing ? "departing" : "arriving") << "\n";
  out << "[conflicts]\n";
  for (const auto& [a, b] : net.conflicts) {
    const Transition& ta = net.transitions[size_t(a)];
    const Transition& tb = net.transitions[size_t(b)];
    out << "conflict " << ta.station << " " << ta.station_track << " " << ta.segment << " "
        << ta.segment_track << " "
        << (ta.dir == TransitionDir::departing ? "departing" : "arriving") << " " << tb.station
        << " " << tb.station_track << " " << tb.segment << " " << tb.segment_track << " "
        << (tb.dir == TransitionDir::departing ? "departing" : "arriving") << "\n";
  }
  return out.str();
}

std::string serialize_timetable(const Timetable& tt) {
  std::ostringstream out;
  out << "[trains]\n";
  for (const Train& tr : tt.trains) {
    out << "train " << tr.id << "\n";
    for (const TrainEvent& ev : tr.events) {
      out << "stop " << ev.station << " " << ev.arrival.sec << " " << ev.departure.sec << " "
          << ev.track;
      if (!ev.next_segment.empty())
        out << " seg=" << ev.next_segment << ":" << ev.next_segment_track;
      out << "\n";
    }
  }
  return out.str();
}

std::string serialize_parameters(const ParameterSet& ps) {
  std::ostringstream out;
  out << "[defaults]\n";
  out << "default headway " << ps.headway_default.sec << "\n";
  out << "default station " << ps.station_default.sec << "\n";
  out << "default transition " << ps.transition_default.sec << "\n";
  out << "default transition_block " << ps.transition_block.sec << "\n";
  for (const auto& e : ps.headways)
    out << "headway " << e.train << " " << e.segment << " " << e.m.after_existing.sec << " "
        << e.m.before_existing.sec << "\n";
  for (const auto& e : ps.station_margins)
    out << "station " << e.train << " " << e.station << " " << e.track << " "
        << e.m.after_existing.sec << " " << e.m.before_existing.sec << "\n";
  for (const auto& e : ps.transition_margins)
    out << "transition " << e.train << " " << e.station << " " << e.station_track << " "
        << e.segment << " " << e.segment_track << " " << e.dir << " " << e.m.after_existing.sec
        << " " << e.m.before_existing.sec << "\n";
  out << "[run_times]\n";
  std::map<std::string, std::map<std::string, int64_t>> by_segment;
  for (const auto& [key, dur] : ps.run_times) by_segment[key.first][key.second] = dur.sec;
  for (const auto& [seg, pats] : by_segment) {
    if (pats.size() == 4) {
      out << "run " << seg;
      for (const char* pp : {"RR", "SR", "RS", "SS"}) out << " " << pats.at(pp);
      out << "\n";
    } else {
      for (const auto& [pp, sec] : pats) out << "run1 " << seg << " " << pp << " " << sec << "\n";
    }
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

}  // namespace pathinsert
