#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathinsert/time.hpp"

namespace pathinsert {

// Optional requirements for the inserted train at one station.
struct StationConstraints {
  std::optional<Duration> min_dwell;
  std::optional<std::pair<TimePoint, TimePoint>> arrival_window;
  std::optional<std::pair<TimePoint, TimePoint>> departure_window;
};

struct Station {
  std::string id;
  std::string name;
  std::vector<std::string> tracks;  // nonempty
  StationConstraints constraints;
};

// Directed; the opposite direction is a separate record. Segments sharing a
// resource id use the same physical tracks, matched by track id, which is how
// opposing traffic on single track enters the free-interval computation. The
// default resource is the unordered endpoint pair.
struct Segment {
  std::string id;
  std::string from;
  std::string to;
  std::vector<std::string> tracks;
  int blocks = 1;  // 1 = entry and exit of the segment are the same block
  std::string resource;
};

enum class TransitionDir : uint8_t { departing, arriving };

// Movement between a station track and a segment track through the gridiron.
struct Transition {
  std::string station;
  std::string station_track;
  std::string segment;
  std::string segment_track;
  TransitionDir dir = TransitionDir::departing;
  bool operator==(const Transition&) const = default;
  auto operator<=>(const Transition&) const = default;
};

std::string to_string(const Transition& t);

struct Network {
  std::vector<Station> stations;
  std::vector<Segment> segments;
  std::vector<Transition> transitions;
  std::vector<std::pair<int, int>> conflicts;  // indexes into transitions, symmetric closure

  std::unordered_map<std::string, int> station_index;
  std::unordered_map<std::string, int> segment_index;
  std::map<Transition, int> transition_index;

  // Built after the vectors are filled; validates references and fills indexes.
  void finalize();

  const Station& station(const std::string& id) const;
  const Segment& segment(const std::string& id) const;
  int transition_id(const Transition& t) const;  // -1 if undeclared
  // Transitions of one direction at a station; empty segment matches any.
  std::vector<int> transitions_at(const std::string& station, const std::string& segment,
                                  TransitionDir dir) const;
  // The transition itself plus every declared conflict partner.
  std::vector<int> conflict_set(int transition) const;
  std::vector<std::string> unreachable_stations() const;
};

struct TrainEvent {
  std::string station;
  TimePoint arrival;
  TimePoint departure;
  std::string track;
  // Segment and segment track towards the next event; resolved at load time
  // when not explicit in the document.
  std::string next_segment;
  std::string next_segment_track;
};

struct Train {
  std::string id;
  std::vector<TrainEvent> events;
};

// One train on one station track.
struct StationOccupation {
  int train = 0;  // index into Timetable::trains
  TimePoint arrival;
  TimePoint departure;
};

// One train on one physical segment track; direction is the directed segment
// the train actually used.
struct SegmentOccupation {
  int train = 0;
  int segment = 0;  // index into Network::segments
  TimePoint enter;
  TimePoint exit;
};

// An existing train crossing a declared transition.
struct TransitionMovement {
  int train = 0;
  TimePoint instant;            // departure time if dir == departing, else arrival
  TransitionDir kind = TransitionDir::departing;
};

struct Timetable {
  std::vector<Train> trains;

  // Derived, keyed by (station id, track id) / (resource id, track id) /
  // transition index; each list sorted by time.
  std::map<std::pair<std::string, std::string>, std::vector<StationOccupation>> station_use;
  std::map<std::pair<std::string, std::string>, std::vector<SegmentOccupation>> segment_use;
  std::map<int, std::vector<TransitionMovement>> transition_use;

  void derive(const Network& net);
  const Train& train(int i) const { return trains[size_t(i)]; }
};

// Margins relative to an existing train's event: the inserted train must act
// at least `after_existing` after it, or at least `before_existing` before it.
struct MarginPair {
  Duration after_existing;
  Duration before_existing;
};

enum class StoppingPattern : uint8_t { run_through = 0, stop = 1 };
inline char pattern_char(StoppingPattern p) { return p == StoppingPattern::stop ? 'S' : 'R'; }

// Pattern pair for one segment: pattern at the entry station, then at the exit
// station.
struct PatternPair {
  StoppingPattern at_from = StoppingPattern::run_through;
  StoppingPattern at_to = StoppingPattern::run_through;
  auto operator<=>(const PatternPair&) const = default;
  std::string label() const { return {pattern_char(at_from), pattern_char(at_to)}; }
};

struct ParameterSet {
  Duration headway_default{180};      // segments
  Duration station_default{180};      // station tracks
  Duration transition_default{180};   // transitions, general case
  Duration transition_block{60};      // existing arrival followed by inserted departure

  struct HeadwayEntry { std::string train, segment; MarginPair m; };
  struct StationEntry { std::string train, station, track; MarginPair m; };
  struct TransitionEntry {
    std::string train, station, station_track, segment, segment_track, dir;  // "*" wildcards
    MarginPair m;
  };
  std::vector<HeadwayEntry> headways;
  std::vector<StationEntry> station_margins;
  std::vector<TransitionEntry> transition_margins;
  std::map<std::pair<std::string, std::string>, Duration> run_times;  // (segment, "RR".."SS")

  MarginPair resolve_headway(const std::string& train, const std::string& segment) const;
  MarginPair resolve_station(const std::string& train, const std::string& station,
                             const std::string& track) const;
  // Kinds are the actions at the conflict: the existing train's and the
  // inserted train's. The short block margin applies when an arrival is
  // followed by a departure.
  MarginPair resolve_transition(const std::string& train, const Transition& of_inserted,
                                TransitionDir existing_kind) const;
  std::optional<Duration> run_time(const std::string& segment, PatternPair p) const;
  Duration require_run_time(const std::string& segment, PatternPair p) const;
};

struct InsertionRequest {
  std::string origin;
  std::string destination;
  TimePoint window_start;
  TimePoint window_end;
  int route_count = 3;
  std::set<std::string> no_stop;       // stations where stopping is forbidden
  std::set<std::string> require_stop;  // stations where running through is forbidden
};

// Thrown on malformed documents, with file/line context where available.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown on semantic problems: dangling references, broken invariants.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Loaders accept the line-oriented format or JSON (auto-detected).
Network load_network(const std::string& document);
Timetable load_timetable(const std::string& document, const Network& net);
ParameterSet load_parameters(const std::string& document, const Network& net);

std::string serialize_network(const Network& net);
std::string serialize_timetable(const Timetable& tt);
std::string serialize_parameters(const ParameterSet& ps);

// Informational review of the loaded artifacts: structural oddities and margin
// violations already present between existing trains. Never throws.
std::vector<std::string> validate(const Network& net, const Timetable& tt,
                                  const ParameterSet& ps);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pathinsert
