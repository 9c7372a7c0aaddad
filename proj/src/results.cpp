#include "hopskip/results.hpp"

#include <sstream>

#include "hopskip/errors.hpp"
#include "json.hpp"

namespace hopskip {
namespace {

using json = nlohmann::json;

const char* anchor_name(ScheduleAnchor a) {
  return a == ScheduleAnchor::fireability ? "fireability" : "execution_start";
}

ScheduleAnchor parse_anchor(const std::string& s) {
  if (s == "fireability") return ScheduleAnchor::fireability;
  if (s == "execution_start") return ScheduleAnchor::execution_start;
  throw SchemaError("unknown schedule anchor '" + s + "'");
}

Rational rational_of(const json& v, const char* field) {
  if (!v.is_string()) throw SchemaError(std::string("field '") + field + "' must be a \"num/den\" string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(std::string("field '") + field + "': " + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

json point_json(const ExploredPoint& p) {
  json j = {{"period", p.period.str()}, {"energy", p.energy.str()}, {"x", p.x.str()}};
  if (p.endpoint) j["endpoint"] = true;
  return j;
}

ExploredPoint point_of(const json& j) {
  ExploredPoint p;
  p.period = rational_of(require(j, "period"), "period");
  p.energy = rational_of(require(j, "energy"), "energy");
  p.x = DecisionVector::parse(require(j, "x").get<std::string>());
  p.endpoint = j.value("endpoint", false);
  return p;
}

json schedule_json(const ScheduleRecord& r) {
  json starts = json::array();
  for (std::size_t i = 0; i < r.actors.size(); ++i) {
    starts.push_back({{"actor", r.actors[i]}, {"start", r.schedule.starts.at(i).str()}});
  }
  return {{"x", r.x.str()},
          {"period", r.schedule.period.str()},
          {"anchor", anchor_name(r.schedule.anchor)},
          {"starts", starts}};
}

ScheduleRecord schedule_of(const json& j) {
  ScheduleRecord r;
  r.x = DecisionVector::parse(require(j, "x").get<std::string>());
  r.schedule.period = rational_of(require(j, "period"), "period");
  r.schedule.anchor = parse_anchor(j.value("anchor", std::string("fireability")));
  for (const json& s : require(j, "starts")) {
    r.actors.push_back(require(s, "actor").get<std::string>());
    r.schedule.starts.push_back(rational_of(require(s, "start"), "start"));
  }
  return r;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

void check_schema(const json& doc) {
  if (!doc.is_object() || require(doc, "schema") != 1) throw SchemaError("expected \"schema\": 1");
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == sep) {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

constexpr std::string_view kFrontHeader = "P_num,P_den,E_num,E_den,x_bits";

std::int64_t csv_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("line " + std::to_string(line) + ": '" + s + "' is not an integer");
  }
}

}  // namespace

std::string write_results(const ResultsDocument& doc, const WriteOptions& options) {
  json points = json::array();
  for (const auto& p : doc.points) points.push_back(point_json(p));
  json front = json::array();
  for (const auto& p : doc.front) front.push_back(point_json(p));
  json stats = {{"lp_calls", doc.stats.lp_calls},
                {"milp_calls", doc.stats.milp_calls},
                {"milp_nodes", doc.stats.milp_nodes}};
  if (options.include_timing) stats["seconds"] = doc.stats.seconds;

  json out = {{"schema", 1},     {"strategy", doc.strategy}, {"graph", doc.graph},
              {"points", points}, {"front", front},         {"stats", stats}};
  if (doc.epsilon) out["epsilon"] = doc.epsilon->str();
  if (doc.hypervolume_ratio) out["hypervolume_ratio"] = doc.hypervolume_ratio->str();
  if (doc.schedule) out["schedule"] = schedule_json(*doc.schedule);
  if (!doc.metadata.empty()) out["metadata"] = doc.metadata;
  return out.dump(2) + "\n";
}

ResultsDocument read_results(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_schema(doc);
  ResultsDocument r;
  try {
    r.strategy = require(doc, "strategy").get<std::string>();
    r.graph = doc.value("graph", std::string());
    if (doc.contains("epsilon")) r.epsilon = rational_of(doc["epsilon"], "epsilon");
    for (const json& p : require(doc, "points")) r.points.push_back(point_of(p));
    std::vector<ExploredPoint> front;
    for (const json& p : require(doc, "front")) front.push_back(point_of(p));
    r.front = Front(std::move(front));
    if (doc.contains("stats")) {
      const json& s = doc["stats"];
      r.stats.lp_calls = s.value("lp_calls", std::size_t{0});
      r.stats.milp_calls = s.value("milp_calls", std::size_t{0});
      r.stats.milp_nodes = s.value("milp_nodes", std::size_t{0});
      r.stats.seconds = s.value("seconds", 0.0);
    }
    if (doc.contains("hypervolume_ratio")) {
      r.hypervolume_ratio = rational_of(doc["hypervolume_ratio"], "hypervolume_ratio");
    }
    if (doc.contains("schedule")) r.schedule = schedule_of(doc["schedule"]);
    if (doc.contains("metadata")) r.metadata = doc["metadata"].get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("results file: ") + e.what());
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(std::string("results file: ") + e.what());
  }
  return r;
}

std::string write_schedule(const ScheduleRecord& record) {
  json out = schedule_json(record);
  out["schema"] = 1;
  return out.dump(2) + "\n";
}

ScheduleRecord read_schedule(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_schema(doc);
  try {
    return schedule_of(doc);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schedule file: ") + e.what());
  }
}

ScheduleRecord make_schedule_record(const MarkedGraph& g, const DecisionVector& x,
                                    const Schedule& schedule) {
  ScheduleRecord r{x, schedule, {}};
  for (const ActorSpec& a : g.actors()) r.actors.push_back(a.name);
  return r;
}

Schedule schedule_for_graph(const MarkedGraph& g, const ScheduleRecord& record) {
  if (record.actors.size() != record.schedule.starts.size()) {
    throw SchemaError("schedule has mismatched actor and start lists");
  }
  std::map<std::string, Rational, std::less<>> by_name;
  for (std::size_t i = 0; i < record.actors.size(); ++i) {
    if (!by_name.emplace(record.actors[i], record.schedule.starts[i]).second) {
      throw SchemaError("duplicate start for actor '" + record.actors[i] + "'");
    }
  }
  Schedule out{record.schedule.period, {}, record.schedule.anchor};
  for (const ActorSpec& a : g.actors()) {
    auto it = by_name.find(a.name);
    if (it == by_name.end()) throw SchemaError("no start time for actor '" + a.name + "'");
    out.starts.push_back(it->second);
    by_name.erase(it);
  }
  if (!by_name.empty()) throw SchemaError("start time for unknown actor '" + by_name.begin()->first + "'");
  return out;
}

std::string write_points_csv(const std::vector<ExploredPoint>& points) {
  std::ostringstream out;
  out << kFrontHeader << '\n';
  for (const auto& p : points) {
    out << p.period.num() << ',' << p.period.den() << ',' << p.energy.num() << ',' << p.energy.den()
        << ',' << p.x.str() << '\n';
  }
  return out.str();
}

std::string write_front_csv(const Front& front) { return write_points_csv(front.points()); }

std::vector<ExploredPoint> read_points_csv(std::string_view csv) {
  std::vector<ExploredPoint> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (split(line, ',') != split(kFrontHeader, ',')) throw SchemaError("unexpected CSV header");
      continue;
    }
    if (line.empty() || line == "\r") continue;
    auto cells = split(line, ',');
    if (cells.size() != 5) throw SchemaError("line " + std::to_string(line_no) + ": expected 5 columns");
    ExploredPoint p;
    try {
      p.period = Rational(csv_int(cells[0], line_no), csv_int(cells[1], line_no));
      p.energy = Rational(csv_int(cells[2], line_no), csv_int(cells[3], line_no));
      p.x = DecisionVector::parse(cells[4]);
    } catch (const InvalidArgumentError& e) {
      throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(p));
  }
  if (line_no == 0) throw SchemaError("empty CSV, header missing");
  return out;
}

Front read_front_csv(std::string_view csv) {
  try {
    return Front(read_points_csv(csv));
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(std::string("front file: ") + e.what());
  }
}

std::vector<GanttRow> gantt_rows(const MarkedGraph& g, const DecisionVector& x, const Schedule& schedule) {
  const Schedule fire = schedule.anchor == ScheduleAnchor::fireability
                            ? schedule
                            : reanchor(g, x, schedule, ScheduleAnchor::fireability);
  if (fire.starts.size() != g.actor_count()) throw DimensionMismatchError("one start time per actor is required");
  std::vector<GanttRow> rows;
  for (const ActorSpec& a : g.actors()) {
    for (const ProfileSegment& s : power_profile(a, x[a.group], fire.period, fire.starts[a.id])) {
      rows.push_back({a.name, s});
    }
  }
  return rows;
}

std::string write_gantt_csv(const std::vector<GanttRow>& rows) {
  std::ostringstream out;
  out << "actor,kind,start,duration,power\n";
  for (const auto& r : rows) {
    out << r.actor << ',' << phase_name(r.segment.kind) << ',' << r.segment.start << ','
        << r.segment.duration << ',' << r.segment.power << '\n';
  }
  return out.str();
}

}  // namespace hopskip
