#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopskip/dse.hpp"
#include "hopskip/energy.hpp"
#include "hopskip/graph.hpp"
#include "hopskip/timing.hpp"

namespace hopskip {

/// A schedule together with the configuration it was computed for. Starts
/// are keyed by actor name so a file stays readable next to its graph.
struct ScheduleRecord {
  DecisionVector x;
  Schedule schedule;
  std::vector<std::string> actors;
};

struct ResultsDocument {
  std::string strategy;
  std::string graph;
  std::optional<Rational> epsilon;
  std::vector<ExploredPoint> points;
  Front front;
  ExplorationStats stats;
  std::optional<Rational> hypervolume_ratio;
  std::optional<ScheduleRecord> schedule;
  std::map<std::string, std::string> metadata;
};

struct WriteOptions {
  /// Wall-clock time differs run to run; leave it out for golden files.
  bool include_timing = true;
};

/// JSON with "schema": 1; rationals as "num/den" strings.
std::string write_results(const ResultsDocument& doc, const WriteOptions& options = {});
/// Throws SchemaError on a missing field or a wrong schema version.
ResultsDocument read_results(std::string_view json_text);

std::string write_schedule(const ScheduleRecord& record);
ScheduleRecord read_schedule(std::string_view json_text);
/// Builds a record for g; start times keep the schedule's anchor.
ScheduleRecord make_schedule_record(const MarkedGraph& g, const DecisionVector& x,
                                    const Schedule& schedule);
/// Maps named starts onto g's actor order. Throws SchemaError when an actor
/// is missing or unknown.
Schedule schedule_for_graph(const MarkedGraph& g, const ScheduleRecord& record);

/// Columns P_num,P_den,E_num,E_den,x_bits; header only for an empty set.
std::string write_points_csv(const std::vector<ExploredPoint>& points);
std::string write_front_csv(const Front& front);
std::vector<ExploredPoint> read_points_csv(std::string_view csv);
Front read_front_csv(std::string_view csv);

struct GanttRow {
  std::string actor;
  ProfileSegment segment;
};

/// One period of every actor's power profile, starting at its fireability
/// instant under the given schedule.
std::vector<GanttRow> gantt_rows(const MarkedGraph& g, const DecisionVector& x, const Schedule& schedule);
/// Columns actor,kind,start,duration,power.
std::string write_gantt_csv(const std::vector<GanttRow>& rows);

}  // namespace hopskip
