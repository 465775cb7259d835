#pragma once

#include <iosfwd>
#include <string>

#include "porpi/planner/episode.hpp"

namespace porpi {

/// Line-delimited JSON: a header record, one record per executed macro, and
/// a summary record.
void write_trace(std::ostream& out, const EpisodeTrace& trace);
void write_trace_file(const std::string& path, const EpisodeTrace& trace);
EpisodeTrace read_trace(std::istream& in);
EpisodeTrace read_trace_file(const std::string& path);

}  // namespace porpi
