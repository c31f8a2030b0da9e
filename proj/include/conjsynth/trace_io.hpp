#pragma once

#include "conjsynth/trace.hpp"

#include <iosfwd>
#include <string>

namespace conjsynth {

// Trace CSV: a header row whose first column is `time`, then one column per
// variable. Times must start at 0 and be uniformly spaced (relative tolerance
// 1e-6 of the step).

Trace read_trace_csv(std::istream& in);
Trace read_trace_csv_file(const std::string& path);

void write_trace_csv(std::ostream& out, const Trace& trace);

} // namespace conjsynth
