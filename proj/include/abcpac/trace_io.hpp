#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "abcpac/bounds.hpp"
#include "abcpac/smc.hpp"

namespace abcpac {

/// Shortest decimal text that parses back to the same double ("%.17g").
std::string format_double(double v);

/// Header `step,lambda,ess,accept_rate,M,log_z,theta_mean_1..d,theta_sd_1..d`.
/// `dim` fixes the column count when the trace is empty.
void write_trace_csv(std::ostream& os, const LadderTrace& trace, std::size_t dim);
/// Header `step,particle,weight,theta_1..d`; weights are normalized per snapshot.
void write_snapshots_csv(std::ostream& os, std::span<const Snapshot> snapshots, std::size_t dim);

/// Parses the trace CSV written by write_trace_csv. Throws InvalidInputError with the
/// offending line number on malformed input.
LadderTrace read_trace_csv(std::istream& is);

/// Header `lambda,beta,value,<component names...>,provenance`; every report in a
/// table must carry the same component names in the same order. Non-empty `labels`
/// (one per report) add a leading `row` column.
void write_bound_csv(std::ostream& os, std::span<const BoundReport> reports,
                     std::span<const std::string> labels = {});

/// Header `name,value` for named addends.
void write_components_csv(std::ostream& os, std::span<const BoundComponent> components);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace abcpac
