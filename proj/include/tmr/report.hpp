#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tmr/aggregate.hpp"
#include "tmr/scoring.hpp"
#include "tmr/taxonomy.hpp"

namespace tmr {

enum class OutputFormat { Text, Tsv, Json };

std::optional<OutputFormat> format_from_name(const std::string& name);

// Display rounding, half-up. Aggregation and identities always run on the
// raw values; rounding happens only here.
double round_half_up(double value, int digits);
std::string format_fixed(double value, int digits);
std::string format_count(long value);  // 5648 -> "5,648"

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kUndefinedCell = "—";

void render_composition(std::ostream& out, const CompositionTable& table,
                        OutputFormat format);

void render_report(std::ostream& out, const MetricReport& report,
                   OutputFormat format);

void render_aggregate(std::ostream& out, const AggregateReport& report,
                      OutputFormat format);

// One record per test gold mention, ordered by (doc, sent, start).
void render_classification(std::ostream& out,
                           const std::vector<Mention>& test_gold,
                           const SubsetAssignment& assignment,
                           OutputFormat format);

}  // namespace tmr
