#include "tmr/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace tmr {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<OutputFormat> format_from_name(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "tsv") return OutputFormat::Tsv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

double round_half_up(double value, int digits) {
  double scale = std::pow(10.0, digits);
  return std::floor(value * scale + 0.5) / scale;
}

std::string format_fixed(double value, int digits) {
  // Scale, round half-up, then print digit by digit so the displayed value
  // is exactly the rounded one.
  double scale = std::pow(10.0, digits);
  long long scaled = static_cast<long long>(std::floor(value * scale + 0.5));
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  long long ipart = scaled / static_cast<long long>(scale);
  long long fpart = scaled % static_cast<long long>(scale);
  std::ostringstream out;
  if (negative) out << '-';
  out << ipart;
  if (digits > 0) {
    out << '.' << std::setw(digits) << std::setfill('0') << fpart;
  }
  return out.str();
}

std::string format_count(long value) {
  std::string digits = std::to_string(value);
  std::string out;
  int since_sep = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (since_sep == 3 && std::isdigit(static_cast<unsigned char>(*it))) {
      out.push_back(',');
      since_sep = 0;
    }
    out.push_back(*it);
    ++since_sep;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

struct SubsetRow {
  const char* name;
  long SubsetCounts::*count;
};

constexpr SubsetRow kCompositionRows[] = {
    {"Unseen-Any", &SubsetCounts::unseen_any},
    {"Unseen-Tokens", &SubsetCounts::unseen_tokens},
    {"Unseen-Type", &SubsetCounts::unseen_type},
    {"TCM-All", &SubsetCounts::tcm_all},
    {"TCM-Seen", &SubsetCounts::tcm_seen},
    {"TCM-Unseen", &SubsetCounts::tcm_unseen},
};

std::string pct_cell(long count, long total, int digits) {
  if (total == 0) return kUndefinedCell;
  return format_fixed(100.0 * static_cast<double>(count) /
                          static_cast<double>(total),
                      digits);
}

void print_table(std::ostream& out,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t i = 0; i < row.size(); ++i) {
      // The em dash is 3 bytes but one display column.
      size_t w = row[i] == kUndefinedCell ? 1 : row[i].size();
      widths[i] = std::max(widths[i], w);
    }
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      size_t w = row[i] == kUndefinedCell ? 1 : row[i].size();
      if (i == 0) {
        out << row[i] << std::string(widths[i] - w, ' ');
      } else {
        out << "  " << std::string(widths[i] - w, ' ') << row[i];
      }
    }
    out << '\n';
  }
}

void print_tsv(std::ostream& out,
               const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      out << row[i];
    }
    out << '\n';
  }
}

}  // namespace

void render_composition(std::ostream& out, const CompositionTable& table,
                        OutputFormat format) {
  std::vector<std::string> columns = table.types;
  columns.push_back("ALL");
  auto counts_for = [&](const std::string& col) -> const SubsetCounts& {
    return col == "ALL" ? table.all : table.per_type.at(col);
  };

  if (format == OutputFormat::Json) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "composition";
    doc["types"] = table.types;
    ordered_json cols = ordered_json::object();
    for (const auto& col : columns) {
      const SubsetCounts& c = counts_for(col);
      ordered_json entry;
      entry["total"] = c.total;
      for (const auto& row : kCompositionRows) {
        long n = c.*(row.count);
        entry["subsets"][row.name]["count"] = n;
        if (c.total > 0) {
          double pct = 100.0 * static_cast<double>(n) /
                       static_cast<double>(c.total);
          entry["subsets"][row.name]["pct"] = pct;
          entry["subsets"][row.name]["pct_rounded"] = round_half_up(pct, 1);
        } else {
          entry["subsets"][row.name]["pct"] = nullptr;
          entry["subsets"][row.name]["pct_rounded"] = nullptr;
        }
      }
      cols[col] = entry;
    }
    doc["columns"] = cols;
    out << doc.dump(2) << '\n';
    return;
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Set"};
  header.insert(header.end(), columns.begin(), columns.end());
  rows.push_back(header);
  for (const auto& row : kCompositionRows) {
    std::vector<std::string> line = {row.name};
    for (const auto& col : columns) {
      const SubsetCounts& c = counts_for(col);
      line.push_back(pct_cell(c.*(row.count), c.total, 1));
    }
    rows.push_back(line);
  }
  std::vector<std::string> totals = {"All (Count)"};
  for (const auto& col : columns) {
    long t = counts_for(col).total;
    totals.push_back(format == OutputFormat::Text ? format_count(t)
                                                  : std::to_string(t));
  }
  rows.push_back(totals);

  if (format == OutputFormat::Text)
    print_table(out, rows);
  else
    print_tsv(out, rows);
}

namespace {

std::string recall_cell(const SubsetRecall& r) {
  auto pct = r.recall_pct();
  std::string value = pct ? format_fixed(*pct, 2) : std::string(kUndefinedCell);
  return value + " (" + format_count(r.size) + ")";
}

std::string agg_value_cell(const AggCell& cell) {
  return format_fixed(cell.mean, 2) + " (±" + format_fixed(cell.std_dev, 2) +
         ")";
}

std::string agg_recall_cell(const AggSubsetCell& cell) {
  std::string value =
      cell.recall ? agg_value_cell(*cell.recall) : std::string(kUndefinedCell);
  return value + " (" + format_count(cell.size) + ")";
}

template <typename PrfLike, typename PrfCellFn>
std::vector<std::vector<std::string>> prf_rows(
    const PrfLike& overall, const std::map<std::string, PrfLike>& per_type,
    const std::vector<std::string>& gold_types, PrfCellFn cell) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Type", "Prec", "Rec", "F1"});
  auto add = [&](const std::string& name, const PrfLike& prf) {
    rows.push_back({name, cell(prf, 0), cell(prf, 1), cell(prf, 2)});
  };
  add("ALL", overall);
  for (const auto& t : gold_types) {
    auto it = per_type.find(t);
    if (it != per_type.end()) add(t, it->second);
  }
  return rows;
}

// Types present in the test gold, by descending mention count then name,
// taken from the per-type subset sizes (types seen only in predictions are
// counted but get no section of their own).
template <typename SubsetsMap>
std::vector<std::string> gold_type_order(const SubsetsMap& per_type_subsets) {
  std::vector<std::string> types;
  for (const auto& [etype, recalls] : per_type_subsets) types.push_back(etype);
  auto size_of = [&](const std::string& t) {
    const auto& recalls = per_type_subsets.at(t);
    return recalls[0].size;  // Subset::All
  };
  std::sort(types.begin(), types.end(),
            [&](const std::string& a, const std::string& b) {
              long ca = size_of(a), cb = size_of(b);
              if (ca != cb) return ca > cb;
              return a < b;
            });
  return types;
}

template <typename SubsetsLike, typename CellFn>
std::vector<std::vector<std::string>> subset_rows(
    const SubsetsLike& overall,
    const std::map<std::string, SubsetsLike>& per_type,
    const std::vector<std::string>& gold_types, CellFn cell) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Subset"};
  for (const auto& t : gold_types) header.push_back(t);
  header.push_back("ALL");
  rows.push_back(header);
  for (size_t s = 0; s < kNumSubsets; ++s) {
    std::vector<std::string> line = {subset_name(kAllSubsets[s])};
    for (const auto& t : gold_types) line.push_back(cell(per_type.at(t)[s]));
    line.push_back(cell(overall[s]));
    rows.push_back(line);
  }
  return rows;
}

ordered_json subset_json(const SubsetRecall& r) {
  ordered_json cell;
  cell["size"] = r.size;
  auto pct = r.recall_pct();
  if (pct) {
    cell["recall"] = *pct;
    cell["recall_rounded"] = round_half_up(*pct, 2);
  } else {
    cell["recall"] = nullptr;
    cell["recall_rounded"] = nullptr;
  }
  return cell;
}

ordered_json agg_cell_json(const AggCell& cell) {
  ordered_json j;
  j["mean"] = cell.mean;
  j["std"] = cell.std_dev;
  j["n"] = cell.n;
  j["mean_rounded"] = round_half_up(cell.mean, 2);
  j["std_rounded"] = round_half_up(cell.std_dev, 2);
  return j;
}

}  // namespace

void render_report(std::ostream& out, const MetricReport& report,
                   OutputFormat format) {
  std::vector<std::string> gold_types = gold_type_order(report.per_type_subsets);

  if (format == OutputFormat::Json) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "score";
    doc["n_runs"] = 1;
    auto prf_json = [](const Prf& prf) {
      ordered_json j;
      j["precision"] = prf.precision;
      j["recall"] = prf.recall;
      j["f1"] = prf.f1;
      j["precision_rounded"] = round_half_up(prf.precision, 2);
      j["recall_rounded"] = round_half_up(prf.recall, 2);
      j["f1_rounded"] = round_half_up(prf.f1, 2);
      return j;
    };
    doc["overall"] = prf_json(report.overall);
    doc["per_type"] = ordered_json::object();
    for (const auto& [etype, prf] : report.per_type)
      doc["per_type"][etype] = prf_json(prf);
    for (size_t s = 0; s < kNumSubsets; ++s)
      doc["subset_recall"][subset_name(kAllSubsets[s])] =
          subset_json(report.subsets[s]);
    doc["per_type_subset_recall"] = ordered_json::object();
    for (const auto& t : gold_types)
      for (size_t s = 0; s < kNumSubsets; ++s)
        doc["per_type_subset_recall"][t][subset_name(kAllSubsets[s])] =
            subset_json(report.per_type_subsets.at(t)[s]);
    out << doc.dump(2) << '\n';
    return;
  }

  auto prf_cell = [](const Prf& prf, int which) {
    double v = which == 0 ? prf.precision : which == 1 ? prf.recall : prf.f1;
    return format_fixed(v, 2);
  };
  auto rows = prf_rows(report.overall, report.per_type, gold_types, prf_cell);
  auto srows = subset_rows(report.subsets, report.per_type_subsets, gold_types,
                           [](const SubsetRecall& r) { return recall_cell(r); });
  if (format == OutputFormat::Text) {
    print_table(out, rows);
    out << '\n';
    print_table(out, srows);
  } else {
    print_tsv(out, rows);
    out << '\n';
    print_tsv(out, srows);
  }
}

void render_aggregate(std::ostream& out, const AggregateReport& report,
                      OutputFormat format) {
  std::vector<std::string> gold_types = gold_type_order(report.per_type_subsets);

  if (format == OutputFormat::Json) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "score_aggregate";
    doc["n_runs"] = report.n;
    auto prf_json = [](const AggPrf& prf) {
      ordered_json j;
      j["precision"] = agg_cell_json(prf.precision);
      j["recall"] = agg_cell_json(prf.recall);
      j["f1"] = agg_cell_json(prf.f1);
      return j;
    };
    doc["overall"] = prf_json(report.overall);
    doc["per_type"] = ordered_json::object();
    for (const auto& [etype, prf] : report.per_type)
      doc["per_type"][etype] = prf_json(prf);
    auto subset_cell = [](const AggSubsetCell& cell) {
      ordered_json j;
      j["size"] = cell.size;
      if (cell.recall)
        j["recall"] = agg_cell_json(*cell.recall);
      else
        j["recall"] = nullptr;
      return j;
    };
    for (size_t s = 0; s < kNumSubsets; ++s)
      doc["subset_recall"][subset_name(kAllSubsets[s])] =
          subset_cell(report.subsets[s]);
    doc["per_type_subset_recall"] = ordered_json::object();
    for (const auto& t : gold_types)
      for (size_t s = 0; s < kNumSubsets; ++s)
        doc["per_type_subset_recall"][t][subset_name(kAllSubsets[s])] =
            subset_cell(report.per_type_subsets.at(t)[s]);
    out << doc.dump(2) << '\n';
    return;
  }

  auto prf_cell = [](const AggPrf& prf, int which) {
    const AggCell& c =
        which == 0 ? prf.precision : which == 1 ? prf.recall : prf.f1;
    return agg_value_cell(c);
  };
  auto rows = prf_rows(report.overall, report.per_type, gold_types, prf_cell);
  auto srows =
      subset_rows(report.subsets, report.per_type_subsets, gold_types,
                  [](const AggSubsetCell& c) { return agg_recall_cell(c); });
  if (format == OutputFormat::Text) {
    print_table(out, rows);
    out << '\n';
    print_table(out, srows);
  } else {
    print_tsv(out, rows);
    out << '\n';
    print_tsv(out, srows);
  }
}

void render_classification(std::ostream& out,
                           const std::vector<Mention>& test_gold,
                           const SubsetAssignment& assignment,
                           OutputFormat format) {
  std::vector<size_t> order(test_gold.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const Mention& ma = test_gold[a];
    const Mention& mb = test_gold[b];
    return std::tie(ma.doc, ma.sent, ma.start) <
           std::tie(mb.doc, mb.sent, mb.start);
  });

  auto join = [](const std::vector<std::string>& tokens) {
    std::string text;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i) text += ' ';
      text += tokens[i];
    }
    return text;
  };

  if (format == OutputFormat::Json) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "classify";
    doc["mentions"] = ordered_json::array();
    for (size_t i : order) {
      const Mention& m = test_gold[i];
      const SubsetLabel& label = assignment.labels[i];
      ordered_json rec;
      rec["doc"] = m.doc;
      rec["sent"] = m.sent;
      rec["start"] = m.start;
      rec["end"] = m.end;
      rec["type"] = m.etype;
      rec["tokens"] = m.tokens;
      rec["unseen_class"] = unseen_class_name(label.unseen);
      rec["tcm_class"] = tcm_class_name(label.tcm);
      doc["mentions"].push_back(rec);
    }
    out << doc.dump(2) << '\n';
    return;
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back(
      {"doc", "sent", "start", "end", "type", "tokens", "unseen", "tcm"});
  for (size_t i : order) {
    const Mention& m = test_gold[i];
    const SubsetLabel& label = assignment.labels[i];
    rows.push_back({std::to_string(m.doc), std::to_string(m.sent),
                    std::to_string(m.start), std::to_string(m.end), m.etype,
                    join(m.tokens), unseen_class_name(label.unseen),
                    tcm_class_name(label.tcm)});
  }
  if (format == OutputFormat::Text)
    print_table(out, rows);
  else
    print_tsv(out, rows);
}

}  // namespace tmr
