#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rankone {

using Row = nlohmann::ordered_json;

enum class ReportFormat { Csv, Jsonl };

ReportFormat report_format_from_string(const std::string& s);

struct Report {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

/// %.17g, locale-free; all report numbers go through this so reruns are
/// byte-identical.
std::string fmt_g17(double v);

/// Serializes to CSV ('.' decimal separator) or newline-delimited JSON.
std::string render_report(const Report& report, ReportFormat format);

/// Write-then-rename so failures never leave partial files.
void write_file_atomic(const std::string& path, const std::string& content);

/// Prefix relative paths with $RANKONE_OUT_DIR when set.
std::string resolve_out_path(const std::string& path);

/// Runs fn(0..n-1) on a bounded worker pool; results land in input order.
std::vector<Row> run_ordered(std::size_t n, int jobs, const std::function<Row(std::size_t)>& fn);

}  // namespace rankone
