#include "rankone/report.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "rankone/errors.hpp"

namespace rankone {

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json" || s == "jsonl") return ReportFormat::Jsonl;
    throw DomainError("format must be csv or json (got '" + s + "')");
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell_to_string(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) return fmt_g17(v.get<double>());
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string render_report(const Report& report, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Csv) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(report.columns[i]);
        }
        out += '\n';
        for (const Row& row : report.rows) {
            for (std::size_t i = 0; i < report.columns.size(); ++i) {
                if (i) out += ',';
                auto it = row.find(report.columns[i]);
                if (it != row.end()) out += csv_escape(cell_to_string(*it));
            }
            out += '\n';
        }
    } else {
        for (const Row& row : report.rows) {
            out += row.dump();
            out += '\n';
        }
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.good()) throw DomainError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

std::string resolve_out_path(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    const char* dir = std::getenv("RANKONE_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    return (std::filesystem::path(dir) / p).string();
}

std::vector<Row> run_ordered(std::size_t n, int jobs, const std::function<Row(std::size_t)>& fn) {
    std::vector<Row> out(n);
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) return;
                    out[i] = fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                next.store(n);  // drain remaining work
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace rankone
