#include "gcdlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <stdexcept>

#include "gcdlab/version.hpp"

namespace gcdlab {

std::string format_cell(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_cell(std::uint64_t v) { return std::to_string(v); }
std::string format_cell(std::int64_t v) { return std::to_string(v); }
std::string format_cell(bool v) { return v ? "1" : "0"; }

std::string to_csv(const Report& report) {
    std::string out;
    out += "# gcdlab " GCDLAB_VERSION "\n";
    out += "# schema_version=" + std::to_string(GCDLAB_SCHEMA_VERSION) + "\n";
    out += "# command=" + report.command + "\n";
    for (const auto& [key, value] : report.config) out += "# " + key + "=" + value + "\n";

    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        if (c) out += ",";
        out += report.columns[c];
    }
    out += "\n";
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += row[c];
        }
        out += "\n";
    }
    for (const auto& [key, value] : report.footer) out += "# " + key + "=" + value + "\n";
    return out;
}

std::string to_json_text(const Report& report) {
    nlohmann::json j;
    j["gcdlab_version"] = GCDLAB_VERSION;
    j["schema_version"] = GCDLAB_SCHEMA_VERSION;
    j["command"] = report.command;
    nlohmann::json config = nlohmann::json::object();
    for (const auto& [key, value] : report.config) config[key] = value;
    j["config"] = config;
    j["columns"] = report.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size() && c < report.columns.size(); ++c)
            obj[report.columns[c]] = row[c];
        rows.push_back(obj);
    }
    j["rows"] = rows;
    nlohmann::json footer = nlohmann::json::object();
    for (const auto& [key, value] : report.footer) footer[key] = value;
    j["footer"] = footer;
    return j.dump(2) + "\n";
}

void write_report(const Report& report, const std::string& path, const std::string& format) {
    const std::string text = format == "json" ? to_json_text(report) : to_csv(report);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_report: cannot open " + path);
    out << text;
}

namespace {

const std::map<std::string, std::string>& schema_map() {
    static const std::map<std::string, std::string> schemas{
        {"lln", "ell,n,count,empirical,exact,reference,abs_diff"},
        {"exact", "n,ell,alpha,beta,sigma_n_sq,sigma_n_sq_over_n3,limit_variance,ratio"},
        {"clt", "n,replicas,ell,d,d_ks,baldi_bound,D_mode,dependency,vacuous"},
        {"ldp", "x,rate,lambda,iterations,converged"},
        {"squarefree", "n,exact_count,exact_density,mc_count,mc_density,reference,abs_diff"},
        {"squarefree-rate", "x,rate"},
        {"dgcd", "d,n,count,empirical,reference,abs_diff,replicas,ensemble_variance,variance_ratio"},
        {"coupling",
         "k1,k2,n,m,count,mismatches,mismatch_rate,rate_bound,chi2_stat,chi2_dof,chi2_pvalue"},
        {"tails",
         "measure,k1,k2,n,epsilon,replicas,exceedances,point_log_prob,ucb_log_prob,analytic_bound"},
    };
    return schemas;
}

}  // namespace

std::string report_schema(const std::string& format, const std::string& command) {
    if (format != "csv" && format != "json")
        throw std::domain_error("report_schema: unknown format " + format);
    const auto it = schema_map().find(command);
    if (it == schema_map().end())
        throw std::domain_error("report_schema: unknown command " + command);
    if (format == "csv") return it->second;

    nlohmann::json j;
    j["command"] = command;
    j["schema_version"] = GCDLAB_SCHEMA_VERSION;
    nlohmann::json fields = nlohmann::json::array();
    std::string col;
    for (char ch : it->second + ",") {
        if (ch == ',') {
            fields.push_back(col);
            col.clear();
        } else {
            col += ch;
        }
    }
    j["fields"] = fields;
    return j.dump();
}

std::vector<std::string> schema_commands() {
    std::vector<std::string> names;
    for (const auto& [name, cols] : schema_map()) names.push_back(name);
    return names;
}

}  // namespace gcdlab
