#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ctsep/cli.hpp"

namespace ctsep::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

namespace {

nlohmann::json scan_row_json(const ScanRow& r) {
    nlohmann::json j = {{"x", r.x},       {"y", r.y}, {"p_xy", r.p_xy}, {"a_sign", r.a_sign},
                        {"on_hyperbola", r.on_hyperbola}, {"tag", r.tag}};
    if (r.margin) j["margin"] = *r.margin;
    return j;
}

nlohmann::json range_json(const Range& r) { return {{"lo", r.lo}, {"hi", r.hi}, {"steps", r.steps}}; }

} // namespace

std::string render_scan(const ScanConfig& config, const std::vector<ScanRow>& rows) {
    if (config.format == OutputFormat::json) {
        nlohmann::json doc;
        doc["meta"] = {{"d1", config.shape.d1},
                       {"d2", config.shape.d2},
                       {"grid", {{"x", range_json(config.x_range)}, {"y", range_json(config.y_range)}}}};
        if (config.p) doc["meta"]["p"] = *config.p;
        doc["rows"] = nlohmann::json::array();
        for (const auto& r : rows) doc["rows"].push_back(scan_row_json(r));
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "x,y,p_xy,a_sign,on_hyperbola,tag";
    if (config.p) out << ",margin";
    out << '\n';
    for (const auto& r : rows) {
        out << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.p_xy) << ',' << r.a_sign
            << ',' << (r.on_hyperbola ? 1 : 0) << ',' << r.tag;
        if (config.p) out << ',' << (r.margin ? format_double(*r.margin) : std::string());
        out << '\n';
    }
    return out.str();
}

std::string render_sweep(int d1_max, int d2_max, const std::vector<SweepRow>& rows, OutputFormat format) {
    if (format == OutputFormat::json) {
        nlohmann::json doc;
        doc["meta"] = {{"d1_max", d1_max}, {"d2_max", d2_max}};
        doc["rows"] = nlohmann::json::array();
        for (const auto& r : rows) {
            doc["rows"].push_back({{"d1", r.d1},
                                   {"d2", r.d2},
                                   {"p_dv_minus_p_er", r.dv_minus_er},
                                   {"p_e_minus_p_er", r.e_minus_er},
                                   {"p_f_minus_p_er", r.f_minus_er},
                                   {"p_r_minus_p_er", r.r_minus_er}});
        }
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "d1,d2,p_dv_minus_p_er,p_e_minus_p_er,p_f_minus_p_er,p_r_minus_p_er\n";
    for (const auto& r : rows) {
        out << r.d1 << ',' << r.d2 << ',' << format_double(r.dv_minus_er) << ',' << format_double(r.e_minus_er)
            << ',' << format_double(r.f_minus_er) << ',' << format_double(r.r_minus_er) << '\n';
    }
    return out.str();
}

namespace {

struct NamedValue {
    const char* name;
    double ThresholdSet::*field;
};

constexpr NamedValue kThresholdFields[] = {
    {"p_ppt", &ThresholdSet::p_ppt}, {"p_dv", &ThresholdSet::p_dv}, {"p_r", &ThresholdSet::p_r},
    {"p_f", &ThresholdSet::p_f},     {"p_e", &ThresholdSet::p_e},   {"p_er", &ThresholdSet::p_er},
    {"p_min", &ThresholdSet::p_min}};

} // namespace

std::string render_thresholds(const ThresholdTable& table, TableFormat format) {
    std::ostringstream out;
    switch (format) {
    case TableFormat::json: {
        nlohmann::json doc;
        doc["meta"] = {{"d1", table.shape.d1}, {"d2", table.shape.d2}};
        doc["rows"] = nlohmann::json::array();
        for (const auto& f : kThresholdFields) {
            const double a = table.analytic.*f.field;
            const double n = table.numeric.*f.field;
            doc["rows"].push_back({{"name", f.name}, {"analytic", a}, {"numeric", n}, {"abs_diff", std::abs(a - n)}});
        }
        doc["max_abs_diff"] = table.max_abs_diff;
        return doc.dump(2) + "\n";
    }
    case TableFormat::csv:
        out << "name,analytic,numeric,abs_diff\n";
        for (const auto& f : kThresholdFields) {
            const double a = table.analytic.*f.field;
            const double n = table.numeric.*f.field;
            out << f.name << ',' << format_double(a) << ',' << format_double(n) << ',' << format_double(std::abs(a - n))
                << '\n';
        }
        return out.str();
    case TableFormat::text:
        break;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "thresholds for d1=%d, d2=%d\n", table.shape.d1, table.shape.d2);
    out << line;
    std::snprintf(line, sizeof(line), "%-8s %22s %22s %12s\n", "name", "analytic", "numeric", "|diff|");
    out << line;
    for (const auto& f : kThresholdFields) {
        const double a = table.analytic.*f.field;
        const double n = table.numeric.*f.field;
        std::snprintf(line, sizeof(line), "%-8s %22.17g %22.17g %12.3e\n", f.name, a, n, std::abs(a - n));
        out << line;
    }
    std::snprintf(line, sizeof(line), "max |analytic - numeric| = %.3e\n", table.max_abs_diff);
    out << line;
    return out.str();
}

} // namespace ctsep::cli
