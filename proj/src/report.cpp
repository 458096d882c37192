#include "gg/report.hpp"

#include <iomanip>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace gg {

using nlohmann::json;

OutputFormat parse_format(std::string_view s)
{
    if (s == "json")
        return OutputFormat::json;
    if (s == "csv")
        return OutputFormat::csv;
    if (s == "text")
        return OutputFormat::text;
    throw std::invalid_argument("unknown output format: " + std::string(s));
}

std::string to_string(OutputFormat f)
{
    switch (f) {
    case OutputFormat::json:
        return "json";
    case OutputFormat::csv:
        return "csv";
    case OutputFormat::text:
        return "text";
    }
    return "?";
}

std::string format_params(const CheckParams& p)
{
    std::string out;
    for (const auto& [k, v] : p) {
        if (!out.empty())
            out += ';';
        out += k + "=" + std::to_string(v);
    }
    return out;
}

std::string emit_json(const std::vector<VerificationReport>& reports)
{
    json checks = json::array();
    for (const VerificationReport& r : reports) {
        json c;
        c["id"] = r.id;
        c["params"] = json::object();
        for (const auto& [k, v] : r.params)
            c["params"][k] = v;
        c["order2"] = r.order2;
        c["status"] = to_string(r.status);
        if (r.first_mismatch)
            c["first_mismatch"] = r.first_mismatch->to_string();
        c["elapsed_ms"] = r.elapsed_ms;
        checks.push_back(std::move(c));
    }
    json doc;
    doc["version"] = kReportVersion;
    doc["checks"] = std::move(checks);
    return doc.dump(2) + "\n";
}

std::vector<VerificationReport> parse_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("checks") || !doc["checks"].is_array())
        throw std::invalid_argument("report: expected an object with a 'checks' array");
    if (doc.value("version", 0) != kReportVersion)
        throw std::invalid_argument("report: unsupported version");
    std::vector<VerificationReport> out;
    try {
        for (const json& c : doc["checks"]) {
            VerificationReport r;
            r.id = c.at("id").get<std::string>();
            for (const auto& [k, v] : c.at("params").items())
                r.params[k] = v.get<int>();
            r.order2 = c.at("order2").get<int>();
            r.status = parse_status(c.at("status").get<std::string>());
            if (c.contains("first_mismatch"))
                r.first_mismatch = Mismatch::parse(c["first_mismatch"].get<std::string>());
            r.elapsed_ms = c.at("elapsed_ms").get<double>();
            if (r.status == CheckStatus::fail && !r.first_mismatch)
                throw std::invalid_argument("report: failed check '" + r.id + "' has no first_mismatch");
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
    return out;
}

std::string emit_csv(const std::vector<VerificationReport>& reports)
{
    // the mismatch field contains commas, hence the quoting
    std::ostringstream os;
    os << "id,params,order2,status,first_mismatch,elapsed_ms\n";
    for (const VerificationReport& r : reports) {
        os << r.id << ',' << format_params(r.params) << ',' << r.order2 << ',' << to_string(r.status) << ',';
        if (r.first_mismatch)
            os << '"' << r.first_mismatch->to_string() << '"';
        os << ',' << std::fixed << std::setprecision(3) << r.elapsed_ms << '\n';
    }
    return os.str();
}

std::string emit_text(const std::vector<VerificationReport>& reports)
{
    std::ostringstream os;
    int failed = 0;
    for (const VerificationReport& r : reports) {
        os << std::left << std::setw(10) << r.id << ' ' << std::setw(4) << to_string(r.status);
        if (!r.params.empty())
            os << "  [" << format_params(r.params) << ']';
        if (r.order2 > 0)
            os << "  order2=" << r.order2;
        os << "  " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms";
        if (r.first_mismatch)
            os << "\n           first mismatch: " << r.first_mismatch->to_string();
        os << '\n';
        failed += r.status == CheckStatus::fail;
    }
    os << reports.size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed\n";
    return os.str();
}

std::string emit(const std::vector<VerificationReport>& reports, OutputFormat f)
{
    switch (f) {
    case OutputFormat::json:
        return emit_json(reports);
    case OutputFormat::csv:
        return emit_csv(reports);
    case OutputFormat::text:
        return emit_text(reports);
    }
    return {};
}

}  // namespace gg
