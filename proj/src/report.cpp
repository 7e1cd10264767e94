#include "vbc/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace vbc {

namespace {

std::string residualText(const CheckEntry& e) {
    if (!e.residual.theory() || e.residual.isZero()) return {};
    return e.residual.str();
}

} // namespace

std::string serialize(const Report& r, const ReportStyle& style) {
    if (style.format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["subject"] = r.subject;
        j["status"] = r.ok() ? "pass" : "fail";
        auto checks = nlohmann::ordered_json::array();
        for (const auto& e : r.entries) {
            nlohmann::ordered_json c;
            c["name"] = e.name;
            c["status"] = e.pass ? "pass" : "fail";
            if (auto res = residualText(e); !res.empty()) c["residual"] = res;
            if (!e.detail.empty()) c["detail"] = e.detail;
            if (style.timings) c["millis"] = e.millis;
            checks.push_back(std::move(c));
        }
        j["checks"] = std::move(checks);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "subject: " << r.subject << "\n";
    for (const auto& e : r.entries) {
        os << (e.pass ? "pass  " : "FAIL  ") << e.name << "\n";
        if (!e.detail.empty()) os << "      detail: " << e.detail << "\n";
        if (auto res = residualText(e); !res.empty()) os << "      residual: " << res << "\n";
        if (style.timings) os << "      time: " << std::fixed << std::setprecision(1) << e.millis << " ms\n";
    }
    os << "result: " << (r.ok() ? "pass" : "fail") << "\n";
    return os.str();
}

std::string failureSummary(const Report& r) {
    const CheckEntry* e = r.firstFailure();
    if (!e) return "all checks pass";
    std::string out = r.subject + ": " + e->name + " fails";
    if (auto res = residualText(*e); !res.empty()) out += ", residual " + res;
    if (!e->detail.empty()) out += " (" + e->detail + ")";
    return out;
}

} // namespace vbc
