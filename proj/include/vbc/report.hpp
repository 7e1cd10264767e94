#pragma once

#include <string>

#include "vbc/bv.hpp"

namespace vbc {

enum class ReportFormat { Text, Json };

struct ReportStyle {
    ReportFormat format = ReportFormat::Text;
    bool timings = false;
};

// Residuals print in the canonical term order of LocalForm, so equal inputs give equal bytes.
std::string serialize(const Report& r, const ReportStyle& style = {});

// One line naming the first failing check and its residual.
std::string failureSummary(const Report& r);

} // namespace vbc
