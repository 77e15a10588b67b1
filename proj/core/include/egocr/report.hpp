#pragma once

#include <string>
#include <string_view>

#include "egocr/study.hpp"

namespace egocr {

/// Renders a study report as "csv" (columns design, estimand, metric, value;
/// shortest round-trip decimals) or "markdown" (one row per design, three
/// decimals, rates in percent). Throws Error for an unknown format or a
/// report without designs.
std::string emit_report(const SimReport& report, std::string_view format);

}  // namespace egocr
