#pragma once

#include <string>
#include <vector>

#include <lassopath/diagnostics.hpp>

namespace lassopath::tools {

// Minimal plot of the gamma, theta and l1 curves against lambda (log x-axis):
// axes and labelled polylines, no external renderer.
std::string curves_svg(const std::vector<DiagnosticsRow>& rows);

}  // namespace lassopath::tools
