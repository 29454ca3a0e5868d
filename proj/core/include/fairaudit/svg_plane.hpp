#pragma once

// SVG rendering of the FPR-TPR plane: unit square, grid, dashed chance line,
// performance lines clipped to the square, ROC curves and operating points.
// Output is byte-stable for identical input.

#include "fairaudit/compatibility.hpp"
#include "fairaudit/confusion.hpp"
#include "fairaudit/roc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

struct PlotLine {
  PerformanceLine line;
  std::string label;  // defaults to "p=..., q*=..."
};

struct PlotCurve {
  RocCurve curve;
  std::string label;
};

struct PlotPoint {
  PlanePoint point;
  std::optional<GroupLabel> group;
  std::string annotation;  // e.g. measure gaps
};

struct PlotSpec {
  std::string title;
  std::vector<PlotLine> lines;
  std::vector<PlotCurve> curves;
  std::vector<PlotPoint> points;
  bool chance_line = true;
};

std::string render_plane(const PlotSpec& spec);

// Segment of the line inside the unit square, if it meets the square in
// more than one point.
std::optional<std::array<std::array<double, 2>, 2>> clip_to_unit_square(
    const PerformanceLine& line);

// {"title": ..., "chance_line": true,
//  "lines": [{"p": "1/3", "q": 0.3, "label": ...}],
//  "curves": [{"label": ..., "points": [[0,0],[0.1,0.7],[1,1]]}],
//  "points": [{"fpr": 0.3, "tpr": 0.3, "group": 1, "annotation": ...}]}
// Numbers may be JSON numbers or exact strings ("1/3"). Throws Error.
PlotSpec plot_spec_from_json(const std::string& text);

}  // namespace fairaudit
