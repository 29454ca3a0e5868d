#pragma once

// The mortgage running example: 6000 applicants in group 0, 2000 in the
// protected group 1, at three operating points.

#include "fairaudit/confusion.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace fairaudit {

enum class RunningPoint { A, B, C };

// Accepts "A", "B", "C" (case-insensitive); throws Error otherwise.
RunningPoint parse_running_point(std::string_view name);

struct RunningExample {
  RunningPoint point{};
  std::array<GroupConfusion, 2> counts;
  // Group 0 then group 1; within a group TP, FN, FP, TN blocks.
  std::vector<Record> records;
  // Published derived values, written out independently of the counts.
  PopulationStats expected;
};

RunningExample generate_running_example(RunningPoint point);

}  // namespace fairaudit
