// Copyright 2026 The plearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace plearn::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // optional, same length as y
  bool markers = true;
  bool line = false;
};

/// Static line/scatter plot with optional error bars.
std::string line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series);

/// Vertical bars with optional error bars.
std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::vector<double>& errors);

/// Filled cells of a 2-D grid mask plus a boundary point cloud.
std::string region_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel, double x0,
                        double x1, double y0, double y1, int cells, const std::vector<unsigned char>& mask,
                        const std::vector<std::pair<double, double>>& boundary,
                        const std::vector<std::pair<double, double>>& marks);

}  // namespace plearn::svg
