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

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace plearn::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void widen(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1e-12, std::abs(lo) * 0.05);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  const double bx = kLeft, by = kHeight - kBottom, tx = kWidth - kRight, ty = kTop;
  os << "<polyline fill=\"none\" stroke=\"black\" points=\"" << bx << ',' << ty << ' ' << bx << ',' << by << ' ' << tx
     << ',' << by << "\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0, yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << by + 16 << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << bx - 6 << "\" y=\"" << num(f.py(yv) + 4) << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << (bx + tx) / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">" << escape(xlabel)
     << "</text>\n";
  os << "<text transform=\"rotate(-90)\" x=\"" << -(by + ty) / 2 << "\" y=\"16\" text-anchor=\"middle\">"
     << escape(ylabel) << "</text>\n";
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Series& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double e = i < s.err.size() ? s.err[i] : 0.0;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i] - e);
      y1 = std::max(y1, s.y[i] + e);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  widen(x0, x1);
  widen(y0, y1);
  Frame f{x0, x1, y0, y1};
  std::ostringstream os;
  header(os, title);
  axes(os, f, xlabel, ylabel);
  for (size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    if (s.line && !s.x.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (size_t i = 0; i < s.x.size(); ++i) os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
      os << "\"/>\n";
    }
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (i < s.err.size() && s.err[i] > 0) {
        os << "<line stroke=\"" << color << "\" x1=\"" << num(f.px(s.x[i])) << "\" x2=\"" << num(f.px(s.x[i]))
           << "\" y1=\"" << num(f.py(s.y[i] - s.err[i])) << "\" y2=\"" << num(f.py(s.y[i] + s.err[i])) << "\"/>\n";
      }
      if (s.markers) {
        os << "<circle r=\"3\" fill=\"" << color << "\" cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(s.y[i]))
           << "\"/>\n";
      }
    }
    os << "<text fill=\"" << color << "\" x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 14 * (k + 1)
       << "\" text-anchor=\"end\">" << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::vector<double>& errors) {
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double e = i < errors.size() ? errors[i] : 0.0;
    y0 = std::min(y0, values[i] - e);
    y1 = std::max(y1, values[i] + e);
  }
  if (!std::isfinite(y0)) y0 = 0, y1 = 1;
  widen(y0, y1);
  const double nb = static_cast<double>(std::max<size_t>(1, values.size()));
  Frame f{0.0, nb, y0, y1};
  std::ostringstream os;
  header(os, title);
  axes(os, f, "", "");
  const double slot = (kWidth - kLeft - kRight) / nb;
  for (size_t i = 0; i < values.size(); ++i) {
    const double cx = f.px(static_cast<double>(i) + 0.5);
    const double top = f.py(values[i]), base = f.py(std::clamp(0.0, y0, y1));
    os << "<rect fill=\"" << kColors[0] << "\" x=\"" << num(cx - 0.35 * slot) << "\" width=\"" << num(0.7 * slot)
       << "\" y=\"" << num(std::min(top, base)) << "\" height=\"" << num(std::abs(base - top)) << "\"/>\n";
    if (i < errors.size() && errors[i] > 0) {
      os << "<line stroke=\"black\" x1=\"" << num(cx) << "\" x2=\"" << num(cx) << "\" y1=\""
         << num(f.py(values[i] - errors[i])) << "\" y2=\"" << num(f.py(values[i] + errors[i])) << "\"/>\n";
    }
    os << "<text transform=\"rotate(-60 " << num(cx) << ' ' << kHeight - kBottom + 12 << ")\" x=\"" << num(cx)
       << "\" y=\"" << kHeight - kBottom + 12 << "\" text-anchor=\"end\" font-size=\"9\">"
       << escape(i < labels.size() ? labels[i] : "") << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string region_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel, double x0,
                        double x1, double y0, double y1, int cells, const std::vector<unsigned char>& mask,
                        const std::vector<std::pair<double, double>>& boundary,
                        const std::vector<std::pair<double, double>>& marks) {
  double fx0 = x0, fx1 = x1, fy0 = y0, fy1 = y1;
  widen(fx0, fx1);
  widen(fy0, fy1);
  Frame f{fx0, fx1, fy0, fy1};
  std::ostringstream os;
  header(os, title);
  axes(os, f, xlabel, ylabel);
  // Coarsen the mask to at most 100 x 100 drawn cells.
  const int step = std::max(1, cells / 100);
  const double dx = cells > 1 ? (x1 - x0) / (cells - 1) : 0.0, dy = cells > 1 ? (y1 - y0) / (cells - 1) : 0.0;
  for (int j = 0; j < cells; j += step) {
    for (int i = 0; i < cells; i += step) {
      if (!mask[static_cast<size_t>(j) * static_cast<size_t>(cells) + static_cast<size_t>(i)]) continue;
      const double cx = x0 + i * dx, cy = y0 + j * dy;
      const double w = std::max(1.0, std::abs(f.px(cx + step * dx) - f.px(cx)));
      const double h = std::max(1.0, std::abs(f.py(cy) - f.py(cy + step * dy)));
      os << "<rect fill=\"#c6dbef\" x=\"" << num(f.px(cx) - w / 2) << "\" y=\"" << num(f.py(cy) - h / 2)
         << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\"/>\n";
    }
  }
  for (const auto& [bx, by] : boundary) {
    os << "<circle r=\"1\" fill=\"#08519c\" cx=\"" << num(f.px(bx)) << "\" cy=\"" << num(f.py(by)) << "\"/>\n";
  }
  for (const auto& [mx, my] : marks) {
    os << "<circle r=\"4\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" cx=\"" << num(f.px(mx)) << "\" cy=\""
       << num(f.py(my)) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace plearn::svg
