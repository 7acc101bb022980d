#include "elasto/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "elasto/grid.hpp"

namespace elasto {

namespace {

constexpr double kW = 720, kH = 420, kLeft = 80, kRight = 170, kTop = 40, kBottom = 50;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

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

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                       const std::vector<Series>& series, bool log_y) {
  auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
  auto usable = [&](double y) { return std::isfinite(y) && (!log_y || y > 0.0); };

  double x0 = x.empty() ? 0.0 : x.front(), x1 = x.empty() ? 1.0 : x.back();
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.y.size() && i < x.size(); ++i)
      if (usable(s.y[i])) {
        y0 = std::min(y0, ty(s.y[i]));
        y1 = std::max(y1, ty(s.y[i]));
      }
  if (!(y0 <= y1)) y0 = 0.0, y1 = 1.0;
  if (y1 - y0 < 1e-300) y0 -= 0.5, y1 += 0.5;
  if (x1 <= x0) x1 = x0 + 1.0;

  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - (v - y0) / (y1 - y0)) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%g", kW) + "\" height=\"" + fmt("%g", kH) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt("%g", kW / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
         "</text>\n";
  out += "<rect x=\"" + fmt("%g", kLeft) + "\" y=\"" + fmt("%g", kTop) + "\" width=\"" + fmt("%g", pw) +
         "\" height=\"" + fmt("%g", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = y0 + (y1 - y0) * i / 4.0, xv = x0 + (x1 - x0) * i / 4.0;
    const std::string ylab = log_y ? "1e" + fmt("%.1f", yv) : fmt("%.3g", yv);
    out += "<text x=\"" + fmt("%g", kLeft - 6) + "\" y=\"" + fmt("%.1f", py(yv) + 4) + "\" text-anchor=\"end\">" +
           ylab + "</text>\n";
    out += "<text x=\"" + fmt("%.1f", px(xv)) + "\" y=\"" + fmt("%g", kH - kBottom + 16) +
           "\" text-anchor=\"middle\">" + fmt("%.3g", xv) + "</text>\n";
  }
  out += "<text x=\"" + fmt("%g", kLeft + pw / 2) + "\" y=\"" + fmt("%g", kH - 10) + "\" text-anchor=\"middle\">" +
         escape(x_label) + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kColors[si % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < s.y.size() && i < x.size(); ++i) {
      if (!usable(s.y[i])) continue;
      pts += fmt("%.2f", px(x[i])) + "," + fmt("%.2f", py(ty(s.y[i]))) + " ";
    }
    out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" + std::string(color) + "\" points=\"" + pts +
           "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    out += "<line x1=\"" + fmt("%g", kW - kRight + 12) + "\" x2=\"" + fmt("%g", kW - kRight + 32) + "\" y1=\"" +
           fmt("%g", ly - 4) + "\" y2=\"" + fmt("%g", ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt("%g", kW - kRight + 38) + "\" y=\"" + fmt("%g", ly) + "\">" + escape(s.name) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("failed writing: " + path);
}

}  // namespace elasto
