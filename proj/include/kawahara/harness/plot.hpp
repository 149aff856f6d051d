#pragma once

// Bare-bones SVG line plots of CSV columns. Presentation only.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "kawahara/harness/csv.hpp"

namespace kawahara::harness {

/// Plots every numeric column of `t` against column `x` (log axes when all values are positive).
inline std::string svg_plot(const CsvTable& t, const std::string& x, const std::string& title) {
  constexpr double W = 640, H = 400, pad = 50;
  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const auto xs = t.column(x);
  std::vector<std::pair<std::string, std::vector<double>>> series;
  for (const auto& h : t.header()) {
    if (h == x) continue;
    auto col = t.column(h);
    if (col.size() == xs.size() && !col.empty()) series.emplace_back(h, std::move(col));
  }
  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return a > 0.0 && std::isfinite(a); });
  };
  const bool logx = positive(xs);
  bool logy = true;
  for (const auto& [_, v] : series) logy = logy && positive(v);
  auto tx = [&](double v) { return logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy ? std::log10(v) : v; };

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (double v : xs)
    if (std::isfinite(tx(v))) x0 = std::min(x0, tx(v)), x1 = std::max(x1, tx(v));
  for (const auto& [_, v] : series)
    for (double a : v)
      if (std::isfinite(ty(a))) y0 = std::min(y0, ty(a)), y1 = std::max(y1, ty(a));
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double v) { return pad + (tx(v) - x0) / (x1 - x0) * (W - 2 * pad); };
  auto py = [&](double v) { return H - pad - (ty(v) - y0) / (y1 - y0) * (H - 2 * pad); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_real(W) + "\" height=\"" +
                    format_real(H) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + format_real(pad) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
  svg += "<line x1=\"" + format_real(pad) + "\" y1=\"" + format_real(H - pad) + "\" x2=\"" + format_real(W - pad) +
         "\" y2=\"" + format_real(H - pad) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + format_real(pad) + "\" y1=\"" + format_real(pad) + "\" x2=\"" + format_real(pad) + "\" y2=\"" +
         format_real(H - pad) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + format_real(W / 2) + "\" y=\"" + format_real(H - 10) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
         x + (logx ? " (log)" : "") + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* colour = palette[k % 6];
    std::string pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double a = series[k].second[i];
      if (!std::isfinite(ty(a)) || !std::isfinite(tx(xs[i]))) continue;
      pts += format_real(px(xs[i])) + "," + format_real(py(a)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" points=\"" + pts + "\"/>\n";
    svg += "<text x=\"" + format_real(W - pad - 150) + "\" y=\"" + format_real(pad + 14.0 * k) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + colour + "\">" + series[k].first + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace kawahara::harness
