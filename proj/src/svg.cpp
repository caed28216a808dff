#include "wscale/svg.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace wscale {

namespace {

// Plot rectangle inside the 560x520 canvas; y runs upward in data space.
constexpr double kLeft = 70.0, kTop = 30.0, kSize = 400.0;

double px(double fpr) { return kLeft + fpr * kSize; }
double py(double tpr) { return kTop + kSize - tpr * kSize; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_roc_svg(const std::vector<RocCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("svg: no curves to plot");

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"520\" "
       "viewBox=\"0 0 560 520\">\n"
    << "<rect width=\"560\" height=\"520\" fill=\"white\"/>\n";

  // Frame, ticks and tick labels at 0, 0.25, 0.5, 0.75, 1.
  s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kSize)
    << "\" height=\"" << num(kSize) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = 0.25 * i;
    s << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(py(0) + 0) << "\" x2=\""
      << num(px(v)) << "\" y2=\"" << num(py(0) + 6) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(px(v)) << "\" y=\"" << num(py(0) + 22)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << num(v) << "</text>\n"
      << "<line x1=\"" << num(kLeft - 6) << "\" y1=\"" << num(py(v)) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(py(v)) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(py(v) + 4)
      << "\" font-size=\"12\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  s << "<text x=\"" << num(kLeft + kSize / 2) << "\" y=\"" << num(py(0) + 45)
    << "\" font-size=\"14\" text-anchor=\"middle\">1 - specificity (FPR)</text>\n"
    << "<text x=\"18\" y=\"" << num(kTop + kSize / 2)
    << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << num(kTop + kSize / 2) << ")\">sensitivity (TPR)</text>\n";

  // Chance diagonal.
  s << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(1))
    << "\" y2=\"" << num(py(1)) << "\" stroke=\"#999999\" stroke-dasharray=\"6,4\"/>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % kPaletteSize];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curves[c].points.size(); ++i) {
      if (i > 0) s << ' ';
      s << num(px(curves[c].points[i].fpr)) << ',' << num(py(curves[c].points[i].tpr));
    }
    s << "\"/>\n";
  }

  // Legend, lower right of the plot area where ROC curves rarely reach.
  const double lx = kLeft + kSize - 150.0;
  double ly = kTop + kSize - 16.0 * static_cast<double>(curves.size()) - 12.0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % kPaletteSize];
    s << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24)
      << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
      << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
      << "\" font-size=\"12\">" << xml_escape(curves[c].name) << "</text>\n";
    ly += 16.0;
  }

  s << "</svg>\n";
  return s.str();
}

}  // namespace wscale
