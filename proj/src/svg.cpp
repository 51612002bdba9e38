#include "rwg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rwg/errors.hpp"

namespace rwg {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<PlotSeries>& series) {
  const double w = 640, h = 420, ml = 64, mr = 24, mt = 40, mb = 48;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const PlotSeries& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
       "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + fmt(w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + title +
       "</text>\n";
  // axes
  o += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(h - mb) + "\" x2=\"" + fmt(w - mr) + "\" y2=\"" +
       fmt(h - mb) + "\" stroke=\"black\"/>\n";
  o += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
       fmt(h - mb) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fx = xmin + (xmax - xmin) * t / 4.0;
    double fy = ymin + (ymax - ymin) * t / 4.0;
    o += "<text x=\"" + fmt(sx(fx)) + "\" y=\"" + fmt(h - mb + 18) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + fmt(fx) + "</text>\n";
    o += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(sy(fy) + 4) +
         "\" text-anchor=\"end\" font-size=\"11\">" + fmt(fy) + "</text>\n";
    o += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(sy(fy)) + "\" x2=\"" + fmt(w - mr) + "\" y2=\"" +
         fmt(sy(fy)) + "\" stroke=\"#dddddd\"/>\n";
  }
  o += "<text x=\"" + fmt((ml + w - mr) / 2) + "\" y=\"" + fmt(h - 10) +
       "\" text-anchor=\"middle\" font-size=\"12\">" + x_label + "</text>\n";
  o += "<text x=\"16\" y=\"" + fmt((mt + h - mb) / 2) +
       "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
       fmt((mt + h - mb) / 2) + ")\">" + y_label + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kColors[si % 6];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i)
      points += fmt(sx(s.x[i])) + "," + fmt(sy(s.y[i])) + " ";
    o += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" +
         points + "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      o += "<circle cx=\"" + fmt(sx(s.x[i])) + "\" cy=\"" + fmt(sy(s.y[i])) +
           "\" r=\"3\" fill=\"" + color + "\"/>\n";
    o += "<text x=\"" + fmt(w - mr - 8) + "\" y=\"" + fmt(mt + 16.0 * si + 4) +
         "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + color + "\">" + s.label + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

void write_line_plot(const std::string& path, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<PlotSeries>& series) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("write_line_plot: cannot open " + path);
  f << render_line_plot(title, x_label, y_label, series);
}

}  // namespace rwg
