#include "dislab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dislab/error.hpp"

namespace dislab::svg {

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double pad = std::max(1e-3, 0.05 * std::abs(hi));
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double w = spec.width - left - right;
  const double h = spec.height - top - bottom;
  Range rx, ry;
  for (const Series& s : series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
  }
  rx.finish();
  ry.finish();
  const auto px = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * w; };
  const auto py = [&](double y) { return top + (1.0 - (y - ry.lo) / (ry.hi - ry.lo)) * h; };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
                    "\" height=\"" + std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(spec.width / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(spec.title) + "</text>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    out += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(top + h + 16) + "\" text-anchor=\"middle\">" + num(fx) +
           "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(fy) + 4) + "\" text-anchor=\"end\">" + num(fy) +
           "</text>\n";
  }
  out += "<text x=\"" + num(left + w / 2) + "\" y=\"" + num(spec.height - 10.0) + "\" text-anchor=\"middle\">" +
         escape(spec.xlabel) + "</text>\n";
  out += "<text x=\"14\" y=\"" + num(top + h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         num(top + h / 2) + ")\">" + escape(spec.ylabel) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kColors[k % 5];
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += (pts.empty() ? "" : " ") + num(px(s.x[i])) + "," + num(py(s.y[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
           "\"/>\n";
    out += "<text x=\"" + num(left + w - 6) + "\" y=\"" + num(top + 16.0 + 14.0 * static_cast<double>(k)) +
           "\" text-anchor=\"end\" fill=\"" + color + "\">" + escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

PlotKind plot_kind_from_string(const std::string& s) {
  if (s == "energy") return PlotKind::energy;
  if (s == "defect") return PlotKind::defect;
  if (s == "profile") return PlotKind::profile;
  throw ParseError("unknown plot kind '" + s + "' (expected energy, defect or profile)");
}

std::string plot_table(const io::CsvTable& table, PlotKind kind) {
  const auto column = [&](std::size_t c) {
    std::vector<double> v(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) v[r] = table.number(r, c);
    return v;
  };
  switch (kind) {
    case PlotKind::energy: {
      io::require_columns(table, {"t", "E"});
      return line_plot({"Total energy", "t", "E"}, {{"E(t+)", column(0), column(1)}});
    }
    case PlotKind::defect: {
      io::require_columns(table, {"t", "defect", "traceR", "slack"});
      const auto t = column(0);
      return line_plot({"Energy defect and compatibility slack", "t", "value"},
                       {{"defect", t, column(1)}, {"trace R", t, column(2)}, {"slack", t, column(3)}});
    }
    case PlotKind::profile: {
      io::require_columns(table, {"i", "rho", "mx"});
      const auto i = column(0);
      return line_plot({"Profile", "cell", "value"}, {{"rho", i, column(1)}, {"mx", i, column(2)}});
    }
  }
  throw DomainError("unknown plot kind");
}

}  // namespace dislab::svg
