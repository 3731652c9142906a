#include "secpur/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "secpur/serialize.hpp"

namespace secpur {

namespace {

constexpr double kPanel = 320.0;
constexpr double kMargin = 20.0;
constexpr double kTitle = 28.0;

const char* const kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Polar grid and boundary for a panel centred at (cx, cy) with `scale` pixels per unit.
void draw_grid(std::ostringstream& os, double cx, double cy, double scale, const PolarGrid& grid) {
  os << "<g class=\"grid\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 1; i < grid.radial_edges().size(); ++i) {
    const double r = grid.radial_edges()[i] * scale;
    os << "<ellipse cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(r) << "\" ry=\"" << num(r)
       << "\"/>\n";
  }
  for (int j = 0; j < grid.k_theta(); ++j) {
    const double t = grid.angular_edges()[static_cast<std::size_t>(j)];
    const double r = grid.radius() * scale;
    os << "<line x1=\"" << num(cx) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(cx + r * std::cos(t))
       << "\" y2=\"" << num(cy - r * std::sin(t)) << "\"/>\n";
  }
  os << "</g>\n";
  const double r = grid.radius() * scale;
  os << "<ellipse class=\"boundary\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(r)
     << "\" ry=\"" << num(r) << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_slice_svg(const Dataset& data, const Frame& frame, double h, const PolarGrid& grid,
                             const std::string& title) {
  const SliceAssignment sa = center_projection(slice(data, frame, h));
  const double width = 3 * kPanel + 4 * kMargin;
  const double height = kPanel + 2 * kMargin + kTitle;
  const double scale = (kPanel / 2 - 4) / grid.radius();

  std::map<std::string, std::size_t> colour_of;
  for (const auto& l : data.labels) colour_of.emplace(l, colour_of.size());
  auto colour = [&](int i) {
    if (data.labels.empty()) return kPalette[0];
    return kPalette[colour_of.at(data.labels[static_cast<std::size_t>(i)]) % std::size(kPalette)];
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << num(kMargin) << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
     << "</text>\n";

  const double cy = kTitle + kMargin + kPanel / 2;
  const char* panel_names[] = {"slice", "projection"};
  for (int panel = 0; panel < 2; ++panel) {
    const double cx = kMargin + panel * (kPanel + kMargin) + kPanel / 2;
    draw_grid(os, cx, cy, scale, grid);
    long count = 0;
    for (int i = 0; i < data.n(); ++i) {
      if (panel == 1 || sa.inside[static_cast<std::size_t>(i)]) ++count;
    }
    os << "<g class=\"points\" data-panel=\"" << panel_names[panel] << "\" data-count=\"" << count << "\">\n";
    for (int i = 0; i < data.n(); ++i) {
      if (panel == 0 && !sa.inside[static_cast<std::size_t>(i)]) continue;
      os << "<circle cx=\"" << num(cx + sa.projected(i, 0) * scale) << "\" cy=\""
         << num(cy - sa.projected(i, 1) * scale) << "\" r=\"1.5\" fill=\"" << colour(i) << "\"/>\n";
    }
    os << "</g>\n";
    os << "<text x=\"" << num(cx - kPanel / 2) << "\" y=\"" << num(kTitle + kMargin - 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << panel_names[panel] << " (" << count
       << " points)</text>\n";
  }

  // axis guides: each variable's contribution to the two frame directions
  const double ax = kMargin + 2 * (kPanel + kMargin) + kPanel / 2;
  const double ar = kPanel / 2 - 30;
  os << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"10\">\n"
     << "<ellipse cx=\"" << num(ax) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(ar) << "\" ry=\"" << num(ar)
     << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  for (int j = 0; j < frame.dim(); ++j) {
    const double x = ax + frame.basis()(j, 0) * ar;
    const double y = cy - frame.basis()(j, 1) * ar;
    const std::string name = data.columns.empty() ? "x" + std::to_string(j + 1) : data.columns[static_cast<std::size_t>(j)];
    os << "<line x1=\"" << num(ax) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(x) << "\" y2=\"" << num(y)
       << "\" stroke=\"#333333\"/>\n"
       << "<text x=\"" << num(x + 3) << "\" y=\"" << num(y - 3) << "\">" << escape(name) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_topotrace_svg(const TopotraceSet& tset, const std::string& title) {
  const double width = 640, height = 400, left = 50, right = 20, top = 40, bottom = 40;
  double amax = 0.0, vmax = 0.0;
  for (const auto& tr : tset.traces) {
    for (const auto& pt : tr) {
      amax = std::max(amax, std::abs(pt.alpha));
      vmax = std::max(vmax, pt.index.value);
    }
  }
  if (amax == 0.0) amax = 1.0;
  if (vmax == 0.0) vmax = 1.0;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double a) { return left + (a + amax) / (2 * amax) * pw; };
  auto sy = [&](double v) { return top + ph - v / vmax * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
     << "</text>\n"
     << "<g stroke=\"#444444\">\n"
     << "<line x1=\"" << left << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw) << "\" y2=\""
     << num(top + ph) << "\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << num(top + ph) << "\"/>\n"
     << "</g>\n"
     << "<g font-family=\"sans-serif\" font-size=\"10\">\n"
     << "<text x=\"" << num(sx(-amax)) << "\" y=\"" << num(height - 20) << "\">" << format_number(-amax) << "</text>\n"
     << "<text x=\"" << num(sx(0)) << "\" y=\"" << num(height - 20) << "\">0</text>\n"
     << "<text x=\"" << num(sx(amax) - 30) << "\" y=\"" << num(height - 20) << "\">" << format_number(amax)
     << "</text>\n"
     << "<text x=\"" << num(left + pw / 2 - 20) << "\" y=\"" << num(height - 6) << "\">alpha</text>\n"
     << "<text x=\"4\" y=\"" << num(top + 4) << "\">" << format_number(vmax) << "</text>\n"
     << "<text x=\"4\" y=\"" << num(top + ph) << "\">0</text>\n"
     << "</g>\n"
     << "<g class=\"traces\" fill=\"none\" stroke=\"#1b9e77\" stroke-opacity=\"0.35\" stroke-width=\"1\" data-count=\""
     << tset.traces.size() << "\">\n";
  for (const auto& tr : tset.traces) {
    os << "<polyline points=\"";
    for (std::size_t k = 0; k < tr.size(); ++k) {
      if (k > 0) os << ' ';
      os << num(sx(tr[k].alpha)) << ',' << num(sy(tr[k].index.value));
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace secpur
