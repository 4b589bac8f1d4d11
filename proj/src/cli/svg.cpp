#include "pwk/cli/svg.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>

#include "pwk/field/equilibria.hpp"
#include "pwk/flow/numeric_field.hpp"

namespace pwk::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double left, top, w, h;
  double X(double x) const { return left + (x - x0) / (x1 - x0) * w; }
  double Y(double y) const { return top + (y1 - y) / (y1 - y0) * h; }
};

using Scalar2 = std::function<double(double, double)>;

// Zero set of F on an n x n grid over the region where `inside` holds.
void marching_squares(std::ostringstream& os, const Frame& fr, int n, const Scalar2& F,
                      const std::function<bool(double, double)>& inside, const char* style) {
  const double dx = (fr.x1 - fr.x0) / n;
  const double dy = (fr.y1 - fr.y0) / n;
  std::vector<double> v(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j * (n + 1) + i)]; };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) at(i, j) = F(fr.x0 + i * dx, fr.y0 + j * dy);
  }
  std::ostringstream path;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double xc = fr.x0 + (i + 0.5) * dx;
      const double yc = fr.y0 + (j + 0.5) * dy;
      if (!inside(xc, yc)) continue;
      const double c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const double px[4] = {fr.x0 + i * dx, fr.x0 + (i + 1) * dx, fr.x0 + (i + 1) * dx, fr.x0 + i * dx};
      const double py[4] = {fr.y0 + j * dy, fr.y0 + j * dy, fr.y0 + (j + 1) * dy, fr.y0 + (j + 1) * dy};
      std::vector<std::pair<double, double>> hits;
      for (int e = 0; e < 4; ++e) {
        const int a = e;
        const int b = (e + 1) % 4;
        if ((c[a] < 0.0) != (c[b] < 0.0)) {
          const double s = c[a] / (c[a] - c[b]);
          hits.emplace_back(px[a] + s * (px[b] - px[a]), py[a] + s * (py[b] - py[a]));
        }
      }
      for (std::size_t k = 0; k + 1 < hits.size(); k += 2) {
        path << 'M' << num(fr.X(hits[k].first)) << ' ' << num(fr.Y(hits[k].second)) << 'L'
             << num(fr.X(hits[k + 1].first)) << ' ' << num(fr.Y(hits[k + 1].second));
      }
    }
  }
  const std::string d = path.str();
  if (!d.empty()) os << "<path d=\"" << d << "\" " << style << "/>\n";
}

const char* glyph_color(field::EquilibriumKind k) {
  using K = field::EquilibriumKind;
  switch (k) {
    case K::StableNode:
    case K::StableFocus: return "#1f77b4";
    case K::UnstableNode:
    case K::UnstableFocus: return "#d62728";
    case K::Saddle: return "#ff7f0e";
    case K::CenterCandidate: return "#2ca02c";
    case K::Degenerate: return "#7f7f7f";
  }
  return "#000000";
}

}  // namespace

std::string render_portrait(const field::Scenario& sc, const std::vector<flow::Trajectory>& orbits,
                            const PortraitStyle& style) {
  bool any = false;
  for (const auto& o : orbits) any = any || o.samples.size() >= 2;
  if (!any) throw InvalidArgument("no orbit to render");

  const auto& bb = sc.bbox;
  const double margin = 50.0;
  Frame fr{bb[0], bb[1], bb[2], bb[3], margin, margin, style.width - 2 * margin, style.height - 2 * margin};
  const flow::NumericSystem ns(sc.system);
  const double sigma = ns.sigma();
  const bool smooth = sc.system.is_smooth();

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- pwk " << kVersion << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.height
     << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
  os << "<title>" << sc.name << "</title>\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << num(fr.left) << "\" y=\"" << num(fr.top) << "\" width=\""
     << num(fr.w) << "\" height=\"" << num(fr.h) << "\"/></clipPath></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" style=\"fill:#ffffff\"/>\n";
  os << "<rect x=\"" << num(fr.left) << "\" y=\"" << num(fr.top) << "\" width=\"" << num(fr.w) << "\" height=\""
     << num(fr.h) << "\" style=\"fill:none;stroke:#000000;stroke-width:1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = bb[0] + i * (bb[1] - bb[0]) / 4;
    const double y = bb[2] + i * (bb[3] - bb[2]) / 4;
    os << "<text x=\"" << num(fr.X(x)) << "\" y=\"" << num(fr.top + fr.h + 18)
       << "\" style=\"font:11px sans-serif;text-anchor:middle\">" << num(x) << "</text>\n";
    os << "<text x=\"" << num(fr.left - 6) << "\" y=\"" << num(fr.Y(y) + 4)
       << "\" style=\"font:11px sans-serif;text-anchor:end\">" << num(y) << "</text>\n";
  }
  os << "<text x=\"" << num(fr.left + fr.w / 2) << "\" y=\"" << num(fr.top - 18)
     << "\" style=\"font:14px sans-serif;text-anchor:middle\">" << sc.name << "</text>\n";
  os << "<g clip-path=\"url(#plot)\">\n";

  // Nullclines, per zone region.
  for (int z = 1; z <= (smooth ? 1 : 2); ++z) {
    const auto& zone = sc.system.zone(z);
    auto inside = [&, z](double x, double) { return smooth || (z == 1 ? x < sigma : x > sigma); };
    Scalar2 fx, gy;
    if (zone.is_kolmogorov()) {
      auto f = std::make_shared<algebra::NumericPoly2>(zone.f());
      auto g = std::make_shared<algebra::NumericPoly2>(zone.g());
      fx = [f](double x, double y) { return (*f)(x, y); };
      gy = [g](double x, double y) { return (*g)(x, y); };
    } else {
      const flow::NumericZone& nz = ns.zone(z);
      fx = [&nz](double x, double y) { return nz.P(x, y); };
      gy = [&nz](double x, double y) { return nz.Q(x, y); };
    }
    marching_squares(os, fr, style.nullcline_grid, fx, inside,
                     "style=\"fill:none;stroke:#17becf;stroke-width:1.2;stroke-dasharray:5,3\"");
    marching_squares(os, fr, style.nullcline_grid, gy, inside,
                     "style=\"fill:none;stroke:#bcbd22;stroke-width:1.2;stroke-dasharray:5,3\"");
  }

  // Separation line and its sliding / escaping parts.
  if (!smooth && sigma > bb[0] && sigma < bb[1]) {
    os << "<line x1=\"" << num(fr.X(sigma)) << "\" y1=\"" << num(fr.top) << "\" x2=\"" << num(fr.X(sigma))
       << "\" y2=\"" << num(fr.top + fr.h) << "\" style=\"stroke:#444444;stroke-width:1;stroke-dasharray:2,2\"/>\n";
    const int n = style.sigma_samples;
    int run_kind = 0;
    double run_start = 0.0;
    auto flush = [&](double y_end) {
      if (run_kind == 0) return;
      const char* color = run_kind == 1 ? "#9467bd" : "#8c564b";
      os << "<line x1=\"" << num(fr.X(sigma)) << "\" y1=\"" << num(fr.Y(run_start)) << "\" x2=\""
         << num(fr.X(sigma)) << "\" y2=\"" << num(fr.Y(y_end)) << "\" style=\"stroke:" << color
         << ";stroke-width:5;stroke-linecap:round\"/>\n";
    };
    for (int i = 0; i <= n; ++i) {
      const double y = bb[2] + i * (bb[3] - bb[2]) / n;
      const double a = ns.zone(1).P(sigma, y);
      const double b = ns.zone(2).P(sigma, y);
      const int kind = (a > 0.0 && b < 0.0) ? 1 : (a < 0.0 && b > 0.0) ? 2 : 0;
      if (kind != run_kind) {
        flush(y);
        run_kind = kind;
        run_start = y;
      }
    }
    flush(bb[3]);
  }

  // Orbits.
  for (const auto& o : orbits) {
    if (o.samples.size() < 2) continue;
    std::ostringstream d;
    bool first = true;
    for (const auto& s : o.samples) {
      d << (first ? 'M' : 'L') << num(fr.X(s.x)) << ' ' << num(fr.Y(s.y));
      first = false;
    }
    os << "<path d=\"" << d.str() << "\" style=\"fill:none;stroke:#222222;stroke-width:0.9\"/>\n";
  }

  // Equilibria of each zone inside its own region (virtual ones are skipped).
  std::vector<std::pair<double, double>> drawn;
  for (int z = 1; z <= (smooth ? 1 : 2); ++z) {
    for (const auto& e : field::equilibria(sc.system.zone(z))) {
      const bool mine = smooth || (z == 1 ? e.x <= sigma + 1e-12 : e.x >= sigma - 1e-12);
      if (!mine || e.x < bb[0] || e.x > bb[1] || e.y < bb[2] || e.y > bb[3]) continue;
      bool dup = false;
      for (const auto& p : drawn) dup = dup || (std::abs(p.first - e.x) < 1e-9 && std::abs(p.second - e.y) < 1e-9);
      if (dup) continue;
      drawn.emplace_back(e.x, e.y);
      os << "<circle cx=\"" << num(fr.X(e.x)) << "\" cy=\"" << num(fr.Y(e.y)) << "\" r=\"5\" style=\"fill:"
         << glyph_color(e.kind) << ";stroke:#000000;stroke-width:0.8\"><title>" << field::to_string(e.kind)
         << "</title></circle>\n";
    }
  }
  os << "</g>\n";

  // Legend.
  const char* labels[][2] = {{"#1f77b4", "stable"}, {"#d62728", "unstable"}, {"#ff7f0e", "saddle"},
                             {"#2ca02c", "center?"}, {"#9467bd", "sliding"}, {"#8c564b", "escaping"}};
  for (int i = 0; i < 6; ++i) {
    const double lx = fr.left + 10 + i * 100;
    os << "<rect x=\"" << num(lx) << "\" y=\"" << num(fr.top + fr.h + 28) << "\" width=\"10\" height=\"10\" style=\"fill:"
       << labels[i][0] << "\"/><text x=\"" << num(lx + 14) << "\" y=\"" << num(fr.top + fr.h + 37)
       << "\" style=\"font:11px sans-serif\">" << labels[i][1] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pwk::cli
