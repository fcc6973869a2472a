#include "polytri/export.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "polytri/error.hpp"

namespace polytri::exporter {

namespace {

std::string number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string number(const Rational& r) { return number(r.get_d()); }

// Vertices of a polygon (a 2-cell in any ambient dimension) in cyclic order.
VertexSet cyclic(const PolyComplex& c, const VertexSet& ids) {
  std::vector<Point> pts;
  for (auto id : ids) pts.push_back(c.point(id));
  const AffineFrame frame(pts);
  std::vector<std::pair<double, double>> xy;
  double cx = 0, cy = 0;
  for (const auto& p : pts) {
    const Point y = *frame.coordinates(p);
    xy.emplace_back(y[0].get_d(), y[1].get_d());
    cx += xy.back().first;
    cy += xy.back().second;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::atan2(xy[a].second - cy, xy[a].first - cx) < std::atan2(xy[b].second - cy, xy[b].first - cx);
  });
  VertexSet out;
  for (auto i : order) out.push_back(ids[i]);
  return out;
}

}  // namespace

std::string to_off(const PolyComplex& complex) {
  if (complex.ambient_dim() > 3) {
    throw Error(ErrorCode::UnsupportedDimension, "OFF export needs ambient dimension at most 3");
  }
  std::map<VertexId, std::size_t> index;
  for (const auto& [id, p] : complex.vertices()) index.emplace(id, index.size());
  std::vector<VertexSet> faces;
  for (auto m : complex.maximal_cells()) {
    const auto& cell = complex.cell(m);
    if (cell.dim == 2) faces.push_back(cyclic(complex, cell.vertices));
    if (cell.dim != 3) continue;
    for (auto f : complex.faces_of(m)) {
      if (complex.cell(f).dim == 2) faces.push_back(cyclic(complex, complex.cell(f).vertices));
    }
  }
  std::ostringstream os;
  os << "OFF\n" << complex.vertices().size() << " " << faces.size() << " 0\n";
  for (const auto& [id, p] : complex.vertices()) {
    for (std::size_t k = 0; k < 3; ++k) os << (k ? " " : "") << (k < p.size() ? number(p[k]) : "0");
    os << "\n";
  }
  for (const auto& f : faces) {
    os << f.size();
    for (auto id : f) os << " " << index.at(id);
    os << "\n";
  }
  return os.str();
}

std::string to_svg(const PolyComplex& complex) {
  if (complex.ambient_dim() > 2) {
    throw Error(ErrorCode::UnsupportedDimension, "SVG export needs ambient dimension at most 2");
  }
  auto xy = [&](VertexId id) {
    const Point& p = complex.point(id);
    return std::pair<double, double>{p[0].get_d(), p.size() > 1 ? p[1].get_d() : 0.0};
  };
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const auto& [id, p] : complex.vertices()) {
    const auto [x, y] = xy(id);
    if (first) {
      x0 = x1 = x;
      y0 = y1 = y;
      first = false;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double scale = 400.0 / span;
  auto sx = [&](double x) { return number(20.0 + (x - x0) * scale); };
  auto sy = [&](double y) { return number(20.0 + (y1 - y) * scale); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"440\">\n";
  for (auto m : complex.maximal_cells()) {
    const auto& cell = complex.cell(m);
    if (cell.dim == 2) {
      os << "  <polygon points=\"";
      bool sep = false;
      for (auto id : cyclic(complex, cell.vertices)) {
        const auto [x, y] = xy(id);
        os << (sep ? " " : "") << sx(x) << "," << sy(y);
        sep = true;
      }
      os << "\" fill=\"#dde6f0\" stroke=\"#203040\" stroke-width=\"1\"/>\n";
    } else if (cell.dim == 1) {
      const auto [xa, ya] = xy(cell.vertices[0]);
      const auto [xb, yb] = xy(cell.vertices[1]);
      os << "  <line x1=\"" << sx(xa) << "\" y1=\"" << sy(ya) << "\" x2=\"" << sx(xb) << "\" y2=\"" << sy(yb)
         << "\" stroke=\"#203040\" stroke-width=\"1\"/>\n";
    }
  }
  for (const auto& [id, p] : complex.vertices()) {
    const auto [x, y] = xy(id);
    os << "  <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"#203040\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace polytri::exporter
