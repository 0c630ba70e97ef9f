#include "percolab/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace percolab {

namespace {

template <class T, class Fmt>
std::string field_csv_impl(const ScalarField<T>& u, Fmt&& fmt) {
  const ClusterGraph& g = *u.graph;
  std::ostringstream os;
  for (int ax = 0; ax < g.dim(); ++ax) os << (ax ? "," : "") << "x" << (ax + 1);
  os << ",value\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Point& p = g.point(v);
    for (int ax = 0; ax < g.dim(); ++ax) os << (ax ? "," : "") << p[ax];
    os << "," << fmt(u[v]) << "\n";
  }
  return os.str();
}

}  // namespace

std::string field_csv(const ScalarField<double>& u) {
  return field_csv_impl(u, [](double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  });
}

std::string field_csv(const ScalarField<Rational>& u) {
  return field_csv_impl(u, [](const Rational& q) { return rational_to_string(q); });
}

std::string stats_csv(const CorrectorStats& st) {
  std::ostringstream os;
  os << "radius,osc,maxgrad\n";
  os.precision(17);
  for (std::size_t i = 0; i < st.radii.size(); ++i)
    os << st.radii[i] << "," << st.oscillation[i] << "," << st.max_gradient[i] << "\n";
  return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

std::string embedding_svg(const Embedding& base, const Embedding* flipped) {
  const ClusterGraph& g = *base.graph;
  double lo = 1e300, hi = -1e300;
  auto scan = [&](const Embedding& e) {
    for (auto& c : e.coords) {
      lo = std::min({lo, c[0], c[1]});
      hi = std::max({hi, c[0], c[1]});
    }
  };
  scan(base);
  if (flipped) scan(*flipped);
  double span = std::max(hi - lo, 1e-12);
  const double size = 800.0, pad = 10.0;
  auto sx = [&](double x) { return pad + (x - lo) / span * (size - 2 * pad); };
  auto sy = [&](double y) { return size - pad - (y - lo) / span * (size - 2 * pad); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << int(size) << "\" height=\""
     << int(size) << "\">\n";
  auto layer = [&](const Embedding& e, const char* name, const char* color) {
    os << "<g id=\"" << name << "\" stroke=\"" << color
       << "\" stroke-width=\"0.6\" fill=\"none\">\n";
    for (int ei = 0; ei < e.graph->edge_count(); ++ei) {
      auto [a, b] = e.graph->edge(ei);
      os << "<polyline points=\"" << sx(e.coords[std::size_t(a)][0]) << ","
         << sy(e.coords[std::size_t(a)][1]) << " " << sx(e.coords[std::size_t(b)][0]) << ","
         << sy(e.coords[std::size_t(b)][1]) << "\"/>\n";
    }
    os << "</g>\n";
  };
  layer(base, "base", "#1f51b5");
  if (flipped) layer(*flipped, "flipped", "#2e8b57");
  (void)g;
  os << "</svg>\n";
  return os.str();
}

}  // namespace percolab
