#include "teamalloc/svg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "teamalloc/coverage/voronoi.hpp"

namespace teamalloc::io {
namespace {

using coverage::Point;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string objective_svg(std::span<const int> iterations, std::span<const double> objective) {
  if (iterations.size() != objective.size() || objective.empty()) {
    throw std::invalid_argument("objective_svg needs matching, non-empty series");
  }
  const double W = 640, H = 400, left = 80, right = 20, top = 30, bottom = 50;
  const double x0 = iterations.front();
  const double x1 = std::max<double>(iterations.back(), x0 + 1);
  double y0 = *std::min_element(objective.begin(), objective.end());
  double y1 = *std::max_element(objective.begin(), objective.end());
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\""
     << H - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = y0 + (y1 - y0) * i / 4.0;
    os << "<text x=\"" << left - 6 << "\" y=\"" << fmt(py(y) + 4) << "\" text-anchor=\"end\">"
       << label(y) << "</text>\n";
  }
  for (int x : iterations) {
    os << "<text x=\"" << fmt(px(x)) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">"
       << x << "</text>\n";
  }
  os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\">iteration</text>\n";
  os << "<text x=\"16\" y=\"" << (top + H - bottom) / 2 << "\" transform=\"rotate(-90 16 "
     << (top + H - bottom) / 2 << ")\" text-anchor=\"middle\">global objective</text>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < objective.size(); ++i) {
    os << (i ? " " : "") << fmt(px(iterations[i])) << ',' << fmt(py(objective[i]));
  }
  os << "\"/>\n";
  for (std::size_t i = 0; i < objective.size(); ++i) {
    os << "<circle cx=\"" << fmt(px(iterations[i])) << "\" cy=\"" << fmt(py(objective[i]))
       << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string domain_snapshot_svg(const coverage::Domain& domain,
                                std::span<const std::vector<Point>> team_positions,
                                std::span<const int> team_ids, int t) {
  const double panel = 240, gap = 20, header = 30;
  const std::size_t m = team_positions.size();
  const double W = gap + m * (panel + gap);
  const double H = header + panel + gap;
  const auto& b = domain.bounds();
  const double sx = panel / (b.x_max - b.x_min);
  const double sy = panel / (b.y_max - b.y_min);
  const int nx = domain.nx();
  const int ny = domain.ny();

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < m; ++k) {
    const double ox = gap + k * (panel + gap);
    const double oy = header;
    auto px = [&](double x) { return ox + (x - b.x_min) * sx; };
    auto py = [&](double y) { return oy + (b.y_max - y) * sy; };
    const char* colour = kPalette[k % std::size(kPalette)];
    const auto& robots = team_positions[k];
    os << "<text x=\"" << ox << "\" y=\"" << header - 10 << "\">team " << team_ids[k] << " (n="
       << robots.size() << ", t=" << t << ")</text>\n";
    os << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << panel << "\" height=\"" << panel
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (robots.empty()) continue;
    const coverage::VoronoiAssignment a = coverage::assign_voronoi(robots, domain);
    os << "<path fill=\"none\" stroke=\"#888\" stroke-width=\"1\" d=\"";
    const double cw = domain.cell_width();
    const double ch = domain.cell_height();
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const int o = a.owner[static_cast<std::size_t>(iy * nx + ix)];
        const double xr = b.x_min + (ix + 1) * cw;
        const double yt = b.y_min + (iy + 1) * ch;
        if (ix + 1 < nx && a.owner[static_cast<std::size_t>(iy * nx + ix + 1)] != o) {
          os << 'M' << fmt(px(xr)) << ' ' << fmt(py(yt - ch)) << 'V' << fmt(py(yt));
        }
        if (iy + 1 < ny && a.owner[static_cast<std::size_t>((iy + 1) * nx + ix)] != o) {
          os << 'M' << fmt(px(xr - cw)) << ' ' << fmt(py(yt)) << 'H' << fmt(px(xr));
        }
      }
    }
    os << "\"/>\n";
    for (const Point& p : robots) {
      os << "<circle cx=\"" << fmt(px(p.x)) << "\" cy=\"" << fmt(py(p.y)) << "\" r=\"4\" fill=\""
         << colour << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::filesystem::path> plot_trace(const std::filesystem::path& trace_json,
                                              const std::filesystem::path& out_dir) {
  std::ifstream in(trace_json);
  if (!in) throw std::runtime_error("cannot open " + trace_json.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed trace " + trace_json.string() + ": " + e.what());
  }
  if (j.value("format", "") != "teamalloc-trace") {
    throw std::runtime_error(trace_json.string() + " is not a teamalloc trace");
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  auto save = [&](const std::string& name, const std::string& svg) {
    written.push_back(out_dir / name);
    std::ofstream os(written.back(), std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + written.back().string());
    os << svg;
  };

  std::vector<int> its{0};
  std::vector<double> objective{j.at("initial_objective").get<double>()};
  for (const auto& s : j.at("steps")) {
    if (s.at("accepted").get<bool>()) {
      its.push_back(s.at("t").get<int>());
      objective.push_back(s.at("objective_candidate").get<double>());
    }
  }
  save("objective.svg", objective_svg(its, objective));

  if (j.at("domain").is_null()) return written;
  const auto& d = j.at("domain");
  const auto bounds = d.at("bounds").get<std::vector<double>>();
  const coverage::Domain domain({bounds.at(0), bounds.at(1), bounds.at(2), bounds.at(3)},
                                d.at("nx").get<int>(), d.at("ny").get<int>());
  std::vector<int> ids;
  for (const auto& t : j.at("teams")) ids.push_back(t.at("id").get<int>());
  for (const auto& s : j.at("snapshots")) {
    std::vector<std::vector<Point>> teams;
    for (const auto& robots : s.at("positions")) {
      std::vector<Point> pts;
      for (const auto& p : robots) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      teams.push_back(std::move(pts));
    }
    const int t = s.at("t").get<int>();
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_t%03d.svg", t);
    save(name, domain_snapshot_svg(domain, teams, ids, t));
  }
  return written;
}

}  // namespace teamalloc::io
