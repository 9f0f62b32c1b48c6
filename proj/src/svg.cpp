#include "trimclt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "trimclt/errors.hpp"

namespace trimclt {

namespace {

struct Point {
  double n = 0.0;
  double y = 0.0;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string svg_plot(const std::string& title,
                     const std::map<std::string, std::vector<Point>>& series) {
  const double width = 640, height = 420;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const auto& [name, pts] : series) {
    for (const auto& pt : pts) {
      xmin = std::min(xmin, pt.n);
      xmax = std::max(xmax, pt.n);
      ymax = std::max(ymax, pt.y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.08;

  auto sx = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto sy = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<!-- data:\n";
  for (const auto& [name, pts] : series) {
    out << name << ":";
    for (const auto& pt : pts) out << " (" << pt.n << "," << pt.y << ")";
    out << "\n";
  }
  out << "-->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", yv);
    out << buf << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << sy(yv) << "\" x2=\""
        << width - mr << "\" y2=\"" << sy(yv)
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + (xmax - xmin) * t / 4.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", xv);
    out << "<text x=\"" << sx(xv) << "\" y=\"" << height - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << buf << "</text>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">n</text>\n";

  int color = 0;
  double ly = mt + 6;
  for (const auto& [name, pts] : series) {
    const char* c = kPalette[color % 8];
    std::ostringstream path;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      path << (i == 0 ? "M" : "L") << sx(pts[i].n) << " " << sy(pts[i].y) << " ";
    }
    out << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << c
        << "\" stroke-width=\"1.8\"/>\n";
    for (const auto& pt : pts) {
      out << "<circle cx=\"" << sx(pt.n) << "\" cy=\"" << sy(pt.y)
          << "\" r=\"2.6\" fill=\"" << c << "\"/>\n";
    }
    out << "<rect x=\"" << width - mr - 190 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << c << "\"/>\n";
    out << "<text x=\"" << width - mr - 175 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << name
        << "</text>\n";
    ly += 16;
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

int plot_csv(const std::string& csv_path, const std::string& out_dir) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open csv '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error("empty csv");

  // experiment -> estimator -> points
  std::map<std::string, std::map<std::string, std::vector<Point>>> grouped;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 13) continue;
    Point pt;
    pt.n = std::stod(cells[1]);
    pt.y = std::stod(cells[8]);
    grouped[cells[0]][cells[5]].push_back(pt);
  }

  std::filesystem::create_directories(out_dir);
  int written = 0;
  for (auto& [experiment, series] : grouped) {
    for (auto& [name, pts] : series) {
      std::sort(pts.begin(), pts.end(),
                [](const Point& a, const Point& b) { return a.n < b.n; });
    }
    std::string title = experiment + ": rho_hat vs n";
    std::ofstream out(out_dir + "/" + experiment + "_vs_n.svg", std::ios::binary);
    if (!out) throw Error("cannot write plot under '" + out_dir + "'");
    out << svg_plot(title, series);
    ++written;
  }
  return written;
}

}  // namespace trimclt
