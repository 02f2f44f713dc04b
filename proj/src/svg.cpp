#include "priomap/svg.hpp"

#include <algorithm>
#include <vector>

#include "priomap/frontier.hpp"
#include "priomap/io.hpp"

namespace priomap {

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) { return format_double(v); }

/// One scatter panel over 2D coordinates, drawn at pixel offset `ox`.
std::string render_panel(const Eigen::MatrixXd& coords, const std::vector<bool>& flags,
                         const std::vector<std::string>& labels, const SvgOptions& o,
                         double ox, const std::string& title) {
  const int n = static_cast<int>(coords.rows());
  const double margin = 48.0;
  const double span_x = o.width - 2.0 * margin;
  const double span_y = o.height - 2.0 * margin;
  double max_x = 0.0, max_y = 0.0;
  for (int i = 0; i < n; ++i) {
    max_x = std::max(max_x, coords(i, 0));
    max_y = std::max(max_y, coords(i, 1));
  }
  if (max_x <= 0.0) max_x = 1.0;
  if (max_y <= 0.0) max_y = 1.0;
  max_x *= 1.05;
  max_y *= 1.05;
  const auto px = [&](double x) { return ox + margin + x / max_x * span_x; };
  const auto py = [&](double y) { return o.height - margin - y / max_y * span_y; };

  std::string g = "  <g>\n";
  // Axes through the origin.
  g += "    <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" +
       num(px(max_x)) + "\" y2=\"" + num(py(0)) + "\" stroke=\"#333333\"/>\n";
  g += "    <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" +
       num(px(0)) + "\" y2=\"" + num(py(max_y)) + "\" stroke=\"#333333\"/>\n";
  if (!title.empty()) {
    g += "    <text x=\"" + num(ox + o.width / 2.0) + "\" y=\"" + num(margin / 2.0) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + xml_escape(title) + "</text>\n";
  }

  // Hull polyline: frontier points in ascending x (upper-right traversal).
  std::vector<int> hull;
  for (int i = 0; i < n; ++i)
    if (flags[i]) hull.push_back(i);
  std::sort(hull.begin(), hull.end(), [&](int a, int b) {
    if (coords(a, 0) != coords(b, 0)) return coords(a, 0) < coords(b, 0);
    return coords(a, 1) > coords(b, 1);
  });
  g += "    <polyline class=\"hull\" fill=\"none\" stroke=\"#d62728\" "
       "stroke-dasharray=\"5 3\" points=\"";
  for (std::size_t h = 0; h < hull.size(); ++h) {
    if (h) g += ' ';
    g += num(px(coords(hull[h], 0))) + "," + num(py(coords(hull[h], 1)));
  }
  g += "\"/>\n";

  for (int i = 0; i < n; ++i) {
    const char* cls = flags[i] ? "frontier" : "item";
    const char* fill = flags[i] ? "#d62728" : "#1f77b4";
    const double r = flags[i] ? o.point_radius + 1.0 : o.point_radius;
    g += "    <circle class=\"" + std::string(cls) + "\" cx=\"" +
         num(px(coords(i, 0))) + "\" cy=\"" + num(py(coords(i, 1))) + "\" r=\"" +
         num(r) + "\" fill=\"" + fill + "\"/>\n";
    if (o.show_labels) {
      g += "    <text x=\"" + num(px(coords(i, 0)) + r + 2.0) + "\" y=\"" +
           num(py(coords(i, 1)) - r) + "\" font-size=\"11\">" +
           xml_escape(labels[i]) + "</text>\n";
    }
  }
  g += "  </g>\n";
  return g;
}

}  // namespace

std::string render_priority_map_svg(const PriorityMap& map,
                                    const std::vector<FrontierResult>& frontier,
                                    const SvgOptions& options) {
  const int n = map.n_items();
  const int d = map.d;
  if (d != 2 && d != 3)
    throw UnsupportedDimension("SVG rendering supports d = 2 or 3");
  if (static_cast<int>(frontier.size()) != n)
    throw ShapeMismatch("need one frontier result per item");
  if (options.width < 100 || options.height < 100)
    throw InvalidConfig("SVG panels need at least 100x100 pixels");

  std::vector<bool> flags(n, false);
  for (const FrontierResult& f : frontier) {
    if (f.item < 0 || f.item >= n) throw ShapeMismatch("frontier item index out of range");
    flags[f.item] = f.is_frontier;
  }

  const int panels = d == 2 ? 1 : 3;
  const int total_width = options.width * panels;
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(total_width) + "\" height=\"" + std::to_string(options.height) +
         "\" viewBox=\"0 0 " + std::to_string(total_width) + " " +
         std::to_string(options.height) + "\">\n";
  svg += "  <rect width=\"" + std::to_string(total_width) + "\" height=\"" +
         std::to_string(options.height) + "\" fill=\"#ffffff\"/>\n";

  if (d == 2) {
    svg += render_panel(map.embeddings, flags, map.item_ids, options, 0.0, "");
  } else {
    const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    for (int p = 0; p < 3; ++p) {
      const auto [a, b] = pairs[p];
      Eigen::MatrixXd coords(n, 2);
      coords.col(0) = map.embeddings.col(a);
      coords.col(1) = map.embeddings.col(b);
      // Hull membership is recomputed in the projection: an item on the 3D
      // frontier need not be extreme in every 2D shadow.
      std::vector<bool> panel_flags(n, false);
      for (const FrontierResult& f : detect_frontier(coords))
        panel_flags[f.item] = f.is_frontier && flags[f.item];
      const std::string title =
          "axis " + std::to_string(a) + " vs axis " + std::to_string(b);
      svg += render_panel(coords, panel_flags, map.item_ids, options,
                          double(p) * options.width, title);
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace priomap
