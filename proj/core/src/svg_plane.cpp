#include "fairaudit/svg_plane.hpp"

#include "fairaudit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace fairaudit {
namespace {

constexpr double kMargin = 70.0;
constexpr double kSize = 440.0;
constexpr double kCanvas = kSize + 2 * kMargin;
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#8c564b"};

double px(double fpr) { return kMargin + fpr * kSize; }
double py(double tpr) { return kMargin + (1.0 - tpr) * kSize; }

std::string coord(double v) { return format_fixed(v, 2); }

std::string short_number(double v) {
  std::string s = format_fixed(v, 3);
  while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
    const bool dot = s.back() == '.';
    s.pop_back();
    if (dot) break;
  }
  return s == "-0" ? "0" : s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void text(std::ostringstream& out, double x, double y, const std::string& body,
          const char* anchor = "start", const char* extra = "") {
  out << "<text x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" text-anchor=\"" << anchor
      << "\"" << extra << ">" << xml_escape(body) << "</text>\n";
}

void frame(std::ostringstream& out, const std::string& title) {
  out << "<rect x=\"" << coord(kMargin) << "\" y=\"" << coord(kMargin) << "\" width=\""
      << coord(kSize) << "\" height=\"" << coord(kSize)
      << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out << "<g stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
  for (int i = 1; i < 10; ++i) {
    const double t = i / 10.0;
    out << "<line x1=\"" << coord(px(t)) << "\" y1=\"" << coord(py(0)) << "\" x2=\""
        << coord(px(t)) << "\" y2=\"" << coord(py(1)) << "\"/>\n";
    out << "<line x1=\"" << coord(px(0)) << "\" y1=\"" << coord(py(t)) << "\" x2=\""
        << coord(px(1)) << "\" y2=\"" << coord(py(t)) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = i / 5.0;
    text(out, px(t), py(0) + 16, short_number(t), "middle");
    text(out, px(0) - 8, py(t) + 4, short_number(t), "end");
  }
  text(out, px(0.5), py(0) + 40, "FPR", "middle", " font-size=\"14\"");
  text(out, px(0) - 45, py(0.5), "TPR", "middle",
       (" font-size=\"14\" transform=\"rotate(-90 " + coord(px(0) - 45) + " " + coord(py(0.5)) +
        ")\"")
           .c_str());
  if (!title.empty()) text(out, kCanvas / 2, kMargin / 2, title, "middle", " font-size=\"15\"");
  out << "</g>\n";
}

Rational json_rational(const nlohmann::json& v, const char* field) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(format_decimal(v.get<double>()));
  throw Error(std::string("plot spec field '") + field + "' must be a number or fraction string");
}

PlanePoint json_point(const nlohmann::json& v) {
  if (v.is_array() && v.size() == 2) return {json_rational(v[0], "fpr"), json_rational(v[1], "tpr")};
  if (v.is_object()) return {json_rational(v.at("fpr"), "fpr"), json_rational(v.at("tpr"), "tpr")};
  throw Error("plot spec point must be [fpr, tpr] or {\"fpr\":..,\"tpr\":..}");
}

}  // namespace

std::optional<std::array<std::array<double, 2>, 2>> clip_to_unit_square(
    const PerformanceLine& line) {
  const double a = to_double(line.tpr_coefficient());
  const double b = to_double(line.fpr_coefficient());
  const double q = to_double(line.posterior());
  constexpr double kSlack = 1e-12;

  std::vector<std::array<double, 2>> hits;
  auto keep = [&](double fpr, double tpr) {
    if (fpr < -kSlack || fpr > 1 + kSlack || tpr < -kSlack || tpr > 1 + kSlack) return;
    const std::array<double, 2> pt{std::clamp(fpr, 0.0, 1.0), std::clamp(tpr, 0.0, 1.0)};
    for (const auto& h : hits) {
      if (std::abs(h[0] - pt[0]) < kSlack && std::abs(h[1] - pt[1]) < kSlack) return;
    }
    hits.push_back(pt);
  };
  if (a != 0) {
    keep(0.0, q / a);
    keep(1.0, (q - b) / a);
  }
  if (b != 0) {
    keep(q / b, 0.0);
    keep((q - a) / b, 1.0);
  }
  if (hits.size() < 2) return std::nullopt;
  std::sort(hits.begin(), hits.end());
  return std::array<std::array<double, 2>, 2>{hits.front(), hits.back()};
}

std::string render_plane(const PlotSpec& spec) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << coord(kCanvas)
      << "\" height=\"" << coord(kCanvas) << "\" viewBox=\"0 0 " << coord(kCanvas) << " "
      << coord(kCanvas) << "\">\n";
  frame(out, spec.title);

  if (spec.chance_line) {
    out << "<line class=\"chance-line\" x1=\"" << coord(px(0)) << "\" y1=\"" << coord(py(0))
        << "\" x2=\"" << coord(px(1)) << "\" y2=\"" << coord(py(1))
        << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  }

  std::size_t color = 0;
  for (const PlotCurve& c : spec.curves) {
    const char* stroke = kPalette[color++ % kPalette.size()];
    out << "<polyline class=\"roc\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    const auto& v = c.curve.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << (i ? " " : "") << coord(px(to_double(v[i].fpr))) << ","
          << coord(py(to_double(v[i].tpr)));
    }
    out << "\"/>\n";
    if (!c.label.empty()) {
      const PlanePoint& mid = v[v.size() / 2];
      out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"" << stroke << "\">\n";
      text(out, px(to_double(mid.fpr)) + 6, py(to_double(mid.tpr)) - 6, c.label);
      out << "</g>\n";
    }
  }

  for (const PlotLine& l : spec.lines) {
    const char* stroke = kPalette[color++ % kPalette.size()];
    const std::string label =
        l.label.empty() ? "p=" + short_number(to_double(l.line.base_rate())) +
                              ", q*=" + short_number(to_double(l.line.posterior()))
                        : l.label;
    const auto seg = clip_to_unit_square(l.line);
    if (!seg) continue;
    const auto& [from, to] = *seg;
    out << "<line class=\"performance-line\" x1=\"" << coord(px(from[0])) << "\" y1=\""
        << coord(py(from[1])) << "\" x2=\"" << coord(px(to[0])) << "\" y2=\"" << coord(py(to[1]))
        << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
    // Label at the end nearer the TPR axis.
    const auto& anchor = from[0] <= to[0] ? from : to;
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"" << stroke << "\">\n";
    text(out, px(anchor[0]) + 4, py(anchor[1]) + (anchor[1] > 0.95 ? 14 : -4), label);
    out << "</g>\n";
  }

  for (const PlotPoint& p : spec.points) {
    const double x = px(to_double(p.point.fpr));
    const double y = py(to_double(p.point.tpr));
    out << "<circle class=\"operation-point\" cx=\"" << coord(x) << "\" cy=\"" << coord(y)
        << "\" r=\"4\" fill=\"black\"/>\n";
    std::string label = p.group ? "S=" + std::to_string(to_int(*p.group)) : std::string();
    label += (label.empty() ? "" : " ") + std::string("(") +
             short_number(to_double(p.point.fpr)) + ", " + short_number(to_double(p.point.tpr)) +
             ")";
    if (!p.annotation.empty()) label += " " + p.annotation;
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    text(out, x + 7, y + 14, label);
    out << "</g>\n";
  }

  out << "</svg>\n";
  return out.str();
}

PlotSpec plot_spec_from_json(const std::string& text_in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text_in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("plot spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("plot spec must be a JSON object");

  PlotSpec spec;
  try {
    spec.title = doc.value("title", std::string());
    spec.chance_line = doc.value("chance_line", true);
    for (const auto& l : doc.value("lines", nlohmann::json::array())) {
      spec.lines.push_back({performance_line(json_rational(l.at("p"), "p"),
                                             json_rational(l.at("q"), "q")),
                            l.value("label", std::string())});
    }
    for (const auto& c : doc.value("curves", nlohmann::json::array())) {
      std::vector<PlanePoint> vertices;
      for (const auto& pt : c.at("points")) vertices.push_back(json_point(pt));
      spec.curves.push_back({RocCurve(std::move(vertices)), c.value("label", std::string())});
    }
    for (const auto& p : doc.value("points", nlohmann::json::array())) {
      PlotPoint pt{json_point(p), std::nullopt, p.value("annotation", std::string())};
      if (p.contains("group")) {
        const int g = p.at("group").get<int>();
        if (g != 0 && g != 1) throw Error("plot spec point group must be 0 or 1");
        pt.group = static_cast<GroupLabel>(g);
      }
      spec.points.push_back(std::move(pt));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid plot spec: ") + e.what());
  }
  return spec;
}

}  // namespace fairaudit
