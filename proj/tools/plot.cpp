#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace g2ml::cli {

double signed_log(const Rational& x) {
  const int s = sgn(x);
  if (s == 0) return 0;
  const double l = log_abs(x.get_num()) - log_abs(x.get_den());
  // log1p(e^l) equals l to double precision once l > 40.
  if (l > 40) return s * l;
  return s * std::log1p(std::exp(l));
}

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kMargin = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
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

const Rational& coordinate(const AbsoluteTriple& t, unsigned axis) {
  return axis == 1 ? t.t1 : axis == 2 ? t.t2 : t.t3;
}

}  // namespace

std::string scatter_svg(const Dataset& d, const PlotOptions& options) {
  const auto names = class_names(options.scheme);
  struct Dot {
    double x, y;
    std::size_t cls;
  };
  std::vector<Dot> dots;
  for (const auto& [key, r] : d.records()) {
    const auto label = classify(r, options.scheme);
    if (!label) continue;
    const auto cls = static_cast<std::size_t>(std::find(names.begin(), names.end(), *label) - names.begin());
    dots.push_back({signed_log(coordinate(key, options.axes[0])), signed_log(coordinate(key, options.axes[1])), cls});
  }
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  for (const auto& p : dots) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const auto sx = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  const auto sy = [&](double y) { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<metadata>" << xml_escape(options.metadata.dump()) << "</metadata>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << kHeight - kMargin << "\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\"/>\n"
      << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double vx = x0 + (x1 - x0) * i / 4;
    const double vy = y0 + (y1 - y0) * i / 4;
    out << "<text x=\"" << fmt(sx(vx)) << "\" y=\"" << kHeight - kMargin + 18 << "\" text-anchor=\"middle\">"
        << fmt(vx) << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << fmt(sy(vy) + 4) << "\" text-anchor=\"end\">" << fmt(vy)
        << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">s(t" << options.axes[0]
      << ")</text>\n";
  out << "<text x=\"15\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << kHeight / 2 << ")\">s(t" << options.axes[1] << ")</text>\n";
  for (std::size_t c = 0; c < names.size(); ++c) {
    const double y = kMargin + 18.0 * static_cast<double>(c);
    out << "<circle cx=\"" << kWidth - kMargin - 70 << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << kColors[c]
        << "\"/><text x=\"" << kWidth - kMargin - 60 << "\" y=\"" << y + 4 << "\">" << xml_escape(names[c])
        << "</text>\n";
  }
  out << "</g>\n";
  for (std::size_t c = 0; c < names.size(); ++c) {
    out << "<g fill=\"" << kColors[c] << "\" fill-opacity=\"0.6\">\n";
    for (const auto& p : dots) {
      if (p.cls == c) out << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y)) << "\" r=\"2\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace g2ml::cli
