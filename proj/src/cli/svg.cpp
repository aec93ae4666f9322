#include "segscan/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace segscan::cli {
namespace {

constexpr double kMarginLeft = 48.0;
constexpr double kMarginRight = 12.0;
constexpr double kPanelGap = 10.0;
constexpr double kPanelPad = 8.0;
constexpr const char* kBandColors[2] = {"#e6e6e6", "#c4c4c4"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Signal& signal, const Breakpoints& predicted,
                       const std::optional<Breakpoints>& truth, const PlotStyle& style) {
  const Index n = signal.n_samples();
  const Index dims = signal.n_dims();
  const double plot_width = style.width - kMarginLeft - kMarginRight;
  const double height = kPanelGap + static_cast<double>(dims) * (style.panel_height + kPanelGap);
  auto x_at = [&](double t) { return kMarginLeft + plot_width * t / static_cast<double>(n); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(style.width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " +
         num(style.width) + " " + num(height) + "\">\n";
  svg += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + num(style.width) +
         "\" height=\"" + num(height) + "\" fill=\"#ffffff\"/>\n";

  for (Index k = 0; k < dims; ++k) {
    const double top = kPanelGap + static_cast<double>(k) * (style.panel_height + kPanelGap);
    const double bottom = top + style.panel_height;
    svg += "<g class=\"panel\" id=\"dim" + std::to_string(k) + "\">\n";

    std::size_t band = 0;
    for (const auto& [start, end] : predicted.segments()) {
      const double x0 = x_at(static_cast<double>(start));
      const double x1 = x_at(static_cast<double>(end));
      svg += "<rect class=\"regime\" x=\"" + num(x0) + "\" y=\"" + num(top) + "\" width=\"" +
             num(x1 - x0) + "\" height=\"" + num(style.panel_height) + "\" fill=\"" +
             kBandColors[band++ % 2] + "\"/>\n";
    }

    if (truth) {
      for (Index t : truth->changes()) {
        const std::string x = num(x_at(static_cast<double>(t)));
        svg += "<line class=\"truth\" x1=\"" + x + "\" y1=\"" + num(top) + "\" x2=\"" + x +
               "\" y2=\"" + num(bottom) +
               "\" stroke=\"#b22222\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"/>\n";
      }
    }

    const auto column = signal.data().col(k);
    double lo = column.minCoeff();
    double hi = column.maxCoeff();
    if (hi - lo <= 0.0) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double inner_top = top + kPanelPad;
    const double inner_height = style.panel_height - 2.0 * kPanelPad;
    svg += "<polyline class=\"signal\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1\" points=\"";
    for (Index t = 0; t < n; ++t) {
      const double y = inner_top + inner_height * (hi - column(t)) / (hi - lo);
      if (t) svg += ' ';
      svg += num(x_at(static_cast<double>(t) + 0.5)) + "," + num(y);
    }
    svg += "\"/>\n";

    svg += "<rect class=\"frame\" x=\"" + num(kMarginLeft) + "\" y=\"" + num(top) +
           "\" width=\"" + num(plot_width) + "\" height=\"" + num(style.panel_height) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"4\" y=\"" + num(top + 14.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\">dim" + std::to_string(k) + "</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace segscan::cli
