#include "output.hpp"

#include <algorithm>
#include <cmath>

namespace lineuler::cli {

void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& x_label,
                        const std::string& y_label) {
    if (xs.size() != ys.size() || xs.empty())
        fail(ErrorCode::InvalidInput, "svg polyline needs matching nonempty coordinate lists");

    const double width = 900.0, height = 500.0, margin = 55.0;
    double xmin = xs.front(), xmax = xs.front(), ymin = ys.front(), ymax = ys.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidInput, "cannot open output file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
        << "\" height=\"" << height - 2 * margin
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"14\" "
        << "transform=\"rotate(-90 16 " << height / 2 << ")\">" << y_label << "</text>\n";

    // thin the polyline: one point per output pixel column is plenty
    const std::size_t stride = std::max<std::size_t>(1, xs.size() / 4000);
    out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); i += stride)
        out << px(xs[i]) << ',' << py(ys[i]) << ' ';
    if ((xs.size() - 1) % stride != 0) out << px(xs.back()) << ',' << py(ys.back());
    out << "\"/>\n</svg>\n";
}

} // namespace lineuler::cli
