#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "lineuler/errors.hpp"

namespace lineuler::cli {

/// CSV writer with byte-stable formatting: 17 significant digits, '.' decimal
/// separator, '\n' line endings.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) fail(ErrorCode::InvalidInput, "cannot open output file: " + path);
    }

    void header(const std::string& line) { out_ << line << "\n"; }

    void row(const std::vector<double>& values) {
        char buf[32];
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
            if (i) out_ << ',';
            out_ << buf;
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

/// Minimal native SVG polyline rendering; CSV stays the canonical output.
void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& x_label,
                        const std::string& y_label);

} // namespace lineuler::cli
