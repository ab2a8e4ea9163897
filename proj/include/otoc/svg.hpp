#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace otoc::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#000000";
    bool line = true;
    bool markers = false;
    bool dashed = false;
};

struct Figure {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<Series> series;
    int width = 640;
    int height = 480;
};

/// Writes a self-contained SVG; byte-deterministic for fixed input.
void emit(const Figure& figure, const std::filesystem::path& path);

}  // namespace otoc::svg
