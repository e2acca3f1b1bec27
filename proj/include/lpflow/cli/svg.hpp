#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lpflow/core/csv.hpp"

namespace lpflow::cli {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
};

/// Static line chart. Non-positive values are skipped on log axes.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

/// Plots columns of a CSV file (the same file the tests read) against `xcol`.
void plot_csv(const std::filesystem::path& csv, const std::filesystem::path& svg, const std::string& xcol,
              const std::vector<std::string>& ycols, const PlotSpec& spec);

}  // namespace lpflow::cli
