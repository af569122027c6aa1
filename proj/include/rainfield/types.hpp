#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace rainfield {

using Vec2 = Eigen::Vector2d;
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Station network with planar positions in km, re-centered so the origin
/// station sits at (0,0). Column order of every panel follows `ids`.
struct StationCatalog {
    std::vector<std::string> ids;
    PointMatrix positions;
    int origin = 0;

    int size() const { return static_cast<int>(ids.size()); }
    int index_of(const std::string& id) const {
        for (int i = 0; i < size(); ++i)
            if (ids[i] == id) return i;
        return -1;
    }
    Vec2 position(int i) const { return positions.row(i).transpose(); }
};

/// Day-by-station matrix of daily rainfall depths (mm), all finite and >= 0.
struct RainPanel {
    std::vector<std::string> dates;  // ISO YYYY-MM-DD labels
    Eigen::MatrixXd values;          // n_days x n_stations

    long n_days() const { return values.rows(); }
    int n_stations() const { return static_cast<int>(values.cols()); }
};

/// Index triple into StationCatalog; a station-level Triangle.
using Triangle = std::array<int, 3>;

}  // namespace rainfield
