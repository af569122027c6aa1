#pragma once

#include "rainfield/dependence.hpp"
#include "rainfield/margins.hpp"
#include "rainfield/mesh.hpp"
#include "rainfield/pipeline.hpp"
#include "rainfield/types.hpp"

#include <string>
#include <vector>

namespace rainfield {

void write_margins_csv(const std::string& path, const StationCatalog& catalog,
                       const MarginalFit& fit);
void write_pairs_csv(const std::string& path, const StationCatalog& catalog,
                     const DependenceFit& fit);
void write_totals_csv(const std::string& path, const std::vector<DayRecord>& records);
std::vector<DayRecord> read_totals_csv(const std::string& path);
void write_quantiles_csv(const std::string& path, const std::vector<double>& quantiles);
void write_report_txt(const std::string& path, const QuantileReport& report,
                      const ExperimentConfig& config, double beta);
void write_hist_csv(const std::string& path, const std::vector<HistogramBin>& bins);
void write_gamma_scan_csv(const std::string& path,
                          const std::vector<std::pair<int, double>>& rows);
void write_sensitivity_csv(const std::string& path, const std::vector<SensitivityRow>& rows);
void write_field_csv(const std::string& path, const TriMesh& mesh, const Eigen::VectorXd& eta,
                     const Eigen::VectorXd& xi, const Eigen::VectorXd& rain);

}  // namespace rainfield
