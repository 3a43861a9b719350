#pragma once

#include <string>
#include <vector>

#include "rgl/attacks.hpp"
#include "rgl/margins.hpp"

namespace rgl {

// All real values in CSV output use 9 significant digits.
std::string format_real(double v);

// Header: subspace_index,dim,start_index,p05,median,p95,n_success,n_fail
void write_margin_summary_csv(const std::string& path,
                              const std::vector<MarginSummary>& summaries);

// Header: sample,subspace_index,margin,iterations,success
void write_margin_records_csv(const std::string& path,
                              const std::vector<MarginRecord>& records);

// Header: sample,success,l0,l2,iterations
void write_attack_csv(const std::string& path, const std::vector<AttackResult>& results);

// Header: epoch,loss
void write_loss_csv(const std::string& path, const std::vector<double>& epoch_loss);

// Header: subspace_index,label,start_index,energy,fraction
struct EnergyRow {
  std::size_t subspace = 0;
  std::string label;
  std::size_t start_index = 0;
  double energy = 0.0;
  double fraction = 0.0;
};
void write_energy_csv(const std::string& path, const std::vector<EnergyRow>& rows);

}  // namespace rgl
