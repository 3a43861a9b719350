#include "rgl/csv.hpp"

#include <cstdio>
#include <fstream>

#include "rgl/error.hpp"

namespace rgl {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_margin_summary_csv(const std::string& path,
                              const std::vector<MarginSummary>& summaries) {
  std::ofstream f = open_out(path);
  f << "subspace_index,dim,start_index,p05,median,p95,n_success,n_fail\n";
  for (const auto& s : summaries)
    f << s.subspace << ',' << s.dim << ',' << s.start_index << ',' << format_real(s.p05)
      << ',' << format_real(s.median) << ',' << format_real(s.p95) << ',' << s.n_success
      << ',' << s.n_fail << '\n';
  finish(f, path);
}

void write_margin_records_csv(const std::string& path,
                              const std::vector<MarginRecord>& records) {
  std::ofstream f = open_out(path);
  f << "sample,subspace_index,margin,iterations,success\n";
  for (const auto& r : records)
    f << r.sample << ',' << r.subspace << ',' << format_real(r.margin) << ',' << r.iterations
      << ',' << (r.success ? 1 : 0) << '\n';
  finish(f, path);
}

void write_attack_csv(const std::string& path, const std::vector<AttackResult>& results) {
  std::ofstream f = open_out(path);
  f << "sample,success,l0,l2,iterations\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const AttackResult& r = results[i];
    f << i << ',' << (r.success ? 1 : 0) << ',' << r.l0 << ',' << format_real(r.l2) << ','
      << r.iterations << '\n';
  }
  finish(f, path);
}

void write_loss_csv(const std::string& path, const std::vector<double>& epoch_loss) {
  std::ofstream f = open_out(path);
  f << "epoch,loss\n";
  for (std::size_t e = 0; e < epoch_loss.size(); ++e)
    f << e << ',' << format_real(epoch_loss[e]) << '\n';
  finish(f, path);
}

void write_energy_csv(const std::string& path, const std::vector<EnergyRow>& rows) {
  std::ofstream f = open_out(path);
  f << "subspace_index,label,start_index,energy,fraction\n";
  for (const auto& r : rows)
    f << r.subspace << ',' << r.label << ',' << r.start_index << ',' << format_real(r.energy)
      << ',' << format_real(r.fraction) << '\n';
  finish(f, path);
}

}  // namespace rgl
