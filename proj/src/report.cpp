#include "polemap/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace polemap {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_steps_csv(std::ostream& os, const IntegrationResult& result) {
  const std::size_t dim = result.records.empty() ? 0 : result.records.front().y.size();
  os << "index,t_re,t_im";
  for (std::size_t i = 0; i < dim; ++i)
    os << ",y" << i << "_re,y" << i << "_im";
  os << ",h\n";
  for (const auto& rec : result.records) {
    os << rec.index << ',' << num(rec.t.real()) << ',' << num(rec.t.imag());
    for (const auto& yi : rec.y)
      os << ',' << num(yi.real()) << ',' << num(yi.imag());
    os << ',' << num(rec.h_taken) << '\n';
  }
}

void write_estimates_csv(std::ostream& os, const IntegrationResult& result) {
  os << "step,loc_re,loc_im,order_re,order_im,residual,confidence,accepted\n";
  for (const auto& est : result.estimates) {
    os << est.step_index << ',' << num(est.location.real()) << ','
       << num(est.location.imag()) << ',' << num(est.order_s.real()) << ','
       << num(est.order_s.imag()) << ',' << num(est.residual) << ','
       << num(est.confidence) << ',' << (est.accepted ? 1 : 0) << '\n';
  }
}

void print_step_table(std::ostream& os, const IntegrationResult& result) {
  os << "Step      Complex time t                      y                     y'\n";
  char buf[160];
  for (const auto& rec : result.records) {
    std::snprintf(buf, sizeof(buf), "%4d  %8.3f + %7.3f i", rec.index + 1,
                  rec.t.real(), rec.t.imag());
    os << buf;
    for (const auto& yi : rec.y) {
      std::snprintf(buf, sizeof(buf), "  %9.4f + %9.4f i", yi.real(), yi.imag());
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace polemap
