#include "egocr/report.hpp"

#include <cstdio>
#include <sstream>

#include "egocr/error.hpp"
#include "egocr/io.hpp"

namespace egocr {

namespace {

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

void csv_estimand(std::ostringstream& out, std::string_view design, std::string_view estimand,
                  const EstimandSummary& s) {
  const std::pair<const char*, double> rows[] = {
      {"bias", s.bias}, {"sd", s.sd}, {"rmse", s.rmse},
      {"rejection_rate", s.rejection_rate}, {"coverage", s.coverage}};
  for (const auto& [metric, value] : rows) {
    out << design << ',' << estimand << ',' << metric << ',' << format_double(value) << '\n';
  }
}

std::string csv(const SimReport& report) {
  std::ostringstream out;
  out << "design,estimand,metric,value\n";
  for (const auto& d : report.designs) {
    const auto name = to_string(d.design);
    csv_estimand(out, name, "tau", d.tau);
    csv_estimand(out, name, "gamma", d.gamma);
    out << name << ",design,mean_clusters," << format_double(d.mean_clusters) << '\n';
    out << name << ",design,mean_r_bar," << format_double(d.mean_r_bar) << '\n';
    out << name << ",design,mean_b," << format_double(d.mean_b) << '\n';
    out << name << ",design,reps_completed," << d.reps_completed << '\n';
    out << name << ",design,failures," << d.failures << '\n';
  }
  return out.str();
}

std::string markdown(const SimReport& report) {
  std::ostringstream out;
  out << "| Design | K_n | r_bar | b_n "
         "| bias(tau) | SD(tau) | RMSE(tau) | reject tau (%) | cover tau (%) "
         "| bias(gamma) | SD(gamma) | RMSE(gamma) | reject gamma (%) | cover gamma (%) |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& d : report.designs) {
    out << "| " << to_string(d.design) << " | " << fixed3(d.mean_clusters) << " | " << fixed3(d.mean_r_bar)
        << " | " << fixed3(d.mean_b);
    for (const auto* s : {&d.tau, &d.gamma}) {
      out << " | " << fixed3(s->bias) << " | " << fixed3(s->sd) << " | " << fixed3(s->rmse) << " | "
          << fixed3(100.0 * s->rejection_rate) << " | " << fixed3(100.0 * s->coverage);
    }
    out << " |\n";
  }
  return out.str();
}

}  // namespace

std::string emit_report(const SimReport& report, std::string_view format) {
  if (report.designs.empty()) throw Error("report has no designs");
  if (format == "csv") return csv(report);
  if (format == "markdown" || format == "md") return markdown(report);
  throw Error("unknown report format '" + std::string(format) + "'");
}

}  // namespace egocr
