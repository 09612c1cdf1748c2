#include "findex/report.hpp"

#include <cstdio>
#include <fstream>

namespace findex {

CheckResult make_check(std::string name, cxd value, cxd reference, double tol,
                       std::string provenance) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.reference = reference;
  c.tolerance = tol;
  c.provenance = std::move(provenance);
  c.pass = std::abs(value - reference) <= tol;
  return c;
}

int Report::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

json complex_to_json(cxd z) {
  return json{{"im", format_double(z.imag())}, {"re", format_double(z.real())}};
}

}  // namespace

std::string report_to_json(const Report& r) {
  json out;
  out["schema"] = r.schema;
  out["config"] = r.config_echo;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc;
    jc["name"] = c.name;
    jc["value"] = complex_to_json(c.value);
    jc["reference"] = complex_to_json(c.reference);
    jc["provenance"] = c.provenance;
    jc["tolerance"] = format_double(c.tolerance);
    jc["deviation"] = format_double(std::abs(c.value - c.reference));
    jc["pass"] = c.pass;
    checks.push_back(jc);
  }
  out["checks"] = checks;
  out["failures"] = r.failures();
  return out.dump(2) + "\n";
}

void write_report(const Report& r, const std::filesystem::path& file) {
  std::ofstream of(file, std::ios::binary);
  if (!of) fail(Errc::config_invalid, "cannot open report file " + file.string());
  of << report_to_json(r);
}

std::string csv_to_string(const CsvTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    out += t.header[i];
    out += (i + 1 < t.header.size()) ? "," : "";
  }
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += format_double(row[i]);
      out += (i + 1 < row.size()) ? "," : "";
    }
    out += "\n";
  }
  return out;
}

void write_csv(const CsvTable& t, const std::filesystem::path& file) {
  std::ofstream of(file, std::ios::binary);
  if (!of) fail(Errc::config_invalid, "cannot open csv file " + file.string());
  of << csv_to_string(t);
}

}  // namespace findex
