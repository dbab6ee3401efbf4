#include "fw/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fw {

std::string trace_to_csv(const IterateTrace& trace) {
  std::ostringstream os;
  os << "# fw-trace v1\n";
  os << "k,f,gap_exact,gap_approx,step,grad_norm,slack_onestep,beta\n";
  os << std::setprecision(17);
  for (const auto& row : trace.rows) {
    os << row.k << ',' << row.f << ',' << row.gap_exact << ',' << row.gap_approx << ','
       << row.alpha_bar << ',' << row.grad_norm << ',' << row.slack_onestep << ',' << row.beta
       << '\n';
  }
  return os.str();
}

nlohmann::json trace_summary_json(const IterateTrace& trace) {
  nlohmann::json j;
  j["iterations"] = trace.rows.size() - 1;
  j["min_gap"] = trace.min_gap_exact();
  j["final_f"] = trace.final_f();
  if (trace.has_fstar()) {
    j["final_suboptimality"] = trace.final_suboptimality();
  } else {
    j["final_suboptimality"] = nullptr;
  }
  j["null_steps"] = trace.null_steps;
  j["clamped_steps"] = trace.clamped_steps;
  j["delta"] = trace.delta_base;
  return j;
}

nlohmann::json checks_json(const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["slack"] = c.slack;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << contents;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move " + tmp + " into place");
  }
}

}  // namespace fw
