#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzt/probability.hpp"
#include "lzt/sweep.hpp"

namespace lzt {

/// Shortest decimal that round-trips to the same double; the fixed formatting
/// behind the byte-identical-output guarantee of the CLI.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline nlohmann::json to_json(const RunRecord& r) {
  return nlohmann::json{{"eta", r.eta},
                        {"alpha", r.alpha},
                        {"basis", to_string(r.basis)},
                        {"t_prime", r.t_prime},
                        {"tau", r.tau},
                        {"tau_vitanov", r.tau_vitanov},
                        {"tau_empirical", r.tau_empirical},
                        {"tau_analytic_adiabatic", r.tau_analytic_adiabatic},
                        {"tau_analytic_sudden", r.tau_analytic_sudden},
                        {"s1", r.s1},
                        {"s2", r.s2},
                        {"p_infinity", r.p_infinity},
                        {"crossing_count", r.crossing_count},
                        {"s2_negative", r.s2_negative}};
}

inline nlohmann::json error_json(const std::string& type, const std::string& message) {
  return nlohmann::json{{"error", {{"type", type}, {"message", message}}}};
}

inline constexpr const char* kSweepCsvHeader =
    "eta,alpha,basis,t_prime,tau,tau_vitanov,tau_empirical,"
    "tau_analytic_adiabatic,tau_analytic_sudden,s1,s2,p_infinity,"
    "crossing_count,s2_negative,error";

/// CSV table for a sweep, one row per grid point in ascending alpha order.
/// Failed rows keep the grid value and carry the message in `error`.
inline std::string sweep_csv(const std::vector<SweepRow>& rows, Basis basis) {
  std::string out = "# schema=1\n";
  out += kSweepCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    if (row.record) {
      const RunRecord& r = *row.record;
      out += format_double(r.eta);
      out += ',';
      out += format_double(r.alpha);
      out += ',';
      out += to_string(r.basis);
      out += ',';
      out += format_double(r.t_prime);
      out += ',';
      out += format_double(r.tau);
      out += ',';
      out += format_double(r.tau_vitanov);
      out += ',';
      out += format_double(r.tau_empirical);
      out += ',';
      out += format_double(r.tau_analytic_adiabatic);
      out += ',';
      out += format_double(r.tau_analytic_sudden);
      out += ',';
      out += format_double(r.s1);
      out += ',';
      out += format_double(r.s2);
      out += ',';
      out += format_double(r.p_infinity);
      out += ',';
      out += std::to_string(r.crossing_count);
      out += ',';
      out += r.s2_negative ? "true" : "false";
      out += ",\n";
    } else {
      std::string msg = row.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out += format_double(row.alpha);
      out += ',';
      out += format_double(row.alpha);
      out += ',';
      out += to_string(basis);
      out += ",,,,,,,,,,,,";
      out += msg;
      out += '\n';
    }
  }
  return out;
}

/// CSV time series `t,p,dp_dt` on a uniform grid of at least `min_points`
/// plus the exact t = 0 sample; `time_scale` rescales t (and 1/time_scale
/// rescales dp_dt) for physical-unit output.
inline std::string curve_csv(const ProbabilityCurve& curve, int min_points = 2000,
                             double time_scale = 1.0) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(min_points) + 1);
  const double t0 = curve.t_start, t1 = curve.t_end;
  bool zero_hit = false;
  for (int i = 0; i < min_points; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / (min_points - 1);
    if (t == 0.0) zero_hit = true;
    ts.push_back(t);
  }
  if (!zero_hit) {
    ts.push_back(0.0);
    std::sort(ts.begin(), ts.end());
  }
  std::string out = "# schema=1\nt,p,dp_dt\n";
  for (double t : ts) {
    out += format_double(t * time_scale);
    out += ',';
    out += format_double(curve.p(t));
    out += ',';
    out += format_double(curve.dp_dt(t) / time_scale);
    out += '\n';
  }
  return out;
}

}  // namespace lzt
