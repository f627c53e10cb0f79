#include "qpulse/artifacts.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qpulse {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out.good()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string pulse_csv(const Pulse& p) {
  std::string s = "n,value\n";
  for (int i = 0; i < p.size(); ++i) {
    s += std::to_string(i) + "," + format_double(p.samples[i]) + "\n";
  }
  return s;
}

std::string pulse_json(const Pulse& p) {
  nlohmann::json j;
  j["N"] = p.size();
  j["symmetry"] = to_string(p.symmetry);
  j["label"] = p.label;
  j["samples"] = p.samples;
  return j.dump(2) + "\n";
}

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "omega,re,im,amplitude\n";
  for (size_t i = 0; i < s.omega.size(); ++i) {
    out += format_double(s.omega[i]) + "," + format_double(s.values[i].real()) +
           "," + format_double(s.values[i].imag()) + "," +
           format_double(s.amplitude[i]) + "\n";
  }
  return out;
}

std::string waveform_csv(const PhysicalPulse& p) {
  std::string out = "t_ns,epsilon_radns,omega1_radns,flux_phi0\n";
  const bool with_flux = p.flux_ext.size() == p.time.size();
  for (size_t i = 0; i < p.time.size(); ++i) {
    out += format_double(p.time[i]) + "," + format_double(p.epsilon[i]) + "," +
           format_double(p.omega1[i]) + "," +
           (with_flux ? format_double(p.flux_ext[i]) : std::string("nan")) + "\n";
  }
  return out;
}

std::string predictions_csv(const std::vector<PredictionRow>& rows) {
  std::string out = "td_ns,pe,method\n";
  for (const auto& r : rows) {
    out += format_double(r.td) + "," + format_double(r.pe) + "," + r.method + "\n";
  }
  return out;
}

std::string gate_points_csv(const std::vector<GatePoint>& rows) {
  std::string out = "td_ns,A,phase_rad,pe,fg,l1\n";
  for (const auto& r : rows) {
    out += format_double(r.td) + "," + format_double(r.amplitude) + "," +
           format_double(r.cond_phase) + "," + format_double(r.pe) + "," +
           (r.fg ? format_double(*r.fg) : std::string("nan")) + "," +
           (r.l1 ? format_double(*r.l1) : std::string("nan")) + "\n";
  }
  return out;
}

std::string scan_matrix_csv(const ScanResult& scan, bool phase) {
  std::string out = "td_ns";
  for (double a : scan.a) out += ",A=" + format_double(a);
  out += "\n";
  const auto& m = phase ? scan.phase : scan.pe;
  for (size_t i = 0; i < scan.td.size(); ++i) {
    out += format_double(scan.td[i]);
    for (size_t j = 0; j < scan.a.size(); ++j) out += "," + format_double(m[i][j]);
    out += "\n";
  }
  return out;
}

std::string contour_csv(const ContourCurve& curve) {
  std::string out = "td_ns,A,pe\n";
  for (const auto& p : curve.points) {
    out += format_double(p.td) + "," + format_double(p.a) + "," +
           format_double(p.pe) + "\n";
  }
  return out;
}

std::string operating_points_json(const OperatingPointsResult& ops) {
  nlohmann::json j;
  j["monotone"] = ops.monotone;
  j["points"] = nlohmann::json::array();
  for (const auto& op : ops.points) {
    nlohmann::json p;
    p["td_ns"] = op.td;
    p["A"] = op.a;
    p["pe"] = op.pe;
    p["log10_pe"] = std::log10(op.pe);
    if (op.fg) {
      p["fg"] = *op.fg;
      p["infidelity"] = 1.0 - *op.fg;
    }
    p["is_best"] = op.is_best;
    j["points"].push_back(p);
  }
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "index,family,fs_gsas,bw_ghz,td_ns,log10_pe,infidelity\n";
  for (const auto& r : rows) {
    out += r.index + "," + r.family + "," + format_double(r.fs) + "," +
           format_double(r.bw) + "," + format_double(r.td) + "," +
           format_double(r.log10_pe) + "," + format_double(r.infidelity) + "\n";
  }
  return out;
}

}  // namespace qpulse
