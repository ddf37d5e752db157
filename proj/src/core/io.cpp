#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bellkcc::io {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  // Round to 12 significant digits first, then lay the digits out in
  // fixed notation using the rounded exponent.
  char sci[64];
  std::snprintf(sci, sizeof sci, "%.11e", x);
  const char* e = std::strchr(sci, 'e');
  const int exponent = std::atoi(e + 1);
  const double rounded = std::strtod(sci, nullptr);
  const int decimals = std::max(0, 11 - exponent);
  char out[512];
  std::snprintf(out, sizeof out, "%.*f", decimals, rounded);
  return out;
}

double round_to_printed(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Matrix4c parse_state_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix"))
    throw Error(ErrorCode::ParseError, "state file needs an object with key \"matrix\"");
  const json& rows = doc["matrix"];
  if (!rows.is_array() || rows.size() != 4)
    throw Error(ErrorCode::ParseError, "\"matrix\" must be an array of 4 rows");
  Matrix4c m{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 4)
      throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " must hold 4 entries");
    for (std::size_t j = 0; j < 4; ++j) {
      const json& z = rows[i][j];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw Error(ErrorCode::ParseError,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") must be [re, im]");
      m[i * 4 + j] = {z[0].get<double>(), z[1].get<double>()};
    }
  }
  return m;
}

TwoQubitState parse_state(const std::string& text) { return TwoQubitState::make(parse_state_matrix(text)); }

std::string state_to_json(const TwoQubitState& rho) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
    rows.push_back(row);
  }
  return json{{"matrix", rows}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::string series_csv(const sweep::SweepSeries& s) {
  std::string out = "beta,bfv,dbfv\n";
  for (std::size_t k = 0; k < s.betas.size(); ++k) {
    out += format_number(s.betas[k]);
    out += ',';
    out += format_number(s.bfv[k]);
    out += ',';
    out += s.divergent[k] ? "inf" : format_number(s.dbfv[k]);
    out += '\n';
  }
  return out;
}

namespace {

json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_to_printed(x);
}

const char* kind_name(kcc::PairKind k) { return k == kcc::PairKind::Nearest ? "nearest" : "next"; }
const char* method_name(sweep::Method m) { return m == sweep::Method::Analytic ? "analytic" : "fd"; }

}  // namespace

std::string series_json(const sweep::SweepSeries& s) {
  json points = json::array();
  for (std::size_t k = 0; k < s.betas.size(); ++k) {
    points.push_back({{"beta", number_or_null(s.betas[k])},
                      {"bfv", number_or_null(s.bfv[k])},
                      {"dbfv", number_or_null(s.dbfv[k])},
                      {"divergent", static_cast<bool>(s.divergent[k])}});
  }
  const auto& c = s.config;
  json doc{{"config",
            {{"beta_min", c.beta_min},
             {"beta_max", c.beta_max},
             {"steps", c.steps},
             {"delta_beta", c.delta_beta},
             {"pair", kind_name(c.kind)},
             {"method", method_name(c.method)}}},
           {"points", points}};
  return doc.dump(2) + "\n";
}

std::string series_svg(const sweep::SweepSeries& s) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 20, bottom = 50;
  double ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < s.dbfv.size(); ++k) {
    if (!std::isfinite(s.dbfv[k])) continue;
    if (!any) ymin = ymax = s.dbfv[k];
    ymin = std::min(ymin, s.dbfv[k]);
    ymax = std::max(ymax, s.dbfv[k]);
    any = true;
  }
  if (ymax <= ymin) ymax = ymin + 1.0;
  const double xmin = s.betas.front(), xmax = s.betas.back();
  const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
  const auto py = [&](double y) { return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom); };

  std::ostringstream out;
  char buf[128];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (std::size_t k = 0; k < s.betas.size(); ++k) {
    if (!std::isfinite(s.dbfv[k])) continue;
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", px(s.betas[k]), py(s.dbfv[k]));
    out << buf;
    first = false;
  }
  out << "\"/>\n";
  std::snprintf(buf, sizeof buf, "%.3f", xmin);
  out << "<text x=\"" << left << "\" y=\"" << height - bottom + 18 << "\" font-size=\"12\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.3f", xmax);
  out << "<text x=\"" << width - right << "\" y=\"" << height - bottom + 18
      << "\" font-size=\"12\" text-anchor=\"end\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.4g", ymax);
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" font-size=\"12\" text-anchor=\"end\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.4g", ymin);
  out << "<text x=\"" << left - 6 << "\" y=\"" << height - bottom << "\" font-size=\"12\" text-anchor=\"end\">"
      << buf << "</text>\n";
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">beta</text>\n";
  out << "<text x=\"18\" y=\"" << (top + height - bottom) / 2 << "\" font-size=\"14\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << (top + height - bottom) / 2 << ")\">dB/dbeta</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string comparison_csv(const oracles::ComparisonReport& r) {
  std::string out = "side";
  for (auto o : oracles::kObservables) {
    out += ',';
    out += oracles::observable_name(o);
  }
  for (const auto& m : r.matches) out += "," + m.formula + "," + m.formula + "_best," + m.formula + "_deviation";
  out += '\n';
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    out += std::to_string(r.rows[i].side);
    for (double v : r.rows[i].enumerated) out += "," + format_number(v);
    for (const auto& m : r.matches) {
      out += "," + format_number(m.value);
      out += ",";
      out += oracles::observable_name(m.best[i]);
      out += "," + format_number(m.deviation[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace bellkcc::io
