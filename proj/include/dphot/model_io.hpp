#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dphot/constants.hpp"
#include "dphot/dispersion.hpp"
#include "dphot/errors.hpp"

namespace dphot {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_number(const std::string& tok, const std::string& context) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(context + ": not a number: '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(context + ": trailing junk in '" + tok + "'");
  return v;
}

/// Parses "[a, b, c]" or a bare scalar into a list of doubles.
inline std::vector<double> parse_array(std::string v, const std::string& context) {
  v = trim(v);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ParseError(context + ": unterminated array");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<double> out;
  std::string tok;
  std::istringstream ss(v);
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ParseError(context + ": empty array element");
    out.push_back(parse_number(tok, context));
  }
  if (out.empty()) throw ParseError(context + ": empty value");
  return out;
}

}  // namespace detail

/// Converts a [min, max] vacuum-wavelength band in nm to an angular-frequency
/// band in rad/s.
inline std::pair<double, double> band_from_nm(double nm_min, double nm_max) {
  if (!(nm_min > 0.0) || !(nm_max > nm_min))
    throw ParseError("band_nm must satisfy 0 < min < max");
  return {si::omega_from_lambda_nm(nm_max), si::omega_from_lambda_nm(nm_min)};
}

/// Parses a key/value model description:
///   kind = sellmeier
///   coefficients = [B1, C1, B2, C2, B3, C3]
///   band_nm = [310, 2500]
/// Lines starting with '#' and blank lines are skipped.
inline DispersionModel parse_model_text(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("model line " + std::to_string(lineno) + ": expected key = value");
    kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  for (const char* key : {"kind", "coefficients", "band_nm"})
    if (!kv.count(key)) throw ParseError(std::string("model: missing key '") + key + "'");

  const auto band = detail::parse_array(kv["band_nm"], "band_nm");
  if (band.size() != 2) throw ParseError("band_nm must have two entries");
  const auto [w_min, w_max] = band_from_nm(band[0], band[1]);
  const auto coeff = detail::parse_array(kv["coefficients"], "coefficients");

  const std::string& kind = kv["kind"];
  if (kind == "constant") {
    if (coeff.size() != 1) throw ParseError("constant model takes one coefficient");
    return DispersionModel::constant(coeff[0], w_min, w_max);
  }
  if (kind == "cauchy") return DispersionModel::cauchy(coeff, w_min, w_max);
  if (kind == "sellmeier") return DispersionModel::sellmeier(coeff, w_min, w_max);
  if (kind == "tabulated")
    throw ParseError("tabulated models are loaded from two-column CSV files");
  throw ParseError("unknown model kind '" + kind + "'");
}

/// Loads a tabulated model from two-column CSV "lambda_nm,n"; a non-numeric
/// first row is treated as a header. The validity band is the table extent.
inline DispersionModel parse_table_csv(std::istream& in) {
  std::vector<double> omega, n;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("table line " + std::to_string(lineno) + ": expected lambda_nm,n");
    const std::string a = detail::trim(line.substr(0, comma));
    const std::string b = detail::trim(line.substr(comma + 1));
    if (lineno == 1 && !a.empty() && !std::isdigit(static_cast<unsigned char>(a[0])) &&
        a[0] != '-' && a[0] != '+' && a[0] != '.')
      continue;  // header row
    const double lambda_nm = detail::parse_number(a, "table lambda_nm");
    if (!(lambda_nm > 0.0)) throw ParseError("table lambda_nm must be positive");
    omega.push_back(si::omega_from_lambda_nm(lambda_nm));
    n.push_back(detail::parse_number(b, "table n"));
  }
  return DispersionModel::tabulated(std::move(omega), std::move(n));
}

/// BK7 borosilicate crown glass, three-term Sellmeier fit (SCHOTT catalog
/// coefficients), valid 310-2500 nm.
inline DispersionModel bk7_model() {
  return DispersionModel::sellmeier(
      {1.03961212, 0.00600069867, 0.231792344, 0.0200179144, 1.01046945, 103.560653},
      si::omega_from_lambda_nm(2500.0), si::omega_from_lambda_nm(310.0));
}

inline DispersionModel vacuum_model() {
  return DispersionModel::constant(1.0, si::omega_from_lambda_nm(1e9),
                                   si::omega_from_lambda_nm(1.0));
}

/// Resolves a model reference: the built-in aliases "vacuum" and "bk7", a
/// ".csv" path (tabulated), or a key/value model file path.
inline DispersionModel load_model(const std::string& ref) {
  if (ref == "vacuum") return vacuum_model();
  if (ref == "bk7") return bk7_model();
  std::ifstream in(ref);
  if (!in) throw ParseError("cannot open model file '" + ref + "'");
  if (ref.size() > 4 && ref.substr(ref.size() - 4) == ".csv") return parse_table_csv(in);
  return parse_model_text(in);
}

}  // namespace dphot
