#include "austat/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace austat {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

bool parse_double(const std::string& text, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string scheme_id(const GeneratorScheme& scheme) {
  return scheme.label.empty() ? family_name(scheme.family) : scheme.label;
}

}  // namespace

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_sample_csv(std::ostream& out, const Sample& sample) {
  out << "x\n";
  for (Index i = 0; i < sample.n(); ++i) out << format_full(sample.values[i]) << "\n";
}

ArrXd read_values_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    if (!parse_double(line, v)) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw std::invalid_argument("read_values_csv: bad value line: " + line);
    }
    first = false;
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("read_values_csv: no values");
  return Eigen::Map<const ArrXd>(values.data(), static_cast<Index>(values.size()));
}

json sample_to_json(const Sample& sample) {
  json j;
  j["scheme"] = scheme_id(sample.scheme);
  j["family"] = family_name(sample.scheme.family);
  j["m"] = sample.scheme.m;
  j["n"] = sample.n();
  j["seed"] = sample.seed;
  j["values"] = std::vector<double>(sample.values.data(), sample.values.data() + sample.n());
  return j;
}

Sample sample_from_json(const json& j) {
  GeneratorScheme scheme;
  const std::string family = j.value("family", "");
  if (family == "ExpMin") {
    scheme.family = Family::ExpMin;
  } else if (family == "NormalSum") {
    scheme.family = Family::NormalSum;
  } else {
    scheme = scheme_from_label(j.at("scheme").get<std::string>());
  }
  if (j.contains("m")) scheme.m = j.at("m").get<int>();
  if (j.contains("scheme") && family.empty()) scheme.label = j.at("scheme").get<std::string>();
  const auto values = j.at("values").get<std::vector<double>>();
  Sample sample;
  sample.values = Eigen::Map<const ArrXd>(values.data(), static_cast<Index>(values.size()));
  sample.scheme = scheme;
  sample.seed = j.value("seed", std::uint64_t{0});
  return sample;
}

json block_estimate_to_json(const BlockEstimate& estimate) {
  json j;
  j["ell"] = estimate.ell;
  j["b_n"] = estimate.b_n;
  j["sigma_hat"] = estimate.sigma_hat;
  j["n"] = estimate.n;
  j["variant"] = estimate.variant == BlockVariant::PlugIn ? "plugin" : "oracle";
  return j;
}

json variation_report_to_json(const VariationReport& report) {
  json j;
  j["vitali"] = report.vitali;
  if (report.hk) j["hk"] = *report.hk;
  if (!report.per_face.empty()) {
    json faces = json::object();
    for (const auto& [dims, v] : report.per_face) {
      std::string key;
      for (size_t i = 0; i < dims.size(); ++i) {
        if (i > 0) key += ',';
        key += std::to_string(dims[i]);
      }
      faces[key] = v;
    }
    j["per_face"] = std::move(faces);
  }
  return j;
}

json replication_summary_to_json(const ReplicationSummary& row) {
  json j;
  j["scheme"] = scheme_id(row.scheme);
  j["family"] = family_name(row.scheme.family);
  j["m"] = row.scheme.m;
  j["n"] = row.n;
  j["r"] = row.r;
  j["g_bar"] = row.g_bar;
  j["emse_g"] = row.emse_g;
  j["cp_g"] = row.cp_g;
  j["median_g"] = row.median_g;
  j["skewness_g"] = row.skewness_g;
  j["kurtosis_g"] = row.kurtosis_g;
  j["b_bar"] = row.b_bar;
  j["emse_b"] = row.emse_b;
  j["two_sigma_hat"] = row.two_sigma_hat;
  if (row.bias) j["bias"] = *row.bias;
  return j;
}

std::string replication_summary_csv_header() {
  return "scheme,n,r,g_bar,emse_g,cp_g,median_g,skewness_g,kurtosis_g,"
         "b_bar,emse_b,two_sigma_hat,bias";
}

std::string replication_summary_csv_row(const ReplicationSummary& row) {
  std::ostringstream out;
  out << scheme_id(row.scheme) << ',' << row.n << ',' << row.r << ','
      << format_full(row.g_bar) << ',' << format_full(row.emse_g) << ','
      << format_full(row.cp_g) << ',' << format_full(row.median_g) << ','
      << format_full(row.skewness_g) << ',' << format_full(row.kurtosis_g) << ','
      << format_full(row.b_bar) << ',' << format_full(row.emse_b) << ','
      << format_full(row.two_sigma_hat) << ',';
  if (row.bias) out << format_full(*row.bias);
  return out.str();
}

void write_joint_df_csv(std::ostream& out, const JointDFEstimate& estimate) {
  out << "s,t,value\n";
  for (Index a = 0; a < estimate.grid_s.size(); ++a)
    for (Index b = 0; b < estimate.grid_t.size(); ++b)
      out << format_full(estimate.grid_s[a]) << ',' << format_full(estimate.grid_t[b]) << ','
          << format_full(estimate.values(a, b)) << "\n";
}

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("read_grid_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  double probe = 0.0;
  std::vector<std::vector<double>> rows;
  if (!header.empty() && parse_double(header[0], probe)) {
    // no header; treat the first line as data
    std::vector<double> row;
    for (const auto& f : header) {
      double v = 0.0;
      if (!parse_double(f, v)) throw std::invalid_argument("read_grid_csv: bad field: " + f);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const size_t arity = rows.empty() ? header.size() : rows[0].size();
  if (arity != 2 && arity != 3)
    throw std::invalid_argument("read_grid_csv: expected x,value or x,y,value columns");

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != arity)
      throw std::invalid_argument("read_grid_csv: inconsistent column count: " + line);
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) throw std::invalid_argument("read_grid_csv: bad field: " + f);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_grid_csv: no data rows");

  const size_t k = arity - 1;
  std::vector<std::vector<double>> coords(k);
  for (size_t d = 0; d < k; ++d) {
    for (const auto& row : rows) coords[d].push_back(row[d]);
    std::sort(coords[d].begin(), coords[d].end());
    coords[d].erase(std::unique(coords[d].begin(), coords[d].end()), coords[d].end());
  }

  std::vector<ArrXd> axes;
  for (size_t d = 0; d < k; ++d)
    axes.push_back(Eigen::Map<const ArrXd>(coords[d].data(), static_cast<Index>(coords[d].size())));

  Index total = 1;
  for (const auto& axis : axes) total *= axis.size();
  if (static_cast<Index>(rows.size()) != total)
    throw std::invalid_argument("read_grid_csv: rows do not form a full product grid");

  ArrXd values(total);
  std::vector<bool> seen(static_cast<size_t>(total), false);
  for (const auto& row : rows) {
    Index flat = 0;
    Index stride = total;
    for (size_t d = 0; d < k; ++d) {
      stride /= axes[d].size();
      const auto it = std::lower_bound(coords[d].begin(), coords[d].end(), row[d]);
      flat += static_cast<Index>(it - coords[d].begin()) * stride;
    }
    if (seen[static_cast<size_t>(flat)])
      throw std::invalid_argument("read_grid_csv: duplicate grid point");
    seen[static_cast<size_t>(flat)] = true;
    values[flat] = row[k];
  }
  return GridFunction(std::move(axes), std::move(values));
}

}  // namespace austat
