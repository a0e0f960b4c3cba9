#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "austat/generators.hpp"
#include "austat/jointdf.hpp"
#include "austat/montecarlo.hpp"
#include "austat/types.hpp"
#include "austat/variance_est.hpp"
#include "austat/variation.hpp"

namespace austat {

/// 17-significant-digit decimal form; round-trips any double bit-exactly.
std::string format_full(double value);

void write_sample_csv(std::ostream& out, const Sample& sample);
/// Reads a one-column CSV ("x" header optional) into values.
ArrXd read_values_csv(std::istream& in);

nlohmann::json sample_to_json(const Sample& sample);
Sample sample_from_json(const nlohmann::json& j);

nlohmann::json block_estimate_to_json(const BlockEstimate& estimate);
nlohmann::json variation_report_to_json(const VariationReport& report);
nlohmann::json replication_summary_to_json(const ReplicationSummary& row);

std::string replication_summary_csv_header();
std::string replication_summary_csv_row(const ReplicationSummary& row);

void write_joint_df_csv(std::ostream& out, const JointDFEstimate& estimate);

/// Loads a grid CSV with columns x,value (k=1) or x,y,value (k=2); rows in
/// any order but must cover the full product grid.
GridFunction read_grid_csv(std::istream& in);

}  // namespace austat
