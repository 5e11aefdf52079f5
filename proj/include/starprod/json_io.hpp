#pragma once

#include <string>

#include <json.hpp>

#include "starprod/coeff_table.hpp"
#include "starprod/star.hpp"

namespace starprod::io {

/// Ordered JSON keeps key order fixed, which the byte-determinism contract
/// of exported tables relies on.
using Json = nlohmann::ordered_json;

Json to_json(const HRational& value);
HRational hrational_from_json(const Json& j);

Json to_json(const Manifold& manifold);
Manifold manifold_from_json(const Json& j);

Json to_json(const CoefficientTable& table);
CoefficientTable table_from_json(const Json& j);

Json to_json(const ChartFunction& f);
Json to_json(const StarResult& result);

/// One CSV row per table entry with the h-series of its coefficient through
/// the requested order: n,alpha,beta,c0,...,cJ.
std::string csv_series(const CoefficientTable& table, int hbar_order);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace starprod::io
