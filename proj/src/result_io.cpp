#include "cascade/result_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cascade {

namespace {

using nlohmann::ordered_json;

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string results_to_csv(const ResultTable& table) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ResultRow& r : table.rows) {
    out += scheme_name(r.scheme);
    out += ',' + g12(r.bits_per_user) + ',' + g12(r.mean_distortion) + ',' +
           g12(r.std_distortion) + ',' + std::to_string(r.n_trials) + '\n';
  }
  return out;
}

std::string results_to_json(const ResultTable& table) {
  ordered_json j;
  ordered_json meta;
  meta["version"] = table.version;
  meta["seed_rule"] = table.seed_rule;
  meta["sr_allocation"] = "same cumulative-sum grid search as IR";
  meta["config"] = ordered_json::parse(config_to_json(table.config));
  j["metadata"] = meta;
  ordered_json rows = ordered_json::array();
  for (const ResultRow& r : table.rows) {
    rows.push_back({{"scheme", scheme_name(r.scheme)},
                    {"bits_per_user", r.bits_per_user},
                    {"mean_distortion", r.mean_distortion},
                    {"std_distortion", r.std_distortion},
                    {"n_trials", r.n_trials}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

ResultTable results_from_json(const std::string& text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    ResultTable table;
    const auto& meta = j.at("metadata");
    table.version = meta.at("version").get<std::string>();
    table.seed_rule = meta.at("seed_rule").get<std::string>();
    table.config = config_from_json(meta.at("config").dump());
    for (const auto& r : j.at("rows")) {
      const auto name = r.at("scheme").get<std::string>();
      const auto id = parse_scheme(name);
      if (!id) throw IoFailure("unknown scheme '" + name + "' in results");
      table.rows.push_back(ResultRow{*id, r.at("bits_per_user").get<double>(),
                                     r.at("mean_distortion").get<double>(),
                                     r.at("std_distortion").get<double>(),
                                     r.at("n_trials").get<std::size_t>()});
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(std::string("malformed results JSON: ") + e.what());
  }
}

void write_results(const ResultTable& table, const std::string& path, ResultFormat format) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  f << (format == ResultFormat::Csv ? results_to_csv(table) : results_to_json(table));
  f.close();
  if (!f) throw IoFailure("write to '" + path + "' failed");
}

ResultTable read_results_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return results_from_json(ss.str());
}

}  // namespace cascade
