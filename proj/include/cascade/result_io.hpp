// Persistence of aggregated results.
#pragma once

#include <string>

#include "cascade/experiment.hpp"

namespace cascade {

class IoFailure : public Error {
 public:
  using Error::Error;
};

enum class ResultFormat { Csv, Json };

inline constexpr const char* kCsvHeader =
    "scheme,bits_per_user,mean_distortion,std_distortion,n_trials";

/// CSV with header kCsvHeader; floats printed with 12 significant digits.
std::string results_to_csv(const ResultTable& table);
/// {"metadata": {...}, "rows": [...]}; doubles round-trip exactly.
std::string results_to_json(const ResultTable& table);
ResultTable results_from_json(const std::string& text);

/// Throws IoFailure.
void write_results(const ResultTable& table, const std::string& path, ResultFormat format);
ResultTable read_results_json(const std::string& path);

}  // namespace cascade
