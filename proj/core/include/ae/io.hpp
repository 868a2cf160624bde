#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ae/decision_engine.hpp"
#include "ae/model.hpp"

namespace ae {

// A dataset sketch: pattern counts plus, when the file carried them, the
// by-true-label cells the counts are the row sums of.
struct Sketch {
    PatternCounts counts;
    std::optional<GroundTruthCounts> by_label;
    std::array<std::string, 3> classifier_ids{{"1", "2", "3"}};
};

std::string sketch_schema();

Sketch sketch_from_json(const nlohmann::json& doc);
Sketch load_sketch(const std::filesystem::path& path);
nlohmann::json sketch_to_json(const Sketch& sketch);

struct RecordsTable {
    std::vector<DecisionRecord> records;
    std::vector<std::string> classifier_ids;
    bool has_truth = false;
};

RecordsTable records_from_csv(std::istream& in, const std::string& context);
RecordsTable load_records(const std::filesystem::path& path);
std::string records_to_csv(const std::vector<DecisionRecord>& records,
                           const std::vector<std::string>& classifier_ids, bool with_truth);

// Exact values carry both spellings: {"exact": "num/den", "approx": "0.0888..."}.
// Pure floats carry only {"approx": ...}.
nlohmann::json rational_json(const Rational& value, int precision);
nlohmann::json bigfloat_json(const BigFloat& value, int precision);

nlohmann::json counts_json(const PatternCounts& counts);
nlohmann::json partition_json(const GroundTruthCounts& cells);
nlohmann::json partition_json(const ByTrueLabelCounts<std::int64_t>& cells);
nlohmann::json point_json(const RationalPoint& point, int precision);
nlohmann::json point_json(const FloatPoint& point, int precision);
nlohmann::json solution_json(const AeSolution& solution, int precision);
nlohmann::json mv_evaluation_json(const MvEvaluation& eval, int precision);
nlohmann::json gt_evaluation_json(const GroundTruthEvaluation& eval, int precision);
nlohmann::json error_breakdown_json(const ErrorBreakdown& errors);
nlohmann::json comparison_json(const ComparisonReport& report, int precision);

// Write-then-rename; creates parent directories.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ae
