#include "ae/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace ae {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& context, const std::string& what) {
    throw InputError(context + ": " + what + "\n" + sketch_schema());
}

std::uint64_t nonnegative_count(const json& value, const std::string& context,
                                const std::string& key) {
    if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<std::int64_t>() < 0))
        schema_error(context, "count for \"" + key + "\" must be a non-negative integer");
    return value.get<std::uint64_t>();
}

void fill_pattern_map(const json& object, const std::string& context,
                      const std::function<void(DecisionPattern, std::uint64_t)>& sink) {
    if (!object.is_object()) schema_error(context, "pattern map must be a JSON object");
    for (const auto& [key, value] : object.items()) {
        DecisionPattern pattern(0);
        try {
            pattern = DecisionPattern::parse(key);
        } catch (const InputError&) {
            schema_error(context, "unknown pattern key \"" + key + "\"");
        }
        sink(pattern, nonnegative_count(value, context, key));
    }
}

json quadratic_json(const AeSolution& solution, int precision) {
    json out;
    out["a"] = rational_json(solution.quadratic.a, precision);
    out["b"] = rational_json(solution.quadratic.b, precision);
    out["c"] = rational_json(solution.quadratic.c, precision);
    out["discriminant"] = rational_json(solution.discriminant, precision);
    return out;
}

json moments_json(const TrioMoments& moments, int precision) {
    json out;
    for (int s = 0; s < 3; ++s) out["f_b"].push_back(rational_json(moments.f_b[s], precision));
    for (int p = 0; p < 3; ++p)
        out["pair_deltas"].push_back(rational_json(moments.pair[p], precision));
    out["trio_delta"] = rational_json(moments.trio, precision);
    return out;
}

json candidate_json(const Candidate& candidate, int precision) {
    json out;
    out["exact"] = candidate.is_exact;
    out["point"] = candidate.is_exact ? point_json(candidate.exact, precision)
                                      : point_json(candidate.approx, precision);
    out["in_range"] = candidate.in_range;
    out["substitution_exact"] = candidate.substitution_exact;
    out["better_than_random"] = candidate.better_than_random;
    return out;
}

}  // namespace

std::string sketch_schema() {
    return "expected sketch schema:\n"
           "  {\"q\": <int>, \"labels\": [\"a\",\"b\"], \"classifiers\": [<3 ids>],\n"
           "   \"by_true_label\": {\"a\": {\"aaa\": <n>, ...}, \"b\": {...}}}\n"
           "or the counts-only variant:\n"
           "  {\"q\": <int>, \"patterns\": {\"aaa\": <n>, ...}}\n"
           "pattern keys are three characters from {a,b} in classifier order";
}

Sketch sketch_from_json(const nlohmann::json& doc) {
    const std::string context = "sketch";
    if (!doc.is_object()) schema_error(context, "top level must be a JSON object");
    Sketch out;
    if (doc.contains("labels")) {
        const json expected = json::array({"a", "b"});
        if (doc["labels"] != expected) schema_error(context, "\"labels\" must be [\"a\",\"b\"]");
    }
    if (doc.contains("classifiers")) {
        const auto& ids = doc["classifiers"];
        if (!ids.is_array() || ids.size() != 3)
            schema_error(context, "\"classifiers\" must list exactly three ids");
        for (int s = 0; s < 3; ++s) {
            if (!ids[s].is_string() && !ids[s].is_number_integer())
                schema_error(context, "classifier ids must be strings or integers");
            out.classifier_ids[s] =
                ids[s].is_string() ? ids[s].get<std::string>() : std::to_string(ids[s].get<long long>());
        }
    }

    if (doc.contains("by_true_label")) {
        const auto& by_label = doc["by_true_label"];
        if (!by_label.is_object() || !by_label.contains("a") || !by_label.contains("b"))
            schema_error(context, "\"by_true_label\" must contain objects \"a\" and \"b\"");
        GroundTruthCounts cells;
        for (const Label label : {Label::a, Label::b})
            fill_pattern_map(by_label[std::string(1, to_char(label))], context,
                             [&](DecisionPattern p, std::uint64_t n) { cells.cell(label, p) = n; });
        out.by_label = cells;
        out.counts = project(cells);
    } else if (doc.contains("patterns")) {
        PatternCounts counts;
        fill_pattern_map(doc["patterns"], context,
                         [&](DecisionPattern p, std::uint64_t n) { counts.at(p) = n; });
        counts.q = 0;
        for (const std::uint64_t n : counts.n) counts.q += n;
        out.counts = counts;
    } else {
        schema_error(context, "need either \"by_true_label\" or \"patterns\"");
    }

    if (doc.contains("q")) {
        const std::uint64_t declared = nonnegative_count(doc["q"], context, "q");
        if (declared != out.counts.q)
            throw InputError(context + ": declared q=" + std::to_string(declared) +
                             " does not match pattern sum " + std::to_string(out.counts.q));
    }
    if (out.counts.q == 0) throw InputError(context + ": empty dataset (q = 0)");
    return out;
}

Sketch load_sketch(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    try {
        return sketch_from_json(doc);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

nlohmann::json sketch_to_json(const Sketch& sketch) {
    json out;
    out["q"] = sketch.counts.q;
    out["labels"] = json::array({"a", "b"});
    out["classifiers"] = sketch.classifier_ids;
    if (sketch.by_label) {
        json by_label;
        for (const Label label : {Label::a, Label::b}) {
            json cells = json::object();
            for (const DecisionPattern p : DecisionPattern::canonical())
                cells[p.str()] = sketch.by_label->cell(label, p);
            by_label[std::string(1, to_char(label))] = cells;
        }
        out["by_true_label"] = by_label;
    } else {
        json patterns = json::object();
        for (const DecisionPattern p : DecisionPattern::canonical()) patterns[p.str()] = sketch.counts.at(p);
        out["patterns"] = patterns;
    }
    return out;
}

RecordsTable records_from_csv(std::istream& in, const std::string& context) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(context + ": empty records file");
    const auto split = [](const std::string& text) {
        std::vector<std::string> fields;
        std::string field;
        std::stringstream stream(text);
        while (std::getline(stream, field, ',')) fields.push_back(field);
        if (!text.empty() && text.back() == ',') fields.emplace_back();
        return fields;
    };

    auto header = split(line);
    if (header.size() < 2 || header[0] != "item_id")
        throw InputError(context + ":1: header must start with item_id followed by classifier ids");
    RecordsTable out;
    out.has_truth = header.back() == "true_label";
    const std::size_t id_count = header.size() - 1 - (out.has_truth ? 1 : 0);
    if (id_count < 1) throw InputError(context + ":1: no classifier columns");
    out.classifier_ids.assign(header.begin() + 1, header.begin() + 1 + id_count);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != header.size())
            throw InputError(context + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        DecisionRecord rec;
        rec.item_id = fields[0];
        for (std::size_t s = 0; s < id_count; ++s) {
            const std::string& cell = fields[1 + s];
            const auto label = cell.size() == 1 ? label_from_char(cell[0]) : std::nullopt;
            if (!label)
                throw InputError(context + ":" + std::to_string(line_no) + ": decision \"" + cell +
                                 "\" is not a label (a or b)");
            rec.decisions.emplace_back(out.classifier_ids[s], *label);
        }
        if (out.has_truth) {
            const std::string& cell = fields.back();
            const auto label = cell.size() == 1 ? label_from_char(cell[0]) : std::nullopt;
            if (!label)
                throw InputError(context + ":" + std::to_string(line_no) + ": true label \"" + cell +
                                 "\" is not a label (a or b)");
            rec.true_label = *label;
        }
        out.records.push_back(std::move(rec));
    }
    if (out.records.empty()) throw InputError(context + ": no data rows");
    return out;
}

RecordsTable load_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return records_from_csv(in, path.string());
}

std::string records_to_csv(const std::vector<DecisionRecord>& records,
                           const std::vector<std::string>& classifier_ids, bool with_truth) {
    std::string out = "item_id";
    for (const auto& id : classifier_ids) out += "," + id;
    if (with_truth) out += ",true_label";
    out += "\n";
    for (const auto& rec : records) {
        out += rec.item_id;
        for (const auto& id : classifier_ids) {
            const std::optional<Label> decision = rec.decision_of(id);
            if (!decision)
                throw InputError("record " + rec.item_id + " lacks a decision from classifier " + id);
            out += std::string(",") + to_char(*decision);
        }
        if (with_truth) {
            if (!rec.true_label) throw InputError("record " + rec.item_id + " lacks a true label");
            out += std::string(",") + to_char(*rec.true_label);
        }
        out += "\n";
    }
    return out;
}

nlohmann::json rational_json(const Rational& value, int precision) {
    json out;
    out["exact"] = rational_string(value);
    out["approx"] = decimal_string(value, precision);
    return out;
}

nlohmann::json bigfloat_json(const BigFloat& value, int precision) {
    json out;
    out["approx"] = decimal_string(value, precision);
    return out;
}

nlohmann::json counts_json(const PatternCounts& counts) {
    json patterns = json::object();
    for (const DecisionPattern p : DecisionPattern::canonical()) patterns[p.str()] = counts.at(p);
    json out;
    out["q"] = counts.q;
    out["patterns"] = patterns;
    return out;
}

namespace {
template <class T>
json partition_json_impl(const ByTrueLabelCounts<T>& cells) {
    json out;
    for (const Label label : {Label::a, Label::b}) {
        json row = json::object();
        for (const DecisionPattern p : DecisionPattern::canonical()) row[p.str()] = cells.cell(label, p);
        out[std::string(1, to_char(label))] = row;
    }
    return out;
}
}  // namespace

nlohmann::json partition_json(const GroundTruthCounts& cells) { return partition_json_impl(cells); }

nlohmann::json partition_json(const ByTrueLabelCounts<std::int64_t>& cells) {
    return partition_json_impl(cells);
}

nlohmann::json point_json(const RationalPoint& point, int precision) {
    json out;
    out["p_a"] = rational_json(point.p_a, precision);
    for (int s = 0; s < 3; ++s) {
        json pair;
        pair["a"] = rational_json(point.pi[s][0], precision);
        pair["b"] = rational_json(point.pi[s][1], precision);
        out["accuracies"].push_back(pair);
    }
    return out;
}

nlohmann::json point_json(const FloatPoint& point, int precision) {
    json out;
    out["p_a"] = bigfloat_json(point.p_a, precision);
    for (int s = 0; s < 3; ++s) {
        json pair;
        pair["a"] = bigfloat_json(point.pi[s][0], precision);
        pair["b"] = bigfloat_json(point.pi[s][1], precision);
        out["accuracies"].push_back(pair);
    }
    return out;
}

nlohmann::json solution_json(const AeSolution& solution, int precision) {
    json out;
    out["moments"] = moments_json(solution.moments, precision);
    out["quadratic"] = quadratic_json(solution, precision);
    json alarm;
    alarm["kind"] = alarm_name(solution.alarm.kind);
    alarm["exit_code"] = alarm_exit_code(solution.alarm.kind);
    if (!solution.alarm.detail.empty()) alarm["detail"] = solution.alarm.detail;
    out["alarm"] = alarm;
    out["candidates"] = json::array();
    for (const auto& candidate : solution.candidates)
        out["candidates"].push_back(candidate_json(candidate, precision));
    if (solution.complex_pair) {
        json pair;
        pair["real"] = bigfloat_json(solution.complex_pair->real, precision);
        pair["imag"] = bigfloat_json(solution.complex_pair->imag, precision);
        out["complex_prevalence"] = pair;
    }
    out["selected"] = solution.selected;
    out["selection_ambiguous"] = solution.selection_ambiguous;
    out["recovered_from_double_root"] = solution.recovered_from_double_root;
    return out;
}

namespace {
json optional_accuracy_json(const std::optional<Rational>& value, int precision) {
    if (!value) return nullptr;
    return rational_json(*value, precision);
}
}  // namespace

nlohmann::json mv_evaluation_json(const MvEvaluation& eval, int precision) {
    json out;
    out["p_a"] = rational_json(eval.p_a, precision);
    for (int s = 0; s < 3; ++s) {
        json pair;
        pair["a"] = optional_accuracy_json(eval.pi_a[s], precision);
        pair["b"] = optional_accuracy_json(eval.pi_b[s], precision);
        out["accuracies"].push_back(pair);
    }
    return out;
}

nlohmann::json gt_evaluation_json(const GroundTruthEvaluation& eval, int precision) {
    json out;
    out["p_a"] = rational_json(eval.p_a, precision);
    for (int s = 0; s < 3; ++s) {
        json pair;
        pair["a"] = optional_accuracy_json(eval.pi_a[s], precision);
        pair["b"] = optional_accuracy_json(eval.pi_b[s], precision);
        out["accuracies"].push_back(pair);
    }
    return out;
}

nlohmann::json error_breakdown_json(const ErrorBreakdown& errors) {
    json out;
    out["total"] = errors.total;
    out["majority_a_rows"] = errors.majority_a_rows;
    out["majority_b_rows"] = errors.majority_b_rows;
    return out;
}

namespace {
json deviations_json(const Deviations& deviations, int precision) {
    json out;
    out["prevalence"] = bigfloat_json(deviations.prevalence, precision);
    for (int s = 0; s < 3; ++s) {
        json pair;
        pair["a"] = bigfloat_json(deviations.acc[s][0], precision);
        pair["b"] = bigfloat_json(deviations.acc[s][1], precision);
        out["accuracies"].push_back(pair);
    }
    return out;
}
}  // namespace

nlohmann::json comparison_json(const ComparisonReport& report, int precision) {
    json out;
    out["observed"] = counts_json(report.observed);
    out["ground_truth"] = partition_json(report.ground_truth);

    json mv;
    mv["partition"] = partition_json(report.mv_cells);
    mv["evaluation"] = mv_evaluation_json(report.mv_eval, precision);
    mv["errors"] = error_breakdown_json(report.mv_errors);
    out["mv"] = mv;

    json ae;
    ae["solution"] = solution_json(report.ae, precision);
    if (report.ae_rounded) ae["partition"] = partition_json(*report.ae_rounded);
    if (report.ae_errors) ae["errors"] = error_breakdown_json(*report.ae_errors);
    out["ae"] = ae;

    json gt;
    gt["evaluation"] = gt_evaluation_json(report.gt_eval, precision);
    gt["errors"] = error_breakdown_json(report.gt_errors);
    out["gt"] = gt;

    if (report.ae_deviation || report.mv_deviation) {
        json dev;
        if (report.ae_deviation) dev["ae"] = deviations_json(*report.ae_deviation, precision);
        if (report.mv_deviation) dev["mv"] = deviations_json(*report.mv_deviation, precision);
        out["deviations"] = dev;
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const auto parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw InputError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ae
