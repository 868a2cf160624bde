#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ae/decision_engine.hpp"
#include "ae/forward_map.hpp"
#include "ae/io.hpp"
#include "ae/synthesis.hpp"

namespace fs = std::filesystem;
using namespace ae;

namespace {

constexpr int exit_input_error = 2;

std::string fmt_rational(const Rational& value, int precision) {
    return rational_string(value) + " (" + decimal_string(value, precision) + ")";
}

std::string short_decimal(const Rational& value) { return decimal_string(value, 6); }
std::string short_decimal(const BigFloat& value) { return decimal_string(value, 6); }

std::string trio_tag(const std::array<std::string, 3>& ids) {
    return ids[0] + "," + ids[1] + "," + ids[2];
}

std::string trio_file_tag(const std::array<std::string, 3>& ids) {
    std::string out = ids[0] + "_" + ids[1] + "_" + ids[2];
    std::replace_if(out.begin(), out.end(), [](char c) { return c == '/' || c == '\\'; }, '-');
    return out;
}

// ---------- text report ----------

void print_counts(std::ostream& os, const PatternCounts& counts) {
    os << "observed counts (q = " << counts.q << ")\n";
    os << "  pattern  count\n";
    for (const DecisionPattern p : DecisionPattern::canonical())
        os << "  " << std::left << std::setw(8) << p.str() << " " << counts.at(p) << "\n";
}

void print_candidate(std::ostream& os, const Candidate& candidate, int index, bool selected,
                     int precision) {
    os << "  candidate " << index << (selected ? " (selected)" : "") << "\n";
    if (candidate.is_exact) {
        os << "    p_a  = " << fmt_rational(candidate.exact.p_a, precision) << "\n";
        for (int s = 0; s < 3; ++s)
            os << "    pi_" << s + 1 << " = a: " << fmt_rational(candidate.exact.pi[s][0], precision)
               << "  b: " << fmt_rational(candidate.exact.pi[s][1], precision) << "\n";
    } else {
        os << "    p_a  = " << decimal_string(candidate.approx.p_a, precision) << "\n";
        for (int s = 0; s < 3; ++s)
            os << "    pi_" << s + 1 << " = a: " << decimal_string(candidate.approx.pi[s][0], precision)
               << "  b: " << decimal_string(candidate.approx.pi[s][1], precision) << "\n";
    }
    os << "    better than random: " << candidate.better_than_random << " of 6"
       << "; in range: " << (candidate.in_range ? "yes" : "no")
       << "; exact substitution: " << (candidate.substitution_exact ? "yes" : "no") << "\n";
}

void print_solution(std::ostream& os, const AeSolution& solution, int precision) {
    os << "algebraic evaluation\n";
    os << "  alarm: " << alarm_name(solution.alarm.kind) << " (exit "
       << alarm_exit_code(solution.alarm.kind) << ")";
    if (!solution.alarm.detail.empty()) os << ": " << solution.alarm.detail;
    os << "\n";
    os << "  quadratic: a = " << rational_string(solution.quadratic.a)
       << ", b = " << rational_string(solution.quadratic.b)
       << ", c = " << rational_string(solution.quadratic.c) << "\n";
    os << "  discriminant: " << fmt_rational(solution.discriminant, precision) << "\n";
    if (solution.complex_pair)
        os << "  complex prevalence pair: " << decimal_string(solution.complex_pair->real, precision)
           << " +/- " << decimal_string(solution.complex_pair->imag, precision) << "i\n";
    if (solution.recovered_from_double_root)
        os << "  double root at p_a = 1/2 recovered from pair moments\n";
    for (std::size_t i = 0; i < solution.candidates.size(); ++i)
        print_candidate(os, solution.candidates[i], static_cast<int>(i),
                        static_cast<int>(i) == solution.selected, precision);
    if (solution.selected < 0)
        os << "  no candidate selected\n";
    else if (solution.selection_ambiguous)
        os << "  selection ambiguous: tie broken toward smaller prevalence\n";
}

void print_evaluation_row(std::ostream& os, const std::string& name, const Rational& p_a,
                          const std::array<std::optional<Rational>, 3>& pi_a,
                          const std::array<std::optional<Rational>, 3>& pi_b) {
    os << "  " << std::left << std::setw(4) << name << std::right;
    os << std::setw(10) << short_decimal(p_a);
    for (int s = 0; s < 3; ++s) os << std::setw(10) << (pi_a[s] ? short_decimal(*pi_a[s]) : "n/a");
    for (int s = 0; s < 3; ++s) os << std::setw(10) << (pi_b[s] ? short_decimal(*pi_b[s]) : "n/a");
    os << "\n";
}

void print_evaluations(std::ostream& os, const AeSolution& solution,
                       const std::optional<GroundTruthEvaluation>& gt_eval,
                       const MvEvaluation& mv_eval) {
    os << "evaluations\n";
    os << "  " << std::left << std::setw(4) << " " << std::right << std::setw(10) << "p_a";
    for (int s = 0; s < 3; ++s) os << std::setw(10) << ("pi_a(" + std::to_string(s + 1) + ")");
    for (int s = 0; s < 3; ++s) os << std::setw(10) << ("pi_b(" + std::to_string(s + 1) + ")");
    os << "\n";
    if (gt_eval) print_evaluation_row(os, "gt", gt_eval->p_a, gt_eval->pi_a, gt_eval->pi_b);
    if (const Candidate* chosen = solution.selected_candidate()) {
        std::array<std::optional<Rational>, 3> pi_a, pi_b;
        Rational p_a;
        if (chosen->is_exact) {
            p_a = chosen->exact.p_a;
            for (int s = 0; s < 3; ++s) {
                pi_a[s] = chosen->exact.pi[s][0];
                pi_b[s] = chosen->exact.pi[s][1];
            }
            print_evaluation_row(os, "ae", p_a, pi_a, pi_b);
        } else {
            os << "  " << std::left << std::setw(4) << "ae" << std::right;
            os << std::setw(10) << short_decimal(chosen->approx.p_a);
            for (int s = 0; s < 3; ++s) os << std::setw(10) << short_decimal(chosen->approx.pi[s][0]);
            for (int s = 0; s < 3; ++s) os << std::setw(10) << short_decimal(chosen->approx.pi[s][1]);
            os << "\n";
        }
    }
    print_evaluation_row(os, "mv", mv_eval.p_a, mv_eval.pi_a, mv_eval.pi_b);
}

void print_partitions(std::ostream& os, const PatternCounts& observed,
                      const std::optional<GroundTruthCounts>& gt,
                      const std::optional<ByTrueLabelCounts<std::int64_t>>& ae,
                      const GroundTruthCounts& mv) {
    os << "by-true-label partition (a, b)\n";
    os << "  pattern  observed";
    if (gt) os << "        gt";
    if (ae) os << "              ae";
    os << "              mv\n";
    for (const DecisionPattern p : DecisionPattern::canonical()) {
        os << "  " << std::left << std::setw(8) << p.str() << std::right << std::setw(9)
           << observed.at(p);
        const auto cell_pair = [&os](auto a, auto b) {
            std::ostringstream ss;
            ss << a << "," << b;
            os << std::setw(16) << ss.str();
        };
        if (gt) cell_pair(gt->cell(Label::a, p), gt->cell(Label::b, p));
        if (ae) cell_pair(ae->cell(Label::a, p), ae->cell(Label::b, p));
        cell_pair(mv.cell(Label::a, p), mv.cell(Label::b, p));
        os << "\n";
    }
}

void print_errors(std::ostream& os, const std::string& name, const ErrorBreakdown& errors) {
    os << "  " << std::left << std::setw(4) << name << std::right << errors.total << " ("
       << errors.majority_a_rows << " on majority-a rows + " << errors.majority_b_rows
       << " on majority-b rows)\n";
}

// ---------- evaluate ----------

struct EvaluateResult {
    int exit_code = 0;
};

int evaluate_one(const Sketch& sketch, const std::array<std::string, 3>& ids,
                 const SelectionPolicy& policy, int precision,
                 const std::optional<fs::path>& output_dir, bool tagged) {
    std::ostream& os = std::cout;
    os << "== trio " << trio_tag(ids) << " ==\n";
    print_counts(os, sketch.counts);

    nlohmann::json doc;
    AlarmKind alarm = AlarmKind::clean_rational;
    if (sketch.by_label) {
        const ComparisonReport report = compare_methods(*sketch.by_label, policy);
        alarm = report.ae.alarm.kind;
        print_solution(os, report.ae, precision);
        std::optional<GroundTruthEvaluation> gt_eval = report.gt_eval;
        print_evaluations(os, report.ae, gt_eval, report.mv_eval);
        print_partitions(os, report.observed, report.ground_truth, report.ae_rounded,
                         report.mv_cells);
        os << "decision errors vs truth\n";
        print_errors(os, "gt", report.gt_errors);
        if (report.ae_errors) print_errors(os, "ae", *report.ae_errors);
        print_errors(os, "mv", report.mv_errors);
        doc = comparison_json(report, precision);
    } else {
        const AeSolution solution = evaluate(sketch.counts, policy);
        alarm = solution.alarm.kind;
        print_solution(os, solution, precision);
        const PatternFrequencies freqs = frequencies(sketch.counts);
        const MvEvaluation mv_eval = mv_evaluate(freqs);
        print_evaluations(os, solution, std::nullopt, mv_eval);
        std::optional<ByTrueLabelCounts<std::int64_t>> ae_cells;
        if (const Candidate* chosen = solution.selected_candidate())
            ae_cells = rounded_partition(estimate_partition<BigFloat>(chosen->approx, sketch.counts));
        print_partitions(os, sketch.counts, std::nullopt, ae_cells, mv_partition(sketch.counts));
        doc["observed"] = counts_json(sketch.counts);
        doc["ae"]["solution"] = solution_json(solution, precision);
        if (ae_cells) doc["ae"]["partition"] = partition_json(*ae_cells);
        doc["mv"]["partition"] = partition_json(mv_partition(sketch.counts));
        doc["mv"]["evaluation"] = mv_evaluation_json(mv_eval, precision);
    }
    if (output_dir) {
        const std::string name =
            tagged ? "report_" + trio_file_tag(ids) + ".json" : std::string("report.json");
        const fs::path path = *output_dir / name;
        write_file_atomic(path, doc.dump(2) + "\n");
        os << "report written to " << path.string() << "\n";
    }
    os << "\n";
    return alarm_exit_code(alarm);
}

int run_evaluate(const std::string& input, const std::string& format,
                 const SelectionPolicy& policy, int precision,
                 const std::optional<fs::path>& output_dir) {
    if (format == "sketch" || format == "counts") {
        const Sketch sketch = load_sketch(input);
        return evaluate_one(sketch, sketch.classifier_ids, policy, precision, output_dir, false);
    }
    const RecordsTable table = load_records(input);
    const auto trios = enumerate_trios(table.classifier_ids);
    int exit_code = 0;
    for (const auto& trio : trios) {
        const AggregateResult agg = aggregate(table.records, trio);
        Sketch sketch;
        sketch.counts = agg.counts;
        sketch.by_label = agg.by_label;
        sketch.classifier_ids = trio;
        const int code =
            evaluate_one(sketch, trio, policy, precision, output_dir, trios.size() > 1);
        if (exit_code == 0) exit_code = code;
    }
    return exit_code;
}

// ---------- decide ----------

int run_decide(const std::string& input, const std::string& method, const SelectionPolicy& policy,
               int precision, const fs::path& output_dir) {
    const RecordsTable table = load_records(input);
    const auto trios = enumerate_trios(table.classifier_ids);
    int exit_code = 0;
    for (const auto& trio : trios) {
        const AggregateResult agg = aggregate(table.records, trio);
        std::cout << "== trio " << trio_tag(trio) << " ==\n";

        std::array<Label, 8> by_pattern{};
        if (method == "mv") {
            for (int code = 0; code < 8; ++code)
                by_pattern[code] = mv_decide(DecisionPattern(static_cast<std::uint8_t>(code)));
        } else if (method == "gt") {
            if (!agg.by_label) throw InputError("method gt requires true labels in the input");
            for (int code = 0; code < 8; ++code)
                by_pattern[code] = decide(*agg.by_label, DecisionPattern(static_cast<std::uint8_t>(code)));
        } else {
            const AeSolution solution = evaluate(agg.counts, policy);
            std::cout << "alarm: " << alarm_name(solution.alarm.kind) << " (exit "
                      << alarm_exit_code(solution.alarm.kind) << ")\n";
            if (exit_code == 0) exit_code = alarm_exit_code(solution.alarm.kind);
            if (const Candidate* chosen = solution.selected_candidate()) {
                const auto estimate = estimate_partition<BigFloat>(chosen->approx, agg.counts);
                std::cout << "selected p_a = " << decimal_string(chosen->approx.p_a, precision)
                          << "\n";
                for (int code = 0; code < 8; ++code)
                    by_pattern[code] =
                        decide(estimate.cells, DecisionPattern(static_cast<std::uint8_t>(code)));
            } else {
                std::cout << "no usable candidate; falling back to majority vote\n";
                for (int code = 0; code < 8; ++code)
                    by_pattern[code] = mv_decide(DecisionPattern(static_cast<std::uint8_t>(code)));
            }
        }

        std::string csv = "item_id,label\n";
        std::uint64_t wrong = 0, graded = 0;
        for (const DecisionRecord& rec : table.records) {
            const auto pattern = DecisionPattern::of(*rec.decision_of(trio[0]),
                                                     *rec.decision_of(trio[1]),
                                                     *rec.decision_of(trio[2]));
            const Label chosen = by_pattern[pattern.code()];
            csv += rec.item_id;
            csv += ',';
            csv += to_char(chosen);
            csv += '\n';
            if (rec.true_label) {
                ++graded;
                if (*rec.true_label != chosen) ++wrong;
            }
        }
        const fs::path path = output_dir / ("labels_" + trio_file_tag(trio) + ".csv");
        write_file_atomic(path, csv);
        std::cout << "labels written to " << path.string() << "\n";
        if (graded > 0) std::cout << "errors vs truth: " << wrong << " of " << graded << "\n";
        std::cout << "\n";
    }
    return exit_code;
}

// ---------- simulate ----------

RationalPoint parse_point(const std::string& text) {
    std::vector<Rational> coords;
    std::stringstream stream(text);
    std::string field;
    while (std::getline(stream, field, ',')) coords.push_back(parse_rational(field));
    if (coords.size() != 7)
        throw ConfigError("point must have 7 coordinates "
                          "p_a,pi_1a,pi_1b,pi_2a,pi_2b,pi_3a,pi_3b");
    RationalPoint point;
    point.p_a = coords[0];
    for (int s = 0; s < 3; ++s)
        for (int l = 0; l < 2; ++l) point.pi[s][l] = coords[1 + 2 * s + l];
    if (!point.valid()) throw ConfigError("point coordinates must lie in [0,1]");
    return point;
}

PairCoupling parse_coupling(const std::string& text) {
    const auto colon = text.find(':');
    PairCoupling out;
    if (colon == std::string::npos) {
        out.pair = 0;
        out.rho = parse_rational(text);
        return out;
    }
    const std::string pair_part = text.substr(0, colon);
    const auto comma = pair_part.find(',');
    if (comma == std::string::npos)
        throw ConfigError("coupling must be rho or i,j:rho with classifiers i<j in 1..3");
    const int i = std::stoi(pair_part.substr(0, comma));
    const int j = std::stoi(pair_part.substr(comma + 1));
    if (i < 1 || j < 1 || i > 3 || j > 3 || i >= j)
        throw ConfigError("coupling classifiers must satisfy 1 <= i < j <= 3");
    out.pair = TrioMoments::pair_index(i - 1, j - 1);
    out.rho = parse_rational(text.substr(colon + 1));
    return out;
}

int run_simulate(const std::string& point_text, std::uint64_t q, std::uint64_t trials,
                 std::uint64_t seed, const std::vector<std::string>& rho_texts, bool with_records,
                 int precision, const fs::path& output_dir) {
    const RationalPoint point = parse_point(point_text);
    CorrelationSpec spec;
    for (const auto& text : rho_texts) spec.couplings.push_back(parse_coupling(text));
    spec.validate();

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = seed + trial;
        const SampleResult sample = sample_correlated(point, q, spec, trial_seed, with_records);
        Sketch sketch;
        sketch.by_label = sample.by_label;
        sketch.counts = project(sample.by_label);

        std::ostringstream name;
        name << "sketch_" << std::setw(4) << std::setfill('0') << trial + 1;
        const fs::path sketch_path = output_dir / (name.str() + ".json");
        write_file_atomic(sketch_path, sketch_to_json(sketch).dump(2) + "\n");
        std::cout << "trial " << trial + 1 << ": wrote " << sketch_path.string() << " (q = " << q
                  << ", seed = " << trial_seed << ")\n";
        if (with_records) {
            const fs::path records_path = output_dir / ("records_" + name.str().substr(7) + ".csv");
            write_file_atomic(records_path,
                              records_to_csv(sample.records,
                                             {sketch.classifier_ids.begin(),
                                              sketch.classifier_ids.end()},
                                             true));
            std::cout << "  wrote " << records_path.string() << "\n";
        }

        for (const PairCoupling& coupling : spec.couplings) {
            if (coupling.rho == 0) continue;
            const auto [s, t] = TrioMoments::pair_slots(coupling.pair);
            std::cout << "  pair (" << s + 1 << "," << t + 1 << ") rho = "
                      << rational_string(coupling.rho) << "\n";
            for (const Label label : {Label::a, Label::b}) {
                const Rational target = spec.target_gamma(coupling.pair, label, point);
                const auto measured = error_correlation_pair(sample.by_label, s, t, label);
                std::cout << "    gamma_" << to_char(label) << " target "
                          << decimal_string(target, precision) << ", measured "
                          << (measured ? decimal_string(*measured, precision) : "n/a") << "\n";
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebraic evaluation of trios of binary classifiers"};
    app.require_subcommand(1);

    std::string input, format = "sketch", method = "ae", policy_text = "better-than-random";
    std::string point_text = "3/10,7/10,8/10,6/10,7/10,8/10,9/10";
    std::string output_dir_text;
    std::vector<std::string> rho_texts;
    int precision = 50;
    std::uint64_t q = 20000, trials = 1, seed = 0;
    bool with_records = false;

    CLI::App* cmd_evaluate = app.add_subcommand(
        "evaluate", "run algebraic and majority-vote evaluation on a dataset");
    cmd_evaluate->add_option("--input", input, "input file")->required();
    cmd_evaluate->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"sketch", "counts", "records"}));
    cmd_evaluate->add_option("--policy", policy_text, "root selection policy");
    cmd_evaluate->add_option("--precision", precision, "significant digits in output");
    cmd_evaluate->add_option("--output-dir", output_dir_text, "directory for JSON reports");

    CLI::App* cmd_decide = app.add_subcommand(
        "decide", "label items from per-item decisions under ae, mv, or gt");
    cmd_decide->add_option("--input", input, "records file")->required();
    cmd_decide->add_option("--method", method, "decision method")
        ->check(CLI::IsMember({"ae", "mv", "gt"}));
    cmd_decide->add_option("--policy", policy_text, "root selection policy");
    cmd_decide->add_option("--precision", precision, "significant digits in output");
    cmd_decide->add_option("--output-dir", output_dir_text, "directory for labeled files");

    CLI::App* cmd_simulate = app.add_subcommand("simulate", "generate synthetic sketch files");
    cmd_simulate->add_option("--point", point_text,
                             "evaluation point p_a,pi_1a,pi_1b,pi_2a,pi_2b,pi_3a,pi_3b");
    cmd_simulate->add_option("--q", q, "items per trial");
    cmd_simulate->add_option("--trials", trials, "number of sketches");
    cmd_simulate->add_option("--seed", seed, "base seed (trial t uses seed + t)");
    cmd_simulate->add_option("--rho", rho_texts,
                             "pair coupling i,j:rho (or bare rho for pair 1,2); repeatable");
    cmd_simulate->add_flag("--records", with_records, "also write per-item records");
    cmd_simulate->add_option("--precision", precision, "significant digits in output");
    cmd_simulate->add_option("--output-dir", output_dir_text, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input_error;
    }

    try {
        const SelectionPolicy policy = SelectionPolicy::parse(policy_text);
        if (*cmd_evaluate) {
            std::optional<fs::path> output_dir;
            if (!output_dir_text.empty()) output_dir = fs::path(output_dir_text);
            return run_evaluate(input, format, policy, precision, output_dir);
        }
        if (*cmd_decide) {
            const fs::path output_dir = output_dir_text.empty() ? fs::path(".") : fs::path(output_dir_text);
            return run_decide(input, method, policy, precision, output_dir);
        }
        const fs::path output_dir = output_dir_text.empty() ? fs::path(".") : fs::path(output_dir_text);
        return run_simulate(point_text, q, trials, seed, rho_texts, with_records, precision,
                            output_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}
