#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ladm/config_io.hpp"
#include "ladm/filters.hpp"
#include "ladm/rayleigh_ritz.hpp"

namespace ladm {

enum class Method { SIM, Krylov };
enum class Scale { Desk, Paper };

const char* to_string(Method m);
const char* to_string(Scale s);

struct ExperimentConfig {
    int figure = 1;
    SpectrumSpec spec;
    Method method = Method::SIM;
    Index r = 20;
    int q_max = 300;
    std::vector<OversamplingSplit> splits{{0, 10}, {5, 5}, {10, 0}};
    Scale scale = Scale::Desk;
    std::string output_dir = ".";
};

/// Parameters of figures 1-5 at desk (n = 400) or paper (n = 3000) scale.
ExperimentConfig preset(int figure, Scale scale);

/// Applies the spectrum keys plus figure, method (sim|krylov), r, q_max and
/// splits ("p1:p2, p1:p2, ..."). Unknown keys raise ConfigError.
void apply_experiment_keys(const KeyValueConfig& cfg, ExperimentConfig& exp);

/// Throws ConfigError unless h <= r < k, 1 <= q_max and every split satisfies
/// p1, p2 >= 0, j + p1 < k, p1 + p2 <= r - h and k + p2 < n.
void validate(const ExperimentConfig& exp);

/// Numeric table with named columns; NaN marks an undefined entry.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    Index column(const std::string& name) const;  // -1 if absent
    std::vector<double> values(const std::string& name) const;
};

struct CurveSet {
    int figure = 1;
    Method method = Method::SIM;
    ClusterEnvelope env;
    Table plot1;  // trial space: eigenspace distances, witness, filter bounds, residual bound on W_q
    Table plot2;  // Ritz space V_q: distances, witness, residual bound, comparison bound
    Table plot3;  // step analysis of the sequence V_q
    std::vector<std::string> notes;  // per-iteration genericity failures
    int violations = 0;
};

/// One row of the step analysis for the move V_{q-1} -> V_q.
///  paso1_lhs:  d(X_h, V_{q-1}) - d(X_h, V_q)
///  paso2_lhs:  d(S_q, V_{q-1}) - d(S_q, V_q) with S_q the witness of V_q; a computable
///              stand-in for the decrease of the distance to the class, never above the step
///  paso3_lower: max(d(X_j, V_{q-1}), d(X_k, V_{q-1})) - d(S_q, V_q)
///  witness_decrease: d(S_{q-1}, V_{q-1}) - d(S_q, V_q)
struct StepRow {
    double step_length = 0.0;
    double paso1_lhs = 0.0;
    double paso2_lhs = 0.0;
    double paso3_lower = 0.0;
    double witness_decrease = 0.0;
    bool holds = true;  // paso1_lhs and paso2_lhs do not exceed step_length + 1e-9
};

/// Incremental form of step_analysis, fed one subspace at a time.
class StepTracker {
public:
    explicit StepTracker(const AdmissibleClass& cls);
    /// Returns the row for the move from the previous subspace (none for the first push).
    /// `witness` may pass a precomputed nearest_admissible(V).
    std::optional<StepRow> push(const OrthonormalBasis& V, const OrthonormalBasis* witness = nullptr);

private:
    const AdmissibleClass* cls_;
    OrthonormalBasis Xh_;
    std::optional<OrthonormalBasis> prev_;
    double prev_dxh_ = 0.0;
    double prev_dxj_ = 0.0;
    double prev_dxk_ = 0.0;
    double prev_witness_ = 0.0;
};

std::vector<StepRow> step_analysis(const std::vector<OrthonormalBasis>& V, const AdmissibleClass& cls);

/// Runs the pipeline of the configured method on a given model (no file output).
CurveSet run_curves(const ExperimentConfig& exp, const EigenModel& model, const ClusterEnvelope& env);

/// Builds the model, runs the pipeline and writes fig<N>_plot<M>.csv and fig<N>_summary.csv
/// into exp.output_dir.
CurveSet run_figure(const ExperimentConfig& exp);

/// Pairs (bound column, measured column) of a table that must satisfy bound >= measured.
std::vector<std::pair<std::string, std::string>> validity_pairs(const Table& t);

/// Columns holding sines or bounds on sines; these are clamped to 1 on output.
bool is_sine_column(const std::string& name);

/// Entries where a validity pair is violated by more than 1e-9 (both entries finite); with
/// `check_clamping`, also sine entries above 1 + 1e-12.
int count_violations(const Table& t, bool check_clamping = false);

struct SummaryRow {
    std::string curve;  // "plot<M>.<column>"
    double final_value = 0.0;
    std::array<std::optional<int>, 3> first_below;  // first q below 1e-2, 1e-4, 1e-8
};

std::vector<SummaryRow> summarize(const CurveSet& curves);

/// CSV text: one line per curve with its final value and threshold crossings ("-" when a
/// curve never crosses), then a line with the violation count.
std::string summary_table(const CurveSet& curves);

void write_csv(std::ostream& out, const Table& t);
Table read_csv(const std::string& path);

struct VerifyReport {
    int files = 0;
    int violations = 0;
    std::vector<std::string> messages;
};

/// Re-checks bound validity and clamping on every fig*_plot*.csv in `dir`.
VerifyReport verify_directory(const std::string& dir);

}  // namespace ladm
