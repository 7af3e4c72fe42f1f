#include "ladm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ladm/random.hpp"

namespace ladm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSlack = 1e-9;
constexpr std::size_t kMaxNotes = 1000;

std::string split_tag(const OversamplingSplit& s)
{
    return "p" + std::to_string(s.p1) + "_" + std::to_string(s.p2);
}

bool starts_with(const std::string& s, const std::string& prefix)
{
    return s.rfind(prefix, 0) == 0;
}

void note(CurveSet& out, int q, const std::string& what, const std::exception& e)
{
    if (out.notes.size() < kMaxNotes)
        out.notes.push_back("q=" + std::to_string(q) + " " + what + ": " + e.what());
}

// Witness distance d(S_T, T) with S_T = nearest_admissible(T); NaN when the construction
// is not defined for T.
struct Witness {
    std::optional<OrthonormalBasis> S;
    double distance = kNaN;
};

Witness witness_of(const OrthonormalBasis& T, const AdmissibleClass& cls, CurveSet& out, int q, const char* what)
{
    Witness w;
    try {
        w.S = nearest_admissible(T, cls);
        w.distance = sin_theta_max(*w.S, T);
    } catch (const PreconditionError& e) {
        note(out, q, what, e);
    }
    return w;
}

// Top-m Ritz space of range(K), given A*K.
struct RitzSpace {
    OrthonormalBasis basis;
    Mat image;  // A * basis
};

RitzSpace top_ritz_space(const Mat& K, const Mat& AK, Index m)
{
    Mat C = K.transpose() * AK;
    C = 0.5 * (C + C.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(C);
    const Mat omega = es.eigenvectors().rightCols(m).rowwise().reverse();
    // K * omega drifts from orthonormality by ~1e-13 once K is large. That drift perturbs the
    // later Rayleigh quotient by more than the cluster spacing, so re-orthonormalize and carry
    // the image along: W = (K omega) T^{-1} and A W = (AK omega) T^{-1}.
    const Mat B = K * omega;
    Eigen::HouseholderQR<Mat> qr(B);
    Mat T = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    Mat W = qr.householderQ() * Mat::Identity(B.rows(), m);
    for (Index c = 0; c < m; ++c)  // keep the Ritz vector orientation
        if (T(c, c) < 0) {
            T.row(c) = -T.row(c);
            W.col(c) = -W.col(c);
        }
    Mat AW = (AK * omega) * T.triangularView<Eigen::Upper>().solve(Mat::Identity(m, m));
    const double tol = 1e-10 * std::sqrt(static_cast<double>(m)) + 1e-12;
    return {OrthonormalBasis(std::move(W), tol), std::move(AW)};
}

// Measurements shared by both methods on the Ritz pair (W_q, V_q).
struct RitzRow {
    double amd3 = kNaN;
    double witness_r = kNaN;
    double d_xh_v = kNaN;
    double witness_v = kNaN;
    double amd1 = kNaN;
    double nakats = kNaN;
    std::optional<OrthonormalBasis> V;
    std::optional<OrthonormalBasis> SV;
};

RitzRow ritz_measurements(const EigenModel& model, const AdmissibleClass& cls, const AdmissibleClass& cls_r,
                          const OrthonormalBasis& Xh, const OrthonormalBasis& W, const Mat& AW, CurveSet& out, int q)
{
    RitzRow row;
    const ClusterEnvelope& env = cls.envelope();
    const RitzPartition part = rayleigh_ritz(model, W, env.h, env.j, RitzMode::Compact, &AW);
    const GapReport gaps = compute_gaps(part, model, env);
    const ResidualBoundReport rb = admissible_distance_bounds(part, model, env, Norm::Spectral, gaps);
    row.amd3 = rb.bound_Q;
    row.amd1 = rb.bound_X1;
    row.nakats = nakatsukasa_bound(part, model, env, gaps).value;
    row.witness_r = witness_of(W, cls_r, out, q, "witness_r_w").distance;
    row.V = part.X1;
    row.d_xh_v = sin_theta_max(Xh, part.X1);
    Witness wv = witness_of(part.X1, cls, out, q, "witness_v");
    row.witness_v = wv.distance;
    row.SV = wv.S;
    return row;
}

std::vector<std::string> plot2_columns()
{
    return {"q", "d_xh_v", "witness_v", "amd1_bound", "nakats_bound"};
}

std::vector<std::string> plot3_columns()
{
    return {"q", "step_length", "paso1_lhs", "paso2_lhs", "paso3_lower", "witness_decrease"};
}

void push_ritz_rows(CurveSet& out, StepTracker& steps, const RitzRow& rr, int q)
{
    out.plot2.rows.push_back({double(q), rr.d_xh_v, rr.witness_v, rr.amd1, rr.nakats});
    const auto step = steps.push(*rr.V, rr.SV ? &*rr.SV : nullptr);
    if (step)
        out.plot3.rows.push_back({double(q), step->step_length, step->paso1_lhs, step->paso2_lhs, step->paso3_lower,
                                  step->witness_decrease});
}

struct SimSplit {
    OversamplingSplit split;
    bool ok = false;
    double tan_j = 0.0;
    double tan_k = 0.0;
    Mat Y;  // eigen-coordinates of a basis of A^q(H_p)
};

CurveSet run_sim(const ExperimentConfig& exp, const EigenModel& model, const ClusterEnvelope& env)
{
    CurveSet out;
    out.figure = exp.figure;
    out.method = Method::SIM;
    out.env = env;
    const AdmissibleClass cls(model, env);
    const AdmissibleClass cls_r = cls.with_target(exp.r);
    const OrthonormalBasis Xh = dominant_basis(model, env.h);
    const Mat& A = model.matrix();
    const Mat& X = model.vectors();
    const Vec& lambda = model.values();

    const OrthonormalBasis W0 = gaussian_subspace(model.size(), exp.r, mix_seed(exp.spec.seed, 1));

    std::vector<SimSplit> splits;
    for (const OversamplingSplit& sp : exp.splits) {
        SimSplit s;
        s.split = sp;
        try {
            const HpReport hp = construct_Hp_report(W0, sp, cls);
            s.tan_j = env.j > 0 ? tan_theta_norm(cls.Xj(), hp.H, Norm::Spectral) : 0.0;
            s.tan_k = tan_theta_norm(cls.Xk(), hp.H, Norm::Spectral);
            s.Y = orthonormalize(X.transpose() * hp.H.mat(), 0.0).mat();
            s.ok = true;
        } catch (const Error& e) {
            note(out, 0, "H_" + split_tag(sp), e);
        }
        splits.push_back(std::move(s));
    }

    out.plot1.columns = {"q", "trial_dim", "d_xh_w", "witness_w", "thm_dist_bound_w", "d_xj_w", "d_xk_w"};
    for (const SimSplit& s : splits) {
        out.plot1.columns.push_back("sim_bound_" + split_tag(s.split));
        out.plot1.columns.push_back("witness_hp_" + split_tag(s.split));
    }
    out.plot1.columns.insert(out.plot1.columns.end(), {"amd3_bound", "witness_r_w"});
    out.plot2.columns = plot2_columns();
    out.plot3.columns = plot3_columns();

    StepTracker steps(cls);
    OrthonormalBasis W = W0;
    Mat AW = A * W.mat();
    for (int q = 0; q <= exp.q_max; ++q) {
        if (q > 0) {
            const OrthonormalBasis next = orthonormalize(AW);
            if (next.dim() != exp.r)
                throw GenericityError("subspace iteration lost rank at q = " + std::to_string(q));
            W = next;
            AW = A * W.mat();
        }
        std::vector<double> row{double(q), double(W.dim())};
        const double dxh = sin_theta_max(Xh, W);
        const double dxj = sin_theta_max(cls.Xj(), W);
        const double dxk = sin_theta_max(cls.Xk(), W);
        const Witness ww = witness_of(W, cls, out, q, "witness_w");
        row.insert(row.end(), {dxh, ww.distance, dxj + dxk, dxj, dxk});

        const PolynomialFilter phi = PolynomialFilter::monomial(q);
        for (SimSplit& s : splits) {
            double bound = kNaN, wit = kNaN;
            if (s.ok) {
                try {
                    const FilterCoefficients c = filter_coefficients(phi, s.split, cls);
                    bound = (c.omit_j ? 0.0 : c.coeff_j * s.tan_j) + (c.omit_k ? 0.0 : c.coeff_k * s.tan_k);
                    const OrthonormalBasis FH(X * s.Y, 1e-10);
                    wit = sin_theta_max(nearest_admissible(FH, cls), W);
                } catch (const Error& e) {
                    note(out, q, "sim_bound_" + split_tag(s.split), e);
                }
                s.Y = scaled_orthonormal_step(lambda, s.Y);
            }
            row.push_back(bound);
            row.push_back(wit);
        }

        const RitzRow rr = ritz_measurements(model, cls, cls_r, Xh, W, AW, out, q);
        row.push_back(rr.amd3);
        row.push_back(rr.witness_r);
        out.plot1.rows.push_back(std::move(row));
        push_ritz_rows(out, steps, rr, q);
    }
    return out;
}

CurveSet run_krylov(const ExperimentConfig& exp, const EigenModel& model, const ClusterEnvelope& env)
{
    CurveSet out;
    out.figure = exp.figure;
    out.method = Method::Krylov;
    out.env = env;
    const AdmissibleClass cls(model, env);
    const AdmissibleClass cls_r = cls.with_target(exp.r);
    const OrthonormalBasis Xh = dominant_basis(model, env.h);

    const OrthonormalBasis W0 = gaussian_subspace(model.size(), exp.r, mix_seed(exp.spec.seed, 1));

    out.plot1.columns = {"q", "trial_dim", "d_xh_k", "witness_k", "thm_dist_bound_k", "d_xj_k", "d_xk_k", "d_xh_w"};
    for (const OversamplingSplit& sp : exp.splits) {
        out.plot1.columns.push_back("cheb_bound_" + split_tag(sp));
        out.plot1.columns.push_back("witness_hp_" + split_tag(sp));
    }
    out.plot1.columns.insert(out.plot1.columns.end(), {"amd3_bound", "witness_r_w"});
    out.plot2.columns = plot2_columns();
    out.plot3.columns = plot3_columns();

    StepTracker steps(cls);
    BlockKrylov kry(model.matrix(), W0);
    for (int q = 0; q <= exp.q_max; ++q) {
        if (q > 0)
            kry.extend();
        const OrthonormalBasis K = kry.basis();
        const RitzSpace ws = top_ritz_space(K.mat(), kry.image(), exp.r);
        const OrthonormalBasis& W = ws.basis;

        std::vector<double> row{double(q), double(K.dim())};
        const double dxh = sin_theta_max(Xh, K);
        const double dxj = sin_theta_max(cls.Xj(), K);
        const double dxk = sin_theta_max(cls.Xk(), K);
        const Witness wk = witness_of(K, cls, out, q, "witness_k");
        row.insert(row.end(), {dxh, wk.distance, dxj + dxk, dxj, dxk, sin_theta_max(Xh, W)});

        for (const OversamplingSplit& sp : exp.splits) {
            double bound = kNaN, wit = kNaN;
            try {
                const PolynomialFilter phi = chebyshev_filter(cls, sp.p2, q);
                const FilterBoundReport rep = filtered_distance_bound(W0, sp, phi, cls, Norm::Spectral);
                bound = rep.total;
                wit = rep.measured;
            } catch (const Error& e) {
                note(out, q, "cheb_bound_" + split_tag(sp), e);
            }
            row.push_back(bound);
            row.push_back(wit);
        }

        const RitzRow rr = ritz_measurements(model, cls, cls_r, Xh, W, ws.image, out, q);
        row.push_back(rr.amd3);
        row.push_back(rr.witness_r);
        out.plot1.rows.push_back(std::move(row));
        push_ritz_rows(out, steps, rr, q);
    }
    return out;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write " + path.string());
    f << text;
    if (!f)
        throw Error("write failed: " + path.string());
}

std::vector<OversamplingSplit> parse_splits(const std::string& text)
{
    std::vector<OversamplingSplit> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::istringstream cell(item);
        long long p1 = 0, p2 = 0;
        char colon = 0;
        std::string rest;
        if (!(cell >> p1 >> colon >> p2) || colon != ':' || (cell >> rest))
            throw ConfigError("splits must look like p1:p2, p1:p2; got " + text);
        out.push_back({p1, p2});
    }
    if (out.empty())
        throw ConfigError("splits must not be empty");
    return out;
}

}  // namespace

const char* to_string(Method m)
{
    return m == Method::SIM ? "sim" : "krylov";
}

const char* to_string(Scale s)
{
    return s == Scale::Desk ? "desk" : "paper";
}

ExperimentConfig preset(int figure, Scale scale)
{
    if (figure < 1 || figure > 5)
        throw ConfigError("preset figure must be 1..5, got " + std::to_string(figure));
    ExperimentConfig exp;
    exp.figure = figure;
    exp.scale = scale;
    exp.spec.n = scale == Scale::Desk ? 400 : 3000;
    exp.spec.j = 5;
    exp.spec.h = 10;
    exp.spec.k = 30;
    exp.spec.decay = Decay{Decay::Kind::Exponential, 10.0, 0.01};
    exp.spec.delta = 1e-3;
    exp.spec.gap = 1.0;
    exp.spec.seed = 1;
    exp.r = 20;
    exp.method = Method::SIM;
    exp.q_max = 300;
    switch (figure) {
    case 2:
        exp.spec.delta = 1e-4;
        break;
    case 3:
        exp.spec.gap = 0.4;
        break;
    case 4:
        exp.method = Method::Krylov;
        break;
    case 5:
        exp.method = Method::Krylov;
        exp.spec.decay = Decay{Decay::Kind::Linear, 10.0, 1.0};
        exp.spec.center = 8.5;
        break;
    default:
        break;
    }
    // Each Krylov step adds r directions; stop before K_q fills the whole space (desk) or
    // shortly after both Krylov figures have converged (paper).
    if (exp.method == Method::Krylov)
        exp.q_max = scale == Scale::Desk ? 18 : 45;
    return exp;
}

void apply_experiment_keys(const KeyValueConfig& cfg, ExperimentConfig& exp)
{
    static const std::set<std::string> known{"n",     "j",     "h",         "k",    "decay.kind", "decay.params",
                                             "delta", "center", "gap",      "seed", "figure",     "method",
                                             "r",     "q_max", "splits"};
    for (const auto& [key, value] : cfg.entries())
        if (!known.count(key))
            throw ConfigError("unknown config key: " + key);
    apply_spectrum_keys(cfg, exp.spec);
    if (cfg.has("figure"))
        exp.figure = static_cast<int>(cfg.get_int("figure"));
    if (cfg.has("method")) {
        const std::string& m = cfg.get("method");
        if (m == "sim")
            exp.method = Method::SIM;
        else if (m == "krylov")
            exp.method = Method::Krylov;
        else
            throw ConfigError("method must be sim or krylov, got " + m);
    }
    if (cfg.has("r"))
        exp.r = cfg.get_int("r");
    if (cfg.has("q_max"))
        exp.q_max = static_cast<int>(cfg.get_int("q_max"));
    if (cfg.has("splits"))
        exp.splits = parse_splits(cfg.get("splits"));
}

void validate(const ExperimentConfig& exp)
{
    const SpectrumSpec& s = exp.spec;
    if (!(0 <= s.j && s.j < s.h && s.h < s.k && s.k < s.n))
        throw ConfigError("config requires 0 <= j < h < k < n");
    if (!(s.h <= exp.r && exp.r < s.k))
        throw ConfigError("config requires h <= r < k");
    if (exp.q_max < 1)
        throw ConfigError("q_max must be at least 1");
    for (const OversamplingSplit& sp : exp.splits) {
        if (sp.p1 < 0 || sp.p2 < 0 || s.j + sp.p1 >= s.k || sp.p1 + sp.p2 > exp.r - s.h || s.k + sp.p2 >= s.n)
            throw ConfigError("invalid oversampling split " + split_tag(sp));
    }
}

Index Table::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    return it == columns.end() ? -1 : static_cast<Index>(it - columns.begin());
}

std::vector<double> Table::values(const std::string& name) const
{
    const Index c = column(name);
    if (c < 0)
        throw Error("table has no column " + name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.push_back(row[static_cast<std::size_t>(c)]);
    return out;
}

StepTracker::StepTracker(const AdmissibleClass& cls) : cls_(&cls), Xh_(dominant_basis(cls.model(), cls.h())) {}

std::optional<StepRow> StepTracker::push(const OrthonormalBasis& V, const OrthonormalBasis* witness)
{
    if (V.dim() != cls_->h())
        throw DimensionError("step analysis: subspaces must have dimension h");
    std::optional<OrthonormalBasis> S;
    if (witness) {
        S = *witness;
    } else {
        try {
            S = nearest_admissible(V, *cls_);
        } catch (const PreconditionError&) {
        }
    }
    const double dxh = sin_theta_max(Xh_, V);
    const double dxj = sin_theta_max(cls_->Xj(), V);
    const double dxk = sin_theta_max(cls_->Xk(), V);
    const double w = S ? sin_theta_max(*S, V) : kNaN;

    std::optional<StepRow> row;
    if (prev_) {
        StepRow r;
        r.step_length = sin_theta_max(*prev_, V);
        r.paso1_lhs = prev_dxh_ - dxh;
        r.paso2_lhs = S ? sin_theta_max(*S, *prev_) - w : kNaN;
        r.paso3_lower = std::max(prev_dxj_, prev_dxk_) - w;
        r.witness_decrease = prev_witness_ - w;
        r.holds = r.paso1_lhs <= r.step_length + kSlack && !(r.paso2_lhs > r.step_length + kSlack);
        row = r;
    }
    prev_ = V;
    prev_dxh_ = dxh;
    prev_dxj_ = dxj;
    prev_dxk_ = dxk;
    prev_witness_ = w;
    return row;
}

std::vector<StepRow> step_analysis(const std::vector<OrthonormalBasis>& V, const AdmissibleClass& cls)
{
    StepTracker tracker(cls);
    std::vector<StepRow> out;
    for (const OrthonormalBasis& v : V)
        if (auto row = tracker.push(v))
            out.push_back(*row);
    return out;
}

CurveSet run_curves(const ExperimentConfig& exp, const EigenModel& model, const ClusterEnvelope& env)
{
    validate(exp);
    CurveSet out = exp.method == Method::SIM ? run_sim(exp, model, env) : run_krylov(exp, model, env);
    out.violations = count_violations(out.plot1) + count_violations(out.plot2) + count_violations(out.plot3);
    return out;
}

CurveSet run_figure(const ExperimentConfig& exp)
{
    validate(exp);
    const auto [model, env] = synth_model(exp.spec);
    CurveSet out = run_curves(exp, model, env);

    const std::filesystem::path dir(exp.output_dir);
    std::filesystem::create_directories(dir);
    const std::string stem = "fig" + std::to_string(exp.figure);
    const Table* plots[3] = {&out.plot1, &out.plot2, &out.plot3};
    for (int p = 0; p < 3; ++p) {
        std::ostringstream text;
        write_csv(text, *plots[p]);
        write_file(dir / (stem + "_plot" + std::to_string(p + 1) + ".csv"), text.str());
    }
    write_file(dir / (stem + "_summary.csv"), summary_table(out));
    return out;
}

bool is_sine_column(const std::string& name)
{
    static const std::set<std::string> other{"q",         "trial_dim",   "paso1_lhs",
                                             "paso2_lhs", "paso3_lower", "witness_decrease"};
    return !other.count(name);
}

std::vector<std::pair<std::string, std::string>> validity_pairs(const Table& t)
{
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](const std::string& bound, const std::string& measured) {
        if (t.column(measured) >= 0)
            out.emplace_back(bound, measured);
    };
    for (const std::string& c : t.columns) {
        if (starts_with(c, "thm_dist_bound_"))
            add(c, "witness_" + c.substr(std::string("thm_dist_bound_").size()));
        else if (starts_with(c, "sim_bound_") || starts_with(c, "cheb_bound_"))
            add(c, "witness_hp_" + c.substr(c.find("bound_") + 6));
        else if (c == "amd3_bound")
            add(c, "witness_r_w");
        else if (c == "amd1_bound")
            add(c, "witness_v");
        else if (c == "nakats_bound")
            add(c, "d_xh_v");
        else if (c == "step_length") {
            add(c, "paso1_lhs");
            add(c, "paso2_lhs");
        }
    }
    return out;
}

int count_violations(const Table& t, bool check_clamping)
{
    int count = 0;
    for (const auto& [b, m] : validity_pairs(t)) {
        const auto bc = static_cast<std::size_t>(t.column(b));
        const auto mc = static_cast<std::size_t>(t.column(m));
        for (const auto& row : t.rows)
            if (std::isfinite(row[bc]) && std::isfinite(row[mc]) && row[mc] > row[bc] + kSlack)
                ++count;
    }
    if (check_clamping) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (!is_sine_column(t.columns[c]))
                continue;
            for (const auto& row : t.rows)
                if (row[c] > 1.0 + 1e-12)
                    ++count;
        }
    }
    return count;
}

std::vector<SummaryRow> summarize(const CurveSet& curves)
{
    static const double thresholds[3] = {1e-2, 1e-4, 1e-8};
    std::vector<SummaryRow> out;
    const Table* plots[3] = {&curves.plot1, &curves.plot2, &curves.plot3};
    for (int p = 0; p < 3; ++p) {
        const Table& t = *plots[p];
        const Index qc = t.column("q");
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (!is_sine_column(t.columns[c]) || t.rows.empty())
                continue;
            SummaryRow s;
            s.curve = "plot" + std::to_string(p + 1) + "." + t.columns[c];
            s.final_value = std::min(t.rows.back()[c], 1.0);
            for (int i = 0; i < 3; ++i) {
                for (const auto& row : t.rows) {
                    if (row[c] < thresholds[i]) {
                        s.first_below[static_cast<std::size_t>(i)] = static_cast<int>(row[static_cast<std::size_t>(qc)]);
                        break;
                    }
                }
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::string summary_table(const CurveSet& curves)
{
    std::ostringstream out;
    out << "curve,final,first_below_1e-2,first_below_1e-4,first_below_1e-8\n";
    for (const SummaryRow& s : summarize(curves)) {
        out << s.curve << ',' << format_double(s.final_value);
        for (const auto& fb : s.first_below)
            out << ',' << (fb ? std::to_string(*fb) : std::string("-"));
        out << '\n';
    }
    out << "violations," << curves.violations << ",,,\n";
    return out.str();
}

void write_csv(std::ostream& out, const Table& t)
{
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            double v = row[c];
            if (is_sine_column(t.columns[c]) && v > 1.0)
                v = 1.0;
            out << (c ? "," : "") << format_double(v);
        }
        out << '\n';
    }
}

Table read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    Table t;
    std::string line;
    if (!std::getline(in, line))
        throw Error(path + ": empty file");
    t.columns = split_csv_line(line);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != t.columns.size())
            throw Error(path + ":" + std::to_string(lineno) + ": wrong number of fields");
        std::vector<double> row;
        for (const std::string& cell : cells) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || *end != '\0')
                throw Error(path + ":" + std::to_string(lineno) + ": not a number: " + cell);
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

VerifyReport verify_directory(const std::string& dir)
{
    VerifyReport rep;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (starts_with(name, "fig") && name.find("_plot") != std::string::npos && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const Table t = read_csv(f.string());
        const int v = count_violations(t, true);
        ++rep.files;
        rep.violations += v;
        rep.messages.push_back(f.filename().string() + ": " + std::to_string(t.rows.size()) + " rows, " +
                               std::to_string(v) + " violations");
    }
    return rep;
}

}  // namespace ladm
