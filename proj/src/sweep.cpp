#include "qdr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

namespace qdr {

const char* const kSweepCsvHeader =
    "omega_ex[Omega],f[Omega],qubit_mode,A[chi0],A_abs[chi0],P_inf[1],D[chi0],Gamma[Omega],"
    "T_meas[2pi/Omega],efficiency[1],null_residual[1],n_fock_used,error";

std::vector<double> linspace(double from, double to, int points) {
    if (points < 1) return {};
    if (points == 1) return {from};
    std::vector<double> out(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) out[i] = from + (to - from) * i / (points - 1);
    return out;
}

void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn) {
    const size_t workers = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)), count));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < count; i = next++) fn(i);
    };
    if (workers == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointTask {
    double f = 0.0;
    double omega = 0.0;
};

// All rows for one (f, omega): the modes share the pinned-detector metrics.
std::vector<SweepResultRow> evaluate_point(const SweepConfig& cfg, const PointTask& task) {
    const SweepSettings& s = cfg.settings;
    ModelParams p = cfg.base;
    p.f = task.f;
    p.omega_ex = task.omega;

    double D = kNaN, Gamma = kNaN, T_meas = kNaN, eff = kNaN;
    std::string metric_error;
    try {
        if (s.metrics) {
            const PointMetrics m = point_metrics(p, s.n_fock, s.rate_model);
            D = m.D;
            Gamma = m.Gamma;
            T_meas = m.T_meas;
            eff = m.efficiency;
        } else {
            SolveOptions opt;
            opt.n_fock = s.n_fock;
            opt.rate_model = s.rate_model;
            const double up = detector_response(solve_point(p, QubitMode::Up, opt), QubitMode::Up).A;
            const double down = detector_response(solve_point(p, QubitMode::Down, opt), QubitMode::Down).A;
            D = std::abs(up - down);
        }
    } catch (const std::exception& e) {
        metric_error = std::string("metrics: ") + e.what();
    }

    std::vector<SweepResultRow> rows;
    for (QubitMode mode : s.modes) {
        SweepResultRow r;
        r.omega_ex = task.omega;
        r.f = task.f;
        r.mode = mode;
        r.D = D;
        r.Gamma = Gamma;
        r.T_meas = T_meas;
        r.efficiency = eff;
        r.n_fock_used = s.n_fock;
        r.error = metric_error;
        try {
            SolveOptions opt;
            opt.n_fock = s.n_fock;
            opt.rate_model = s.rate_model;
            const PointSolution sol = solve_point(p, mode, opt);
            const ResponseRecord rec = detector_response(sol, mode);
            r.A = rec.A;
            r.A_abs = rec.A_abs;
            r.P_inf = rec.P_inf;
            r.null_residual = sol.ss.residual;
        } catch (const std::exception& e) {
            r.A = r.A_abs = r.P_inf = r.null_residual = kNaN;
            r.error = r.error.empty() ? e.what() : r.error + "; " + e.what();
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string csv_text(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

std::vector<SweepResultRow> run_sweep(const SweepConfig& cfg) {
    const SweepSettings& s = cfg.settings;
    if (s.points < 2 || !(s.from < s.to)) throw ConfigError("sweep requires points >= 2 and from < to");
    const std::vector<double> grid = linspace(s.from, s.to, s.points);
    std::vector<double> fs = s.f_list.empty() ? std::vector<double>{cfg.base.f} : s.f_list;
    std::sort(fs.begin(), fs.end());
    if (s.modes.empty()) return {};

    std::vector<PointTask> tasks;
    for (double f : fs)
        for (double w : grid) tasks.push_back({f, w});

    std::vector<std::vector<SweepResultRow>> results(tasks.size());
    parallel_for(tasks.size(), cfg.jobs, [&](size_t i) { results[i] = evaluate_point(cfg, tasks[i]); });

    // Reassemble in (f, mode, omega) order independent of scheduling.
    std::vector<SweepResultRow> rows;
    rows.reserve(tasks.size() * s.modes.size());
    const size_t per_f = grid.size();
    for (size_t fi = 0; fi < fs.size(); ++fi)
        for (size_t mi = 0; mi < s.modes.size(); ++mi)
            for (size_t wi = 0; wi < per_f; ++wi) rows.push_back(results[fi * per_f + wi][mi]);
    return rows;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepResultRow>& rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.omega_ex) << ',' << format_number(r.f) << ',' << to_string(r.mode) << ','
            << format_number(r.A) << ',' << format_number(r.A_abs) << ',' << format_number(r.P_inf) << ','
            << format_number(r.D) << ',' << format_number(r.Gamma) << ',' << format_number(r.T_meas) << ','
            << format_number(r.efficiency) << ',' << format_number(r.null_residual) << ',' << r.n_fock_used << ','
            << csv_text(r.error) << '\n';
    }
}

std::vector<BranchRow> quasienergy_branches(const ModelParams& params, const std::vector<double>& grid, int n_fock) {
    ModelParams p = params;
    p.g = 0.0;
    const auto h = HilbertSpace::detector_only(n_fock);
    std::vector<BranchRow> out;
    std::vector<int> label;  // label[branch] = state index at the current point
    QuasiSpectrum previous;
    for (size_t i = 0; i < grid.size(); ++i) {
        p.omega_ex = grid[i];
        QuasiSpectrum qs = quasienergy_spectrum(build_rwa_hamiltonian(p, h), h);
        double overlap = 1.0;
        if (i == 0) {
            label.resize(static_cast<size_t>(qs.dim()));
            for (int k = 0; k < qs.dim(); ++k) label[k] = k;
        } else {
            const BranchAssignment a = track_branches(previous, qs);
            for (auto& l : label) l = a.perm[l];
            overlap = a.min_overlap;
        }
        for (int b = 0; b < qs.dim(); ++b) out.push_back({grid[i], b, qs.energies(label[b]), overlap});
        previous = std::move(qs);
    }
    return out;
}

void write_branches_csv(std::ostream& out, const std::vector<BranchRow>& rows) {
    out << "omega_ex[Omega],branch,quasienergy[Omega],min_overlap[1]\n";
    for (const auto& r : rows)
        out << format_number(r.omega_ex) << ',' << r.branch << ',' << format_number(r.quasienergy) << ','
            << format_number(r.overlap) << '\n';
}

}  // namespace qdr
