#include "platoon/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace platoon {

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("write_trajectory_csv: cannot open " + path);
    os.precision(12);
    if (traj.rows.empty()) throw DomainError("write_trajectory_csv: empty trajectory");

    const Eigen::Index n = traj.rows.front().positions.size();
    os << 't';
    for (Eigen::Index i = 1; i <= n; ++i) os << ",x_" << i;
    for (Eigen::Index i = 1; i <= n; ++i) os << ",v_" << i;
    for (Eigen::Index i = 2; i <= n; ++i) os << ",s_" << i;
    for (Eigen::Index i = 1; i <= n; ++i) os << ",F_" << i;
    for (Eigen::Index i = 1; i <= n; ++i) os << ",k_" << i;
    os << '\n';

    auto emit = [&os](const Vec& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) os << ',' << v(i);
    };
    for (const TrajectoryRow& row : traj.rows) {
        os << row.time;
        emit(row.positions);
        emit(row.speeds);
        emit(row.spacings);
        emit(row.forces);
        emit(row.gains);
        os << '\n';
    }
    if (traj.exited_omega)
        os << "# PARTIAL: rollout left the admissible set (" << traj.omega_violation << ")\n";
}

namespace {

struct Series {
    std::vector<double> t;
    std::vector<std::vector<double>> curves;  // curves[c][k]
};

Series extract(const Trajectory& traj, const std::string& quantity) {
    Series s;
    const TrajectoryRow& first = traj.rows.front();
    auto pick = [&](const TrajectoryRow& row) -> const Vec& {
        if (quantity == "spacings") return row.spacings;
        if (quantity == "speeds") return row.speeds;
        if (quantity == "forces") return row.forces;
        throw DomainError("write_timeseries_svg: unknown quantity " + quantity);
    };
    s.curves.resize(static_cast<size_t>(pick(first).size()));
    for (const TrajectoryRow& row : traj.rows) {
        s.t.push_back(row.time);
        const Vec& v = pick(row);
        for (Eigen::Index c = 0; c < v.size(); ++c)
            s.curves[static_cast<size_t>(c)].push_back(v(c));
    }
    return s;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_timeseries_svg(const Trajectory& traj, const std::string& path,
                          const std::string& quantity, const std::string& y_label) {
    if (traj.rows.empty()) throw DomainError("write_timeseries_svg: empty trajectory");
    const Series series = extract(traj, quantity);

    const double width = 720, height = 480;
    const double ml = 70, mr = 20, mt = 20, mb = 50;

    double t_lo = series.t.front(), t_hi = series.t.back();
    double y_lo = 1e300, y_hi = -1e300;
    for (const auto& curve : series.curves)
        for (double y : curve) {
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (y_hi - y_lo < 1e-9) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    if (t_hi - t_lo < 1e-12) t_hi = t_lo + 1.0;

    auto sx = [&](double t) { return ml + (t - t_lo) / (t_hi - t_lo) * (width - ml - mr); };
    auto sy = [&](double y) {
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    std::ofstream os(path);
    if (!os) throw DomainError("write_timeseries_svg: cannot open " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "' viewBox='0 0 " << width << ' ' << height << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";

    // Axes with a handful of ticks.
    os << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
       << height - mb << "' stroke='black'/>\n";
    os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
       << "' stroke='black'/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double t = t_lo + k * (t_hi - t_lo) / 5.0;
        const double y = y_lo + k * (y_hi - y_lo) / 5.0;
        os << "<text x='" << sx(t) << "' y='" << height - mb + 20
           << "' font-size='12' text-anchor='middle'>" << t << "</text>\n";
        os << "<text x='" << ml - 8 << "' y='" << sy(y) + 4
           << "' font-size='12' text-anchor='end'>" << y << "</text>\n";
        os << "<line x1='" << sx(t) << "' y1='" << height - mb << "' x2='" << sx(t) << "' y2='"
           << height - mb + 4 << "' stroke='black'/>\n";
        os << "<line x1='" << ml - 4 << "' y1='" << sy(y) << "' x2='" << ml << "' y2='" << sy(y)
           << "' stroke='black'/>\n";
    }
    os << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
       << "' font-size='14' text-anchor='middle'>t [s]</text>\n";
    os << "<text x='16' y='" << (mt + height - mb) / 2
       << "' font-size='14' text-anchor='middle' transform='rotate(-90 16 "
       << (mt + height - mb) / 2 << ")'>" << y_label << "</text>\n";

    for (size_t c = 0; c < series.curves.size(); ++c) {
        os << "<polyline fill='none' stroke='" << kPalette[c % 10] << "' stroke-width='1.5' points='";
        const size_t stride = std::max<size_t>(1, series.t.size() / 2000);
        for (size_t k = 0; k < series.t.size(); k += stride)
            os << sx(series.t[k]) << ',' << sy(series.curves[c][k]) << ' ';
        os << sx(series.t.back()) << ',' << sy(series.curves[c].back());
        os << "'/>\n";
    }
    os << "</svg>\n";
}

void write_optimization_report(const OptimizationResult& result, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("write_optimization_report: cannot open " + path);
    os.precision(17);
    os << "format platoon-optimize-report 1\n"
       << "success " << (result.success ? 1 : 0) << '\n'
       << "alpha " << result.best.alpha << '\n'
       << "r " << result.best.r << '\n'
       << "p " << result.best.p << '\n'
       << "objective " << result.objective << '\n'
       << "box_ok " << (result.box_ok ? 1 : 0) << '\n'
       << "slope_ok " << (result.slope_ok ? 1 : 0) << '\n'
       << "evaluations " << result.evaluations << '\n';
    for (size_t i = 0; i < result.history.size(); ++i) {
        const RestartRecord& rec = result.history[i];
        os << "restart " << i << ' ' << rec.objective << ' ' << (rec.feasible ? 1 : 0) << ' '
           << rec.evaluations << '\n';
    }
}

OptimizationResult read_optimization_report(const std::string& path,
                                            const ModelParams& params) {
    std::ifstream is(path);
    if (!is) throw DomainError("read_optimization_report: cannot open " + path);
    std::string key, fmt;
    int version = 0;
    is >> key >> fmt >> version;
    if (key != "format" || fmt != "platoon-optimize-report" || version != 1)
        throw DomainError("read_optimization_report: unrecognized format in " + path);

    OptimizationResult result;
    result.best.kind = PotentialKind::PerformanceSensitive;
    result.best.L = params.L;
    result.best.lambda = params.lambda;
    int flag = 0;
    while (is >> key) {
        if (key == "success") {
            is >> flag;
            result.success = flag != 0;
        } else if (key == "alpha")
            is >> result.best.alpha;
        else if (key == "r")
            is >> result.best.r;
        else if (key == "p")
            is >> result.best.p;
        else if (key == "objective")
            is >> result.objective;
        else if (key == "box_ok") {
            is >> flag;
            result.box_ok = flag != 0;
        } else if (key == "slope_ok") {
            is >> flag;
            result.slope_ok = flag != 0;
        } else if (key == "evaluations")
            is >> result.evaluations;
        else if (key == "restart") {
            RestartRecord rec;
            size_t idx;
            is >> idx >> rec.objective >> flag >> rec.evaluations;
            rec.feasible = flag != 0;
            result.history.push_back(rec);
        }
    }
    return result;
}

}  // namespace platoon
