// Command-line harness: generates measures, projects them, sweeps energies
// over angle domains, estimates dimensions, evaluates the oscillatory sums,
// and checks the kernel transform — all with reproducible file outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "hvp/angle_domain.hpp"
#include "hvp/dimension.hpp"
#include "hvp/energy.hpp"
#include "hvp/errors.hpp"
#include "hvp/fourier.hpp"
#include "hvp/geometry.hpp"
#include "hvp/measure.hpp"
#include "hvp/numeric.hpp"
#include "hvp/oscillatory.hpp"
#include "hvp/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace hvp;

namespace {

constexpr double kPi = std::numbers::pi;

struct CommonOpts {
    std::string out = "out";
    std::uint64_t seed = 12345;
    int threads = 1;
    std::string measure = "parabola:n=4096,beta=1";
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_measure = true) {
    cmd->set_config("--config", "", "INI config file; explicit flags override it");
    cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Seed recorded in outputs")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads (same bytes for any N)")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    if (with_measure)
        cmd->add_option("--measure", c.measure,
                        "parabola:n=..,beta=.. | cantor:a=..,b=..,depth=..,theta0=..,R=.. "
                        "| file:PATH")
            ->capture_default_str();
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value '" + s + "' for " + what);
    }
}

int parse_int_param(double v, const std::string& what) {
    const double r = std::round(v);
    if (std::fabs(v - r) > 1e-9 || std::fabs(r) > 1e9)
        throw std::invalid_argument(what + " must be an integer, got " + format_g17(v));
    return int(r);
}

std::map<std::string, double> parse_kv(const std::string& body, const std::string& what) {
    std::map<std::string, double> kv;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        const std::string item = body.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument(what + ": expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = parse_double(item.substr(eq + 1), item.substr(0, eq));
        pos = comma + 1;
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, double dflt) {
    const auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    const double v = it->second;
    kv.erase(it);
    return v;
}

DiscreteMeasure make_measure(const std::string& spec, std::uint64_t seed) {
    const std::size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

    DiscreteMeasure mu;
    if (kind == "parabola") {
        auto kv = parse_kv(body, "parabola spec");
        const int n = parse_int_param(take(kv, "n", 4096), "n");
        const double beta = take(kv, "beta", 1.0);
        if (!kv.empty())
            throw std::invalid_argument("parabola spec: unknown key '" + kv.begin()->first + "'");
        mu = parabola_measure(n, beta);
    } else if (kind == "cantor") {
        auto kv = parse_kv(body, "cantor spec");
        const double a = take(kv, "a", 1.0), b = take(kv, "b", 0.5);
        const int depth = parse_int_param(take(kv, "depth", 10), "depth");
        const double theta0 = take(kv, "theta0", 0.0), R = take(kv, "R", 1.0);
        if (!kv.empty())
            throw std::invalid_argument("cantor spec: unknown key '" + kv.begin()->first + "'");
        mu = product_cantor_measure(Angle(theta0), a, b, depth, R);
    } else if (kind == "file") {
        if (body.empty()) throw std::invalid_argument("file spec: missing path");
        mu = load_measure(body);
    } else {
        throw std::invalid_argument("unknown measure kind '" + kind +
                                    "' (want parabola, cantor, or file)");
    }
    mu.meta.seed = seed;
    return mu;
}

// The resolved-config block embedded in every JSON summary. Thread count is
// an execution detail, not part of the experiment identity, and is omitted
// so reruns with different --threads stay byte-identical.
ordered_json config_json(const CommonOpts& c, const DiscreteMeasure* mu) {
    ordered_json j;
    j["out"] = c.out;
    j["seed"] = c.seed;
    if (mu) {
        j["measure"]["spec"] = c.measure;
        j["measure"]["generator"] = mu->meta.generator;
        j["measure"]["params"] = mu->meta.params;
        j["measure"]["n_points"] = mu->size();
    }
    return j;
}

void write_text(const fs::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open " + p.string() + " for writing");
    f << body;
    if (!f) throw IoError("write failed: " + p.string());
}

void write_json(const fs::path& p, const ordered_json& j) { write_text(p, j.dump(2) + "\n"); }

std::vector<double> excluded_centers(double theta0, int modulus) {
    std::vector<double> cs;
    for (int k = 1; k < 4; ++k) {
        if (modulus == 2 && k % 2 == 0) continue;
        cs.push_back(Angle(theta0 + double(k) * kPi / 4.0).radians());
    }
    return cs;
}

ordered_json domain_json(const AngleDomain& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& [lo, hi] : d.intervals()) arr.push_back({lo, hi});
    return arr;
}

// ---------------------------------------------------------------- commands

int cmd_project(const CommonOpts& c, double theta) {
    const DiscreteMeasure mu = make_measure(c.measure, c.seed);
    const PlanarMeasure nu = pushforward_projection(mu, Angle(theta));
    fs::create_directories(c.out);
    save_planar_measure(nu, fs::path(c.out) / "projected.csv");

    ordered_json j;
    j["command"] = "project";
    j["theta"] = theta;
    j["mass"] = nu.mass();
    j["n_points"] = nu.size();
    j["config"] = config_json(c, &mu);
    j["outputs"] = {"projected.csv"};
    write_json(fs::path(c.out) / "project.json", j);
    return 0;
}

int cmd_sweep(const CommonOpts& c, double s, double theta0, double epsilon, int modulus,
              int n_theta, const std::string& kernel_name) {
    const EnergyKernel kern =
        kernel_name == "fs" ? EnergyKernel::plain : EnergyKernel::koranyi;
    if (kernel_name != "fs" && kernel_name != "koranyi")
        throw std::invalid_argument("kernel must be 'koranyi' or 'fs'");
    const DiscreteMeasure mu = make_measure(c.measure, c.seed);
    const AngleDomain domain = excluded_domain(Angle(theta0), epsilon, modulus);
    const SweepReport rep = energy_theta_sweep(mu, s, domain, n_theta, kern, c.threads);

    fs::create_directories(c.out);
    std::string csv = "theta,energy\n";
    for (std::size_t i = 0; i < rep.thetas.size(); ++i)
        csv += format_g17(rep.thetas[i]) + "," + format_g17(rep.energies[i]) + "\n";
    write_text(fs::path(c.out) / "sweep.csv", csv);

    ordered_json j;
    j["command"] = "sweep";
    j["s"] = s;
    j["kernel"] = kernel_name;
    j["theta0"] = theta0;
    j["epsilon"] = epsilon;
    j["modulus"] = modulus;
    j["n_theta"] = n_theta;
    j["domain"] = domain_json(domain);
    j["integral"] = rep.integral;
    j["n_points"] = rep.n_points;
    j["min_separation"] = rep.min_sep;
    j["config"] = config_json(c, &mu);
    j["outputs"] = {"sweep.csv", "sweep.json", "sweep.svg"};
    write_json(fs::path(c.out) / "sweep.json", j);

    PlotSpec ps;
    ps.title = "energy sweep, s=" + format_g17(s);
    ps.xlabel = "theta";
    ps.ylabel = "I_s";
    ps.vmarks = epsilon > 0.0 ? excluded_centers(theta0, modulus) : std::vector<double>{};
    write_line_plot((fs::path(c.out) / "sweep.svg").string(), ps,
                    {{rep.thetas, rep.energies, "", ""}});
    return 0;
}

int cmd_dims(const CommonOpts& c, int n_theta, std::vector<double> deltas) {
    const DiscreteMeasure mu = make_measure(c.measure, c.seed);
    if (n_theta < 1) throw std::invalid_argument("n-theta must be >= 1");
    std::vector<double> thetas(static_cast<std::size_t>(n_theta));
    for (int i = 0; i < n_theta; ++i) thetas[std::size_t(i)] = double(i) * kPi / n_theta;

    ordered_json rows = ordered_json::array();
    std::vector<double> slopes(thetas.size());
    std::string csv = "theta,slope,r2\n";
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const PlanarMeasure nu = pushforward_projection(mu, Angle(thetas[i]));
        DimensionEstimate est;
        try {
            est = dim_estimate_plane(nu.points, deltas);
        } catch (const NumericalError& e) {
            est.deltas = deltas;
            est.slope = 0.0;
            est.r2 = 0.0;
            est.flags = {e.what()};
        }
        slopes[i] = est.slope;
        csv += format_g17(thetas[i]) + "," + format_g17(est.slope) + "," +
               format_g17(est.r2) + "\n";
        ordered_json r;
        r["theta"] = thetas[i];
        r["deltas"] = est.deltas;
        r["counts"] = est.counts;
        r["slope"] = est.slope;
        r["r2"] = est.r2;
        r["window"] = est.window;
        r["flags"] = est.flags;
        rows.push_back(r);
    }

    fs::create_directories(c.out);
    write_text(fs::path(c.out) / "dims.csv", csv);

    ordered_json j;
    j["command"] = "dims";
    j["n_theta"] = n_theta;
    j["deltas"] = deltas;
    j["profile"] = rows;
    j["config"] = config_json(c, &mu);
    j["outputs"] = {"dims.csv", "dims.json", "dims.svg"};
    write_json(fs::path(c.out) / "dims.json", j);

    PlotSpec ps;
    ps.title = "projected box dimension";
    ps.xlabel = "theta";
    ps.ylabel = "slope";
    write_line_plot((fs::path(c.out) / "dims.svg").string(), ps, {{thetas, slopes, "", ""}});
    return 0;
}

int cmd_oscillatory(const CommonOpts& c, int jmin, int jmax, double theta0, double epsilon,
                    int modulus, double tol) {
    if (jmin < 0 || jmax > 8 || jmin > jmax)
        throw std::invalid_argument("need 0 <= j-min <= j-max <= 8");
    const DiscreteMeasure mu = make_measure(c.measure, c.seed);
    const AngleDomain domain = excluded_domain(Angle(theta0), epsilon, modulus);

    std::vector<double> js, lhs, log2lhs;
    for (int j = jmin; j <= jmax; ++j) {
        const double v = lhs_main_inequality(mu, j, domain, tol, c.threads);
        js.push_back(double(j));
        lhs.push_back(v);
        log2lhs.push_back(std::log2(v));
    }

    fs::create_directories(c.out);
    std::string csv = "j,lhs,log2_lhs\n";
    for (std::size_t i = 0; i < js.size(); ++i)
        csv += format_g17(js[i]) + "," + format_g17(lhs[i]) + "," +
               format_g17(log2lhs[i]) + "\n";
    write_text(fs::path(c.out) / "oscillatory.csv", csv);

    ordered_json j;
    j["command"] = "oscillatory";
    j["j_min"] = jmin;
    j["j_max"] = jmax;
    j["theta0"] = theta0;
    j["epsilon"] = epsilon;
    j["modulus"] = modulus;
    j["tol"] = tol;
    j["domain"] = domain_json(domain);
    j["lhs"] = lhs;
    std::vector<PlotSeries> series{{js, log2lhs, "log2 lhs", ""}};
    if (js.size() >= 2) {
        const LineFit fit = least_squares(js, log2lhs);
        j["fitted_exponent"] = fit.slope;
        j["fit_r2"] = fit.r2;
        std::vector<double> fy;
        for (double x : js) fy.push_back(fit.intercept + fit.slope * x);
        series.push_back({js, fy, "fit, slope " + format_g17(fit.slope), ""});
    }
    j["config"] = config_json(c, &mu);
    j["outputs"] = {"oscillatory.csv", "oscillatory.json", "oscillatory.svg"};
    write_json(fs::path(c.out) / "oscillatory.json", j);

    PlotSpec ps;
    ps.title = "pair-sum growth across scales";
    ps.xlabel = "j";
    ps.ylabel = "log2 lhs";
    write_line_plot((fs::path(c.out) / "oscillatory.svg").string(), ps, series);
    return 0;
}

int cmd_fourier_check(const CommonOpts& c, double s, double extent, double resolution,
                      const std::vector<std::string>& xi_specs) {
    const FourierGrid grid{extent, resolution};
    std::vector<std::array<double, 2>> samples;
    for (const std::string& spec : xi_specs) {
        const std::size_t comma = spec.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--xi expects 'xi1,xi2', got '" + spec + "'");
        samples.push_back({parse_double(spec.substr(0, comma), "xi1"),
                           parse_double(spec.substr(comma + 1), "xi2")});
    }
    if (samples.empty()) samples = default_band_samples(grid);
    const FourierReport rep = fourier_fs_check(s, grid, samples);

    fs::create_directories(c.out);
    std::string csv = "xi1,xi2,fhat,comparison,ratio\n";
    for (const FourierSample& smp : rep.samples)
        csv += format_g17(smp.xi1) + "," + format_g17(smp.xi2) + "," +
               format_g17(smp.fhat) + "," + format_g17(smp.comparison) + "," +
               format_g17(smp.ratio) + "\n";
    write_text(fs::path(c.out) / "fourier.csv", csv);

    ordered_json j;
    j["command"] = "fourier-check";
    j["s"] = s;
    j["grid"] = {{"extent", grid.extent}, {"resolution", grid.resolution}};
    j["band"] = {rep.band_lo, rep.band_hi};
    j["fitted_constant"] = rep.fitted_constant;
    j["ratio_min"] = rep.ratio_min;
    j["ratio_max"] = rep.ratio_max;
    j["violations"] = rep.violations;
    j["lattice"] = {{"points", rep.lattice_points},
                    {"min_fhat", rep.lattice_min_fhat},
                    {"ratio_min", rep.lattice_ratio_min},
                    {"ratio_max", rep.lattice_ratio_max},
                    {"positivity_violations", rep.lattice_positivity_violations}};
    ordered_json rows = ordered_json::array();
    for (const FourierSample& smp : rep.samples)
        rows.push_back({{"xi1", smp.xi1},
                        {"xi2", smp.xi2},
                        {"fhat", smp.fhat},
                        {"comparison", smp.comparison},
                        {"ratio", smp.ratio}});
    j["samples"] = rows;
    j["config"] = config_json(c, nullptr);
    j["outputs"] = {"fourier.csv", "fourier.json"};
    write_json(fs::path(c.out) / "fourier.json", j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertical-projection toolkit for the first Heisenberg group"};
    app.require_subcommand(1);

    CommonOpts c;

    auto* project = app.add_subcommand("project", "Project a measure to a vertical plane");
    double theta = 0.0;
    add_common(project, c);
    project->add_option("--theta", theta, "Projection angle (radians)")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Energy of the projection across angles");
    double s = 1.75, theta0 = 0.0, epsilon = 0.15;
    int modulus = 2, n_theta = 64;
    std::string kernel = "koranyi";
    add_common(sweep, c);
    sweep->add_option("--s", s, "Energy exponent")->capture_default_str();
    sweep->add_option("--theta0", theta0, "Excluded-set base angle")->capture_default_str();
    sweep->add_option("--epsilon", epsilon, "Exclusion radius (0 = full circle)")
        ->capture_default_str();
    sweep->add_option("--modulus", modulus, "Excluded-set modulus (2 or 4)")
        ->check(CLI::IsMember({2, 4}))
        ->capture_default_str();
    sweep->add_option("--n-theta", n_theta, "Grid size across the domain")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    sweep->add_option("--kernel", kernel, "koranyi | fs")->capture_default_str();

    auto* dims = app.add_subcommand("dims", "Box dimension of projections across angles");
    int dims_n_theta = 32;
    std::vector<double> deltas = {0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625,
                                  0.001953125};
    add_common(dims, c);
    dims->add_option("--n-theta", dims_n_theta, "Angle grid size")->capture_default_str();
    dims->add_option("--deltas", deltas, "Box-size ladder")
        ->delimiter(',')
        ->capture_default_str();

    auto* osc = app.add_subcommand("oscillatory", "Scale growth of the projected pair sums");
    int jmin = 0, jmax = 6;
    double osc_theta0 = 0.0, osc_epsilon = 0.15, osc_tol = 1e-3;
    int osc_modulus = 4;
    add_common(osc, c);
    osc->add_option("--j-min", jmin, "Smallest dyadic scale index")->capture_default_str();
    osc->add_option("--j-max", jmax, "Largest dyadic scale index")->capture_default_str();
    osc->add_option("--theta0", osc_theta0, "Excluded-set base angle")->capture_default_str();
    osc->add_option("--epsilon", osc_epsilon, "Exclusion radius")->capture_default_str();
    osc->add_option("--modulus", osc_modulus, "Excluded-set modulus (2 or 4)")
        ->check(CLI::IsMember({2, 4}))
        ->capture_default_str();
    osc->add_option("--tol", osc_tol, "Relative quadrature tolerance")->capture_default_str();

    auto* fourier = app.add_subcommand("fourier-check", "Transform positivity and decay");
    double fc_s = 2.0, fc_extent = 64.0, fc_resolution = 0.25;
    std::vector<std::string> fc_xi;
    add_common(fourier, c, /*with_measure=*/false);
    fourier->add_option("--s", fc_s, "Kernel exponent in (1,3)")->capture_default_str();
    fourier->add_option("--extent", fc_extent, "Half-width T of the sampled square")
        ->capture_default_str();
    fourier->add_option("--resolution", fc_resolution, "Sample spacing h")
        ->capture_default_str();
    fourier->add_option("--xi", fc_xi, "Frequency sample 'xi1,xi2' (repeatable)");

    try {
        app.parse(argc, argv);
        if (project->parsed()) return cmd_project(c, theta);
        if (sweep->parsed()) return cmd_sweep(c, s, theta0, epsilon, modulus, n_theta, kernel);
        if (dims->parsed()) return cmd_dims(c, dims_n_theta, deltas);
        if (osc->parsed())
            return cmd_oscillatory(c, jmin, jmax, osc_theta0, osc_epsilon, osc_modulus,
                                   osc_tol);
        if (fourier->parsed())
            return cmd_fourier_check(c, fc_s, fc_extent, fc_resolution, fc_xi);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
