// Command-line driver: fit the marginal and spatial-dependence models on a
// rainfall panel, simulate areal rainfall days on the station mesh, and
// extract T-day return quantiles and areal reduction factors.

#include "rainfield/csv.hpp"
#include "rainfield/day.hpp"
#include "rainfield/delaunay.hpp"
#include "rainfield/dependence.hpp"
#include "rainfield/field.hpp"
#include "rainfield/io.hpp"
#include "rainfield/margins.hpp"
#include "rainfield/mesh.hpp"
#include "rainfield/pipeline.hpp"
#include "rainfield/report_io.hpp"
#include "rainfield/validate.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace rainfield;

namespace {

struct CliOptions {
    std::string stations_path;
    std::string rain_path;
    std::string triangles_path;
    std::string origin_id;
    std::string out_dir = "out";
    ExperimentConfig config;
    double beta_flag = 0.0;  // 0 = not set
    long n_days_flag = 0;    // simulate/arf day count
};

std::string out_path(const CliOptions& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    return (fs::path(opt.out_dir) / name).string();
}

StationCatalog load_catalog(const CliOptions& opt) {
    if (opt.stations_path.empty()) throw std::runtime_error("--stations is required");
    return load_stations(opt.stations_path, opt.origin_id);
}

RainPanel load_panel(const CliOptions& opt, const StationCatalog& cat) {
    if (opt.rain_path.empty()) throw std::runtime_error("--rain is required");
    return load_rainfall(opt.rain_path, cat);
}

std::vector<Triangle> load_or_generate_triangles(const CliOptions& opt,
                                                 const StationCatalog& cat) {
    if (!opt.triangles_path.empty()) return load_triangles(opt.triangles_path, cat);
    // fallback: Delaunay triangulation of the catalog, flagged in the output
    const auto tris = delaunay_triangles(cat);
    write_triangles(out_path(opt, "triangles_generated.csv"), cat, tris);
    std::cerr << "note: no --triangles given; using a generated Delaunay triangulation ("
              << tris.size() << " Triangles, written to triangles_generated.csv)\n";
    return tris;
}

MarginalFit fit_margins_logged(const RainPanel& panel, int k) {
    std::vector<std::string> warnings;
    MarginalFit fit = fit_margins(panel, k, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return fit;
}

double resolve_beta(const CliOptions& opt, const RainPanel& panel, const StationCatalog& cat,
                    DependenceFit* fit_out = nullptr) {
    if (opt.beta_flag > 0.0) return opt.beta_flag;
    DependenceFit df = fit_dependence(panel, cat, opt.config.k);
    const double beta = df.beta_hat;
    if (fit_out) *fit_out = std::move(df);
    return beta;
}

int cmd_fit_margins(const CliOptions& opt, int scan_kmin, int scan_kmax) {
    const StationCatalog cat = load_catalog(opt);
    const RainPanel panel = load_panel(opt, cat);
    const MarginalFit fit = fit_margins_logged(panel, opt.config.k);
    write_margins_csv(out_path(opt, "margins.csv"), cat, fit);
    std::cout << "gamma_pooled=" << format_full(fit.gamma_pooled) << " (k=" << fit.k
              << ", stations=" << cat.size() << ")\n";
    if (scan_kmin > 0 && scan_kmax >= scan_kmin) {
        const auto rows = gamma_stability_scan(panel, scan_kmin, scan_kmax);
        write_gamma_scan_csv(out_path(opt, "gamma_scan.csv"), rows);
        std::cout << "gamma stability scan: " << rows.size() << " rows written\n";
    }
    return 0;
}

int cmd_fit_dependence(const CliOptions& opt) {
    const StationCatalog cat = load_catalog(opt);
    const RainPanel panel = load_panel(opt, cat);
    const DependenceFit fit = fit_dependence(panel, cat, opt.config.k);
    write_pairs_csv(out_path(opt, "pairs.csv"), cat, fit);
    std::cout << "beta_hat=" << format_full(fit.beta_hat) << " q25=" << format_full(fit.beta_q25)
              << " q75=" << format_full(fit.beta_q75) << " pairs=" << fit.pairs.size()
              << " excluded=" << fit.n_excluded << "\n";
    return 0;
}

int cmd_simulate(const CliOptions& opt, long snapshot_day) {
    const StationCatalog cat = load_catalog(opt);
    const RainPanel panel = load_panel(opt, cat);
    const auto tris = load_or_generate_triangles(opt, cat);
    const TriMesh mesh = build_mesh(cat, tris, opt.config.d);
    const MarginalFit fit = fit_margins_logged(panel, opt.config.k);
    const double beta = resolve_beta(opt, panel, cat);

    FieldParams fp;
    fp.beta = beta;
    fp.m_terms = opt.config.m_terms;
    fp.rotation_deg = opt.config.rotation_deg;
    const FieldSimulator field(mesh.vertex_pos, fp);

    const long n_days = opt.n_days_flag > 0 ? opt.n_days_flag : opt.config.return_period_days;
    long clamp_total = 0;
    const auto records = simulate_days(panel, fit, mesh, field, opt.config.master_seed, n_days,
                                       opt.config.threads, &clamp_total);
    write_totals_csv(out_path(opt, "totals.csv"), records);
    write_mesh_csv(out_path(opt, "mesh.csv"), mesh, cat);
    if (clamp_total > 0)
        std::cerr << "warning: " << clamp_total << " spectral exponent clamp events\n";

    if (snapshot_day >= 0) {
        const FieldSample sample =
            field.sample(opt.config.master_seed, static_cast<std::uint64_t>(snapshot_day));
        const Eigen::VectorXd xi = to_gpd_margins(sample.eta);
        const DayField day = simulate_day(panel, fit, mesh, field, opt.config.master_seed,
                                          static_cast<std::uint64_t>(snapshot_day));
        write_field_csv(out_path(opt, "field.csv"), mesh, sample.eta, xi, day.vertex_values);
    }
    std::cout << "simulated " << n_days << " days (beta=" << format_full(beta)
              << ", mesh vertices=" << mesh.n_vertices() << ", area="
              << format_fixed(mesh.total_area, 3) << " km^2)\n";
    return 0;
}

int cmd_quantile(const CliOptions& opt, const std::string& totals_path) {
    const std::string path = totals_path.empty() ? out_path(opt, "totals.csv") : totals_path;
    const auto records = read_totals_csv(path);
    std::vector<double> areal;
    areal.reserve(records.size());
    for (const auto& r : records) areal.push_back(r.areal_avg);
    const double q = extract_return_quantile(areal, opt.config.return_period_days);
    std::cout << "days=" << areal.size() << " period=" << opt.config.return_period_days
              << " quantile_mm=" << format_fixed(q, 4) << "\n";
    return 0;
}

int cmd_arf(const CliOptions& opt, bool write_totals) {
    const StationCatalog cat = load_catalog(opt);
    const RainPanel panel = load_panel(opt, cat);
    const auto tris = load_or_generate_triangles(opt, cat);
    const TriMesh mesh = build_mesh(cat, tris, opt.config.d);
    const MarginalFit fit = fit_margins_logged(panel, opt.config.k);
    DependenceFit df;
    const double beta = resolve_beta(opt, panel, cat, &df);
    if (!df.pairs.empty()) write_pairs_csv(out_path(opt, "pairs.csv"), cat, df);
    write_margins_csv(out_path(opt, "margins.csv"), cat, fit);
    write_mesh_csv(out_path(opt, "mesh.csv"), mesh, cat);

    ExperimentConfig config = opt.config;
    if (opt.n_days_flag > 0) config.n_days_sim = opt.n_days_flag;
    std::vector<DayRecord> records;
    const QuantileReport report = run_experiment(panel, cat, mesh, fit, beta, config,
                                                 write_totals ? &records : nullptr);
    if (write_totals) write_totals_csv(out_path(opt, "totals.csv"), records);
    write_quantiles_csv(out_path(opt, "quantiles.csv"), report.replicate_quantiles);
    write_report_txt(out_path(opt, "report.txt"), report, config, beta);
    write_hist_csv(out_path(opt, "hist.csv"), make_histogram(report.replicate_quantiles, 10));
    if (report.clamp_events > 0)
        std::cerr << "warning: " << report.clamp_events << " spectral exponent clamp events\n";
    std::cout << "mean_mm=" << format_fixed(report.mean, 4)
              << " std_mm=" << format_fixed(report.sample_std, 4)
              << " min_mm=" << format_fixed(report.min, 4)
              << " max_mm=" << format_fixed(report.max, 4)
              << " station_mean_mm=" << format_fixed(report.mean_station_quantile, 4)
              << " arf=" << format_fixed(report.arf, 4)
              << " avg_series_mm=" << format_fixed(report.avg_series_quantile, 4)
              << " arf_avg_series=" << format_fixed(report.arf_avg_series, 4) << "\n";
    return 0;
}

int cmd_sensitivity(const CliOptions& opt, std::vector<double> betas,
                    std::vector<double> rotations) {
    const StationCatalog cat = load_catalog(opt);
    const RainPanel panel = load_panel(opt, cat);
    const auto tris = load_or_generate_triangles(opt, cat);
    const TriMesh mesh = build_mesh(cat, tris, opt.config.d);
    const MarginalFit fit = fit_margins_logged(panel, opt.config.k);

    if (betas.empty()) {
        // default: fitted beta bracketed by the pair-estimate quartiles
        const DependenceFit df = fit_dependence(panel, cat, opt.config.k);
        betas = {df.beta_q25, df.beta_hat, df.beta_q75};
    }
    if (rotations.empty()) rotations = {0.0, 45.0};

    ExperimentConfig config = opt.config;
    if (opt.n_days_flag > 0) config.n_days_sim = opt.n_days_flag;
    const auto rows = sensitivity_run(panel, cat, mesh, fit, betas, rotations, config);
    write_sensitivity_csv(out_path(opt, "sensitivity.csv"), rows);
    for (const auto& row : rows)
        std::cout << "beta=" << format_full(row.beta) << " rot=" << row.rotation_deg
                  << " mean_mm=" << format_fixed(row.report.mean, 4)
                  << " std_mm=" << format_fixed(row.report.sample_std, 4) << "\n";
    return 0;
}

int cmd_synth(const CliOptions& opt, const SynthParams& base, double a_mm, double b_mm,
              long n_days, const std::string& out_file) {
    const StationCatalog cat = load_catalog(opt);
    SynthParams sp = base;
    sp.scale = Eigen::VectorXd::Constant(cat.size(), a_mm);
    sp.shift = Eigen::VectorXd::Constant(cat.size(), b_mm);
    const RainPanel panel = synth_generate(cat, sp, n_days, opt.config.master_seed);
    const std::string path = out_file.empty() ? out_path(opt, "synth_rain.csv") : out_file;
    write_rainfall(path, cat, panel);
    std::cout << "wrote " << n_days << " synthetic days for " << cat.size() << " stations to "
              << path << "\n";
    return 0;
}

int cmd_validate(const CliOptions& opt) {
    const StationCatalog cat = load_catalog(opt);
    const auto results =
        run_validation_suite(cat, opt.config.master_seed, opt.config.threads);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "validation suite passed\n" : "validation suite FAILED\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatial extreme-value rainfall model: fits, simulation, return quantiles"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; command-line flags override");

    CliOptions opt;
    app.add_option("--stations", opt.stations_path, "stations.csv (station_id,x_km,y_km)");
    app.add_option("--rain", opt.rain_path, "rain.csv (date,<station>...)");
    app.add_option("--triangles", opt.triangles_path,
                   "triangles.csv (v1,v2,v3); omit to use a Delaunay fallback");
    app.add_option("--origin", opt.origin_id, "origin station id (default: most central)");
    app.add_option("--k", opt.config.k, "number of upper order statistics")->capture_default_str();
    app.add_option("--d", opt.config.d, "Edge subdivision order")->capture_default_str();
    app.add_option("--m-terms", opt.config.m_terms, "spectral truncation")->capture_default_str();
    app.add_option("--n-days", opt.n_days_flag, "simulated days (per replicate for arf)");
    app.add_option("--period-days", opt.config.return_period_days, "return period in days")
        ->capture_default_str();
    app.add_option("--replicates", opt.config.n_replicates, "independent replicates")
        ->capture_default_str();
    app.add_option("--seed", opt.config.master_seed, "master seed")->capture_default_str();
    app.add_option("--rotate-deg", opt.config.rotation_deg, "coordinate rotation in degrees")
        ->capture_default_str();
    app.add_option("--beta", opt.beta_flag, "dependence parameter override (skip fitting)");
    app.add_option("--out-dir", opt.out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", opt.config.threads, "worker threads")->capture_default_str();

    int scan_kmin = 0, scan_kmax = 0;
    auto* fit_m = app.add_subcommand("fit-margins", "fit per-station tail parameters");
    fit_m->add_option("--scan-kmin", scan_kmin, "gamma stability scan lower k");
    fit_m->add_option("--scan-kmax", scan_kmax, "gamma stability scan upper k");

    app.add_subcommand("fit-dependence", "estimate the spatial dependence parameter");

    long snapshot_day = -1;
    auto* sim = app.add_subcommand("simulate", "simulate daily areal rainfall, write totals.csv");
    sim->add_option("--snapshot-day", snapshot_day, "also write field.csv for this sim index");

    std::string totals_path;
    auto* quant = app.add_subcommand("quantile", "return quantile from an existing totals.csv");
    quant->add_option("--totals", totals_path, "totals.csv path (default <out-dir>/totals.csv)");

    bool arf_totals = false;
    auto* arf = app.add_subcommand("arf", "full experiment: replicate quantiles, ARF, report");
    arf->add_flag("--write-totals", arf_totals, "also write every simulated day to totals.csv");

    std::vector<double> beta_list, rotate_list;
    auto* sens = app.add_subcommand("sensitivity", "quantile sensitivity to beta and rotation");
    sens->add_option("--beta-list", beta_list, "beta values (default: q25, fitted, q75)");
    sens->add_option("--rotate-list", rotate_list, "rotations in degrees (default: 0 45)");

    SynthParams synth_params;
    double synth_a = 6.0, synth_b = 12.0;
    long synth_days = 2730;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "generate a ground-truth synthetic panel");
    synth->add_option("--gamma", synth_params.gamma, "true shape")->capture_default_str();
    synth->add_option("--synth-beta", synth_params.beta, "true dependence")->capture_default_str();
    synth->add_option("--a-mm", synth_a, "true scale, mm")->capture_default_str();
    synth->add_option("--b-mm", synth_b, "true shift, mm")->capture_default_str();
    synth->add_option("--censor-prob", synth_params.censor_prob, "tail exceedance probability")
        ->capture_default_str();
    synth->add_option("--dry-prob", synth_params.dry_prob, "P(zero | below censor)")
        ->capture_default_str();
    synth->add_option("--synth-m-terms", synth_params.m_terms, "generator truncation")
        ->capture_default_str();
    synth->add_option("--synth-days", synth_days, "number of days")->capture_default_str();
    synth->add_option("--out", synth_out, "output path (default <out-dir>/synth_rain.csv)");

    app.add_subcommand("validate", "run the Monte Carlo invariant suite");

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("fit-margins")) return cmd_fit_margins(opt, scan_kmin, scan_kmax);
        if (app.got_subcommand("fit-dependence")) return cmd_fit_dependence(opt);
        if (app.got_subcommand("simulate")) return cmd_simulate(opt, snapshot_day);
        if (app.got_subcommand("quantile")) return cmd_quantile(opt, totals_path);
        if (app.got_subcommand("arf")) return cmd_arf(opt, arf_totals);
        if (app.got_subcommand("sensitivity")) return cmd_sensitivity(opt, beta_list, rotate_list);
        if (app.got_subcommand("synth"))
            return cmd_synth(opt, synth_params, synth_a, synth_b, synth_days, synth_out);
        if (app.got_subcommand("validate")) return cmd_validate(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
