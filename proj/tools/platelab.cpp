// Command-line driver: run / converge / identities / oracle / list-geometries.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "platelab/lab.hpp"
#include "platelab/oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace platelab;

fs::path resolve_out(const std::string& cli_out, const std::string& file) {
    fs::path dir;
    if (!cli_out.empty()) {
        dir = cli_out;
    } else if (const char* env = std::getenv("PLATELAB_OUT_DIR")) {
        dir = env;
    }
    if (dir.empty()) return fs::path(file);
    fs::create_directories(dir);
    return dir / fs::path(file).filename();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, bool deterministic) {
    ExperimentConfig cfg = load_config(config_path);
    if (deterministic) cfg.deterministic = true;
    RunReport rep = run_experiment(cfg);
    print_report_table(std::cout, rep);
    if (!rep.config.report_path.empty())
        write_file(resolve_out(out_dir, rep.config.report_path),
                   report_to_json(rep).dump(2) + "\n");
    if (!rep.config.csv_path.empty())
        write_file(resolve_out(out_dir, rep.config.csv_path), report_to_csv(rep));
    return rep.pass ? 0 : 2;
}

std::string convergence_svg(const ConvergenceStudy& st) {
    // log-log error vs element count, one polyline per eigenvalue
    const size_t K = st.richardson.size();
    const size_t L = st.levels.size();
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
          "viewBox=\"0 0 480 360\">\n"
       << "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n"
       << "<text x=\"240\" y=\"350\" text-anchor=\"middle\" font-size=\"12\">elements "
          "(log)</text>\n"
       << "<text x=\"14\" y=\"180\" font-size=\"12\" transform=\"rotate(-90 14 180)\" "
          "text-anchor=\"middle\">|error| (log)</text>\n";
    double lo = 0, hi = -300;
    std::vector<std::vector<double>> err(K, std::vector<double>(L));
    for (size_t i = 0; i < K; ++i)
        for (size_t l = 0; l < L; ++l) {
            const double e = std::abs(st.levels[l].eigenvalues[i] - st.richardson[i]);
            err[i][l] = std::log10(std::max(e, 1e-14));
            lo = std::min(lo, err[i][l]);
            hi = std::max(hi, err[i][l]);
        }
    if (hi <= lo) hi = lo + 1;
    const double x0 = std::log10(static_cast<double>(st.levels.front().elements));
    const double x1 = std::log10(static_cast<double>(st.levels.back().elements));
    const char* colors[] = {"#1f6fb2", "#b23a1f", "#2a8c4a", "#7a4ab2"};
    for (size_t i = 0; i < K; ++i) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[i % 4] << "\" points=\"";
        for (size_t l = 0; l < L; ++l) {
            const double xl = std::log10(static_cast<double>(st.levels[l].elements));
            const double px = 50 + 400 * (xl - x0) / std::max(1e-12, x1 - x0);
            const double py = 320 - 300 * (err[i][l] - lo) / (hi - lo);
            os << px << "," << py << " ";
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

int cmd_converge(const std::string& config_path, std::vector<int> levels,
                 const std::string& out_dir, bool plot) {
    ExperimentConfig cfg = load_config(config_path);
    if (levels.empty()) levels = {25, 50, 100, 200};
    const ConvergenceStudy st = convergence_study(cfg, levels);
    std::cout << "level";
    for (size_t i = 0; i < st.richardson.size(); ++i) std::cout << "  lambda_" << (i + 1);
    std::cout << "\n";
    for (const auto& lvl : st.levels) {
        std::cout << std::setw(5) << lvl.elements;
        for (double v : lvl.eigenvalues) std::cout << "  " << std::setprecision(12) << v;
        std::cout << "\n";
    }
    std::cout << "limit";
    for (double v : st.richardson) std::cout << "  " << std::setprecision(12) << v;
    std::cout << "\norder";
    for (double o : st.observed_order) {
        if (std::isinf(o))
            std::cout << "  converged";
        else
            std::cout << "  " << std::setprecision(4) << o;
    }
    std::cout << "\nmonotone: " << (st.monotone ? "yes" : "no") << "\n";
    if (plot)
        write_file(resolve_out(out_dir, "convergence.svg"), convergence_svg(st));
    return st.monotone ? 0 : 2;
}

int cmd_identities(const std::string& config_path) {
    const ExperimentConfig cfg = load_config(config_path);
    const IdentityRun run = run_identity_suite(cfg);
    const IdentityReport& r = run.report;
    std::cout << std::setprecision(3) << "grad_y_trace      " << r.grad_y_trace << "\n"
              << "laplace_norm      " << r.laplace_norm << "\n"
              << "laplace_grad_sum  " << r.laplace_grad_sum << "\n"
              << "drift_projection  " << r.drift_projection << "\n"
              << "probe_pairing     " << r.probe_pairing << "\n"
              << "cauchy_schwarz    " << r.cauchy_schwarz << "\n";
    if (run.translator_residual >= 0)
        std::cout << "translator        " << run.translator_residual << "\n";
    const bool ok = r.max_violation() <= 1e-9 &&
                    (run.translator_residual < 0 || run.translator_residual <= 1e-9);
    std::cout << "max violation     " << r.max_violation() << (ok ? "  pass" : "  FAIL")
              << "\n";
    return ok ? 0 : 2;
}

int cmd_oracle(const std::string& name, const std::vector<double>& params) {
    std::vector<double> vals;
    if (name == "beam") {
        const int count = params.empty() ? 4 : static_cast<int>(params[0]);
        vals = oracles::beam_reference(count);
    } else if (name == "conjugation") {
        if (params.size() < 2)
            throw ConfigError("oracle conjugation needs: length b [count]");
        const int count = params.size() > 2 ? static_cast<int>(params[2]) : 4;
        vals = oracles::conjugation_oracle(params[0], params[1], count);
    } else if (name == "plate") {
        if (params.size() < 2)
            throw ConfigError("oracle plate needs: lx ly [nu_x nu_y] [count]");
        Eigen::Vector2d nu = Eigen::Vector2d::Zero();
        int count = 3;
        if (params.size() >= 4) {
            nu << params[2], params[3];
            if (params.size() > 4) count = static_cast<int>(params[4]);
        } else if (params.size() == 3) {
            count = static_cast<int>(params[2]);
        }
        vals = oracles::fd_plate_oracle(params[0], params[1], nu, count);
    } else {
        throw ConfigError("unknown oracle '" + name + "' (beam, conjugation, plate)");
    }
    for (size_t i = 0; i < vals.size(); ++i)
        std::cout << "lambda_" << (i + 1) << " = " << std::setprecision(12) << vals[i]
                  << "\n";
    return 0;
}

int cmd_list_geometries() {
    for (const CatalogueEntry& e : geometry_catalogue())
        std::cout << std::left << std::setw(20) << e.name << e.description << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clamped-plate spectral laboratory for drift-weighted immersions"};
    app.require_subcommand(1);

    std::string config_path, out_dir, oracle_name;
    std::vector<int> levels;
    std::vector<double> oracle_params;
    bool deterministic = false, plot = false;

    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("--config", config_path, "config file (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default: PLATELAB_OUT_DIR)");
    run->add_flag("--deterministic", deterministic, "zero timings, byte-stable reports");

    auto* conv = app.add_subcommand("converge", "refinement ladder study");
    conv->add_option("--config", config_path, "config file (JSON)")->required();
    conv->add_option("--levels", levels, "element counts (nested, >= 3)");
    conv->add_option("--out", out_dir, "output directory");
    conv->add_flag("--plot", plot, "emit convergence.svg");

    auto* ident = app.add_subcommand("identities", "pointwise identity suite");
    ident->add_option("--config", config_path, "config file (JSON)")->required();

    auto* orc = app.add_subcommand("oracle", "reference eigenvalue oracles");
    orc->add_option("name", oracle_name, "beam | conjugation | plate")->required();
    orc->add_option("params", oracle_params, "oracle parameters");

    app.add_subcommand("list-geometries", "print the geometry catalogue");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return cmd_run(config_path, out_dir, deterministic);
        if (app.got_subcommand("converge"))
            return cmd_converge(config_path, levels, out_dir, plot);
        if (app.got_subcommand("identities")) return cmd_identities(config_path);
        if (app.got_subcommand("oracle")) return cmd_oracle(oracle_name, oracle_params);
        return cmd_list_geometries();
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
