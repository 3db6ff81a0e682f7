// Command line front end: experiment runner plus the small sharp-interface
// and post-processing verbs.

#include "tricap/contour.hpp"
#include "tricap/diagnostics.hpp"
#include "tricap/experiments.hpp"
#include "tricap/io.hpp"
#include "tricap/parallel.hpp"
#include "tricap/sharp.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace {

struct CommonFlags {
    std::string output_dir;
    int snapshot_every = -1;
    int max_steps = -1;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--output-dir", flags.output_dir, "Directory for run artifacts");
    cmd->add_option("--snapshot-every", flags.snapshot_every, "Steps between VTK snapshots");
    cmd->add_option("--max-steps", flags.max_steps, "Hard cap on time steps");
    cmd->add_option("--threads", flags.threads, "Worker threads for the stencil kernels");
}

int resolve_threads(const CommonFlags& flags, const tricap::ExperimentConfig& cfg) {
    if (flags.threads > 0) return flags.threads;
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("TRICAP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

void apply_flags(tricap::ExperimentConfig& cfg, const CommonFlags& flags) {
    if (!flags.output_dir.empty()) {
        cfg.out_dir = flags.output_dir;
        cfg.resolved["output.dir"] = flags.output_dir;
    }
    if (flags.snapshot_every >= 0) {
        cfg.snapshot_every = flags.snapshot_every;
        cfg.resolved["output.snapshot_every"] = std::to_string(flags.snapshot_every);
    }
    if (flags.max_steps > 0) {
        cfg.max_steps = flags.max_steps;
        cfg.resolved["numerics.max_steps"] = std::to_string(flags.max_steps);
    }
    const int threads = resolve_threads(flags, cfg);
    cfg.threads = threads;
    cfg.resolved["numerics.threads"] = std::to_string(threads);
    tricap::set_thread_count(threads);
}

int run_config(const std::string& path, const CommonFlags& flags, bool force_reference) {
    tricap::ExperimentConfig cfg = tricap::parse_config_file(path);
    if (force_reference) {
        cfg.experiment = tricap::ExperimentKind::Reference1D;
        cfg.resolved["experiment"] = "reference-1d";
    }
    apply_flags(cfg, flags);
    const tricap::RunResult result = tricap::run_experiment(cfg);
    std::printf("experiment %s finished; artifacts in %s\n",
                tricap::to_string(result.experiment).c_str(), result.out_dir.string().c_str());
    for (const auto& [name, value] : result.scalars)
        std::printf("  %-24s %s\n", name.c_str(), tricap::format_double(value).c_str());
    return 0;
}

int run_eoc(const std::vector<std::string>& files) {
    std::vector<std::array<double, 4>> rows; // epsilon, q_at_L, linf, l2
    for (const auto& f : files) {
        const tricap::CsvTable t = tricap::read_csv(f);
        const int ce = t.column("epsilon"), cq = t.column("q_at_L");
        const int ci = t.column("linf"), c2 = t.column("l2");
        if (ce < 0 || ci < 0 || c2 < 0)
            throw std::runtime_error("eoc: " + f + " lacks epsilon/linf/l2 columns");
        for (const auto& r : t.rows)
            rows.push_back({r[ce], cq >= 0 ? r[cq] : 0.0, r[ci], r[c2]});
    }
    if (rows.size() < 2) throw std::runtime_error("eoc: need at least two error rows");
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a[0] > b[0]; });

    std::vector<std::pair<double, double>> linf_pairs, l2_pairs;
    for (const auto& r : rows) {
        linf_pairs.push_back({r[0], r[2]});
        l2_pairs.push_back({r[0], r[3]});
    }
    const std::vector<double> r_inf = tricap::eoc(linf_pairs);
    const std::vector<double> r_l2 = tricap::eoc(l2_pairs);

    std::printf("%-10s %-12s %-12s %-10s %-12s %-10s\n", "epsilon", "q_at_L", "linf", "linf-EOC",
                "l2", "l2-EOC");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::printf("%-10.5g %-12.6g %-12.6g ", rows[k][0], rows[k][1], rows[k][2]);
        if (k > 0)
            std::printf("%-10.6g ", r_inf[k - 1]);
        else
            std::printf("%-10s ", "--");
        std::printf("%-12.6g ", rows[k][3]);
        if (k > 0)
            std::printf("%-10.6g\n", r_l2[k - 1]);
        else
            std::printf("%-10s\n", "--");
    }
    return 0;
}

int run_angles(const std::string& snapshot) {
    const tricap::VtkSnapshot snap = tricap::read_vtk(snapshot);
    if (!snap.fully_interior())
        throw std::runtime_error("angles: masked snapshots are not supported");
    for (const char* name : {"phi1", "phi2", "phi3"})
        if (!snap.fields.count(name))
            throw std::runtime_error(std::string("angles: snapshot lacks field ") + name);

    auto dom = std::make_shared<tricap::Domain>(snap.grid);
    tricap::CHState st = tricap::CHState::zeros(dom);
    const char* names[3] = {"phi1", "phi2", "phi3"};
    for (int k = 0; k < 3; ++k) {
        const auto& vals = snap.fields.at(names[k]);
        for (int c = 0; c < snap.grid.size(); ++c) st.phi[k][c] = vals[c];
    }
    const tricap::AngleMeasurement am = tricap::measure_angles(st);
    std::printf("junction at (%.6f, %.6f)\n", am.junction[0], am.junction[1]);
    std::printf("anchored   psi = (%.5f, %.5f, %.5f) rad\n", am.psi_anchored[0],
                am.psi_anchored[1], am.psi_anchored[2]);
    std::printf("unanchored psi = (%.5f, %.5f, %.5f) rad\n", am.psi_unanchored[0],
                am.psi_unanchored[1], am.psi_unanchored[2]);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-field three-phase flow with soluble and interfacial surfactant"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string config_path, snapshot_path;
    std::vector<std::string> eoc_files;
    std::array<double, 3> sigmas{};

    CLI::App* cmd_run = app.add_subcommand("run", "Run the experiment described by a config file");
    cmd_run->add_option("config", config_path, "Config file")->required();
    add_common(cmd_run, flags);

    CLI::App* cmd_ref = app.add_subcommand("reference-1d", "Solve the sharp 1D junction problem");
    cmd_ref->add_option("config", config_path, "Config file")->required();
    add_common(cmd_ref, flags);

    CLI::App* cmd_young = app.add_subcommand("young", "Equilibrium angles from three tensions");
    cmd_young->add_option("sigma12", sigmas[0], "Tension of the (1,2) interface")->required();
    cmd_young->add_option("sigma13", sigmas[1], "Tension of the (1,3) interface")->required();
    cmd_young->add_option("sigma23", sigmas[2], "Tension of the (2,3) interface")->required();
    add_common(cmd_young, flags);

    CLI::App* cmd_eoc = app.add_subcommand("eoc", "Convergence table from errors.csv files");
    cmd_eoc->add_option("csv", eoc_files, "errors.csv files")->required()->expected(-1);

    CLI::App* cmd_angles = app.add_subcommand("angles", "Measure junction angles in a snapshot");
    cmd_angles->add_option("snapshot", snapshot_path, "VTK snapshot")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return run_config(config_path, flags, false);
        if (cmd_ref->parsed()) return run_config(config_path, flags, true);
        if (cmd_young->parsed()) {
            std::string text = "experiment = young\n";
            text += "young.sigma12 = " + tricap::format_double(sigmas[0]) + "\n";
            text += "young.sigma13 = " + tricap::format_double(sigmas[1]) + "\n";
            text += "young.sigma23 = " + tricap::format_double(sigmas[2]) + "\n";
            tricap::ExperimentConfig cfg = tricap::parse_config(text);
            apply_flags(cfg, flags);
            tricap::run_experiment(cfg);
            return 0;
        }
        if (cmd_eoc->parsed()) return run_eoc(eoc_files);
        if (cmd_angles->parsed()) return run_angles(snapshot_path);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
