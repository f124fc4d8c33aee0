// gossim command-line interface: experiments to CSV, predictions, one-shot
// computations. Data goes to --out (or stdout); diagnostics go to stderr.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gossim/harness.hpp"
#include "gossim/theory.hpp"

namespace {

using namespace gossim;

struct CliOptions {
    std::string config_path;
    bool emit_config = false;

    std::vector<int> n;
    double r = 0.0;
    std::string boundary;
    std::vector<std::string> models;
    double epsilon = 0.0;
    std::int64_t rounds = 0;
    int sources = 0;
    std::int64_t samples = 0;
    std::string mode;
    std::string cuts;
    int workers = -1;
    std::uint64_t seed = 0;
    std::int64_t max_slots = -1;
    double vmax = -1.0, rc = -1.0;
    int k = -1, nv = -1, nh = -1;
    std::string out;
    std::string traj_path;
    std::string cut_dump_path;
};

struct OptionFlags {
    CLI::Option* n = nullptr;
    CLI::Option* r = nullptr;
    CLI::Option* boundary = nullptr;
    CLI::Option* model = nullptr;
    CLI::Option* epsilon = nullptr;
    CLI::Option* rounds = nullptr;
    CLI::Option* sources = nullptr;
    CLI::Option* samples = nullptr;
    CLI::Option* mode = nullptr;
    CLI::Option* cuts = nullptr;
    CLI::Option* workers = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* max_slots = nullptr;
    CLI::Option* out = nullptr;
};

OptionFlags add_common_options(CLI::App* sub, CliOptions& opt) {
    OptionFlags flags;
    flags.n = sub->add_option("--n", opt.n, "node counts (repeatable)");
    flags.r = sub->add_option("--r", opt.r,
                              "transmission radius; 0 = sqrt(8 log n / (pi n))");
    flags.boundary = sub->add_option("--boundary", opt.boundary, "square|torus")
                         ->check(CLI::IsMember({"square", "torus"}));
    flags.model = sub->add_option(
        "--model", opt.models,
        "mobility model: static | fully-random | partial [k=..] | velocity [vmax=..] | "
        "area1d [nv=.. nh=..] | area2d [rc=..]; bare kinds pick up --k/--vmax/--nv/--nh/--rc");
    flags.epsilon = sub->add_option("--epsilon", opt.epsilon, "spreading-time epsilon");
    flags.rounds = sub->add_option("--rounds", opt.rounds, "replications per grid point");
    flags.sources = sub->add_option("--sources", opt.sources, "sampled sources per point");
    flags.samples = sub->add_option("--samples", opt.samples, "Monte-Carlo samples");
    flags.mode = sub->add_option("--mode", opt.mode, "pushpull|push|pull")
                     ->check(CLI::IsMember({"pushpull", "push", "pull"}));
    flags.cuts = sub->add_option("--cuts", opt.cuts, "sweep|bisect|random|exhaustive")
                     ->check(CLI::IsMember({"sweep", "bisect", "random", "exhaustive"}));
    flags.workers = sub->add_option("--workers", opt.workers,
                                    "worker threads; 0 = machine parallelism");
    flags.seed = sub->add_option("--seed", opt.seed, "master seed");
    flags.max_slots = sub->add_option("--max-slots", opt.max_slots,
                                      "per-run slot cap; 0 = auto");
    flags.out = sub->add_option("--out", opt.out, "output CSV path (default stdout)");
    sub->add_option("--config", opt.config_path, "config file; flags override its values");
    sub->add_flag("--emit-config", opt.emit_config,
                  "print the effective config and exit");
    sub->add_option("--k", opt.k, "partial model: mobile node count");
    sub->add_option("--vmax", opt.vmax, "velocity model: speed bound");
    sub->add_option("--nv", opt.nv, "area1d model: vertical movers");
    sub->add_option("--nh", opt.nh, "area1d model: horizontal movers");
    sub->add_option("--rc", opt.rc, "area2d model: roaming radius");
    return flags;
}

MobilitySpec resolve_model(const std::string& token, const CliOptions& opt) {
    MobilitySpec spec = parse_model_spec(token);
    const bool bare = token.find('=') == std::string::npos;
    if (!bare) return spec;
    switch (spec.kind) {
        case MobilityKind::PartiallyRandom:
            if (opt.k >= 0) spec.k = opt.k;
            break;
        case MobilityKind::VelocityConstrained:
            if (opt.vmax >= 0.0) spec.v_max = opt.vmax;
            break;
        case MobilityKind::AreaConstrained1D:
            if (opt.nv >= 0) spec.n_v = opt.nv;
            if (opt.nh >= 0) spec.n_h = opt.nh;
            break;
        case MobilityKind::AreaConstrained2D:
            if (opt.rc >= 0.0) spec.r_c = opt.rc;
            break;
        default:
            break;
    }
    return spec;
}

ExperimentConfig build_config(ExperimentKind kind, const CliOptions& opt,
                              const OptionFlags& flags) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = load_config(opt.config_path);
    cfg.experiment = kind;
    if (kind == ExperimentKind::Density && opt.config_path.empty()) cfg.samples = 100000;
    if (kind == ExperimentKind::Increment && opt.config_path.empty())
        cfg.mode = GossipMode::PushOnly;

    if (flags.n->count()) cfg.n_values = opt.n;
    if (flags.r->count()) cfg.r = opt.r;
    if (flags.boundary->count())
        cfg.boundary = opt.boundary == "torus" ? Boundary::Torus : Boundary::Square;
    if (flags.model->count()) {
        cfg.models.clear();
        for (const auto& token : opt.models) cfg.models.push_back(resolve_model(token, opt));
    }
    if (flags.epsilon->count()) cfg.epsilon = opt.epsilon;
    if (flags.rounds->count()) cfg.rounds = opt.rounds;
    if (flags.sources->count()) cfg.sources = opt.sources;
    if (flags.samples->count()) cfg.samples = opt.samples;
    if (flags.mode->count()) {
        if (opt.mode == "pushpull") cfg.mode = GossipMode::PushPull;
        else if (opt.mode == "push") cfg.mode = GossipMode::PushOnly;
        else cfg.mode = GossipMode::PullOnly;
    }
    if (flags.cuts->count()) {
        if (opt.cuts == "sweep") cfg.cuts = CutChoice::Sweep;
        else if (opt.cuts == "bisect") cfg.cuts = CutChoice::Bisect;
        else if (opt.cuts == "random") cfg.cuts = CutChoice::Random;
        else cfg.cuts = CutChoice::Exhaustive;
    }
    if (flags.workers->count()) cfg.workers = opt.workers;
    if (flags.seed->count()) cfg.seed = opt.seed;
    if (flags.max_slots->count()) cfg.max_slots = opt.max_slots;
    if (flags.out->count()) cfg.out_path = opt.out;
    if (cfg.n_values.empty()) cfg.n_values = {1000};
    return cfg;
}

int emit_and_exit(const ExperimentConfig& cfg) {
    cfg.validate();
    std::cout << emit_config(cfg);
    return 0;
}

void write_rows(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
    if (cfg.out_path.empty()) {
        write_csv(rows, std::cout);
    } else {
        write_csv(rows, cfg.out_path);
        write_manifest(cfg.out_path + ".manifest", cfg, rows.size());
        std::cerr << "gossim: wrote " << rows.size() << " rows to " << cfg.out_path
                  << "\n";
    }
}

int run_standard(ExperimentKind kind, const CliOptions& opt, const OptionFlags& flags) {
    const ExperimentConfig cfg = build_config(kind, opt, flags);
    if (opt.emit_config) return emit_and_exit(cfg);
    cfg.validate();

    if (!opt.traj_path.empty()) {
        if (cfg.models.size() != 1 || cfg.n_values.size() != 1)
            throw ConfigError("--traj needs exactly one model and one n");
        const auto runs = run_spread_point(cfg, cfg.models[0], cfg.n_values[0], 0);
        std::ofstream out(opt.traj_path);
        if (!out) throw std::runtime_error("io-error: cannot open " + opt.traj_path);
        write_trajectories_csv(runs, out);
        std::cerr << "gossim: wrote " << runs.size() << " trajectories to "
                  << opt.traj_path << "\n";
    }

    if (!opt.cut_dump_path.empty()) {
        std::ofstream dump(opt.cut_dump_path);
        if (!dump) throw std::runtime_error("io-error: cannot open " + opt.cut_dump_path);
        bool first = true;
        std::int64_t pt = 0;
        for (const auto& model : cfg.models) {
            for (int n : cfg.n_values) {
                const double r = cfg.radius_for(n);
                const WorldConfig world{n, r, cfg.boundary, cfg.seed};
                const std::uint64_t point_seed =
                    substream(cfg.seed, stream::kRun, static_cast<std::uint64_t>(pt))
                        .next_u64();
                const auto rules = make_cuts(to_family(cfg.cuts), n, point_seed);
                const auto ests =
                    estimate_rule_quotients(world, model, rules, QuotientKind::ExactPij,
                                            cfg.samples, point_seed);
                write_estimates_csv(dump, model.label(), n, r, model.param(), ests, first);
                first = false;
                ++pt;
            }
        }
    }

    const auto rows = run_experiment(cfg);
    write_rows(cfg, rows);
    return 0;
}

int run_theory(const CliOptions& opt, const OptionFlags& flags) {
    const ExperimentConfig cfg = build_config(ExperimentKind::Sweep, opt, flags);
    if (cfg.models.empty()) throw ConfigError("model: theory needs at least one model");

    std::ostringstream out;
    out << "model,n,r,param,phi,kind\n";
    for (const auto& model : cfg.models) {
        for (int n : cfg.n_values) {
            const double r = cfg.radius_for(n);
            double phi;
            const char* kind;
            if (model.kind == MobilityKind::VelocityConstrained) {
                phi = velocity_phi(model.v_max, r);
                kind = to_string(PredictionKind::Approximation);
            } else {
                const Prediction p = table1_phi(model, n, r);
                phi = p.phi;
                kind = to_string(p.kind);
            }
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s,%d,%.10g,%.10g,%.10g,%s\n",
                          model.label().c_str(), n, r, model.param(), phi, kind);
            out << buf;
        }
    }
    if (cfg.out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(cfg.out_path);
        if (!file) throw std::runtime_error("io-error: cannot open " + cfg.out_path);
        file << out.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gossip spreading in mobile random geometric networks"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* spread = app.add_subcommand("spread", "spreading-time runs for one model grid");
    auto spread_flags = add_common_options(spread, opt);
    spread->add_option("--traj", opt.traj_path, "dump per-slot trajectories to CSV");

    auto* conductance =
        app.add_subcommand("conductance", "mobile-conductance estimates over a cut family");
    auto conductance_flags = add_common_options(conductance, opt);
    conductance->add_option("--cut-dump", opt.cut_dump_path,
                            "dump per-cut estimates to CSV");

    auto* density = app.add_subcommand("density", "post-move mixing profile vs closed form");
    auto density_flags = add_common_options(density, opt);

    auto* theory = app.add_subcommand("theory", "closed-form conductance predictions");
    auto theory_flags = add_common_options(theory, opt);

    auto* sweep = app.add_subcommand("sweep", "multi-model spreading-time comparison");
    auto sweep_flags = add_common_options(sweep, opt);

    auto* increment =
        app.add_subcommand("increment", "expected informed-set increment vs the bound");
    auto increment_flags = add_common_options(increment, opt);

    auto* connectivity =
        app.add_subcommand("connectivity", "connectivity frequency under the radius rule");
    auto connectivity_flags = add_common_options(connectivity, opt);
    std::int64_t trials = 0;
    auto* trials_opt =
        connectivity->add_option("--trials", trials, "trials per n (alias for --rounds)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (spread->parsed()) return run_standard(ExperimentKind::Spread, opt, spread_flags);
        if (conductance->parsed())
            return run_standard(ExperimentKind::Conductance, opt, conductance_flags);
        if (density->parsed())
            return run_standard(ExperimentKind::Density, opt, density_flags);
        if (theory->parsed()) return run_theory(opt, theory_flags);
        if (sweep->parsed()) return run_standard(ExperimentKind::Sweep, opt, sweep_flags);
        if (increment->parsed())
            return run_standard(ExperimentKind::Increment, opt, increment_flags);
        if (connectivity->parsed()) {
            if (trials_opt->count()) {
                ExperimentConfig cfg = build_config(ExperimentKind::Connectivity, opt,
                                                    connectivity_flags);
                cfg.rounds = trials;
                if (opt.emit_config) return emit_and_exit(cfg);
                cfg.validate();
                const auto rows = run_experiment(cfg);
                write_rows(cfg, rows);
                return 0;
            }
            return run_standard(ExperimentKind::Connectivity, opt, connectivity_flags);
        }
    } catch (const ConfigError& e) {
        std::cerr << "gossim: config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gossim: config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "gossim: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
