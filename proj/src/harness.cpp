#include "gossim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "gossim/rng.hpp"
#include "gossim/theory.hpp"

namespace gossim {

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Spread: return "spread";
        case ExperimentKind::Conductance: return "conductance";
        case ExperimentKind::Density: return "density";
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::Increment: return "increment";
        case ExperimentKind::Connectivity: return "connectivity";
    }
    return "?";
}

const char* to_string(CutChoice choice) {
    switch (choice) {
        case CutChoice::Sweep: return "sweep";
        case CutChoice::Bisect: return "bisect";
        case CutChoice::Random: return "random";
        case CutChoice::Exhaustive: return "exhaustive";
    }
    return "?";
}

CutFamily to_family(CutChoice choice) {
    switch (choice) {
        case CutChoice::Sweep: return CutFamily::sweep_default();
        case CutChoice::Bisect: return CutFamily::bisection_only();
        case CutChoice::Random: return CutFamily::random_only(16);
        case CutChoice::Exhaustive: return CutFamily::exhaustive_only();
    }
    return {};
}

namespace {

const char* to_string(Boundary b) {
    return b == Boundary::Torus ? "torus" : "square";
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string format_double_exact(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(line, "bad numeric value for '" + key + "': " + s);
    }
}

std::int64_t parse_int(const std::string& s, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(line, "bad integer value for '" + key + "': " + s);
    }
}

std::uint64_t parse_u64(const std::string& s, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(line, "bad unsigned value for '" + key + "': " + s);
    }
}

}  // namespace

MobilitySpec parse_model_spec(const std::string& text) {
    const auto tokens = split_ws(text);
    if (tokens.empty()) throw ConfigError("empty model spec");

    MobilitySpec spec;
    const std::string& kind = tokens[0];
    if (kind == "static") spec = MobilitySpec::statics();
    else if (kind == "fully-random") spec = MobilitySpec::fully_random();
    else if (kind == "partial") spec.kind = MobilityKind::PartiallyRandom;
    else if (kind == "velocity") spec.kind = MobilityKind::VelocityConstrained;
    else if (kind == "area1d") spec.kind = MobilityKind::AreaConstrained1D;
    else if (kind == "area2d") spec.kind = MobilityKind::AreaConstrained2D;
    else throw ConfigError("unknown model kind '" + kind + "'");

    for (std::size_t t = 1; t < tokens.size(); ++t) {
        const auto eq = tokens[t].find('=');
        if (eq == std::string::npos)
            throw ConfigError("model parameter must be key=value: " + tokens[t]);
        const std::string key = tokens[t].substr(0, eq);
        const std::string val = tokens[t].substr(eq + 1);
        if (key == "k") spec.k = static_cast<int>(parse_int(val, 0, key));
        else if (key == "vmax") spec.v_max = parse_double(val, 0, key);
        else if (key == "nv") spec.n_v = static_cast<int>(parse_int(val, 0, key));
        else if (key == "nh") spec.n_h = static_cast<int>(parse_int(val, 0, key));
        else if (key == "rc") spec.r_c = parse_double(val, 0, key);
        else throw ConfigError("unknown model parameter '" + key + "'");
    }
    return spec;
}

std::string model_spec_text(const MobilitySpec& spec) {
    std::string out = to_string(spec.kind);
    switch (spec.kind) {
        case MobilityKind::PartiallyRandom:
            out += " k=" + std::to_string(spec.k);
            break;
        case MobilityKind::VelocityConstrained:
            out += " vmax=" + format_double_exact(spec.v_max);
            break;
        case MobilityKind::AreaConstrained1D:
            out += " nv=" + std::to_string(spec.n_v) + " nh=" + std::to_string(spec.n_h);
            break;
        case MobilityKind::AreaConstrained2D:
            out += " rc=" + format_double_exact(spec.r_c);
            break;
        default:
            break;
    }
    return out;
}

double ExperimentConfig::radius_for(int n) const {
    return r > 0.0 ? r : WorldConfig::default_radius(n);
}

void ExperimentConfig::validate() const {
    if (n_values.empty()) throw ConfigError("n: at least one value required");
    for (int n : n_values)
        if (n < 2) throw ConfigError("n: values must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("epsilon: must be in (0, 1)");
    if (rounds < 1) throw ConfigError("rounds: must be >= 1");
    if (samples < 1) throw ConfigError("samples: must be >= 1");
    if (sources < 1) throw ConfigError("sources: must be >= 1");
    if (workers < 0) throw ConfigError("workers: must be >= 0");
    if (max_slots < 0) throw ConfigError("max_slots: must be >= 0");
    if (r != 0.0 && (!(r > 0.0) || r > std::sqrt(2.0) + 1e-12))
        throw ConfigError("r: must be 'auto' or in (0, sqrt(2)]");

    if (experiment != ExperimentKind::Connectivity && models.empty())
        throw ConfigError("model: at least one model required");
    for (const auto& m : models) {
        for (int n : n_values) {
            try {
                m.validate(n);
            } catch (const std::exception& e) {
                throw ConfigError(std::string(e.what()) + " (model '" + m.label() +
                                  "', n=" + std::to_string(n) + ")");
            }
        }
    }
    if (experiment == ExperimentKind::Density) {
        if (models.size() != 1 || models[0].kind != MobilityKind::VelocityConstrained ||
            !(models[0].v_max > 0.0))
            throw ConfigError("model: density experiment needs one velocity model with vmax > 0");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    cfg.rounds = 1000;  // spec defaults
    cfg.epsilon = 0.05;

    enum class Section { None, Experiment, World, Models };
    Section section = Section::None;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                       : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "experiment") section = Section::Experiment;
            else if (name == "world") section = Section::World;
            else if (name == "models") section = Section::Models;
            else fail(line_no, "unknown section [" + name + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for '" + key + "'");

        switch (section) {
            case Section::None:
                fail(line_no, "key '" + key + "' outside any section");
            case Section::Experiment:
                if (key == "kind") {
                    if (value == "spread") cfg.experiment = ExperimentKind::Spread;
                    else if (value == "conductance") cfg.experiment = ExperimentKind::Conductance;
                    else if (value == "density") cfg.experiment = ExperimentKind::Density;
                    else if (value == "sweep") cfg.experiment = ExperimentKind::Sweep;
                    else if (value == "increment") cfg.experiment = ExperimentKind::Increment;
                    else if (value == "connectivity") cfg.experiment = ExperimentKind::Connectivity;
                    else fail(line_no, "unknown experiment kind '" + value + "'");
                } else if (key == "epsilon") {
                    cfg.epsilon = parse_double(value, line_no, key);
                } else if (key == "rounds") {
                    cfg.rounds = parse_int(value, line_no, key);
                } else if (key == "sources") {
                    cfg.sources = static_cast<int>(parse_int(value, line_no, key));
                } else if (key == "samples") {
                    cfg.samples = parse_int(value, line_no, key);
                } else if (key == "mode") {
                    if (value == "pushpull") cfg.mode = GossipMode::PushPull;
                    else if (value == "push") cfg.mode = GossipMode::PushOnly;
                    else if (value == "pull") cfg.mode = GossipMode::PullOnly;
                    else fail(line_no, "unknown mode '" + value + "'");
                } else if (key == "cuts") {
                    if (value == "sweep") cfg.cuts = CutChoice::Sweep;
                    else if (value == "bisect") cfg.cuts = CutChoice::Bisect;
                    else if (value == "random") cfg.cuts = CutChoice::Random;
                    else if (value == "exhaustive") cfg.cuts = CutChoice::Exhaustive;
                    else fail(line_no, "unknown cuts choice '" + value + "'");
                } else if (key == "seed") {
                    cfg.seed = parse_u64(value, line_no, key);
                } else if (key == "workers") {
                    cfg.workers = static_cast<int>(parse_int(value, line_no, key));
                } else if (key == "max_slots") {
                    cfg.max_slots = parse_int(value, line_no, key);
                } else if (key == "out") {
                    cfg.out_path = value;
                } else {
                    fail(line_no, "unknown key '" + key + "' in [experiment]");
                }
                break;
            case Section::World:
                if (key == "n") {
                    cfg.n_values.clear();
                    std::string list = value;
                    std::replace(list.begin(), list.end(), ',', ' ');
                    for (const auto& tok : split_ws(list))
                        cfg.n_values.push_back(static_cast<int>(parse_int(tok, line_no, key)));
                    if (cfg.n_values.empty()) fail(line_no, "empty n list");
                } else if (key == "r") {
                    cfg.r = value == "auto" ? 0.0 : parse_double(value, line_no, key);
                } else if (key == "boundary") {
                    if (value == "square") cfg.boundary = Boundary::Square;
                    else if (value == "torus") cfg.boundary = Boundary::Torus;
                    else fail(line_no, "unknown boundary '" + value + "'");
                } else {
                    fail(line_no, "unknown key '" + key + "' in [world]");
                }
                break;
            case Section::Models:
                if (key == "model") {
                    try {
                        cfg.models.push_back(parse_model_spec(value));
                    } catch (const ConfigError& e) {
                        fail(line_no, e.what());
                    }
                } else {
                    fail(line_no, "unknown key '" + key + "' in [models]");
                }
                break;
        }
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "kind = " << to_string(cfg.experiment) << "\n";
    out << "epsilon = " << format_double_exact(cfg.epsilon) << "\n";
    out << "rounds = " << cfg.rounds << "\n";
    out << "sources = " << cfg.sources << "\n";
    out << "samples = " << cfg.samples << "\n";
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "cuts = " << to_string(cfg.cuts) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "max_slots = " << cfg.max_slots << "\n";
    if (!cfg.out_path.empty()) out << "out = " << cfg.out_path << "\n";
    out << "\n[world]\n";
    out << "n =";
    for (int n : cfg.n_values) out << ' ' << n;
    out << "\n";
    out << "r = " << (cfg.r > 0.0 ? format_double_exact(cfg.r) : "auto") << "\n";
    out << "boundary = " << to_string(cfg.boundary) << "\n";
    if (!cfg.models.empty()) {
        out << "\n[models]\n";
        for (const auto& m : cfg.models) out << "model = " << model_spec_text(m) << "\n";
    }
    return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    const std::string text = emit_config(cfg);
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (unsigned char c : text) h = mix64(h ^ c);
    return h;
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& fn) {
    if (count <= 0) return;
    const int w = std::min<std::int64_t>(resolve_workers(workers), count);
    if (w <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

std::int64_t auto_max_slots(const ExperimentConfig& cfg, const MobilitySpec& model,
                            int n, double r) {
    const double phi = table1_phi(model, n, r).phi;
    const double bound =
        200.0 * (std::log(static_cast<double>(n)) + std::log(1.0 / cfg.epsilon)) /
        std::max(phi, 1e-9);
    const std::int64_t cap = std::min<std::int64_t>(50LL * n, 1000000);
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(bound)), 32, cap);
}

std::vector<SpreadTrajectory> run_spread_point(const ExperimentConfig& cfg,
                                               const MobilitySpec& model, int n,
                                               std::int64_t point_index) {
    const double r = cfg.radius_for(n);
    const WorldConfig world{n, r, cfg.boundary, cfg.seed};

    const int source_count = std::min<int>(cfg.sources, n);
    Rng source_rng = substream(cfg.seed, stream::kSource, static_cast<std::uint64_t>(point_index));
    const std::vector<int> sources = sample_node_subset(source_rng, n, source_count).ids();

    const std::int64_t max_slots =
        cfg.max_slots > 0 ? cfg.max_slots : auto_max_slots(cfg, model, n, r);

    std::vector<SpreadTrajectory> runs(static_cast<std::size_t>(cfg.rounds));
    parallel_for(cfg.rounds, cfg.workers, [&](std::int64_t i) {
        const std::uint64_t run_seed =
            substream(cfg.seed, stream::kRun, static_cast<std::uint64_t>(point_index),
                      static_cast<std::uint64_t>(i))
                .next_u64();
        const int source = sources[static_cast<std::size_t>(i) % sources.size()];
        runs[static_cast<std::size_t>(i)] =
            run_spread(world, model, source, cfg.mode, max_slots, run_seed);
    });
    return runs;
}

namespace {

ResultRow make_row(const ExperimentConfig& cfg, const std::string& model_label, int n,
                   double r, double param, const std::string& metric, double value,
                   double std_error, std::int64_t rounds) {
    ResultRow row;
    row.experiment = to_string(cfg.experiment);
    row.model = model_label;
    row.n = n;
    row.r = r;
    row.param = param;
    row.metric = metric;
    row.value = value;
    row.std_error = std_error;
    row.rounds = rounds;
    row.seed = cfg.seed;
    return row;
}

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

void spread_point_rows(const ExperimentConfig& cfg, const MobilitySpec& model, int n,
                       std::int64_t pt, std::vector<ResultRow>& rows) {
    const double r = cfg.radius_for(n);
    const auto runs = run_spread_point(cfg, model, n, pt);

    const auto t_eps = spreading_time(runs, cfg.epsilon);
    rows.push_back(make_row(cfg, model.label(), n, r, model.param(), "spreading_time",
                            t_eps ? static_cast<double>(*t_eps) : -1.0, kAbsent,
                            cfg.rounds));

    double sum = 0.0, sumsq = 0.0;
    std::int64_t completed = 0;
    for (const auto& run : runs) {
        if (!run.completion_slot) continue;
        const double t = static_cast<double>(*run.completion_slot);
        sum += t;
        sumsq += t * t;
        ++completed;
    }
    double mean = -1.0, se = kAbsent;
    if (completed > 0) mean = sum / static_cast<double>(completed);
    if (completed > 1) {
        const double var = (sumsq - sum * sum / static_cast<double>(completed)) /
                           static_cast<double>(completed - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(completed));
    }
    rows.push_back(make_row(cfg, model.label(), n, r, model.param(),
                            "mean_completion_slot", mean, se, cfg.rounds));

    const double p = static_cast<double>(completed) / static_cast<double>(cfg.rounds);
    const double p_se = cfg.rounds > 1
                            ? std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.rounds))
                            : kAbsent;
    rows.push_back(make_row(cfg, model.label(), n, r, model.param(), "completion_rate",
                            p, p_se, cfg.rounds));
}

void conductance_point_rows(const ExperimentConfig& cfg, const MobilitySpec& model,
                            int n, std::int64_t pt, std::vector<ResultRow>& rows) {
    const double r = cfg.radius_for(n);
    const WorldConfig world{n, r, cfg.boundary, cfg.seed};
    const std::uint64_t point_seed =
        substream(cfg.seed, stream::kRun, static_cast<std::uint64_t>(pt)).next_u64();
    const auto [cut, est] =
        minimize_over_family(world, model, to_family(cfg.cuts), cfg.samples, point_seed);
    (void)cut;
    rows.push_back(make_row(cfg, model.label(), n, r, model.param(), "phi_min", est.mean,
                            est.std_error, est.samples));
}

void density_rows(const ExperimentConfig& cfg, std::vector<ResultRow>& rows) {
    const MobilitySpec& model = cfg.models[0];
    const double v = model.v_max;
    const int n = cfg.n_values[0];
    const double r = cfg.radius_for(n);

    constexpr int kBins = 20;
    const double half = std::min(v, 0.5);  // torus offsets live in [-1/2, 1/2)
    const double bin_w = 2.0 * half / kBins;

    // Starts are drawn from the widest window that can land inside the binned
    // strip (|start - line| <= 2v); conditioning on the landing bin makes the
    // restriction exact and concentrates the samples where they matter.
    const double window = std::min(2.0 * v, 0.5);

    std::vector<std::int64_t> count(kBins, 0), from_cut(kBins, 0);
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
        Rng rng = substream(cfg.seed, stream::kSample, static_cast<std::uint64_t>(s));
        double x0 = 0.5 + (2.0 * rng.next_unit() - 1.0) * window;
        x0 -= std::floor(x0);
        const bool in_cut = x0 < 0.5;
        const double rho = v * std::sqrt(rng.next_unit());
        const double theta = 2.0 * M_PI * rng.next_unit();
        double x1 = x0 + rho * std::cos(theta);
        x1 -= std::floor(x1);
        double l = x1 - 0.5;
        if (l >= 0.5) l -= 1.0;
        if (l < -0.5) l += 1.0;
        const int bin = static_cast<int>(std::floor((l + half) / bin_w));
        if (bin < 0 || bin >= kBins) continue;
        ++count[bin];
        if (in_cut) ++from_cut[bin];
    }

    double sup = 0.0;
    for (int b = 0; b < kBins; ++b) {
        const double center = -half + (b + 0.5) * bin_w;
        const double predicted = density_profile(center, v);
        const double emp = count[b] > 0
                               ? static_cast<double>(from_cut[b]) /
                                     static_cast<double>(count[b])
                               : 0.0;
        const double se = count[b] > 1
                              ? std::sqrt(std::max(emp * (1.0 - emp), 0.0) /
                                          static_cast<double>(count[b]))
                              : kAbsent;
        rows.push_back(make_row(cfg, model.label(), n, r, center, "density_emp", emp, se,
                                count[b]));
        rows.push_back(make_row(cfg, model.label(), n, r, center, "density_model",
                                predicted, kAbsent, cfg.samples));
        if (count[b] > 0) sup = std::max(sup, std::abs(emp - predicted));
    }
    rows.push_back(make_row(cfg, model.label(), n, r, v, "sup_distance", sup, kAbsent,
                            cfg.samples));
}

void increment_point_rows(const ExperimentConfig& cfg, const MobilitySpec& model, int n,
                          std::int64_t pt, std::vector<ResultRow>& rows) {
    const double r = cfg.radius_for(n);
    const WorldConfig world{n, r, cfg.boundary, cfg.seed};
    const std::uint64_t point_seed =
        substream(cfg.seed, stream::kRun, static_cast<std::uint64_t>(pt)).next_u64();

    const auto [cut, phi] = minimize_over_family(world, model, CutFamily::sweep_default(),
                                                 cfg.samples, point_seed);
    (void)cut;
    rows.push_back(make_row(cfg, model.label(), n, r, model.param(), "phi_min", phi.mean,
                            phi.std_error, phi.samples));

    const int sizes[3] = {std::max(1, n / 10), std::max(1, n / 4), std::max(1, n / 2)};
    for (int idx = 0; idx < 3; ++idx) {
        Rng set_rng = substream(cfg.seed, stream::kCut, static_cast<std::uint64_t>(pt),
                                static_cast<std::uint64_t>(idx));
        const NodeSet informed = sample_node_subset(set_rng, n, sizes[idx]);
        const std::uint64_t est_seed =
            substream(cfg.seed, stream::kRun, static_cast<std::uint64_t>(pt),
                      static_cast<std::uint64_t>(idx) + 1)
                .next_u64();
        const MeanEstimate est =
            increment_estimate(world, model, informed, cfg.mode, cfg.samples, est_seed);
        rows.push_back(make_row(cfg, model.label(), n, r, sizes[idx], "mean_increment",
                                est.mean, est.std_error, est.samples));
        rows.push_back(make_row(cfg, model.label(), n, r, sizes[idx], "eq5_bound",
                                0.5 * sizes[idx] * phi.mean, kAbsent, phi.samples));
    }
}

void connectivity_rows(const ExperimentConfig& cfg, int n, std::int64_t pt,
                       std::vector<ResultRow>& rows) {
    const double r = cfg.radius_for(n);
    const WorldConfig world{n, r, cfg.boundary, cfg.seed};
    const MobilitySpec uniform = MobilitySpec::fully_random();

    std::vector<char> connected(static_cast<std::size_t>(cfg.rounds), 0);
    parallel_for(cfg.rounds, cfg.workers, [&](std::int64_t t) {
        const std::uint64_t trial_seed =
            substream(cfg.seed, stream::kRun, static_cast<std::uint64_t>(pt),
                      static_cast<std::uint64_t>(t))
                .next_u64();
        const Snapshot snap = init_stationary(uniform, world, trial_seed).first;
        const SpatialIndex index(snap, r, cfg.boundary);
        connected[static_cast<std::size_t>(t)] = index.is_connected() ? 1 : 0;
    });
    std::int64_t hits = 0;
    for (char c : connected) hits += c;
    const double p = static_cast<double>(hits) / static_cast<double>(cfg.rounds);
    const double se = cfg.rounds > 1
                          ? std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.rounds))
                          : kAbsent;
    rows.push_back(make_row(cfg, "rgg", n, r, 0.0, "connect_rate", p, se, cfg.rounds));
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ResultRow> rows;
    std::int64_t pt = 0;

    auto guarded = [&](const std::string& label, int n, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            // A failing grid point is recorded, never fatal for the grid.
            std::cerr << "gossim: point (" << label << ", n=" << n
                      << ") failed: " << e.what() << "\n";
            rows.push_back(make_row(cfg, label, n, cfg.radius_for(n), 0.0, "error", 1.0,
                                    kAbsent, 0));
        }
        ++pt;
    };

    switch (cfg.experiment) {
        case ExperimentKind::Spread:
        case ExperimentKind::Sweep:
            for (const auto& model : cfg.models)
                for (int n : cfg.n_values)
                    guarded(model.label(), n,
                            [&] { spread_point_rows(cfg, model, n, pt, rows); });
            break;
        case ExperimentKind::Conductance:
            for (const auto& model : cfg.models)
                for (int n : cfg.n_values)
                    guarded(model.label(), n,
                            [&] { conductance_point_rows(cfg, model, n, pt, rows); });
            break;
        case ExperimentKind::Density:
            guarded(cfg.models[0].label(), cfg.n_values[0], [&] { density_rows(cfg, rows); });
            break;
        case ExperimentKind::Increment:
            for (const auto& model : cfg.models)
                for (int n : cfg.n_values)
                    guarded(model.label(), n,
                            [&] { increment_point_rows(cfg, model, n, pt, rows); });
            break;
        case ExperimentKind::Connectivity:
            for (int n : cfg.n_values)
                guarded("rgg", n, [&] { connectivity_rows(cfg, n, pt, rows); });
            break;
    }
    return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("write_csv: no rows");
    std::vector<const ResultRow*> sorted;
    sorted.reserve(rows.size());
    for (const auto& row : rows) sorted.push_back(&row);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ResultRow* a, const ResultRow* b) {
                         return std::tie(a->experiment, a->model, a->n, a->param,
                                         a->metric) <
                                std::tie(b->experiment, b->model, b->n, b->param,
                                         b->metric);
                     });
    out << "experiment,model,n,r,param,metric,value,std_error,rounds,seed\n";
    for (const ResultRow* row : sorted) {
        out << row->experiment << ',' << row->model << ',' << row->n << ','
            << format_double(row->r) << ',' << format_double(row->param) << ','
            << row->metric << ',' << format_double(row->value) << ',';
        if (!std::isnan(row->std_error)) out << format_double(row->std_error);
        out << ',' << row->rounds << ',' << row->seed << '\n';
    }
    if (!out) throw std::runtime_error("io-error: CSV write failed");
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("write_csv: no rows");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io-error: cannot open " + path);
    write_csv(rows, out);
}

void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    std::size_t row_count) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io-error: cannot open " + path);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    out << "version: " << kVersion << "\n"
        << "config_hash: " << hash << "\n"
        << "master_seed: " << cfg.seed << "\n"
        << "rows: " << row_count << "\n";
}

void write_trajectories_csv(std::span<const SpreadTrajectory> runs, std::ostream& out) {
    out << "run_id,source,seed,slot,informed_count\n";
    for (std::size_t id = 0; id < runs.size(); ++id) {
        const auto& run = runs[id];
        for (std::size_t t = 0; t < run.sizes.size(); ++t)
            out << id << ',' << run.source << ',' << run.seed << ',' << t << ','
                << run.sizes[t] << '\n';
    }
}

void write_estimates_csv(std::ostream& out, const std::string& model_label, int n,
                         double r, double param,
                         std::span<const ConductanceEstimate> estimates,
                         bool with_header) {
    if (with_header) out << "model,n,r,param,cut_id,quotient_kind,mean,std_error,samples\n";
    for (const auto& est : estimates) {
        out << model_label << ',' << n << ',' << format_double(r) << ','
            << format_double(param) << ',' << est.cut_id << ',' << to_string(est.kind)
            << ',' << format_double(est.mean) << ',' << format_double(est.std_error)
            << ',' << est.samples << '\n';
    }
}

}  // namespace gossim
