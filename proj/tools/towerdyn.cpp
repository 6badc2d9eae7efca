// Command-line front end: build tower systems, run the condition checkers,
// inspect weighted-shift data, and reproduce the counterexample pipeline.
// Exit codes: 0 verdict computed, 2 configuration error, 3 guard violation.

#include "towerdyn/conditions.hpp"
#include "towerdyn/io.hpp"
#include "towerdyn/lp.hpp"
#include "towerdyn/shift.hpp"
#include "towerdyn/tower.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace towerdyn;
using towerdyn::io::json;

constexpr long long kHorizonCap = 200000;

struct GuardViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int resolution_cap() {
    if (const char* env = std::getenv("TOWERDYN_MAX_R")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw io::ConfigError("TOWERDYN_MAX_R", "not an integer");
        }
    }
    return 20;
}

void check_guards(long long horizon, int resolution) {
    if (resolution > resolution_cap())
        throw GuardViolation("resolution 2^-" + std::to_string(resolution) +
                             " exceeds the cap 2^-" + std::to_string(resolution_cap()));
    if (horizon > kHorizonCap)
        throw GuardViolation("horizon " + std::to_string(horizon) + " exceeds the cap " +
                             std::to_string(kHorizonCap));
}

struct Options {
    std::string system = "bdp";
    long long horizon = 50;
    int resolution = 20;
    long long seed = 0;
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, Options& opt, bool with_system = true) {
    if (with_system)
        cmd->add_option("--system", opt.system, "System: bdp | geometric:RHO | identity | JSON | file");
    cmd->add_option("--horizon", opt.horizon, "Horizon for limit checks")->check(CLI::PositiveNumber);
    cmd->add_option("--resolution", opt.resolution, "Fractional-split resolution r (grid 2^-r)");
    cmd->add_option("--seed", opt.seed, "Seed, echoed into reports");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    cmd->add_option("--out", opt.out_path, "Write output to a file instead of stdout");
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw io::ConfigError("out", "cannot open '" + opt.out_path + "'");
    out << text;
}

json envelope(const Options& opt, const std::string& command, const TowerSystem* sys = nullptr) {
    json out{{"schema_version", 1}, {"command", command}, {"seed", opt.seed},
             {"horizon", opt.horizon}};
    if (sys) out["system"] = io::system_descriptor(*sys);
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SimpleFunction parse_phi(const std::string& spec, const std::string& field) {
    if (spec == "zero") return SimpleFunction();
    if (spec == "chiW") return SimpleFunction::indicator(LeveledSet::single(0, DyadicSet::unit()));
    json j;
    if (!spec.empty() && spec.front() == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw io::ConfigError(field, "cannot read '" + spec.substr(1) + "'");
        j = json::parse(in, nullptr, false);
    } else {
        j = json::parse(spec, nullptr, false);
    }
    if (j.is_discarded())
        throw io::ConfigError(field, "expected 'zero', 'chiW', inline JSON, or @file");
    return io::simple_function_from_json(j, field);
}

std::map<long long, Rational> parse_sequence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ConfigError("norms", "cannot read '" + path + "'");
    std::map<long long, Rational> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string n_s, num_s, den_s;
        if (!std::getline(row, n_s, ',') || !std::getline(row, num_s, ',') || !std::getline(row, den_s, ','))
            throw io::ConfigError("norms", "rows must be n,num,den[,tag]");
        if (!n_s.empty() && (n_s[0] == 'n' || n_s[0] == 'N')) continue;  // header row
        try {
            values[std::stoll(n_s)] = Rational(Int(num_s), Int(den_s));
        } catch (const std::exception& e) {
            throw io::ConfigError("norms", std::string("bad row '") + line + "': " + e.what());
        }
    }
    if (values.empty()) throw io::ConfigError("norms", "no rows in '" + path + "'");
    return values;
}

int run_system_info(const Options& opt, long long window) {
    TowerSystem sys = io::system_from_spec(opt.system);
    json out = envelope(opt, "system info", &sys);
    out["wandering"] = {{"position", sys.wandering_position()},
                        {"measure", sys.level_measure(0).to_string()}};
    json levels = json::object();
    for (long long k = -window; k <= window; ++k)
        levels[std::to_string(k)] = {{"address", address_of(k).to_string()},
                                     {"measure", sys.level_measure(k).to_string()}};
    out["levels"] = levels;
    emit(opt, dump(out));
    return 0;
}

int run_system_measure(const Options& opt, const std::string& set_spec) {
    TowerSystem sys = io::system_from_spec(opt.system);
    json j = json::parse(set_spec, nullptr, false);
    if (j.is_discarded()) throw io::ConfigError("set", "expected JSON {\"level\": \"lo:hi,...\"}");
    LeveledSet s = io::leveled_set_from_json(j, "set");
    Rational mu = measure(sys, s);
    if (opt.format == "json") {
        json out = envelope(opt, "system measure", &sys);
        out["set"] = io::to_json(s);
        out["measure"] = mu.to_string();
        emit(opt, dump(out));
    } else {
        emit(opt, mu.to_string() + "\n");
    }
    return 0;
}

int run_check_msc(const Options& opt, long long level, const std::string& set_text,
                  const std::string& schedule_spec) {
    TowerSystem sys = io::system_from_spec(opt.system);
    DyadicSet A = set_text.empty() ? DyadicSet::unit() : DyadicSet::parse_text(set_text);
    std::optional<ToleranceSchedule> sched;
    if (!schedule_spec.empty()) {
        if (schedule_spec == "block") sched = ToleranceSchedule::block();
        else if (schedule_spec == "log2") sched = ToleranceSchedule::log2_default();
        else if (schedule_spec.rfind("fixed:", 0) == 0)
            sched = ToleranceSchedule::fixed(Rational::parse(schedule_spec.substr(6)));
        else throw io::ConfigError("schedule", "expected block | log2 | fixed:EPS");
    }
    MscReport report = check_msc(sys, level, A, opt.horizon, sched);
    if (opt.format == "csv") {
        std::ostringstream os;
        io::write_csv_header(os);
        for (const auto& w : report.triples) {
            io::write_csv_row(os, w.step, w.defect_a, "defect_a");
            io::write_csv_row(os, w.step, w.defect_back, "defect_back");
            io::write_csv_row(os, w.step, w.defect_fwd, "defect_fwd");
        }
        emit(opt, os.str());
    } else {
        json out = envelope(opt, "check msc", &sys);
        out["level"] = level;
        out["set"] = A.to_text();
        out["result"] = io::to_json(report);
        emit(opt, dump(out));
    }
    return 0;
}

int run_check_ksc(const Options& opt, long long level, const std::string& set_text,
                  const std::string& eps_s, bool grc) {
    TowerSystem sys = io::system_from_spec(opt.system);
    DyadicSet A = set_text.empty() ? DyadicSet::unit() : DyadicSet::parse_text(set_text);
    Rational eps = Rational::parse(eps_s);
    json out = envelope(opt, grc ? "check grc" : "check ksc", &sys);
    out["level"] = level;
    out["set"] = A.to_text();
    out["eps"] = eps.to_string();
    if (grc) {
        GrcReport report = grc_witness(sys, level, A, eps, opt.horizon, opt.resolution);
        out["result"] = io::to_json(report);
        emit(opt, dump(out));
        return 0;
    }
    KscReport report = check_ksc(sys, level, A, eps, opt.horizon, opt.resolution);
    if (opt.format == "csv") {
        std::ostringstream os;
        io::write_csv_header(os);
        for (size_t i = 0; i < report.tail_back.size(); ++i) {
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.tail_back[i], "mu_back");
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.tail_fwd[i], "mu_fwd");
        }
        emit(opt, os.str());
    } else {
        out["result"] = io::to_json(report, /*include_tails=*/opt.horizon <= 512);
        emit(opt, dump(out));
    }
    return 0;
}

int run_check_kitai(const Options& opt) {
    TowerSystem sys = io::system_from_spec(opt.system);
    GeneratorReport report = kitai_generator_check(sys, opt.horizon);
    if (opt.format == "csv") {
        std::ostringstream os;
        io::write_csv_header(os);
        for (size_t i = 0; i < report.forward.size(); ++i) {
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.forward[i], "mu_fwd");
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.backward[i], "mu_back");
        }
        emit(opt, os.str());
    } else {
        json out = envelope(opt, "check kitai", &sys);
        out["result"] = io::to_json(report, /*include_sequences=*/opt.horizon <= 512);
        emit(opt, dump(out));
    }
    return 0;
}

int run_classify(const Options& opt, const std::string& eps_s) {
    TowerSystem sys = io::system_from_spec(opt.system);
    DynamicsReport report = classify(sys, opt.horizon, Rational::parse(eps_s));
    json out = envelope(opt, "classify", &sys);
    out["result"] = io::to_json(report);
    emit(opt, dump(out));
    return 0;
}

int run_shift_weights(const Options& opt, const std::string& p_s) {
    TowerSystem sys = io::system_from_spec(opt.system);
    Rational p = Rational::parse(p_s);
    WeightSeq ws = WeightSeq::from_system(sys, p);
    if (opt.format == "csv") {
        std::ostringstream os;
        io::write_csv_header(os);
        for (long long k = -opt.horizon; k <= opt.horizon; ++k)
            io::write_csv_row(os, k, ws.weight_pow(k), "weight_pow");
        emit(opt, os.str());
    } else {
        json out = envelope(opt, "shift weights", &sys);
        json table = json::object();
        for (long long k = -opt.horizon; k <= opt.horizon; ++k)
            table[std::to_string(k)] = ws.weight_pow(k).to_string();
        out["p"] = p.to_string();
        out["weight_pow"] = table;
        out["max_weight_pow"] = ws.max_pow_over(-opt.horizon, opt.horizon).to_string();
        emit(opt, dump(out));
    }
    return 0;
}

int run_shift_products(const Options& opt, const std::string& p_s) {
    TowerSystem sys = io::system_from_spec(opt.system);
    Rational p = Rational::parse(p_s);
    ProductReport report = product_criterion(WeightSeq::from_system(sys, p), opt.horizon);
    if (opt.format == "csv") {
        std::ostringstream os;
        io::write_csv_header(os);
        for (size_t i = 0; i < report.forward.size(); ++i) {
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.forward[i], "product_fwd");
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.backward[i], "product_back");
        }
        emit(opt, os.str());
    } else {
        json out = envelope(opt, "shift products", &sys);
        out["p"] = p.to_string();
        out["result"] = {{"mixing", io::to_json(report.mixing)},
                         {"mixing_note", report.mixing_note},
                         {"hypercyclic", io::to_json(report.hypercyclic)},
                         {"small_products", report.small_products},
                         {"growth_steps", report.growth_steps},
                         {"growth_values", io::sequence_json(report.growth_values)},
                         {"forward", io::sequence_json(report.forward)},
                         {"backward", io::sequence_json(report.backward)}};
        emit(opt, dump(out));
    }
    return 0;
}

int run_shift_classify(const Options& opt, const std::string& p_s, long long J,
                       const std::string& norms_path, bool unilateral) {
    Rational p = Rational::parse(p_s);
    std::optional<NormSeq> ns;
    std::optional<TowerSystem> sys;
    if (!norms_path.empty()) {
        auto table = parse_sequence_csv(norms_path);
        long long lo = unilateral ? 1 : -(opt.horizon + J);
        long long hi = unilateral ? opt.horizon : opt.horizon + J;
        for (long long n = lo; n <= hi; ++n)
            if (!table.count(n))
                throw io::ConfigError("norms", "missing index " + std::to_string(n) +
                                                   " for the requested horizon");
        ns.emplace(unilateral ? ShiftKind::unilateral : ShiftKind::bilateral, p,
                   [table](long long n) { return table.at(n); });
    } else {
        sys = io::system_from_spec(opt.system);
        if (unilateral) throw io::ConfigError("unilateral", "system-induced norms are bilateral");
        ns = NormSeq::from_system(*sys, p);
    }
    ShiftClassifyReport report =
        unilateral ? classify_unilateral(*ns, opt.horizon) : classify_bilateral(*ns, J, opt.horizon);
    json out = envelope(opt, "shift classify", sys ? &*sys : nullptr);
    out["p"] = p.to_string();
    out["J"] = J;
    out["result"] = {{"mixing", io::to_json(report.mixing)},
                     {"hypercyclic", io::to_json(report.hypercyclic)},
                     {"tail_sup", report.tail_sup.to_string()},
                     {"obstruction", report.obstruction},
                     {"subsequence", report.subsequence},
                     {"subsequence_values", io::sequence_json(report.subsequence_values)},
                     {"assumption", report.assumption_note}};
    emit(opt, dump(out));
    return 0;
}

int run_orbit_forward(const Options& opt, const std::string& phi_s, long long n, long long p) {
    TowerSystem sys = io::system_from_spec(opt.system);
    SimpleFunction phi = parse_phi(phi_s, "phi");
    SimpleFunction image = apply_op(phi, n);
    json out = envelope(opt, "orbit forward", &sys);
    out["n"] = n;
    out["p"] = p;
    out["image"] = io::to_json(image);
    out["norm_pow"] = lp_norm_pow(sys, image, p).to_string();
    emit(opt, dump(out));
    return 0;
}

int run_orbit_inverse(const Options& opt, const std::string& set_spec, const std::string& delta_s,
                      long long p) {
    TowerSystem sys = io::system_from_spec(opt.system);
    json j = json::parse(set_spec, nullptr, false);
    if (j.is_discarded()) throw io::ConfigError("set", "expected JSON {\"level\": \"lo:hi,...\"}");
    LeveledSet B = io::leveled_set_from_json(j, "set");
    Rational delta = Rational::parse(delta_s);
    InverseOrbitReport report = inverse_orbit_floor(sys, B, delta, p, opt.horizon);
    if (opt.format == "csv") {
        std::ostringstream os;
        io::write_csv_header(os);
        for (size_t i = 0; i < report.norm_pows.size(); ++i)
            io::write_csv_row(os, static_cast<long long>(i) + 1, report.norm_pows[i], "norm_pow");
        emit(opt, os.str());
    } else {
        json out = envelope(opt, "orbit inverse", &sys);
        out["delta"] = delta.to_string();
        out["p"] = p;
        out["result"] = {{"norm_pows", io::sequence_json(report.norm_pows)},
                         {"floor_certified", report.floor_certified},
                         {"floor_bound", report.floor_bound.to_string()},
                         {"certified_steps", report.certified_steps},
                         {"tails_vanish", report.tails_vanish}};
        emit(opt, dump(out));
    }
    return 0;
}

int run_metric(const Options& opt, const std::string& phi_s, const std::string& psi_s) {
    TowerSystem sys = io::system_from_spec(opt.system);
    FrechetResult d = frechet(sys, parse_phi(phi_s, "phi"), parse_phi(psi_s, "psi"));
    if (opt.format == "json") {
        json out = envelope(opt, "metric", &sys);
        out["distance"] = d.value.to_string();
        out["attained"] = d.attained;
        emit(opt, dump(out));
    } else {
        emit(opt, d.value.to_string() + "\n");
    }
    return 0;
}

int run_reproduce_thm38(const Options& opt) {
    TowerSystem sys = TowerSystem::bdp();
    DynamicsReport report = classify(sys, opt.horizon);
    json out = envelope(opt, "reproduce thm38", &sys);
    out["pipeline"] = {"bdp construction", "check msc (mixing side)", "check ksc (failure side)",
                       "classify"};
    out["result"] = io::to_json(report);
    out["D_prefix"] = report.generator.exceptional;
    out["headline"] = {{"mixing", io::to_json(report.labels.at("mixing").verdict)},
                       {"kitai", io::to_json(report.labels.at("kitai").verdict)}};
    emit(opt, dump(out));
    return 0;
}

int run_reproduce_prop61(const Options& opt) {
    TowerSystem sys = TowerSystem::bdp();
    WeightSeq ws = WeightSeq::from_system(sys, Rational(1));
    ProductReport products = product_criterion(ws, opt.horizon);
    GeneratorReport gen = kitai_generator_check(sys, opt.horizon);
    json weights = json::object();
    for (long long k = -opt.horizon; k <= opt.horizon; ++k)
        weights[std::to_string(k)] = ws.weight_pow(k).to_string();
    json out = envelope(opt, "reproduce prop61", &sys);
    out["p"] = "1";
    out["weights"] = weights;
    out["D"] = gen.exceptional;
    out["result"] = {{"mixing", io::to_json(products.mixing)},
                     {"mixing_note", products.mixing_note},
                     {"hypercyclic", io::to_json(products.hypercyclic)},
                     {"small_products", products.small_products},
                     {"growth_steps", products.growth_steps},
                     {"growth_values", io::sequence_json(products.growth_values)}};
    emit(opt, dump(out));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"towerdyn: exact dynamics of dissipative tower systems and their shifts"};
    app.require_subcommand(1);

    Options opt;

    auto* system_cmd = app.add_subcommand("system", "Inspect systems and measure sets");
    system_cmd->require_subcommand(1);
    auto* info_cmd = system_cmd->add_subcommand("info", "Describe a system");
    long long info_window = 10;
    add_common(info_cmd, opt);
    info_cmd->add_option("--window", info_window, "Levels to list on each side");
    auto* measure_cmd = system_cmd->add_subcommand("measure", "Measure a leveled set");
    std::string set_spec;
    add_common(measure_cmd, opt);
    measure_cmd->add_option("--set", set_spec, "LeveledSet JSON")->required();

    auto* check_cmd = app.add_subcommand("check", "Run condition checkers");
    check_cmd->require_subcommand(1);
    long long level = 0;
    std::string level_set, schedule_spec, eps_s = "1/4";
    auto* msc_cmd = check_cmd->add_subcommand("msc", "Mixing shift-like condition");
    add_common(msc_cmd, opt);
    msc_cmd->add_option("--level", level, "Level carrying A");
    msc_cmd->add_option("--set", level_set, "Fiber set of A (default: whole fiber)");
    msc_cmd->add_option("--schedule", schedule_spec, "block | log2 | fixed:EPS");
    auto* ksc_cmd = check_cmd->add_subcommand("ksc", "Kitai shift-like condition");
    add_common(ksc_cmd, opt);
    ksc_cmd->add_option("--level", level, "Level carrying A");
    ksc_cmd->add_option("--set", level_set, "Fiber set of A");
    ksc_cmd->add_option("--eps", eps_s, "Budget for mu(A \\ B)");
    auto* grc_cmd = check_cmd->add_subcommand("grc", "Gethner-Shapiro shift-like condition");
    add_common(grc_cmd, opt);
    grc_cmd->add_option("--level", level, "Level carrying A");
    grc_cmd->add_option("--set", level_set, "Fiber set of A");
    grc_cmd->add_option("--eps", eps_s, "Budget for mu(A \\ B)");
    auto* kitai_cmd = check_cmd->add_subcommand("kitai", "Generator tails mu(f^{+-n}(W))");
    add_common(kitai_cmd, opt);

    auto* classify_cmd = app.add_subcommand("classify", "Full dynamics report");
    add_common(classify_cmd, opt);
    classify_cmd->add_option("--eps", eps_s, "Budget for the single-set searches");

    auto* shift_cmd = app.add_subcommand("shift", "Weighted backward shift views");
    shift_cmd->require_subcommand(1);
    std::string p_s = "1", norms_path;
    long long window_J = 0;
    bool unilateral = false;
    auto* weights_cmd = shift_cmd->add_subcommand("weights", "System-induced weights");
    add_common(weights_cmd, opt);
    weights_cmd->add_option("--p", p_s, "Exponent p");
    auto* products_cmd = shift_cmd->add_subcommand("products", "Partial-product criterion");
    add_common(products_cmd, opt);
    products_cmd->add_option("--p", p_s, "Exponent p");
    auto* sclassify_cmd = shift_cmd->add_subcommand("classify", "Coordinate-norm criteria");
    add_common(sclassify_cmd, opt);
    sclassify_cmd->add_option("--p", p_s, "Exponent p");
    sclassify_cmd->add_option("--J", window_J, "Window of coordinates |j| <= J");
    sclassify_cmd->add_option("--norms", norms_path, "CSV of norm p-th powers (n,num,den)");
    sclassify_cmd->add_flag("--unilateral", unilateral, "Treat the data as a unilateral shift");

    auto* orbit_cmd = app.add_subcommand("orbit", "Composition-operator orbits");
    orbit_cmd->require_subcommand(1);
    std::string phi_s = "chiW", psi_s = "zero", delta_s = "1";
    long long orbit_n = 1, orbit_p = 1;
    auto* fwd_cmd = orbit_cmd->add_subcommand("forward", "Apply T_f^n to a simple function");
    add_common(fwd_cmd, opt);
    fwd_cmd->add_option("--phi", phi_s, "zero | chiW | JSON | @file");
    fwd_cmd->add_option("--n", orbit_n, "Power of the operator");
    fwd_cmd->add_option("--p", orbit_p, "Norm exponent")->check(CLI::PositiveNumber);
    auto* inv_cmd = orbit_cmd->add_subcommand("inverse", "Inverse-orbit floor of delta*chi_B");
    add_common(inv_cmd, opt);
    inv_cmd->add_option("--set", set_spec, "LeveledSet JSON for B")->required();
    inv_cmd->add_option("--delta", delta_s, "Coefficient delta");
    inv_cmd->add_option("--p", orbit_p, "Norm exponent")->check(CLI::PositiveNumber);

    auto* metric_cmd = app.add_subcommand("metric", "Fréchet metric between simple functions");
    add_common(metric_cmd, opt);
    metric_cmd->add_option("--phi", phi_s, "zero | chiW | JSON | @file");
    metric_cmd->add_option("--psi", psi_s, "zero | chiW | JSON | @file");

    auto* repro_cmd = app.add_subcommand("reproduce", "Replay the headline computations");
    repro_cmd->require_subcommand(1);
    auto* thm38_cmd = repro_cmd->add_subcommand("thm38", "Mixing without Kitai's Criterion");
    add_common(thm38_cmd, opt, /*with_system=*/false);
    auto* prop61_cmd = repro_cmd->add_subcommand("prop61", "Induced weights and products");
    add_common(prop61_cmd, opt, /*with_system=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    // measure and metric print the bare value unless a format was requested
    for (CLI::App* bare : {static_cast<CLI::App*>(measure_cmd), static_cast<CLI::App*>(metric_cmd)})
        if (bare->parsed() && bare->count("--format") == 0) opt.format = "plain";

    try {
        check_guards(opt.horizon, opt.resolution);
        if (info_cmd->parsed()) return run_system_info(opt, info_window);
        if (measure_cmd->parsed()) return run_system_measure(opt, set_spec);
        if (msc_cmd->parsed()) return run_check_msc(opt, level, level_set, schedule_spec);
        if (ksc_cmd->parsed()) return run_check_ksc(opt, level, level_set, eps_s, false);
        if (grc_cmd->parsed()) return run_check_ksc(opt, level, level_set, eps_s, true);
        if (kitai_cmd->parsed()) return run_check_kitai(opt);
        if (classify_cmd->parsed()) return run_classify(opt, eps_s);
        if (weights_cmd->parsed()) return run_shift_weights(opt, p_s);
        if (products_cmd->parsed()) return run_shift_products(opt, p_s);
        if (sclassify_cmd->parsed())
            return run_shift_classify(opt, p_s, window_J, norms_path, unilateral);
        if (fwd_cmd->parsed()) return run_orbit_forward(opt, phi_s, orbit_n, orbit_p);
        if (inv_cmd->parsed()) return run_orbit_inverse(opt, set_spec, delta_s, orbit_p);
        if (metric_cmd->parsed()) return run_metric(opt, phi_s, psi_s);
        if (thm38_cmd->parsed()) return run_reproduce_thm38(opt);
        if (prop61_cmd->parsed()) return run_reproduce_prop61(opt);
        std::cerr << "config error: no subcommand\n";
        return 2;
    } catch (const GuardViolation& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 3;
    } catch (const io::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
