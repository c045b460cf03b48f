// Command-line front end: machine runs, clock graphs, spectra, block energies,
// density series, extraction, and the acceptance suite.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tihsim/formats.hpp"
#include "tihsim/ged.hpp"
#include "tihsim/robinson.hpp"
#include "tihsim/verify.hpp"

using namespace tihsim;
using nlohmann::json;

namespace {

tm::TuringMachine load_machine(const std::string& spec) {
    if (spec == "mbc") return tm::build_mbc();
    if (spec == "mpost") return tm::build_mpost();
    return formats::machine_from_json(formats::load_json_file(spec));
}

oracle::OracleInstance load_instance(const std::string& spec) {
    if (spec.rfind("toy-", 0) == 0) return oracle::toy_instance(spec);
    return formats::instance_from_json(formats::load_json_file(spec));
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        formats::write_text_file(out_path, j.dump(2) + "\n");
    }
}

struct GedArgs {
    std::string instance = "toy-m0";
    std::int64_t precision = 320;
    std::int64_t kmax = 85;
    std::vector<std::int64_t> insufficient;
    std::string cache_dir = formats::ResultCache::default_dir();

    ged::GedSeries series() const {
        ged::GedSeries s;
        s.instance = load_instance(instance);
        s.precision_bits = precision;
        s.k_max = kmax;
        for (auto k : insufficient) s.insufficient.insert(k);
        return s;
    }
};

// Series evaluation with the content-addressed cache in front of each term.
fx::BigFixed cached_alpha0(const ged::GedSeries& series, const formats::ResultCache& cache) {
    std::int64_t bits = series.precision_bits;
    std::int64_t work = bits + 32;
    std::string digest = formats::instance_digest(series.instance);
    fx::BigFixed acc = fx::BigFixed::from_int(0);
    std::int64_t tail_exp = 4 * series.k_max + 5;
    require(tail_exp >= bits, "alpha0: truncation too short for the requested precision");
    for (std::int64_t k = 1; k <= series.k_max; ++k) {
        if (series.insufficient.count(k)) continue;
        if (!ged::perfect_sqrt(k)) continue;
        std::string key = "lambda0/" + digest + "/k=" + std::to_string(k) +
                          "/bits=" + std::to_string(work);
        fx::BigFixed lam;
        auto hit = cache.get(key);
        if (hit) {
            lam = fx::BigFixed::from_parts(false, cpp_int((*hit).at("mantissa").get<std::string>()),
                                           (*hit).at("scale").get<std::int64_t>(),
                                           (*hit).at("precision_bits").get<std::int64_t>());
        } else {
            lam = ged::lambda0_4k(series, k, work);
            cache.put(key, json{{"mantissa", lam.mantissa().str()},
                                {"scale", lam.scale()},
                                {"precision_bits", lam.precision_bits()}});
        }
        acc = add(acc, mul(lam, fx::BigFixed::pow2(-(4 * k + 2))));
    }
    return fx::BigFixed::from_parts(acc.negative(), acc.mantissa(), acc.scale(), bits);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"translationally invariant chain toolkit"};
    app.require_subcommand(1);

    // ---- tm ----
    auto* tm_cmd = app.add_subcommand("tm", "reversible machine operations");
    tm_cmd->require_subcommand(1);
    std::string tm_machine = "mbc", tm_work = "1####", tm_witness, tm_trace_path, tm_x = "11";
    std::int64_t tm_steps = 0, tm_budget = 0;

    auto* tm_run = tm_cmd->add_subcommand("run", "run a machine for a fixed number of steps");
    tm_run->add_option("--machine", tm_machine, "builtin name (mbc, mpost) or JSON path");
    tm_run->add_option("--work", tm_work, "initial work tape");
    tm_run->add_option("--witness", tm_witness, "witness bits");
    tm_run->add_option("--steps", tm_steps)->required();
    tm_run->add_option("--trace", tm_trace_path, "write JSON-lines trace here");
    tm_run->callback([&] {
        tm::TuringMachine m = load_machine(tm_machine);
        tm::TapeConfig c = tm_work.find(' ') == std::string::npos
                               ? tm::make_config(m, tm_work, tm_witness)
                               : tm::make_config_tokens(m, tm_work, tm_witness);
        tm::RunResult r = tm::run(m, c, tm_steps, !tm_trace_path.empty());
        if (!tm_trace_path.empty()) {
            std::string lines;
            for (const tm::StepRecord& s : r.trace)
                lines += json{{"step", s.step},
                              {"state", m.states()[size_t(s.state)]},
                              {"head", s.head},
                              {"written", m.alphabet()[size_t(s.written)]}}
                             .dump() +
                         "\n";
            formats::write_text_file(tm_trace_path, lines);
        }
        emit(json{{"state", m.states()[size_t(r.config.state)]},
                  {"head", r.config.head},
                  {"work", tm::work_string(m, r.config)},
                  {"min_cell", r.min_cell},
                  {"max_cell", r.max_cell}},
             "");
    });

    auto* tm_check = tm_cmd->add_subcommand("check", "reversibility report");
    tm_check->add_option("--machine", tm_machine);
    tm_check->callback([&] {
        tm::TuringMachine m = load_machine(tm_machine);
        tm::ReversibilityReport rep = tm::check_reversible(m);
        emit(json{{"unidirectional", rep.unidirectional},
                  {"reduced_injective", rep.reduced_injective},
                  {"normal_form", rep.normal_form},
                  {"detail", rep.detail}},
             "");
    });

    auto* tm_emit = tm_cmd->add_subcommand("emit", "dump a builtin machine as JSON");
    std::string tm_out;
    tm_emit->add_option("--machine", tm_machine);
    tm_emit->add_option("--out", tm_out);
    tm_emit->callback([&] { emit(formats::machine_to_json(load_machine(tm_machine)), tm_out); });

    auto* tm_nofx = tm_cmd->add_subcommand("nofx", "operational counter reduction");
    tm_nofx->add_option("--x", tm_x)->required();
    tm_nofx->add_option("--budget", tm_budget);
    tm_nofx->callback([&] {
        tm::NofxResult r = tm::n_of_x(tm_x, tm_budget);
        emit(json{{"x", tm_x},
                  {"operational", r.operational},
                  {"closed_form", r.closed_form},
                  {"delta", r.operational - r.closed_form},
                  {"head_min", r.head_min},
                  {"head_max", r.head_max}},
             "");
    });

    // ---- clock ----
    auto* clock_cmd = app.add_subcommand("clock", "three-track clock graphs");
    clock_cmd->require_subcommand(1);
    std::int64_t ck_n = 5, ck_t = 0, ck_budget = 2000000;
    std::string ck_json_out, ck_dot_out;
    bool ck_report = false;

    auto* ck_graph = clock_cmd->add_subcommand("graph", "enumerate and verify one (N, T) graph");
    ck_graph->add_option("--N", ck_n)->required();
    ck_graph->add_option("--T", ck_t)->required();
    ck_graph->add_flag("--report", ck_report);
    ck_graph->add_option("--budget", ck_budget, "maximum node count");
    ck_graph->add_option("--json-out", ck_json_out, "adjacency JSON path");
    ck_graph->add_option("--dot-out", ck_dot_out, "graphviz path");
    ck_graph->callback([&] {
        clk::ConfigGraph g;
        clk::GraphReport rep = clk::build_graph(int(ck_n), int(ck_t), &g, ck_budget);
        if (!ck_json_out.empty()) emit(formats::graph_adjacency_to_json(g), ck_json_out);
        if (!ck_dot_out.empty()) formats::write_text_file(ck_dot_out, formats::graph_to_dot(g));
        emit(formats::graph_report_to_json(rep), "");
        (void)ck_report;
    });

    auto* ck_rules = clock_cmd->add_subcommand("rules", "dump the transition rule table");
    ck_rules->callback([&] {
        json out = json::array();
        for (const clk::ClockRule& r : clk::clock_rules())
            out.push_back({{"name", r.name},
                           {"paper", r.paper_name},
                           {"family", r.family},
                           {"anchor", r.anchor == clk::Anchor::Pair
                                          ? "pair"
                                          : (r.anchor == clk::Anchor::LeftEnd ? "left" : "right")},
                           {"action", int(r.action)}});
        emit(out, "");
    });

    // ---- spectral ----
    auto* sp_cmd = app.add_subcommand("spectral", "penalized propagation spectra");
    sp_cmd->require_subcommand(1);
    std::int64_t sp_l = 8, sp_digits = 12, sp_bits = 128;
    double sp_tol = 1e-12;
    std::string sp_spec_path;
    std::vector<std::string> sp_pens;
    std::vector<std::int64_t> sp_periodic, sp_cosgap, sp_compare;
    std::int64_t sp_r = 0, sp_s = 0;

    auto* sp_closed = sp_cmd->add_subcommand("closed-form", "1 - cos(pi/(L+1)) at high precision");
    sp_closed->add_option("--L", sp_l)->required();
    sp_closed->add_option("--digits", sp_digits);
    sp_closed->add_option("--precision-bits", sp_bits);
    sp_closed->callback([&] {
        std::cout << spectral::cycle_two_halves_exact(sp_l, sp_bits).to_decimal(sp_digits) << "\n";
    });

    auto* sp_eig = sp_cmd->add_subcommand("eig", "smallest eigenvalue of an assembled matrix");
    sp_eig->add_option("--spec", sp_spec_path, "matrix spec JSON path");
    sp_eig->add_option("--base-L", sp_l, "cycle size when no spec file is given");
    sp_eig->add_option("--penalty", sp_pens, "index:weight, repeatable");
    sp_eig->add_option("--periodic", sp_periodic, "r s l")->expected(3);
    sp_eig->add_option("--tol", sp_tol);
    sp_eig->add_option("--digits", sp_digits);
    sp_eig->callback([&] {
        spectral::MatrixSpec spec;
        if (!sp_spec_path.empty()) {
            spec = formats::matrix_spec_from_json(formats::load_json_file(sp_spec_path));
        } else if (!sp_periodic.empty()) {
            spec = spectral::cycle_with_periodic(sp_periodic[0], sp_periodic[1], sp_periodic[2]);
        } else {
            spec.base = spectral::Base::Cycle;
            spec.size = sp_l;
            for (const std::string& p : sp_pens) {
                auto colon = p.find(':');
                require(colon != std::string::npos, "--penalty wants index:weight");
                spec.penalties.push_back(
                    {std::stoll(p.substr(0, colon)), std::stod(p.substr(colon + 1))});
            }
        }
        double v = spectral::smallest_eig(spectral::assemble(spec), sp_tol);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", int(sp_digits), v);
        emit(json{{"spec", formats::matrix_spec_to_json(spec)}, {"smallest_eig", buf}}, "");
    });

    auto* sp_bounds = sp_cmd->add_subcommand("bounds", "certified bound values and checks");
    sp_bounds->add_option("--periodic-r", sp_r);
    sp_bounds->add_option("--periodic-s", sp_s);
    sp_bounds->add_option("--cos-gap", sp_cosgap, "x xp y")->expected(3);
    sp_bounds->add_option("--compare", sp_compare, "N T")->expected(2);
    sp_bounds->add_option("--digits", sp_digits);
    sp_bounds->add_option("--precision-bits", sp_bits);
    sp_bounds->callback([&] {
        json out;
        if (sp_s > 0) {
            out["periodic_bound"] =
                spectral::periodic_lower_bound(sp_s, sp_bits).to_decimal(sp_digits);
            if (sp_r > 0) {
                double numeric = spectral::smallest_eig(
                    spectral::assemble(spectral::cycle_with_periodic(sp_r, sp_s, 0)));
                out["numeric_smallest"] = numeric;
                out["holds"] =
                    numeric >= spectral::periodic_lower_bound(sp_s, sp_bits).to_double() - 1e-12;
            }
        }
        if (!sp_cosgap.empty()) {
            spectral::CosGapResult g =
                spectral::cos_gap(sp_cosgap[0], sp_cosgap[1], sp_cosgap[2], sp_bits);
            out["cos_gap"] = {{"bound", g.bound.to_decimal(sp_digits)},
                              {"actual", g.actual.to_decimal(sp_digits)},
                              {"holds", g.holds}};
        }
        if (!sp_compare.empty()) {
            spectral::BoundCompareResult c =
                spectral::bound_compare(sp_compare[0], sp_compare[1], sp_bits);
            out["bound_compare"] = {{"holds", c.holds},
                                    {"hypothesis_met", c.hypothesis_met},
                                    {"lhs", c.lhs.to_decimal(sp_digits)},
                                    {"rhs", c.rhs.to_decimal(sp_digits)}};
        }
        emit(out, "");
    });

    // ---- blocks ----
    auto* bl_cmd = app.add_subcommand("blocks", "effective block analysis");
    bl_cmd->require_subcommand(1);
    std::string bl_instance = "toy-m0", bl_witness, bl_vwork, bl_mode = "semantic", bl_out;
    std::int64_t bl_n = 7, bl_t = -1, bl_digits = 20, bl_bits = 192;
    bool bl_global = false;

    auto* bl_energy = bl_cmd->add_subcommand("ground-energy", "block or global ground energy");
    bl_energy->add_option("--instance", bl_instance);
    bl_energy->add_option("--N", bl_n)->required();
    bl_energy->add_option("--T", bl_t);
    bl_energy->add_option("--witness", bl_witness);
    bl_energy->add_flag("--global", bl_global);
    bl_energy->add_option("--digits", bl_digits);
    bl_energy->add_option("--precision-bits", bl_bits);
    bl_energy->callback([&] {
        oracle::OracleInstance inst = load_instance(bl_instance);
        blocks::InstanceMachines ms = blocks::build_instance_machines(inst);
        if (bl_global) {
            blocks::GlobalResult g = blocks::global_ground_energy(inst, ms, bl_n, bl_bits);
            json per = json::array();
            for (const auto& y : g.per_y)
                per.push_back({{"y", y.y},
                               {"class", blocks::block_class_name(y.cls)},
                               {"timer", y.timer.str()},
                               {"timer_fits", y.timer_fits},
                               {"energy", y.energy.to_decimal(bl_digits)},
                               {"is_bound", y.is_bound}});
            emit(json{{"N", g.n},
                      {"x", g.x},
                      {"correct_y", g.correct_y},
                      {"found", g.found_s4},
                      {"energy", g.found_s4 ? g.energy.to_decimal(bl_digits) : "none"},
                      {"argmin_timer", g.argmin.timer},
                      {"argmin_is_correct_y", g.argmin_is_correct_y},
                      {"strict_order", g.strict_order},
                      {"per_y", per}},
                 "");
        } else {
            require(bl_t >= 0, "--T is required without --global");
            blocks::BlockSpec b{bl_n, bl_t, bl_vwork.empty(), bl_witness, bl_vwork};
            if (std::int64_t(b.witness.size()) < bl_n - 4) b.witness.resize(size_t(bl_n - 4), '0');
            blocks::BlockEnergy e = blocks::block_ground_energy(inst, ms, b, bl_bits);
            int m = inst.query_count(blocks::chain_input_value(ms, bl_n));
            emit(json{{"N", bl_n},
                      {"T", bl_t},
                      {"y", b.witness.substr(0, size_t(m))},
                      {"class", blocks::block_class_name(e.cls)},
                      {"energy_or_bound", e.value.to_decimal(bl_digits)},
                      {"is_bound", e.is_bound}},
                 "");
        }
    });

    auto* bl_profile = bl_cmd->add_subcommand("profile", "penalty profile over one cycle");
    bl_profile->add_option("--instance", bl_instance);
    bl_profile->add_option("--N", bl_n)->required();
    bl_profile->add_option("--T", bl_t)->required();
    bl_profile->add_option("--witness", bl_witness);
    bl_profile->add_option("--v-work", bl_vwork, "non-initial work tape for tracks 4/5");
    bl_profile->add_option("--mode", bl_mode)->check(CLI::IsMember({"semantic", "walk"}));
    bl_profile->callback([&] {
        oracle::OracleInstance inst = load_instance(bl_instance);
        blocks::InstanceMachines ms = blocks::build_instance_machines(inst);
        blocks::BlockSpec b{bl_n, bl_t, bl_vwork.empty(), bl_witness, bl_vwork};
        if (std::int64_t(b.witness.size()) < bl_n - 4) b.witness.resize(size_t(bl_n - 4), '0');
        blocks::PenaltyProfile prof = blocks::penalty_profile(
            inst, ms, b,
            bl_mode == "walk" ? blocks::ProfileMode::TrackWalk : blocks::ProfileMode::Semantic);
        json hits = json::array();
        for (auto [t, w] : prof) hits.push_back({{"t", t}, {"half_units", w}});
        emit(json{{"N", bl_n}, {"T", bl_t}, {"mode", bl_mode}, {"hits", hits}}, "");
    });

    auto* bl_walk = bl_cmd->add_subcommand("walk", "cyclicity check of the six-track walk");
    bl_walk->add_option("--instance", bl_instance);
    bl_walk->add_option("--N", bl_n)->required();
    bl_walk->add_option("--T", bl_t)->required();
    bl_walk->add_option("--witness", bl_witness);
    bl_walk->callback([&] {
        oracle::OracleInstance inst = load_instance(bl_instance);
        blocks::InstanceMachines ms = blocks::build_instance_machines(inst);
        std::string w = bl_witness;
        if (std::int64_t(w.size()) < bl_n - 4) w.resize(size_t(bl_n - 4), '0');
        blocks::CycleCheckResult r = blocks::track_walk_cycle_check(inst, ms, bl_n, bl_t, w);
        emit(json{{"cyclic", r.ok}, {"reason", r.reason}}, "");
    });

    auto* bl_emit = bl_cmd->add_subcommand("emit-instance", "dump a toy instance as JSON");
    bl_emit->add_option("name", bl_instance)->required();
    bl_emit->add_option("--out", bl_out);
    bl_emit->callback([&] { emit(formats::instance_to_json(load_instance(bl_instance)), bl_out); });

    // ---- ged ----
    auto* ged_cmd = app.add_subcommand("ged", "ground energy density series");
    ged_cmd->require_subcommand(1);
    GedArgs ga;
    std::int64_t ged_x = 1, ged_digits = 60, ged_rounds = 30, ged_decay_k = 3;
    std::string ged_lambda = "1/3", ged_adversary = "accept";

    auto add_series_opts = [&](CLI::App* c) {
        c->add_option("--instance", ga.instance);
        c->add_option("--precision-bits", ga.precision);
        c->add_option("--kmax", ga.kmax);
        c->add_option("--K", ga.insufficient, "insufficiency set, repeatable");
        c->add_option("--cache-dir", ga.cache_dir);
    };

    auto* ged_alpha = ged_cmd->add_subcommand("alpha0", "truncated density series");
    add_series_opts(ged_alpha);
    ged_alpha->add_option("--digits", ged_digits);
    ged_alpha->callback([&] {
        formats::ResultCache cache(ga.cache_dir);
        fx::BigFixed a = cached_alpha0(ga.series(), cache);
        emit(json{{"instance", ga.instance},
                  {"precision_bits", ga.precision},
                  {"k_max", ga.kmax},
                  {"alpha0", a.to_decimal(ged_digits)}},
             "");
    });

    auto* ged_extract = ged_cmd->add_subcommand("extract", "recover f(x) from the series");
    add_series_opts(ged_extract);
    ged_extract->add_option("--x", ged_x)->required();
    ged_extract->callback([&] {
        formats::ResultCache cache(ga.cache_dir);
        ged::GedSeries s = ga.series();
        fx::BigFixed a = cached_alpha0(s, cache);
        ged::ExtractResult r = ged::extract_f(a, ged_x, s);
        json timers = json::array();
        for (const auto& t : r.timers) timers.push_back(t.str());
        emit(json{{"x", ged_x},
                  {"q_bits", r.q_bits},
                  {"ok", r.ok},
                  {"insufficient_k", r.insufficient_k},
                  {"recovered_f", r.f},
                  {"T_values", timers},
                  {"precision_highwater", r.precision_highwater},
                  {"diagnostic", r.diagnostic}},
             "");
    });

    auto* ged_search = ged_cmd->add_subcommand("search", "promise-oracle binary search");
    ged_search->add_option("--lambda", ged_lambda, "hidden value as p/q");
    ged_search->add_option("--rounds", ged_rounds);
    ged_search->add_option("--adversary", ged_adversary)
        ->check(CLI::IsMember({"accept", "reject"}));
    ged_search->callback([&] {
        auto slash = ged_lambda.find('/');
        require(slash != std::string::npos, "--lambda wants p/q");
        ged::PromiseOracle o{cpp_int(ged_lambda.substr(0, slash)),
                             cpp_int(ged_lambda.substr(slash + 1)),
                             ged_adversary == "accept" ? ged::PromiseOracle::Adversary::Accept
                                                       : ged::PromiseOracle::Adversary::Reject};
        ged::SearchResult r = ged::binary_search(o, ged_rounds);
        emit(json{{"rounds", ged_rounds},
                  {"l", r.l.to_decimal(std::min<std::int64_t>(ged_rounds + 2, 40))},
                  {"u", r.u.to_decimal(std::min<std::int64_t>(ged_rounds + 2, 40))},
                  {"width_exact", "2^-" + std::to_string(ged_rounds)},
                  {"contains", o.contains(r.l_num, r.u_num, r.rounds + 1)}},
             "");
    });

    auto* ged_decay = ged_cmd->add_subcommand("decay", "tally and contribution decay report");
    add_series_opts(ged_decay);
    ged_decay->add_option("--k", ged_decay_k);
    ged_decay->callback([&] {
        ged::DecayReport rep = ged::decay_checks(load_instance(ga.instance), ged_decay_k);
        json rows = json::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"k", row.k},
                            {"T_k", row.timer.str()},
                            {"N_ratio", row.n_ratio.str()},
                            {"timer_bounded", row.timer_bounded},
                            {"l_ratio", row.l_ratio},
                            {"halves", row.halves}});
        emit(json{{"instance", ga.instance}, {"all_ok", rep.all_ok}, {"rows", rows}}, "");
    });

    // ---- robinson ----
    auto* rb_cmd = app.add_subcommand("robinson", "interlocking square hierarchy");
    rb_cmd->require_subcommand(1);
    std::int64_t rb_l = 64, rb_digits = 40;
    std::string rb_instance = "toy-m0", rb_json_out;
    bool rb_ascii = false;

    auto* rb_h = rb_cmd->add_subcommand("hierarchy", "square counts and segments");
    rb_h->add_option("--L", rb_l)->required();
    rb_h->add_flag("--ascii", rb_ascii);
    rb_h->add_option("--json-out", rb_json_out, "write the segment list here");
    rb_h->callback([&] {
        robinson::SquareHierarchy h = robinson::hierarchy(rb_l);
        json levels = json::array();
        for (const auto& lv : h.levels)
            levels.push_back(
                {{"k", lv.k}, {"size", lv.size}, {"pitch", lv.pitch}, {"count", lv.count()}});
        if (!rb_json_out.empty()) {
            json segs = json::array();
            for (const auto& lv : h.levels)
                for (const auto& s : lv.top_edges())
                    segs.push_back({{"k", lv.k}, {"row", s.row}, {"col", s.col}, {"len", s.len}});
            emit(json{{"L", rb_l}, {"segments", segs}}, rb_json_out);
        }
        emit(json{{"L", rb_l}, {"levels", levels}}, "");
        if (rb_ascii) std::cout << robinson::ascii_render(h);
    });

    auto* rb_i = rb_cmd->add_subcommand("interval", "lattice energy interval");
    rb_i->add_option("--L", rb_l)->required();
    rb_i->add_option("--instance", rb_instance);
    rb_i->add_option("--digits", rb_digits);
    rb_i->callback([&] {
        ged::GedSeries s;
        s.instance = load_instance(rb_instance);
        std::map<std::int64_t, fx::BigFixed> lambdas;
        for (std::int64_t k = 1; k <= robinson::interval_depth(rb_l); ++k)
            lambdas[k] = ged::lambda0_4k(s, k, 192);
        robinson::EnergyInterval iv = robinson::energy_interval(rb_l, lambdas);
        emit(json{{"L", rb_l},
                  {"lo", iv.lo.to_decimal(rb_digits)},
                  {"hi", iv.hi.to_decimal(rb_digits)}},
             "");
    });

    // ---- verify-all ----
    auto* ver = app.add_subcommand("verify-all", "run the acceptance suite");
    std::vector<int> ver_only;
    ver->add_option("--only", ver_only, "criterion numbers to run");
    ver->callback([&] {
        std::vector<verify::CriterionResult> rs = verify::run_all(ver_only);
        std::cout << verify::format_results(rs);
        for (const auto& r : rs)
            if (!r.pass) throw CLI::RuntimeError(1);
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const tihsim::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
