// tww: twin-width toolkit command line.
// Exit codes: 0 ok, 1 semantic violation/refusal, 2 malformed certificate,
// 64 usage error, 74 I/O error.

#include "tww/encoder.hpp"
#include "tww/gadgets.hpp"
#include "tww/io.hpp"
#include "tww/reduction.hpp"
#include "tww/solver.hpp"
#include "tww/subdivision.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>

namespace {

using namespace tww;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct RunReport {
    std::vector<std::pair<std::string, std::string>> lines;
    std::string json_blob;

    void put(const std::string& key, const std::string& value) { lines.emplace_back(key, value); }
    void put(const std::string& key, long long value) { put(key, std::to_string(value)); }

    void emit(const std::string& path) const {
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw TwwError("cannot write report to " + path);
            out = &file;
        }
        for (const auto& [k, v] : lines)
            *out << k << '=' << v << '\n';
        if (!json_blob.empty())
            *out << json_blob << '\n';
    }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     start)
            .count();
    }
};

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

int ceil_log2(int n) {
    int h = 0, p = 1;
    while (p < n) {
        p <<= 1;
        ++h;
    }
    return h;
}

std::vector<bool> parse_assignment_file(const std::string& path, int n_vars) {
    std::ifstream in(path);
    if (!in)
        throw TwwError("cannot open " + path);
    std::vector<long> vals;
    long v;
    while (in >> v)
        vals.push_back(v);
    std::vector<bool> a(static_cast<std::size_t>(n_vars), false);
    bool signed_form = false;
    for (long x : vals)
        if (x < 0 || x > 1)
            signed_form = true;
    if (signed_form) {
        for (long x : vals) {
            if (x == 0)
                continue;
            long var = std::labs(x);
            if (var < 1 || var > n_vars)
                throw FormatError("assignment literal out of range");
            a[static_cast<std::size_t>(var) - 1] = x > 0;
        }
    } else {
        if (vals.size() != static_cast<std::size_t>(n_vars))
            throw FormatError("assignment needs one 0/1 value per variable");
        for (std::size_t i = 0; i < vals.size(); ++i)
            a[i] = vals[i] == 1;
    }
    return a;
}

int cmd_verify(const std::string& graph_path, const std::vector<std::string>& seq_paths, int d,
               bool d_set, int jobs, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    Trigraph g = parse_trigraph_file(graph_path);
    rep.put("command", "verify");
    rep.put("graph", graph_path);
    rep.put("graph_digest", hex64(trigraph_digest(g)));

    auto verify_one = [&](const std::string& path) {
        ContractionSequence seq = parse_sequence_file(path, g);
        return verify(seq, d_set ? d : std::numeric_limits<int>::max());
    };

    std::vector<VerificationReport> results(seq_paths.size());
    if (jobs > 1 && seq_paths.size() > 1) {
        std::vector<std::future<VerificationReport>> futs;
        for (const auto& p : seq_paths)
            futs.push_back(std::async(std::launch::async, verify_one, p));
        for (std::size_t i = 0; i < futs.size(); ++i)
            results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < seq_paths.size(); ++i) {
            try {
                results[i] = verify_one(seq_paths[i]);
            } catch (const FormatError& e) {
                results[i].status = VerificationReport::Status::malformed;
                results[i].message = e.what();
            }
        }
    }

    int exit_code = kExitOk;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::string status = r.accepted()          ? "ok"
                             : r.status == VerificationReport::Status::width_violation ? "violation"
                                                                                       : "malformed";
        rep.put("certificate[" + std::to_string(i) + "]", seq_paths[i]);
        rep.put("status[" + std::to_string(i) + "]", status);
        rep.put("width[" + std::to_string(i) + "]", r.width);
        if (r.status == VerificationReport::Status::width_violation) {
            rep.put("violation_step[" + std::to_string(i) + "]", r.violation_step);
            exit_code = std::max(exit_code, kExitViolation);
        } else if (r.status == VerificationReport::Status::malformed) {
            rep.put("error[" + std::to_string(i) + "]", r.message);
            exit_code = std::max(exit_code, kExitMalformed);
        }
    }
    rep.put("status", exit_code == kExitOk ? "ok" : "violation");
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return exit_code;
}

int cmd_solve(const std::string& graph_path, int decide_d, bool decide_set, std::uint64_t nodes,
              double secs, int d_cap, const std::string& out_path, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    Trigraph g = parse_trigraph_file(graph_path);
    SolverBudget budget;
    budget.max_nodes = nodes;
    budget.max_seconds = secs;
    budget.d_cap = d_cap;
    rep.put("command", "solve");
    rep.put("graph", graph_path);
    rep.put("graph_digest", hex64(trigraph_digest(g)));

    ContractionSequence witness;
    bool have_witness = false;
    if (decide_set) {
        auto r = decide_at_most(g, decide_d, budget);
        rep.put("decide_d", decide_d);
        rep.put("nodes", static_cast<long long>(r.nodes));
        rep.put("answer", r.status == DecideStatus::yes   ? "yes"
                          : r.status == DecideStatus::no  ? "no"
                                                          : "unknown");
        rep.put("status", r.status == DecideStatus::unknown ? "budget" : "ok");
        if (r.status == DecideStatus::yes) {
            witness = std::move(r.witness);
            have_witness = true;
        }
    } else {
        auto r = twin_width_exact(g, budget);
        rep.put("value", r.value);
        rep.put("nodes", static_cast<long long>(r.nodes));
        rep.put("status", r.status == SolveStatus::exact             ? "ok"
                          : r.status == SolveStatus::upper_bound_only ? "upper-bound"
                                                                      : "budget");
        witness = std::move(r.witness);
        have_witness = witness.base.n() > 0;
    }
    if (have_witness && !out_path.empty()) {
        write_sequence_file(out_path, witness);
        rep.put("witness", out_path);
        rep.put("witness_width", width(witness));
    }
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return kExitOk;
}

int cmd_subdivide(const std::string& graph_path, const std::string& length_arg,
                  const std::string& out_path, const std::string& witness_path,
                  const std::string& report_path) {
    Timer timer;
    RunReport rep;
    Trigraph h = parse_trigraph_file(graph_path);
    int len;
    if (length_arg == "auto") {
        len = std::max(1, 2 * ceil_log2(std::max(1, h.n())) - 1);
    } else {
        len = std::stoi(length_arg);
        if (len < 1)
            throw TwwError("subdivision length must be positive");
    }
    auto inst = subdivide_uniform(h, len);
    rep.put("command", "subdivide");
    rep.put("graph", graph_path);
    rep.put("length", len);
    rep.put("vertices", inst.subdivided.n());
    if (!out_path.empty()) {
        write_trigraph_file(out_path, inst.subdivided);
        rep.put("out", out_path);
    }
    if (!witness_path.empty()) {
        auto seq = subdivision_sequence(inst);
        write_sequence_file(witness_path, seq);
        rep.put("witness", witness_path);
        rep.put("witness_width", width(seq));
    }
    rep.put("status", "ok");
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return kExitOk;
}

int cmd_encode(const std::string& graph_path, int d, int t_override, bool force,
               const std::string& out_path, const std::string& plan_path,
               const std::string& report_path) {
    Timer timer;
    RunReport rep;
    Trigraph h = parse_trigraph_file(graph_path);
    EncoderGuard guard = guard_from_env();
    guard.force = force;
    std::optional<int> t_opt;
    if (t_override > 0)
        t_opt = t_override;
    auto res = encode_all(h, d, t_opt, guard);
    rep.put("command", "encode");
    rep.put("graph", graph_path);
    rep.put("d", d);
    rep.put("components", static_cast<long long>(res.plans.size()));
    rep.put("vertices", res.graph.n());
    rep.put("tainted", res.tainted ? "true" : "false");
    if (!out_path.empty()) {
        write_trigraph_file(out_path, res.graph);
        rep.put("out", out_path);
    }
    if (!plan_path.empty()) {
        nlohmann::json pj;
        pj["format"] = "tww-plan-v1";
        pj["kind"] = "encoding";
        pj["d"] = d;
        pj["tainted"] = res.tainted;
        pj["components"] = nlohmann::json::array();
        for (const auto& plan : res.plans) {
            pj["components"].push_back({{"vertices", plan.component},
                                        {"t", plan.t},
                                        {"t_sound", plan.t_sound},
                                        {"tainted", plan.tainted},
                                        {"a_ids", plan.a_ids},
                                        {"b_ids", plan.b_ids}});
        }
        std::ofstream pf(plan_path);
        if (!pf)
            throw TwwError("cannot write " + plan_path);
        pf << pj.dump(2) << '\n';
        rep.put("plan", plan_path);
    }
    rep.put("status", "ok");
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return kExitOk;
}

int cmd_reduce(const std::string& cnf_path, const std::string& out_path,
               const std::string& manifest_path, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    CnfInstance cnf = parse_dimacs_file(cnf_path);
    auto pre = preprocess_occurrences(cnf);
    rep.put("command", "reduce");
    rep.put("cnf", cnf_path);
    if (pre.outcome == PreprocessResult::Outcome::trivially_sat) {
        rep.put("status", "trivially-sat");
        rep.put("wall_ms", timer.ms());
        rep.emit(report_path);
        std::cerr << "instance is trivially satisfiable; nothing to build\n";
        return kExitViolation;
    }
    if (pre.outcome == PreprocessResult::Outcome::trivially_unsat) {
        rep.put("status", "trivially-unsat");
        rep.put("wall_ms", timer.ms());
        rep.emit(report_path);
        std::cerr << "instance is trivially unsatisfiable; nothing to build\n";
        return kExitViolation;
    }
    auto out = build_instance(pre.cnf);
    write_trigraph_file(out_path, out.graph);
    std::ofstream mf(manifest_path);
    if (!mf)
        throw TwwError("cannot write " + manifest_path);
    mf << to_manifest_json(out) << '\n';
    rep.put("out", out_path);
    rep.put("manifest", manifest_path);
    rep.put("variables", out.cnf.n_vars);
    rep.put("clauses", static_cast<long long>(out.cnf.clauses.size()));
    rep.put("chain_length", out.chain_length);
    rep.put("vertices", out.stats.vertices);
    rep.put("fences", out.stats.fences);
    rep.put("graph_digest", hex64(trigraph_digest(out.graph)));
    rep.put("status", "ok");
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return kExitOk;
}

int cmd_witness(const std::string& graph_path, const std::string& manifest_path,
                const std::string& assignment_arg, const std::string& out_path,
                const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.put("command", "witness");
    std::ifstream mf(manifest_path);
    if (!mf)
        throw TwwError("cannot open " + manifest_path);
    std::string json_text((std::istreambuf_iterator<char>(mf)), std::istreambuf_iterator<char>());
    ReductionOutput out = reduction_from_manifest(json_text);
    Trigraph g = parse_trigraph_file(graph_path);
    if (g != out.graph)
        throw FormatError("trigraph file does not match the manifest's instance");

    std::vector<bool> assignment;
    if (assignment_arg == "auto") {
        auto found = truth_table_sat(out.cnf);
        if (!found) {
            rep.put("status", "refused");
            rep.put("error", "instance is unsatisfiable");
            rep.put("wall_ms", timer.ms());
            rep.emit(report_path);
            return kExitViolation;
        }
        assignment = *found;
    } else {
        assignment = parse_assignment_file(assignment_arg, out.cnf.n_vars);
    }

    try {
        auto seq = synthesize_witness(out, assignment);
        if (!out_path.empty()) {
            write_sequence_file(out_path, seq);
            rep.put("witness", out_path);
        }
        rep.put("width", width(seq));
        rep.put("steps", static_cast<long long>(seq.steps.size()));
        rep.put("status", "ok");
        rep.put("wall_ms", timer.ms());
        rep.emit(report_path);
        return kExitOk;
    } catch (const RefusalError& e) {
        rep.put("status", "refused");
        rep.put("gadget", e.gadget_path);
        rep.put("error", e.what());
        rep.put("wall_ms", timer.ms());
        rep.emit(report_path);
        return kExitViolation;
    }
}

int cmd_check_gadgets(const std::string& report_path) {
    Timer timer;
    RunReport rep;
    rep.put("command", "check-gadgets");
    int failures = 0;
    auto record = [&](const std::string& name, bool ok, const std::string& msg = "") {
        rep.put(name, ok ? "pass" : "FAIL " + msg);
        if (!ok)
            ++failures;
    };

    {
        GadgetBuilder gb;
        Vid s = gb.fresh("s");
        auto f = gb.attach_fence({s}, "fence");
        auto first = exhaustive_first_step_check(gb.graph(), f);
        record("fence.first_step", first.ok, first.message);
        SequenceBuilder sb(gb.graph());
        contract_fence(sb, f);
        record("fence.contract", std::move(sb).take().steps.size() == 11 ? true : false);
    }
    {
        GadgetBuilder gb;
        auto v1 = gb.vertical_set("v1");
        auto v2 = gb.vertical_set("v2");
        gb.add_propagation_arc(v1, v2);
        bool ok = true;
        std::string msg;
        for (const auto& f : gb.fences()) {
            auto r = exhaustive_first_step_check(gb.graph(), f);
            if (!r.ok) {
                ok = false;
                msg = r.message;
            }
        }
        record("vertical.first_step", ok, msg);
    }
    for (int side : {1, 2}) {
        GadgetBuilder gb;
        auto in1 = gb.vertical_set("in1");
        auto in2 = gb.vertical_set("in2");
        auto outv = gb.vertical_set("out");
        auto orh = gb.or_gadget(in1, in2, outv, "or");
        SequenceBuilder sb(gb.graph());
        sb.contract(side == 1 ? in1.x : in2.x, side == 1 ? in1.y : in2.y);
        contract_or(sb, orh, side);
        bool ok = sb.max_width_seen() <= 4;
        record("or.side" + std::to_string(side), ok);
    }
    for (bool top : {true, false}) {
        GadgetBuilder gb;
        auto var = gb.variable_gadget("var");
        SequenceBuilder sb(gb.graph());
        contract_variable_half(sb, var, top);
        sb.contract(var.hg1.x, var.hg1.y);
        sb.contract(var.hg2.x, var.hg2.y);
        contract_variable_rest(sb, var);
        record(std::string("variable.") + (top ? "top" : "bot"), sb.max_width_seen() <= 4);
    }
    {
        GadgetBuilder gb;
        gb.variable_gadget("var");
        bool ok = true;
        std::string msg;
        for (const auto& f : gb.fences()) {
            auto att = check_attachment_rule(gb.graph(), f);
            if (!att.ok) {
                ok = false;
                msg = f.path + ": " + att.message;
            }
        }
        record("variable.attachment", ok, msg);
    }
    rep.put("status", failures == 0 ? "ok" : "violation");
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return failures == 0 ? kExitOk : kExitViolation;
}

int cmd_stats(const std::string& graph_path, const std::string& report_path) {
    Timer timer;
    RunReport rep;
    Trigraph g = parse_trigraph_file(graph_path);
    rep.put("command", "stats");
    rep.put("graph", graph_path);
    rep.put("vertices", g.n());
    rep.put("black_edges", static_cast<long long>(g.black_edge_count()));
    rep.put("red_edges", static_cast<long long>(g.red_edge_count()));
    rep.put("max_red_degree", g.max_red_degree());
    std::map<int, int> hist;
    for (Vid v : g.vertices())
        ++hist[g.degree(v)];
    for (auto [d, cnt] : hist)
        rep.put("degree[" + std::to_string(d) + "]", cnt);
    auto comps = g.red_components();
    std::size_t nontrivial = 0;
    for (const auto& c : comps)
        if (c.size() > 1)
            ++nontrivial;
    rep.put("red_components", static_cast<long long>(nontrivial));
    rep.put("graph_digest", hex64(trigraph_digest(g)));
    rep.put("status", "ok");
    rep.put("wall_ms", timer.ms());
    rep.emit(report_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twin-width toolkit"};
    app.require_subcommand(1);
    int seed = 0;
    app.add_option("--seed", seed, "seed for randomized helpers (kept for reproducibility)");

    std::string report_path;
    app.add_option("--report", report_path, "write the run report to this path");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check contraction sequence certificates");
    verify_cmd->fallthrough();
    std::string v_graph;
    std::vector<std::string> v_seqs;
    int v_d = 0, v_jobs = 1;
    bool v_d_set = false;
    verify_cmd->add_option("graph", v_graph)->required();
    verify_cmd->add_option("sequences", v_seqs)->required();
    verify_cmd->add_option("--d", v_d)->each([&](const std::string&) { v_d_set = true; });
    verify_cmd->add_option("--jobs", v_jobs);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "exact twin-width for small instances");
    solve_cmd->fallthrough();
    std::string s_graph, s_out;
    int s_decide = 0, s_dcap = 8;
    bool s_decide_set = false;
    std::uint64_t s_nodes = 5'000'000;
    double s_secs = 120.0;
    solve_cmd->add_option("graph", s_graph)->required();
    solve_cmd->add_option("--decide", s_decide)->each([&](const std::string&) { s_decide_set = true; });
    solve_cmd->add_option("--budget-nodes", s_nodes);
    solve_cmd->add_option("--budget-secs", s_secs);
    solve_cmd->add_option("--d-cap", s_dcap);
    solve_cmd->add_option("--out", s_out);

    // subdivide
    auto* sub_cmd = app.add_subcommand("subdivide", "build a long subdivision and its 4-sequence");
    sub_cmd->fallthrough();
    std::string sub_graph, sub_len = "auto", sub_out, sub_wit;
    sub_cmd->add_option("graph", sub_graph)->required();
    sub_cmd->add_option("--length", sub_len, "subdivision length or 'auto'");
    sub_cmd->add_option("--out", sub_out, "write the subdivided trigraph here");
    sub_cmd->add_option("--emit-witness", sub_wit, "write the 4-sequence here");

    // encode
    auto* enc_cmd = app.add_subcommand("encode", "encode red components into plain graphs");
    enc_cmd->fallthrough();
    std::string e_graph, e_out, e_plan;
    int e_d = 2, e_t = 0;
    bool e_force = false;
    enc_cmd->add_option("graph", e_graph)->required();
    enc_cmd->add_option("--d", e_d)->required();
    enc_cmd->add_option("--t-override", e_t);
    enc_cmd->add_flag("--force", e_force);
    enc_cmd->add_option("--out", e_out);
    enc_cmd->add_option("--plan", e_plan);

    // reduce
    auto* red_cmd = app.add_subcommand("reduce", "3-SAT to twin-width-4 instance");
    red_cmd->fallthrough();
    std::string r_cnf, r_out, r_manifest;
    red_cmd->add_option("cnf", r_cnf)->required();
    red_cmd->add_option("--out", r_out)->required();
    red_cmd->add_option("--manifest", r_manifest)->required();

    // witness
    auto* wit_cmd = app.add_subcommand("witness", "synthesize a 4-sequence from an assignment");
    wit_cmd->fallthrough();
    std::string w_graph, w_manifest, w_assignment = "auto", w_out;
    wit_cmd->add_option("graph", w_graph)->required();
    wit_cmd->add_option("manifest", w_manifest)->required();
    wit_cmd->add_option("--assignment", w_assignment, "file of literals/bits, or 'auto'");
    wit_cmd->add_option("--out", w_out);

    // check-gadgets
    auto* chk_cmd = app.add_subcommand("check-gadgets", "run the gadget self-test battery");
    chk_cmd->fallthrough();

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "trigraph statistics");
    stats_cmd->fallthrough();
    std::string st_graph;
    stats_cmd->add_option("graph", st_graph)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify_cmd->parsed())
            return cmd_verify(v_graph, v_seqs, v_d, v_d_set, v_jobs, report_path);
        if (solve_cmd->parsed())
            return cmd_solve(s_graph, s_decide, s_decide_set, s_nodes, s_secs, s_dcap, s_out,
                             report_path);
        if (sub_cmd->parsed())
            return cmd_subdivide(sub_graph, sub_len, sub_out, sub_wit, report_path);
        if (enc_cmd->parsed())
            return cmd_encode(e_graph, e_d, e_t, e_force, e_out, e_plan, report_path);
        if (red_cmd->parsed())
            return cmd_reduce(r_cnf, r_out, r_manifest, report_path);
        if (wit_cmd->parsed())
            return cmd_witness(w_graph, w_manifest, w_assignment, w_out, report_path);
        if (chk_cmd->parsed())
            return cmd_check_gadgets(report_path);
        if (stats_cmd->parsed())
            return cmd_stats(st_graph, report_path);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const RefusalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    } catch (const TwwError& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::string what = e.what();
        if (what.find("cannot open") != std::string::npos ||
            what.find("cannot write") != std::string::npos)
            return kExitIo;
        return kExitViolation;
    }
    return kExitUsage;
}
