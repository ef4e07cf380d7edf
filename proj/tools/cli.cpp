#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fsscode/constructors.hpp"
#include "fsscode/girth.hpp"
#include "fsscode/ldpc_sim.hpp"
#include "fsscode/qc_lift.hpp"
#include "fsscode/search_policy.hpp"
#include "fsscode/serialize.hpp"
#include "fsscode/set_system.hpp"
#include "fsscode/shift_search.hpp"

#ifndef FSSCODE_DATA_DIR
#define FSSCODE_DATA_DIR "data"
#endif

namespace fss::cli {

namespace {

struct PolicyArgs {
    std::string order = "ascending";
    std::uint64_t budget = SearchPolicy{}.budget;
    std::uint64_t seed = 0;

    SearchPolicy resolve() const {
        SearchPolicy p;
        p.order = parse_candidate_order(order);
        p.budget = budget;
        p.seed = seed;
        return p;
    }
};

void add_policy(CLI::App* cmd, PolicyArgs& p) {
    cmd->add_option("--order", p.order, "Candidate order: ascending or seeded-random")->capture_default_str();
    cmd->add_option("--budget", p.budget, "Maximum candidate evaluations")->capture_default_str();
    cmd->add_option("--seed", p.seed, "Seed for the random candidate order")->capture_default_str();
}

json policy_json(const SearchPolicy& p) {
    return json{{"order", to_string(p.order)}, {"budget", p.budget}, {"seed", p.seed}};
}

json header(const std::string& command, json params, std::uint64_t seed) {
    return json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command},
                {"params", std::move(params)}, {"seed", seed}};
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

/// Accepts a bare set-system document or any artifact embedding one under "fss".
SetSystem load_fss(const std::string& path) {
    const json j = load_json(path);
    return set_system_from_json(j.contains("fss") ? j.at("fss") : j);
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

/// Non-JSON artifacts get their metadata in a sidecar next to the file.
void emit_text(const std::string& text, const json& meta, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    write_file(path, text);
    write_file(path + ".meta.json", meta.dump(2) + "\n");
}

int status_exit(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return kOk;
        case SearchStatus::Infeasible: return kInfeasible;
        case SearchStatus::Unknown: return kUnknown;
    }
    return kError;
}

WalkRule parse_rule(bool relaxed) { return relaxed ? WalkRule::Relaxed : WalkRule::Strict; }

std::string rule_name(WalkRule r) { return r == WalkRule::Strict ? "strict" : "relaxed"; }

struct Check {
    std::string name;
    bool pass;
    json detail;
};

json run_checks(const std::string& id, const std::vector<Check>& checks) {
    bool all = true;
    json list = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        list.push_back(json{{"check", c.name}, {"result", c.pass ? "PASS" : "FAIL"}, {"detail", c.detail}});
    }
    return json{{"row", id}, {"result", all ? "PASS" : "FAIL"}, {"checks", std::move(list)}};
}

json verify_code(const json& row) {
    const SetSystem fss = set_system_from_json(row.at("fss"));
    const auto m = row.at("m").get<std::size_t>();
    const auto girth = row.at("girth").get<std::size_t>();
    const auto n = row.at("n").get<std::size_t>();
    const ShiftSequence s = ShiftSequence::import(fss, m, row.at("shifts").get<std::vector<long long>>());
    const BinaryMatrix h = expand(assemble(fss, s));
    const GirthReport g = tanner_girth(h, girth);
    std::vector<Check> checks;
    checks.push_back({"length", h.cols() == n, json{{"expected", n}, {"actual", h.cols()}}});
    checks.push_back({"tanner_girth", g.girth == girth, json{{"expected", girth}, {"actual", to_json(g, h.rows())}}});
    return run_checks(row.at("id").get<std::string>(), checks);
}

json verify_lifted(const json& row) {
    std::vector<Check> checks;
    const SetSystem prim = set_system_from_json(row.at("primitive"));
    const auto pg = row.at("primitive_girth").get<std::size_t>();
    const GirthReport g0 = inevitable_girth(prim, pg / 2);
    checks.push_back({"primitive_girth", g0.girth == pg, json{{"expected", pg}, {"actual", to_json(g0)}}});
    if (row.contains("blocks")) {
        json doc{{"v", row.at("v")}, {"t", 2}, {"blocks", row.at("blocks")}};
        const SetSystem lifted = set_system_from_json(doc);
        const auto b = row.at("b").get<std::size_t>();
        checks.push_back({"block_count", lifted.b() == b, json{{"expected", b}, {"actual", lifted.b()}}});
        const auto target = row.at("girth").get<std::size_t>();
        const GirthReport g = inevitable_girth(lifted, target / 2);
        checks.push_back({"girth", g.girth == target, json{{"expected", target}, {"actual", to_json(g)}}});
    }
    return run_checks(row.at("id").get<std::string>(), checks);
}

json verify_profile(const json& row) {
    std::vector<Check> checks;
    json doc{{"v", row.at("v")}, {"t", 2}, {"blocks", row.at("blocks")}};
    const SetSystem fss = set_system_from_json(doc);
    std::vector<std::size_t> sizes;
    for (const auto& blk : fss.blocks()) sizes.push_back(blk.size());
    const auto profile = row.at("K").get<std::vector<std::size_t>>();
    checks.push_back({"weight_profile", sizes == profile, json{{"expected", profile}, {"actual", sizes}}});
    const auto target = row.at("girth").get<std::size_t>();
    const GirthReport g = inevitable_girth(fss, target / 2);
    checks.push_back({"girth", g.girth == target, json{{"expected", target}, {"actual", to_json(g)}}});
    return run_checks(row.at("id").get<std::string>(), checks);
}

json verify_incidence(const json& ex) {
    const SetSystem fss = set_system_from_json(ex.at("fss"));
    const auto dense = incidence_matrix(fss, 1).to_dense();
    std::vector<std::string> rows;
    for (const auto& r : dense) {
        std::string line;
        for (int x : r) line.push_back(x ? '1' : '0');
        rows.push_back(line);
    }
    const auto expected = ex.at("incidence_rows").get<std::vector<std::string>>();
    return run_checks("example2-incidence", {{"incidence_matrix", rows == expected, json{{"rows", rows}}}});
}

std::map<std::string, json> reference_rows(const json& data) {
    std::map<std::string, json> rows;
    for (const char* kind : {"qc_codes", "lifted_systems", "profile_systems"}) {
        for (const auto& r : data.at(kind)) {
            json tagged = r;
            tagged["kind"] = kind;
            rows.emplace(r.at("id").get<std::string>(), std::move(tagged));
        }
    }
    json ex = data.at("incidence_example");
    ex["kind"] = "incidence_example";
    rows.emplace("example2-incidence", std::move(ex));
    return rows;
}

json verify_row(const json& row) {
    const auto kind = row.at("kind").get<std::string>();
    if (kind == "qc_codes") return verify_code(row);
    if (kind == "lifted_systems") return verify_lifted(row);
    if (kind == "profile_systems") return verify_profile(row);
    return verify_incidence(row);
}

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double x = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad SNR value '" + item + "'");
        out.push_back(x);
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasi-cyclic LDPC codes from finite set systems", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string output;
    std::string fss_path;
    std::string alist_path;
    PolicyArgs policy_args;
    std::size_t cap = kDefaultWalkCap;
    bool relaxed = false;
    std::size_t girth = 0;
    std::size_t m = 0;
    std::vector<std::size_t> m_schedule;
    std::size_t v = 0;
    std::vector<std::size_t> profile;
    std::string job_path;
    std::size_t seeds = 1;
    std::size_t workers = 1;
    std::string cache_dir = template_cache_dir();
    std::string shifts_path;
    bool normalize = false;
    std::size_t tanner_cap = 24;
    std::string snr;
    std::optional<double> rate;
    std::uint64_t sim_seed = 1;
    std::size_t max_iter = kDefaultMaxIterations;
    std::uint64_t min_frame_errors = StopRule{}.min_frame_errors;
    std::uint64_t max_frames = StopRule{}.max_frames;
    std::vector<std::string> rows;
    bool list_rows = false;
    std::string data_path = std::string(FSSCODE_DATA_DIR) + "/reference_vectors.json";

    auto out_opt = [&](CLI::App* c) { c->add_option("-o,--output", output, "Write the result here instead of stdout"); };

    auto* stats = app.add_subcommand("stats", "Block sizes, replication and coverage counts of a set system");
    stats->add_option("--fss", fss_path, "Set-system JSON")->required();
    out_opt(stats);

    auto* girth_cmd = app.add_subcommand("girth", "Largest achievable girth g(B) via inevitable walks");
    girth_cmd->add_option("--fss", fss_path, "Set-system JSON")->required();
    girth_cmd->add_option("--cap", cap, "Longest walk tried")->capture_default_str();
    girth_cmd->add_flag("--relaxed", relaxed, "Allow repeated successive blocks when the points differ");
    out_opt(girth_cmd);

    auto* m1 = app.add_subcommand("method1", "Recursive lifting of a primitive set system");
    m1->add_option("--fss", fss_path, "Primitive set-system JSON")->required();
    m1->add_option("--girth", girth, "Target g(B)")->required();
    m1->add_option("--m", m_schedule, "Lifting moduli to try, in order")->delimiter(',')->required();
    add_policy(m1, policy_args);
    out_opt(m1);

    auto* m2 = app.add_subcommand("method2", "Backtracking construction under a block-size profile");
    m2->add_option("--job", job_path, "JSON job {\"v\", \"K\", \"girth\", \"policy\"}");
    m2->add_option("--v", v, "Number of points");
    m2->add_option("--K", profile, "Block sizes")->delimiter(',');
    m2->add_option("--girth", girth, "Target g(B)");
    m2->add_flag("--relaxed", relaxed, "Use the relaxed walk rule");
    add_policy(m2, policy_args);
    out_opt(m2);

    auto* sh = app.add_subcommand("shifts", "Shift sequence reaching a target Tanner girth");
    sh->add_option("--fss", fss_path, "Set-system JSON")->required();
    sh->add_option("--m", m, "Circulant size")->required();
    sh->add_option("--girth", girth, "Target Tanner girth")->required();
    sh->add_option("--seeds", seeds, "Portfolio size: seeds seed, seed+1, ...")->capture_default_str();
    sh->add_option("--workers", workers, "Threads for the portfolio")->capture_default_str();
    sh->add_option("--cache", cache_dir, "Walk-template cache directory (default from FSSCODE_TEMPLATE_CACHE)");
    add_policy(sh, policy_args);
    out_opt(sh);

    auto* ex = app.add_subcommand("expand", "Lift a set system with shifts to a parity-check matrix (alist)");
    ex->add_option("--fss", fss_path, "Set-system JSON");
    ex->add_option("--shifts", shifts_path, "Shift JSON (may embed the set system)")->required();
    ex->add_flag("--normalize", normalize, "Zero the first shift of every block-column first");
    out_opt(ex);

    auto* tg = app.add_subcommand("tgirth", "Tanner-graph girth of an alist matrix");
    tg->add_option("--alist", alist_path, "Parity-check matrix")->required();
    tg->add_option("--cap", tanner_cap, "Longest cycle searched")->capture_default_str();
    out_opt(tg);

    auto* sim = app.add_subcommand("simulate", "BPSK/AWGN bit-error-rate sweep with sum-product decoding");
    sim->add_option("--alist", alist_path, "Parity-check matrix")->required();
    sim->add_option("--snr", snr, "Comma-separated Eb/N0 grid in dB, ascending")->required();
    sim->add_option("--rate", rate, "Rate for the Eb/N0 conversion (default 1 - rows/cols)");
    sim->add_option("--seed", sim_seed, "Run seed")->capture_default_str();
    sim->add_option("--max-iter", max_iter, "Decoder iteration limit")->capture_default_str();
    sim->add_option("--min-frame-errors", min_frame_errors, "Stop a point after this many frame errors")
        ->capture_default_str();
    sim->add_option("--max-frames", max_frames, "Stop a point after this many frames")->capture_default_str();
    sim->add_option("--workers", workers, "Decoding threads")->capture_default_str();
    out_opt(sim);

    auto* vt = app.add_subcommand("verify-table", "Check bundled reference rows");
    vt->add_option("--row", rows, "Row id, or 'all'");
    vt->add_flag("--list", list_rows, "List row ids");
    vt->add_option("--data", data_path, "Reference data file")->capture_default_str();
    out_opt(vt);

    std::vector<const char*> argv{kToolName};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, err, err);
    } catch (const CLI::ParseError& e) {
        out << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
        return kError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "stats") {
            const SetSystem fss = load_fss(fss_path);
            json doc = header(command, json{{"fss", fss_path}}, 0);
            doc["fss"] = to_json(fss);
            doc["stats"] = to_json(block_stats(fss));
            emit(doc, output, out);
            return kOk;
        }
        if (command == "girth") {
            const SetSystem fss = load_fss(fss_path);
            const WalkRule rule = parse_rule(relaxed);
            const GirthReport g = inevitable_girth(fss, cap, rule);
            json doc = header(command, json{{"fss", fss_path}, {"cap", cap}, {"rule", rule_name(rule)}}, 0);
            doc.update(to_json(g));
            emit(doc, output, out);
            return kOk;
        }
        if (command == "method1") {
            const SetSystem prim = load_fss(fss_path);
            const SearchPolicy policy = policy_args.resolve();
            const Method1Result r = method1(prim, girth, m_schedule, policy);
            json doc = header(command,
                              json{{"primitive", to_json(prim)}, {"girth", girth}, {"m_schedule", m_schedule},
                                   {"lifted_girth", method1_lifted_girth(girth)}, {"policy", policy_json(policy)}},
                              policy.seed);
            doc["status"] = to_string(r.status);
            json stages = json::array();
            for (const auto& st : r.stages) {
                stages.push_back(json{{"m", st.m}, {"lifted_girth", st.lifted_girth}, {"girth", to_json(st.girth)}});
            }
            doc["stages"] = std::move(stages);
            if (r.status == SearchStatus::Found) {
                doc["fss"] = to_json(r.system);
                doc["verification"] = to_json(r.girth);
            }
            emit(doc, output, out);
            return status_exit(r.status);
        }
        if (command == "method2") {
            SearchPolicy policy = policy_args.resolve();
            if (!job_path.empty()) {
                const json job = load_json(job_path);
                v = job.at("v").get<std::size_t>();
                profile = job.at("K").get<std::vector<std::size_t>>();
                girth = job.at("girth").get<std::size_t>();
                if (job.contains("policy")) {
                    const json& p = job.at("policy");
                    if (p.contains("order")) policy.order = parse_candidate_order(p.at("order").get<std::string>());
                    if (p.contains("budget")) policy.budget = p.at("budget").get<std::uint64_t>();
                    if (p.contains("seed")) policy.seed = p.at("seed").get<std::uint64_t>();
                }
            }
            if (v == 0 || profile.empty() || girth == 0) {
                throw std::invalid_argument("method2 needs --v, --K and --girth, or --job");
            }
            const WalkRule rule = parse_rule(relaxed);
            const Method2Result r = method2(v, WeightProfile(profile), girth, policy, rule);
            json doc = header(command,
                              json{{"v", v}, {"K", profile}, {"girth", girth}, {"rule", rule_name(rule)},
                                   {"policy", policy_json(policy)}},
                              policy.seed);
            doc["status"] = to_string(r.status);
            doc["stats"] = json{{"expansions", r.stats.expansions}, {"backtracks", r.stats.backtracks}};
            if (r.system) {
                doc["fss"] = to_json(*r.system);
                doc["verification"] = to_json(r.verification);
            }
            emit(doc, output, out);
            return status_exit(r.status);
        }
        if (command == "shifts") {
            const SetSystem fss = load_fss(fss_path);
            const SearchPolicy policy = policy_args.resolve();
            const ShiftSearchResult r = seeds > 1 ? search_shifts_portfolio(fss, m, girth, policy, seeds, workers)
                                                  : search_shifts(fss, m, girth, policy, cache_dir);
            json params{{"fss", to_json(fss)}, {"m", m}, {"girth", girth}, {"policy", policy_json(policy)}};
            if (seeds > 1) {
                params["seeds"] = seeds;
                params["workers"] = workers;
            }
            json doc = header(command, std::move(params), r.seed);
            doc["status"] = to_string(r.status);
            doc["target_flagged"] = r.target_flagged;
            doc["stats"] = json{{"expansions", r.stats.expansions},
                                {"wipeouts", r.stats.wipeouts},
                                {"restarts", r.stats.restarts},
                                {"backtracks", r.stats.backtracks},
                                {"templates", r.stats.templates},
                                {"max_templates_per_incidence", r.stats.max_templates_per_incidence}};
            doc["fss"] = to_json(fss);
            if (r.shifts) {
                const json sj = to_json(fss, *r.shifts);
                doc["m"] = sj.at("m");
                doc["shifts"] = sj.at("shifts");
            }
            emit(doc, output, out);
            return status_exit(r.status);
        }
        if (command == "expand") {
            const json sj = load_json(shifts_path);
            if (fss_path.empty() && !sj.contains("fss")) {
                throw std::invalid_argument("expand needs --fss unless the shift file embeds the set system");
            }
            const SetSystem fss = fss_path.empty() ? set_system_from_json(sj.at("fss")) : load_fss(fss_path);
            const ShiftSequence s = shifts_from_json(fss, sj);
            QCProtoMatrix q = assemble(fss, s);
            if (normalize) q = normalize_shifts(q);
            const BinaryMatrix h = expand(q);
            json meta = header(command,
                               json{{"fss", to_json(fss)}, {"shifts", to_json(fss, s)}, {"normalize", normalize}}, 0);
            meta["rows"] = h.rows();
            meta["cols"] = h.cols();
            emit_text(to_alist(h), meta, output, out);
            return kOk;
        }
        if (command == "tgirth") {
            const BinaryMatrix h = from_alist(read_file(alist_path));
            const GirthReport g = tanner_girth(h, tanner_cap);
            json doc = header(command, json{{"alist", alist_path}, {"cap", tanner_cap}}, 0);
            doc["rows"] = h.rows();
            doc["cols"] = h.cols();
            doc.update(to_json(g, h.rows()));
            emit(doc, output, out);
            return kOk;
        }
        if (command == "simulate") {
            const BinaryMatrix h = from_alist(read_file(alist_path));
            SweepConfig cfg;
            cfg.rate = rate ? *rate : 1.0 - static_cast<double>(h.rows()) / static_cast<double>(h.cols());
            cfg.seed = sim_seed;
            cfg.max_iter = max_iter;
            cfg.workers = workers;
            cfg.stop = {min_frame_errors, max_frames};
            const auto grid = parse_snr_grid(snr);
            const auto records = ber_sweep(h, grid, cfg);
            json meta = header(command,
                               json{{"alist", alist_path}, {"snr", grid}, {"rate", cfg.rate},
                                    {"max_iter", max_iter}, {"min_frame_errors", min_frame_errors},
                                    {"max_frames", max_frames}, {"workers", workers}},
                               sim_seed);
            emit_text(ber_csv(records), meta, output, out);
            return kOk;
        }
        if (command == "verify-table") {
            const json data = load_json(data_path);
            const auto all = reference_rows(data);
            if (list_rows) {
                json ids = json::array();
                for (const auto& [id, row] : all) ids.push_back(id);
                emit(json{{"rows", ids}}, output, out);
                return kOk;
            }
            if (rows.empty()) throw std::invalid_argument("verify-table needs --row or --list");
            std::vector<std::string> ids;
            for (const auto& r : rows) {
                if (r == "all") {
                    for (const auto& [id, row] : all) ids.push_back(id);
                } else {
                    ids.push_back(r);
                }
            }
            json doc = header(command, json{{"rows", ids}, {"data", data_path}}, 0);
            json reports = json::array();
            bool pass = true;
            for (const auto& id : ids) {
                auto it = all.find(id);
                if (it == all.end()) throw std::invalid_argument("unknown row '" + id + "'");
                json rep = verify_row(it->second);
                pass = pass && rep.at("result") == "PASS";
                reports.push_back(std::move(rep));
            }
            doc["result"] = pass ? "PASS" : "FAIL";
            doc["reports"] = std::move(reports);
            emit(doc, output, out);
            return pass ? kOk : kError;
        }
    } catch (const std::exception& e) {
        out << json{{"error", e.what()}, {"command", command}}.dump() << "\n";
        return kError;
    }
    return kError;
}

}  // namespace fss::cli
