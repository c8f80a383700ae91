#include "solenoid/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "solenoid/analysis.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/serialize.hpp"
#include "solenoid/strategies.hpp"
#include "solenoid/verify.hpp"

namespace solenoid {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const std::string& t : split_list(s)) out.push_back(Rational::parse(t));
    return out;
}

PrimeSet parse_primes(const std::string& s) {
    std::vector<unsigned long> ps;
    for (const Rational& q : parse_rationals(s)) {
        if (!q.is_integer() || q.sign() <= 0)
            throw DomainError("primes: expected positive integers, got " + q.str());
        ps.push_back(q.num().get_ui());
    }
    return PrimeSet(ps);
}

// A single rational denotes the diagonal point; otherwise one coordinate per
// place, real first.
Point parse_point(const PrimeSet& P, const std::string& s) {
    std::vector<Rational> parts = parse_rationals(s);
    if (parts.size() == 1) return diagonal(P, parts[0]);
    if (parts.size() != P.places())
        throw DomainError("point: expected 1 or " + std::to_string(P.places()) +
                          " coordinates, got '" + s + "'");
    Point x;
    x.real = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) x.padic.push_back(parts[i]);
    return x;
}

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw DomainError("cannot write " + tmp.string());
        f << content;
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string outcome_str(Outcome o) {
    switch (o) {
        case Outcome::completed: return "completed";
        case Outcome::bob_default_win: return "bob_default_win";
        default: return "running";
    }
}

// ---------------------------------------------------------------- simulate

struct SimulateSpec {
    std::string primes = "2,3";
    std::vector<std::string> maps;
    std::vector<std::string> translations;
    std::vector<std::string> targets;
    std::string beta = "3/10";
    std::size_t depth = 25;
    std::size_t runs = 1;
    std::uint64_t seed = 1;
    std::string bob = "random";
    std::string center = "0";
    std::string radius = "1/4";
    std::string out_dir;
};

std::unique_ptr<BobStrategy> make_bob(const PrimeSet& P, const std::string& kind,
                                      const Rational& beta, std::uint64_t seed) {
    if (kind == "escape") return std::make_unique<EscapeBob>(P, beta);
    if (kind == "stay-put") return std::make_unique<StayPutBob>(P, beta);
    if (kind == "random") return std::make_unique<RandomBob>(P, beta, seed);
    throw DomainError("unknown bob strategy '" + kind + "' (escape | random | stay-put)");
}

// Forces parameter derivation in every component so bad betas are rejected
// before the first run starts.
void probe_alice(AliceStrategy& a, const Ball& initial) {
    if (auto* il = dynamic_cast<InterleaveAlice*>(&a)) {
        for (std::size_t i = 0; i < il->child_count(); ++i) probe_alice(il->child(i), initial);
        return;
    }
    a.move(initial);
}

void collect_audits(const PrimeSet& P, AliceStrategy& alice, const Point& limit, Json& audits,
                    bool& run_ok) {
    if (auto* il = dynamic_cast<InterleaveAlice*>(&alice)) {
        for (std::size_t i = 0; i < il->child_count(); ++i)
            collect_audits(P, il->child(i), limit, audits, run_ok);
        return;
    }
    Json a;
    a["strategy"] = alice.descriptor();
    auto* av = dynamic_cast<AvoidanceAlice*>(&alice);
    if (!av) {
        a["kind"] = "none";
        a["ok"] = true;
        audits.push_back(std::move(a));
        return;
    }
    a["kind"] = "windows";
    if (!av->initialized()) {
        a["entries"] = 0;
        a["ok"] = true;
        audits.push_back(std::move(a));
        return;
    }
    WindowAuditResult res = audit_windows(P, av->map(), av->params(), window_entries(P, av->windows()));
    a["entries"] = res.entries;
    a["sets_checked"] = res.sets_checked;
    a["violations"] = res.violations;
    a["ok"] = res.ok;
    run_ok = run_ok && res.ok;
    long k_max = -1;
    for (const WindowRecord& w : av->windows())
        if (w.has_reply && w.k > k_max) k_max = w.k;
    if (k_max >= 0) {
        OrbitCertificate cert = orbit_certificate(P, av->map(), av->params(), limit, k_max);
        a["certificate"] = Json{{"horizon", cert.horizon},
                                {"min_distance", cert.min_distance.str()},
                                {"threshold", cert.threshold.str()},
                                {"ok", cert.ok}};
        run_ok = run_ok && cert.ok;
    }
    audits.push_back(std::move(a));
}

int cmd_simulate(SimulateSpec spec, std::ostream& out) {
    PrimeSet P = parse_primes(spec.primes);
    if (spec.maps.empty()) spec.maps = {"3/2"};
    if (spec.targets.empty()) spec.targets = {"0"};
    if (spec.translations.size() > spec.maps.size())
        throw DomainError("more translations than maps");
    if (spec.runs == 0) throw DomainError("runs must be positive");

    std::vector<AffineMap> maps;
    for (std::size_t i = 0; i < spec.maps.size(); ++i) {
        Point tr = i < spec.translations.size() ? parse_point(P, spec.translations[i])
                                                : zero_point(P);
        maps.push_back(make_affine(P, Rational::parse(spec.maps[i]), std::move(tr)));
    }
    std::vector<Point> targets;
    for (const std::string& t : spec.targets) targets.push_back(parse_point(P, t));
    Rational beta = Rational::parse(spec.beta);
    Ball initial{parse_point(P, spec.center), Rational::parse(spec.radius), true};

    auto build_alice = [&]() -> std::unique_ptr<AliceStrategy> {
        if (maps.size() == 1) return avoidance_alice(P, maps[0], targets, beta);
        std::vector<std::unique_ptr<AliceStrategy>> kids;
        Rational beta_eff = pow_int(beta, static_cast<long>(maps.size()));
        for (const AffineMap& A : maps) kids.push_back(avoidance_alice(P, A, targets, beta_eff));
        return std::make_unique<InterleaveAlice>(std::move(kids));
    };
    {
        auto probe = build_alice();
        probe_alice(*probe, initial);
    }

    if (!spec.out_dir.empty()) fs::create_directories(spec.out_dir);

    Json summary;
    summary["command"] = "simulate";
    summary["primes"] = P.list();
    Json maps_json = Json::array();
    for (const AffineMap& A : maps)
        maps_json.push_back(Json{{"linear", A.linear.str()}, {"translation", point_str(A.translation)}});
    summary["maps"] = maps_json;
    Json targets_json = Json::array();
    for (const Point& t : targets) targets_json.push_back(point_str(t));
    summary["targets"] = targets_json;
    summary["beta"] = beta.str();
    summary["depth"] = spec.depth;
    summary["runs"] = spec.runs;
    summary["seed"] = spec.seed;
    summary["bob"] = spec.bob;

    bool all_ok = true;
    Json runs_json = Json::array();
    for (std::size_t i = 0; i < spec.runs; ++i) {
        GameConfig cfg;
        cfg.beta = beta;
        cfg.max_rounds = spec.depth;
        cfg.seed = spec.seed + i;
        auto alice = build_alice();
        auto bob = make_bob(P, spec.bob, beta, cfg.seed);
        Transcript t = run_game(P, cfg, *alice, *bob, initial);

        Json rj;
        rj["run"] = i;
        rj["seed"] = cfg.seed;
        rj["outcome"] = outcome_str(t.outcome);
        rj["rounds"] = t.rounds.size();
        rj["final_radius"] =
            (t.rounds.empty() ? initial.radius : t.rounds.back().bob_ball.radius).str();
        if (t.fault)
            rj["fault"] = Json{{"round", t.fault->round},
                               {"actor", t.fault->actor},
                               {"reason", t.fault->reason}};
        else
            rj["fault"] = nullptr;

        bool run_ok = t.outcome == Outcome::completed && !t.fault;
        Json audits = Json::array();
        collect_audits(P, *alice, t.limit, audits, run_ok);
        rj["audits"] = audits;
        rj["ok"] = run_ok;
        all_ok = all_ok && run_ok;

        if (!spec.out_dir.empty())
            atomic_write(fs::path(spec.out_dir) / ("run_" + std::to_string(i) + ".json"),
                         transcript_dump(t));
        runs_json.push_back(std::move(rj));
    }
    summary["runs_detail"] = runs_json;
    summary["ok"] = all_ok;

    std::string text = summary.dump(2) + "\n";
    out << text;
    if (!spec.out_dir.empty()) atomic_write(fs::path(spec.out_dir) / "summary.json", text);
    return all_ok ? 0 : 1;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeSpec {
    std::string sweep;
    std::string xs;
    std::string primes = "2,3";
    std::string betas;
    std::string beta = "1/210";
    std::string radii;
    std::size_t max_primes = 6;
    std::string out_path;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

int cmd_analyze(const AnalyzeSpec& spec, std::ostream& out) {
    std::ostringstream csv;
    bool all_ok = true;
    if (spec.sweep == "pp") {
        csv << "x,product,neg_log_product,theta,margin,ell,quadratic_ok,intermediate_ok,ok\n";
        for (const Rational& x : parse_rationals(spec.xs)) {
            ProductBoundReport r = product_bound_check_all(x);
            csv << r.x.str() << ',' << r.product.str() << ',' << decimal_str(r.neg_log_product)
                << ',' << decimal_str(r.theta) << ',' << decimal_str(r.margin) << ',' << r.ell
                << ',' << bool_str(r.quadratic_ok) << ',' << bool_str(r.intermediate_ok) << ','
                << bool_str(r.ok) << '\n';
            all_ok = all_ok && r.ok;
        }
    } else if (spec.sweep == "dim") {
        PrimeSet P = parse_primes(spec.primes);
        csv << "beta,count_lower_min,dim_lower\n";
        for (const Rational& b : parse_rationals(spec.betas)) {
            Int c = packing_count_lower_min(b, P);
            csv << b.str() << ',' << c.get_str() << ','
                << decimal_str(dimension_lower_bound(b, P)) << '\n';
        }
    } else if (spec.sweep == "haar") {
        PrimeSet P = parse_primes(spec.primes);
        csv << "r,bound,exact,within\n";
        for (const Rational& r : parse_rationals(spec.radii)) {
            HaarBound h = haar_ball_bound(r, P);
            bool within = h.exact <= h.bound;
            csv << r.str() << ',' << h.bound.str() << ',' << h.exact.str() << ','
                << bool_str(within) << '\n';
            all_ok = all_ok && within;
        }
    } else if (spec.sweep == "truncation") {
        Rational beta = Rational::parse(spec.beta);
        csv << "m,primes,count_lower_min,dim_lower\n";
        for (std::size_t m = 1; m <= spec.max_primes; ++m) {
            PrimeSet Pm = first_primes(m);
            Int c = packing_count_lower_min(beta, Pm);
            csv << m << ',';
            for (std::size_t j = 0; j < Pm.prime_count(); ++j) {
                if (j) csv << ' ';
                csv << Pm.prime(j);
            }
            csv << ',' << c.get_str() << ',' << decimal_str(dimension_lower_bound(beta, Pm))
                << '\n';
        }
    } else {
        throw DomainError("unknown sweep '" + spec.sweep +
                          "' (pp | dim | haar | truncation)");
    }
    if (spec.out_path.empty())
        out << csv.str();
    else
        atomic_write(spec.out_path, csv.str());
    return all_ok ? 0 : 1;
}

// ------------------------------------------------------------------- fstar

struct FstarSpec {
    std::string primes = "2,3";
    std::string map = "3/2";
    std::string translation;
    std::vector<std::string> targets;
    std::string beta0 = "1/12";
    std::size_t depth = 3;
    long cap = 16;
    std::size_t samples = 2000;
    std::uint64_t seed = 1;
    std::string center = "0";
    std::string radius = "1/4";
    std::string out_path;
};

int cmd_fstar(FstarSpec spec, std::ostream& out) {
    PrimeSet P = parse_primes(spec.primes);
    if (spec.targets.empty()) spec.targets = {"0"};
    Point tr = spec.translation.empty() ? zero_point(P) : parse_point(P, spec.translation);
    AffineMap A = make_affine(P, Rational::parse(spec.map), std::move(tr));
    std::vector<Point> targets;
    for (const std::string& t : spec.targets) targets.push_back(parse_point(P, t));
    Rational beta0 = Rational::parse(spec.beta0);
    Ball initial{parse_point(P, spec.center), Rational::parse(spec.radius), true};

    AliceFactory factory = [P, A, targets, beta0]() {
        return avoidance_alice(P, A, targets, beta0);
    };
    CantorTree tree = cantor_tree(P, factory, initial, beta0, spec.depth, spec.cap);
    TreeAuditReport audit = audit_cantor_tree(P, tree, spec.samples, spec.seed);

    Json j;
    j["command"] = "fstar";
    j["primes"] = P.list();
    j["map"] = Json{{"linear", A.linear.str()}, {"translation", point_str(A.translation)}};
    j["beta0"] = tree.beta0.str();
    j["r0"] = tree.r0.str();
    j["branching"] = tree.branching;
    j["depth"] = tree.depth;
    j["nodes"] = tree.nodes.size();
    j["leaves"] = tree.leaves.size();
    j["checks"] = Json{{"uniform_arity", audit.uniform_arity},
                       {"siblings_disjoint", audit.siblings_disjoint},
                       {"separation_ok", audit.separation_ok},
                       {"address_injective", audit.address_injective},
                       {"mass_ok", audit.mass_ok}};
    j["sibling_pairs"] = audit.sibling_pairs;
    j["sampled_pairs"] = audit.sampled_pairs;
    j["s"] = decimal_str(audit.s);
    j["c2"] = decimal_str(audit.c2);
    j["ok"] = audit.ok;
    out << j.dump(2) << "\n";

    if (!spec.out_path.empty()) {
        Json tj;
        tj["beta0"] = tree.beta0.str();
        tj["r0"] = tree.r0.str();
        tj["branching"] = tree.branching;
        tj["depth"] = tree.depth;
        Json nodes = Json::array();
        for (const TreeNode& n : tree.nodes) {
            Json nj;
            nj["parent"] = n.parent;
            nj["level"] = n.level;
            nj["word"] = n.word;
            nj["ball"] = json_of(n.ball);
            nodes.push_back(std::move(nj));
        }
        tj["nodes"] = nodes;
        atomic_write(spec.out_path, tj.dump(2) + "\n");
    }
    return audit.ok ? 0 : 1;
}

// ------------------------------------------------------------ verify/replay

int cmd_verify(std::uint64_t seed, const std::string& filter, bool fault_inject,
               const std::string& out_path, std::ostream& out) {
    VerifyReport report = run_verify_suite(seed, filter, fault_inject);
    Json j;
    j["command"] = "verify";
    j["seed"] = report.seed;
    j["fault_injection"] = report.fault_injection;
    Json props = Json::array();
    for (const PropertyResult& p : report.properties)
        props.push_back(Json{{"name", p.name}, {"ok", p.ok}, {"cases", p.cases}, {"detail", p.detail}});
    j["properties"] = props;
    j["ok"] = report.ok;
    std::string text = j.dump(2) + "\n";
    out << text;
    if (!out_path.empty()) atomic_write(out_path, text);
    return report.ok ? 0 : 1;
}

int cmd_replay(const std::string& in_path, std::ostream& out) {
    Json j;
    try {
        j = Json::parse(read_file(in_path));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("replay: malformed transcript: ") + e.what());
    }
    ReplayReport rep = replay_transcript(j);
    Json r;
    r["command"] = "replay";
    r["input"] = in_path;
    r["ok"] = rep.ok;
    r["byte_identical"] = rep.byte_identical;
    r["violations"] = rep.violations;
    out << r.dump(2) << "\n";
    return rep.ok ? 0 : 1;
}

std::vector<std::string> config_args(const Json& j) {
    if (!j.is_object()) throw DomainError("config: expected a JSON object");
    if (!j.contains("command")) throw DomainError("config: missing 'command'");
    std::vector<std::string> a;
    a.push_back(j.at("command").get<std::string>());
    for (const auto& [key, v] : j.items()) {
        if (key == "command") continue;
        std::string flag = "--" + key;
        if (v.is_boolean()) {
            if (v.get<bool>()) a.push_back(flag);
        } else if (v.is_array()) {
            for (const auto& e : v) {
                a.push_back(flag);
                a.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            }
        } else if (v.is_string()) {
            a.push_back(flag);
            a.push_back(v.get<std::string>());
        } else {
            a.push_back(flag);
            a.push_back(v.dump());
        }
    }
    return a;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        CLI::App app{"Exact cylinder games and counting on solenoid product spaces"};
        app.name("solgame");
        std::string config_path;
        app.add_option("--config", config_path,
                       "JSON run config (keys match the long flag names)");
        app.require_subcommand(0, 1);

        SimulateSpec sim;
        CLI::App* s = app.add_subcommand("simulate", "Run audited avoidance games");
        s->add_option("--primes", sim.primes, "Comma-separated primes")->capture_default_str();
        s->add_option("--map", sim.maps, "Linear part of a map (repeat to intersect strategies)");
        s->add_option("--translation", sim.translations,
                      "Translation point for the map at the same position");
        s->add_option("--target", sim.targets, "Point whose orbit is avoided (repeatable)");
        s->add_option("--beta", sim.beta, "Bob's radius floor")->capture_default_str();
        s->add_option("--depth", sim.depth, "Rounds per run")->capture_default_str();
        s->add_option("--runs", sim.runs, "Number of seeded runs")->capture_default_str();
        s->add_option("--seed", sim.seed, "Base seed; run i uses seed+i")->capture_default_str();
        s->add_option("--bob", sim.bob, "escape | random | stay-put")->capture_default_str();
        s->add_option("--center", sim.center, "Initial ball center")->capture_default_str();
        s->add_option("--radius", sim.radius, "Initial ball radius")->capture_default_str();
        s->add_option("--out", sim.out_dir, "Directory for run_<i>.json and summary.json");

        AnalyzeSpec an;
        CLI::App* a = app.add_subcommand("analyze", "Counting and dimension sweeps (CSV)");
        a->add_option("--sweep", an.sweep, "pp | dim | haar | truncation")->required();
        a->add_option("--x", an.xs, "Comma-separated x values (pp sweep)");
        a->add_option("--primes", an.primes, "Comma-separated primes")->capture_default_str();
        a->add_option("--betas", an.betas, "Comma-separated betas (dim sweep)");
        a->add_option("--beta", an.beta, "Fixed beta (truncation sweep)")->capture_default_str();
        a->add_option("--radii", an.radii, "Comma-separated radii (haar sweep)");
        a->add_option("--max-primes", an.max_primes, "Truncation sizes 1..m")
            ->capture_default_str();
        a->add_option("--out", an.out_path, "CSV output file (stdout when absent)");

        FstarSpec fs_spec;
        CLI::App* f = app.add_subcommand("fstar", "Build and audit a Cantor scheme");
        f->add_option("--primes", fs_spec.primes, "Comma-separated primes")->capture_default_str();
        f->add_option("--map", fs_spec.map, "Linear part of the map")->capture_default_str();
        f->add_option("--translation", fs_spec.translation, "Translation point");
        f->add_option("--target", fs_spec.targets, "Avoided point (repeatable)");
        f->add_option("--beta0", fs_spec.beta0, "Scheme parameter")->capture_default_str();
        f->add_option("--depth", fs_spec.depth, "Tree depth")->capture_default_str();
        f->add_option("--cap", fs_spec.cap, "Branching cap")->capture_default_str();
        f->add_option("--samples", fs_spec.samples, "Cross-branch separation samples")
            ->capture_default_str();
        f->add_option("--seed", fs_spec.seed, "Sampling seed")->capture_default_str();
        f->add_option("--center", fs_spec.center, "Root ball center")->capture_default_str();
        f->add_option("--radius", fs_spec.radius, "Root ball radius")->capture_default_str();
        f->add_option("--out", fs_spec.out_path, "Tree JSON output file");

        std::uint64_t vseed = 1;
        std::string vfilter;
        bool vfault = false;
        std::string vout;
        CLI::App* v = app.add_subcommand("verify", "Run the invariant property suite");
        v->add_option("--seed", vseed, "Suite seed")->capture_default_str();
        v->add_option("--filter", vfilter, "Keep properties whose name contains this");
        v->add_flag("--fault-inject", vfault,
                    "Loosen the live radius audit so strict replay must fail");
        v->add_option("--out", vout, "Report JSON output file");

        std::string rin;
        CLI::App* r = app.add_subcommand("replay", "Strictly re-audit a transcript file");
        r->add_option("--in", rin, "Transcript JSON file")->required();

        try {
            std::vector<const char*> argv;
            argv.push_back("solgame");
            for (const std::string& arg : args) argv.push_back(arg.c_str());
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e, out, err);
            return code == 0 ? 0 : 2;
        }

        if (!config_path.empty()) {
            Json j;
            try {
                j = Json::parse(read_file(config_path));
            } catch (const nlohmann::json::exception& e) {
                throw DomainError(std::string("config: malformed JSON: ") + e.what());
            }
            return run_cli(config_args(j), out, err);
        }
        if (s->parsed()) return cmd_simulate(sim, out);
        if (a->parsed()) return cmd_analyze(an, out);
        if (f->parsed()) return cmd_fstar(fs_spec, out);
        if (v->parsed()) return cmd_verify(vseed, vfilter, vfault, vout, out);
        if (r->parsed()) return cmd_replay(rin, out);
        err << app.help();
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace solenoid
