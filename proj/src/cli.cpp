#include "fairdiv/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fairdiv/audit.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/instance_io.hpp"
#include "fairdiv/mechanisms.hpp"

namespace fairdiv::cli {

namespace {

struct Common {
    std::string format = "text";
    std::string seed;
    bool has_seed = false;
    long long max_enum = 0; // 0: fall back to FAIRDIV_MAX_ENUM, then the default
    int jobs = 0;           // 0: logical cores
};

void add_common(CLI::App* a, Common& c) {
    a->add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    a->add_option("--seed", c.seed,
                  "seed echoed into the report and used by sampled audits")
        ->each([&c](const std::string&) { c.has_seed = true; });
    a->add_option("--max-enum", c.max_enum,
                  "largest allocation count brute-force checks may enumerate "
                  "(overrides FAIRDIV_MAX_ENUM)")
        ->check(CLI::PositiveNumber);
    a->add_option("--jobs", c.jobs,
                  "worker threads for audit fan-out (default: logical cores)")
        ->check(CLI::PositiveNumber);
}

EnumBudget resolve_budget(long long flag_value) {
    EnumBudget b;
    if (flag_value > 0) {
        b.max_allocations = flag_value;
        return b;
    }
    if (const char* env = std::getenv("FAIRDIV_MAX_ENUM")) {
        const std::string s = env;
        long long v = 0;
        std::size_t pos = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || v <= 0)
            throw std::invalid_argument(
                "FAIRDIV_MAX_ENUM: expected a positive integer, got \"" + s + "\"");
        b.max_allocations = v;
    }
    return b;
}

// Numeric seeds are taken at face value; anything else hashes (FNV-1a) so a
// wordy --seed still picks a reproducible misreport sample.
unsigned long long derive_numeric_seed(const std::string& seed) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(seed, &pos);
        if (pos == seed.size()) return v;
    } catch (const std::exception&) {
    }
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : seed) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

int default_jobs() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

io::Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return io::parse_instance(buf.str());
}

const std::string* seed_ptr(const Common& c) { return c.has_seed ? &c.seed : nullptr; }

int do_solve(const io::Instance& inst, const std::string& mech, const Common& c,
             std::ostream& out) {
    const Outcome o = [&] {
        if (mech == "se") return se_mechanism(inst.profile);
        if (mech == "se-nocap") return se_variant_no_cap(inst.profile);
        if (mech == "sec") return sec_algorithm(inst.profile);
        if (mech == "vcg") return vcg_upfront(inst.profile, resolve_budget(c.max_enum));
        return winner_takes_all(inst.profile);
    }();
    if (c.format == "json")
        out << io::outcome_json(inst, o, seed_ptr(c)).dump(2) << "\n";
    else
        out << io::outcome_text(inst, o, seed_ptr(c));
    return 0;
}

int do_audit(const io::Instance& inst, const std::string& suite, const Common& c,
             std::ostream& out) {
    audit::SuiteOptions opts;
    opts.budget = resolve_budget(c.max_enum);
    opts.jobs = c.jobs > 0 ? c.jobs : default_jobs();
    if (c.has_seed) opts.seed = derive_numeric_seed(c.seed);
    std::vector<audit::AuditReport> reports = audit::run_suite(suite, inst.profile, opts);
    if (c.format == "json")
        out << io::audit_json(inst, suite, reports, seed_ptr(c)).dump(2) << "\n";
    else
        out << io::audit_text(inst, suite, reports, seed_ptr(c));
    for (const auto& r : reports)
        if (r.verdict == audit::Verdict::violated) return 1;
    return 0;
}

const char* status_tag(ValidationStatus s) {
    switch (s) {
    case ValidationStatus::valid: return "valid";
    case ValidationStatus::violated: return "violated";
    case ValidationStatus::unverified: return "unverified";
    }
    return "?";
}

int do_validate(const io::Instance& inst, const Common& c, std::ostream& out) {
    std::vector<ValidationReport> reps;
    bool violated = false, unverified = false;
    for (int i = 0; i < inst.profile.n(); ++i) {
        reps.push_back(validate_class(inst.profile[i]));
        if (reps.back().status == ValidationStatus::violated) violated = true;
        if (reps.back().status == ValidationStatus::unverified) unverified = true;
    }
    if (c.format == "json") {
        io::Json r;
        r["schema"] = "fairdiv-report/1";
        r["agents"] = static_cast<int>(inst.agents.size());
        r["items"] = static_cast<int>(inst.items.size());
        io::Json arr = io::Json::array();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            io::Json e;
            e["agent"] = inst.agents[i];
            e["class"] = val_class_str(inst.profile[static_cast<int>(i)].cls());
            e["status"] = status_tag(reps[i].status);
            io::Json issues = io::Json::array();
            for (const auto& iss : reps[i].issues) {
                io::Json ij;
                ij["axiom"] = iss.axiom;
                ij["witness"] = iss.witness;
                issues.push_back(std::move(ij));
            }
            e["issues"] = std::move(issues);
            arr.push_back(std::move(e));
        }
        r["validate"] = std::move(arr);
        out << r.dump(2) << "\n";
    } else {
        out << "agents: " << inst.agents.size() << "\n";
        out << "items: " << inst.items.size() << "\n";
        for (std::size_t i = 0; i < reps.size(); ++i) {
            out << inst.agents[i] << ": "
                << val_class_str(inst.profile[static_cast<int>(i)].cls()) << ": "
                << status_tag(reps[i].status);
            if (!reps[i].issues.empty())
                out << " (" << reps[i].issues.front().axiom << ": "
                    << reps[i].issues.front().witness << ")";
            out << "\n";
        }
        if (violated)
            out << "instance: violated\n";
        else if (unverified)
            out << "instance: valid (class checks beyond the exhaustive bound were sampled)\n";
        else
            out << "instance: valid\n";
    }
    return violated ? 2 : 0;
}

int do_fixtures(const std::string& dir, const Common& c, std::ostream& out) {
    std::filesystem::create_directories(dir);
    io::Json arr = io::Json::array();
    for (const auto& f : io::builtin_fixtures()) {
        const auto path = (std::filesystem::path(dir) / (f.name + ".json")).string();
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot write file: " + path);
        os << io::serialize_instance(f.instance);
        if (c.format == "json") {
            io::Json e;
            e["name"] = f.name;
            e["description"] = f.description;
            e["path"] = path;
            arr.push_back(std::move(e));
        } else {
            out << "wrote " << path << "\n";
        }
    }
    if (c.format == "json") {
        io::Json r;
        r["schema"] = "fairdiv-report/1";
        r["fixtures"] = std::move(arr);
        out << r.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fair division of indivisible goods with money: solver and machine audits"};
    app.name("fairdiv");
    app.require_subcommand(1);

    Common c;
    std::string mechanism, suite, file, out_dir = ".";

    CLI::App* solve = app.add_subcommand("solve", "run a mechanism and print its report");
    solve->add_option("--mechanism", mechanism, "mechanism to run")
        ->required()
        ->check(CLI::IsMember({"se", "se-nocap", "sec", "vcg", "wta"}));
    solve->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
    add_common(solve, c);

    CLI::App* auditc =
        app.add_subcommand("audit", "machine-check a property suite on an instance");
    auditc->add_option("--suite", suite, "property suite to run")
        ->required()
        ->check(CLI::IsMember({"paper", "exchange", "fairness", "truthfulness"}));
    auditc->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
    add_common(auditc, c);

    CLI::App* validate =
        app.add_subcommand("validate", "check an instance against its declared classes");
    validate->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
    add_common(validate, c);

    CLI::App* fixtures =
        app.add_subcommand("fixtures", "write the built-in example instances as files");
    fixtures->add_option("--out", out_dir, "target directory")->capture_default_str();
    add_common(fixtures, c);

    std::vector<const char*> argv;
    argv.push_back("fairdiv");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run `fairdiv --help` for usage\n";
        return 2;
    }

    try {
        if (app.got_subcommand(solve)) return do_solve(load_instance(file), mechanism, c, out);
        if (app.got_subcommand(auditc)) return do_audit(load_instance(file), suite, c, out);
        if (app.got_subcommand(validate)) return do_validate(load_instance(file), c, out);
        return do_fixtures(out_dir, c, out);
    } catch (const EnumerationLimitError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace fairdiv::cli
