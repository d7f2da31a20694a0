#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "fairdiv/audit.hpp"
#include "fairdiv/cli.hpp"
#include "fairdiv/instance_io.hpp"
#include "fairdiv/mechanisms.hpp"

namespace py = pybind11;
using namespace fairdiv;

namespace {

EnumBudget budget_of(long long max_enum) {
    EnumBudget b;
    if (max_enum > 0) b.max_allocations = max_enum;
    return b;
}

Outcome dispatch(const io::Instance& inst, const std::string& mechanism, long long max_enum) {
    if (mechanism == "se") return se_mechanism(inst.profile);
    if (mechanism == "se-nocap") return se_variant_no_cap(inst.profile);
    if (mechanism == "sec") return sec_algorithm(inst.profile);
    if (mechanism == "vcg") return vcg_upfront(inst.profile, budget_of(max_enum));
    if (mechanism == "wta") return winner_takes_all(inst.profile);
    throw std::invalid_argument("unknown mechanism: " + mechanism);
}

std::string solve_json(const std::string& instance_text, const std::string& mechanism,
                       long long max_enum) {
    io::Instance inst = io::parse_instance(instance_text);
    Outcome o = dispatch(inst, mechanism, max_enum);
    return io::outcome_json(inst, o).dump(2) + "\n";
}

std::string audit_json(const std::string& instance_text, const std::string& suite,
                       long long max_enum, int jobs, unsigned long long seed) {
    io::Instance inst = io::parse_instance(instance_text);
    audit::SuiteOptions opts;
    opts.budget = budget_of(max_enum);
    opts.jobs = jobs > 0 ? jobs : 1;
    opts.seed = seed;
    auto reports = audit::run_suite(suite, inst.profile, opts);
    return io::audit_json(inst, suite, reports).dump(2) + "\n";
}

std::string validate_json(const std::string& instance_text) {
    io::Instance inst = io::parse_instance(instance_text);
    io::Json r;
    r["schema"] = "fairdiv-report/1";
    r["agents"] = static_cast<int>(inst.agents.size());
    r["items"] = static_cast<int>(inst.items.size());
    io::Json arr = io::Json::array();
    for (int i = 0; i < inst.profile.n(); ++i) {
        ValidationReport rep = validate_class(inst.profile[i]);
        io::Json e;
        e["agent"] = inst.agents[i];
        e["class"] = val_class_str(inst.profile[i].cls());
        e["status"] = rep.status == ValidationStatus::valid      ? "valid"
                      : rep.status == ValidationStatus::violated ? "violated"
                                                                 : "unverified";
        io::Json issues = io::Json::array();
        for (const auto& iss : rep.issues) {
            io::Json ij;
            ij["axiom"] = iss.axiom;
            ij["witness"] = iss.witness;
            issues.push_back(std::move(ij));
        }
        e["issues"] = std::move(issues);
        arr.push_back(std::move(e));
    }
    r["validate"] = std::move(arr);
    return r.dump(2) + "\n";
}

std::map<std::string, std::string> fixtures_json() {
    std::map<std::string, std::string> out;
    for (const auto& f : io::builtin_fixtures()) out[f.name] = io::serialize_instance(f.instance);
    return out;
}

// Agent values for externally chosen disjoint bundles, as exact rational strings.
std::vector<std::string> evaluate(const std::string& instance_text,
                                  const std::vector<std::vector<std::string>>& bundles) {
    io::Instance inst = io::parse_instance(instance_text);
    if (bundles.size() != inst.agents.size())
        throw std::invalid_argument("evaluate: need one bundle per agent");
    std::map<std::string, int> index;
    for (std::size_t e = 0; e < inst.items.size(); ++e)
        index[inst.items[e]] = static_cast<int>(e);
    std::vector<ItemSet> sets;
    ItemSet used;
    for (const auto& bundle : bundles) {
        ItemSet s;
        for (const auto& name : bundle) {
            auto it = index.find(name);
            if (it == index.end())
                throw std::invalid_argument("evaluate: unknown item \"" + name + "\"");
            if (used.contains(it->second))
                throw std::invalid_argument("evaluate: item \"" + name + "\" used twice");
            used = used.with(it->second);
            s = s.with(it->second);
        }
        sets.push_back(s);
    }
    std::vector<std::string> values;
    for (std::size_t i = 0; i < sets.size(); ++i)
        values.push_back(rat_str(inst.profile[static_cast<int>(i)](sets[i])));
    return values;
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "fair division of indivisible goods with money: solver and audits";
    m.def("solve_json", &solve_json, py::arg("instance_text"), py::arg("mechanism"),
          py::arg("max_enum") = 0,
          "Run a mechanism (se, se-nocap, sec, vcg, wta) and return the JSON report.");
    m.def("audit_json", &audit_json, py::arg("instance_text"), py::arg("suite"),
          py::arg("max_enum") = 0, py::arg("jobs") = 1, py::arg("seed") = 0,
          "Run a property suite (paper, exchange, fairness, truthfulness); JSON report.");
    m.def("validate_json", &validate_json, py::arg("instance_text"),
          "Check every valuation against its declared class; JSON report.");
    m.def("fixtures_json", &fixtures_json,
          "Built-in example instances as {name: instance JSON text}.");
    m.def("evaluate", &evaluate, py::arg("instance_text"), py::arg("bundles"),
          "Exact values v_i(bundle_i) for disjoint item-name bundles, as \"p/q\" strings.");
    m.def("run_cli", &run_cli, py::arg("args"),
          "In-process CLI: returns (exit_code, stdout, stderr).");
}
