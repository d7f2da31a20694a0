#include "fairdiv/instance_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fairdiv/envy.hpp"

namespace fairdiv::io {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("instance: " + msg);
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void check_keys(const Json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) fail(where + ": unknown key \"" + it.key() + "\"");
    }
}

const Json& get_field(const Json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) fail(where + ": missing key \"" + key + "\"");
    return obj[key];
}

Rat json_rat(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_float())
        fail(where + ": floating-point numbers are not accepted; use \"p/q\" strings");
    if (j.is_string()) {
        try {
            return rat_parse(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(where + ": " + e.what());
        }
    }
    fail(where + ": expected an integer or a \"p/q\" string");
}

int json_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + ": expected an integer");
    return j.get<int>();
}

std::vector<std::string> name_list(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of names");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) fail(where + ": names must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

ItemSet name_set(const Json& j, const std::string& where,
                 const std::map<std::string, int>& index) {
    ItemSet s;
    for (const auto& name : name_list(j, where)) {
        auto it = index.find(name);
        if (it == index.end()) fail(where + ": unknown item \"" + name + "\"");
        if (s.contains(it->second)) fail(where + ": duplicate item \"" + name + "\"");
        s = s.with(it->second);
    }
    return s;
}

std::vector<ItemSet> set_list(const Json& j, const std::string& where,
                              const std::map<std::string, int>& index) {
    if (!j.is_array()) fail(where + ": expected an array of item-name arrays");
    std::vector<ItemSet> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(name_set(j[k], where + "[" + std::to_string(k) + "]", index));
    return out;
}

std::vector<int> int_list(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of integers");
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(json_int(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

Matroid parse_matroid(const Json& mj, const std::string& where,
                      const std::map<std::string, int>& index, int m) {
    if (!mj.is_object()) fail(where + ": expected an object");
    const Json& kj = get_field(mj, where, "kind");
    if (!kj.is_string()) fail(where + ".kind: expected a string");
    const std::string kind = kj.get<std::string>();
    try {
        if (kind == "uniform") {
            check_keys(mj, where, {"kind", "rank"});
            return Matroid::uniform(m, json_int(get_field(mj, where, "rank"), where + ".rank"));
        }
        if (kind == "partition") {
            check_keys(mj, where, {"kind", "blocks", "caps"});
            return Matroid::partition(
                m, set_list(get_field(mj, where, "blocks"), where + ".blocks", index),
                int_list(get_field(mj, where, "caps"), where + ".caps"));
        }
        if (kind == "laminar") {
            check_keys(mj, where, {"kind", "sets", "caps"});
            return Matroid::laminar(
                m, set_list(get_field(mj, where, "sets"), where + ".sets", index),
                int_list(get_field(mj, where, "caps"), where + ".caps"));
        }
        if (kind == "transversal") {
            check_keys(mj, where, {"kind", "slots"});
            return Matroid::transversal(
                m, set_list(get_field(mj, where, "slots"), where + ".slots", index));
        }
        if (kind == "rank_table") {
            check_keys(mj, where, {"kind", "table"});
            if (m > 12) fail(where + ": rank tables need m <= 12");
            const Json& tj = get_field(mj, where, "table");
            if (!tj.is_array()) fail(where + ".table: expected an array");
            std::vector<int> table(std::size_t{1} << m, -1);
            for (std::size_t k = 0; k < tj.size(); ++k) {
                const std::string ew = where + ".table[" + std::to_string(k) + "]";
                if (!tj[k].is_object()) fail(ew + ": expected an object");
                check_keys(tj[k], ew, {"subset", "rank"});
                ItemSet s = name_set(get_field(tj[k], ew, "subset"), ew + ".subset", index);
                if (table[s.bits()] >= 0) fail(ew + ": duplicate subset " + s.str());
                table[s.bits()] = json_int(get_field(tj[k], ew, "rank"), ew + ".rank");
            }
            for (std::size_t x = 0; x < table.size(); ++x)
                if (table[x] < 0)
                    fail(where + ".table: missing subset " + ItemSet(std::uint64_t(x)).str());
            return Matroid::from_rank_table(m, std::move(table));
        }
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        if (what.rfind("instance:", 0) == 0) throw;
        fail(where + ": " + what);
    }
    fail(where + ".kind: unknown matroid kind \"" + kind + "\"");
}

Valuation parse_valuation(const Json& vj, const std::string& where,
                          const std::map<std::string, int>& index,
                          const std::vector<std::string>& items) {
    const int m = static_cast<int>(items.size());
    if (!vj.is_object()) fail(where + ": expected an object");
    const Json& cj = get_field(vj, where, "class");
    if (!cj.is_string()) fail(where + ".class: expected a string");
    auto cls = val_class_parse(cj.get<std::string>());
    if (!cls) fail(where + ".class: unknown class \"" + cj.get<std::string>() + "\"");
    try {
        switch (*cls) {
        case ValClass::matroidal: {
            check_keys(vj, where, {"class", "matroid"});
            return Valuation::matroidal(
                parse_matroid(get_field(vj, where, "matroid"), where + ".matroid", index, m));
        }
        case ValClass::binary_additive: {
            check_keys(vj, where, {"class", "desired"});
            return Valuation::binary_additive(
                m, name_set(get_field(vj, where, "desired"), where + ".desired", index));
        }
        case ValClass::additive: {
            check_keys(vj, where, {"class", "values"});
            const Json& valj = get_field(vj, where, "values");
            if (!valj.is_object()) fail(where + ".values: expected an item-to-value object");
            std::vector<Rat> values(m, Rat(0));
            std::vector<bool> seen(m, false);
            for (auto it = valj.begin(); it != valj.end(); ++it) {
                auto f = index.find(it.key());
                if (f == index.end())
                    fail(where + ".values: unknown item \"" + it.key() + "\"");
                if (seen[f->second])
                    fail(where + ".values: duplicate item \"" + it.key() + "\"");
                seen[f->second] = true;
                Rat r = json_rat(it.value(), where + ".values." + it.key());
                if (r < Rat(0)) fail(where + ".values." + it.key() + ": must be nonnegative");
                values[f->second] = r;
            }
            for (int e = 0; e < m; ++e)
                if (!seen[e]) fail(where + ".values: missing item \"" + items[e] + "\"");
            return Valuation::additive(std::move(values));
        }
        case ValClass::superadditive:
        case ValClass::general: {
            check_keys(vj, where, {"class", "table"});
            if (m > 12) fail(where + ": table valuations need m <= 12");
            const Json& tj = get_field(vj, where, "table");
            if (!tj.is_array()) fail(where + ".table: expected an array");
            std::vector<Rat> table(std::size_t{1} << m, Rat(0));
            std::vector<bool> present(table.size(), false);
            for (std::size_t k = 0; k < tj.size(); ++k) {
                const std::string ew = where + ".table[" + std::to_string(k) + "]";
                if (!tj[k].is_object()) fail(ew + ": expected an object");
                check_keys(tj[k], ew, {"subset", "value"});
                ItemSet s = name_set(get_field(tj[k], ew, "subset"), ew + ".subset", index);
                if (present[s.bits()]) fail(ew + ": duplicate subset " + s.str());
                present[s.bits()] = true;
                table[s.bits()] = json_rat(get_field(tj[k], ew, "value"), ew + ".value");
            }
            for (std::size_t x = 0; x < table.size(); ++x)
                if (!present[x])
                    fail(where + ".table: missing subset " + ItemSet(std::uint64_t(x)).str());
            Valuation v = Valuation::from_table(m, std::move(table), *cls);
            ValidationReport rep = validate_class(v);
            if (rep.status == ValidationStatus::violated) {
                std::string msg = where + ": table violates the declared class";
                if (!rep.issues.empty())
                    msg += " (" + rep.issues.front().axiom + ": " + rep.issues.front().witness + ")";
                fail(msg);
            }
            return v;
        }
        }
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        if (what.rfind("instance:", 0) == 0) throw;
        fail(where + ": " + what);
    }
    fail(where + ".class: unhandled class");
}

} // namespace

Instance parse_instance(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        fail("syntax error at line " + std::to_string(line) + ", column " +
             std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) fail("top level: expected an object");
    check_keys(doc, "top level", {"schema", "agents", "items", "valuations", "params"});
    if (doc.contains("schema")) {
        if (!doc["schema"].is_string() ||
            doc["schema"].get<std::string>() != "fairdiv-instance/1")
            fail("schema: expected \"fairdiv-instance/1\"");
    }

    std::vector<std::string> agents = name_list(get_field(doc, "top level", "agents"), "agents");
    if (agents.empty()) fail("agents: at least one agent required");
    {
        std::set<std::string> seen;
        for (const auto& a : agents) {
            if (a.empty()) fail("agents: names must be nonempty");
            if (a == "unallocated") fail("agents: the name \"unallocated\" is reserved");
            if (!seen.insert(a).second) fail("agents: duplicate name \"" + a + "\"");
        }
    }

    std::vector<std::string> items = name_list(get_field(doc, "top level", "items"), "items");
    if (static_cast<int>(items.size()) > kMaxItems)
        fail("items: at most " + std::to_string(kMaxItems) + " items supported");
    std::map<std::string, int> index;
    for (std::size_t e = 0; e < items.size(); ++e) {
        if (items[e].empty()) fail("items: names must be nonempty");
        if (!index.emplace(items[e], static_cast<int>(e)).second)
            fail("items: duplicate name \"" + items[e] + "\"");
    }

    const Json& vs = get_field(doc, "top level", "valuations");
    if (!vs.is_array()) fail("valuations: expected an array");
    if (vs.size() != agents.size()) fail("valuations: need exactly one entry per agent");
    std::vector<Valuation> vals;
    for (std::size_t i = 0; i < vs.size(); ++i)
        vals.push_back(parse_valuation(vs[i], "valuations[" + std::to_string(i) + "]", index,
                                       items)
                           .with_label(agents[i]));

    Json params = doc.contains("params") ? doc["params"] : Json::object();
    if (!params.is_object()) fail("params: expected an object");

    return Instance{std::move(agents), std::move(items), Profile(std::move(vals)), vs, params};
}

std::string serialize_instance(const Instance& inst) {
    Json out;
    out["schema"] = "fairdiv-instance/1";
    out["agents"] = inst.agents;
    out["items"] = inst.items;
    out["valuations"] = inst.valuations;
    if (!inst.params.empty()) out["params"] = inst.params;
    return out.dump(2) + "\n";
}

Json rat_json(const Rat& r) {
    if (rat_is_int(r)) return Json(r.numerator());
    return Json(rat_str(r));
}

namespace {

Json item_names(const Instance& inst, ItemSet s) {
    Json arr = Json::array();
    for (int e : s) arr.push_back(inst.items[e]);
    return arr;
}

std::string item_names_text(const Instance& inst, ItemSet s) {
    if (s.empty()) return "(none)";
    std::string out;
    for (int e : s) {
        if (!out.empty()) out += ", ";
        out += inst.items[e];
    }
    return out;
}

} // namespace

Json outcome_json(const Instance& inst, const Outcome& o, const std::string* seed) {
    Json r;
    r["schema"] = "fairdiv-report/1";
    r["mechanism"] = o.mechanism;
    if (seed) r["seed"] = *seed;
    Json alloc;
    for (std::size_t i = 0; i < inst.agents.size(); ++i)
        alloc[inst.agents[i]] = item_names(inst, o.allocation[static_cast<int>(i)]);
    alloc["unallocated"] = item_names(inst, o.allocation.pool());
    r["allocation"] = std::move(alloc);
    Json subs, utils;
    for (std::size_t i = 0; i < inst.agents.size(); ++i) {
        subs[inst.agents[i]] = rat_json(o.subsidies[i]);
        utils[inst.agents[i]] = rat_json(o.utilities[i]);
    }
    r["subsidies"] = std::move(subs);
    r["utilities"] = std::move(utils);
    r["welfare"] = rat_json(utilitarian_welfare(inst.profile, o.allocation));
    EnvyGraph g = build_envy_graph(inst.profile, o.allocation);
    Json matrix = Json::array();
    for (int i = 0; i < g.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.n; ++j) row.push_back(rat_json(g.w[i][j]));
        matrix.push_back(std::move(row));
    }
    r["envy_matrix"] = std::move(matrix);
    r["trace"] = o.trace;
    return r;
}

std::string outcome_text(const Instance& inst, const Outcome& o, const std::string* seed) {
    std::string t;
    t += "mechanism: " + o.mechanism + "\n";
    if (seed) t += "seed: " + *seed + "\n";
    t += "allocation:\n";
    for (std::size_t i = 0; i < inst.agents.size(); ++i)
        t += "  " + inst.agents[i] + ": " +
             item_names_text(inst, o.allocation[static_cast<int>(i)]) + "\n";
    t += "  unallocated: " + item_names_text(inst, o.allocation.pool()) + "\n";
    t += "subsidies:\n";
    for (std::size_t i = 0; i < inst.agents.size(); ++i)
        t += "  " + inst.agents[i] + ": " + rat_str(o.subsidies[i]) + "\n";
    t += "utilities:\n";
    for (std::size_t i = 0; i < inst.agents.size(); ++i)
        t += "  " + inst.agents[i] + ": " + rat_str(o.utilities[i]) + "\n";
    t += "welfare: " + rat_str(utilitarian_welfare(inst.profile, o.allocation)) + "\n";
    EnvyGraph g = build_envy_graph(inst.profile, o.allocation);
    std::string envy;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && g.w[i][j] > Rat(0))
                envy += "  " + inst.agents[i] + " -> " + inst.agents[j] + ": " +
                        rat_str(g.w[i][j]) + "\n";
    t += "envy before subsidies:" + (envy.empty() ? " (none)\n" : "\n" + envy);
    t += "trace:\n";
    for (const auto& line : o.trace) t += "  " + line + "\n";
    return t;
}

Json audit_json(const Instance& inst, const std::string& suite,
                const std::vector<audit::AuditReport>& reports, const std::string* seed) {
    Json r;
    r["schema"] = "fairdiv-report/1";
    r["suite"] = suite;
    if (seed) r["seed"] = *seed;
    r["profile"] = audit::profile_descriptor(inst.profile);
    Json arr = Json::array();
    for (const auto& rep : reports) {
        Json e;
        e["property"] = rep.property;
        e["instance"] = rep.instance;
        e["verdict"] = audit::verdict_str(rep.verdict);
        e["witness"] = rep.witness;
        e["detail"] = rep.detail;
        arr.push_back(std::move(e));
    }
    r["audit"] = std::move(arr);
    return r;
}

std::string audit_text(const Instance& inst, const std::string& suite,
                       const std::vector<audit::AuditReport>& reports,
                       const std::string* seed) {
    std::string t;
    t += "suite: " + suite + "\n";
    if (seed) t += "seed: " + *seed + "\n";
    t += "profile: " + audit::profile_descriptor(inst.profile) + "\n";
    int holds = 0, violated = 0, skipped = 0;
    for (const auto& rep : reports) {
        switch (rep.verdict) {
        case audit::Verdict::holds: ++holds; break;
        case audit::Verdict::violated: ++violated; break;
        case audit::Verdict::skipped_too_large: ++skipped; break;
        }
        t += audit::verdict_str(rep.verdict) + "  " + rep.property;
        const std::string& note =
            rep.verdict == audit::Verdict::violated ? rep.witness : rep.detail;
        if (!note.empty()) t += ": " + note;
        t += "\n";
    }
    t += "summary: " + std::to_string(holds) + " holds, " + std::to_string(violated) +
         " violated, " + std::to_string(skipped) + " skipped\n";
    return t;
}

namespace {

Json binary_additive_json(std::initializer_list<const char*> desired) {
    Json v;
    v["class"] = "binary_additive";
    v["desired"] = Json::array();
    for (const char* d : desired) v["desired"].push_back(d);
    return v;
}

Instance make_fixture(const Json& doc) { return parse_instance(doc.dump(2) + "\n"); }

std::vector<std::string> item_range(int m) {
    std::vector<std::string> items;
    for (int e = 1; e <= m; ++e) items.push_back("g" + std::to_string(e));
    return items;
}

std::vector<NamedInstance> build_fixtures() {
    std::vector<NamedInstance> out;

    {
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = {"g1"};
        doc["valuations"] = {binary_additive_json({"g1"}), binary_additive_json({"g1"})};
        out.push_back({"single-item-duel", "two agents both want the single item",
                       make_fixture(doc)});
    }
    {
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = {"g1"};
        doc["valuations"] = {binary_additive_json({"g1"}), binary_additive_json({})};
        out.push_back({"single-item-solo", "only the first agent wants the single item",
                       make_fixture(doc)});
    }
    {
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob", "carol"};
        doc["items"] = {"g1", "g2", "g3", "g4", "g5"};
        Json third;
        third["class"] = "matroidal";
        third["matroid"] = {{"kind", "partition"},
                            {"blocks", Json::array({Json::array({"g1", "g2", "g3"}),
                                                    Json::array({"g4", "g5"})})},
                            {"caps", Json::array({3, 1})}};
        doc["valuations"] = {binary_additive_json({"g1", "g2"}),
                             binary_additive_json({"g1", "g2", "g3"}), third};
        out.push_back({"two-overlap-chain",
                       "nested interests on three items plus a capped pair", make_fixture(doc)});
    }
    {
        const int m = 10;
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = item_range(m);
        Json ones, near;
        ones["class"] = "additive";
        near["class"] = "additive";
        Json ov, nv;
        for (const auto& it : item_range(m)) {
            ov[it] = 1;
            nv[it] = "19/20";
        }
        ones["values"] = std::move(ov);
        near["values"] = std::move(nv);
        doc["valuations"] = {std::move(ones), std::move(near)};
        out.push_back({"near-tie-additive",
                       "two additive agents an epsilon of 1/2 apart over ten items",
                       make_fixture(doc)});
    }
    {
        const int m = 10;
        auto items = item_range(m);
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = items;
        Json table = Json::array();
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
            Json entry;
            Json subset = Json::array();
            for (int e : ItemSet(x)) subset.push_back(items[e]);
            entry["subset"] = std::move(subset);
            entry["value"] = (x & 1) ? m : 0;
            table.push_back(std::move(entry));
        }
        Json v;
        v["class"] = "superadditive";
        v["table"] = std::move(table);
        doc["valuations"] = {v, v};
        out.push_back({"single-prized-item",
                       "identical agents who only care who holds the first item",
                       make_fixture(doc)});
    }
    {
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = item_range(6);
        doc["valuations"] = {binary_additive_json({"g1", "g2", "g3", "g4"}),
                             binary_additive_json({"g1", "g2"})};
        out.push_back({"completion-bait-true",
                       "wide and narrow binary interests over six items", make_fixture(doc)});
    }
    {
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = item_range(6);
        doc["valuations"] = {binary_additive_json({"g1", "g2"}),
                             binary_additive_json({"g1", "g2"})};
        out.push_back({"completion-bait-reported",
                       "the same six items after the first agent hides her wide interests",
                       make_fixture(doc)});
    }
    {
        Json doc;
        doc["schema"] = "fairdiv-instance/1";
        doc["agents"] = {"alice", "bob"};
        doc["items"] = {"g1", "g2"};
        Json v1, v2;
        v1["class"] = "additive";
        v1["values"] = {{"g1", 1}, {"g2", "1/2"}};
        v2["class"] = "additive";
        v2["values"] = {{"g1", "2/5"}, {"g2", "3/5"}};
        doc["valuations"] = {std::move(v1), std::move(v2)};
        out.push_back({"additive-two-by-two", "two additive agents over two items",
                       make_fixture(doc)});
    }
    return out;
}

} // namespace

const std::vector<NamedInstance>& builtin_fixtures() {
    static const std::vector<NamedInstance> fixtures = build_fixtures();
    return fixtures;
}

} // namespace fairdiv::io
