#include "twinswarm/config_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "twinswarm/errors.hpp"

#ifndef TWINSWARM_VERSION_STRING
#define TWINSWARM_VERSION_STRING "0.0.0"
#endif

namespace twinswarm {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kConfigPrefix = "# config: ";

// ---- reading ----------------------------------------------------------------

void require_object(const Json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
}

void reject_unknown(const Json& j, const std::string& where, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (std::string_view k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

std::string join(const std::string& where, std::string_view key) {
    return where.empty() ? std::string(key) : where + "." + std::string(key);
}

double read_number(const Json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ConfigError(where + ": expected a number");
    }
    return j.get<double>();
}

std::uint64_t read_unsigned(const Json& j, const std::string& where) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer()) {
        throw ConfigError(where + ": expected a non-negative integer");
    }
    throw ConfigError(where + ": expected an integer");
}

std::optional<std::size_t> read_partners(const Json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "all") {
        return std::nullopt;
    }
    if (!j.is_number_unsigned()) {
        throw ConfigError(where + ": expected a positive integer or \"all\"");
    }
    return static_cast<std::size_t>(j.get<std::uint64_t>());
}

CommScheme read_scheme(const Json& j, const std::string& where) {
    require_object(j, where);
    if (!j.contains("type") || !j["type"].is_string()) {
        throw ConfigError(where + ".type: required, one of d2d, cellular, digital_twin");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "d2d") {
        reject_unknown(j, where, {"type", "radius"});
        if (!j.contains("radius")) {
            throw ConfigError(where + ".radius: required for d2d");
        }
        return D2D{read_number(j["radius"], where + ".radius")};
    }
    if (type == "cellular") {
        reject_unknown(j, where, {"type", "partners"});
        Cellular c;
        if (j.contains("partners")) {
            c.partners = read_partners(j["partners"], where + ".partners");
        }
        return c;
    }
    if (type == "digital_twin") {
        reject_unknown(j, where, {"type"});
        return DigitalTwin{};
    }
    throw ConfigError(where + ".type: unknown scheme '" + type +
                      "' (expected d2d, cellular, digital_twin)");
}

ScenarioConfig read_scenario(const Json& j) {
    const std::string where = "scenario";
    require_object(j, where);
    reject_unknown(j, where,
                   {"map_width", "map_height", "target", "agent_count", "sigma", "v_max", "c1", "c2",
                    "coefficient_distribution", "scheme", "max_rounds", "tx_budget", "budget_mode",
                    "master_seed"});
    if (!j.contains("agent_count")) {
        throw ConfigError("scenario.agent_count: required");
    }
    if (!j.contains("scheme")) {
        throw ConfigError("scenario.scheme: required");
    }

    ScenarioConfig c;
    auto number = [&](std::string_view key, double& field) {
        if (j.contains(std::string(key))) {
            field = read_number(j[std::string(key)], join(where, key));
        }
    };
    number("map_width", c.map_width);
    number("map_height", c.map_height);
    number("sigma", c.sigma);
    number("v_max", c.v_max);
    number("c1", c.coeffs.c1);
    number("c2", c.coeffs.c2);
    if (j.contains("target")) {
        const Json& t = j["target"];
        if (!t.is_array() || t.size() != 2) {
            throw ConfigError("scenario.target: expected [x, y]");
        }
        c.target = {read_number(t[0], "scenario.target[0]"), read_number(t[1], "scenario.target[1]")};
    }
    c.agent_count = read_unsigned(j["agent_count"], "scenario.agent_count");
    c.scheme = read_scheme(j["scheme"], "scenario.scheme");
    if (j.contains("max_rounds")) {
        c.max_rounds = read_unsigned(j["max_rounds"], "scenario.max_rounds");
    }
    if (j.contains("tx_budget") && !j["tx_budget"].is_null()) {
        c.tx_budget = read_unsigned(j["tx_budget"], "scenario.tx_budget");
    }
    if (j.contains("master_seed")) {
        c.master_seed = read_unsigned(j["master_seed"], "scenario.master_seed");
    }
    if (j.contains("coefficient_distribution")) {
        const Json& d = j["coefficient_distribution"];
        if (d == "uniform") {
            c.coeffs.distribution = CoefficientDistribution::Uniform01;
        } else if (d == "normal") {
            c.coeffs.distribution = CoefficientDistribution::StandardNormal;
        } else {
            throw ConfigError("scenario.coefficient_distribution: expected \"uniform\" or \"normal\"");
        }
    }
    if (j.contains("budget_mode")) {
        const Json& m = j["budget_mode"];
        if (m == "realized") {
            c.budget_mode = BudgetMode::Realized;
        } else if (m == "conservative") {
            c.budget_mode = BudgetMode::Conservative;
        } else {
            throw ConfigError("scenario.budget_mode: expected \"realized\" or \"conservative\"");
        }
    }
    return c;
}

SweepAxis read_axis(const Json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown(j, where, {"parameter", "values"});
    if (!j.contains("parameter") || !j["parameter"].is_string()) {
        throw ConfigError(where + ".parameter: required, one of radius, partners, agent_count, scheme");
    }
    if (!j.contains("values") || !j["values"].is_array()) {
        throw ConfigError(where + ".values: required list");
    }
    const std::string name = j["parameter"].get<std::string>();
    const Json& values = j["values"];
    auto item = [&](std::size_t k) { return where + ".values[" + std::to_string(k) + "]"; };
    if (name == "radius") {
        RadiusAxis axis;
        for (std::size_t k = 0; k < values.size(); ++k) {
            axis.values.push_back(read_number(values[k], item(k)));
        }
        return axis;
    }
    if (name == "partners") {
        PartnersAxis axis;
        for (std::size_t k = 0; k < values.size(); ++k) {
            axis.values.push_back(read_partners(values[k], item(k)));
        }
        return axis;
    }
    if (name == "agent_count") {
        AgentCountAxis axis;
        for (std::size_t k = 0; k < values.size(); ++k) {
            axis.values.push_back(read_unsigned(values[k], item(k)));
        }
        return axis;
    }
    if (name == "scheme") {
        SchemeAxis axis;
        for (std::size_t k = 0; k < values.size(); ++k) {
            axis.values.push_back(read_scheme(values[k], item(k)));
        }
        return axis;
    }
    throw ConfigError(where + ".parameter: unknown '" + name +
                      "' (expected radius, partners, agent_count, scheme)");
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

BatchConfig read_batch(const Json& doc) {
    require_object(doc, "document");
    reject_unknown(doc, "document", {"scenario", "num_runs", "sweep", "convergence_epsilon"});
    if (!doc.contains("scenario")) {
        throw ConfigError("scenario: required");
    }
    BatchConfig batch;
    batch.base = read_scenario(doc["scenario"]);
    if (doc.contains("num_runs")) {
        batch.num_runs = read_unsigned(doc["num_runs"], "num_runs");
    }
    if (doc.contains("sweep")) {
        const Json& sweep = doc["sweep"];
        if (!sweep.is_array()) {
            throw ConfigError("sweep: expected a list");
        }
        for (std::size_t k = 0; k < sweep.size(); ++k) {
            batch.sweep.push_back(read_axis(sweep[k], "sweep[" + std::to_string(k) + "]"));
        }
    }
    if (doc.contains("convergence_epsilon") && !doc["convergence_epsilon"].is_null()) {
        batch.convergence_epsilon = read_number(doc["convergence_epsilon"], "convergence_epsilon");
        if (!(*batch.convergence_epsilon >= 0.0)) {
            throw ConfigError("convergence_epsilon: must be >= 0");
        }
    }
    // Validates every expanded specification as well as num_runs.
    expand_specs(batch);
    return batch;
}

// ---- writing ----------------------------------------------------------------

Json write_partners(const std::optional<std::size_t>& partners) {
    return partners ? Json(*partners) : Json("all");
}

Json write_scheme(const CommScheme& scheme) {
    Json j;
    j["type"] = scheme_name(scheme);
    if (const auto* d2d = std::get_if<D2D>(&scheme)) {
        j["radius"] = d2d->radius;
    } else if (const auto* cell = std::get_if<Cellular>(&scheme)) {
        j["partners"] = write_partners(cell->partners);
    }
    return j;
}

Json write_scenario(const ScenarioConfig& c) {
    Json j;
    j["map_width"] = c.map_width;
    j["map_height"] = c.map_height;
    j["target"] = Json::array({c.target.x, c.target.y});
    j["agent_count"] = c.agent_count;
    j["sigma"] = c.sigma;
    j["v_max"] = c.v_max;
    j["c1"] = c.coeffs.c1;
    j["c2"] = c.coeffs.c2;
    j["coefficient_distribution"] =
        c.coeffs.distribution == CoefficientDistribution::Uniform01 ? "uniform" : "normal";
    j["scheme"] = write_scheme(c.scheme);
    j["max_rounds"] = c.max_rounds;
    j["tx_budget"] = c.tx_budget ? Json(*c.tx_budget) : Json(nullptr);
    j["budget_mode"] = c.budget_mode == BudgetMode::Realized ? "realized" : "conservative";
    j["master_seed"] = c.master_seed;
    return j;
}

Json write_axis(const SweepAxis& axis) {
    Json j;
    Json values = Json::array();
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, RadiusAxis>) {
                j["parameter"] = "radius";
                for (double v : a.values) values.push_back(v);
            } else if constexpr (std::is_same_v<T, PartnersAxis>) {
                j["parameter"] = "partners";
                for (const auto& v : a.values) values.push_back(write_partners(v));
            } else if constexpr (std::is_same_v<T, AgentCountAxis>) {
                j["parameter"] = "agent_count";
                for (std::size_t v : a.values) values.push_back(v);
            } else {
                j["parameter"] = "scheme";
                for (const CommScheme& v : a.values) values.push_back(write_scheme(v));
            }
        },
        axis);
    j["values"] = std::move(values);
    return j;
}

Json write_batch(const BatchConfig& batch) {
    Json doc;
    doc["scenario"] = write_scenario(batch.base);
    doc["num_runs"] = batch.num_runs;
    doc["sweep"] = Json::array();
    for (const SweepAxis& axis : batch.sweep) {
        doc["sweep"].push_back(write_axis(axis));
    }
    doc["convergence_epsilon"] =
        batch.convergence_epsilon ? Json(*batch.convergence_epsilon) : Json(nullptr);
    return doc;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path.string() + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Extracts the embedded configuration from a results file, or returns the
// text unchanged if it is a plain document.
std::string config_text(const std::string& text) {
    if (text.empty() || text.front() != '#') {
        return text;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line) && !line.empty() && line.front() == '#') {
        if (line.rfind(kConfigPrefix, 0) == 0) {
            return line.substr(kConfigPrefix.size());
        }
    }
    throw ConfigError("results file has no '# config:' line");
}

}  // namespace

std::string_view version() { return TWINSWARM_VERSION_STRING; }

BatchConfig parse_config(std::string_view text) { return read_batch(parse_json(text)); }

std::string emit_config(const BatchConfig& batch) { return write_batch(batch).dump(2) + "\n"; }

std::string apply_override(std::string_view document, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override '" + std::string(assignment) + "': expected key=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));

    std::vector<std::string> path;
    std::stringstream ks(key);
    for (std::string part; std::getline(ks, part, '.');) {
        if (part.empty()) {
            throw ConfigError("override '" + key + "': empty key segment");
        }
        path.push_back(part);
    }
    static const std::set<std::string> kTopLevel{"scenario", "num_runs", "sweep",
                                                 "convergence_epsilon"};
    if (!kTopLevel.contains(path.front())) {
        path.insert(path.begin(), "scenario");
    }

    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;
    }

    Json doc = parse_json(document);
    Json* node = &doc;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const std::string& seg = path[k];
        if (node->is_array()) {
            std::size_t index = 0;
            const auto [ptr, ec] = std::from_chars(seg.data(), seg.data() + seg.size(), index);
            if (ec != std::errc{} || ptr != seg.data() + seg.size() || index >= node->size()) {
                throw ConfigError("override '" + key + "': bad list index '" + seg + "'");
            }
            node = &(*node)[index];
        } else {
            if (node->is_null()) {
                *node = Json::object();
            }
            if (!node->is_object()) {
                throw ConfigError("override '" + key + "': '" + seg + "' is not inside an object");
            }
            node = &(*node)[seg];
        }
    }
    *node = std::move(value);
    return doc.dump(2) + "\n";
}

BatchConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::string text = config_text(read_text(path));
    for (const std::string& o : overrides) {
        text = apply_override(text, o);
    }
    return parse_config(text);
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"default", "d2d-sweep", "cellular-sweep",
                                                "budget-dt-vs-cellular"};
    return names;
}

std::string scenario_document(std::string_view name) {
    BatchConfig batch;
    batch.base = ScenarioConfig{};  // 640 x 600 m map, target (400, 300), v_max 5, sigma 1, I 50
    batch.num_runs = 300;
    if (name == "default") {
        batch.base.scheme = DigitalTwin{};
    } else if (name == "d2d-sweep") {
        batch.base.scheme = D2D{100.0};
        batch.sweep.push_back(RadiusAxis{{50.0, 100.0, 200.0, 400.0, 900.0}});
    } else if (name == "cellular-sweep") {
        batch.base.scheme = Cellular{1};
        batch.sweep.push_back(PartnersAxis{{1, 2, 5, 10, std::nullopt}});
    } else if (name == "budget-dt-vs-cellular") {
        batch.base.scheme = DigitalTwin{};
        batch.base.tx_budget = 1000;
        batch.base.max_rounds = 1000;
        batch.num_runs = 50;
        batch.sweep.push_back(AgentCountAxis{{10, 30, 50}});
        batch.sweep.push_back(SchemeAxis{{DigitalTwin{}, Cellular{}}});
    } else {
        std::string msg = "unknown scenario '" + std::string(name) + "'; available:";
        for (const std::string& n : scenario_names()) {
            msg += " " + n;
        }
        throw ConfigError(msg);
    }
    return emit_config(batch);
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return {buf.data(), end};
}

void write_results(std::ostream& out, const BatchConfig& batch, const BatchResult& result) {
    out << "# twinswarm results\n";
    out << "# version: " << version() << '\n';
    out << "# master_seed: " << batch.base.master_seed << '\n';
    out << "# runs_per_spec: " << batch.num_runs << '\n';
    out << "# specs: " << result.specs.size() << '\n';
    for (const SpecSummary& s : result.specs) {
        out << "# spec " << s.spec_index << ": " << write_scenario(s.config).dump() << '\n';
    }
    out << kConfigPrefix << write_batch(batch).dump() << '\n';
    out << "spec_id,run_id,round,mean_true_distance,min_true_distance,swarm_best_est,"
           "cumulative_tx,padded\n";

    auto row = [&](std::size_t spec, std::size_t run, std::size_t round, const RoundMetrics& m,
                   bool padded) {
        out << spec << ',' << run << ',' << round << ',' << format_double(m.mean_true_distance)
            << ',' << format_double(m.min_true_distance) << ',' << format_double(m.swarm_best_est)
            << ',' << m.cumulative_tx << ',' << (padded ? 1 : 0) << '\n';
    };
    for (std::size_t s = 0; s < result.runs.size(); ++s) {
        std::size_t longest = 0;
        for (const RunResult& r : result.runs[s]) {
            longest = std::max(longest, r.rounds_executed);
        }
        for (std::size_t k = 0; k < result.runs[s].size(); ++k) {
            const RunResult& r = result.runs[s][k];
            row(s, k, 0, r.initial, false);
            for (std::size_t t = 1; t <= longest; ++t) {
                const bool padded = t > r.rounds_executed;
                row(s, k, t, padded ? r.final_metrics() : r.rounds[t - 1], padded);
            }
        }
    }
}

void write_summary(std::ostream& out, const BatchResult& result) {
    out << "spec_id,round,mean_true_distance,stddev,std_error,padded_runs\n";
    for (const SpecSummary& s : result.specs) {
        for (const CurvePoint& p : s.curve) {
            out << s.spec_index << ',' << p.round << ',' << format_double(p.mean) << ','
                << format_double(p.stddev) << ',' << format_double(p.std_error) << ','
                << p.padded_runs << '\n';
        }
    }
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / ("." + path.filename().string() + ".partial");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw std::runtime_error("cannot move results into '" + path.string() + "': " + ec.message());
    }
}

}  // namespace twinswarm
