#include "phipart/serialize.hpp"

#include "phipart/error.hpp"

#include <fstream>
#include <sstream>

namespace phipart {

using nlohmann::json;

json to_json(const ExtReal& x) {
    if (x.is_neg_inf()) return "-inf";
    if (x.is_pos_inf()) return "inf";
    return x.value();
}

ExtReal ext_real_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "-inf") return ExtReal::neg_inf();
        if (s == "inf" || s == "+inf") return ExtReal::pos_inf();
        throw BadParams("unrecognised extended real '" + s + "'");
    }
    if (!j.is_number()) throw BadParams("extended real must be a number or \"-inf\"/\"inf\"");
    return ExtReal::finite(j.get<double>());
}

json to_json(const Partition& partition) {
    json cells = json::array();
    for (const auto& cell : partition.cells()) {
        json sides = json::array();
        for (const auto& s : cell.sides()) sides.push_back(json::array({to_json(s.lower()), to_json(s.upper())}));
        cells.push_back(std::move(sides));
    }
    return {{"schema_version", kSchemaVersion},
            {"d", partition.dim()},
            {"m0", partition.m0()},
            {"m", partition.size()},
            {"cells", std::move(cells)},
            {"split_values", partition.split_values()}};
}

Partition partition_from_json(const json& j) {
    try {
        const auto d = j.at("d").get<std::size_t>();
        const auto m0 = j.at("m0").get<std::size_t>();
        std::vector<HyperRectangle> cells;
        for (const auto& jc : j.at("cells")) {
            std::vector<Interval> sides;
            for (const auto& js : jc) {
                if (!js.is_array() || js.size() != 2) throw BadParams("cell side must be [lo, hi]");
                sides.emplace_back(ext_real_from_json(js[0]), ext_real_from_json(js[1]));
            }
            cells.emplace_back(std::move(sides));
        }
        return Partition::from_cells(d, m0, std::move(cells));
    } catch (const json::exception& e) {
        throw BadParams(std::string("malformed partition JSON: ") + e.what());
    }
}

json to_json(const DistributionSpec& spec) {
    json j{{"kind", std::string(to_string(spec.kind))}};
    switch (spec.kind) {
    case DistKind::Uniform:
        j["lower"] = spec.lower;
        j["upper"] = spec.upper;
        break;
    case DistKind::Chi2: j["dof"] = spec.dof; break;
    default:
        j["loc"] = spec.loc;
        j["scale"] = spec.scale;
        break;
    }
    return j;
}

DistributionSpec distribution_from_json(const json& j) {
    try {
        DistributionSpec s;
        s.kind = parse_dist_kind(j.at("kind").get<std::string>());
        auto vec = [&](const char* key, const char* alias) -> std::vector<double> {
            if (j.contains(key)) return j.at(key).get<std::vector<double>>();
            if (alias && j.contains(alias)) return j.at(alias).get<std::vector<double>>();
            return {};
        };
        switch (s.kind) {
        case DistKind::Uniform:
            s.lower = vec("lower", nullptr);
            s.upper = vec("upper", nullptr);
            break;
        case DistKind::Chi2: s.dof = vec("dof", nullptr); break;
        case DistKind::GaussianDiag:
            s.loc = vec("loc", "mean");
            s.scale = vec("scale", "sd");
            break;
        case DistKind::Exponential:
            s.scale = vec("scale", nullptr);
            s.loc = vec("loc", nullptr);
            if (s.loc.empty()) s.loc.assign(s.scale.size(), 0.0);
            break;
        case DistKind::Cauchy:
            s.loc = vec("loc", nullptr);
            s.scale = vec("scale", nullptr);
            break;
        }
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw BadParams(std::string("malformed distribution JSON: ") + e.what());
    }
}

json to_json(const EstimateResult& result) {
    json cells = json::array();
    for (const auto& c : result.per_cell) {
        cells.push_back({{"index", c.index},
                         {"p_count", c.p_count},
                         {"q_count", c.q_count},
                         {"q_mass", c.q_mass},
                         {"ratio", c.ratio},
                         {"contribution", c.contribution}});
    }
    return {{"schema_version", kSchemaVersion},
            {"value", result.value},
            {"family", result.family},
            {"n1", result.n1},
            {"n2", result.n2},
            {"m", result.m},
            {"per_cell", std::move(cells)}};
}

json to_json(const PlannerReport& r) {
    json j{{"schema_version", kSchemaVersion},
           {"m", r.m},
           {"d", r.d},
           {"eps", r.eps},
           {"delta", r.delta},
           {"n_star", r.n_star},
           {"term_partition", r.term_partition},
           {"term_tail", r.term_tail},
           {"constants_used", {{"c1", 2.0 * 288.0 * 288.0}, {"c2", 96.0}, {"C", r.constants_used.C}, {"K3", r.constants_used.K3}}}};
    if (r.m_required > 0.0) j["m_required"] = r.m_required;
    return j;
}

json to_json(const BoundSuiteReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"observed", c.observed}, {"bound", c.bound}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return {{"schema_version", kSchemaVersion},
            {"suite", report.suite},
            {"seeds", report.seeds},
            {"violations", report.violations()},
            {"passed", report.passed()},
            {"checks", std::move(checks)}};
}

json to_json(const ExperimentConfig& c) {
    return {{"p", to_json(c.p_spec)},
            {"q", to_json(c.q_spec)},
            {"family", c.family},
            {"n_schedule", c.n_schedule},
            {"m0_schedule", c.m0_schedule},
            {"replications", c.replications},
            {"base_seed", c.base_seed},
            {"decompose", c.decompose}};
}

ExperimentConfig experiment_from_json(const json& j) {
    try {
        ExperimentConfig c;
        try {
            c.p_spec = distribution_from_json(j.at("p"));
            c.q_spec = distribution_from_json(j.at("q"));
        } catch (const BadParams& e) {
            throw ConfigError(e.what());
        }
        c.family = j.value("family", std::string("kl"));
        c.n_schedule = j.at("n_schedule").get<std::vector<std::size_t>>();
        c.m0_schedule = j.at("m0_schedule").get<std::vector<std::size_t>>();
        c.replications = j.value("replications", std::size_t{1});
        c.base_seed = j.value("base_seed", std::uint64_t{0});
        c.decompose = j.value("decompose", true);
        c.threads = j.value("threads", std::size_t{0});
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    }
}

json to_json(const std::vector<ConvergenceRow>& rows, const ExperimentConfig& config) {
    json jrows = json::array();
    for (const auto& r : rows) {
        json row{{"n", r.n},
                 {"m0", r.m0},
                 {"m", r.m},
                 {"mean_estimate", r.mean_estimate},
                 {"std_estimate", r.std_estimate},
                 {"mean_abs_error", r.mean_abs_error},
                 {"oracle_value", r.oracle_value}};
        if (config.decompose) {
            row["mean_T1"] = r.mean_t1;
            row["mean_T2"] = r.mean_t2;
        }
        jrows.push_back(std::move(row));
    }
    return {{"schema_version", kSchemaVersion}, {"config", to_json(config)}, {"rows", std::move(jrows)}};
}

std::string format_report(json report) {
    if (report.is_object() && !report.contains("schema_version")) report["schema_version"] = kSchemaVersion;
    return report.dump(2) + "\n";
}

void write_report(const std::filesystem::path& path, json report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << format_report(std::move(report));
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0, 0);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0, e.byte);
    }
}

} // namespace phipart
