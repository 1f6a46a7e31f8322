#include "nptx/json_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nptx/errors.h"

namespace nptx {

namespace {

using nlohmann::json;

json endpoint_to_json(double x) {
    if (x == kInf) return json("inf");
    if (x == -kInf) return json("-inf");
    return json(x);
}

double endpoint_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw ConfigError("json: interval endpoint string must be 'inf' or '-inf'");
    }
    return j.get<double>();
}

json dist_to_json(const Distribution& d);

json mixture_to_json(const Mixture& m) {
    json comps = json::array();
    for (const auto& c : m.components) comps.push_back(dist_to_json(c));
    return {{"kind", "mixture"}, {"weights", m.weights}, {"components", std::move(comps)}};
}

json dist_to_json(const Distribution& d) {
    if (const auto* g = std::get_if<Gaussian>(&d.law))
        return {{"kind", "gaussian"}, {"mean", g->mean}, {"variance", g->variance}};
    if (const auto* u = std::get_if<Uniform>(&d.law))
        return {{"kind", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
    if (const auto* p = std::get_if<PowerLaw>(&d.law)) return {{"kind", "power"}, {"rho", p->rho}};
    if (std::get_if<Triangular>(&d.law)) return {{"kind", "triangular"}};
    if (const auto* m = std::get_if<Mixture>(&d.law)) return mixture_to_json(*m);
    const auto& dp = std::get<DiscreteOnPoints>(d.law);
    return {{"kind", "discrete"}, {"points", dp.points}, {"masses", dp.masses}};
}

Distribution dist_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    Distribution d;
    if (kind == "gaussian") {
        d.law = Gaussian{j.at("mean").get<double>(), j.at("variance").get<double>()};
    } else if (kind == "uniform") {
        d.law = Uniform{j.at("lo").get<double>(), j.at("hi").get<double>()};
    } else if (kind == "power") {
        d.law = PowerLaw{j.at("rho").get<double>()};
    } else if (kind == "triangular") {
        d.law = Triangular{};
    } else if (kind == "mixture") {
        Mixture m;
        m.weights = j.at("weights").get<std::vector<double>>();
        for (const auto& c : j.at("components")) m.components.push_back(dist_from_json(c));
        d.law = std::move(m);
    } else if (kind == "discrete") {
        d.law = DiscreteOnPoints{j.at("points").get<std::vector<std::string>>(),
                                 j.at("masses").get<std::vector<double>>()};
    } else {
        throw ConfigError("json: unknown distribution kind '" + kind + "'");
    }
    validate(d);
    return d;
}

json classifier_to_json(const Classifier& h) {
    if (const auto* u = std::get_if<IntervalUnion>(&h)) {
        json parts = json::array();
        for (const auto& p : u->parts)
            parts.push_back(json::array({endpoint_to_json(p.lo), endpoint_to_json(p.hi)}));
        return {{"kind", "intervals"}, {"parts", std::move(parts)}};
    }
    const auto& lab = std::get<DiscreteLabeling>(h);
    std::vector<int> labels(lab.labels.begin(), lab.labels.end());
    return {{"kind", "labels"}, {"points", lab.points}, {"labels", std::move(labels)}};
}

Classifier classifier_from_json_obj(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "intervals") {
        IntervalUnion u;
        for (const auto& p : j.at("parts")) {
            if (!p.is_array() || p.size() != 2)
                throw ConfigError("json: interval parts must be [lo, hi] pairs");
            u.parts.push_back({endpoint_from_json(p[0]), endpoint_from_json(p[1])});
        }
        return canonicalize(std::move(u));
    }
    if (kind == "labels") {
        DiscreteLabeling lab;
        lab.points = j.at("points").get<std::vector<std::string>>();
        for (const auto& v : j.at("labels")) {
            const int b = v.get<int>();
            if (b != 0 && b != 1) throw ConfigError("json: labels must be 0 or 1");
            lab.labels.push_back(static_cast<std::uint8_t>(b));
        }
        if (lab.labels.size() != lab.points.size())
            throw ConfigError("json: labels and points must have the same length");
        return lab;
    }
    throw ConfigError("json: unknown classifier kind '" + kind + "'");
}

json class_to_json(const HypothesisClass& cls) {
    if (const auto* t = std::get_if<ThresholdOnSegment>(&cls.family))
        return {{"kind", "thresholds"}, {"lo", t->lo}, {"hi", t->hi}};
    if (const auto* p = std::get_if<IntervalUnionPair>(&cls.family))
        return {{"kind", "interval_pair"}, {"t0", p->t0}, {"t1", p->t1}};
    if (const auto* a = std::get_if<AllLabelings>(&cls.family))
        return {{"kind", "labelings"},
                {"points", a->points},
                {"forced_ones", a->forced_ones},
                {"forced_zeros", a->forced_zeros}};
    const auto& ex = std::get<ExplicitList>(cls.family);
    json items = json::array();
    for (const auto& h : ex.items) items.push_back(classifier_to_json(h));
    return {{"kind", "explicit"}, {"items", std::move(items)}, {"vc_dim", cls.vc_dim}};
}

HypothesisClass class_from_json_obj(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "thresholds")
        return make_threshold_class(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (kind == "interval_pair")
        return make_interval_pair_class(j.at("t0").get<double>(), j.at("t1").get<double>());
    if (kind == "labelings") {
        std::vector<std::string> ones, zeros;
        if (j.contains("forced_ones")) ones = j.at("forced_ones").get<std::vector<std::string>>();
        if (j.contains("forced_zeros"))
            zeros = j.at("forced_zeros").get<std::vector<std::string>>();
        return make_all_labelings(j.at("points").get<std::vector<std::string>>(), std::move(ones),
                                  std::move(zeros));
    }
    if (kind == "explicit") {
        std::vector<Classifier> items;
        for (const auto& it : j.at("items")) items.push_back(classifier_from_json_obj(it));
        return make_explicit(std::move(items), j.at("vc_dim").get<int>());
    }
    throw ConfigError("json: unknown class kind '" + kind + "'");
}

json scenario_to_json(const TransferScenario& sc) {
    return {{"id", sc.id},          {"mu0", dist_to_json(sc.mu0)},
            {"mu1s", dist_to_json(sc.mu1S)}, {"mu1t", dist_to_json(sc.mu1T)},
            {"alpha", sc.alpha},    {"class", class_to_json(sc.cls)},
            {"slack_r", sc.slack_r}};
}

TransferScenario scenario_from_json_obj(const json& j) {
    TransferScenario sc;
    sc.id = j.at("id").get<std::string>();
    sc.mu0 = dist_from_json(j.at("mu0"));
    sc.mu1S = dist_from_json(j.at("mu1s"));
    sc.mu1T = dist_from_json(j.at("mu1t"));
    sc.alpha = j.at("alpha").get<double>();
    sc.cls = class_from_json_obj(j.at("class"));
    if (j.contains("slack_r")) sc.slack_r = j.at("slack_r").get<double>();
    validate(sc);
    return sc;
}

AdaptiveConfig adaptive_from_json_obj(const json& j) {
    AdaptiveConfig cfg;
    if (j.contains("c")) cfg.c = j.at("c").get<double>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("delta0")) cfg.delta0 = j.at("delta0").get<double>();
    return cfg;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("json: parse failed: ") + e.what());
    }
}

// json.hpp throws its own exceptions on missing keys and type mismatches;
// surface them as config errors so the CLI maps them to exit code 2.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("json: ") + e.what());
    }
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw ConfigError("read failed: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << body;
    out.flush();
    if (!out) throw ConfigError("write failed: " + path);
}

std::string to_json_string(const Distribution& d) { return dist_to_json(d).dump(2); }
std::string to_json_string(const Classifier& h) { return classifier_to_json(h).dump(2); }
std::string to_json_string(const HypothesisClass& cls) { return class_to_json(cls).dump(2); }
std::string to_json_string(const TransferScenario& sc) { return scenario_to_json(sc).dump(2); }

Distribution distribution_from_json(const std::string& text) {
    return guarded([&] { return dist_from_json(parse(text)); });
}

Classifier classifier_from_json(const std::string& text) {
    return guarded([&] { return classifier_from_json_obj(parse(text)); });
}

HypothesisClass class_from_json(const std::string& text) {
    return guarded([&] { return class_from_json_obj(parse(text)); });
}

TransferScenario scenario_from_json(const std::string& text) {
    return guarded([&] { return scenario_from_json_obj(parse(text)); });
}

AdaptiveConfig adaptive_config_from_json(const std::string& text) {
    return guarded([&] { return adaptive_from_json_obj(parse(text)); });
}

SweepConfig sweep_config_from_json(const std::string& text) {
    return guarded([&] {
        const json j = parse(text);
        SweepConfig cfg;
        cfg.scenario = scenario_from_json_obj(j.at("scenario"));
        cfg.n0_grid = j.at("n0_grid").get<std::vector<std::int64_t>>();
        cfg.ns_grid = j.at("ns_grid").get<std::vector<std::int64_t>>();
        cfg.nt_grid = j.at("nt_grid").get<std::vector<std::int64_t>>();
        if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<int>();
        if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("adaptive")) cfg.adaptive = adaptive_from_json_obj(j.at("adaptive"));
        if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
        return cfg;
    });
}

LowerBoundRequest lowerbound_request_from_json(const std::string& text) {
    return guarded([&] {
        const json j = parse(text);
        LowerBoundRequest req;
        const auto v = j.at("variant").get<std::string>();
        if (v == "c1")
            req.variant = HardVariant::c1;
        else if (v == "c2")
            req.variant = HardVariant::c2;
        else if (v == "c3")
            req.variant = HardVariant::c3;
        else
            throw ConfigError("json: variant must be c1, c2, or c3");
        req.d_h = j.at("d_h").get<int>();
        req.alpha = j.at("alpha").get<double>();
        req.rho = j.at("rho").get<double>();
        req.n_s = j.at("n_s").get<std::int64_t>();
        req.n_t = j.at("n_t").get<std::int64_t>();
        req.c1 = j.at("c1").get<double>();
        if (j.contains("delta_cap")) req.delta_cap = j.at("delta_cap").get<double>();
        return req;
    });
}

std::string to_json_string(const NPSolution& sol) {
    json j{{"lambda", sol.lambda},
           {"type1", sol.type1},
           {"type2", sol.type2},
           {"region", classifier_to_json(sol.h)}};
    return j.dump(2);
}

std::string to_json_string(const EquivalenceReport& rep) {
    json j;
    switch (rep.verdict) {
        case Verdict::equivalent: j["verdict"] = "equivalent"; break;
        case Verdict::not_equivalent: j["verdict"] = "not_equivalent"; break;
        case Verdict::undecided: j["verdict"] = "undecided"; break;
    }
    j["symdiff_mass"] = rep.symdiff_mass;
    if (rep.witness) j["witness"] = classifier_to_json(*rep.witness);
    if (rep.witness_lambda) j["witness_lambda"] = *rep.witness_lambda;
    return j.dump(2);
}

std::string exponent_report_json(const ExponentContext& ctx, const ExponentFit& fit) {
    json j{{"rho_hat", fit.rho_hat == kInf ? json("inf") : json(fit.rho_hat)},
           {"c_hat", fit.c_hat == kInf ? json("inf") : json(fit.c_hat)},
           {"n_pairs", fit.n_pairs},
           {"delta", ctx.delta},
           {"source_opt_risk", ctx.source_opt_risk},
           {"target_anchor_risk", ctx.target_anchor_risk},
           {"target_opt_risk", ctx.target_opt_risk},
           {"worst_source_solution", classifier_to_json(ctx.source_worst)}};
    return j.dump(2);
}

std::string family_report_json(const HardFamily& fam, const VerificationReport& rep) {
    const char* variant = fam.variant == HardVariant::c1   ? "c1"
                          : fam.variant == HardVariant::c2 ? "c2"
                                                           : "c3";
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"detail", c.detail}});
    json pairs = json::array();
    for (const auto& p : rep.pair_stats)
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"sigma_dist", p.sigma_dist},
                         {"target_gap", p.target_gap},
                         {"kl_s", p.kl_s},
                         {"kl_t", p.kl_t}});
    json j{{"variant", variant},
           {"d_h", fam.d_h},
           {"d", fam.d},
           {"alpha", fam.alpha},
           {"rho", fam.rho},
           {"epsilon", fam.epsilon},
           {"delta_cap", fam.delta_cap},
           {"slack_r", fam.slack_r},
           {"n_s", fam.n_s},
           {"n_t", fam.n_t},
           {"instances", fam.instances.size()},
           {"packing_min_dist", fam.packing.min_dist},
           {"all_pass", rep.all_pass},
           {"checks", std::move(checks)},
           {"pair_stats", std::move(pairs)}};
    return j.dump(2);
}

std::string to_json_string(const RateFit& fit) {
    json j{{"slope", fit.slope},
           {"intercept", fit.intercept},
           {"r2", fit.r2},
           {"points", fit.n_points}};
    return j.dump(2);
}

}  // namespace nptx
