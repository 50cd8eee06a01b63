#include "gnsbound/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>

#include "gnsbound/errors.hpp"

namespace gnsbound {

namespace {

using nlohmann::json;

LebesgueExponent recip_field(const json& doc, const char* key) {
    const std::string text = doc.at(key).get<std::string>();
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw FormatError(std::string("field '") + key + "' is not a decimal");
    }
    return LebesgueExponent::from_reciprocal(x);
}

const char* kind_name(MarginKind k) { return k == MarginKind::kStrict ? "strict" : "closed"; }

}  // namespace

std::string decimal17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string certificate_to_json(const BoundCertificate& c) {
    json doc;
    doc["artifact_version"] = kArtifactVersion;
    doc["objective_form"] = c.objective_form;
    doc["d"] = c.problem.d;
    doc["s"] = c.problem.s;
    doc["s1"] = c.problem.s1;
    doc["s2"] = c.problem.s2;
    doc["p_recip"] = decimal17(c.problem.p.recip());
    doc["p1_recip"] = decimal17(c.problem.p1.recip());
    doc["p2_recip"] = decimal17(c.problem.p2.recip());
    doc["theta"] = c.theta.value;
    doc["oriented_swap"] = c.swapped;
    doc["beta1"] = c.point.beta1;
    doc["beta2"] = c.point.beta2;
    doc["sigma"] = c.point.sigma;
    doc["r1_recip"] = decimal17(c.point.r1.recip());
    doc["r2_recip"] = decimal17(c.point.r2.recip());
    doc["q1_recip"] = decimal17(c.point.q1.recip());
    doc["q2_recip"] = decimal17(c.point.q2.recip());
    doc["value"] = c.value;
    doc["closed_form_value"] = c.closed_form_value;
    doc["margins_ok"] = c.margins.ok;
    json margins = json::array();
    for (const auto& m : c.margins.margins) {
        margins.push_back({{"name", m.name}, {"value", m.value}, {"kind", kind_name(m.kind)}});
    }
    doc["margins"] = margins;
    doc["sample_count"] = c.sample_count;
    doc["starts"] = c.starts;
    doc["seed"] = c.seed;
    doc["sample_per_start"] = c.config.sample_per_start;
    doc["max_iters"] = c.config.max_iters;
    doc["rel_tol"] = c.config.rel_tol;
    doc["sigma_window"] = c.config.sigma_window;
    return doc.dump(2) + "\n";
}

BoundCertificate certificate_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("certificate is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("certificate must be a JSON object");
    try {
        BoundCertificate c;
        c.objective_form = doc.at("objective_form").get<std::string>();
        c.problem.d = doc.at("d").get<int>();
        c.problem.s = doc.at("s").get<double>();
        c.problem.s1 = doc.at("s1").get<double>();
        c.problem.s2 = doc.at("s2").get<double>();
        c.problem.p = recip_field(doc, "p_recip");
        c.problem.p1 = recip_field(doc, "p1_recip");
        c.problem.p2 = recip_field(doc, "p2_recip");
        c.theta.value = doc.at("theta").get<double>();
        c.swapped = doc.at("oriented_swap").get<bool>();
        c.point.beta1 = doc.at("beta1").get<double>();
        c.point.beta2 = doc.at("beta2").get<double>();
        c.point.sigma = doc.at("sigma").get<double>();
        c.point.r1 = recip_field(doc, "r1_recip");
        c.point.r2 = recip_field(doc, "r2_recip");
        c.point.q1 = recip_field(doc, "q1_recip");
        c.point.q2 = recip_field(doc, "q2_recip");
        c.value = doc.at("value").get<double>();
        c.closed_form_value = doc.at("closed_form_value").get<double>();
        c.margins.ok = doc.at("margins_ok").get<bool>();
        for (const auto& m : doc.at("margins")) {
            const auto kind = m.at("kind").get<std::string>();
            if (kind != "strict" && kind != "closed") throw FormatError("unknown margin kind " + kind);
            c.margins.margins.push_back({m.at("name").get<std::string>(), m.at("value").get<double>(),
                                         kind == "strict" ? MarginKind::kStrict : MarginKind::kClosed});
        }
        c.sample_count = doc.at("sample_count").get<int>();
        c.starts = doc.at("starts").get<int>();
        c.seed = doc.at("seed").get<std::uint64_t>();
        c.config.starts = c.starts;
        c.config.seed = c.seed;
        c.config.sample_per_start = doc.at("sample_per_start").get<int>();
        c.config.max_iters = doc.at("max_iters").get<int>();
        c.config.rel_tol = doc.at("rel_tol").get<double>();
        c.config.sigma_window = doc.at("sigma_window").get<double>();
        if (c.problem.d < 1 || c.problem.d > 3) throw FormatError("dimension must be 1, 2 or 3");
        if (!(c.value > 0.0) || !std::isfinite(c.value)) throw FormatError("value must be positive");
        return c;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed certificate: ") + e.what());
    }
}

bool certificate_consistent(const BoundCertificate& c, double rel_tol) {
    try {
        if (std::abs(theta(c.problem).value - c.theta.value) > 1e-12) return false;
        if (!in_sigma(c.problem, c.point).ok) return false;
        const double v = objective(c.problem, c.point);
        return std::abs(v - c.value) <= rel_tol * std::abs(v);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace gnsbound
