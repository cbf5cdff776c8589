#pragma once

#include "lattice/classifier.hpp"
#include "lattice/fixtures.hpp"
#include "lattice/json_io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

// Request handling shared by the command line and the HTTP server. Each
// handler is a pure function of its input (the census summary reads a file).

namespace lattice {

inline constexpr std::string_view kApiVersion = "1.0";

/// Any pattern text accepted by parse_pattern, or "fixture:<name>".
inline Pattern parse_pattern_input(std::string_view text) {
    constexpr std::string_view prefix = "fixture:";
    if (text.substr(0, prefix.size()) == prefix) return fixture(text.substr(prefix.size()));
    return parse_pattern(text);
}

/// "(a,b)", "a,b" or "ab" with a, b in 0..3.
inline LatticePoint parse_point(std::string_view text) {
    std::string digits;
    for (char c : text) {
        if (c >= '0' && c <= '9') digits += c;
        else if (c != '(' && c != ')' && c != ',' && c != ' ') throw std::invalid_argument("bad point '" + std::string(text) + "'");
    }
    if (digits.size() != 2 || digits[0] > '3' || digits[1] > '3')
        throw std::invalid_argument("bad point '" + std::string(text) + "'");
    return {PauliIndex(digits[0] - '0'), PauliIndex(digits[1] - '0')};
}

inline json classify_result(Pattern I, bool spectral) {
    ClassifyOptions opt;
    opt.spectral = spectral;
    return classification_json(classify(I, opt));
}

inline json quadruples_result(std::optional<LatticePoint> point) {
    const auto& cat = catalog_all();
    json list = json::array();
    if (point) {
        for (int q : cat.through[static_cast<std::size_t>(point->bit())]) list.push_back(quadruple_json(q));
    } else {
        for (std::size_t q = 0; q < cat.all.size(); ++q) list.push_back(quadruple_json(static_cast<int>(q)));
    }
    return {{"point", optional_json(point)}, {"count", list.size()}, {"quadruples", list}};
}

namespace detail {

inline Rational json_rational(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return parse_rational(os.str());
    }
    throw std::invalid_argument("expected a number or rational string");
}

inline double json_number(const json& v, std::string_view what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw std::invalid_argument("parameter '" + std::string(what) + "' must be a number");
}

inline std::optional<LatticePoint> json_point(const json& params) {
    if (!params.contains("point") || params["point"].is_null()) return std::nullopt;
    const auto& p = params["point"];
    if (p.is_string()) return parse_point(p.get<std::string>());
    if (p.is_array() && p.size() == 2 && p[0].is_number_integer() && p[1].is_number_integer()) {
        const int a = p[0].get<int>(), b = p[1].get<int>();
        if (a < 0 || a > 3 || b < 0 || b > 3) throw std::invalid_argument("point coordinates must be in 0..3");
        return LatticePoint{PauliIndex(a), PauliIndex(b)};
    }
    throw std::invalid_argument("point must be \"a,b\" or [a, b]");
}

}  // namespace detail

/// family "delta": params {point?, restarts?, seed?}; "gamma": {t, mu?};
/// "phiv": {v_sq: {"a,b": value, ...}} or {v12_sq: x}, the remainder 1 - x
/// then sits on (2,1).
inline json witness_result(Pattern I, std::string_view family, const json& params) {
    if (!params.is_object()) throw std::invalid_argument("params must be an object");
    json out{{"family", family}, {"pattern", pattern_json(I)}};
    if (family == "delta") {
        auto p = detail::json_point(params);
        if (!p) p = quadruple_free_point(I) ? *quadruple_free_point(I) : I.points().front();
        if (!I.contains(*p)) throw std::invalid_argument("point " + p->str() + " is not in the pattern");
        DeltaOptions opt;
        if (params.contains("restarts")) {
            opt.seesaw.restarts = params["restarts"].get<int>();
            if (opt.seesaw.restarts < 1) throw std::invalid_argument("restarts must be positive");
        }
        if (params.contains("seed")) opt.seesaw.seed = params["seed"].get<std::uint64_t>();
        const double delta = delta_max_estimate(I, *p, opt);
        out["point"] = to_json(*p);
        out["quadruple_free"] = quadruples_through_inside(I, *p) == 0;
        out["quadruples_through_inside"] = quadruples_through_inside(I, *p);
        out["delta_max"] = delta;
        // exact report at a representative delta below the estimate
        if (delta > 0) {
            const Rational d = make_rational(static_cast<std::int64_t>(std::floor(delta / 2 * 1024)), 1024);
            if (d > 0) {
                auto report = witness_value(I, single_delta_coefficients(I, *p, d));
                attach_sup(report, seesaw_sup(single_delta_coefficients(I, *p, to_double(d)), opt.seesaw).sup);
                out["report_delta"] = to_string(d);
                out["report"] = witness_report_json(report);
            }
        }
        return out;
    }
    if (family == "gamma") {
        const double t = params.contains("t") ? detail::json_number(params["t"], "t") : 0.01;
        if (t < 0) throw std::invalid_argument("t must be nonnegative");
        std::optional<double> mu;
        if (params.contains("mu")) mu = detail::json_number(params["mu"], "mu");
        const auto g = gamma_t_coefficients(t);
        const auto lam = gamma_t_lambda(t, mu);
        out["t"] = t;
        out["mu"] = mu.value_or(gamma_t_default_mu(t));
        out["g00"] = g.g00;
        out["g0i"] = g.g0i;
        out["gi0"] = g.gi0;
        out["lambda"] = coefficients_json(lam);
        out["margin"] = gamma_t_expectation(I, t, mu);
        out["verdict"] = out["margin"].get<double>() > 0 ? "entanglement_exposed" : "inconclusive";
        return out;
    }
    if (family == "phiv") {
        std::map<int, Rational> vsq;
        if (params.contains("v_sq")) {
            if (!params["v_sq"].is_object()) throw std::invalid_argument("v_sq must be an object");
            for (const auto& [k, val] : params["v_sq"].items()) vsq[parse_point(k).bit()] = detail::json_rational(val);
        } else if (params.contains("v12_sq")) {
            const Rational x = detail::json_rational(params["v12_sq"]);
            vsq[lp(1, 2).bit()] = x;
            if (x != 1) vsq[lp(2, 1).bit()] = 1 - x;
        } else {
            throw std::invalid_argument("phiv needs v_sq or v12_sq");
        }
        Rational total(0);
        for (const auto& [b, x] : vsq) {
            if (x < 0) throw std::invalid_argument("squared magnitudes must be nonnegative");
            if (!phi_v_support(LatticePoint::from_bit(b))) throw std::invalid_argument("V coefficient outside its support");
            total += x;
        }
        if (total != 1) throw std::invalid_argument("squared magnitudes must sum to 1");
        PhiVCoefficients v;
        for (const auto& [b, x] : vsq) v[b] = std::sqrt(to_double(x));
        Rational exact(0);
        for (int b = 0; b < 16; ++b)
            if (I.contains_bit(b) && phi_v_support(LatticePoint::from_bit(b)))
                exact += make_rational(1, 2) - (vsq.count(b) ? vsq[b] : Rational(0));
        exact /= I.size();
        const auto val = phi_v_witness(I, v);
        out["value"] = to_string(exact);
        out["closed_form"] = val.closed_form;
        out["dense"] = val.dense;
        out["verdict"] = exact < 0 ? "entanglement_exposed" : "inconclusive";
        return out;
    }
    throw std::invalid_argument("unknown witness family '" + std::string(family) + "'");
}

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

inline json envelope(const json& request, const json& result, double ms) {
    return {{"version", kApiVersion}, {"request", request}, {"result", result}, {"timing_ms", ms}};
}

inline ApiResponse error_response(int status, std::string_view message) {
    return {status, json{{"version", kApiVersion}, {"error", message}}.dump()};
}

template <class F>
ApiResponse timed(const json& request, F&& compute) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        json result = compute();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return {200, envelope(request, result, ms).dump()};
    } catch (const std::invalid_argument& e) {
        return error_response(400, e.what());
    } catch (const json::exception& e) {
        return error_response(400, e.what());
    }
}

namespace detail {

inline std::optional<json> parse_body(std::string_view body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
}

inline Pattern body_pattern(const json& req) {
    if (!req.contains("pattern")) throw std::invalid_argument("missing 'pattern'");
    const auto& p = req["pattern"];
    Pattern I;
    if (p.is_string()) I = parse_pattern_input(p.get<std::string>());
    else if (p.is_number_integer()) {
        const auto m = p.get<long long>();
        if (m < 0 || m > 0xFFFF) throw std::invalid_argument("mask out of range");
        I = Pattern(static_cast<std::uint16_t>(m));
    } else throw std::invalid_argument("'pattern' must be a string or an integer mask");
    if (I.empty()) throw std::invalid_argument("empty pattern");
    return I;
}

}  // namespace detail

/// POST /classify {"pattern": ..., "spectral": bool}
inline ApiResponse handle_classify(std::string_view body) {
    auto req = detail::parse_body(body);
    if (!req) return error_response(400, "body must be a JSON object");
    return timed(*req, [&] {
        const bool spectral = req->value("spectral", false);
        return classify_result(detail::body_pattern(*req), spectral);
    });
}

/// GET /quadruples?point=a,b
inline ApiResponse handle_quadruples(std::optional<std::string> point) {
    json req = {{"point", point ? json(*point) : json(nullptr)}};
    return timed(req, [&] { return quadruples_result(point ? std::optional(parse_point(*point)) : std::nullopt); });
}

/// POST /witness {"pattern": ..., "family": ..., "params": {...}}
inline ApiResponse handle_witness(std::string_view body) {
    auto req = detail::parse_body(body);
    if (!req) return error_response(400, "body must be a JSON object");
    return timed(*req, [&] {
        if (!req->contains("family") || !(*req)["family"].is_string()) throw std::invalid_argument("missing 'family'");
        const json params = req->value("params", json::object());
        return witness_result(detail::body_pattern(*req), (*req)["family"].get<std::string>(), params);
    });
}

/// GET /census/summary: the cached census JSON without its per-orbit rows.
inline ApiResponse handle_census_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) return error_response(404, "no cached census at " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) return error_response(500, "cached census is not valid JSON");
    j.erase("rows");
    return {200, envelope(json{{"path", path}}, j, 0).dump()};
}

inline ApiResponse handle_healthz() { return {200, "ok", "text/plain"}; }

}  // namespace lattice
