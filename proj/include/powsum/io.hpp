#pragma once

// JSON formats for every value the tools exchange. Rational scalars travel
// as "p/q" strings, float scalars as numbers; a sequence or weight file
// declares its own mode. Key order is fixed so rational-mode reports are
// byte-identical across runs.

#include "powsum/decomp.hpp"
#include "powsum/positivity.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace powsum {

using Json = nlohmann::ordered_json;

template <class S>
Json scalar_to_json(const S& v) {
    if constexpr (scalar_traits<S>::is_exact)
        return to_string(v);
    else
        return v;
}

template <class S>
S scalar_from_json(const Json& j) {
    if constexpr (scalar_traits<S>::is_exact) {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_number_float()) return Rational(j.get<double>());
        throw Error(errc::bad_input, "expected a rational literal");
    } else {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
        throw Error(errc::bad_input, "expected a number");
    }
}

inline std::string mode_of(const Json& j) {
    if (!j.contains("mode") || !j["mode"].is_string())
        throw Error(errc::bad_input, "missing \"mode\" field");
    const std::string m = j["mode"].get<std::string>();
    if (m != "rational" && m != "float")
        throw Error(errc::bad_input, "mode must be \"rational\" or \"float\"");
    return m;
}

// ---- moment sequences: { "mode", "epsilon"?, "values": [...] } ----------

template <class S>
Json to_json(const MomentSequence<S>& c) {
    Json j;
    j["mode"] = scalar_traits<S>::mode_name();
    if constexpr (!scalar_traits<S>::is_exact) j["epsilon"] = c.epsilon;
    Json vals = Json::array();
    for (const S& v : c.values) vals.push_back(scalar_to_json(v));
    j["values"] = vals;
    return j;
}

template <class S>
MomentSequence<S> sequence_from_json(const Json& j) {
    if (!j.contains("values") || !j["values"].is_array())
        throw Error(errc::bad_input, "missing \"values\" array");
    MomentSequence<S> c;
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    for (const Json& v : j["values"]) c.values.push_back(scalar_from_json<S>(v));
    if (c.values.empty()) throw Error(errc::bad_input, "values must be nonempty");
    return c;
}

// ---- weight vectors: { "mode", "epsilon"?, "weights": [...] } ------------

template <class S>
Json to_json(const WeightVector<S>& w, double epsilon = kDefaultEpsilon) {
    Json j;
    j["mode"] = scalar_traits<S>::mode_name();
    if constexpr (!scalar_traits<S>::is_exact) j["epsilon"] = epsilon;
    Json vals = Json::array();
    for (const S& v : w.weights) vals.push_back(scalar_to_json(v));
    j["weights"] = vals;
    return j;
}

template <class S>
WeightVector<S> weights_from_json(const Json& j) {
    if (!j.contains("weights") || !j["weights"].is_array())
        throw Error(errc::bad_input, "missing \"weights\" array");
    std::vector<S> w;
    for (const Json& v : j["weights"]) w.push_back(scalar_from_json<S>(v));
    return WeightVector<S>(std::move(w));
}

// ---- gram specs: { "k": [[...],[...]] } row-major r x N ------------------

inline Json to_json(const GramSpec& spec) {
    Json rows = Json::array();
    for (int i = 0; i < spec.rows(); ++i) {
        Json row = Json::array();
        for (int a = 0; a < spec.cols(); ++a) row.push_back(spec.columns[a][i]);
        rows.push_back(row);
    }
    Json j;
    j["k"] = rows;
    return j;
}

inline GramSpec gram_spec_from_json(const Json& j) {
    if (!j.contains("k") || !j["k"].is_array() || j["k"].empty())
        throw Error(errc::bad_input, "gram spec needs a row-major \"k\" matrix");
    const auto& rows = j["k"];
    const size_t ncols = rows[0].size();
    GramSpec spec;
    spec.columns.assign(ncols, std::vector<int>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != ncols)
            throw Error(errc::bad_input, "gram spec rows must share a length");
        for (size_t a = 0; a < ncols; ++a)
            spec.columns[a][i] = rows[i][a].get<int>();
    }
    spec.validate();
    return spec;
}

// ---- reports --------------------------------------------------------------

inline Json to_json(const ValidityReport& v) {
    Json j;
    j["nonnegative"] = v.nonnegative;
    j["zero_pattern"] = v.zero_pattern;
    j["ratio_monotone"] = v.ratio_monotone;
    j["pass"] = v.all_pass();
    if (v.first_negative) j["first_negative"] = *v.first_negative;
    if (v.first_zero_pattern) j["first_zero_pattern"] = *v.first_zero_pattern;
    if (v.first_non_monotone) j["first_non_monotone"] = *v.first_non_monotone;
    return j;
}

template <class S>
Json to_json(const PositivityReport<S>& r) {
    Json j;
    j["checked"] = r.checked;
    Json vio = Json::array();
    for (const auto& v : r.violations) {
        Json e;
        e["spec"] = to_json(v.spec);
        e["minor_index"] = v.minor_index;
        e["value"] = scalar_to_json(v.value);
        Json w = Json::array();
        for (const S& x : v.witness) w.push_back(scalar_to_json(x));
        e["witness"] = w;
        vio.push_back(e);
    }
    j["violations"] = vio;
    return j;
}

template <class S>
Json to_json(const SeriesTruncation<S>& s) {
    Json coeffs = Json::array();
    for (const S& v : s.coeffs) coeffs.push_back(scalar_to_json(v));
    Json j;
    j["even_coeffs"] = coeffs;
    return j;
}

template <class S>
Json to_json(const DecompositionReport<S>& r, int input_size) {
    Json j;
    j["mode"] = scalar_traits<S>::mode_name();
    j["n"] = input_size;
    Json w = Json::array();
    for (const S& x : r.weights.weights) w.push_back(scalar_to_json(x));
    j["weights"] = w;
    j["iterations"] = r.iterations;
    j["stop_reason"] = to_string(r.stop_reason);
    Json res = Json::array();
    for (const S& x : r.residual.values) res.push_back(scalar_to_json(x));
    j["residual"] = res;
    j["lambda_lower"] = scalar_to_json(r.lambda_lower);
    if (r.lambda_upper) j["lambda_upper"] = scalar_to_json(*r.lambda_upper);
    j["conditioning_warning"] = r.conditioning_warning;
    j["refined"] = r.refined;
    Json iters = Json::array();
    for (const auto& d : r.per_iteration) {
        Json e;
        e["alpha"] = scalar_to_json(d.alpha);
        Json tail = Json::array();
        for (const S& x : d.ratio_tail) tail.push_back(scalar_to_json(x));
        e["ratio_tail"] = tail;
        e["aitken"] = scalar_to_json(d.aitken);
        e["extrapolation_residual"] = scalar_to_json(d.extrapolation_residual);
        e["fit_order"] = d.fit_order;
        e["fit_residual"] = d.fit_residual;
        iters.push_back(e);
    }
    j["per_iteration"] = iters;
    return j;
}

// ---- files ----------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::bad_input, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(errc::bad_input, "cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(errc::bad_input, "cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace powsum
