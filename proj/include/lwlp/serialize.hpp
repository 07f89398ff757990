#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lwlp/auxops.hpp"
#include "lwlp/circle.hpp"
#include "lwlp/errors.hpp"
#include "lwlp/weights.hpp"

namespace lwlp {

using json = nlohmann::json;

namespace detail {

// shortest round-trip-exact decimal; printf keeps the format locale-free
inline std::string fmt_g17(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline json function_to_json(const SampledFunction& f)
{
    json arr = json::array();
    for (std::size_t m = 0; m < f.size(); ++m)
        arr.push_back({f[m].real(), f[m].imag()});
    return arr;
}

inline SampledFunction function_from_json(const json& arr)
{
    if (!arr.is_array() || arr.empty())
        throw ConfigError("function: expected a nonempty array of [re, im] pairs");
    std::vector<cplx> vals;
    vals.reserve(arr.size());
    for (const auto& it : arr) {
        if (!it.is_array() || it.size() != 2)
            throw ConfigError("function: entries must be [re, im] pairs");
        vals.emplace_back(it[0].get<double>(), it[1].get<double>());
    }
    return SampledFunction(std::move(vals));
}

inline std::string function_to_csv(const SampledFunction& f)
{
    std::string out = "index,re,im\n";
    for (std::size_t m = 0; m < f.size(); ++m) {
        out += std::to_string(m);
        out += ',';
        out += detail::fmt_g17(f[m].real());
        out += ',';
        out += detail::fmt_g17(f[m].imag());
        out += '\n';
    }
    return out;
}

inline json partition_to_json(const Partition& p)
{
    json arr = json::array();
    for (const auto& iv : p.intervals())
        arr.push_back({iv.a, iv.b});
    return arr;
}

inline Partition partition_from_json(const json& arr)
{
    if (!arr.is_array())
        throw ConfigError("partition: expected an array of [a, b] pairs");
    std::vector<FreqInterval> ivs;
    for (const auto& it : arr) {
        if (!it.is_array() || it.size() != 2)
            throw ConfigError("partition: entries must be [a, b] pairs");
        ivs.push_back({it[0].get<long>(), it[1].get<long>()});
    }
    return Partition(std::move(ivs));
}

inline json weight_to_json(const Weight& w)
{
    json arr = json::array();
    for (std::size_t m = 0; m < w.size(); ++m)
        arr.push_back(w[m]);
    return arr;
}

inline const char* route_name(PieceRoute r)
{
    switch (r) {
    case PieceRoute::Short: return "short";
    case PieceRoute::Analytic: return "analytic";
    default: return "reversed";
    }
}

inline json plan_to_json(const DecompositionPlan& plan)
{
    json items = json::array();
    for (const auto& it : plan.items) {
        json e;
        e["delta"] = {it.delta.a, it.delta.b};
        e["short"] = it.is_short;
        e["color"] = it.color;
        if (!it.is_short) {
            e["flagged"] = it.flagged;
            if (it.flagged_span)
                e["flagged_span"] = {it.flagged_span->a, it.flagged_span->b};
        }
        items.push_back(std::move(e));
    }
    json pieces = json::array();
    for (const auto& pc : plan.pieces) {
        json e;
        e["src"] = pc.src;
        e["route"] = route_name(pc.route);
        e["cut"] = pc.cut_index;
        e["support"] = {pc.support.a, pc.support.b};
        e["group"] = pc.group;
        e["s_class"] = pc.s_class;
        e["s_shift"] = pc.s_shift;
        pieces.push_back(std::move(e));
    }
    json out;
    out["cut_ratio"] = plan.cut_ratio;
    out["xi"] = plan.xi;
    out["colors_used"] = plan.colors_used;
    out["short_threshold"] = plan.short_threshold;
    out["intervals"] = std::move(items);
    out["pieces"] = std::move(pieces);
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot open for writing: " + path);
    os << text;
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace lwlp
