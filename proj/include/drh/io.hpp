#pragma once

// CSV / JSON exchange formats. Every number is written with %.17g so that a
// rerun with the same inputs is byte-identical.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "drh/errors.hpp"
#include "drh/ineqlab.hpp"
#include "drh/meanop.hpp"
#include "drh/transforms.hpp"

namespace drh::io {

using nlohmann::json;

inline std::string num(double v) { return detail::fmt_exact(v); }

inline std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Writes through a temporary and renames, so readers never see half a file.
inline void write_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << text;
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// ---- profiles ---------------------------------------------------------------

inline std::string profile_csv(const RadialProfile& f) {
    std::ostringstream os;
    os << "r,re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << num(f.r()[i]) << ',' << num(f.values[i].real()) << ',' << num(f.values[i].imag()) << '\n';
    return os.str();
}

inline std::string decay_label(const DecayClass& d) {
    switch (d.kind) {
        case DecayClass::Kind::Compact: return "compact";
        case DecayClass::Kind::Gaussian: return "gaussian";
        case DecayClass::Kind::Exponential: return "exponential";
    }
    return "unknown";
}

inline json profile_sidecar(const RadialProfile& f) {
    return json{{"space", {{"m", f.space.m()}, {"k", f.space.k()}}},
                {"decay_class", decay_label(f.decay)},
                {"decay_param", f.decay.param},
                {"r_max", f.grid->r_max},
                {"panels", f.grid->panels},
                {"nodes_per_panel", f.grid->nodes_per_panel}};
}

inline std::vector<std::vector<std::string>> read_csv(std::istream& is, const std::string& expect_header) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expect_header) throw DomainError("CSV header '" + line + "' does not match '" + expect_header + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

inline double parse_num(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw DomainError("malformed number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw DomainError("malformed number '" + s + "'");
    }
}

// ---- spectra ------------------------------------------------------------------

inline std::string spectrum_csv(const SpectralGrid& sp, double eta, std::span<const cplx> F) {
    std::ostringstream os;
    os << "xi,eta,re,im,density\n";
    for (std::size_t j = 0; j < sp.size(); ++j)
        os << num(sp.xi[j]) << ',' << num(eta) << ',' << num(F[j].real()) << ',' << num(F[j].imag()) << ','
           << num(sp.density[j]) << '\n';
    return os.str();
}

struct Spectrum {
    std::vector<double> xi;
    std::vector<cplx> values;
    double eta = 0.0;
};

inline Spectrum read_spectrum(std::istream& is) {
    Spectrum s;
    const auto rows = read_csv(is, "xi,eta,re,im,density");
    for (const auto& r : rows) {
        if (r.size() != 5) throw DomainError("spectrum CSV: expected 5 columns");
        s.xi.push_back(parse_num(r[0]));
        s.eta = parse_num(r[1]);
        s.values.emplace_back(parse_num(r[2]), parse_num(r[3]));
    }
    return s;
}

// ---- mean-operator tables ---------------------------------------------------------

struct MeanRow {
    double t, bound, norm, ratio;
};

inline std::string meanop_csv(const std::vector<MeanRow>& rows) {
    std::ostringstream os;
    os << "t,bound,norm,ratio\n";
    for (const auto& r : rows) os << num(r.t) << ',' << num(r.bound) << ',' << num(r.norm) << ',' << num(r.ratio) << '\n';
    return os.str();
}

// ---- check reports ------------------------------------------------------------------

inline std::string report_csv_header() {
    return "check_id,space,family,params,lhs,rhs,ratio,constant_estimate,pass,drift,note\n";
}

inline std::string report_csv_row(const CheckReport& r) {
    std::ostringstream os;
    os << r.check_id << ',' << r.space << ',' << quote(r.family) << ',' << quote(r.params) << ',' << num(r.lhs) << ','
       << num(r.rhs) << ',' << num(r.ratio) << ',' << num(r.constant_estimate) << ',' << (r.pass ? "true" : "false")
       << ',' << num(r.drift) << ',' << quote(r.note) << '\n';
    return os.str();
}

inline json num_json(double v) {
    if (std::isfinite(v)) return v;
    return num(v);
}

inline json report_json(const CheckReport& r) {
    return json{{"check_id", r.check_id}, {"space", r.space},
                {"family", r.family},     {"lhs", num_json(r.lhs)},
                {"rhs", num_json(r.rhs)}, {"ratio", num_json(r.ratio)},
                {"constant_estimate", num_json(r.constant_estimate)},
                {"pass", r.pass},         {"drift", num_json(r.drift)},
                {"note", r.note}};
}

/// JSON summary keyed by check_id (space and family folded into the key when
/// a run covers several).
inline json summary_json(const std::vector<CheckOutcome>& outs, bool qualify_keys = false) {
    json j = json::object();
    for (const auto& o : outs) {
        const auto& s = o.summary;
        const auto key = qualify_keys ? s.check_id + "/" + s.space + "/" + s.family : s.check_id;
        j[key] = report_json(s);
    }
    return j;
}

/// Compact, stable text form: sorted keys (nlohmann objects are ordered maps)
/// and %.17g numbers.
inline std::string dump(const json& j) {
    std::string out;
    std::function<void(const json&, int)> rec = [&](const json& v, int ind) {
        const std::string pad(ind, ' ');
        if (v.is_object()) {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + "  " + json(it.key()).dump() + ": ";
                rec(it.value(), ind + 2);
            }
            out += "\n" + pad + "}";
        } else if (v.is_array()) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                rec(v[i], ind + 2);
            }
            out += "]";
        } else if (v.is_number_float()) {
            out += num(v.get<double>());
        } else {
            out += v.dump();
        }
    };
    rec(j, 0);
    return out + "\n";
}

}  // namespace drh::io
