// drh: command-line front end for spherical functions, transforms, means,
// moduli and the inequality checks.
//
// exit status: 0 success / all checks pass, 1 a check failed or a numerical
// route gave up, 2 invalid input.

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "drh/geometry.hpp"
#include "drh/ineqlab.hpp"
#include "drh/io.hpp"
#include "drh/meanop.hpp"
#include "drh/norms.hpp"
#include "drh/specfun.hpp"
#include "drh/transforms.hpp"

using nlohmann::json;
using namespace drh;

namespace {

constexpr const char* kSchema = "drh.config/1";

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- config tree -------------------------------------------------------------

json& at_path(json& j, const std::string& path) {
    json* cur = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const auto part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        cur = &(*cur)[part];
        if (dot == std::string::npos) return *cur;
        start = dot + 1;
    }
}

const json* find_path(const json& j, const std::string& path) {
    const json* cur = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const auto part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!cur->is_object() || !cur->contains(part)) return nullptr;
        cur = &(*cur)[part];
        if (dot == std::string::npos) return cur;
        start = dot + 1;
    }
}

template <class T>
T get(const json& cfg, const std::string& path, T fallback) {
    const json* v = find_path(cfg, path);
    if (!v || v->is_null()) return fallback;
    try {
        return v->get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("config key '" + path + "' has the wrong type");
    }
}

template <class T>
std::optional<T> get_opt(const json& cfg, const std::string& path) {
    const json* v = find_path(cfg, path);
    if (!v || v->is_null()) return std::nullopt;
    try {
        return v->get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("config key '" + path + "' has the wrong type");
    }
}

/// numbers may be given as strings ("inf", "4/3")
double parse_real(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
    const auto slash = s.find('/');
    if (slash != std::string::npos) return parse_real(s.substr(0, slash)) / parse_real(s.substr(slash + 1));
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InvalidInput("not a number: '" + s + "'");
}

double real_of(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real(v.get<std::string>());
    throw InvalidInput(what + ": expected a number");
}

std::optional<double> real_opt(const json& cfg, const std::string& path) {
    const json* v = find_path(cfg, path);
    if (!v || v->is_null()) return std::nullopt;
    return real_of(*v, path);
}

std::vector<double> reals(const json& cfg, const std::string& path, std::vector<double> fallback) {
    const json* v = find_path(cfg, path);
    if (!v || v->is_null()) return fallback;
    std::vector<double> out;
    if (v->is_array()) {
        for (const auto& e : *v) out.push_back(real_of(e, path));
    } else {
        out.push_back(real_of(*v, path));
    }
    return out;
}

/// "1.5", "2i", "1.5+0.2i", "1.5-0.2i", "-i"
cplx parse_complex(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    static const std::regex re(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
    std::smatch m;
    if (s.empty() || !std::regex_match(s, m, re)) throw InvalidInput("malformed complex number '" + s + "'");
    const double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im_part = 0.0;
    if (s.back() == 'i') {
        im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
        if (m[2].str() == "-") im_part = -im_part;
        if (!m[1].matched && m[2].str().empty() && !m[3].matched && s != "i") throw InvalidInput("malformed complex number '" + s + "'");
    }
    return {re_part, im_part};
}

json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidInput("cannot read config '" + path + "'");
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw InvalidInput("malformed config: " + std::string(e.what()));
    }
    if (!j.is_object()) throw InvalidInput("config must be a JSON object");
    if (!j.contains("schema") || j["schema"] != kSchema)
        throw InvalidInput(std::string("config schema must be \"") + kSchema + "\"");
    static const std::set<std::string> known{"schema", "space", "seed", "grid", "family", "params", "output", "command"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw InvalidInput("unknown config key '" + it.key() + "'");
    return j;
}

// ---- flag bindings -------------------------------------------------------------

struct Bindings {
    std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> items;
    std::deque<std::shared_ptr<void>> storage;

    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& desc) {
        auto var = std::make_shared<T>();
        storage.push_back(var);
        auto* o = app->add_option(flag, *var, desc);
        items.emplace_back(o, [key, var](json& j) { at_path(j, key) = *var; });
        return o;
    }

    void apply(json& cfg) const {
        for (const auto& [o, set] : items)
            if (o->count() > 0) set(cfg);
    }
};

void add_common(CLI::App* app, Bindings& b, std::string& config_path) {
    app->add_option("--config", config_path, "JSON config (schema drh.config/1); flags override it");
    b.add<int>(app, "--m", "space.m", "dimension of v");
    b.add<int>(app, "--k", "space.k", "dimension of the center z");
    b.add<std::uint64_t>(app, "--seed", "seed", "random seed");
    b.add<int>(app, "--grid-level", "grid.level", "number of 2x grid refinements");
    b.add<std::string>(app, "--out", "output", "output path (prefix for verify/sweep)");
}

void add_family(CLI::App* app, Bindings& b) {
    b.add<std::string>(app, "--family", "family.name", "gauss | bump | powertail");
    b.add<std::vector<std::string>>(app, "--params", "family.params", "family parameters (a or b)")->expected(1, -1);
    b.add<std::string>(app, "--p-class", "family.p_class", "declared L^p class of powertail");
}

// ---- resolved settings -------------------------------------------------------------

SpaceParams space_of(const json& cfg) { return {get<int>(cfg, "space.m", 2), get<int>(cfg, "space.k", 0)}; }

GridSpec grid_of(const json& cfg) {
    GridSpec g;
    g.radial_panel = get<double>(cfg, "grid.radial_panel", g.radial_panel);
    g.radial_nodes = get<int>(cfg, "grid.radial_nodes", g.radial_nodes);
    g.xi_max = get<double>(cfg, "grid.xi_max", g.xi_max);
    g.spectral_panel = get<double>(cfg, "grid.spectral_panel", g.spectral_panel);
    g.spectral_nodes = get<int>(cfg, "grid.spectral_nodes", g.spectral_nodes);
    g.n_panels = get<int>(cfg, "grid.n_panels", g.n_panels);
    g.n_nodes = get<int>(cfg, "grid.n_nodes", g.n_nodes);
    const int level = get<int>(cfg, "grid.level", 0);
    if (level < 0 || level > 3) throw InvalidInput("grid.level must lie in [0, 3]");
    if (!(g.radial_panel > 0 && g.spectral_panel > 0 && g.xi_max > 0 && g.radial_nodes > 0 && g.spectral_nodes > 0 &&
          g.n_panels > 0 && g.n_nodes > 0))
        throw InvalidInput("grid parameters must be positive");
    for (int i = 0; i < level; ++i) g = g.refined();
    return g;
}

FamilySpec family_of(const json& cfg) {
    FamilySpec f;
    f.name = get<std::string>(cfg, "family.name", "gauss");
    f.params = reals(cfg, "family.params", {});
    f.p_class = real_opt(cfg, "family.p_class").value_or(1.0);
    return f;
}

std::string output_of(const json& cfg) { return get<std::string>(cfg, "output", ""); }

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        io::write_atomic(path, text);
    }
}

RadialProfile family_member(const json& cfg, const SpaceParams& s, const GridSpec& g) {
    auto fam = family_of(cfg);
    const auto members = fam.members();
    const std::size_t idx = get<std::size_t>(cfg, "params.member", 0);
    if (idx >= members.size()) throw InvalidInput("params.member out of range");
    fam.params = {members[idx]};
    return make_family(fam, s, g).front();
}

std::string complex_text(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

// ---- commands ---------------------------------------------------------------------

int cmd_phi(const json& cfg) {
    const auto s = space_of(cfg);
    const auto lam = parse_complex(get<std::string>(cfg, "params.lambda", "0"));
    const double t = real_opt(cfg, "params.t").value_or(1.0);
    std::printf("%s\n", complex_text(phi_dr(s, SpectralPoint(lam), t)).c_str());
    return 0;
}

int cmd_cfun(const json& cfg) {
    const auto s = space_of(cfg);
    const auto lam = parse_complex(get<std::string>(cfg, "params.lambda", "1"));
    std::printf("%s\n", complex_text(c_function(jacobi_params(s), SpectralPoint(2.0 * lam))).c_str());
    return 0;
}

int cmd_density(const json& cfg) {
    const auto s = space_of(cfg);
    const double xi_max = real_opt(cfg, "params.xi_max").value_or(grid_of(cfg).xi_max);
    const int n = get<int>(cfg, "params.n", 121);
    if (n < 2 || !(xi_max > 0.0)) throw InvalidInput("density: need n >= 2 and xi_max > 0");
    std::string out = "xi,density\n";
    for (int i = 0; i < n; ++i) {
        const double xi = xi_max * i / (n - 1);
        out += io::num(xi) + "," + io::num(spectral_density(s, xi)) + "\n";
    }
    emit(output_of(cfg), out);
    return 0;
}

int cmd_transform(const json& cfg) {
    const auto s = space_of(cfg);
    const auto g = grid_of(cfg);
    const auto f = family_member(cfg, s, g);
    const double eta = real_opt(cfg, "params.eta").value_or(0.0);
    const auto eng = shared_engine(s, g);
    const auto& sp = eng->spectral();
    std::vector<cplx> F(sp.size());
    if (eta == 0.0 && f.grid->r == eng->radial()->r) {
        F = eng->forward(f);
    } else {
        for (std::size_t j = 0; j < sp.size(); ++j) F[j] = spherical_transform(f, SpectralPoint(sp.xi[j], eta));
    }
    emit(output_of(cfg), io::spectrum_csv(sp, eta, F));
    return 0;
}

int cmd_invert(const json& cfg) {
    const auto s = space_of(cfg);
    const auto g = grid_of(cfg);
    const auto input = get<std::string>(cfg, "params.input", "");
    if (input.empty()) throw InvalidInput("invert: --input spectrum CSV required");
    std::ifstream is(input);
    if (!is) throw InvalidInput("cannot read '" + input + "'");
    const auto spec = io::read_spectrum(is);
    const auto eng = shared_engine(s, g);
    const auto& sp = eng->spectral();
    if (spec.eta != 0.0) throw InvalidInput("invert: spectrum must lie on the real line (eta = 0)");
    if (spec.xi.size() != sp.size()) throw InvalidInput("invert: spectrum nodes do not match the grid");
    for (std::size_t j = 0; j < sp.size(); ++j)
        if (std::abs(spec.xi[j] - sp.xi[j]) > 1e-12 * std::max(1.0, sp.xi[j]))
            throw InvalidInput("invert: spectrum nodes do not match the grid");
    RadialProfile f = calibration_reference(s, eng->radial());
    f = f.with_values(eng->inverse(spec.values));
    const auto out = output_of(cfg);
    emit(out, io::profile_csv(f));
    if (!out.empty() && out != "-") io::write_atomic(out + ".json", io::dump(io::profile_sidecar(f)));
    return 0;
}

int cmd_mean(const json& cfg) {
    const auto s = space_of(cfg);
    const auto g = grid_of(cfg);
    const auto f = family_member(cfg, s, g);
    auto ts = reals(cfg, "params.t", {0.25, 1.0, 3.0});
    std::sort(ts.begin(), ts.end());
    const double p = real_opt(cfg, "params.p").value_or(2.0);
    if (!(p >= 1.0)) throw InvalidInput("mean: p must be >= 1");
    for (double t : ts)
        if (!(t >= 0.0)) throw InvalidInput("mean: t must be nonnegative");
    const auto eng = shared_engine(s, g);
    const auto means = spherical_means(*eng, f, ts);
    const double nf = lp_norm(f.values, f.measure(), p);
    std::vector<io::MeanRow> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double bound = mean_operator_bound(s, p, ts[i]);
        const double norm = lp_norm(means[i].values, f.measure(), p) / nf;
        rows.push_back({ts[i], bound, norm, norm / bound});
    }
    emit(output_of(cfg), io::meanop_csv(rows));
    return 0;
}

int cmd_modulus(const json& cfg) {
    const auto s = space_of(cfg);
    const auto g = grid_of(cfg);
    const auto f = family_member(cfg, s, g);
    const double p = real_opt(cfg, "params.p").value_or(1.0);
    const double q = real_opt(cfg, "params.q").value_or(kInf);
    const auto rs = reals(cfg, "params.r", {1.0, 0.5, 0.25, 0.125});
    const LorentzIndex idx(p, q);
    const auto eng = shared_engine(s, g);
    std::string out = "r,value,t_at_max\n";
    for (double r : rs) {
        const auto m = modulus_of_continuity(*eng, f, idx, r);
        out += io::num(r) + "," + io::num(m.value) + "," + io::num(m.t_at_max) + "\n";
    }
    emit(output_of(cfg), out);
    return 0;
}

int cmd_decay(const json& cfg) {
    const auto s = space_of(cfg);
    const double p = real_opt(cfg, "params.p").value_or(1.0);
    std::vector<double> def;
    for (int i = 1; i <= 20; ++i) def.push_back(0.5 * i);
    const auto prof = decay_profile(s, p, reals(cfg, "params.t", def));
    std::vector<io::MeanRow> rows;
    const double first = prof.rows.empty() ? 1.0 : prof.rows.front().compensated;
    for (const auto& r : prof.rows) rows.push_back({r.t, r.bound, r.compensated, r.compensated / first});
    emit(output_of(cfg), io::meanop_csv(rows));
    std::fprintf(stderr, "max/min of the compensated profile on [2, 10]: %.6g\n", prof.ratio_2_10);
    return 0;
}

CheckOverrides overrides_of(const json& cfg) {
    CheckOverrides ov;
    ov.p = real_opt(cfg, "params.p");
    ov.q = real_opt(cfg, "params.q");
    ov.r = real_opt(cfg, "params.r");
    ov.s = real_opt(cfg, "params.s");
    ov.alpha = real_opt(cfg, "params.alpha");
    if (find_path(cfg, "params.radii")) ov.radii = reals(cfg, "params.radii", {});
    ov.seed = get<std::uint64_t>(cfg, "seed", ov.seed);
    ov.pairs = get<int>(cfg, "params.pairs", ov.pairs);
    if (ov.pairs < 1) throw InvalidInput("params.pairs must be positive");
    return ov;
}

int report(const std::vector<CheckOutcome>& outs, const json& cfg, bool qualify) {
    std::string csv = io::report_csv_header();
    bool all = true;
    for (const auto& o : outs) {
        for (const auto& r : o.rows) csv += io::report_csv_row(r);
        all = all && o.summary.pass;
    }
    const auto summary = io::dump(io::summary_json(outs, qualify));
    const auto out = output_of(cfg);
    if (!out.empty() && out != "-") {
        io::write_atomic(out + ".csv", csv);
        io::write_atomic(out + ".json", summary);
    }
    std::fwrite(summary.data(), 1, summary.size(), stdout);
    return all ? 0 : 1;
}

std::vector<std::string> check_ids(const std::string& which) {
    if (which == "all") {
        std::vector<std::string> ids;
        for (const auto& c : check_catalog()) ids.push_back(c.id);
        return ids;
    }
    check_info(which);
    return {which};
}

int cmd_verify(const json& cfg, const std::string& which) {
    const auto s = space_of(cfg);
    const auto fam = family_of(cfg);
    const auto ov = overrides_of(cfg);
    Lab lab(grid_of(cfg));
    std::vector<CheckOutcome> outs;
    for (const auto& id : check_ids(which)) outs.push_back(lab.run(id, s, fam, ov));
    return report(outs, cfg, false);
}

int cmd_sweep(const json& cfg, const std::string& which) {
    const auto ov = overrides_of(cfg);
    std::vector<std::pair<int, int>> spaces;
    for (const auto& sp : get<std::vector<std::string>>(cfg, "params.spaces", {"2,0", "2,1"})) {
        const auto comma = sp.find(',');
        if (comma == std::string::npos) throw InvalidInput("spaces are given as m,k");
        spaces.emplace_back(static_cast<int>(parse_real(sp.substr(0, comma))),
                            static_cast<int>(parse_real(sp.substr(comma + 1))));
    }
    const auto names = get<std::vector<std::string>>(cfg, "params.families", {"gauss", "bump"});
    Lab lab(grid_of(cfg));
    std::vector<CheckOutcome> outs;
    for (const auto& [m, k] : spaces) {
        const SpaceParams s(m, k);
        for (const auto& name : names) {
            FamilySpec fam = family_of(cfg);
            fam.name = name;
            for (const auto& id : check_ids(which)) outs.push_back(lab.run(id, s, fam, ov));
        }
    }
    return report(outs, cfg, true);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical analysis on Damek-Ricci spaces"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        Bindings b;
        std::string config;
        std::string target;
    };
    std::deque<Sub> subs;
    auto make = [&](const std::string& name, const std::string& desc) -> Sub& {
        subs.push_back({app.add_subcommand(name, desc), {}, {}, {}});
        auto& s = subs.back();
        add_common(s.app, s.b, s.config);
        return s;
    };

    auto& phi = make("phi", "spherical function phi_lambda(a_t)");
    phi.b.add<std::string>(phi.app, "--lambda", "params.lambda", "spectral parameter, e.g. 1.5+0.2i");
    phi.b.add<std::string>(phi.app, "--t", "params.t", "radius t >= 0");

    auto& cfun = make("cfun", "Harish-Chandra c-function c(lambda)");
    cfun.b.add<std::string>(cfun.app, "--lambda", "params.lambda", "spectral parameter");

    auto& dens = make("density", "Plancherel density |c(xi)|^-2 table");
    dens.b.add<std::string>(dens.app, "--xi-max", "params.xi_max", "largest xi");
    dens.b.add<int>(dens.app, "--n", "params.n", "number of points");

    auto& tr = make("transform", "spherical transform of a family member on the spectral grid");
    add_family(tr.app, tr.b);
    tr.b.add<std::size_t>(tr.app, "--member", "params.member", "index into the family parameters");
    tr.b.add<std::string>(tr.app, "--eta", "params.eta", "imaginary part of lambda");

    auto& inv = make("invert", "inverse spherical transform of a spectrum CSV");
    inv.b.add<std::string>(inv.app, "--input", "params.input", "spectrum CSV (xi,eta,re,im,density)");

    auto& mean = make("mean", "spherical means and the L^p contraction table");
    add_family(mean.app, mean.b);
    mean.b.add<std::size_t>(mean.app, "--member", "params.member", "index into the family parameters");
    mean.b.add<std::vector<std::string>>(mean.app, "--t", "params.t", "radii")->expected(1, -1);
    mean.b.add<std::string>(mean.app, "--p", "params.p", "Lebesgue exponent");

    auto& mod = make("modulus", "Lorentz modulus of continuity Omega_{p,q}[f](r)");
    add_family(mod.app, mod.b);
    mod.b.add<std::size_t>(mod.app, "--member", "params.member", "index into the family parameters");
    mod.b.add<std::string>(mod.app, "--p", "params.p", "Lorentz p");
    mod.b.add<std::string>(mod.app, "--q", "params.q", "Lorentz q (inf allowed)");
    mod.b.add<std::vector<std::string>>(mod.app, "--r", "params.r", "radii")->expected(1, -1);

    auto& dec = make("decay", "phi_{i gamma_p rho}(t) and its compensated profile");
    dec.b.add<std::string>(dec.app, "--p", "params.p", "exponent p in [1, 2]");
    dec.b.add<std::vector<std::string>>(dec.app, "--t", "params.t", "radii")->expected(1, -1);

    auto add_check_opts = [](Sub& s) {
        add_family(s.app, s.b);
        s.app->add_option("check", s.target, "check id or 'all'")->required();
        s.b.add<std::string>(s.app, "--p", "params.p", "exponent p");
        s.b.add<std::string>(s.app, "--q", "params.q", "exponent q");
        s.b.add<std::string>(s.app, "--r", "params.r", "exponent r");
        s.b.add<std::string>(s.app, "--s", "params.s", "Lorentz exponent s");
        s.b.add<std::string>(s.app, "--alpha", "params.alpha", "outer exponent / Bessel order");
        s.b.add<std::vector<std::string>>(s.app, "--radius", "params.radii", "scale parameters r >= 1")->expected(1, -1);
        s.b.add<int>(s.app, "--pairs", "params.pairs", "random pairs for L1");
    };
    auto& ver = make("verify", "run one check or all checks");
    add_check_opts(ver);
    auto& sw = make("sweep", "run checks over several spaces and families");
    add_check_opts(sw);
    sw.b.add<std::vector<std::string>>(sw.app, "--spaces", "params.spaces", "spaces as m,k")->expected(1, -1);
    sw.b.add<std::vector<std::string>>(sw.app, "--families", "params.families", "family names")->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (auto& s : subs) {
            if (!s.app->parsed()) continue;
            json cfg = s.config.empty() ? json::object() : load_config(s.config);
            s.b.apply(cfg);
            const auto name = s.app->get_name();
            if (name == "phi") return cmd_phi(cfg);
            if (name == "cfun") return cmd_cfun(cfg);
            if (name == "density") return cmd_density(cfg);
            if (name == "transform") return cmd_transform(cfg);
            if (name == "invert") return cmd_invert(cfg);
            if (name == "mean") return cmd_mean(cfg);
            if (name == "modulus") return cmd_modulus(cfg);
            if (name == "decay") return cmd_decay(cfg);
            if (name == "verify") return cmd_verify(cfg, s.target);
            if (name == "sweep") return cmd_sweep(cfg, s.target);
        }
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const ClassMismatch& e) {
        std::fprintf(stderr, "class mismatch: %s\n", e.what());
        return 2;
    } catch (const UnsupportedSpace& e) {
        std::fprintf(stderr, "unsupported space: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const PrecisionLoss& e) {
        std::fprintf(stderr, "precision loss: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
