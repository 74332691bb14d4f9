/*
   Copyright 2026 The dtower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "dtower/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "dtower/drinfeld.hpp"
#include "dtower/errors.hpp"
#include "dtower/linearized.hpp"
#include "dtower/tower.hpp"

#ifndef DTOWER_VERSION
#define DTOWER_VERSION "0.0.0"
#endif

namespace dtower::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    const std::string s = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument(std::string("invalid ") + what + ": '" + text + "'");
    }
    return v;
}

unsigned parse_unsigned(const std::string& text, const char* what) {
    const std::uint64_t v = parse_u64(text, what);
    if (v > 1'000'000) throw InvalidArgument(std::string(what) + " is out of range");
    return static_cast<unsigned>(v);
}

bool parse_bool(const std::string& text) {
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw InvalidArgument("invalid boolean '" + text + "'");
}

Format parse_format(const std::string& text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    throw InvalidArgument("unknown format '" + text + "' (expected json or csv)");
}

std::string format_name(Format f) { return f == Format::json ? "json" : "csv"; }

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "q") {
        cfg.q = parse_u64(value, "q");
    } else if (key == "n") {
        cfg.n = parse_unsigned(value, "n");
    } else if (key == "variant") {
        cfg.variant = parse_variant(trim(value));
    } else if (key == "ext") {
        std::tie(cfg.m_first, cfg.m_last) = parse_ext(value);
    } else if (key == "format") {
        cfg.format = parse_format(trim(value));
    } else if (key == "cap") {
        cfg.cap = parse_cap(value);
    } else if (key == "genus") {
        cfg.genus = parse_unsigned(value, "genus");
    } else if (key == "supersingular-only") {
        cfg.supersingular_only = parse_bool(value);
    } else if (key == "workers") {
        cfg.workers = parse_unsigned(value, "workers");
    } else if (key == "modulus") {
        auto [deg, coeffs] = parse_modulus_flag(value);
        cfg.moduli[deg] = std::move(coeffs);
    } else {
        throw InvalidArgument("unknown configuration key '" + key + "'");
    }
}

// Fields touched by a run, keyed by degree over the prime field.
class FieldLog {
   public:
    void add(const FieldSpec& F) { fields_.emplace(F.degree(), F.to_string()); }
    Json to_json() const {
        Json j = Json::object();
        for (const auto& [deg, s] : fields_) j[std::to_string(deg)] = s;
        return j;
    }

   private:
    std::map<unsigned, std::string> fields_;
};

Json envelope(const std::string& command, const RunConfig& cfg, const FieldLog& fields, Json result) {
    return Json{{"tool", "dtower"},
                {"tool-version", DTOWER_VERSION},
                {"command", command},
                {"config", cfg.echo()},
                {"field-moduli", fields.to_json()},
                {"result", std::move(result)}};
}

void csv_preamble(std::ostream& out, const std::string& command, const RunConfig& cfg, const FieldLog& fields) {
    out << "# tool: dtower\n# tool-version: " << DTOWER_VERSION << "\n# command: " << command
        << "\n# config: " << cfg.echo().dump() << "\n# field-moduli: " << fields.to_json().dump() << "\n";
}

// ---------------------------------------------------------------------------
// Verification suite

struct Check {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> samples;  // first few failure descriptions

    explicit Check(std::string n) : name(std::move(n)) {}

    void record(bool ok, const std::function<std::string()>& describe) {
        ++cases;
        if (!ok) {
            ++failures;
            if (samples.size() < 5) samples.push_back(describe());
        }
    }
    bool passed() const { return failures == 0 && cases > 0; }
};

std::string coords_string(const TowerPoint& pt) {
    std::string s = "(";
    for (std::size_t i = 0; i < pt.level(); ++i) s += (i ? "; " : "") + pt.coords()[i].to_string();
    return s + ")";
}

FieldElement random_nonzero(const FieldSpec& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d(1, F.size() - 1);
    return F.from_index(d(rng));
}

std::vector<Check> run_suite(const RunConfig& cfg, FieldLog& fields) {
    const std::uint64_t q = cfg.q;
    const FieldSpec k1 = extension_field(q, 1, cfg.cap, cfg.moduli);
    const FieldSpec k2 = extension_field(q, 2, cfg.cap, cfg.moduli);
    fields.add(k1);
    fields.add(k2);
    std::mt19937_64 rng(0x64746f776572ULL);
    std::vector<Check> checks;

    Check qp{"t = Q o P"}, pq{"P o Q = t'"};
    for (const auto& x : k2.elements()) {
        if (x.is_zero()) continue;
        qp.record(compose(Q(q, x), P(q, x)) == t(q, x), [&] { return x.to_string(); });
        pq.record(compose(P(q, x), Q(q, x)) == t_prime(q, x), [&] { return x.to_string(); });
    }
    checks.push_back(qp);
    checks.push_back(pq);

    const unsigned level = std::max(3u, cfg.n);
    const auto points = enumerate_xprime(level, q, k1, cfg.workers);

    Check swap{"swap identities"}, tt{"t'(x_j-1) = t(x_j)"};
    for (const auto& pt : points) {
        swap.record(verify_swap_identities(pt), [&] { return coords_string(pt); });
        for (std::size_t j = 2; j <= pt.level(); ++j) {
            tt.record(t_prime(q, pt.x(j - 1)) == t(q, pt.x(j)), [&] { return coords_string(pt); });
        }
    }
    checks.push_back(swap);
    checks.push_back(tt);

    Check count{"supersingular-count"};
    count.record(points.size() == expected_supersingular(Variant::xprime, q, level),
                 [&] { return "got " + std::to_string(points.size()); });
    for (const auto& pt : points) count.record(is_supersingular_point(pt), [&] { return coords_string(pt); });
    const auto x0 = enumerate_x0(level, q, k1, cfg.workers);
    std::uint64_t x0_ss = 0;
    for (const auto& z : x0.points) x0_ss += is_supersingular_x0(z);
    count.record(x0_ss == expected_supersingular(Variant::x0, q, level),
                 [&] { return "x0 got " + std::to_string(x0_ss); });
    checks.push_back(count);

    Check zrec{"Z recursion"};
    std::set<std::vector<std::uint64_t>> x0_keys;
    for (const auto& z : x0.points) {
        std::vector<std::uint64_t> key;
        for (const auto& c : z.zcoords()) key.push_back(c.index());
        x0_keys.insert(key);
    }
    for (const auto& pt : points) {
        bool ok = false;
        try {
            const X0Point z = project_to_X0(pt);
            std::vector<std::uint64_t> key;
            for (const auto& c : z.zcoords()) key.push_back(c.index());
            ok = x0_keys.count(key) == 1;
        } catch (const InvalidArgument&) {
            ok = false;
        }
        zrec.record(ok, [&] { return coords_string(pt); });
    }
    checks.push_back(zrec);

    Check zss{"supersingular Z set"};
    try {
        zss.record(supersingular_Z_set(q, k1).size() == q, [] { return std::string("wrong size"); });
    } catch (const InternalError& e) {
        zss.record(false, [&] { return std::string(e.what()); });
    }
    checks.push_back(zss);

    Check action{"action"};
    {
        std::vector<FieldElement> units;
        for (const auto& c : k1.elements()) {
            if (!c.is_zero()) units.push_back(c);
        }
        const std::size_t sample = std::min<std::size_t>(points.size(), 6);
        for (std::size_t i = 0; i < sample; ++i) {
            const auto& pt = points[i * points.size() / sample];
            action.record(act(k1.one(), pt) == pt, [&] { return "identity on " + coords_string(pt); });
            const X0Point z = project_to_X0(pt);
            for (const auto& c : units) {
                const TowerPoint cp = act(c, pt);
                action.record(project_to_X0(cp) == z, [&] { return "Z changed by " + c.to_string(); });
                for (const auto& d : units) {
                    action.record(act(d, cp) == act(d * c, pt),
                                  [&] { return "composition " + c.to_string() + ", " + d.to_string(); });
                }
            }
        }
    }
    checks.push_back(action);

    Check iso{"isogeny"};
    for (int i = 0; i < 20; ++i) {
        const FieldElement x1 = random_nonzero(k2, rng);
        const DrinfeldModule M = module_from_x1(q, x1);
        std::vector<FieldElement> G;
        for (const auto& c : k2.elements()) {
            if (in_subfield(c, q)) G.push_back(c * x1);
        }
        const Isogeny I = isogeny_from_kernel(M, G);
        iso.record(verify_isogeny(I.u, M, I.target) && I.u == -P(q, x1) && phi_T(I.target) == t_prime(q, x1),
                   [&] { return x1.to_string(); });
    }
    checks.push_back(iso);

    Check tors{"torsion"};
    const std::uint64_t torsion_cap = std::max<std::uint64_t>(cfg.cap, std::uint64_t{1} << 52);
    for (int i = 0; i < 5; ++i) {
        const DrinfeldModule M(q, k2.one(), k2.from_index(rng() % k2.size()), random_nonzero(k2, rng));
        const FieldSpec L = splitting_field(phi_T(M), torsion_cap);
        fields.add(L);
        const auto pts = torsion_points(M, APoly::T(q, k2), L);
        tors.record(pts.size() == q * q && is_k_subspace(pts, q), [&] { return to_json(M).dump(); });
    }
    checks.push_back(tors);

    Check chain{"kernel-chain"};
    {
        const std::size_t sample = std::min<std::size_t>(points.size(), 4);
        for (std::size_t i = 0; i < sample; ++i) {
            const auto& pt = points[i * points.size() / sample];
            for (std::size_t j = 1; j + 1 <= pt.level(); ++j) {
                const auto rep = check_kernel_chain(pt, j, torsion_cap);
                chain.record(rep.ok(), [&] { return coords_string(pt) + " depth " + std::to_string(j); });
            }
        }
    }
    checks.push_back(chain);

    Check herm{"hermitian"};
    {
        const auto k1h = extension_field(q, 1, cfg.cap);
        const std::uint64_t brute = hermitian_affine_brute_force(q, k1h);
        herm.record(brute == q * q * q && brute == hermitian_affine_by_fibers(q, k1h),
                    [&] { return "affine " + std::to_string(brute); });
    }
    checks.push_back(herm);
    return checks;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void RunConfig::validate() const {
    const auto pr = prime_power(q);
    if (q < 2 || !pr) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
    if (n < 2) throw InvalidArgument("n must be at least 2");
    if (m_first < 1 || m_first > m_last) throw InvalidArgument("extension range must satisfy 1 <= m1 <= m2");
    if (workers < 1) throw InvalidArgument("workers must be at least 1");
    if (cap < 2 || cap > kMaxFieldSize) throw InvalidArgument("cap is out of range");
}

Json RunConfig::echo() const {
    Json mods = Json::object();
    for (const auto& [deg, c] : moduli) mods[std::to_string(deg)] = c;
    Json j{{"q", q},
           {"n", n},
           {"variant", to_string(variant)},
           {"ext", m_first == m_last ? std::to_string(m_first) : std::to_string(m_first) + ".." + std::to_string(m_last)},
           {"format", format_name(format)},
           {"cap", cap},
           {"supersingular-only", supersingular_only},
           {"modulus", mods}};
    j["genus"] = genus ? Json(*genus) : Json(nullptr);
    return j;
}

void apply_config_text(const std::string& text, RunConfig& cfg) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        apply_setting(cfg, key, trim(line.substr(eq + 1)));
    }
}

std::pair<unsigned, std::vector<std::uint32_t>> parse_modulus_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InvalidArgument("modulus must look like deg=c0,c1,...,cdeg");
    const unsigned deg = parse_unsigned(text.substr(0, eq), "modulus degree");
    std::vector<std::uint32_t> coeffs;
    std::istringstream in(text.substr(eq + 1));
    std::string tok;
    while (std::getline(in, tok, ',')) coeffs.push_back(static_cast<std::uint32_t>(parse_u64(tok, "modulus coefficient")));
    if (coeffs.size() != deg + 1) {
        throw InvalidArgument("modulus for degree " + std::to_string(deg) + " needs " + std::to_string(deg + 1) +
                              " coefficients");
    }
    return {deg, std::move(coeffs)};
}

std::pair<unsigned, unsigned> parse_ext(const std::string& text) {
    const std::string s = trim(text);
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        return {parse_unsigned(s.substr(0, dots), "extension"), parse_unsigned(s.substr(dots + 2), "extension")};
    }
    const unsigned m = parse_unsigned(s, "extension");
    return {m, m};
}

std::uint64_t parse_cap(const std::string& text) {
    const std::string s = trim(text);
    if (const auto caret = s.find('^'); caret != std::string::npos) {
        const std::uint64_t b = parse_u64(s.substr(0, caret), "cap base");
        const std::uint64_t e = parse_u64(s.substr(caret + 1), "cap exponent");
        std::uint64_t v = 1;
        for (std::uint64_t i = 0; i < e; ++i) {
            if (b != 0 && v > kMaxFieldSize / b) throw InvalidArgument("cap is out of range");
            v *= b;
        }
        return v;
    }
    return parse_u64(s, "cap");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    FieldLog fields;
    const auto checks = run_suite(cfg, fields);
    const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
    if (cfg.format == Format::json) {
        Json list = Json::array();
        for (const auto& c : checks) {
            list.push_back(Json{{"name", c.name},
                                {"passed", c.passed()},
                                {"cases", c.cases},
                                {"failures", c.failures},
                                {"failure_samples", c.samples}});
        }
        out << envelope("verify", cfg, fields, Json{{"passed", all}, {"checks", list}}).dump(2) << "\n";
    } else {
        csv_preamble(out, "verify", cfg, fields);
        out << "check,passed,cases,failures\n";
        for (const auto& c : checks) {
            out << c.name << "," << (c.passed() ? "true" : "false") << "," << c.cases << "," << c.failures << "\n";
        }
    }
    return all ? kExitOk : kExitVerificationFailed;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (cfg.m_first != cfg.m_last) throw InvalidArgument("enumerate takes a single extension index");
    const FieldSpec F = extension_field(cfg.q, cfg.m_first, cfg.cap, cfg.moduli);
    FieldLog fields;
    fields.add(F);

    PointListing listing;
    listing.q = cfg.q;
    listing.n = cfg.n;
    listing.variant = cfg.variant;
    listing.field = F.to_string();
    listing.supersingular_only = cfg.supersingular_only;
    if (cfg.variant == Variant::xprime) {
        for (unsigned j = 1; j <= cfg.n; ++j) listing.columns.push_back("x" + std::to_string(j));
        for (const auto& pt : enumerate_xprime(cfg.n, cfg.q, F, cfg.workers)) {
            if (cfg.supersingular_only && !is_supersingular_point(pt)) continue;
            std::vector<std::string> row;
            for (const auto& c : pt.coords()) row.push_back(c.to_string());
            listing.rows.push_back(std::move(row));
        }
    } else {
        for (unsigned j = 2; j <= cfg.n; ++j) listing.columns.push_back("Z" + std::to_string(j));
        const auto e = enumerate_x0(cfg.n, cfg.q, F, cfg.workers);
        listing.skipped_minus_one = e.skipped_minus_one;
        for (const auto& pt : e.points) {
            if (cfg.supersingular_only && !is_supersingular_x0(pt)) continue;
            std::vector<std::string> row;
            for (const auto& c : pt.zcoords()) row.push_back(c.to_string());
            listing.rows.push_back(std::move(row));
        }
    }
    if (cfg.format == Format::json) {
        out << envelope("enumerate", cfg, fields, to_json(listing)).dump(2) << "\n";
    } else {
        csv_preamble(out, "enumerate", cfg, fields);
        out << to_csv(listing);
    }
    return kExitOk;
}

namespace {

std::vector<std::int64_t> zeta_counts(const RunConfig& cfg, FieldLog& fields) {
    if (cfg.n != 2) throw InvalidArgument("zeta data is available for level n = 2 only");
    const unsigned m_max = std::max({cfg.m_last, *cfg.genus, 1u});
    for (unsigned m = 1; m <= m_max; ++m) fields.add(extension_field(cfg.q, m, cfg.cap, cfg.moduli));
    return level2_projective_counts(cfg.q, cfg.variant, m_max, cfg.cap, cfg.moduli);
}

}  // namespace

int cmd_count(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    CountOptions opts{cfg.workers, cfg.cap, cfg.moduli};
    FieldLog fields;
    for (unsigned m = cfg.m_first; m <= cfg.m_last; ++m) fields.add(extension_field(cfg.q, m, cfg.cap, cfg.moduli));
    fields.add(extension_field(cfg.q, 1, cfg.cap, cfg.moduli));
    CountReport rep = count_points(cfg.q, cfg.variant, cfg.n, cfg.m_first, cfg.m_last, opts);
    if (cfg.genus) {
        const auto counts = zeta_counts(cfg, fields);
        rep.zeta = zeta_consistency(counts, *cfg.genus, cfg.q * cfg.q);
    }
    if (cfg.format == Format::json) {
        out << envelope("count", cfg, fields, to_json(rep)).dump(2) << "\n";
    } else {
        csv_preamble(out, "count", cfg, fields);
        out << to_csv(rep);
    }
    const bool ok = rep.supersingular == rep.supersingular_expected && (!rep.zeta || rep.zeta->residuals_zero());
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_zeta(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (!cfg.genus) throw InvalidArgument("zeta needs --genus");
    FieldLog fields;
    const auto counts = zeta_counts(cfg, fields);
    const ZetaReport z = zeta_consistency(counts, *cfg.genus, cfg.q * cfg.q);
    if (cfg.format == Format::json) {
        out << envelope("zeta", cfg, fields, to_json(z)).dump(2) << "\n";
    } else {
        csv_preamble(out, "zeta", cfg, fields);
        out << "# functional_equation_residual: " << rational_string(z.functional_equation_residual)
            << "\n# count_residual: " << rational_string(z.count_residual) << "\nm,N_m\n";
        for (std::size_t m = 0; m < z.counts.size(); ++m) out << m + 1 << "," << z.counts[m] << "\n";
    }
    return z.residuals_zero() ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------------------
// Entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Drinfeld modular tower toolkit", "dtower"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(DTOWER_VERSION));

    std::map<std::string, std::string> flags;
    std::vector<std::string> moduli;
    std::string config_path;
    bool supersingular_only = false;

    auto add_common = [&](CLI::App* sub) {
        static const std::pair<const char*, const char*> options[] = {
            {"q", "size of the constant field k (prime power), default 2"},
            {"n", "tower level, default 2"},
            {"variant", "xprime or x0, default xprime"},
            {"ext", "extension index m or range m1..m2 of GF(q^(2m)), default 1"},
            {"format", "json or csv, default json"},
            {"genus", "genus for the zeta check"},
            {"workers", "worker threads, default 1"},
            {"cap", "largest field size allowed, decimal or b^e, default 2^24"},
        };
        for (const auto& [name, help] : options) {
            sub->add_option_function<std::string>(
                std::string("--") + name, [&flags, name = name](const std::string& v) { flags[name] = v; }, help);
        }
        sub->add_option("--modulus", moduli, "explicit modulus, deg=c0,...,cdeg")->take_all();
        sub->add_flag("--supersingular-only", supersingular_only, "keep only supersingular points");
        sub->add_option("--config", config_path, "flat key = value file");
    };
    std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> commands{
        {"verify", cmd_verify}, {"enumerate", cmd_enumerate}, {"count", cmd_count}, {"zeta", cmd_zeta}};
    const std::map<std::string, std::string> descriptions{
        {"verify", "run the identity and structure checks for one q"},
        {"enumerate", "list the points of one tower level over one field"},
        {"count", "count points over a range of extensions"},
        {"zeta", "fit the zeta function of the level-2 curve"}};
    for (const auto& [name, fn] : commands) add_common(app.add_subcommand(name, descriptions.at(name)));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw InvalidArgument("cannot read config file '" + config_path + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            apply_config_text(buf.str(), cfg);
        }
        for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
        if (!moduli.empty()) {
            for (const auto& m : moduli) apply_setting(cfg, "modulus", m);
        }
        if (supersingular_only) cfg.supersingular_only = true;
        for (const auto& [name, fn] : commands) {
            if (app.got_subcommand(name)) return fn(cfg, out);
        }
        return kExitUsage;
    } catch (const CapExceeded& e) {
        err << "dtower: resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const InvalidArgument& e) {
        err << "dtower: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "dtower: verification failure: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace dtower::cli
