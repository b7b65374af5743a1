#include "cli_runner.hpp"

#include "wpaoi/analysis.hpp"
#include "wpaoi/charging.hpp"
#include "wpaoi/errors.hpp"
#include "wpaoi/queue_sim.hpp"
#include "wpaoi/specfun.hpp"
#include "wpaoi/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace wpaoi::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw invalid_param(key, "not a number: '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v)
{
    const double d = parse_double(key, v);
    if (d < 0 || d != std::floor(d))
        throw invalid_param(key, "not a nonnegative integer: '" + v + "'");
    return static_cast<std::uint64_t>(d);
}

bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "1" || v == "true" || v == "on")
        return true;
    if (v == "0" || v == "false" || v == "off")
        return false;
    throw invalid_param(key, "not a boolean: '" + v + "'");
}

scheme_kind parse_scheme(const std::string& v)
{
    if (v == "direct")
        return scheme_kind::direct;
    if (v == "df")
        return scheme_kind::df;
    if (v == "af")
        return scheme_kind::af;
    throw invalid_param("scheme", "unknown scheme '" + v + "'");
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

const std::vector<std::string>& sweepable_params()
{
    static const std::vector<std::string> names = {"p_t",  "b_s",  "b_r",  "gamma_th_db",
                                                   "gamma_th", "alpha", "d_ds", "d_rs",
                                                   "d_dr", "c_p",  "eta"};
    return names;
}

void apply_param(system_params& p, const std::string& name, double v)
{
    if (name == "p_t")
        p.p_t = v;
    else if (name == "eta")
        p.eta = v;
    else if (name == "sigma2")
        p.sigma2 = v;
    else if (name == "alpha")
        p.alpha = v;
    else if (name == "d_sp")
        p.d_sp = v;
    else if (name == "d_rp")
        p.d_rp = v;
    else if (name == "d_rs")
        p.d_rs = v;
    else if (name == "d_dr")
        p.d_dr = v;
    else if (name == "d_ds")
        p.d_ds = v;
    else if (name == "b_s")
        p.b_s = v;
    else if (name == "b_r")
        p.b_r = v;
    else if (name == "gamma_th")
        p.gamma_th = v;
    else if (name == "gamma_th_db")
        p.gamma_th = db_to_linear(v);
    else if (name == "c_p")
        p.c_p = v;
    else
        throw invalid_param(name, "unknown parameter");
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string fmt_opt(const std::optional<double>& v)
{
    return v ? fmt(*v) : std::string{};
}

} // namespace

run_spec parse_config_text(const std::string& text)
{
    run_spec spec;
    spec.params = preset_baseline();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_param("config", "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "scheme" || key == "schemes") {
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ','))
                spec.schemes.push_back(parse_scheme(trim(tok)));
        } else if (key == "horizon_slots") {
            spec.horizon_slots = parse_u64(key, val);
        } else if (key == "target_deliveries") {
            spec.target_deliveries = parse_u64(key, val);
        } else if (key == "seed") {
            spec.seed = parse_u64(key, val);
        } else if (key == "warmup_fraction") {
            spec.warmup_fraction = parse_double(key, val);
        } else if (key == "replications") {
            spec.replications = static_cast<int>(parse_u64(key, val));
        } else if (key == "workers") {
            spec.workers = static_cast<int>(parse_u64(key, val));
        } else if (key == "relay_energy_banking") {
            spec.relay_energy_banking = parse_bool(key, val);
        } else if (key == "max_queue_alarm") {
            spec.max_queue_alarm = parse_u64(key, val);
        } else if (key == "mode") {
            if (val == "bernoulli")
                spec.mode = success_mode::bernoulli;
            else if (val == "physical")
                spec.mode = success_mode::physical;
            else
                throw invalid_param("mode", "expected bernoulli|physical");
        } else if (key == "force_p_suc_s") {
            spec.force_p_suc_s = parse_double(key, val);
        } else if (key == "force_p_suc_r") {
            spec.force_p_suc_r = parse_double(key, val);
        } else if (key == "force_p_suc_direct") {
            spec.force_p_suc_direct = parse_double(key, val);
        } else if (key == "force_p_suc_af") {
            spec.force_p_suc_af = parse_double(key, val);
        } else if (key == "sweep_param") {
            if (std::find(sweepable_params().begin(), sweepable_params().end(), val)
                == sweepable_params().end())
                throw invalid_param("sweep_param", "not sweepable: '" + val + "'");
            spec.sweep_param = val;
        } else if (key == "sweep_values") {
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ','))
                spec.sweep_values.push_back(parse_double(key, trim(tok)));
        } else {
            apply_param(spec.params, key, parse_double(key, val));
        }
    }
    if (spec.schemes.empty())
        throw invalid_param("scheme", "config must name at least one scheme");
    if (spec.sweep_param.has_value() != !spec.sweep_values.empty())
        throw invalid_param("sweep", "sweep_param and sweep_values must appear together");
    return spec;
}

run_spec load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw invalid_param("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::uint64_t config_hash(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_csv_header(std::ostream& os, std::uint64_t seed, std::uint64_t hash)
{
    os << "# wpaoi " << tool_version << " seed=" << seed << " config_hash=" << std::hex
       << hash << std::dec << '\n';
    os << "scheme,p_t,eta,sigma2,alpha,d_sp,d_rp,d_rs,d_dr,d_ds,b_s,b_r,gamma_th,c_p,"
          "paoi_analytic,paoi_kind,aoi_analytic,paoi_sim,aoi_sim,ci95_paoi,ci95_aoi,"
          "p_suc_s,p_suc_r,p_suc_af,p_suc_direct,deliveries,diverged\n";
}

void write_csv_row(std::ostream& os, const csv_row& r)
{
    const system_params& p = r.params;
    os << to_string(r.scheme) << ',' << fmt(p.p_t) << ',' << fmt(p.eta) << ','
       << fmt(p.sigma2) << ',' << fmt(p.alpha) << ',' << fmt(p.d_sp) << ',' << fmt(p.d_rp)
       << ',' << fmt(p.d_rs) << ',' << fmt(p.d_dr) << ',' << fmt(p.d_ds) << ',' << fmt(p.b_s)
       << ',' << fmt(p.b_r) << ',' << fmt(p.gamma_th) << ',' << fmt(p.c_p) << ','
       << fmt_opt(r.paoi_analytic) << ',' << r.paoi_kind << ',' << fmt_opt(r.aoi_analytic)
       << ',' << fmt_opt(r.paoi_sim) << ',' << fmt_opt(r.aoi_sim) << ','
       << fmt_opt(r.ci95_paoi) << ',' << fmt_opt(r.ci95_aoi) << ',' << fmt_opt(r.p_suc_s)
       << ',' << fmt_opt(r.p_suc_r) << ',' << fmt_opt(r.p_suc_af) << ','
       << fmt_opt(r.p_suc_direct) << ',' << r.deliveries << ',' << (r.diverged ? 1 : 0)
       << '\n';
}

csv_row analytic_row(scheme_kind scheme, const system_params& params)
{
    csv_row row;
    row.scheme = scheme;
    row.params = validate(params);
    const system_params& p = row.params;

    const double bps = normalized_capacitor(p.d_sp, p.alpha, p.b_s, p.eta, p.p_t);
    const moment_pair ts = charge_time_dist(bps).moments();
    row.p_suc_direct = success_probability(p.sigma2, p.gamma_th, p.d_ds, p.alpha, p.b_s);
    row.p_suc_s = success_probability(p.sigma2, p.gamma_th, p.d_rs, p.alpha, p.b_s);
    row.p_suc_af = success_prob_af(p);
    try {
        const double b_star = effective_relay_power(p.b_r, p.c_p, *row.p_suc_s);
        row.p_suc_r = success_probability(p.sigma2, p.gamma_th, p.d_dr, p.alpha, b_star);
    } catch (const relay_power_infeasible&) {
        row.p_suc_r.reset();
    }

    switch (scheme) {
    case scheme_kind::direct: {
        if (*row.p_suc_direct > 0.0) {
            const moment_pair x = cycle_moments(ts.mean, ts.second, *row.p_suc_direct);
            row.paoi_analytic = paoi_onehop(x);
            row.aoi_analytic = aoi_onehop(x);
            row.paoi_kind = "exact";
        }
        break;
    }
    case scheme_kind::af: {
        if (*row.p_suc_af > 0.0) {
            const double bpr = normalized_capacitor(p.d_rp, p.alpha, p.b_r, p.eta, p.p_t);
            const moment_pair taf = af_wait_dist(bps, bpr).moments();
            const moment_pair x = cycle_moments(taf.mean, taf.second, *row.p_suc_af);
            row.paoi_analytic = paoi_onehop(x);
            row.aoi_analytic = aoi_onehop(x);
            row.paoi_kind = "exact";
        }
        break;
    }
    case scheme_kind::df: {
        if (row.p_suc_r && *row.p_suc_s > 0.0 && *row.p_suc_r > 0.0) {
            const double bpr = normalized_capacitor(p.d_rp, p.alpha, p.b_r, p.eta, p.p_t);
            const moment_pair tr = charge_time_dist(bpr).moments();
            const moment_pair xs = cycle_moments(ts.mean, ts.second, *row.p_suc_s);
            const moment_pair xr = cycle_moments(tr.mean, tr.second, *row.p_suc_r);
            if (xr.mean < xs.mean) {
                row.paoi_analytic = *paoi_df_upper(xs, xr).kingman_bound;
                row.paoi_kind = "bound";
            }
            // no closed-form AoI for df; column stays empty
        }
        break;
    }
    }
    return row;
}

namespace {

csv_row simulate_row(scheme_kind scheme, const system_params& params, const run_spec& spec,
                     std::optional<std::uint64_t> slot_budget = std::nullopt)
{
    csv_row row = analytic_row(scheme, params);
    sim_config cfg;
    cfg.scheme = scheme;
    cfg.params = params;
    cfg.horizon_slots = spec.horizon_slots;
    cfg.target_deliveries = spec.target_deliveries;
    if (slot_budget && spec.target_deliveries) {
        // expected per-replication cost; PAoI bounds the per-delivery cost
        const double per_delivery = row.paoi_analytic
                                        ? *row.paoi_analytic
                                        : std::numeric_limits<double>::infinity();
        if (per_delivery * static_cast<double>(*spec.target_deliveries)
            > static_cast<double>(*slot_budget)) {
            cfg.target_deliveries.reset();
            cfg.horizon_slots = *slot_budget;
        }
    }
    cfg.seed = spec.seed;
    cfg.warmup_fraction = spec.warmup_fraction;
    cfg.relay_energy_banking = spec.relay_energy_banking;
    cfg.max_queue_alarm = spec.max_queue_alarm;
    cfg.replications = spec.replications;
    cfg.workers = spec.workers;
    cfg.mode = spec.mode;
    cfg.force_p_suc_s = spec.force_p_suc_s;
    cfg.force_p_suc_r = spec.force_p_suc_r;
    cfg.force_p_suc_direct = spec.force_p_suc_direct;
    cfg.force_p_suc_af = spec.force_p_suc_af;
    const age_stats s = run(cfg);
    row.deliveries = s.deliveries;
    row.diverged = s.diverged;
    if (s.deliveries > 0) {
        row.paoi_sim = s.mean_paoi;
        row.aoi_sim = s.mean_aoi;
        row.ci95_paoi = s.ci95_paoi;
        row.ci95_aoi = s.ci95_aoi;
    }
    return row;
}

std::ostream& open_output(const std::optional<std::string>& out_path, std::ofstream& file)
{
    if (!out_path)
        return std::cout;
    file.open(*out_path);
    if (!file)
        throw invalid_param("out", "cannot open '" + *out_path + "'");
    return file;
}

} // namespace

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_path,
            std::optional<std::uint64_t> seed_override, std::optional<int> reps_override,
            bool fast)
{
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "config: cannot open '" << config_path << "'\n";
        return exit_config_error;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    run_spec spec;
    try {
        spec = parse_config_text(text);
    } catch (const error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    if (seed_override)
        spec.seed = *seed_override;
    if (reps_override)
        spec.replications = *reps_override;
    if (!spec.horizon_slots && !spec.target_deliveries)
        spec.target_deliveries = fast ? 100'000ULL : 1'000'000ULL;

    try {
        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        write_csv_header(os, spec.seed, config_hash(text));
        std::vector<double> sweep = spec.sweep_values;
        if (sweep.empty())
            sweep.push_back(std::numeric_limits<double>::quiet_NaN());
        for (double v : sweep) {
            system_params p = spec.params;
            if (spec.sweep_param)
                apply_param(p, *spec.sweep_param, v);
            for (scheme_kind s : spec.schemes)
                write_csv_row(os, simulate_row(s, p, spec));
        }
        return exit_ok;
    } catch (const error& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return exit_model_error;
    }
}

int cmd_preset(const std::string& name, const std::optional<std::string>& out_path,
               std::optional<std::uint64_t> seed_override, std::optional<int> reps_override,
               bool fast)
{
    preset ps;
    try {
        ps = make_preset(name);
    } catch (const error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    run_spec spec;
    spec.seed = seed_override.value_or(1);
    spec.replications = reps_override.value_or(fast ? ps.fast_replications : ps.full_replications);
    spec.target_deliveries = fast ? ps.fast_deliveries : ps.full_deliveries;

    try {
        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        write_csv_header(os, spec.seed, config_hash("preset:" + name));
        const std::uint64_t budget = fast ? 3'000'000ULL : 50'000'000ULL;
        for (const experiment_point& pt : ps.points)
            for (scheme_kind s : ps.schemes)
                write_csv_row(os, simulate_row(s, pt.params, spec, budget));
        return exit_ok;
    } catch (const error& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return exit_model_error;
    }
}

int cmd_table1(const std::optional<std::string>& config_path,
               const std::optional<std::string>& out_path)
{
    system_params params = preset_baseline();
    params.gamma_th = db_to_linear(16.0);
    params.b_s = params.b_r = 2100.0;
    params.d_rs = 6.0;
    params.d_dr = 4.0;
    params.d_ds = 10.0;
    params.p_t = 500.0;
    if (config_path) {
        try {
            params = load_config_file(*config_path).params;
        } catch (const error& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return exit_config_error;
        }
    }

    try {
        const derived_params d = derive(params);
        std::ofstream file;
        std::ostream& os = open_output(out_path, file);
        os << "# wpaoi " << tool_version << " table1 p_suc_s=" << fmt(d.p_suc_s)
           << " p_suc_r=" << fmt(d.p_suc_r) << " bprime_s=" << fmt(d.bprime_s)
           << " bprime_r=" << fmt(d.bprime_r) << " p_suc_af=" << fmt(d.p_suc_af) << '\n';
        os << "scheme,source_capacitor,source_success,relay_capacitor,relay_success,"
              "queue,stable,paoi,kind\n";
        const char* cap[] = {"full", "charging"};
        const char* suc[] = {"deterministic", "random"};
        for (int sc = 0; sc < 2; ++sc)
            for (int sr = 0; sr < 2; ++sr)
                for (int rc = 0; rc < 2; ++rc)
                    for (int rr = 0; rr < 2; ++rr) {
                        const special_case_spec spec{sc == 1, sr == 1, rc == 1, rr == 1};
                        const paoi_result r = special_case(spec, d);
                        os << "df," << cap[sc] << ',' << suc[sr] << ',' << cap[rc] << ','
                           << suc[rr] << ',' << r.queue_label << ','
                           << (r.stable ? "stable" : "unstable") << ','
                           << (r.value ? fmt(*r.value) : std::string("UNSTABLE")) << ','
                           << (r.kind == bound_kind::exact ? "exact" : "bound") << '\n';
                    }
        for (int full = 1; full >= 0; --full)
            for (int det = 1; det >= 0; --det) {
                const double v = af_special_case(full == 1, det == 1, d);
                os << "af," << cap[1 - full] << ',' << suc[1 - det] << ',' << cap[1 - full]
                   << ',' << suc[1 - det] << ",AF,stable," << fmt(v) << ",exact\n";
            }
        return exit_ok;
    } catch (const error& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return exit_model_error;
    }
}

namespace {

struct selftest_ctx {
    std::ostream& os;
    bool all_ok = true;

    void check(const std::string& name, bool ok, const std::string& detail = "")
    {
        os << (ok ? "PASS" : "FAIL") << ' ' << name;
        if (!detail.empty())
            os << "  (" << detail << ')';
        os << '\n';
        all_ok = all_ok && ok;
    }
};

} // namespace

int cmd_selftest(std::ostream& os)
{
    selftest_ctx t{os};

    // special-function accuracy gates
    {
        struct anchor {
            double x, k1;
        };
        const anchor anchors[] = {{1e-6, 999999.99999278432422},
                                  {0.25, 3.747025974440711638},
                                  {1.0, 0.60190723019723457474},
                                  {2.0, 0.13986588181652242728},
                                  {2.5, 0.073890816347747063649},
                                  {10.0, 1.8648773453825584597e-05},
                                  {30.0, 2.1677320018915494249e-14}};
        double worst = 0.0;
        for (const anchor& a : anchors)
            worst = std::max(worst, std::abs(specfun::bessel_k1(a.x) - a.k1) / a.k1);
        t.check("specfun.k1_reference", worst <= 1e-10, "worst rel err " + fmt(worst));

        double worst_q = 0.0;
        for (std::int64_t k : {1, 2, 3, 5, 10, 40})
            for (double x : {0.0, 0.3, 1.0, 2.0, 7.5, 30.0}) {
                const double q = specfun::regularized_gamma_q(k, x);
                const double p = specfun::regularized_gamma_p_series(k, x);
                worst_q = std::max(worst_q, std::abs(q + p - 1.0));
            }
        t.check("specfun.gamma_complement", worst_q <= 1e-12, "worst |Q+P-1| " + fmt(worst_q));
    }

    // distribution normalization
    {
        bool ok = true;
        for (double b : {0.5, 2.0}) {
            const charge_time_dist d(b);
            const auto cap = static_cast<std::int64_t>(
                std::ceil(b) + 50.0 * std::sqrt(b + 1.0));
            double sum = 0.0;
            for (std::int64_t m = 1; m <= cap; ++m)
                sum += d.pmf(m);
            ok = ok && std::abs(sum - 1.0) <= 1e-10;
        }
        const af_wait_dist af(1.0, 2.0);
        double sum = 0.0;
        for (std::int64_t m = 1; m <= 200; ++m)
            sum += af.pmf(m);
        ok = ok && std::abs(sum - 1.0) <= 1e-10;
        t.check("charging.pmf_normalization", ok);
    }

    // sampler goodness of fit (fixed seed; --seed does not alter the verdict)
    {
        rng_stream g(123456789);
        const charge_time_dist d(1.0);
        std::vector<std::uint64_t> counts(30, 0);
        const int n = 200'000;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t m = d.sample(g);
            counts[std::min<std::uint64_t>(m, counts.size()) - 1]++;
        }
        std::vector<double> probs(counts.size());
        double head = 0.0;
        for (std::size_t m = 1; m < counts.size(); ++m) {
            probs[m - 1] = d.pmf(static_cast<std::int64_t>(m));
            head += probs[m - 1];
        }
        probs.back() = 1.0 - head;
        const chi_square_result gof = chi_square_gof(counts, probs);
        t.check("charging.sampler_gof", gof.p_value > 0.001, "p=" + fmt(gof.p_value));
    }

    // tail-sum moments against brute-force pmf sums
    {
        const af_wait_dist af(1.0, 2.0);
        const moment_pair m = af.moments();
        double m1 = 0.0;
        double m2 = 0.0;
        for (std::int64_t i = 1; i <= 400; ++i) {
            const double p = af.pmf(i);
            m1 += static_cast<double>(i) * p;
            m2 += static_cast<double>(i) * static_cast<double>(i) * p;
        }
        const bool ok = std::abs(m.mean - m1) / m1 <= 1e-10
                        && std::abs(m.second - m2) / m2 <= 1e-10;
        t.check("charging.af_moments_series", ok);
    }

    // Kingman bound dominates the exact waiting times on a random stable grid
    {
        rng_stream g(97531);
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const double pr = 0.05 + 0.9 * g.next_unit();
            const double ps = pr * (0.05 + 0.9 * g.next_unit());
            const moment_pair xr = special_case_x_moments(false, true, 0.0, pr);
            const moment_pair xs = special_case_x_moments(false, true, 0.0, ps);
            const double w_exact = waiting_exact(exact_queue_kind::geo_geo, ps, xr);
            ok = w_exact <= kingman_waiting_upper(xs, xr) + 1e-12;
        }
        for (int i = 0; i < 200 && ok; ++i) {
            const double ps = 0.05 + 0.5 * g.next_unit();
            const double pr = 0.3 + 0.65 * g.next_unit();
            const double br = 2.0 * g.next_unit();
            const moment_pair xr = special_case_x_moments(true, true, br, pr);
            if (xr.mean >= 1.0 / ps)
                continue;
            const moment_pair xs = special_case_x_moments(false, true, 0.0, ps);
            if (xr.mean >= xs.mean)
                continue;
            const double w_exact = waiting_exact(exact_queue_kind::geo_g, ps, xr);
            ok = w_exact <= kingman_waiting_upper(xs, xr) + 1e-12;
        }
        t.check("analysis.kingman_dominance", ok);
    }

    // special-case table vs the general bound specialized per row
    {
        rng_stream g(24680);
        double worst = 0.0;
        for (int sc = 0; sc < 2; ++sc)
            for (int sr = 0; sr < 2; ++sr)
                for (int rc = 0; rc < 2; ++rc)
                    for (int rr = 0; rr < 2; ++rr)
                        for (int i = 0; i < 50; ++i) {
                            derived_params d;
                            d.p_suc_s = sr ? 0.05 + 0.9 * g.next_unit() : 1.0;
                            d.p_suc_r = rr ? 0.05 + 0.9 * g.next_unit() : 1.0;
                            d.bprime_s = sc ? 0.1 + 4.0 * g.next_unit() : 0.0;
                            d.bprime_r = rc ? 0.1 + 4.0 * g.next_unit() : 0.0;
                            const special_case_spec spec{sc == 1, sr == 1, rc == 1, rr == 1};
                            const paoi_result r = special_case(spec, d);
                            if (!r.stable || !r.kingman_bound)
                                continue;
                            const moment_pair xs = special_case_x_moments(
                                sc == 1, sr == 1, d.bprime_s, d.p_suc_s);
                            const moment_pair xr = special_case_x_moments(
                                rc == 1, rr == 1, d.bprime_r, d.p_suc_r);
                            double general = 2.0; // D/D/1 case
                            if (xr.mean < xs.mean)
                                general = *paoi_df_upper(xs, xr).kingman_bound;
                            worst = std::max(worst, std::abs(*r.kingman_bound - general)
                                                        / general);
                        }
        t.check("analysis.table_reduction", worst <= 1e-9, "worst rel dev " + fmt(worst));
    }

    // simulator anchors
    {
        sim_config cfg;
        cfg.scheme = scheme_kind::df;
        cfg.params = preset_baseline();
        cfg.params.c_p = 0.0;
        // full-power deterministic limit: B' ~ 1e-9 and gamma_th/b ~ 1e-21,
        // so the success probability rounds to exactly 1
        cfg.params.gamma_th = 1e-30;
        cfg.params.b_s = cfg.params.b_r = 1e-9;
        cfg.params.d_rs = cfg.params.d_dr = cfg.params.d_ds = 1.0;
        cfg.target_deliveries = 20'000;
        cfg.replications = 2;
        cfg.seed = 42;
        const age_stats s = run(cfg);
        t.check("simulator.dd1_paoi", std::abs(s.mean_paoi - 2.0) <= 1e-9,
                "paoi=" + fmt(s.mean_paoi));
    }
    {
        sim_config cfg;
        cfg.scheme = scheme_kind::af;
        cfg.params = preset_baseline();
        cfg.params.b_s = cfg.params.b_r = 1e-9;
        cfg.params.d_rs = cfg.params.d_dr = cfg.params.d_ds = 1.0;
        cfg.force_p_suc_af = 0.25;
        cfg.target_deliveries = 20'000;
        cfg.replications = 4;
        cfg.seed = 42;
        const age_stats s = run(cfg);
        const double se = std::max(s.ci95_paoi / 1.96, 1e-6);
        t.check("simulator.af_forced_quarter", std::abs(s.mean_paoi - 4.0) <= 3.0 * se,
                "paoi=" + fmt(s.mean_paoi));
    }
    {
        sim_config cfg;
        cfg.scheme = scheme_kind::direct;
        cfg.params = preset_baseline();
        cfg.params.b_s = 1.6; // B' = 2 at p_t = 1, eta = 0.8, d_sp = 1
        cfg.params.b_r = 1.0;
        cfg.force_p_suc_direct = 0.5;
        cfg.target_deliveries = 50'000;
        cfg.replications = 4;
        cfg.seed = 7;
        const comparison_report rep = validate_against_analysis(cfg);
        t.check("simulator.direct_vs_analysis", rep.all_ok);
    }
    {
        // waiting means autocorrelate, so the budget is sized for ~5 sigma
        const queue_sim_result q = simulate_geo_geo_queue(0.2, 0.5, 4'000'000, 11);
        const moment_pair xr = special_case_x_moments(false, true, 0.0, 0.5);
        const double exact = waiting_exact(exact_queue_kind::geo_geo, 0.2, xr);
        const bool ok = std::abs(q.mean_wait - exact) / exact <= 0.03;
        t.check("queue.geo_geo_exact", ok,
                "sim=" + fmt(q.mean_wait) + " exact=" + fmt(exact));
    }

    os << (t.all_ok ? "SELFTEST PASS" : "SELFTEST FAIL") << '\n';
    return t.all_ok ? exit_ok : exit_selftest_failure;
}

int dispatch(int argc, const char* const* argv)
{
    CLI::App app{"analysis and slot-level simulation of age metrics for "
                 "wireless-powered direct, decode-and-forward and amplify-and-forward "
                 "status updating"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int reps = 0;
    bool reps_set = false;
    bool fast = false;

    auto add_common = [&](CLI::App* cmd, bool with_out = true) {
        cmd->add_flag("--fast", fast, "reduced statistical budget");
        cmd->add_option("--seed", seed, "root seed")->each([&](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--replications", reps, "independent replications")
            ->each([&](const std::string&) { reps_set = true; });
        if (with_out)
            cmd->add_option("--out", out_path, "output CSV path (default stdout)");
    };

    CLI::App* c_run = app.add_subcommand("run", "run experiments from a config file");
    c_run->add_option("--config", config_path, "flat key = value config file")->required();
    add_common(c_run);

    CLI::App* c_preset = app.add_subcommand("preset", "run a named figure preset");
    c_preset->add_option("name", preset_name, "preset name (fig4..fig8b)")->required();
    add_common(c_preset);

    CLI::App* c_table = app.add_subcommand("table1", "evaluate the special-case table");
    c_table->add_option("--config", config_path, "optional config for the parameter point");
    c_table->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* c_self = app.add_subcommand("selftest", "run the invariant suite");
    add_common(c_self, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config_error;
    }

    const std::optional<std::string> out =
        out_path.empty() ? std::nullopt : std::make_optional(out_path);
    const std::optional<std::uint64_t> seed_opt =
        seed_set ? std::make_optional(seed) : std::nullopt;
    const std::optional<int> reps_opt = reps_set ? std::make_optional(reps) : std::nullopt;

    if (c_run->parsed())
        return cmd_run(config_path, out, seed_opt, reps_opt, fast);
    if (c_preset->parsed())
        return cmd_preset(preset_name, out, seed_opt, reps_opt, fast);
    if (c_table->parsed())
        return cmd_table1(config_path.empty() ? std::nullopt
                                              : std::make_optional(config_path),
                          out);
    if (c_self->parsed())
        return cmd_selftest(std::cout);
    return exit_config_error;
}

} // namespace wpaoi::cli
