#include "wpaoi/simulator.hpp"

#include "wpaoi/analysis.hpp"
#include "wpaoi/charging.hpp"
#include "wpaoi/errors.hpp"
#include "wpaoi/rng.hpp"
#include "wpaoi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <thread>

namespace wpaoi {

std::string to_string(scheme_kind s)
{
    switch (s) {
    case scheme_kind::direct:
        return "direct";
    case scheme_kind::df:
        return "df";
    case scheme_kind::af:
        return "af";
    }
    return "?";
}

namespace {

struct cycle_record {
    std::uint64_t peak = 0;
    std::uint64_t area = 0;
    std::uint64_t len = 0;
    std::uint64_t xs = 0; // interarrival preceding this packet (df), 0 if first
    std::uint64_t w = 0;  // queue wait (df)
    std::uint64_t xr = 0; // service slots (df)
    std::uint64_t y = 0;  // system time (df)
};

struct rep_result {
    double mean_aoi = 0.0;
    double mean_paoi = 0.0;
    double mean_paoi_second = 0.0;
    std::uint64_t deliveries = 0;
    std::uint64_t slots = 0;
    link_counters src{};
    link_counters rel{};
    double mean_t_source = 0.0;
    double mean_t_relay = 0.0;
    double mean_t_af = 0.0;
    double mean_queue_len = 0.0;
    double e_xs_w = 0.0;
    double mean_xs = 0.0;
    double mean_y = 0.0;
    double mean_w = 0.0;
    double mean_xr = 0.0;
    bool diverged = false;
    std::vector<std::uint64_t> service_histogram;
};

// Per-scheme derived scalars the slot loop needs. Success draws use either
// the analytic probabilities (Bernoulli mode) or fresh fades against the SNR
// threshold (physical mode); both must agree statistically, which the tests
// exercise as a self-check of the closed forms.
struct loop_params {
    double bprime_s = 0.0;
    double bprime_r = 0.0;
    double p_s = 1.0;
    double p_r = 1.0;
    double p_direct = 1.0;
    double p_af = 1.0;
    // physical-mode fade thresholds / mean SNRs
    double thr_direct = 0.0; // success iff Exp(1) >= thr
    double thr_s = 0.0;
    double thr_r = 0.0;
    double snr1_mean = 0.0; // af hop mean SNRs
    double snr2_mean = 0.0;
    double gamma_th = 0.0;
};

loop_params make_loop_params(const sim_config& cfg)
{
    const system_params& p = cfg.params;
    loop_params lp;
    lp.gamma_th = p.gamma_th;
    lp.bprime_s = normalized_capacitor(p.d_sp, p.alpha, p.b_s, p.eta, p.p_t);
    switch (cfg.scheme) {
    case scheme_kind::direct:
        lp.p_direct = cfg.force_p_suc_direct.value_or(
            success_probability(p.sigma2, p.gamma_th, p.d_ds, p.alpha, p.b_s));
        lp.thr_direct = p.sigma2 * p.gamma_th * std::pow(p.d_ds, p.alpha) / p.b_s;
        break;
    case scheme_kind::df: {
        lp.bprime_r = normalized_capacitor(p.d_rp, p.alpha, p.b_r, p.eta, p.p_t);
        const double ps = success_probability(p.sigma2, p.gamma_th, p.d_rs, p.alpha, p.b_s);
        const double b_star = effective_relay_power(p.b_r, p.c_p, ps);
        lp.p_s = cfg.force_p_suc_s.value_or(ps);
        lp.p_r = cfg.force_p_suc_r.value_or(
            success_probability(p.sigma2, p.gamma_th, p.d_dr, p.alpha, b_star));
        lp.thr_s = p.sigma2 * p.gamma_th * std::pow(p.d_rs, p.alpha) / p.b_s;
        lp.thr_r = p.sigma2 * p.gamma_th * std::pow(p.d_dr, p.alpha) / b_star;
        break;
    }
    case scheme_kind::af:
        lp.bprime_r = normalized_capacitor(p.d_rp, p.alpha, p.b_r, p.eta, p.p_t);
        lp.p_af = cfg.force_p_suc_af.value_or(success_prob_af(p));
        lp.snr1_mean = p.b_s * std::pow(p.d_rs, -p.alpha) / p.sigma2;
        lp.snr2_mean = p.b_r * std::pow(p.d_dr, -p.alpha) / p.sigma2;
        break;
    }
    return lp;
}

class slot_runner {
public:
    slot_runner(const sim_config& cfg, const loop_params& lp, rng_stream rng)
        : cfg_(cfg), lp_(lp), rng_(rng)
    {
    }

    rep_result run()
    {
        switch (cfg_.scheme) {
        case scheme_kind::direct:
            run_onehop(/*af=*/false);
            break;
        case scheme_kind::af:
            run_onehop(/*af=*/true);
            break;
        case scheme_kind::df:
            run_df();
            break;
        }
        return finalize();
    }

private:
    bool more_slots(std::uint64_t n, std::uint64_t deliveries) const
    {
        if (cfg_.horizon_slots)
            return n <= *cfg_.horizon_slots;
        return deliveries < *cfg_.target_deliveries;
    }

    void begin_slot()
    {
        if (pending_reset_) {
            age_ = *pending_reset_;
            pending_reset_.reset();
        } else if (slot_ > 1) {
            ++age_;
        }
        area_ += age_;
        ++len_;
    }

    void record_delivery(std::uint64_t stamp, std::uint64_t xs, std::uint64_t w,
                         std::uint64_t xr)
    {
        cycle_record c;
        c.peak = age_;
        c.area = area_;
        c.len = len_;
        c.xs = xs;
        c.w = w;
        c.xr = xr;
        c.y = slot_ - stamp;
        cycles_.push_back(c);
        area_ = 0;
        len_ = 0;
        pending_reset_ = slot_ + 1 - stamp;
    }

    bool draw_direct() { return physical() ? rng_.next_exp() >= lp_.thr_direct
                                           : rng_.bernoulli(lp_.p_direct); }
    bool draw_src() { return physical() ? rng_.next_exp() >= lp_.thr_s
                                        : rng_.bernoulli(lp_.p_s); }
    bool draw_rel() { return physical() ? rng_.next_exp() >= lp_.thr_r
                                        : rng_.bernoulli(lp_.p_r); }
    bool draw_af()
    {
        if (!physical())
            return rng_.bernoulli(lp_.p_af);
        const double g1 = lp_.snr1_mean * rng_.next_exp();
        const double g2 = lp_.snr2_mean * rng_.next_exp();
        return g1 * g2 / (g1 + g2 + 1.0) >= lp_.gamma_th;
    }

    bool physical() const { return cfg_.mode == success_mode::physical; }

    // direct and af share the one-hop renewal structure; af waits for both
    // capacitors and tracks the per-node crossing times.
    void run_onehop(bool af)
    {
        double cap_s = 0.0;
        double cap_r = 0.0;
        bool s_full = false;
        bool r_full = false;
        std::uint64_t cycle_start = 0; // slot of previous attempt
        std::uint64_t s_cross = 0;
        std::uint64_t r_cross = 0;

        for (slot_ = 1; more_slots(slot_, cycles_.size()); ++slot_) {
            begin_slot();
            if (!s_full) {
                cap_s += rng_.next_exp();
                if (cap_s >= lp_.bprime_s) {
                    s_full = true;
                    s_cross = slot_;
                }
            }
            if (af && !r_full) {
                cap_r += rng_.next_exp();
                if (cap_r >= lp_.bprime_r) {
                    r_full = true;
                    r_cross = slot_;
                }
            }
            const bool ready = af ? (s_full && r_full) : s_full;
            if (!ready)
                continue;

            // attempt in this slot; both capacitors fully discharge
            t_source_.add(static_cast<double>(s_cross - cycle_start));
            if (af) {
                t_relay_.add(static_cast<double>(r_cross - cycle_start));
                t_af_.add(static_cast<double>(slot_ - cycle_start));
            }
            cycle_start = slot_;
            cap_s = 0.0;
            cap_r = 0.0;
            s_full = r_full = false;
            ++src_.attempts;
            if (af ? draw_af() : draw_direct()) {
                ++src_.successes;
                const std::uint64_t prev = last_success_;
                last_success_ = slot_;
                record_delivery(slot_, prev ? slot_ - prev : 0, 0, 0);
            }
        }
    }

    void run_df()
    {
        double cap_s = 0.0;
        bool s_full = false;
        std::uint64_t s_cycle_start = 0;

        struct packet {
            std::uint64_t stamp;
            std::uint64_t gap; // interarrival preceding this packet, 0 if first
        };
        std::deque<packet> queue;
        bool serving = false;
        packet in_service{};
        std::uint64_t service_start = 0;
        std::uint64_t attempt_cycle_start = 0;
        double cap_r = 0.0;
        double banked = 0.0;
        std::uint64_t queue_len_sum = 0;

        for (slot_ = 1; more_slots(slot_, cycles_.size()); ++slot_) {
            begin_slot();

            // service pickup: packets that arrived in earlier slots only
            if (!serving && !queue.empty()) {
                in_service = queue.front();
                queue.pop_front();
                serving = true;
                service_start = slot_;
                attempt_cycle_start = slot_ - 1;
                cap_r = cfg_.relay_energy_banking ? banked : 0.0;
                banked = 0.0;
            }

            // harvests
            if (!s_full) {
                cap_s += rng_.next_exp();
                if (cap_s >= lp_.bprime_s)
                    s_full = true;
            }
            if (serving) {
                cap_r += rng_.next_exp();
            } else if (cfg_.relay_energy_banking) {
                banked += rng_.next_exp();
            }

            // relay attempt
            if (serving && cap_r >= lp_.bprime_r) {
                t_relay_.add(static_cast<double>(slot_ - attempt_cycle_start));
                attempt_cycle_start = slot_;
                cap_r = 0.0;
                ++rel_.attempts;
                if (draw_rel()) {
                    ++rel_.successes;
                    const std::uint64_t w = service_start - in_service.stamp - 1;
                    const std::uint64_t xr = slot_ - service_start + 1;
                    record_delivery(in_service.stamp, in_service.gap, w, xr);
                    serving = false;
                }
            }

            // source attempt
            if (s_full) {
                t_source_.add(static_cast<double>(slot_ - s_cycle_start));
                s_cycle_start = slot_;
                cap_s = 0.0;
                s_full = false;
                ++src_.attempts;
                if (draw_src()) {
                    ++src_.successes;
                    queue.push_back({slot_, last_arrival_ ? slot_ - last_arrival_ : 0});
                    last_arrival_ = slot_;
                }
            }

            queue_len_sum += queue.size() + (serving ? 1 : 0);
            if (queue.size() > cfg_.max_queue_alarm) {
                diverged_ = true;
                break;
            }
        }
        queue_len_avg_ = slot_ > 1 ? static_cast<double>(queue_len_sum)
                                         / static_cast<double>(slot_ - 1)
                                   : 0.0;
    }

    rep_result finalize()
    {
        rep_result r;
        r.diverged = diverged_;
        r.slots = slot_ - 1;
        r.src = src_;
        r.rel = rel_;
        r.mean_t_source = t_source_.mean();
        r.mean_t_relay = t_relay_.mean();
        r.mean_t_af = t_af_.mean();
        r.mean_queue_len = queue_len_avg_;
        r.deliveries = cycles_.size();
        if (cycles_.empty())
            return r;

        const auto cut = static_cast<std::size_t>(
            std::ceil(cfg_.warmup_fraction * static_cast<double>(cycles_.size())));
        running_stats peaks;
        double peak_sq_sum = 0.0;
        running_stats xs_stat;
        running_stats y_stat;
        running_stats w_stat;
        running_stats xr_stat;
        running_stats xw_stat;
        std::uint64_t area = area_; // trailing partial cycle (horizon mode)
        std::uint64_t len = len_;
        for (std::size_t j = cut; j < cycles_.size(); ++j) {
            const cycle_record& c = cycles_[j];
            peaks.add(static_cast<double>(c.peak));
            peak_sq_sum += static_cast<double>(c.peak) * static_cast<double>(c.peak);
            area += c.area;
            len += c.len;
            if (cfg_.scheme == scheme_kind::df) {
                y_stat.add(static_cast<double>(c.y));
                w_stat.add(static_cast<double>(c.w));
                xr_stat.add(static_cast<double>(c.xr));
                if (c.xs > 0) {
                    xs_stat.add(static_cast<double>(c.xs));
                    xw_stat.add(static_cast<double>(c.xs) * static_cast<double>(c.w));
                }
            }
        }
        r.mean_paoi = peaks.mean();
        r.mean_paoi_second =
            peaks.count() ? peak_sq_sum / static_cast<double>(peaks.count()) : 0.0;
        r.mean_aoi = len ? static_cast<double>(area) / static_cast<double>(len) : 0.0;
        if (cfg_.service_histogram_cells > 0 && cfg_.scheme == scheme_kind::df) {
            r.service_histogram.assign(cfg_.service_histogram_cells, 0);
            for (std::size_t j = cut; j < cycles_.size(); ++j) {
                const std::uint64_t cell =
                    std::min<std::uint64_t>(cycles_[j].xr, cfg_.service_histogram_cells);
                r.service_histogram[cell - 1]++;
            }
        }
        r.mean_xs = xs_stat.mean();
        r.mean_y = y_stat.mean();
        r.mean_w = w_stat.mean();
        r.mean_xr = xr_stat.mean();
        r.e_xs_w = xw_stat.mean();
        return r;
    }

    const sim_config& cfg_;
    const loop_params& lp_;
    rng_stream rng_;

    std::uint64_t slot_ = 1;
    std::uint64_t age_ = 1;
    std::optional<std::uint64_t> pending_reset_;
    std::uint64_t area_ = 0;
    std::uint64_t len_ = 0;
    std::vector<cycle_record> cycles_;
    std::uint64_t last_success_ = 0;
    std::uint64_t last_arrival_ = 0;
    link_counters src_{};
    link_counters rel_{};
    running_stats t_source_;
    running_stats t_relay_;
    running_stats t_af_;
    double queue_len_avg_ = 0.0;
    bool diverged_ = false;
};

void validate_config(const sim_config& cfg)
{
    validate(cfg.params);
    if (cfg.horizon_slots.has_value() == cfg.target_deliveries.has_value())
        throw invalid_param("run_length", "set exactly one of horizon_slots/target_deliveries");
    if (cfg.horizon_slots && *cfg.horizon_slots < 1000)
        throw invalid_param("horizon_slots", "must be >= 1000");
    if (cfg.target_deliveries && *cfg.target_deliveries == 0)
        throw invalid_param("target_deliveries", "must be > 0");
    if (!(cfg.warmup_fraction >= 0.0 && cfg.warmup_fraction <= 0.5))
        throw invalid_param("warmup_fraction", "must be in [0, 0.5]");
    if (cfg.replications < 1)
        throw invalid_param("replications", "must be >= 1");
    const bool any_force = cfg.force_p_suc_s || cfg.force_p_suc_r || cfg.force_p_suc_direct
                           || cfg.force_p_suc_af;
    if (any_force && cfg.mode == success_mode::physical)
        throw invalid_param("force_p_suc", "overrides require Bernoulli mode");
}

} // namespace

age_stats run(const sim_config& cfg)
{
    validate_config(cfg);
    const loop_params lp = make_loop_params(cfg);

    const int reps = cfg.replications;
    std::vector<rep_result> results(static_cast<std::size_t>(reps));

    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, reps));

    auto work = [&](int worker_id) {
        for (int r = worker_id; r < reps; r += workers) {
            slot_runner runner(cfg, lp, rng_stream::split(cfg.seed, static_cast<std::uint64_t>(r)));
            results[static_cast<std::size_t>(r)] = runner.run();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool)
            t.join();
    }

    // deterministic reduction ordered by replication index
    age_stats out;
    std::vector<double> aoi_means;
    std::vector<double> paoi_means;
    std::vector<double> paoi_seconds;
    std::vector<double> t_src;
    std::vector<double> t_rel;
    std::vector<double> t_af;
    std::vector<double> qlen;
    std::vector<double> exw;
    std::vector<double> xs_m;
    std::vector<double> y_m;
    std::vector<double> w_m;
    std::vector<double> xr_m;
    for (const rep_result& r : results) {
        out.deliveries += r.deliveries;
        out.total_slots += r.slots;
        out.source_link.attempts += r.src.attempts;
        out.source_link.successes += r.src.successes;
        out.relay_link.attempts += r.rel.attempts;
        out.relay_link.successes += r.rel.successes;
        out.diverged = out.diverged || r.diverged;
        if (r.deliveries == 0)
            continue;
        aoi_means.push_back(r.mean_aoi);
        paoi_means.push_back(r.mean_paoi);
        paoi_seconds.push_back(r.mean_paoi_second);
        if (!r.service_histogram.empty()) {
            if (out.service_histogram.empty())
                out.service_histogram.assign(r.service_histogram.size(), 0);
            for (std::size_t i = 0; i < r.service_histogram.size(); ++i)
                out.service_histogram[i] += r.service_histogram[i];
        }
        t_src.push_back(r.mean_t_source);
        t_rel.push_back(r.mean_t_relay);
        t_af.push_back(r.mean_t_af);
        qlen.push_back(r.mean_queue_len);
        exw.push_back(r.e_xs_w);
        xs_m.push_back(r.mean_xs);
        y_m.push_back(r.mean_y);
        w_m.push_back(r.mean_w);
        xr_m.push_back(r.mean_xr);
    }
    out.mean_aoi = mean_of(aoi_means);
    out.mean_paoi = mean_of(paoi_means);
    out.mean_paoi_second = mean_of(paoi_seconds);
    out.ci95_aoi = ci95_half_width(aoi_means);
    out.ci95_paoi = ci95_half_width(paoi_means);
    out.mean_t_source = mean_of(t_src);
    out.mean_t_relay = mean_of(t_rel);
    out.mean_t_af = mean_of(t_af);
    out.mean_queue_len = mean_of(qlen);
    out.e_xs_w_estimate = mean_of(exw);
    out.mean_xs = mean_of(xs_m);
    out.mean_y = mean_of(y_m);
    out.mean_w = mean_of(w_m);
    out.mean_xr = mean_of(xr_m);
    return out;
}

comparison_report validate_against_analysis(const sim_config& cfg)
{
    comparison_report rep;
    rep.stats = run(cfg);
    const age_stats& s = rep.stats;
    const system_params& p = cfg.params;
    const loop_params lp = make_loop_params(cfg);

    auto add_eq = [&](const std::string& name, double analytic, double sim, double se) {
        comparison_row row{name, analytic, sim, se, false, false};
        row.ok = std::abs(sim - analytic) <= 3.0 * se + 1e-12;
        rep.rows.push_back(row);
        rep.all_ok = rep.all_ok && row.ok;
    };
    auto add_bound = [&](const std::string& name, double bound, double sim, double se) {
        comparison_row row{name, bound, sim, se, true, false};
        row.ok = sim <= bound + 3.0 * se + 1e-12;
        rep.rows.push_back(row);
        rep.all_ok = rep.all_ok && row.ok;
    };
    auto binom_se = [](double prob, std::uint64_t n) {
        return n ? std::sqrt(prob * (1.0 - prob) / static_cast<double>(n)) : 0.0;
    };

    const charge_time_dist ts(lp.bprime_s);

    switch (cfg.scheme) {
    case scheme_kind::direct: {
        add_eq("p_suc_direct", lp.p_direct, s.source_link.empirical(),
               binom_se(lp.p_direct, s.source_link.attempts));
        add_eq("mean_t_source", ts.moments().mean, s.mean_t_source,
               std::sqrt(ts.moments().variance() / static_cast<double>(s.source_link.attempts)));
        const moment_pair x = cycle_moments(ts.moments().mean, ts.moments().second, lp.p_direct);
        add_eq("paoi", paoi_onehop(x), s.mean_paoi, s.ci95_paoi / 1.96);
        add_eq("aoi", aoi_onehop(x), s.mean_aoi, s.ci95_aoi / 1.96);
        break;
    }
    case scheme_kind::af: {
        add_eq("p_suc_af", lp.p_af, s.source_link.empirical(),
               binom_se(lp.p_af, s.source_link.attempts));
        const af_wait_dist taf(lp.bprime_s, lp.bprime_r);
        const moment_pair tm = taf.moments();
        add_eq("mean_t_af", tm.mean, s.mean_t_af,
               std::sqrt(tm.variance() / static_cast<double>(s.source_link.attempts)));
        const moment_pair x = cycle_moments(tm.mean, tm.second, lp.p_af);
        add_eq("paoi", paoi_onehop(x), s.mean_paoi, s.ci95_paoi / 1.96);
        add_eq("aoi", aoi_onehop(x), s.mean_aoi, s.ci95_aoi / 1.96);
        break;
    }
    case scheme_kind::df: {
        add_eq("p_suc_s", lp.p_s, s.source_link.empirical(),
               binom_se(lp.p_s, s.source_link.attempts));
        add_eq("p_suc_r", lp.p_r, s.relay_link.empirical(),
               binom_se(lp.p_r, s.relay_link.attempts));
        const charge_time_dist tr(lp.bprime_r);
        add_eq("mean_t_source", ts.moments().mean, s.mean_t_source,
               std::sqrt(ts.moments().variance() / static_cast<double>(s.source_link.attempts)));
        add_eq("mean_t_relay", tr.moments().mean, s.mean_t_relay,
               std::sqrt(tr.moments().variance() / static_cast<double>(s.relay_link.attempts)));
        const moment_pair xs = cycle_moments(ts.moments().mean, ts.moments().second, lp.p_s);
        const moment_pair xr = cycle_moments(tr.moments().mean, tr.moments().second, lp.p_r);
        add_eq("mean_xs", xs.mean, s.mean_xs,
               std::sqrt(xs.variance() / static_cast<double>(s.deliveries)));
        add_eq("mean_xr", xr.mean, s.mean_xr,
               std::sqrt(xr.variance() / static_cast<double>(s.deliveries)));
        const paoi_result bound = paoi_df_upper(xs, xr);
        add_bound("paoi_vs_bound", *bound.kingman_bound, s.mean_paoi, s.ci95_paoi / 1.96);
        const double aoi_hybrid = aoi_df_hybrid(xs, xr, s.e_xs_w_estimate);
        add_eq("aoi_vs_hybrid", aoi_hybrid, s.mean_aoi, s.ci95_aoi / 1.96);
        break;
    }
    }
    return rep;
}

} // namespace wpaoi
