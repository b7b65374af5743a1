#include "cli_runner.hpp"

#include "wpaoi/errors.hpp"
#include "wpaoi/presets.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace wpaoi;
namespace cli = wpaoi::cli;

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(line);
    while (std::getline(in, tok, ','))
        out.push_back(tok);
    if (!line.empty() && line.back() == ',')
        out.push_back("");
    return out;
}

struct temp_file {
    std::string path;
    explicit temp_file(const std::string& name, const std::string& content)
        : path("/tmp/wpaoi_test_" + name)
    {
        std::ofstream(path) << content;
    }
    ~temp_file() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("config parsing with dB conversion at the boundary")
    {
        const cli::run_spec spec = cli::parse_config_text(
            "# comment\n"
            "scheme = df, af\n"
            "p_t = 2.5\n"
            "gamma_th_db = 16\n"
            "b_s = 1000\n"
            "b_r = 500  # trailing comment\n"
            "target_deliveries = 5000\n"
            "seed = 77\n"
            "replications = 3\n"
            "mode = physical\n");
        CHECK(spec.schemes.size() == 2);
        CHECK(spec.params.p_t == doctest::Approx(2.5));
        CHECK(spec.params.gamma_th == doctest::Approx(std::pow(10.0, 1.6)));
        CHECK(spec.params.b_r == doctest::Approx(500.0));
        CHECK(spec.seed == 77);
        CHECK(spec.replications == 3);
        CHECK(spec.mode == success_mode::physical);
        // baseline defaults hold for unset keys
        CHECK(spec.params.eta == doctest::Approx(0.8));
        CHECK(spec.params.c_p == doctest::Approx(0.01));
    }

    TEST_CASE("config parsing rejects malformed input")
    {
        CHECK_THROWS_AS(cli::parse_config_text("scheme = direct\nb_s = abc\n"),
                        invalid_param);
        CHECK_THROWS_AS(cli::parse_config_text("scheme = direct\nnot a kv line\n"),
                        invalid_param);
        CHECK_THROWS_AS(cli::parse_config_text("scheme = warp\n"), invalid_param);
        CHECK_THROWS_AS(cli::parse_config_text("p_t = 1\n"), invalid_param); // no scheme
        CHECK_THROWS_AS(cli::parse_config_text("scheme = direct\nsweep_param = seed\n"
                                               "sweep_values = 1,2\n"),
                        invalid_param);
        CHECK_THROWS_AS(cli::parse_config_text("scheme = direct\nsweep_values = 1,2\n"),
                        invalid_param);
    }

    TEST_CASE("config hash is stable and content-sensitive")
    {
        const std::uint64_t a = cli::config_hash("x = 1\n");
        CHECK(a == cli::config_hash("x = 1\n"));
        CHECK(a != cli::config_hash("x = 2\n"));
    }

    TEST_CASE("csv schema: header, column count, 12-significant-digit floats")
    {
        std::ostringstream os;
        cli::write_csv_header(os, 42, 0xabcdef);
        cli::csv_row row;
        row.scheme = scheme_kind::direct;
        row.params = preset_baseline();
        row.paoi_analytic = 1.0 / 3.0;
        row.paoi_kind = "exact";
        row.paoi_sim = 2.0 / 3.0;
        row.deliveries = 9;
        cli::write_csv_row(os, row);

        std::istringstream in(os.str());
        std::string comment, header, line;
        std::getline(in, comment);
        std::getline(in, header);
        std::getline(in, line);
        CHECK(comment.rfind("# wpaoi", 0) == 0);
        CHECK(comment.find("seed=42") != std::string::npos);
        const auto cols = split_csv(header);
        const auto vals = split_csv(line);
        CHECK(cols.size() == 27);
        REQUIRE(vals.size() == cols.size());
        CHECK(vals[0] == "direct");
        CHECK(line.find("0.333333333333") != std::string::npos);
        CHECK(line.find("0.666666666667") != std::string::npos);
        // empty optional columns stay empty (aoi_analytic is column 16)
        CHECK(vals[16].empty());
    }

    TEST_CASE("analytic rows: exact for one-hop schemes, bound or empty for df")
    {
        system_params p = preset_baseline();
        p.gamma_th = std::pow(10.0, 1.6);
        p.b_s = p.b_r = 1000.0;
        p.d_rs = 6.0;
        p.d_dr = 4.0;
        p.d_ds = 10.0;
        p.p_t = 1.0;

        const cli::csv_row direct = cli::analytic_row(scheme_kind::direct, p);
        CHECK(direct.paoi_kind == "exact");
        CHECK(direct.aoi_analytic.has_value());

        const cli::csv_row df = cli::analytic_row(scheme_kind::df, p);
        CHECK(df.paoi_kind == "bound");
        CHECK_FALSE(df.aoi_analytic.has_value());
        CHECK(df.paoi_analytic.has_value());

        // swap the hops so the relay link is hopeless: unstable, no bound
        system_params bad = p;
        bad.d_rs = 4.0;
        bad.d_dr = 6.0;
        bad.b_r = 100.0;
        const cli::csv_row unstable = cli::analytic_row(scheme_kind::df, bad);
        CHECK_FALSE(unstable.paoi_analytic.has_value());
    }

    TEST_CASE("cmd_run end to end: sweep, exit code, csv shape")
    {
        const temp_file cfg("run.cfg",
                            "scheme = direct\n"
                            "b_s = 1.6\n"
                            "force_p_suc_direct = 0.5\n"
                            "target_deliveries = 2000\n"
                            "replications = 2\n"
                            "sweep_param = p_t\n"
                            "sweep_values = 1, 2\n");
        const std::string out = "/tmp/wpaoi_test_run_out.csv";
        CHECK(cli::cmd_run(cfg.path, out, 5, std::nullopt, true) == cli::exit_ok);
        std::ifstream in(out);
        std::string comment, header, l1, l2, extra;
        std::getline(in, comment);
        std::getline(in, header);
        REQUIRE(std::getline(in, l1));
        REQUIRE(std::getline(in, l2));
        CHECK_FALSE(std::getline(in, extra));
        const auto v1 = split_csv(l1);
        const auto v2 = split_csv(l2);
        CHECK(v1[1] == "1");
        CHECK(v2[1] == "2");
        CHECK(v1[26] == "0"); // not diverged
        std::remove(out.c_str());
    }

    TEST_CASE("cmd_run propagates missing config as a config error")
    {
        CHECK(cli::cmd_run("/nonexistent/nope.cfg", std::nullopt, std::nullopt,
                           std::nullopt, true)
              == cli::exit_config_error);
    }

    TEST_CASE("cmd_run propagates model failures as a model error")
    {
        // relay processing cost exceeds its capacitor: infeasible relay power
        const temp_file cfg("infeasible.cfg",
                            "scheme = df\n"
                            "b_r = 0.01\n"
                            "c_p = 0.5\n"
                            "target_deliveries = 1000\n");
        const std::string out = "/tmp/wpaoi_test_infeasible.csv";
        CHECK(cli::cmd_run(cfg.path, out, std::nullopt, std::nullopt, true)
              == cli::exit_model_error);
        std::remove(out.c_str());

        const temp_file bad_range("badrange.cfg",
                                  "scheme = direct\n"
                                  "eta = 2.0\n"
                                  "target_deliveries = 1000\n");
        CHECK(cli::cmd_run(bad_range.path, std::nullopt, std::nullopt, std::nullopt, true)
              == cli::exit_model_error);
    }

    TEST_CASE("unstable df run raises the divergence flag")
    {
        const temp_file cfg("unstable.cfg",
                            "scheme = df\n"
                            "gamma_th = 1e-30\n"
                            "b_s = 1e-9\n"
                            "b_r = 1e-9\n"
                            "d_rs = 1\nd_dr = 1\nd_ds = 1\n"
                            "c_p = 0\n"
                            "force_p_suc_s = 0.6\n"
                            "force_p_suc_r = 0.3\n"
                            "horizon_slots = 400000\n"
                            "max_queue_alarm = 20000\n"
                            "replications = 2\n");
        const std::string out = "/tmp/wpaoi_test_unstable_out.csv";
        CHECK(cli::cmd_run(cfg.path, out, 1, std::nullopt, true) == cli::exit_ok);
        std::ifstream in(out);
        std::string comment, header, line;
        std::getline(in, comment);
        std::getline(in, header);
        REQUIRE(std::getline(in, line));
        const auto vals = split_csv(line);
        CHECK(vals[14].empty()); // no analytic PAoI
        CHECK(vals[26] == "1");  // diverged
        std::remove(out.c_str());
    }

    TEST_CASE("table1 output carries the always/never stable rows")
    {
        const std::string out = "/tmp/wpaoi_test_table1.csv";
        CHECK(cli::cmd_table1(std::nullopt, out) == cli::exit_ok);
        std::ifstream in(out);
        std::string all((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        CHECK(all.find("D/D/1,stable,2,") != std::string::npos);
        CHECK(all.find("D/Geo/1,unstable,UNSTABLE") != std::string::npos);
        CHECK(all.find("D/P/1,unstable,UNSTABLE") != std::string::npos);
        CHECK(all.find("D/G/1,unstable,UNSTABLE") != std::string::npos);
        CHECK(all.find("af,full,deterministic,full,deterministic,AF,stable,1,")
              != std::string::npos);
        // 2 header lines + 16 df rows + 4 af rows
        CHECK(std::count(all.begin(), all.end(), '\n') == 22);
        std::remove(out.c_str());
    }

    TEST_CASE("dispatch exit codes")
    {
        const char* bad[] = {"wpaoi", "bogus"};
        CHECK(cli::dispatch(2, bad) == cli::exit_config_error);
        const char* noargs[] = {"wpaoi"};
        CHECK(cli::dispatch(1, noargs) == cli::exit_config_error);
        const char* missing[] = {"wpaoi", "run", "--config", "/nonexistent/x.cfg"};
        CHECK(cli::dispatch(4, missing) == cli::exit_config_error);
        const char* badpreset[] = {"wpaoi", "preset", "fig99"};
        CHECK(cli::dispatch(3, badpreset) == cli::exit_config_error);
    }

    TEST_CASE("presets are defined with explicit geometry")
    {
        for (const std::string& name : preset_names()) {
            const preset ps = make_preset(name);
            CHECK_FALSE(ps.points.empty());
            CHECK_FALSE(ps.schemes.empty());
            for (const experiment_point& pt : ps.points)
                CHECK_NOTHROW(validate(pt.params));
        }
        CHECK_THROWS_AS(make_preset("fig99"), invalid_param);
        // fig5 stores the off-axis relay geometry explicitly
        const preset f5 = make_preset("fig5");
        bool saw_6p5 = false;
        for (const experiment_point& pt : f5.points)
            if (pt.params.d_ds == doctest::Approx(6.5)) {
                saw_6p5 = true;
                CHECK(pt.params.d_dr == doctest::Approx(3.27109).epsilon(1e-4));
            }
        CHECK(saw_6p5);
    }
}
