// obq: capacity per unit-energy of the one-bit-quantized Rayleigh-fading
// channel. Subcommands: cue (optimized divergence-per-energy for a named
// receiver/quantizer configuration), sweep (noncoherent radial objective on
// a grid, CSV), mc (Monte Carlo vs analytic transition probabilities),
// verify (full acceptance battery).
//
// Exit codes: 0 success, 2 assertion/bound failure, 3 numerical error,
// 64 usage error, 73 output I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "obq/acceptance.hpp"
#include "obq/capacity.hpp"
#include "obq/channel.hpp"
#include "obq/cue.hpp"
#include "obq/errors.hpp"
#include "obq/specfun.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 73;

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct RunConfig {
    std::string cue_case;
    double sigma_sq = 1.0;
    double xi2_min = 1e-2, xi2_max = 1e3;
    int xi2_points = 48;
    double tau_min = 1e-2, tau_max = 1e4;
    int tau_points = 48;
    double mu = 0.95;
    std::int64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "json";
    double perturb_marcum = 0.0;  // verify self-test hook

    obq::SweepSpec sweep() const {
        obq::SweepSpec s;
        s.xi2_min = xi2_min;
        s.xi2_max = xi2_max;
        s.xi2_points = xi2_points;
        s.tau_min = tau_min;
        s.tau_max = tau_max;
        s.tau_points = tau_points;
        return s;
    }

    std::string grid_string() const {
        std::ostringstream os;
        os << "xi2[" << fmt12(xi2_min) << ":" << fmt12(xi2_max) << ":" << xi2_points << "],tau["
           << fmt12(tau_min) << ":" << fmt12(tau_max) << ":" << tau_points << "]";
        return os.str();
    }
};

// Output sink: stdout by default, file when --out is given.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::ios_base::failure("cannot open output path: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        stream().flush();
        if (file_.is_open() && !file_) throw std::ios_base::failure("write failed");
    }

private:
    std::ofstream file_;
};

nlohmann::json cue_result_json(const obq::CueResult& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["probe_energy"] = r.probe_energy;
    j["threshold"] = r.threshold;
    j["threshold_kind"] = r.threshold_kind;
    j["supremum_at_infinity"] = r.supremum_at_infinity;
    j["bound_checks"] = nlohmann::json::array();
    for (const auto& b : r.bound_checks) {
        j["bound_checks"].push_back({{"name", b.name}, {"bound", b.bound}, {"satisfied", b.satisfied}});
    }
    j["diagnostics"] = nlohmann::json::array();
    for (const auto& d : r.diagnostics) {
        j["diagnostics"].push_back({{"name", d.name}, {"value", d.value}, {"reference", d.reference}});
    }
    return j;
}

int cmd_cue(const RunConfig& cfg) {
    const obq::SweepSpec sweep = cfg.sweep();
    obq::QuadratureSpec quad;
    quad.validate = true;

    obq::CueResult result;
    if (cfg.cue_case == "noncoherent-radial") {
        result = obq::cue_noncoherent_radial(cfg.sigma_sq, sweep);
    } else if (cfg.cue_case == "coherent-radial") {
        result = obq::cue_coherent_radial(cfg.sigma_sq, {cfg.mu}, sweep, quad);
    } else if (cfg.cue_case == "percomponent-noncoherent") {
        result = obq::cue_percomponent_noncoherent(cfg.sigma_sq, sweep, false);
    } else if (cfg.cue_case == "percomponent-coherent") {
        result = obq::cue_percomponent_coherent(cfg.sigma_sq, {cfg.mu}, sweep, quad);
    } else if (cfg.cue_case == "symmetric-coherent") {
        result = obq::cue_symmetric_limit(cfg.sigma_sq, true, quad);
    } else if (cfg.cue_case == "symmetric-noncoherent") {
        result = obq::cue_symmetric_limit(cfg.sigma_sq, false, quad);
    } else {
        std::cerr << "obq: unknown cue case '" << cfg.cue_case << "'\n";
        return kExitUsage;
    }

    Sink sink(cfg.out_path);
    if (cfg.format == "json") {
        nlohmann::json j = cue_result_json(result);
        j["version"] = kVersion;
        j["case"] = cfg.cue_case;
        j["sigma_sq"] = cfg.sigma_sq;
        j["seed"] = cfg.seed;
        j["grid"] = cfg.grid_string();
        sink.stream() << j.dump(2) << "\n";
    } else {
        auto& os = sink.stream();
        os << "# obq cue case=" << cfg.cue_case << " version=" << kVersion
           << " sigma_sq=" << fmt12(cfg.sigma_sq) << " seed=" << cfg.seed
           << " grid=" << cfg.grid_string() << "\n";
        os << "value,probe_energy,threshold,threshold_kind,supremum_at_infinity,bounds_ok\n";
        os << fmt12(result.value) << "," << fmt12(result.probe_energy) << ","
           << fmt12(result.threshold) << "," << result.threshold_kind << ","
           << (result.supremum_at_infinity ? 1 : 0) << ","
           << (result.all_bounds_satisfied() ? 1 : 0) << "\n";
    }
    sink.finish();
    return result.all_bounds_satisfied() ? kExitOk : kExitAssertion;
}

int cmd_sweep(const RunConfig& cfg) {
    obq::SweepSpec sweep = cfg.sweep();
    // tau = 0 is a legal degenerate threshold for emission (divergence 0),
    // though not a legal optimization grid bound
    const bool zero_tau = sweep.tau_min == 0.0 && sweep.tau_max == 0.0;
    if (zero_tau) sweep.tau_min = sweep.tau_max = 1.0;
    sweep.check();
    const auto xi2s = obq::log_grid(sweep.xi2_min, sweep.xi2_max, sweep.xi2_points);
    const auto taus = zero_tau
                          ? std::vector<double>(sweep.tau_points, 0.0)
                          : obq::log_grid(sweep.tau_min, sweep.tau_max, sweep.tau_points);

    Sink sink(cfg.out_path);
    auto& os = sink.stream();
    os << "# obq sweep case=noncoherent-radial version=" << kVersion
       << " sigma_sq=" << fmt12(cfg.sigma_sq) << " seed=" << cfg.seed
       << " grid=" << cfg.grid_string() << "\n";
    os << "xi2,threshold,divergence,divergence_per_energy,unquantized_bound,exp_bound\n";
    for (double xi2 : xi2s) {
        const double u = obq::unquantized_kl_bound(xi2, cfg.sigma_sq);
        const double e = obq::exp_bound(xi2, cfg.sigma_sq);
        for (double tau : taus) {
            const double d = obq::div_noncoherent_radial(xi2, tau, cfg.sigma_sq);
            os << fmt12(xi2) << "," << fmt12(tau) << "," << fmt12(d) << "," << fmt12(d / xi2)
               << "," << fmt12(u) << "," << fmt12(e) << "\n";
        }
    }
    sink.finish();
    return kExitOk;
}

int cmd_mc(const RunConfig& cfg) {
    if (cfg.trials < 10000) {
        std::cerr << "obq: --trials must be >= 10000\n";
        return kExitUsage;
    }
    struct Row {
        std::string name;
        obq::Quantizer quantizer;
        std::complex<double> input;
        bool coherent;
        std::vector<double> analytic;
    };
    const obq::ChannelParams params{cfg.sigma_sq, 1.0};
    const double s = cfg.sigma_sq;
    std::vector<Row> rows;
    rows.push_back({"radial_x0_tau_sigma2", obq::RadialQuantizer{std::sqrt(s)}, {0.0, 0.0},
                    false,
                    {obq::radial_prob_noncoherent(0.0, std::sqrt(s), params).value}});
    rows.push_back({"radial_x2_3", obq::RadialQuantizer{2.0}, {std::sqrt(3.0), 0.0}, false,
                    {obq::radial_prob_noncoherent(3.0, 2.0, params).value}});
    rows.push_back({"radial_coherent_m1_T1", obq::RadialQuantizer{1.0}, {1.0, 0.0}, true,
                    {obq::radial_prob_coherent(1.0, 1.0, 1.0, params).value}});
    rows.push_back({"symmetric_percomponent_x2_2", obq::SymmetricPerComponentQuantizer{},
                    {1.0, 1.0}, false, {0.5, 0.5}});
    rows.push_back({"percomponent_x2_1_T_1_05", obq::PerComponentQuantizer{1.0, 0.5},
                    {1.0, 0.0}, false,
                    {obq::percomponent_prob_noncoherent(1.0, 1.0, params).value,
                     obq::percomponent_prob_noncoherent(1.0, 0.5, params).value}});
    rows.push_back({"likelihood_region_x2_1_lam_1",
                    obq::LikelihoodRegionQuantizer{1.0, 1.0}, {1.0, 0.0}, false,
                    {obq::radial_prob_noncoherent(1.0, obq::np_threshold(1.0, 1.0, params),
                                                  params)
                         .value}});

    Sink sink(cfg.out_path);
    auto& os = sink.stream();
    os << "# obq mc version=" << kVersion << " sigma_sq=" << fmt12(cfg.sigma_sq)
       << " seed=" << cfg.seed << " trials=" << cfg.trials << "\n";
    os << "scenario,component,analytic,empirical,std_error,z_score\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto est = obq::mc_estimate(row.quantizer, row.input, row.coherent, cfg.trials,
                                          cfg.seed + i, params);
        for (std::size_t k = 0; k < est.size(); ++k) {
            const double diff = est[k].estimate.value - row.analytic[k];
            const double z = est[k].std_error > 0.0 ? diff / est[k].std_error
                             : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            os << row.name << "," << k << "," << fmt12(row.analytic[k]) << ","
               << fmt12(est[k].estimate.value) << "," << fmt12(est[k].std_error) << ","
               << fmt12(z) << "\n";
        }
    }
    sink.finish();
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    obq::AcceptanceConfig acfg;
    acfg.seed = cfg.seed;
    acfg.marcum_perturb = cfg.perturb_marcum;
    const auto results = obq::run_acceptance(acfg);

    Sink sink(cfg.out_path);
    const bool ok = obq::print_acceptance(sink.stream(), results);
    sink.finish();
    return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"one-bit quantizer capacity-per-unit-energy toolbox"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--sigma-sq", cfg.sigma_sq, "noise variance sigma^2")->check(CLI::PositiveNumber);
        sub->add_option("--xi2-min", cfg.xi2_min, "probe-energy grid lower bound");
        sub->add_option("--xi2-max", cfg.xi2_max, "probe-energy grid upper bound");
        sub->add_option("--xi2-points", cfg.xi2_points, "probe-energy grid points");
        sub->add_option("--tau-min", cfg.tau_min, "threshold grid lower bound");
        sub->add_option("--tau-max", cfg.tau_max, "threshold grid upper bound");
        sub->add_option("--tau-points", cfg.tau_points, "threshold grid points");
        sub->add_option("--mu", cfg.mu, "fading-proportional threshold factor in (0,1)");
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* cue = app.add_subcommand("cue", "optimized capacity per unit-energy");
    cue->add_option("--case", cfg.cue_case,
                    "one of: coherent-radial, noncoherent-radial, percomponent-coherent, "
                    "percomponent-noncoherent, symmetric-coherent, symmetric-noncoherent")
        ->required();
    add_common(cue);

    CLI::App* sweep = app.add_subcommand("sweep", "noncoherent radial objective on a grid (CSV)");
    add_common(sweep);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo vs analytic transition probabilities");
    add_common(mc);

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance battery");
    add_common(verify);
    verify->add_option("--perturb-marcum", cfg.perturb_marcum,
                       "self-test: perturb Marcum values by this amount (must fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(cue)) return cmd_cue(cfg);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
        if (app.got_subcommand(mc)) return cmd_mc(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
    } catch (const obq::numerical_error& e) {
        std::cerr << "obq: numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "obq: I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "obq: invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "obq: invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "obq: error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
