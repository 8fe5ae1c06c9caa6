#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fattail/barbell.hpp"
#include "fattail/crossover.hpp"
#include "fattail/distributions.hpp"
#include "fattail/errors.hpp"
#include "fattail/pricing.hpp"
#include "fattail/scenario.hpp"
#include "fattail/strategies.hpp"
#include "fattail/vix.hpp"

using ojson = nlohmann::ordered_json;

namespace {

std::string format_number(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void flatten(const ojson& j, const std::string& prefix, const char* num_spec,
             std::vector<std::pair<std::string, std::string>>& rows) {
    switch (j.type()) {
        case ojson::value_t::object:
            for (const auto& [key, val] : j.items())
                flatten(val, prefix.empty() ? key : prefix + "." + key,
                        num_spec, rows);
            break;
        case ojson::value_t::array:
            for (std::size_t i = 0; i < j.size(); ++i)
                flatten(j[i], prefix + "[" + std::to_string(i) + "]", num_spec,
                        rows);
            break;
        case ojson::value_t::number_float:
            rows.emplace_back(prefix,
                              format_number(j.get<double>(), num_spec));
            break;
        case ojson::value_t::number_integer:
            rows.emplace_back(prefix, std::to_string(j.get<long long>()));
            break;
        case ojson::value_t::number_unsigned:
            rows.emplace_back(
                prefix, std::to_string(j.get<unsigned long long>()));
            break;
        case ojson::value_t::boolean:
            rows.emplace_back(prefix, j.get<bool>() ? "true" : "false");
            break;
        case ojson::value_t::string:
            rows.emplace_back(prefix, j.get<std::string>());
            break;
        default:
            rows.emplace_back(prefix, "null");
            break;
    }
}

void emit(const std::string& command, const ojson& parameters,
          const ojson& result, const std::string& format) {
    if (format == "json") {
        ojson envelope;
        envelope["command"] = command;
        envelope["parameters"] = parameters;
        envelope["result"] = result;
        std::cout << envelope.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(parameters, "", "%.17g", rows);
        std::cout << "section,key,value\n";
        for (const auto& [k, v] : rows)
            std::cout << "parameters," << k << "," << v << "\n";
        rows.clear();
        flatten(result, "", "%.17g", rows);
        for (const auto& [k, v] : rows)
            std::cout << "result," << k << "," << v << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> prows, rrows;
    flatten(parameters, "", "%.6g", prows);
    flatten(result, "", "%.6g", rrows);
    std::size_t width = 0;
    for (const auto& [k, v] : prows) width = std::max(width, k.size());
    for (const auto& [k, v] : rrows) width = std::max(width, k.size());
    std::cout << "command: " << command << "\n[parameters]\n";
    for (const auto& [k, v] : prows)
        std::cout << "  " << k << std::string(width - k.size() + 2, ' ') << v
                  << "\n";
    std::cout << "[result]\n";
    for (const auto& [k, v] : rrows)
        std::cout << "  " << k << std::string(width - k.size() + 2, ' ') << v
                  << "\n";
}

struct FamilyOptions {
    std::string family = "gaussian";
    double location = 0.0;
    double scale = 1.0;
    double alpha = 3.0;
};

void add_family_options(CLI::App* sc, FamilyOptions& fo) {
    sc->add_option("--family", fo.family, "gaussian, student or lognormal")
        ->check(CLI::IsMember({"gaussian", "student", "lognormal"}))
        ->capture_default_str();
    sc->add_option("--location", fo.location,
                   "mu (gaussian/lognormal) or center (student)")
        ->capture_default_str();
    sc->add_option("--scale", fo.scale, "sigma or Student scale s")
        ->capture_default_str();
    sc->add_option("--alpha", fo.alpha, "Student tail exponent")
        ->capture_default_str();
}

fattail::ScaleFamily make_family(const FamilyOptions& fo) {
    if (fo.family == "student")
        return fattail::ScaleFamily::student(fo.alpha, fo.scale, fo.location);
    if (fo.family == "lognormal")
        return fattail::ScaleFamily::lognormal(fo.location, fo.scale);
    return fattail::ScaleFamily::gaussian(fo.location, fo.scale);
}

fattail::CrossoverSet closed_form_crossovers(const FamilyOptions& fo) {
    if (fo.family == "student")
        return fattail::student_crossovers(fo.alpha, fo.scale);
    if (fo.family == "lognormal")
        return fattail::lognormal_crossovers(fo.location, fo.scale);
    return fattail::gaussian_crossovers(fo.location, fo.scale);
}

ojson family_params(const FamilyOptions& fo) {
    ojson p;
    p["family"] = fo.family;
    p["location"] = fo.location;
    p["scale"] = fo.scale;
    if (fo.family == "student") p["alpha"] = fo.alpha;
    return p;
}

ojson legs_json(const fattail::Package& pkg) {
    ojson legs = ojson::array();
    for (const auto& l : pkg.legs) {
        ojson leg;
        switch (l.option.kind) {
            case fattail::OptionKind::Call: leg["kind"] = "call"; break;
            case fattail::OptionKind::Put: leg["kind"] = "put"; break;
            case fattail::OptionKind::Straddle:
                leg["kind"] = "straddle";
                break;
        }
        leg["strike"] = l.option.strike;
        leg["maturity"] = l.option.maturity;
        leg["quantity"] = l.quantity;
        leg["premium"] = l.inception_premium;
        legs.push_back(leg);
    }
    return legs;
}

// moments() refuses orders the family cannot support, so probe downward.
ojson moments_json(const fattail::ScaleFamily& f) {
    ojson m;
    for (int order : {4, 2, 1}) {
        try {
            const fattail::Moments mm = fattail::moments(f, order);
            m["mean"] = mm.mean;
            if (mm.variance) m["variance"] = *mm.variance;
            if (mm.kurtosis) m["kurtosis"] = *mm.kurtosis;
            return m;
        } catch (const fattail::moment_undefined&) {
            continue;
        }
    }
    return m;
}

ojson mode_report_json(const fattail::ModeReport& report) {
    ojson r;
    r["terminal_wealth"] = report.terminal_wealth;
    r["max_drawdown"] = report.max_drawdown;
    r["premiums_paid"] = report.series.premiums_paid;
    r["claims_received"] = report.series.claims_received;
    r["wealth"] = report.series.wealth;
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fat-tail option analytics: crossover structure, convexity "
                 "pricing, vol-of-vol strategies, variance strips and "
                 "tail-insured barbells"};
    app.require_subcommand(1);
    std::string format = "table";

    const auto add_format = [&](CLI::App* sc) {
        sc->add_option("--format", format, "table, csv or json")
            ->check(CLI::IsMember({"table", "csv", "json"}))
            ->capture_default_str();
    };

    // crossovers
    FamilyOptions cr_fam;
    bool cr_numeric = false;
    auto* sc_cross = app.add_subcommand(
        "crossovers", "Scale-perturbation crossover points of a density");
    add_family_options(sc_cross, cr_fam);
    sc_cross->add_flag("--numeric", cr_numeric,
                       "use the finite-difference route instead of the "
                       "closed forms");
    add_format(sc_cross);
    sc_cross->callback([&] {
        const fattail::CrossoverSet cs =
            cr_numeric ? fattail::numeric_crossovers(make_family(cr_fam))
                       : closed_form_crossovers(cr_fam);
        ojson params = family_params(cr_fam);
        params["numeric"] = cr_numeric;
        ojson result;
        result["a1"] = cs.a1;
        result["a2"] = cs.a2;
        result["a3"] = cs.a3;
        result["a4"] = cs.a4;
        result["mode"] = cs.mode;
        emit("crossovers", params, result, format);
    });

    // density
    FamilyOptions de_fam;
    double de_delta = 0.0;
    std::vector<double> de_x;
    auto* sc_dens = app.add_subcommand(
        "density", "Evaluate a density, its perturbed version and regions");
    add_family_options(sc_dens, de_fam);
    sc_dens->add_option("--delta", de_delta, "scale perturbation in [0,1)")
        ->capture_default_str();
    sc_dens->add_option("--x", de_x, "evaluation points (comma separated)")
        ->required()
        ->delimiter(',');
    add_format(sc_dens);
    sc_dens->callback([&] {
        const fattail::ScaleFamily f = make_family(de_fam);
        const fattail::CrossoverSet cs = closed_form_crossovers(de_fam);
        ojson params = family_params(de_fam);
        params["delta"] = de_delta;
        params["x"] = de_x;
        ojson points = ojson::array();
        for (double x : de_x) {
            ojson pt;
            pt["x"] = x;
            pt["pdf"] = fattail::pdf(f, x);
            if (de_delta > 0.0) {
                const double p = fattail::perturbed_pdf(f, de_delta, x);
                pt["perturbed_pdf"] = p;
                pt["difference"] = p - fattail::pdf(f, x);
            }
            pt["region"] =
                fattail::region_name(fattail::region_classify(x, cs));
            points.push_back(pt);
        }
        ojson result;
        result["points"] = points;
        result["moments"] = moments_json(f);
        emit("density", params, result, format);
    });

    // quiz
    double qz_spot = 1.0, qz_maturity = 1.0, qz_sigma = 0.2, qz_delta = 0.25;
    auto* sc_quiz = app.add_subcommand(
        "quiz", "ATM price under a sigma-mean-preserving vol mixture vs the "
                "single vol");
    sc_quiz->add_option("--spot", qz_spot)->capture_default_str();
    sc_quiz->add_option("--maturity", qz_maturity)->capture_default_str();
    sc_quiz->add_option("--sigma", qz_sigma)->capture_default_str();
    sc_quiz->add_option("--delta", qz_delta, "mixture half-spread")
        ->capture_default_str();
    add_format(sc_quiz);
    sc_quiz->callback([&] {
        const auto mix = fattail::MixtureSpec::two_point(qz_delta);
        const auto atm =
            fattail::OptionSpec::call(qz_spot, qz_spot, qz_maturity);
        const double single = fattail::bs_price(atm, qz_sigma);
        const double mixed = fattail::mixture_price(atm, qz_sigma, mix);
        const double diff =
            fattail::atm_fattening_quiz(qz_spot, qz_maturity, qz_sigma, mix);
        ojson params;
        params["spot"] = qz_spot;
        params["maturity"] = qz_maturity;
        params["sigma"] = qz_sigma;
        params["delta"] = qz_delta;
        ojson result;
        result["strike"] = qz_spot;
        result["single_vol_price"] = single;
        result["mixture_price"] = mixed;
        result["difference"] = diff;
        result["atm_cheaper_under_mixture"] = diff < 0.0;
        emit("quiz", params, result, format);
    });

    // multiplier
    double mu_n_std = 5.0, mu_factor = 4.0, mu_spot = 1.0, mu_maturity = 1.0,
           mu_sigma = 0.05;
    auto* sc_mult = app.add_subcommand(
        "multiplier", "OTM price multiplier when sigma is scaled up");
    sc_mult->add_option("--n-std", mu_n_std, "strike distance in sigmas")
        ->capture_default_str();
    sc_mult->add_option("--vol-factor", mu_factor)->capture_default_str();
    sc_mult->add_option("--spot", mu_spot)->capture_default_str();
    sc_mult->add_option("--maturity", mu_maturity)->capture_default_str();
    sc_mult->add_option("--sigma", mu_sigma)->capture_default_str();
    add_format(sc_mult);
    sc_mult->callback([&] {
        const fattail::MultiplierResult r = fattail::otm_multiplier(
            mu_n_std, mu_factor, mu_spot, mu_maturity, mu_sigma);
        ojson params;
        params["n_std"] = mu_n_std;
        params["vol_factor"] = mu_factor;
        params["spot"] = mu_spot;
        params["maturity"] = mu_maturity;
        params["sigma"] = mu_sigma;
        ojson result;
        result["strike"] = r.strike;
        result["base_price"] = r.base_price;
        result["bumped_price"] = r.bumped_price;
        result["multiplier"] = r.multiplier;
        result["underflow"] = r.underflow;
        emit("multiplier", params, result, format);
    });

    // straddle-check
    double st_spot = 1.0, st_strike = 1.0, st_maturity = 1.0, st_sigma = 0.2;
    auto* sc_strad = app.add_subcommand(
        "straddle-check",
        "Straddle price vs the conditional moment E|S_T - K| by quadrature");
    sc_strad->add_option("--spot", st_spot)->capture_default_str();
    sc_strad->add_option("--strike", st_strike)->capture_default_str();
    sc_strad->add_option("--maturity", st_maturity)->capture_default_str();
    sc_strad->add_option("--sigma", st_sigma)->capture_default_str();
    add_format(sc_strad);
    sc_strad->callback([&] {
        const fattail::StraddleCheck chk =
            fattail::straddle_conditional_moment_check(st_spot, st_strike,
                                                       st_maturity, st_sigma);
        ojson params;
        params["spot"] = st_spot;
        params["strike"] = st_strike;
        params["maturity"] = st_maturity;
        params["sigma"] = st_sigma;
        ojson result;
        result["straddle_price"] = chk.straddle_price;
        result["conditional_moment"] = chk.conditional_moment;
        result["abs_difference"] =
            std::abs(chk.straddle_price - chk.conditional_moment);
        emit("straddle-check", params, result, format);
    });

    // backspread
    double bs_spot = 100.0, bs_sigma = 0.2, bs_maturity = 30.0 / 365.0;
    double bs_put_strike = 0.0, bs_call_strike = 0.0, bs_otm_qty = 10.0;
    double bs_atm_qty = -1.0, bs_delta = 0.5;
    auto* sc_back = app.add_subcommand(
        "backspread", "Long-wings short-ATM-straddle package and its vol "
                      "convexity numbers");
    sc_back->add_option("--spot", bs_spot)->capture_default_str();
    sc_back->add_option("--sigma", bs_sigma)->capture_default_str();
    sc_back->add_option("--maturity", bs_maturity)->capture_default_str();
    sc_back->add_option("--put-strike", bs_put_strike,
                        "wing put strike (default 0.9x spot)");
    sc_back->add_option("--call-strike", bs_call_strike,
                        "wing call strike (default 1.1x spot)");
    sc_back->add_option("--otm-qty", bs_otm_qty, "quantity per wing")
        ->capture_default_str();
    sc_back->add_option("--atm-qty", bs_atm_qty,
                        "short straddle quantity (default: solved for zero "
                        "net cash)");
    sc_back->add_option("--delta", bs_delta,
                        "vol mixture half-spread for the convexity numbers")
        ->capture_default_str();
    add_format(sc_back);
    sc_back->callback([&] {
        const double pk = bs_put_strike > 0.0 ? bs_put_strike : 0.9 * bs_spot;
        const double ck =
            bs_call_strike > 0.0 ? bs_call_strike : 1.1 * bs_spot;
        std::optional<double> atm;
        if (bs_atm_qty >= 0.0) atm = bs_atm_qty;
        const fattail::Package pkg = fattail::build_backspread(
            bs_spot, bs_sigma, bs_maturity, pk, ck, bs_otm_qty, atm);
        const auto mix = fattail::MixtureSpec::two_point(bs_delta);
        ojson params;
        params["spot"] = bs_spot;
        params["sigma"] = bs_sigma;
        params["maturity"] = bs_maturity;
        params["put_strike"] = pk;
        params["call_strike"] = ck;
        params["otm_qty"] = bs_otm_qty;
        params["atm_qty"] = atm ? ojson(*atm) : ojson("solved");
        params["delta"] = bs_delta;
        ojson result;
        result["legs"] = legs_json(pkg);
        result["net_cash_flow"] = pkg.net_cash_flow;
        result["credit_rule_cash"] = pkg.credit_rule_cash;
        result["credit_rule_satisfied"] = pkg.credit_rule_satisfied;
        result["modified_vega"] = fattail::modified_vega(pkg, bs_sigma);
        result["gross_vega"] = fattail::gross_vega(pkg, bs_sigma);
        result["vol_of_vol_exposure"] =
            fattail::vol_of_vol_exposure(pkg, bs_sigma, mix);
        result["fourth_moment_pnl"] =
            fattail::fourth_moment_pnl(pkg, bs_sigma, mix, true);
        emit("backspread", params, result, format);
    });

    // calendar
    double ca_spot = 100.0, ca_sigma = 0.2, ca_strike = 0.0, ca_long = 1.0;
    double ca_long_mat = 60.0 / 365.0, ca_short_mat = 20.0 / 365.0;
    double ca_ratio = 0.8, ca_delta = 0.5;
    auto* sc_cal = app.add_subcommand(
        "calendar", "Long-far short-near calendar package and its vol "
                    "convexity numbers");
    sc_cal->add_option("--spot", ca_spot)->capture_default_str();
    sc_cal->add_option("--sigma", ca_sigma)->capture_default_str();
    sc_cal->add_option("--strike", ca_strike, "strike (default: spot)");
    sc_cal->add_option("--long-qty", ca_long)->capture_default_str();
    sc_cal->add_option("--long-maturity", ca_long_mat)->capture_default_str();
    sc_cal->add_option("--short-maturity", ca_short_mat)
        ->capture_default_str();
    sc_cal->add_option("--short-ratio", ca_ratio)->capture_default_str();
    sc_cal->add_option("--delta", ca_delta,
                       "vol mixture half-spread for the convexity numbers")
        ->capture_default_str();
    add_format(sc_cal);
    sc_cal->callback([&] {
        const double k = ca_strike > 0.0 ? ca_strike : ca_spot;
        const fattail::Package pkg =
            fattail::build_calendar(ca_spot, ca_sigma, k, ca_long,
                                    ca_long_mat, ca_short_mat, ca_ratio);
        const auto mix = fattail::MixtureSpec::two_point(ca_delta);
        const double mv = fattail::modified_vega(pkg, ca_sigma);
        const double gv = fattail::gross_vega(pkg, ca_sigma);
        ojson params;
        params["spot"] = ca_spot;
        params["sigma"] = ca_sigma;
        params["strike"] = k;
        params["long_qty"] = ca_long;
        params["long_maturity"] = ca_long_mat;
        params["short_maturity"] = ca_short_mat;
        params["short_ratio"] = ca_ratio;
        params["delta"] = ca_delta;
        ojson result;
        result["legs"] = legs_json(pkg);
        result["net_cash_flow"] = pkg.net_cash_flow;
        result["modified_vega"] = mv;
        result["gross_vega"] = gv;
        result["vega_ratio"] = gv != 0.0 ? std::abs(mv) / gv : 0.0;
        result["vol_of_vol_exposure"] =
            fattail::vol_of_vol_exposure(pkg, ca_sigma, mix);
        result["fourth_moment_pnl"] =
            fattail::fourth_moment_pnl(pkg, ca_sigma, mix, true);
        emit("calendar", params, result, format);
    });

    // strip
    double sp_spot = 1.0, sp_sigma = 0.2, sp_maturity = 30.0 / 365.0;
    double sp_lo = 0.3, sp_hi = 3.0, sp_step = 0.005;
    auto* sc_strip = app.add_subcommand(
        "strip", "Variance replication strip of 1/K^2-weighted OTM options");
    sc_strip->add_option("--spot", sp_spot)->capture_default_str();
    sc_strip->add_option("--sigma", sp_sigma)->capture_default_str();
    sc_strip->add_option("--maturity", sp_maturity)->capture_default_str();
    sc_strip->add_option("--strike-lo", sp_lo)->capture_default_str();
    sc_strip->add_option("--strike-hi", sp_hi)->capture_default_str();
    sc_strip->add_option("--step", sp_step)->capture_default_str();
    add_format(sc_strip);
    sc_strip->callback([&] {
        const fattail::StripResult r = fattail::variance_strip_value(
            sp_spot, sp_sigma, sp_maturity, sp_lo, sp_hi, sp_step);
        int puts = 0, calls = 0;
        for (char k : r.strip.kinds) {
            if (k == 'p') ++puts;
            if (k == 'c') ++calls;
        }
        ojson params;
        params["spot"] = sp_spot;
        params["sigma"] = sp_sigma;
        params["maturity"] = sp_maturity;
        params["strike_lo"] = sp_lo;
        params["strike_hi"] = sp_hi;
        params["step"] = sp_step;
        ojson result;
        result["variance"] = r.variance;
        result["implied_vol"] = std::sqrt(std::max(r.variance, 0.0));
        result["n_strikes"] = r.strip.strikes.size();
        result["n_puts"] = puts;
        result["n_calls"] = calls;
        result["tolerance_warning"] = r.tolerance_warning;
        emit("strip", params, result, format);
    });

    // vix-demo
    std::vector<double> vx_levels{4.0, 15.0};
    double vx_entry = 10.0, vx_n_std = -3.0, vx_budget = 0.001,
           vx_contango = 0.005;
    std::string vx_scenario;
    auto* sc_vix = app.add_subcommand(
        "vix-demo", "Variance convexity arithmetic and the tail-hedge proxy "
                    "divergence");
    sc_vix->add_option("--levels", vx_levels,
                       "realized vol episodes in percent")
        ->delimiter(',')
        ->capture_default_str();
    sc_vix->add_option("--entry", vx_entry, "entry vol level in percent")
        ->capture_default_str();
    sc_vix->add_option("--n-std", vx_n_std, "put moneyness in sigmas")
        ->capture_default_str();
    sc_vix->add_option("--budget", vx_budget, "premium budget per roll")
        ->capture_default_str();
    sc_vix->add_option("--contango", vx_contango, "futures roll cost")
        ->capture_default_str();
    sc_vix->add_option("--scenario", vx_scenario,
                       "scenario file (default: one quiet period then a "
                       "crash with a vol spike)");
    add_format(sc_vix);
    sc_vix->callback([&] {
        const fattail::ConvexityDemo demo =
            fattail::convexity_demo({vx_levels, vx_entry});
        fattail::ScenarioPath path;
        if (vx_scenario.empty())
            path.periods = {{0.0, 0.15}, {-0.30, 0.60}};
        else
            path = fattail::parse_scenario_file(vx_scenario);
        const fattail::ProxyDivergence proxy =
            fattail::proxy_divergence_scenario(path, vx_n_std, vx_budget,
                                               vx_contango);
        ojson params;
        params["levels"] = vx_levels;
        params["entry"] = vx_entry;
        params["n_std"] = vx_n_std;
        params["budget"] = vx_budget;
        params["contango"] = vx_contango;
        params["scenario"] =
            vx_scenario.empty() ? "built-in crash demo" : vx_scenario;
        ojson result;
        result["arithmetic_mean"] = demo.arithmetic_mean;
        result["rms"] = demo.rms;
        result["variance_pnl"] = demo.variance_pnl;
        result["tail_option_pnl"] = proxy.tail_option_pnl;
        result["vix_roll_pnl"] = proxy.vix_roll_pnl;
        result["tail_option_total"] = proxy.tail_option_total;
        result["vix_roll_total"] = proxy.vix_roll_total;
        result["premium_spent_total"] = proxy.premium_spent_total;
        emit("vix-demo", params, result, format);
    });

    // tunnel-check
    FamilyOptions tn_fam;
    double tn_delta = 0.5, tn_half_width = 4.0;
    int tn_points = 81;
    auto* sc_tun = app.add_subcommand(
        "tunnel-check", "Sign pattern of the perturbed-minus-base density "
                        "across peak, shoulders and tails");
    add_family_options(sc_tun, tn_fam);
    sc_tun->add_option("--delta", tn_delta, "scale perturbation in (0,1)")
        ->capture_default_str();
    sc_tun->add_option("--half-width", tn_half_width,
                       "grid half width in scales around the mode")
        ->capture_default_str();
    sc_tun->add_option("--points", tn_points, "grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_format(sc_tun);
    sc_tun->callback([&] {
        const fattail::ScaleFamily f = make_family(tn_fam);
        const fattail::CrossoverSet cs = closed_form_crossovers(tn_fam);
        std::vector<double> grid;
        for (int i = 0; i < tn_points; ++i) {
            const double u = -tn_half_width * f.scale +
                             2.0 * tn_half_width * f.scale * i /
                                 double(tn_points - 1);
            // Lognormal support is positive: span the grid multiplicatively.
            grid.push_back(f.family == fattail::Family::Lognormal
                               ? cs.mode * std::exp(u)
                               : cs.mode + u);
        }
        const fattail::TunnelReport rep =
            fattail::tunnel_inequality_check(f, tn_delta, grid);
        ojson params = family_params(tn_fam);
        params["delta"] = tn_delta;
        params["half_width"] = tn_half_width;
        params["points"] = tn_points;
        ojson result;
        result["a1"] = cs.a1;
        result["a2"] = cs.a2;
        result["a3"] = cs.a3;
        result["a4"] = cs.a4;
        ojson regions = ojson::array();
        for (const auto& st : rep.regions) {
            ojson r;
            r["region"] = fattail::region_name(st.region);
            r["points"] = st.points;
            r["violations"] = st.violations;
            r["worst_margin"] = st.worst_margin;
            r["worst_x"] = st.worst_x;
            regions.push_back(r);
        }
        result["regions"] = regions;
        result["total_points"] = rep.total_points;
        result["total_violations"] = rep.total_violations;
        result["pass"] = rep.pass;
        emit("tunnel-check", params, result, format);
    });

    // barbell
    std::string bb_scenario;
    double bb_numeraire = 0.9, bb_equity = 0.1, bb_budget = 0.005;
    double bb_n_std = -5.0, bb_put_maturity = 1.0;
    auto* sc_bar = app.add_subcommand(
        "barbell", "Dollar-for-dollar comparison of insured, uninsured and "
                   "sidelined allocations over a scenario");
    sc_bar->add_option("--scenario", bb_scenario,
                       "scenario file (default: crash-then-rally demo)");
    sc_bar->add_option("--numeraire", bb_numeraire)->capture_default_str();
    sc_bar->add_option("--equity", bb_equity)->capture_default_str();
    sc_bar->add_option("--budget", bb_budget, "tail budget per period")
        ->capture_default_str();
    sc_bar->add_option("--n-std", bb_n_std, "put moneyness in sigmas")
        ->capture_default_str();
    sc_bar->add_option("--put-maturity", bb_put_maturity, "in period-years")
        ->capture_default_str();
    add_format(sc_bar);
    sc_bar->callback([&] {
        const fattail::ScenarioPath path =
            bb_scenario.empty() ? fattail::default_demo_path()
                                : fattail::parse_scenario_file(bb_scenario);
        fattail::PortfolioSpec spec;
        spec.numeraire_fraction = bb_numeraire;
        spec.equity_fraction = bb_equity;
        spec.tail_budget_per_period = bb_budget;
        spec.put_n_std = bb_n_std;
        spec.put_maturity = bb_put_maturity;
        const fattail::DollarComparison cmp =
            fattail::compare_dollar_for_dollar(spec, path);
        ojson params;
        params["scenario"] =
            bb_scenario.empty() ? "built-in demo" : bb_scenario;
        params["numeraire"] = bb_numeraire;
        params["equity"] = bb_equity;
        params["budget"] = bb_budget;
        params["n_std"] = bb_n_std;
        params["put_maturity"] = bb_put_maturity;
        ojson result;
        result["insured"] = mode_report_json(cmp.insured);
        result["uninsured"] = mode_report_json(cmp.uninsured);
        result["sidelined"] = mode_report_json(cmp.sidelined);
        emit("barbell", params, result, format);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const fattail::invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fattail::credit_rule_violation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fattail::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
