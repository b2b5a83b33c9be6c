#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "bicmlab/asymptotics.hpp"
#include "bicmlab/capacity.hpp"
#include "bicmlab/cli.hpp"
#include "bicmlab/enumeration.hpp"
#include "bicmlab/hadamard.hpp"
#include "bicmlab/parallel.hpp"
#include "bicmlab/shaping.hpp"

namespace bicm::cli {

namespace {

using nlohmann::json;

std::string num(double v) { return fmt::format("{:.12g}", v); }

// JSON has no infinity; emit null.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j) == 0.0 ? 0.0 : m(i, j));
        rows.push_back(row);
    }
    return rows;
}

struct Options {
    std::string constellation;
    std::string labeling;
    std::string bit_p0;
    std::string fading = "awgn";
    std::string snr_db = "-10:20:1";
    std::string rc = "0.05:2:0.05";
    std::string mode = "bicm";
    std::string format;
    std::string output;
    std::string alphabet;
    int which = 0;
    int gh_order = 40;
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 20110101;
    int threads = 0;
    double grid = 0.01;
    double coarse = 0.05;
    bool closed_form = false;
    bool summary = false;
    bool by_codeword = false;

    QuadratureSpec quadrature() const {
        QuadratureSpec q{gh_order, mc_samples, seed};
        q.validate();
        return q;
    }
    CapacityMode capacity_mode() const {
        if (mode == "cm") return CapacityMode::CM;
        if (mode == "bicm") return CapacityMode::BICM;
        throw std::invalid_argument("--mode must be cm or bicm");
    }
    std::string output_format(const std::string& fallback) const {
        const std::string f = format.empty() ? fallback : format;
        if (f != "csv" && f != "json") throw std::invalid_argument("--out must be csv or json");
        return f;
    }
    ConstellationSpec spec() const { return resolve_constellation(constellation, labeling, bit_p0); }
};

void add_constellation(CLI::App* cmd, Options& o) {
    cmd->add_option("--constellation,-c", o.constellation, "Preset (pamM, pskM, qamM, qamAxB, otto, ototo, hier:d0,d1,..) or JSON file")
        ->required();
    cmd->add_option("--labeling,-l", o.labeling, "brgc|nbc|bsgc|fbc or comma-separated bit strings");
    cmd->add_option("--bit-p0", o.bit_p0, "Comma-separated P(C_k = 0)");
}

void add_quadrature(CLI::App* cmd, Options& o) {
    cmd->add_option("--fading", o.fading, "awgn|rayleigh|nakagami:<m>");
    cmd->add_option("--gh-order", o.gh_order, "Gauss-Hermite nodes per dimension");
    cmd->add_option("--mc-samples", o.mc_samples, "Fading Monte-Carlo samples");
    cmd->add_option("--seed", o.seed, "Fading RNG seed");
}

void add_output(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.format, "csv|json");
    cmd->add_option("--output,-o", o.output, "Write to this file instead of stdout");
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::string labeling_name(const ConstellationSpec& s) {
    return s.labeling_kind ? std::string(to_string(*s.labeling_kind)) : std::string("custom");
}

std::string cmd_capacity(const Options& o) {
    const ConstellationSpec s = o.spec();
    const Constellation c = s.build();
    const FadingModel fading = parse_fading(o.fading);
    const QuadratureSpec q = o.quadrature();
    const CapacityMode mode = o.capacity_mode();
    const auto db = parse_range(o.snr_db);
    std::vector<double> snrs(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) snrs[i] = from_db(db[i]);

    std::vector<RateEstimate> est(snrs.size());
    parallel_for(snrs.size(), [&](std::size_t i) {
        est[i] = mode == CapacityMode::CM ? cm_capacity_estimate(c, snrs[i], fading, q)
                                          : bicm_capacity_estimate(c, snrs[i], fading, q);
    });
    for (std::size_t i = 1; i < est.size(); ++i)
        if (est[i].rate < est[i - 1].rate - 1e-9)
            throw NumericError(fmt::format("capacity curve decreases between {} dB and {} dB; raise --gh-order",
                                           num(db[i - 1]), num(db[i])));

    const bool faded = !fading.is_awgn();
    auto ebn0_db = [&](std::size_t i) {
        if (!(est[i].rate > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        return to_db(snrs[i] / (fading.second_moment * est[i].rate));
    };
    if (o.output_format("csv") == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < est.size(); ++i) {
            json r = {{"snr_db", db[i]}, {"rate_bits", est[i].rate}, {"ebn0_db", jnum(ebn0_db(i))}};
            if (faded) r["rate_std_error"] = est[i].std_error;
            rows.push_back(r);
        }
        return rows.dump(2) + "\n";
    }
    std::string text = faded ? "snr_db,rate_bits,ebn0_db,rate_std_error\n" : "snr_db,rate_bits,ebn0_db\n";
    for (std::size_t i = 0; i < est.size(); ++i) {
        std::vector<std::string> cells{num(db[i]), num(est[i].rate), num(ebn0_db(i))};
        if (faded) cells.push_back(num(est[i].std_error));
        text += csv_line(cells);
    }
    return text;
}

std::string cmd_alpha(const Options& o) {
    const ConstellationSpec s = o.spec();
    const Constellation c = s.build();
    json r;
    r["constellation"] = s.name;
    r["labeling"] = s.labeling.to_bit_strings();
    r["labeling_name"] = labeling_name(s);
    r["bit_p0"] = s.bits.p0;
    const auto acm = alpha_cm(c);
    const auto abi = alpha_bicm(c);
    r["alpha_cm"] = acm.value;
    r["alpha_cm_normalized"] = acm.normalized();
    r["alpha_bicm"] = abi.value;
    r["alpha_bicm_normalized"] = abi.normalized();
    if (c.is_uniform()) r["alpha_bicm_ht"] = alpha_bicm_ht(s.alphabet, s.labeling).value;
    r["asymptotic_gap_db"] = jnum(asymptotic_gap_db(abi));
    r["zero_rate_ebn0_db"] = jnum(zero_rate_ebn0_db(abi));
    if (o.closed_form) {
        if (!s.alphabet_kind || !s.labeling_kind)
            throw std::invalid_argument("--closed-form needs a pamM/pskM preset with a named labeling");
        if (!c.is_uniform()) throw std::invalid_argument("--closed-form assumes uniform bits");
        r["alpha_closed_form"] = alpha_closed_form(*s.alphabet_kind, *s.labeling_kind, s.alphabet.size()).value;
    }
    if (o.output_format("json") == "json") return r.dump(2) + "\n";
    std::string text = "quantity,value\n";
    for (const char* key : {"alpha_cm", "alpha_cm_normalized", "alpha_bicm", "alpha_bicm_normalized", "alpha_bicm_ht",
                            "asymptotic_gap_db", "zero_rate_ebn0_db", "alpha_closed_form"}) {
        if (!r.contains(key)) continue;
        const double v = r[key].is_null() ? std::numeric_limits<double>::infinity() : r[key].get<double>();
        text += csv_line({key, num(v)});
    }
    return text;
}

std::string cmd_foo(const Options& o) {
    const ConstellationSpec s = o.spec();
    const Constellation c = s.build();
    const FooVerdict v = is_foo(c);
    json r;
    r["constellation"] = s.name;
    r["labeling"] = s.labeling.to_bit_strings();
    r["is_foo"] = v.is_foo;
    r["V"] = matrix_json(v.projection);
    r["residual"] = v.residual;
    r["orthogonal"] = v.orthogonal;
    r["alpha_bicm_normalized"] = alpha_bicm(c).normalized();
    if (o.output_format("json") == "json") return r.dump(2) + "\n";
    return csv_line({"is_foo", "residual", "orthogonal"}) +
           csv_line({v.is_foo ? "true" : "false", num(v.residual), v.orthogonal ? "true" : "false"});
}

std::string cmd_enumerate(const Options& o) {
    const std::string source = o.alphabet.empty() ? o.constellation : o.alphabet;
    if (source.empty()) throw std::invalid_argument("--alphabet is required");
    const ConstellationSpec s = resolve_constellation(source, "nbc", "");
    const AlphaCensus census = classify_labelings(s.alphabet);
    if (o.output_format("csv") == "json") {
        json classes = json::array();
        for (const auto& c : census.classes) classes.push_back({{"alpha_normalized", c.normalized}, {"count", c.count}});
        json r = {{"alphabet", s.name},
                  {"total", census.total},
                  {"class_count", census.class_count()},
                  {"distinct_multiplicities", census.distinct_multiplicities()},
                  {"classes", classes}};
        return r.dump(2) + "\n";
    }
    std::string text = "alpha_normalized,count\n";
    for (const auto& c : census.classes) text += csv_line({num(c.normalized), std::to_string(c.count)});
    return text;
}

std::string cmd_shape(const Options& o) {
    const ConstellationSpec s = o.spec();
    const FadingModel fading = parse_fading(o.fading);
    const QuadratureSpec q = o.quadrature();
    ShapingOptions so;
    so.grid_step = o.grid;
    so.coarse_step = o.coarse;
    so.coincident = s.coincident;
    const auto db = parse_range(o.snr_db);
    const int m = s.labeling.order();

    std::vector<ShapingResult> results;
    for (double d : db) results.push_back(optimize_bit_pmfs(s.alphabet, s.labeling, from_db(d), fading, q, so));

    if (o.output_format("csv") == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < results.size(); ++i)
            rows.push_back({{"snr_db", db[i]},
                            {"p0", results[i].best_p0},
                            {"rate_shaped", results[i].best_rate},
                            {"rate_uniform", results[i].baseline_rate}});
        return rows.dump(2) + "\n";
    }
    std::vector<std::string> header{"snr_db"};
    for (int k = 0; k < m; ++k) header.push_back(fmt::format("p0_{}", k));
    header.insert(header.end(), {"rate_shaped", "rate_uniform"});
    std::string text = csv_line(header);
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<std::string> cells{num(db[i])};
        for (double p : results[i].best_p0) cells.push_back(num(p));
        cells.push_back(num(results[i].best_rate));
        cells.push_back(num(results[i].baseline_rate));
        text += csv_line(cells);
    }
    return text;
}

std::string cmd_gap(const Options& o) {
    const ConstellationSpec s = o.spec();
    const Constellation c = s.build();
    const FadingModel fading = parse_fading(o.fading);
    const QuadratureSpec q = o.quadrature();
    const CapacityMode mode = o.capacity_mode();
    const RateFunction rf = RateFunction::sample(mode, c, fading, q);
    const int dims = static_cast<int>(c.dimension());

    if (o.summary) {
        const AlphaCoefficient a = mode == CapacityMode::CM ? alpha_cm(c) : alpha_bicm(c);
        const MinimumEbN0 mn = rf.min_ebn0();
        json r = {{"constellation", s.name},
                  {"mode", o.mode},
                  {"alpha_normalized", a.normalized()},
                  {"asymptotic_gap_db", jnum(asymptotic_gap_db(a))},
                  {"zero_rate_ebn0_db", jnum(zero_rate_ebn0_db(a))},
                  {"zero_rate_limit_estimate_db", to_db(mn.zero_rate_limit)},
                  {"min_ebn0_db", to_db(mn.ebn0)},
                  {"min_ebn0_rc", mn.rc},
                  {"interior_roots", mn.interior_roots}};
        return r.dump(2) + "\n";
    }

    const auto rcs = parse_range(o.rc);
    struct Row {
        double f_db, aw_db, gap, g;
    };
    std::vector<Row> rows(rcs.size());
    parallel_for(rcs.size(), [&](std::size_t i) {
        const double f = rf.f(rcs[i]);
        const double aw = f_awgn(rcs[i], dims);
        rows[i] = {to_db(f), to_db(aw), to_db(f / aw), rf.g(rcs[i])};
    });
    if (o.output_format("csv") == "json") {
        json out = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.push_back({{"rc", rcs[i]},
                           {"f_db", rows[i].f_db},
                           {"f_awgn_db", rows[i].aw_db},
                           {"gap_db", rows[i].gap},
                           {"g", rows[i].g}});
        return out.dump(2) + "\n";
    }
    std::string text = "rc,f_db,f_awgn_db,gap_db,g\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        text += csv_line({num(rcs[i]), num(rows[i].f_db), num(rows[i].aw_db), num(rows[i].gap), num(rows[i].g)});
    return text;
}

std::string cmd_tables(const Options& o) {
    if (o.which == 1) {
        std::string text = "alphabet,labeling,ebn0_limit_db\n";
        constexpr std::size_t kLarge = std::size_t{1} << 20;
        for (auto [kind, name] : {std::pair{AlphabetKind::PAM, "PAM"}, std::pair{AlphabetKind::PSK, "PSK"}})
            for (auto l : {LabelingKind::BRGC, LabelingKind::NBC, LabelingKind::BSGC, LabelingKind::FBC})
                text += csv_line({name, std::string(to_string(l)),
                                  num(zero_rate_ebn0_db(alpha_closed_form(kind, l, kLarge)))});
        return text;
    }
    if (o.which == 2) {
        struct Entry {
            const char* label;
            const char* preset;
            const char* labeling;
        };
        const Entry entries[] = {
            {"4-PAM", "pam4", "brgc"},          {"4-PAM", "pam4", "fbc"},
            {"4-PAM", "pam4", "nbc"},           {"4-PAM hierarchical", "hier:1,5", "nbc"},
            {"8-PSK", "psk8", "brgc"},          {"8-PSK", "psk8", "nbc"},
            {"8-PSK", "psk8", "fbc"},           {"8-PSK", "psk8", "bsgc"},
            {"OTTO", "otto", "nbc"},            {"OTOTO", "ototo", "nbc"},
            {"8-PAM hierarchical", "hier:1,2,6", "nbc"},
            {"8-PAM", "pam8", "brgc"},          {"8-PAM", "pam8", "fbc"},
            {"8-PAM", "pam8", "nbc"},           {"8-PAM", "pam8", "bsgc"},
            {"16-PAM", "pam16", "brgc"},        {"16-PAM", "pam16", "fbc"},
            {"16-PAM", "pam16", "nbc"},         {"16-PAM", "pam16", "bsgc"},
        };
        std::string text = "constellation,labeling,gap_db\n";
        for (const auto& e : entries) {
            const Constellation c = resolve_constellation(e.preset, e.labeling, "").build();
            text += csv_line({e.label, e.labeling, num(asymptotic_gap_db(alpha_bicm(c)))});
        }
        return text;
    }
    throw std::invalid_argument("--which must be 1 or 2");
}

std::string cmd_ht(const Options& o) {
    const ConstellationSpec s = o.spec();
    Matrix x = s.alphabet.points();
    if (o.by_codeword) {
        Matrix ordered(x.rows(), x.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t d = 0; d < x.cols(); ++d) ordered(s.labeling.codeword(i), d) = x(i, d);
        x = ordered;
    }
    const Matrix xt = transform(x);
    if (o.output_format("csv") == "json") return json{{"transform", matrix_json(xt)}}.dump(2) + "\n";
    std::vector<std::string> header{"index"};
    for (std::size_t d = 0; d < xt.cols(); ++d) header.push_back(fmt::format("x{}", d));
    std::string text = csv_line(header);
    for (std::size_t i = 0; i < xt.rows(); ++i) {
        std::vector<std::string> cells{std::to_string(i)};
        for (std::size_t d = 0; d < xt.cols(); ++d) cells.push_back(num(xt(i, d) == 0.0 ? 0.0 : xt(i, d)));
        text += csv_line(cells);
    }
    return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CM/BICM capacities, low-SNR coefficients and labeling analysis"};
    app.name("bicmlab");
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "Cap on worker threads (also BICMLAB_THREADS)");

    auto* capacity = app.add_subcommand("capacity", "Capacity curve over an SNR grid");
    add_constellation(capacity, o);
    add_quadrature(capacity, o);
    add_output(capacity, o);
    capacity->add_option("--snr-db", o.snr_db, "start:stop:step in dB");
    capacity->add_option("--mode", o.mode, "cm|bicm");

    auto* alpha = app.add_subcommand("alpha", "First-order low-SNR coefficients");
    add_constellation(alpha, o);
    add_output(alpha, o);
    alpha->add_flag("--closed-form", o.closed_form, "Also evaluate the PAM/PSK closed form");

    auto* foo = app.add_subcommand("foo-check", "First-order optimality verdict");
    add_constellation(foo, o);
    add_output(foo, o);

    auto* enumerate = app.add_subcommand("enumerate", "Alpha census over all 8! labelings");
    enumerate->add_option("--alphabet,-a", o.alphabet, "8-point alphabet preset (pam8, psk8, ...)")->required();
    add_output(enumerate, o);

    auto* shape = app.add_subcommand("shape", "Bit-pmf shaping grid search");
    add_constellation(shape, o);
    add_quadrature(shape, o);
    add_output(shape, o);
    shape->add_option("--snr-db", o.snr_db, "start:stop:step in dB");
    shape->add_option("--grid", o.grid, "Fine grid step");
    shape->add_option("--coarse", o.coarse, "Coarse grid step");

    auto* gap = app.add_subcommand("gap", "f(Rc), g(Rc) and SNR gap to the AWGN capacity");
    add_constellation(gap, o);
    add_quadrature(gap, o);
    add_output(gap, o);
    gap->add_option("--rc", o.rc, "start:stop:step code rates");
    gap->add_option("--mode", o.mode, "cm|bicm");
    gap->add_flag("--summary", o.summary, "Zero-rate limit and minimum Eb/N0 as JSON");

    auto* tables = app.add_subcommand("tables", "Low-rate Eb/N0 limits (1) or asymptotic SNR gaps (2)");
    tables->add_option("--which", o.which, "1|2")->required();
    add_output(tables, o);

    auto* ht = app.add_subcommand("ht", "Hadamard transform of an alphabet");
    add_constellation(ht, o);
    add_output(ht, o);
    ht->add_flag("--by-codeword", o.by_codeword, "Order rows by codeword value first");

    std::vector<const char*> argv{"bicmlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (o.threads > 0) set_thread_limit(o.threads);
        std::string text;
        if (capacity->parsed()) text = cmd_capacity(o);
        else if (alpha->parsed()) text = cmd_alpha(o);
        else if (foo->parsed()) text = cmd_foo(o);
        else if (enumerate->parsed()) text = cmd_enumerate(o);
        else if (shape->parsed()) text = cmd_shape(o);
        else if (gap->parsed()) text = cmd_gap(o);
        else if (tables->parsed()) text = cmd_tables(o);
        else if (ht->parsed()) text = cmd_ht(o);

        if (o.output.empty()) {
            out << text;
        } else {
            std::ofstream file(o.output, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot write '" + o.output + "'");
            file << text;
        }
        return kSuccess;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kNumericFailure;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace bicm::cli
