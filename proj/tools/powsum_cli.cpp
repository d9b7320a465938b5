// powsum: batch front-end over the library. JSON in, JSON out, CSV for
// eval grids. Exit codes: 0 success/valid, 1 violation/inadmissible,
// 2 usage or parse error, 3 numeric failure.

#include "powsum/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace powsum;

namespace {

struct RunConfig {
    std::string mode = "rational";
    double epsilon = kDefaultEpsilon;
    double tol = 1e-8;
    int max_weights = 16;
    int max_r = 3;
    int max_cols = 3;
    int max_k = 4;
    int order = 8;
};

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::bad_input:
            return 2;
        case errc::inadmissible_input:
        case errc::non_monotone_ratios:
            return 1;
        default:
            return 3;
    }
}

std::string format_scalar_csv(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class S>
int run_gen(const Json& wfile, const std::string& out_path, int count, const RunConfig& cfg) {
    WeightVector<S> w = weights_from_json<S>(wfile);
    MomentSequence<S> c = reconstruct(w, count, cfg.epsilon);
    write_json_file(out_path, to_json(c));
    return 0;
}

template <class S>
int run_decompose(const Json& mfile, const std::string& out_path, const RunConfig& cfg) {
    MomentSequence<S> c = sequence_from_json<S>(mfile);
    Json out;
    out["n"] = c.size();
    ValidityReport v = validate_sequence(c);
    out["validity"] = to_json(v);
    if (!v.all_pass()) {
        out["error"] = "input fails the admissibility gate";
        write_json_file(out_path, out);
        return 1;
    }
    DecomposeOptions opts;
    opts.tol = cfg.tol;
    opts.max_weights = cfg.max_weights;
    DecompositionReport<S> rep = decompose(c, opts);
    out["report"] = to_json(rep, c.size());

    // independent cross-check
    try {
        WeightVector<S> pr = prony_decompose(c, std::min(cfg.max_weights, c.size() / 2));
        Json pj = Json::array();
        for (const S& x : pr.weights) pj.push_back(scalar_to_json(x));
        out["prony"]["weights"] = pj;
        if (pr.size() == rep.weights.size()) {
            double worst = 0;
            for (int i = 0; i < pr.size(); ++i)
                worst = std::max(worst,
                                 std::abs(scalar_traits<S>::to_double(pr.weights[i]) -
                                          scalar_traits<S>::to_double(rep.weights.weights[i])));
            out["prony"]["max_disagreement"] = worst;
            out["prony"]["count_match"] = true;
            write_json_file(out_path, out);
            return worst <= 100 * cfg.tol ? 0 : 3;
        }
        out["prony"]["count_match"] = false;
        write_json_file(out_path, out);
        return 3;
    } catch (const Error& e) {
        out["prony"]["error"] = e.what();
        write_json_file(out_path, out);
        return 3;
    }
}

template <class S>
int run_check(const Json& mfile, const std::string& out_path, const RunConfig& cfg) {
    MomentSequence<S> c = sequence_from_json<S>(mfile);
    Json out;
    out["n"] = c.size();
    ValidityReport v = validate_sequence(c);
    out["validity"] = to_json(v);
    PartitionPolyTable<S> tbl(c);
    ScanBudget budget{cfg.max_r, cfg.max_cols, cfg.max_k};
    PositivityReport<S> scan = positivity_scan(tbl, budget);
    out["positivity"] = to_json(scan);
    write_json_file(out_path, out);
    return (v.all_pass() && scan.clean()) ? 0 : 1;
}

template <class S>
int run_verify(const Json& mfile, const Json& wfile, const RunConfig& cfg) {
    MomentSequence<S> c = sequence_from_json<S>(mfile);
    WeightVector<S> w = weights_from_json<S>(wfile);
    MomentSequence<S> model = reconstruct(w, c.size(), c.epsilon);
    for (int j = 0; j < c.size(); ++j) {
        S diff = c.values[j] - model.values[j];
        if (scalar_traits<S>::to_double(abs_value(diff)) > cfg.tol) {
            std::cerr << "mismatch at c_" << 2 * (j + 1) << "\n";
            return 1;
        }
    }
    if (!w.empty()) {
        PartitionPolyTable<S> tbl(c);
        int order = std::min(cfg.order, c.size());
        if (!factorization_check(tbl, w.weights.front(), order)) {
            std::cerr << "factorization by the leading weight fails\n";
            return 1;
        }
    }
    return 0;
}

template <class S>
int run_eval(const Json& mfile, const std::string& out_path,
             const std::vector<double>& tgrid, const RunConfig& cfg) {
    MomentSequence<S> c = sequence_from_json<S>(mfile);
    PartitionPolyTable<S> tbl(c);
    const int order = std::min(cfg.order, c.size());
    SeriesTruncation<S> e = series_E(tbl, order);
    LambdaBounds<S> lb = lambda_bounds(tbl, order, tgrid);

    std::ostringstream csv;
    csv << "# lambda_lower," << format_scalar_csv(scalar_traits<S>::to_double(lb.lower)) << "\n";
    csv << "# lambda_empirical," << format_scalar_csv(lb.empirical) << "\n";
    csv << "t,partial_E\n";
    for (double t : tgrid) {
        double sum = 0, p = 1, t2 = t * t;
        for (const S& coef : e.coeffs) {
            sum += scalar_traits<S>::to_double(coef) * p;
            p *= t2;
        }
        csv << format_scalar_csv(t) << "," << format_scalar_csv(sum) << "\n";
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error(errc::bad_input, "cannot open " + out_path);
        out << csv.str();
    }
    return 0;
}

template <class S>
int run_ppoly(const Json& mfile, const std::string& index_text) {
    MomentSequence<S> c = sequence_from_json<S>(mfile);
    MultiIndex idx = MultiIndex::parse(index_text);
    PartitionPolyTable<S> tbl(c);
    std::cout << scalar_traits<S>::str(partition_poly(tbl, idx)) << "\n";
    return 0;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) grid.push_back(std::stod(item));
    if (grid.empty()) throw Error(errc::bad_input, "empty t grid");
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis and decomposition of truncated even-moment sequences"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string input, weights_path, output = "out.json", config_path;
    int count = 8;
    std::string tgrid_text = "1", index_text;

    app.add_option("--config", config_path, "JSON config file (flags win)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "rational|float (for gen)");
        sub->add_option("--epsilon", cfg.epsilon, "float-mode zero tolerance");
        sub->add_option("--tol", cfg.tol, "decomposition / verification tolerance");
        sub->add_option("--max-weights", cfg.max_weights, "extraction cap");
        sub->add_option("--max-r", cfg.max_r, "scan: max slots per column");
        sub->add_option("--max-N", cfg.max_cols, "scan: max matrix size");
        sub->add_option("--max-k", cfg.max_k, "scan: max slot entry");
        sub->add_option("--order", cfg.order, "series truncation order");
        sub->add_option("--output", output, "output file");
    };

    CLI::App* gen = app.add_subcommand("gen", "write the moment sequence of a weight file");
    gen->add_option("--weights", weights_path, "weight file")->required();
    gen->add_option("--count", count, "number of moments to write");
    add_common(gen);

    CLI::App* dec = app.add_subcommand("decompose", "recover weights from a moment file");
    dec->add_option("--input", input, "moment file")->required();
    add_common(dec);

    CLI::App* chk = app.add_subcommand("check", "admissibility gate + positivity scan");
    chk->add_option("--input", input, "moment file")->required();
    add_common(chk);

    CLI::App* ver = app.add_subcommand("verify", "check a sequence against a weight file");
    ver->add_option("--input", input, "moment file")->required();
    ver->add_option("--weights", weights_path, "weight file")->required();
    add_common(ver);

    CLI::App* ev = app.add_subcommand("eval", "partial sums of E(t) as CSV");
    ev->add_option("--input", input, "moment file")->required();
    ev->add_option("--tgrid", tgrid_text, "comma-separated t values");
    add_common(ev);

    CLI::App* pp = app.add_subcommand("ppoly", "evaluate one partition polynomial");
    pp->add_option("--input", input, "moment file")->required();
    pp->add_option("--index", index_text, "comma-separated even parts, e.g. 10,4")->required();
    add_common(pp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            Json cj = read_json_file(config_path);
            // flags win: only fill fields the command line left at defaults
            RunConfig defaults;
            if (cj.contains("tol") && cfg.tol == defaults.tol) cfg.tol = cj["tol"].get<double>();
            if (cj.contains("epsilon") && cfg.epsilon == defaults.epsilon)
                cfg.epsilon = cj["epsilon"].get<double>();
            if (cj.contains("max_weights") && cfg.max_weights == defaults.max_weights)
                cfg.max_weights = cj["max_weights"].get<int>();
            if (cj.contains("max_r") && cfg.max_r == defaults.max_r) cfg.max_r = cj["max_r"].get<int>();
            if (cj.contains("max_N") && cfg.max_cols == defaults.max_cols)
                cfg.max_cols = cj["max_N"].get<int>();
            if (cj.contains("max_k") && cfg.max_k == defaults.max_k) cfg.max_k = cj["max_k"].get<int>();
            if (cj.contains("order") && cfg.order == defaults.order) cfg.order = cj["order"].get<int>();
            if (cj.contains("mode") && cfg.mode == defaults.mode) cfg.mode = cj["mode"].get<std::string>();
        }

        if (gen->parsed()) {
            Json wfile = read_json_file(weights_path);
            const std::string mode = wfile.contains("mode") ? mode_of(wfile) : cfg.mode;
            if (count < 1) throw Error(errc::bad_input, "count must be >= 1");
            return mode == "rational" ? run_gen<Rational>(wfile, output, count, cfg)
                                      : run_gen<double>(wfile, output, count, cfg);
        }
        if (dec->parsed()) {
            Json mfile = read_json_file(input);
            return mode_of(mfile) == "rational" ? run_decompose<Rational>(mfile, output, cfg)
                                                : run_decompose<double>(mfile, output, cfg);
        }
        if (chk->parsed()) {
            Json mfile = read_json_file(input);
            return mode_of(mfile) == "rational" ? run_check<Rational>(mfile, output, cfg)
                                                : run_check<double>(mfile, output, cfg);
        }
        if (ver->parsed()) {
            Json mfile = read_json_file(input);
            Json wfile = read_json_file(weights_path);
            return mode_of(mfile) == "rational" ? run_verify<Rational>(mfile, wfile, cfg)
                                                : run_verify<double>(mfile, wfile, cfg);
        }
        if (ev->parsed()) {
            Json mfile = read_json_file(input);
            std::vector<double> grid = parse_grid(tgrid_text);
            return mode_of(mfile) == "rational" ? run_eval<Rational>(mfile, output, grid, cfg)
                                                : run_eval<double>(mfile, output, grid, cfg);
        }
        if (pp->parsed()) {
            Json mfile = read_json_file(input);
            return mode_of(mfile) == "rational" ? run_ppoly<Rational>(mfile, index_text)
                                                : run_ppoly<double>(mfile, index_text);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
