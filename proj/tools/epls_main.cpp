#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "epls/applications.hpp"
#include "epls/bench.hpp"
#include "epls/image_io.hpp"
#include "epls/metrics.hpp"
#include "epls/pipelines.hpp"

namespace {

struct Options {
    std::string input, output, guide;
    std::string method = "blf-ls";
    double sigma_s = 12.0;
    double sigma_r = 0.04;
    double lambda = -1.0; // negative = per-method default
    double alpha = 1.2;
    double eps = 1e-4;
    double boost = 5.0;
    double contrast = 1.0;
    double saturation = 0.6;
    double init_sigma = 2.5;
    int n = 3;
    int iterations = 3;
    int pad = 16;
    int threads = 0;
    // bench
    std::string methods_csv = "ls,ls-nopad,wls,blf,nc,blf-ls,nc-ls";
    std::string csv_path;
    int size = 1024;
    int runs = 3;
};

double effective_lambda(const Options& o)
{
    if (o.lambda >= 0.0) return o.lambda;
    return o.method == "wls" ? 0.8 : 1024.0;
}

epls::SmootherSpec make_spec(const Options& o)
{
    epls::SmootherSpec s;
    if (o.method == "ls")
        s.kind = epls::SmootherKind::LS;
    else if (o.method == "wls")
        s.kind = epls::SmootherKind::WLS;
    else if (o.method == "blf-ls")
        s.kind = epls::SmootherKind::BLF_LS;
    else
        s.kind = epls::SmootherKind::NC_LS;
    s.blf = {o.sigma_s, o.sigma_r};
    s.dt = {o.sigma_s, o.sigma_r, o.iterations};
    s.solve = {effective_lambda(o), o.pad};
    s.wls = {effective_lambda(o), o.alpha, o.eps};
    return s;
}

void add_smoothing_flags(CLI::App* cmd, Options& o, bool with_method = true)
{
    if (with_method)
        cmd->add_option("--method", o.method, "smoothing method: ls, wls, blf-ls, nc-ls")
            ->check(CLI::IsMember({"ls", "wls", "blf-ls", "nc-ls"}));
    cmd->add_option("--sigma-s", o.sigma_s, "spatial bandwidth in pixels")->check(CLI::PositiveNumber);
    cmd->add_option("--sigma-r", o.sigma_r, "range bandwidth in [0,1] units")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", o.lambda, "regularization weight (default 1024; 0.8 for wls)");
    cmd->add_option("--alpha", o.alpha, "wls gradient exponent");
    cmd->add_option("--eps", o.eps, "wls weight floor")->check(CLI::PositiveNumber);
    cmd->add_option("--iterations", o.iterations, "domain-transform pass count")->check(CLI::PositiveNumber);
    cmd->add_option("--pad", o.pad, "reflect padding before the FFT solve")->check(CLI::NonNegativeNumber);
}

void add_rolling_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--sigma-s", o.sigma_s, "spatial bandwidth in pixels")->check(CLI::PositiveNumber);
    cmd->add_option("--sigma-r", o.sigma_r, "range bandwidth in [0,1] units")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", o.lambda, "regularization weight (default 1024)");
    cmd->add_option("--n", o.n, "rolling iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--init-sigma", o.init_sigma, "Gaussian sigma of the initial guidance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--pad", o.pad, "reflect padding before the FFT solve")->check(CLI::NonNegativeNumber);
}

void add_io_positionals(CLI::App* cmd, Options& o)
{
    cmd->add_option("input", o.input, "input image")->required();
    cmd->add_option("output", o.output, "output image")->required();
}

int run(const Options& o, const std::string& cmd)
{
    epls::set_num_threads(o.threads);

    if (cmd == "bench") {
        std::vector<std::string> methods;
        std::stringstream ss(o.methods_csv);
        for (std::string tok; std::getline(ss, tok, ',');)
            if (!tok.empty()) methods.push_back(tok);
        const auto report = epls::run_bench({{o.size, o.size}}, methods, o.runs);
        if (o.csv_path.empty()) {
            epls::write_csv(report, std::cout);
        } else {
            std::ofstream out(o.csv_path);
            if (!out) throw std::runtime_error("cannot open '" + o.csv_path + "'");
            epls::write_csv(report, out);
            for (const auto& r : report.rows)
                std::cout << r.method << " " << r.width << "x" << r.height << ": "
                          << r.seconds << " s\n";
        }
        return 0;
    }

    const epls::PlanarImage input = epls::load_image(o.input);
    epls::PlanarImage result;

    if (cmd == "smooth") {
        result = epls::smooth(input, make_spec(o));
    } else if (cmd == "enhance") {
        epls::EnhanceParams p{o.boost, make_spec(o)};
        result = epls::detail_enhance(input, p);
    } else if (cmd == "tonemap") {
        epls::TonemapParams p{o.contrast, o.saturation, make_spec(o)};
        result = epls::tonemap_hdr(input, p);
    } else if (cmd == "joint") {
        const epls::PlanarImage guide = epls::load_image(o.guide);
        result = epls::flash_no_flash(input, guide, make_spec(o));
    } else if (cmd == "texture") {
        result = epls::texture_removal(input, {o.sigma_s, o.sigma_r, o.iterations},
                                       {o.n, o.init_sigma}, {effective_lambda(o), o.pad});
    } else if (cmd == "clipart") {
        result = epls::clipart_cleanup(input, {o.sigma_s, o.sigma_r, o.iterations},
                                       {o.n, o.init_sigma}, {effective_lambda(o), o.pad});
    }

    epls::save_image(o.output, result);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Edge-preserving smoothing by least-squares reconstruction from filtered gradients"};
    app.require_subcommand(1);

    Options o;
    app.add_option("--threads", o.threads, "worker threads (0 = hardware default)")
        ->envname("EPSLS_THREADS");

    auto* sm = app.add_subcommand("smooth", "edge-preserving smoothing");
    add_smoothing_flags(sm, o);
    add_io_positionals(sm, o);

    // Application subcommands seed their own parameter defaults before their
    // flags parse, so explicit flags still win.
    auto* en = app.add_subcommand("enhance", "detail enhancement (boosted detail layer)");
    en->preparse_callback([&o](std::size_t) { o.sigma_s = 6.0; o.sigma_r = 0.02; });
    add_smoothing_flags(en, o);
    en->add_option("--boost", o.boost, "detail multiplier")->check(CLI::NonNegativeNumber);
    add_io_positionals(en, o);

    auto* tm = app.add_subcommand("tonemap", "HDR tone mapping (base/detail on log luminance)");
    tm->preparse_callback([&o](std::size_t) { o.sigma_s = 8.0; o.sigma_r = 0.03; });
    add_smoothing_flags(tm, o);
    tm->add_option("--contrast", o.contrast, "log10 range of the compressed base")->check(CLI::PositiveNumber);
    tm->add_option("--saturation", o.saturation, "color ratio exponent");
    add_io_positionals(tm, o);

    auto* jn = app.add_subcommand("joint", "joint smoothing guided by a second image");
    jn->preparse_callback([&o](std::size_t) { o.sigma_s = 12.0; o.sigma_r = 0.003; });
    add_smoothing_flags(jn, o);
    jn->add_option("--guide", o.guide, "guidance image (e.g. flash exposure)")->required();
    add_io_positionals(jn, o);

    auto* tx = app.add_subcommand("texture", "texture removal via rolling-guidance nc-ls");
    tx->preparse_callback([&o](std::size_t) {
        o.sigma_s = 8.0; o.sigma_r = 0.02; o.n = 3; o.init_sigma = 2.5;
    });
    add_rolling_flags(tx, o);
    add_io_positionals(tx, o);

    auto* ca = app.add_subcommand("clipart", "compression-artifact cleanup for clip-art images");
    ca->preparse_callback([&o](std::size_t) {
        o.sigma_s = 6.0; o.sigma_r = 0.02; o.n = 2; o.init_sigma = 0.75;
    });
    add_rolling_flags(ca, o);
    add_io_positionals(ca, o);

    auto* be = app.add_subcommand("bench", "timing and artifact metrics on synthetic scenes");
    be->add_option("--methods", o.methods_csv, "comma-separated method list");
    be->add_option("--size", o.size, "square image size")->check(CLI::PositiveNumber);
    be->add_option("--runs", o.runs, "timed runs per method (>= 3)");
    be->add_option("--csv", o.csv_path, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        return run(o, app.get_subcommands().front()->get_name());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
