#include "bdvar/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

using namespace bdvar;

int main(int argc, char** argv) {
    CLI::App app{
        "Bernstein / Bernstein-Durrmeyer operator experiments: moment identities, "
        "variation detracting, derivative-rate bounds, and remainder decomposition"};

    std::string suite_name;
    std::string functions = "all";
    std::string n_spec;
    std::string format_name = "csv";
    std::string out_path = "-";
    ExperimentConfig config;

    app.add_option("--suite", suite_name, "moments|detracting|rate|remainder|apply")
        ->required();
    app.add_option("--functions", functions,
                   "comma-separated corpus ids, or 'all' for the suite default");
    app.add_option("--n", n_spec,
                   "degrees: comma list, lo:hi (dense), or lo:hi:g (geometric ratio g)");
    app.add_option("--quad-order", config.quad_order, "Gauss-Legendre order")
        ->capture_default_str();
    app.add_option("--panels", config.panels, "panels per segment")->capture_default_str();
    app.add_option("--tol", config.tol, "quadrature / L1 tolerance")->capture_default_str();
    app.add_option("--format", format_name, "csv|json")->capture_default_str();
    app.add_option("--out", out_path, "output path, or - for stdout")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        config.suite = parse_suite(suite_name);
        config.format = parse_format(format_name);
        if (!n_spec.empty()) config.n_list = parse_n_spec(n_spec);
        if (functions != "all" && !functions.empty()) {
            size_t start = 0;
            while (start <= functions.size()) {
                const size_t pos = functions.find(',', start);
                config.function_ids.push_back(functions.substr(
                    start, pos == std::string::npos ? std::string::npos : pos - start));
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
        }
        if (config.quad_order < 1 || config.panels < 1 || !(config.tol > 0.0))
            throw std::invalid_argument("--quad-order and --panels must be >= 1, --tol > 0");

        const auto corpus = corpus_default();
        const Report report = run_suite(config, corpus);
        const std::string rendered = report.render();

        if (out_path == "-") {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file: " + out_path);
            out << rendered;
        }
        if (report.hard_failures > 0) {
            std::cerr << "hard failures: " << report.hard_failures << "\n";
            return 1;
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
