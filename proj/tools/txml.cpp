// txml: surrogate-modeling toolkit for planar transmission lines.
//
// Subcommands: sweep, train, eval, plot, reproduce. Exit codes: 0 success,
// 1 runtime/domain failure, 2 usage error. All file writes go through a
// temp-then-rename path, so failures never leave partial outputs.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "txml/errors.hpp"
#include "txml/eval.hpp"
#include "txml/kernels/kernels.hpp"
#include "txml/linreg.hpp"
#include "txml/model_io.hpp"
#include "txml/numio.hpp"
#include "txml/reproduce.hpp"
#include "txml/svg.hpp"

namespace fs = std::filesystem;
using namespace txml;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Flat key=value config support: each key mirrors a long flag of the invoked
// subcommand. Values are injected as "--key=value" tokens after the user's
// own arguments, skipping keys already given on the command line so explicit
// flags always win.
std::vector<std::string> config_file_args(const fs::path& file,
                                          const std::vector<std::string>& given) {
    std::string content;
    try {
        content = read_text_file(file);
    } catch (const IoError& e) {
        throw UsageError(std::string("--config: ") + e.what());
    }
    std::vector<std::string> extra;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= content.size()) {
        const std::size_t nl = content.find('\n', pos);
        const std::string line =
            trim(content.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
        pos = nl == std::string::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("--config: expected key=value on line " + std::to_string(line_no) +
                             " of " + file.string());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        bool overridden = false;
        for (const std::string& arg : given) {
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
                overridden = true;
                break;
            }
        }
        if (!overridden) extra.push_back(flag + "=" + value);
    }
    return extra;
}

// Pulls --config FILE out of the raw arguments and appends the file's
// key=value pairs; returns the argument list CLI11 should parse.
std::vector<std::string> preprocess_args(int argc, char** argv) {
    std::vector<std::string> args;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) throw UsageError("--config requires a file path");
            config_path = argv[++i];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        } else {
            args.push_back(arg);
        }
    }
    if (!config_path.empty()) {
        for (std::string& extra : config_file_args(config_path, args)) {
            args.push_back(std::move(extra));
        }
    }
    return args;
}

fs::path resolve_out(const std::string& out_dir, const std::string& out) {
    fs::path p(out);
    if (p.is_absolute()) return p;
    fs::path dir(out_dir);
    if (!dir.empty()) fs::create_directories(dir);
    return dir / p;
}

struct SweepArgs {
    std::string line = "microstrip";
    double eps_r = 2.0;
    double min = 1.0;
    double max = 8.5;
    double step = 0.5;
    double l_eff_mm = 0.0;
    double length_mm = 0.0;
    double height_mm = 0.0;
    std::string delta_l = "standard";
    std::string out = "sweep.csv";
    std::string out_dir = ".";
};

void run_sweep(const SweepArgs& a) {
    if (a.max < a.min) {
        throw UsageError("--max (" + format_double(a.max) + ") is below --min (" +
                         format_double(a.min) + ")");
    }
    if (a.step <= 0.0) throw UsageError("--step must be positive");

    LineKind kind;
    ParamMap fixed;
    if (a.line == "microstrip" || a.line == "microstrip_impedance") {
        kind = LineKind::microstrip_impedance;
        if (a.l_eff_mm != 0.0 || a.length_mm != 0.0 || a.height_mm != 0.0) {
            throw UsageError("microstrip sweeps take no patch length flags");
        }
    } else if (a.line == "patch" || a.line == "patch_frequency") {
        kind = LineKind::patch_frequency;
        if (a.l_eff_mm != 0.0) {
            fixed["effective_length_m"] = a.l_eff_mm * 1e-3;
        }
        if (a.length_mm != 0.0 || a.height_mm != 0.0) {
            fixed["patch_length_m"] = a.length_mm * 1e-3;
            fixed["substrate_height_m"] = a.height_mm * 1e-3;
        }
        if (a.delta_l == "printed") {
            fixed["delta_l_variant"] = 1.0;
        } else if (a.delta_l != "standard") {
            throw UsageError("--delta-l must be 'standard' or 'printed'");
        }
    } else {
        throw UsageError("--line must be 'microstrip' or 'patch', got '" + a.line + "'");
    }

    const Dataset ds = generate_sweep(kind, a.eps_r, fixed, a.min, a.max, a.step);
    const fs::path path = resolve_out(a.out_dir, a.out);
    write_csv(ds, path);
    std::cout << "wrote " << ds.samples.size() << " samples (" << ds.descriptor() << ") to "
              << path.string() << "\n";
}

struct TrainArgs {
    std::string model = "mlp";
    std::string data;
    std::string out = "model.txt";
    std::string out_dir = ".";
    std::vector<int> hidden{8};
    std::string activation = "tanh";
    std::uint64_t seed = 42;
    int epochs = 20000;
    double lr = 0.2;
    double momentum = 0.9;
    double target_mse = 1e-8;
};

void run_train(const TrainArgs& a) {
    const Dataset ds = read_csv(a.data);
    const fs::path path = resolve_out(a.out_dir, a.out);
    if (a.model == "ols") {
        const LinearModel m = fit_ols(ds);
        save_model(m, path);
        double sse = 0.0;
        for (const Sample& s : ds.samples) {
            const double r = s.y - predict_linear(m, s.x);
            sse += r * r;
        }
        std::cout << "ols fit: slope " << format_double(m.slope) << ", intercept "
                  << format_double(m.intercept) << ", training mse "
                  << format_double(sse / static_cast<double>(ds.samples.size())) << "\n";
    } else if (a.model == "mlp") {
        MlpLayout layout;
        layout.hidden_sizes = a.hidden;
        layout.activation = parse_activation(a.activation);
        TrainConfig cfg;
        cfg.epochs = a.epochs;
        cfg.learning_rate = a.lr;
        cfg.momentum = a.momentum;
        cfg.seed = a.seed;
        cfg.target_mse = a.target_mse;
        const MlpModel m = train_new(layout, ds, cfg);
        save_model(m, path);
        std::cout << "mlp trained: " << m.training_log.size() << " epochs, final normalized mse "
                  << format_double(m.training_log.back()) << "\n";
    } else {
        throw UsageError("--model must be 'ols' or 'mlp', got '" + a.model + "'");
    }
    std::cout << "wrote model to " << path.string() << "\n";
}

struct EvalArgs {
    std::string model;
    std::string data;
    std::string out = "report.csv";
    std::string out_dir = ".";
    bool plot = false;
};

void run_eval(const EvalArgs& a) {
    const AnyModel model = load_model(a.model);
    const Dataset ds = read_csv(a.data);
    const EvalReport report =
        evaluate([&](double x) { return predict(model, x); }, ds, model_descriptor(model));
    const fs::path path = resolve_out(a.out_dir, a.out);
    write_report_csv(report, path);
    std::cout << "max % error  " << format_fixed(report.max_pct_error, 3) << "\n"
              << "mean % error " << format_fixed(report.mean_pct_error, 3) << "\n"
              << "wrote report to " << path.string() << "\n";
    if (a.plot) {
        fs::path stem = path;
        stem.replace_extension();
        const fs::path pred = stem.string() + "_prediction.svg";
        const fs::path err = stem.string() + "_error.svg";
        emit_plot_svg(report, PlotKind::prediction, pred);
        emit_plot_svg(report, PlotKind::error, err);
        std::cout << "wrote plots to " << pred.string() << " and " << err.string() << "\n";
    }
}

struct PlotArgs {
    std::string report;
    std::string kind = "both";
    std::string out_prefix;
    std::string out_dir = ".";
    std::string line;  // optional: relabel axes for a known line kind
    std::string title;
};

void run_plot(const PlotArgs& a) {
    EvalReport report = read_report_csv(a.report);
    if (a.line == "microstrip" || a.line == "microstrip_impedance") {
        report.quantity = std::string(quantity_label(LineKind::microstrip_impedance));
        report.unit = Unit::ohm;
    } else if (a.line == "patch" || a.line == "patch_frequency") {
        report.quantity = std::string(quantity_label(LineKind::patch_frequency));
        report.unit = Unit::hertz;
    } else if (!a.line.empty()) {
        throw UsageError("--line must be 'microstrip' or 'patch', got '" + a.line + "'");
    }
    report.model_descriptor = a.title.empty() ? fs::path(a.report).stem().string() : a.title;

    std::string prefix = a.out_prefix;
    if (prefix.empty()) prefix = fs::path(a.report).stem().string();
    const bool want_pred = a.kind == "prediction" || a.kind == "both";
    const bool want_err = a.kind == "error" || a.kind == "both";
    if (!want_pred && !want_err) {
        throw UsageError("--kind must be 'prediction', 'error' or 'both', got '" + a.kind + "'");
    }
    if (want_pred) {
        const fs::path p = resolve_out(a.out_dir, prefix + "_prediction.svg");
        emit_plot_svg(report, PlotKind::prediction, p);
        std::cout << "wrote " << p.string() << "\n";
    }
    if (want_err) {
        const fs::path p = resolve_out(a.out_dir, prefix + "_error.svg");
        emit_plot_svg(report, PlotKind::error, p);
        std::cout << "wrote " << p.string() << "\n";
    }
}

struct ReproduceArgs {
    std::string table = "all";
    std::string out_dir = "reproduce_out";
    std::uint64_t seed = 42;
    double train_min = 1.0;
    double train_max = 9.5;
    double train_step = 0.05;
    double eps_r = 0.0;    // 0 = use the compiled table constant
    double l_eff_mm = 0.0; // 0 = use the compiled table constant
};

bool run_reproduce(const ReproduceArgs& a) {
    std::vector<int> tables;
    if (a.table == "1") {
        tables = {1};
    } else if (a.table == "2") {
        tables = {2};
    } else if (a.table == "all") {
        tables = {1, 2};
    } else {
        throw UsageError("--table must be '1', '2' or 'all', got '" + a.table + "'");
    }
    ReproduceConfig cfg;
    cfg.out_dir = a.out_dir;
    cfg.seed = a.seed;
    cfg.train_min = a.train_min;
    cfg.train_max = a.train_max;
    cfg.train_step = a.train_step;
    if (a.eps_r != 0.0) cfg.eps_r_override = a.eps_r;
    if (a.l_eff_mm != 0.0) cfg.effective_length_mm_override = a.l_eff_mm;
    return reproduce(tables, cfg, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar transmission-line surrogate modeling toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "txml 1.0 (kernels: " +
                                          std::string(kernels::active_kernels().name) + ")");

    // --config is handled by preprocess_args before CLI11 runs; registered on
    // each subcommand below only so it shows up in --help.
    std::string config_help_sink;
    const auto add_config_help = [&](CLI::App* sub) {
        sub->add_option("--config", config_help_sink,
                        "Flat key=value file mirroring this subcommand's flags; "
                        "command-line flags override file values");
    };

    SweepArgs sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Generate a dataset by sweeping w/h through a line model");
    sweep_cmd->add_option("--line", sweep.line, "Line kind: microstrip | patch");
    sweep_cmd->add_option("--eps-r", sweep.eps_r, "Relative dielectric constant");
    sweep_cmd->add_option("--min", sweep.min, "Sweep start (w/h)");
    sweep_cmd->add_option("--max", sweep.max, "Sweep end (w/h)");
    sweep_cmd->add_option("--step", sweep.step, "Sweep step");
    sweep_cmd->add_option("--l-eff-mm", sweep.l_eff_mm, "Patch effective length, mm");
    sweep_cmd->add_option("--length-mm", sweep.length_mm, "Patch physical length, mm");
    sweep_cmd->add_option("--height-mm", sweep.height_mm, "Substrate height, mm");
    sweep_cmd->add_option("--delta-l", sweep.delta_l,
                          "Length-extension variant: standard | printed");
    sweep_cmd->add_option("--out", sweep.out, "Output CSV path");
    sweep_cmd->add_option("--out-dir", sweep.out_dir, "Directory for relative outputs");


    TrainArgs train_args;
    CLI::App* train_cmd = app.add_subcommand("train", "Fit a surrogate model on a dataset CSV");
    train_cmd->add_option("--model", train_args.model, "Model kind: ols | mlp");
    train_cmd->add_option("--data", train_args.data, "Training dataset CSV")->required();
    train_cmd->add_option("--out", train_args.out, "Output model path");
    train_cmd->add_option("--out-dir", train_args.out_dir, "Directory for relative outputs");
    train_cmd->add_option("--hidden", train_args.hidden, "Hidden layer sizes")
        ->delimiter(',');
    train_cmd->add_option("--activation", train_args.activation, "Hidden activation: tanh | sigmoid");
    train_cmd->add_option("--seed", train_args.seed, "Weight initialization seed");
    train_cmd->add_option("--epochs", train_args.epochs, "Training epochs");
    train_cmd->add_option("--lr", train_args.lr, "Learning rate");
    train_cmd->add_option("--momentum", train_args.momentum, "Momentum coefficient (0 = plain GD)");
    train_cmd->add_option("--target-mse", train_args.target_mse,
                          "Early-stop threshold on normalized MSE");


    EvalArgs eval_args;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "Evaluate a saved model against a dataset CSV");
    eval_cmd->add_option("--model", eval_args.model, "Model file")->required();
    eval_cmd->add_option("--data", eval_args.data, "Evaluation dataset CSV")->required();
    eval_cmd->add_option("--out", eval_args.out, "Output report CSV path");
    eval_cmd->add_option("--out-dir", eval_args.out_dir, "Directory for relative outputs");
    eval_cmd->add_flag("--plot", eval_args.plot, "Also write prediction and error SVGs");


    PlotArgs plot_args;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render SVG plots from a report CSV");
    plot_cmd->add_option("--report", plot_args.report, "Report CSV")->required();
    plot_cmd->add_option("--kind", plot_args.kind, "Plot kind: prediction | error | both");
    plot_cmd->add_option("--out-prefix", plot_args.out_prefix,
                         "Output file prefix (default: report stem)");
    plot_cmd->add_option("--out-dir", plot_args.out_dir, "Directory for relative outputs");
    plot_cmd->add_option("--line", plot_args.line, "Label axes for: microstrip | patch");
    plot_cmd->add_option("--title", plot_args.title, "Plot title override");


    ReproduceArgs repro_args;
    CLI::App* repro_cmd = app.add_subcommand(
        "reproduce", "Regenerate the benchmark tables, train both surrogates, emit reports/plots");
    repro_cmd->add_option("--table", repro_args.table, "Which table: 1 | 2 | all");
    repro_cmd->add_option("--out-dir", repro_args.out_dir, "Output directory");
    repro_cmd->add_option("--seed", repro_args.seed, "MLP initialization seed");

    add_config_help(sweep_cmd);
    add_config_help(train_cmd);
    add_config_help(eval_cmd);
    add_config_help(plot_cmd);
    add_config_help(repro_cmd);

    try {
        std::vector<std::string> args = preprocess_args(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11's vector parse is back-to-front
        app.parse(std::move(args));
    } catch (const UsageError& e) {
        std::cerr << "txml: " << e.what() << "\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "txml: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sweep_cmd->parsed()) run_sweep(sweep);
        if (train_cmd->parsed()) run_train(train_args);
        if (eval_cmd->parsed()) run_eval(eval_args);
        if (plot_cmd->parsed()) run_plot(plot_args);
        if (repro_cmd->parsed()) return run_reproduce(repro_args) ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "txml: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "txml: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "txml: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
