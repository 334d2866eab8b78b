// Command-line front end: generate, train, predict, decompose, evaluate, benchmark.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 training divergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nd/nd.hpp"

namespace {

struct TrainFlags {
    nd::TrainConfig config;
    long long linear = 10, softplus = 10, sigmoid = 10;
    bool no_aug = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lr", config.learning_rate, "learning rate")->capture_default_str();
        cmd->add_option("--l1", config.l1_strength, "L1 regularization strength")
            ->capture_default_str();
        cmd->add_option("--epochs", config.epochs, "training epochs")->capture_default_str();
        cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
        cmd->add_flag("--log-filter", config.log_filter,
                      "log-transform values (predictions are exponentiated back)");
        cmd->add_flag("--freeze-frequencies", config.freeze_frequencies,
                      "keep sinusoid frequencies and phases at their initial values");
        cmd->add_flag("--no-aug", no_aug, "no augmentation units (g(t) = 0)");
        cmd->add_option("--linear", linear, "linear augmentation units")->capture_default_str();
        cmd->add_option("--softplus", softplus, "softplus augmentation units")
            ->capture_default_str();
        cmd->add_option("--sigmoid", sigmoid, "sigmoid augmentation units")
            ->capture_default_str();
    }

    nd::TrainConfig resolve() {
        if (linear < 0 || softplus < 0 || sigmoid < 0)
            throw nd::ConfigError("augmentation unit counts must be nonnegative");
        config.aug = no_aug ? nd::AugmentationSpec::none()
                            : nd::AugmentationSpec{static_cast<std::size_t>(linear),
                                                   static_cast<std::size_t>(softplus),
                                                   static_cast<std::size_t>(sigmoid)};
        return config;
    }
};

/**
 * key=value config file: each key names a long option of the subcommand;
 * values apply only where no flag was given, so flags override the file.
 */
void apply_config_file(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nd::IoError("cannot open config file " + path);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw nd::ConfigError("config line " + std::to_string(row) + " is not key=value");
        const std::string key = line.substr(start, eq - start);
        const std::string value = line.substr(eq + 1);

        CLI::Option* match = nullptr;
        for (CLI::Option* opt : sub->get_options()) {
            for (const std::string& name : opt->get_lnames())
                if (name == key) match = opt;
        }
        if (match == nullptr || key == "config")
            throw nd::ConfigError("unknown config key '" + key + "'");
        if (match->count() == 0) {  // flags win over the file
            match->add_result(value);
            match->run_callback();
        }
    }
}

// Column sniffing: two comma-separated fields on the first data row means time,value.
bool detect_time_column(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw nd::IoError("cannot open " + path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        return line.find(',') != std::string::npos;
    }
    throw nd::DataError("empty input file " + path.string());
}

nd::TimeSeries load_series(const std::string& path, bool values_only) {
    bool has_time = values_only ? false : detect_time_column(path);
    return nd::load_csv(path, has_time);
}

std::vector<double> linspace(double from, double to, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = count > 1 ? from + (to - from) * static_cast<double>(i) /
                                 static_cast<double>(count - 1)
                           : from;
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"trainable sinusoid + nonperiodic decomposition for time-series extrapolation"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "emit a built-in dataset as CSV");
    std::string gen_dataset;
    gen->add_option("dataset", gen_dataset, "toy | mackey-glass")
        ->required()
        ->check(CLI::IsMember({"toy", "mackey-glass"}));
    long long gen_train = 128, gen_test = 256, gen_n = 1024;
    std::string gen_train_out = "toy_train.csv", gen_test_out = "toy_test.csv";
    std::string gen_out = "mackey_glass.csv";
    nd::MackeyGlassParams mg;
    gen->add_option("--train", gen_train, "toy: training samples")->capture_default_str();
    gen->add_option("--test", gen_test, "toy: testing samples")->capture_default_str();
    gen->add_option("--train-out", gen_train_out, "toy: training CSV path")
        ->capture_default_str();
    gen->add_option("--test-out", gen_test_out, "toy: testing CSV path")->capture_default_str();
    gen->add_option("--n", gen_n, "mackey-glass: total samples")->capture_default_str();
    gen->add_option("--output", gen_out, "mackey-glass: CSV path")->capture_default_str();
    gen->add_option("--beta", mg.beta)->capture_default_str();
    gen->add_option("--gamma", mg.gamma)->capture_default_str();
    gen->add_option("--exponent", mg.exponent)->capture_default_str();
    gen->add_option("--tau", mg.tau)->capture_default_str();
    gen->add_option("--dt", mg.dt)->capture_default_str();
    gen->add_option("--history", mg.history_value)->capture_default_str();
    gen->add_option("--burn-in", mg.burn_in)->capture_default_str();
    gen->add_option("--stride", mg.sample_stride)->capture_default_str();

    // ---- train --------------------------------------------------------------
    auto* train = app.add_subcommand("train", "fit a model to a CSV series");
    std::string train_input, train_output = "model.ndm", trace_path;
    bool train_values_only = false;
    std::vector<std::size_t> trace_units;
    train->add_option("input", train_input, "input CSV")->required();
    train->add_option("-o,--output", train_output, "model file path")->capture_default_str();
    train->add_flag("--values-only", train_values_only,
                    "treat the CSV as a single value column (implicit times)");
    train->add_option("--trace", trace_path, "write per-epoch RMSE trace CSV here");
    train->add_option("--trace-units", trace_units,
                      "sinusoid unit indices whose frequency/amplitude go into the trace");
    TrainFlags train_flags;
    train_flags.attach(train);

    // ---- predict -------------------------------------------------------------
    auto* predict = app.add_subcommand("predict", "evaluate a trained model at timestamps");
    std::string predict_model, predict_out = "predictions.csv", predict_times;
    double predict_from = 0.0, predict_to = 1.0;
    long long predict_count = 100;
    predict->add_option("model", predict_model, "model file")->required();
    predict->add_option("-o,--output", predict_out, "output CSV")->capture_default_str();
    auto* opt_from = predict->add_option("--from", predict_from, "range start");
    predict->add_option("--to", predict_to, "range end");
    predict->add_option("--count", predict_count, "number of points")->capture_default_str();
    auto* opt_times =
        predict->add_option("--times", predict_times, "CSV whose first column gives timestamps");
    opt_times->excludes(opt_from);

    // ---- decompose -------------------------------------------------------------
    auto* decompose = app.add_subcommand(
        "decompose", "per-component contributions over a time grid (normalized model space)");
    std::string dec_model, dec_out = "components.csv";
    double dec_from = 0.0, dec_to = 1.0;
    long long dec_count = 100;
    decompose->add_option("model", dec_model, "model file")->required();
    decompose->add_option("-o,--output", dec_out, "output CSV")->capture_default_str();
    decompose->add_option("--from", dec_from, "range start (raw time)")->capture_default_str();
    decompose->add_option("--to", dec_to, "range end (raw time)")->capture_default_str();
    decompose->add_option("--count", dec_count, "number of grid points")->capture_default_str();

    // ---- evaluate -------------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "score predictions against actuals");
    std::string eval_actual, eval_predicted;
    bool eval_values_only = false;
    evaluate->add_option("--actual", eval_actual, "actuals CSV")->required();
    evaluate->add_option("--predicted", eval_predicted, "predictions CSV")->required();
    evaluate->add_flag("--values-only", eval_values_only, "inputs are single value columns");

    // ---- benchmark -------------------------------------------------------------
    auto* bench = app.add_subcommand("benchmark",
                                     "train/test protocol with baselines on a split series");
    std::string bench_input, bench_csv, bench_label;
    bool bench_values_only = false;
    long long bench_train = 0, bench_test = 0;
    std::vector<std::string> bench_baselines = {"idft", "persistence", "nd-no-aug"};
    bench->add_option("input", bench_input, "input CSV, or builtin: toy | mackey-glass")
        ->required();
    bench->add_option("--train", bench_train, "training sample count")->required();
    bench->add_option("--test", bench_test, "testing sample count")->required();
    bench->add_option("--baselines", bench_baselines,
                      "subset of: idft persistence nd-no-aug (default all)")
        ->check(CLI::IsMember({"idft", "persistence", "nd-no-aug"}));
    bench->add_option("--csv", bench_csv, "also write the report as CSV here");
    bench->add_option("--label", bench_label,
                      "dataset label for the published reference rows (labor, airline, ...)");
    bench->add_flag("--values-only", bench_values_only, "input CSV is a single value column");
    TrainFlags bench_flags;
    bench_flags.attach(bench);

    std::string config_path;
    for (CLI::App* sub : {gen, train, predict, decompose, evaluate, bench})
        sub->add_option("--config", config_path, "key=value config file; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // any usage problem exits 1, help exits 0
    }
    if (!config_path.empty()) apply_config_file(app.get_subcommands().front(), config_path);

    if (gen->parsed()) {
        if (gen_dataset == "toy") {
            if (gen_train < 1 || gen_test < 1) throw nd::ConfigError("toy counts must be >= 1");
            auto [train_set, test_set] = nd::gen_toy(static_cast<std::size_t>(gen_train),
                                                     static_cast<std::size_t>(gen_test));
            nd::write_csv(train_set, gen_train_out);
            nd::write_csv(test_set, gen_test_out);
            std::cout << "wrote " << gen_train_out << " (" << train_set.size() << " samples), "
                      << gen_test_out << " (" << test_set.size() << " samples)\n";
        } else if (gen_dataset == "mackey-glass") {
            if (gen_n < 2) throw nd::ConfigError("--n must be >= 2");
            auto series = nd::gen_mackey_glass(static_cast<std::size_t>(gen_n), mg);
            nd::write_csv(series, gen_out);
            std::cout << "wrote " << gen_out << " (" << series.size() << " samples)\n";
        }
        return 0;
    }

    if (train->parsed()) {
        nd::TrainConfig config = train_flags.resolve();
        config.snapshot_units = trace_units;
        auto series = load_series(train_input, train_values_only);
        auto [model, trace] = nd::fit_nd(series, config);
        model.save(train_output);
        if (!trace_path.empty()) nd::write_trace_csv(trace, trace_path);
        std::cout << "trained on " << series.size() << " samples for " << config.epochs
                  << " epochs; final training RMSE " << nd::format_double(trace.rmse.back())
                  << " (normalized units); model written to " << train_output << '\n';
        return 0;
    }

    if (predict->parsed()) {
        nd::NDModel model = nd::NDModel::load(predict_model);
        std::vector<double> times;
        if (!predict_times.empty()) {
            auto ts = load_series(predict_times, false);
            times = ts.times();
        } else {
            if (predict_count < 0) throw nd::ConfigError("--count must be >= 0");
            times = linspace(predict_from, predict_to, static_cast<std::size_t>(predict_count));
        }
        std::ofstream out(predict_out);
        if (!out) throw nd::IoError("cannot open " + predict_out + " for writing");
        out << "time,prediction\n";
        auto values = model.predict(times);
        for (std::size_t i = 0; i < times.size(); ++i)
            out << nd::format_double(times[i]) << ',' << nd::format_double(values[i]) << '\n';
        std::cout << "wrote " << predict_out << " (" << times.size() << " rows)\n";
        return 0;
    }

    if (decompose->parsed()) {
        nd::NDModel model = nd::NDModel::load(dec_model);
        if (dec_count < 0) throw nd::ConfigError("--count must be >= 0");
        auto times = linspace(dec_from, dec_to, static_cast<std::size_t>(dec_count));
        std::ofstream out(dec_out);
        if (!out) throw nd::IoError("cannot open " + dec_out + " for writing");
        out << "time,prediction";
        for (const auto& [label, contribution] : model.decompose(0.0)) out << ',' << label;
        out << '\n';
        for (double t : times) {
            const double tn = model.preprocess.normalize_time(t);
            out << nd::format_double(t) << ',' << nd::format_double(model.forward(tn));
            for (const auto& [label, contribution] : model.decompose(tn))
                out << ',' << nd::format_double(contribution);
            out << '\n';
        }
        std::cout << "wrote " << dec_out << " (" << times.size() << " rows, "
                  << model.unit_count() + 1 << " components)\n";
        return 0;
    }

    if (evaluate->parsed()) {
        auto actual = load_series(eval_actual, eval_values_only);
        auto predicted = load_series(eval_predicted, eval_values_only);
        if (actual.size() != predicted.size())
            throw nd::DataError("actual and predicted lengths differ");
        double m = std::nan("");
        bool has_zero = false;
        for (double a : actual.values()) has_zero = has_zero || a == 0.0;
        if (!has_zero) m = nd::mape(actual.values(), predicted.values());
        std::cout << "mape_percent," << nd::mape_percent_field(m) << "\nrmse,"
                  << nd::format_double(nd::rmse(actual.values(), predicted.values())) << '\n';
        return 0;
    }

    if (bench->parsed()) {
        nd::TrainConfig config = bench_flags.resolve();
        std::set<nd::Baseline> baselines;
        for (const std::string& b : bench_baselines) {
            if (b == "idft")
                baselines.insert(nd::Baseline::idft);
            else if (b == "persistence")
                baselines.insert(nd::Baseline::persistence);
            else
                baselines.insert(nd::Baseline::nd_no_aug);
        }
        if (bench_train < 2 || bench_test < 1)
            throw nd::ConfigError("need --train >= 2 and --test >= 1");

        nd::TimeSeries series = [&] {
            if (bench_input == "toy") {
                auto [train_set, test_set] = nd::gen_toy(static_cast<std::size_t>(bench_train),
                                                         static_cast<std::size_t>(bench_test));
                std::vector<double> t = train_set.times(), v = train_set.values();
                t.insert(t.end(), test_set.times().begin(), test_set.times().end());
                v.insert(v.end(), test_set.values().begin(), test_set.values().end());
                return nd::TimeSeries(std::move(t), std::move(v), "toy");
            }
            if (bench_input == "mackey-glass")
                return nd::gen_mackey_glass(
                    static_cast<std::size_t>(bench_train + bench_test), {});
            return load_series(bench_input, bench_values_only);
        }();

        nd::SplitSpec spec{static_cast<std::size_t>(bench_train),
                           static_cast<std::size_t>(bench_test)};
        auto result = nd::run_benchmark(series, spec, config, baselines);

        std::string label = bench_label.empty() ? series.name() : bench_label;
        nd::print_report_table(std::cout, result.reports, label);
        if (!bench_csv.empty()) nd::write_report_csv(result.reports, bench_csv);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nd::TrainingDivergedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const nd::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
