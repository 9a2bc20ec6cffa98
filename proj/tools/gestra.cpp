#include "gestra/blend.hpp"
#include "gestra/export.hpp"
#include "gestra/inventory.hpp"
#include "gestra/phoneme_parser.hpp"
#include "gestra/score_builder.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// Exit codes shared by all subcommands.
constexpr int kExitParse = 2;      // utterance parse error / missing input file
constexpr int kExitInventory = 3;  // inventory unreadable or inconsistent
constexpr int kExitStructure = 4;  // syllable-structure violation
constexpr int kExitScoreFile = 5;  // score file invalid

std::string default_inventory_path() {
    if (const char* env = std::getenv("GESTRA_INVENTORY")) return env;
    return "data/german.inv";
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

gestra::Inventory load_inventory_or_exit(const std::string& path) {
    try {
        return gestra::load_inventory_file(path);
    } catch (const std::exception& e) {
        std::cerr << "inventory error: " << e.what() << "\n";
        std::exit(kExitInventory);
    }
}

int cmd_score(const std::string& utterance, const std::string& inventory_path,
              const std::string& syllabary_path, const std::string& route,
              const std::string& out_path) {
    const gestra::Inventory inv = load_inventory_or_exit(inventory_path);

    gestra::Utterance parsed;
    try {
        parsed = gestra::parse_utterance(utterance, inv);
    } catch (const gestra::UnknownSymbolError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const gestra::StructureError& e) {
        std::cerr << "structure error: " << e.what() << "\n";
        return kExitStructure;
    }

    gestra::Syllabary syllabary;
    const gestra::Syllabary* syl = nullptr;
    if (route == "lexicon") {
        if (!syllabary_path.empty()) {
            try {
                syllabary = gestra::load_syllabary_file(syllabary_path, inv);
            } catch (const std::exception& e) {
                std::cerr << "syllabary error: " << e.what() << "\n";
                return kExitInventory;
            }
        }
        syl = &syllabary;
    }

    const gestra::GestureScore score =
        gestra::build_score_pipeline(parsed, inv, syl);
    const auto violations = gestra::validate_score(score);
    std::size_t gesture_count = 0;
    for (gestra::TierId t : gestra::kAllTiers) gesture_count += score.tier(t).size();
    std::cerr << "score '" << score.label << "': " << gesture_count
              << " gestures, window [" << score.window.begin_ms << ", "
              << score.window.end_ms << "] ms, " << violations.size()
              << " violation(s)\n";
    for (const auto& v : violations) {
        std::cerr << "  " << gestra::to_string(v.tier) << "[" << v.instance_index
                  << "] " << v.rule << ": " << v.message << "\n";
    }
    write_output(out_path, gestra::write_score_json(score));
    return violations.empty() ? 0 : kExitStructure;
}

int load_score(const std::string& path, bool missing_is_parse_error,
               gestra::GestureScore& score) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return missing_is_parse_error ? kExitParse : kExitScoreFile;
    }
    try {
        score = gestra::read_score_json(text);
    } catch (const std::exception& e) {
        std::cerr << "invalid score file: " << e.what() << "\n";
        return kExitScoreFile;
    }
    const auto violations = gestra::validate_score(score);
    if (!violations.empty()) {
        std::cerr << "invalid score file: " << violations.front().message << "\n";
        return kExitScoreFile;
    }
    return 0;
}

int cmd_traj(const std::string& score_path, double dt, const std::string& out_path) {
    gestra::GestureScore score;
    if (int rc = load_score(score_path, false, score)) return rc;
    const auto ts = gestra::sample_trajectories(
        score, dt, gestra::NeutralConfig::default_config());
    write_output(out_path, gestra::write_traj_csv(ts));
    return 0;
}

int cmd_plot(const std::string& score_path, double dt, const std::string& out_path) {
    gestra::GestureScore score;
    if (int rc = load_score(score_path, true, score)) return rc;
    const auto ts = gestra::sample_trajectories(
        score, dt, gestra::NeutralConfig::default_config());
    write_output(out_path, gestra::render_plot(score, ts));
    return 0;
}

int cmd_inventory(const std::string& inventory_path, const std::string& action) {
    const gestra::Inventory inv = load_inventory_or_exit(inventory_path);
    if (action == "list") {
        std::cout << "gesture specs (" << inv.specs.size() << "):\n";
        for (const auto& [name, spec] : inv.specs) {
            std::cout << "  " << name << "  [" << gestra::to_string(spec.tier)
                      << "]  duration " << spec.mean_duration_ms << " ms, rapidity "
                      << spec.rapidity << "\n";
        }
        std::cout << "phonemes (" << inv.phoneme_map.size() << "):\n";
        for (const auto& [symbol, names] : inv.phoneme_map) {
            std::cout << "  /" << symbol << "/ ->";
            for (const auto& n : names) std::cout << " \"" << n << "\"";
            std::cout << "\n";
        }
    } else {
        std::cout << "inventory OK: " << inv.specs.size() << " specs, "
                  << inv.phoneme_map.size() << " phonemes\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gesture-score and articulatory trajectory generator"};
    app.require_subcommand(1);

    std::string inventory_path = default_inventory_path();
    std::string syllabary_path;
    std::string route = "rule";
    std::string out_path;
    std::string utterance;
    std::string score_path;
    std::string action = "check";
    double dt = 5.0;

    auto* score_cmd = app.add_subcommand("score", "Build a gesture score from a SAMPA utterance");
    score_cmd->add_option("utterance", utterance, "SAMPA syllables, '.'-separated")->required();
    score_cmd->add_option("--inventory", inventory_path, "Inventory file");
    score_cmd->add_option("--syllabary", syllabary_path, "Syllabary file (lexicon route)");
    score_cmd->add_option("--route", route, "Score construction route")
        ->check(CLI::IsMember({"rule", "lexicon"}));
    score_cmd->add_option("--out", out_path, "Output .score.json path (default stdout)");

    auto* traj_cmd = app.add_subcommand("traj", "Sample trajectories from a score file");
    traj_cmd->add_option("score", score_path, "Input .score.json")->required();
    traj_cmd->add_option("--dt", dt, "Sample step in ms")->check(CLI::PositiveNumber);
    traj_cmd->add_option("--out", out_path, "Output .traj.csv path (default stdout)");

    auto* plot_cmd = app.add_subcommand("plot", "Render a score + trajectories as SVG");
    plot_cmd->add_option("score", score_path, "Input .score.json")->required();
    plot_cmd->add_option("--dt", dt, "Sample step in ms")->check(CLI::PositiveNumber);
    plot_cmd->add_option("--out", out_path, "Output .svg path (default stdout)");

    auto* inv_cmd = app.add_subcommand("inventory", "Inspect or validate an inventory");
    inv_cmd->add_option("action", action, "list or check")
        ->check(CLI::IsMember({"list", "check"}));
    inv_cmd->add_option("--inventory", inventory_path, "Inventory file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (score_cmd->parsed()) {
            return cmd_score(utterance, inventory_path, syllabary_path, route, out_path);
        }
        if (traj_cmd->parsed()) return cmd_traj(score_path, dt, out_path);
        if (plot_cmd->parsed()) return cmd_plot(score_path, dt, out_path);
        if (inv_cmd->parsed()) return cmd_inventory(inventory_path, action);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
