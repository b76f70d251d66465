// matchmaker: command-line front end for the matchmaking pipeline.
//
//   matchmaker run-all --config data/fixture/config.json --out build/out
//   matchmaker seat --config cfg.json --tables 4 --capacity 6
//
// Exit status: 0 success, 1 input or validation error, 2 internal invariant violation.

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "matchmaker/pipeline.hpp"

namespace {

using matchmaker::Pipeline;
using Json = nlohmann::ordered_json;

struct Overrides {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, k, rounds, rooms, tables, capacity;

  matchmaker::PipelineConfig apply(matchmaker::PipelineConfig cfg) const {
    if (out) cfg.output_dir = *out;
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (k) cfg.per_attendee_k = *k;
    if (rounds) cfg.window.rounds = *rounds;
    if (rooms) cfg.window.rooms = *rooms;
    if (tables) cfg.tables = *tables;
    if (capacity) cfg.capacity = *capacity;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Research-event matchmaking: expert discovery, pair matching, seating and scheduling"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("-c,--config", o.config, "Pipeline config JSON")->required();
  app.add_option("-o,--out", o.out, "Output directory (overrides config output_dir)");
  app.add_option("--seed", o.seed, "PRNG seed");
  app.add_option("--trials", o.trials, "Random-pairing trials for the baseline");
  app.add_option("--k", o.k, "Matches kept per attendee");
  app.add_option("--rounds", o.rounds, "Meeting rounds in the event window");
  app.add_option("--rooms", o.rooms, "Meeting rooms per round");
  app.add_option("--tables", o.tables, "Number of tables");
  app.add_option("--capacity", o.capacity, "Seats per table");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest", "Load researchers and documents; write the collaboration graph"},
      {"discover", "Rank experts for the configured keyword spec and suggest related terms"},
      {"match", "Score all attendee pairs; write match and per-attendee ranking reports"},
      {"seat", "Optimize the table seating chart"},
      {"schedule", "Build the rounds x rooms meeting schedule"},
      {"export-graph", "Write the shared-interest network diagram (DOT)"},
      {"baseline", "Compare the matching against random pairings"},
      {"run-all", "Run every stage and write summary.json"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Pipeline pipeline(o.apply(matchmaker::run_stage("config", [&] { return matchmaker::load_config(o.config); })));
    const std::map<std::string, std::function<Json()>> stages = {
        {"ingest", [&] { return pipeline.ingest(); }},
        {"discover", [&] { return pipeline.discover(); }},
        {"match", [&] { return pipeline.match(); }},
        {"seat", [&] { return pipeline.seat(); }},
        {"schedule", [&] { return pipeline.schedule(); }},
        {"export-graph", [&] { return pipeline.export_graph(); }},
        {"baseline", [&] { return pipeline.baseline(); }},
        {"run-all", [&] { return pipeline.run_all(); }},
    };
    std::cout << stages.at(command)().dump(2) << "\n";
  } catch (const matchmaker::InputError& e) {
    std::cerr << "matchmaker " << command << ": error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "matchmaker " << command << ": internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
