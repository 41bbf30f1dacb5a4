#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "blocktrain/errors.hpp"
#include "blocktrain/ledger_file.hpp"
#include "blocktrain/report.hpp"
#include "blocktrain/serialize.hpp"
#include "blocktrain/service/ledger_report.hpp"
#include "blocktrain/service/logging.hpp"
#include "blocktrain/service/server.hpp"
#include "blocktrain/service/session_manager.hpp"

namespace bt = blocktrain;
namespace svc = blocktrain::service;
namespace net = boost::asio;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitError = 2;

std::string describe(const bt::VerifyResult& r) {
  if (r.valid) return "Valid";
  return "Invalid at block " + std::to_string(r.first_bad_index) + " (" +
         std::string(bt::to_string(r.reason)) + ")";
}

net::ip::tcp::endpoint parse_addr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--addr", "expected HOST:PORT");
  const std::string host = addr.substr(0, colon);
  const int port = std::stoi(addr.substr(colon + 1));
  if (port < 0 || port > 65535) throw CLI::ValidationError("--addr", "port out of range");
  return {net::ip::make_address(host), static_cast<unsigned short>(port)};
}

struct ServeArgs {
  std::string addr = "127.0.0.1:8080";
  std::string ledger;
  std::string journal;
  double disconnect_timeout = 30;
};

int serve(const ServeArgs& args) {
  svc::ManagerOptions options;
  options.ledger = args.ledger;
  options.disconnect_timeout =
      std::chrono::milliseconds(static_cast<std::int64_t>(args.disconnect_timeout * 1000));
  std::unique_ptr<svc::SessionManager> manager;
  if (!args.journal.empty()) {
    options.journal = args.journal;
    manager = svc::SessionManager::recover(std::move(options));
  } else {
    manager = std::make_unique<svc::SessionManager>(std::move(options));
  }

  net::io_context ioc(1);
  svc::Server server(ioc, parse_addr(args.addr), *manager);
  server.start();
  net::signal_set signals(ioc, SIGINT, SIGTERM);
  signals.async_wait([&](const boost::system::error_code&, int sig) {
    spdlog::info("signal {}, shutting down", sig);
    ioc.stop();
  });
  std::cout << "listening on port " << server.port() << std::endl;
  ioc.run();
  return 0;
}

struct SimArgs {
  std::string config;
  std::size_t episodes = 1000;
  std::uint64_t seed = 0;
  std::string report;
  std::string csv;
  double seconds_per_turn = 20;
  std::size_t threads = 1;
  std::string policy = "uniform";
};

int sim(const SimArgs& args) {
  bt::GameConfig config = bt::GameConfig::standard();
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw std::runtime_error("cannot read " + args.config);
    try {
      config = nlohmann::json::parse(in).get<bt::GameConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw bt::Error(bt::ErrorCode::ConfigInvalid, e.what());
    }
  }
  bt::validate_config(config);
  const bt::Policy policy =
      args.policy == "first" ? bt::Policy::first_legal() : bt::Policy::uniform_random();

  const auto episodes =
      bt::run_episodes(config, policy, args.episodes, args.seed, args.threads);
  const auto report = bt::sim_report(config, policy, args.seed, episodes, args.seconds_per_turn);

  if (!args.report.empty()) {
    std::ofstream(args.report) << report.dump(2) << '\n';
  }
  if (!args.csv.empty()) {
    std::ofstream(args.csv) << bt::episodes_csv(episodes);
  }

  const auto& total = report["total_turns"];
  const auto& duration = report["duration"];
  std::cout << "episodes            " << report["episodes"] << '\n'
            << "total turns         mean " << total["mean"].get<double>() << ", sd "
            << total["stddev"].get<double>() << ", range " << total["min"] << ".."
            << total["max"] << '\n'
            << "estimate            " << duration["estimated_minutes"].get<double>()
            << " min at " << args.seconds_per_turn << " s/turn\n"
            << "band (15-25 s/turn) " << duration["band"]["minutes"][0].get<double>() << " - "
            << duration["band"]["minutes"][1].get<double>() << " min\n"
            << "reference           ~" << bt::kReferenceSessionMinutes
            << " min for one in-person session\n";
  return 0;
}

int verify(const std::string& ledger) {
  const auto report = svc::persist_and_verify(ledger);
  for (const auto& r : report) {
    std::cout << "chain " << r.chain << " (" << r.blocks << " blocks): " << describe(r.result)
              << '\n';
  }
  const bool ok = svc::all_valid(report);
  std::cout << (ok ? "Valid" : "Invalid") << ": " << report.size() << " chain(s)\n";
  return ok ? 0 : kExitInvalid;
}

struct TamperArgs {
  std::string ledger;
  std::size_t chain = 0;
  std::size_t block = 0;
  std::string field;
  std::string out;
};

int tamper_demo(const TamperArgs& args) {
  const auto field = bt::block_field_from_string(args.field);
  if (!field) {
    std::string names;
    for (auto f : bt::kAllBlockFields) names += " " + std::string(bt::to_string(f));
    throw CLI::ValidationError("--field", "unknown field; one of:" + names);
  }
  auto chains = bt::load_ledger(args.ledger);
  if (args.chain >= chains.size()) {
    throw bt::Error(bt::ErrorCode::IndexOutOfRange,
                    "ledger holds " + std::to_string(chains.size()) + " chain(s)");
  }
  const bt::Chain& original = chains[args.chain];
  if (args.block >= original.blocks.size()) {
    throw bt::Error(bt::ErrorCode::IndexOutOfRange,
                    "chain holds " + std::to_string(original.blocks.size()) + " block(s)");
  }
  const auto mutation = bt::default_mutation(original.blocks[args.block], *field);
  const bt::Chain edited = bt::tamper(original, args.block, mutation);

  std::cout << "before: " << bt::ledger_line(original.blocks[args.block]) << '\n'
            << "after:  " << bt::ledger_line(edited.blocks[args.block]) << '\n'
            << "original chain: " << describe(bt::verify_chain(original)) << '\n'
            << "tampered chain: " << describe(bt::verify_chain(edited)) << '\n';
  if (!args.out.empty()) {
    chains[args.chain] = edited;
    bt::write_ledger(args.out, chains);
    std::cout << "wrote " << args.out << '\n';
  }
  return bt::verify_chain(edited).valid ? kExitInvalid : 0;
}

}  // namespace

int main(int argc, char** argv) {
  svc::init_logging();

  CLI::App app{"blocktrain: rules engine, simulator, ledger tools and game server"};
  app.require_subcommand(1);

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "run the multiplayer server");
  serve_cmd->add_option("--addr", serve_args.addr, "HOST:PORT to listen on")->capture_default_str();
  serve_cmd->add_option("--ledger", serve_args.ledger, "ledger_v1 file finished chains go to")
      ->required();
  serve_cmd->add_option("--journal", serve_args.journal,
                        "action log; replayed on start to recover sessions");
  serve_cmd->add_option("--disconnect-timeout", serve_args.disconnect_timeout,
                        "seconds a disconnected seat's turn is held")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  SimArgs sim_args;
  auto* sim_cmd = app.add_subcommand("sim", "Monte Carlo run with a bot policy");
  sim_cmd->add_option("--config", sim_args.config, "GameConfig JSON file (defaults if omitted)")
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--episodes", sim_args.episodes)->capture_default_str()->check(
      CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_args.seed)->capture_default_str();
  sim_cmd->add_option("--report", sim_args.report, "write a simreport_v1 JSON file");
  sim_cmd->add_option("--csv", sim_args.csv, "write per-episode rows");
  sim_cmd->add_option("--seconds-per-turn", sim_args.seconds_per_turn)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim_args.threads)->capture_default_str()->check(
      CLI::PositiveNumber);
  sim_cmd->add_option("--policy", sim_args.policy)
      ->capture_default_str()
      ->check(CLI::IsMember({"uniform", "first"}));

  std::string verify_ledger;
  auto* verify_cmd = app.add_subcommand("verify", "check every chain in a ledger file");
  verify_cmd->add_option("--ledger", verify_ledger)->required();

  TamperArgs tamper_args;
  auto* tamper_cmd =
      app.add_subcommand("tamper-demo", "edit one block field and show that verify catches it");
  tamper_cmd->add_option("--ledger", tamper_args.ledger)->required()->check(CLI::ExistingFile);
  tamper_cmd->add_option("--chain", tamper_args.chain)->required();
  tamper_cmd->add_option("--block", tamper_args.block)->required();
  tamper_cmd->add_option("--field", tamper_args.field)->required();
  tamper_cmd->add_option("--out", tamper_args.out, "also write the edited ledger here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return serve(serve_args);
    if (*sim_cmd) return sim(sim_args);
    if (*verify_cmd) return verify(verify_ledger);
    if (*tamper_cmd) return tamper_demo(tamper_args);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
