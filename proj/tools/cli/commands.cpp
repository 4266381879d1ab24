#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cli.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/json_io.hpp"

namespace qent::cli {

namespace fs = std::filesystem;

std::string format_nats(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.12f}", v);
  if (s.find_first_not_of("-0.") == std::string::npos) s = fmt::format("{:.12f}", 0.0);
  return s;
}

std::vector<double> sweep_grid(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::BadParam, "sweep step must be positive");
  if (!(from <= to)) throw Error(ErrorKind::BadParam, "sweep start exceeds stop");
  const auto intervals = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid.push_back(std::min(from + static_cast<double>(i) * step, to));
  return grid;
}

std::vector<SweepRow> compute_sweep(const std::string& family, const std::vector<double>& grid,
                                    const DensityOperator& rho0, const OptimizerConfig& cfg) {
  // Validate every grid point up front so a bad family or range fails before
  // any optimization starts.
  for (double p : grid) channel_zoo(family, std::span<const double>(&p, 1));
  OptimizerConfig inner = cfg;
  inner.execution = Execution::Serial;
  return parallel_map(
      grid.size(),
      [&](std::size_t i) {
        const double p = grid[i];
        const KrausChannel ch = channel_zoo(family, std::span<const double>(&p, 1));
        return SweepRow{p, info_q(rho0, ch).value, info_d(rho0, ch, inner).value, info_o(rho0, ch, inner).value};
      },
      cfg.execution);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,I_q,I_d,I_o\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", format_nats(r.param), format_nats(r.i_q), format_nats(r.i_d), format_nats(r.i_o));
  }
  return out;
}

namespace {

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::Parse ? kExitIo : kExitValidation; }

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Parse, "write failed for " + path.string());
}

io::json report_to_json(const InfoReport& r) {
  io::json j{{"kind", "info"}, {"info_kind", std::string(to_string(r.kind))}, {"value", r.value},
             {"iterations", r.iterations}, {"converged", r.converged}};
  if (r.input) j["input"] = io::density_to_json(*r.input);
  if (r.ensemble) j["ensemble"] = io::ensemble_to_json(*r.ensemble);
  if (r.compound) j["compound"] = io::compound_to_json(*r.compound);
  return j;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      dims.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParam, "bad --dims entry '" + item + "'");
    }
  }
  if (dims.empty()) throw Error(ErrorKind::BadParam, "--dims is empty");
  return dims;
}

struct Options {
  fs::path state, channel, compound, ensemble, output, dump, csv;
  std::string kind = "d";
  std::string construction;
  std::string family;
  std::string dims = "2,3";
  double from = 0.0, to = 1.0, step = 0.25;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t restarts = 8;
  std::size_t trials = 100;
};

OptimizerConfig config_from(const Options& o) {
  OptimizerConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.tol = o.tol;
  return cfg;
}

int cmd_entropy(const Options& o, std::ostream& out) {
  const DensityOperator rho = io::density_from_json(io::read_json_file(o.state));
  out << "S=" << format_nats(von_neumann(rho).nats) << " S_q=" << format_nats(q_entropy(rho).nats) << '\n';
  return kExitOk;
}

int cmd_compound(const Options& o, std::ostream& out) {
  auto ensemble = [&] {
    if (!o.ensemble.empty()) return io::ensemble_from_json(io::read_json_file(o.ensemble));
    if (o.state.empty()) throw Error(ErrorKind::BadParam, "compound d|o needs --ensemble or --state");
    return schatten_decompose(io::density_from_json(io::read_json_file(o.state)));
  };
  std::optional<CompoundState> w;
  if (o.construction == "standard") {
    if (o.state.empty()) throw Error(ErrorKind::BadParam, "compound standard needs --state");
    w = standard_compound(io::density_from_json(io::read_json_file(o.state)));
  } else if (o.construction == "d") {
    w = d_compound(ensemble());
  } else {
    w = o_compound(ensemble());
  }
  io::write_json_file(o.output, io::compound_to_json(*w));
  out << "wrote compound dim_g=" << w->dim_g() << " dim_h=" << w->dim_h() << " to " << o.output.string() << '\n';
  return kExitOk;
}

int cmd_mutual(const Options& o, std::ostream& out) {
  const CompoundState w = io::compound_from_json(io::read_json_file(o.compound));
  const auto [sigma, rho] = marginals(w);
  const ConditionalEntropies ce = conditional_and_disentanglement(w);
  out << "I=" << format_nats(mutual_entropy(w).nats) << " S_G=" << format_nats(von_neumann(sigma).nats)
      << " S_H=" << format_nats(von_neumann(rho).nats) << " S_omega=" << format_nats(von_neumann(w.omega()).nats)
      << " S_q_cond=" << format_nats(ce.q_conditional.nats) << " disentanglement=" << format_nats(ce.disentanglement.nats)
      << '\n';
  return kExitOk;
}

int cmd_channel_apply(const Options& o, std::ostream& out) {
  const KrausChannel ch = io::channel_from_json(io::read_json_file(o.channel));
  const DensityOperator rho = io::density_from_json(io::read_json_file(o.state));
  const DensityOperator result = apply_state(ch, rho);
  io::write_json_file(o.output, io::density_to_json(result));
  out << "wrote output state dim=" << result.dim() << " to " << o.output.string() << '\n';
  return kExitOk;
}

int cmd_info(const Options& o, std::ostream& out) {
  const DensityOperator rho = io::density_from_json(io::read_json_file(o.state));
  const KrausChannel ch = io::channel_from_json(io::read_json_file(o.channel));
  const InfoKind kind = parse_info_kind(o.kind);
  const InfoReport r = info(kind, rho, ch, config_from(o));
  out << "I_" << to_string(kind) << '=' << format_nats(r.value) << '\n';
  if (!o.dump.empty()) io::write_json_file(o.dump, report_to_json(r));
  return kExitOk;
}

int cmd_capacity(const Options& o, std::ostream& out) {
  const KrausChannel ch = io::channel_from_json(io::read_json_file(o.channel));
  const InfoKind kind = parse_info_kind(o.kind);
  const InfoReport r = capacity(ch, kind, config_from(o));
  out << "C_" << to_string(kind) << '=' << format_nats(r.value) << " converged=" << (r.converged ? "yes" : "no")
      << '\n';
  if (!o.dump.empty()) io::write_json_file(o.dump, report_to_json(r));
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const DensityOperator rho = io::density_from_json(io::read_json_file(o.state));
  const std::vector<double> grid = sweep_grid(o.from, o.to, o.step);
  const std::vector<SweepRow> rows = compute_sweep(o.family, grid, rho, config_from(o));
  write_text_file(o.csv, sweep_csv(rows));
  out << "wrote " << rows.size() << " rows to " << o.csv.string() << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyOptions vo;
  vo.dims = parse_dims(o.dims);
  vo.trials = o.trials;
  vo.seed = o.seed;
  if (!o.channel.empty()) vo.channel = o.channel;
  const VerifyReport report = run_verify(vo);
  if (report.vacuous) err << "warning: trials=0, no random instances checked (vacuous pass)\n";
  std::size_t failed_checks = 0;
  for (const auto& c : report.checks) {
    out << (c.failed == 0 ? "PASS " : "FAIL ") << c.name << ' ' << c.passed << '/' << (c.passed + c.failed) << '\n';
    if (c.failed > 0) {
      ++failed_checks;
      err << "  " << c.name << ": " << c.first_failure << '\n';
    }
  }
  out << "verify: " << report.checks.size() << " checks, " << failed_checks << " failed\n";
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  CLI::App app{"Compound states, entangled mutual entropy and channel capacities"};
  app.require_subcommand(1);
  Options o;

  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--restarts", o.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  };
  auto kind_check = CLI::IsMember({"q", "d", "o"});

  auto* entropy = app.add_subcommand("entropy", "von Neumann entropy and q-entropy of a state");
  entropy->add_option("--state", o.state, "state JSON")->required();

  auto* compound = app.add_subcommand("compound", "build a compound state");
  compound->add_option("construction", o.construction, "standard, d or o")
      ->required()
      ->check(CLI::IsMember({"standard", "d", "o"}));
  compound->add_option("--state", o.state, "state JSON");
  compound->add_option("--ensemble", o.ensemble, "ensemble JSON");
  compound->add_option("-o,--output", o.output, "output compound JSON")->required();

  auto* mutual = app.add_subcommand("mutual", "mutual entropy of a compound state");
  mutual->add_option("--compound", o.compound, "compound JSON")->required();

  auto* apply = app.add_subcommand("channel-apply", "apply a channel to a state");
  apply->add_option("--channel", o.channel, "channel JSON")->required();
  apply->add_option("--state", o.state, "state JSON")->required();
  apply->add_option("-o,--output", o.output, "output state JSON")->required();

  auto* info_cmd = app.add_subcommand("info", "I_q, I_d or I_o for a fixed input state");
  info_cmd->add_option("--state", o.state, "state JSON")->required();
  info_cmd->add_option("--channel", o.channel, "channel JSON")->required();
  info_cmd->add_option("--kind", o.kind, "q, d or o")->required()->check(kind_check);
  info_cmd->add_option("--dump", o.dump, "write the optimal decomposition as JSON");
  add_search(info_cmd);

  auto* cap = app.add_subcommand("capacity", "C_q, C_d or C_o of a channel");
  cap->add_option("--channel", o.channel, "channel JSON")->required();
  cap->add_option("--kind", o.kind, "q, d or o")->required()->check(kind_check);
  cap->add_option("--tol", o.tol, "optimizer convergence threshold")->check(CLI::PositiveNumber);
  cap->add_option("--dump", o.dump, "write the maximizing input as JSON");
  add_search(cap);

  auto* sweep = app.add_subcommand("sweep", "I_q, I_d, I_o across a channel family");
  sweep->add_option("--family", o.family, "depolarizing, amplitude_damping or phase_damping")->required();
  sweep->add_option("--from", o.from, "first parameter")->required();
  sweep->add_option("--to", o.to, "last parameter")->required();
  sweep->add_option("--step", o.step, "grid step")->required();
  sweep->add_option("--state", o.state, "input state JSON")->required();
  sweep->add_option("--out", o.csv, "output CSV")->required();
  add_search(sweep);

  auto* verify = app.add_subcommand("verify", "run the invariant suite on seeded random instances");
  verify->add_option("--dims", o.dims, "comma-separated dimensions from {2,3,4}");
  verify->add_option("--trials", o.trials, "random instances per dimension");
  verify->add_option("--seed", o.seed, "RNG seed");
  verify->add_option("--channel", o.channel, "extra channel JSON to validate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    if (entropy->parsed()) return cmd_entropy(o, out);
    if (compound->parsed()) return cmd_compound(o, out);
    if (mutual->parsed()) return cmd_mutual(o, out);
    if (apply->parsed()) return cmd_channel_apply(o, out);
    if (info_cmd->parsed()) return cmd_info(o, out);
    if (cap->parsed()) return cmd_capacity(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitValidation;
}

}  // namespace qent::cli
