// Command-line front end: every verification, simulation, and estimation
// workflow with reproducible seeds and machine-readable output.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ecdl/dlp_sim.hpp"
#include "ecdl/ec_group.hpp"
#include "ecdl/euclid_machine.hpp"
#include "ecdl/euclid_stats.hpp"
#include "ecdl/group_shift.hpp"
#include "ecdl/resource_model.hpp"
#include "ecdl/serialize.hpp"

using nlohmann::json;
using namespace ecdl;

namespace {

constexpr const char* kVersion = "0.1.0";

struct OutputSink {
  std::string path;  // empty = stdout
  std::ostringstream buffer;

  template <typename T>
  OutputSink& operator<<(const T& v) {
    buffer << v;
    return *this;
  }

  void flush() {
    if (path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream f(path, std::ios::binary);
      f << buffer.str();
    }
  }
};

json make_manifest(const std::string& subcommand, const json& params, std::uint64_t seed) {
  return json{{"tool", "ecdl"},
              {"version", kVersion},
              {"subcommand", subcommand},
              {"params", params},
              {"seed", seed}};
}

void emit_json(OutputSink& sink, const json& manifest, const json& result) {
  json out{{"manifest", manifest}, {"result", result}};
  sink << out.dump(2) << "\n";
}

std::string csv_manifest_line(const json& manifest) {
  return "# manifest: " + manifest.dump() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversible elliptic-curve discrete-log machinery: simulation and cost accounting"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
  app.add_option("--seed", seed, "64-bit seed for all randomness")->capture_default_str();
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // inverse
  auto* cmd_inverse = app.add_subcommand("inverse", "run the reversible Euclid machine");
  std::string arg_p, arg_x;
  bool flag_sharing = false, flag_no_sharing = false, flag_trace = false;
  cmd_inverse->add_option("--p", arg_p, "modulus (prime)")->required();
  cmd_inverse->add_option("--x", arg_x, "value to invert, 0 < x < p")->required();
  cmd_inverse->add_flag("--sharing", flag_sharing, "enable register sharing");
  cmd_inverse->add_flag("--no-sharing", flag_no_sharing, "disable register sharing (default)");
  cmd_inverse->add_flag("--trace", flag_trace, "append the per-step CSV trace");

  // verify-bound
  auto* cmd_bound = app.add_subcommand("verify-bound", "exhaustively check the cycle bound");
  std::uint64_t arg_pmax = 10000;
  cmd_bound->add_option("--pmax", arg_pmax, "largest modulus to check")->capture_default_str();

  // stats
  auto* cmd_stats = app.add_subcommand("stats", "Monte Carlo Euclid statistics");
  std::string arg_kind;
  unsigned arg_n = 110;
  std::uint64_t arg_trials = 100000;
  cmd_stats->add_option("--kind", arg_kind, "perturbation | quotients | cycles")
      ->required()
      ->check(CLI::IsMember({"perturbation", "quotients", "cycles"}));
  cmd_stats->add_option("--n", arg_n, "prime bit size")->capture_default_str();
  cmd_stats->add_option("--trials", arg_trials, "trial count (min samples for quotients)")
      ->capture_default_str();

  // success
  auto* cmd_success = app.add_subcommand("success", "exact single-run success probability");
  std::uint64_t arg_q = 1009, arg_d_val = 1;
  unsigned arg_nbits = 12, arg_window = 3;
  cmd_success->add_option("--q", arg_q, "group order")->required();
  cmd_success->add_option("--d", arg_d_val, "discrete log used for the acceptance region")
      ->capture_default_str();
  cmd_success->add_option("--n", arg_nbits, "Fourier register bits")->required();
  cmd_success->add_option("--window", arg_window, "post-processing search window")
      ->capture_default_str();

  // simulate
  auto* cmd_sim = app.add_subcommand("simulate", "sample end-to-end DLP measurement records");
  unsigned arg_qbits = 10;
  unsigned arg_sim_n = 0;
  unsigned arg_sim_window = 3;
  std::uint64_t arg_runs = 1000;
  std::string arg_mode = "analytic";
  bool arg_loss = false;
  std::uint64_t arg_instance_seed = 0;
  cmd_sim->add_option("--qbits", arg_qbits, "bit size of the prime point order")
      ->capture_default_str();
  cmd_sim->add_option("--n", arg_sim_n, "Fourier bits (default ceil(log2 q)+2)");
  cmd_sim->add_option("--window", arg_sim_window, "post-processing window")->capture_default_str();
  cmd_sim->add_option("--runs", arg_runs, "number of records")->capture_default_str();
  cmd_sim->add_option("--mode", arg_mode, "analytic | semiclassical")
      ->check(CLI::IsMember({"analytic", "semiclassical"}))
      ->capture_default_str();
  cmd_sim->add_flag("--loss", arg_loss, "enable the fidelity-loss model (semiclassical)");
  cmd_sim->add_option("--instance-seed", arg_instance_seed,
                      "separate seed for the toy instance (default: derived)");

  // estimate
  auto* cmd_est = app.add_subcommand("estimate", "closed-form qubit and time estimates");
  unsigned arg_est_n = 163;
  bool arg_est_sharing = false;
  double arg_eps = 10;
  cmd_est->add_option("--n", arg_est_n, "key bits")->required();
  cmd_est->add_flag("--sharing", arg_est_sharing, "use register sharing");
  cmd_est->add_option("--eps", arg_eps, "small-constant qubit allowance")->capture_default_str();

  // table
  auto* cmd_table = app.add_subcommand("table", "RSA vs ECC comparison table");

  // instance
  auto* cmd_inst = app.add_subcommand("instance", "derive a toy DLP instance");
  unsigned arg_inst_qbits = 10;
  cmd_inst->add_option("--qbits", arg_inst_qbits, "bit size of the prime point order")
      ->capture_default_str();

  for (CLI::App* sc : {cmd_inverse, cmd_bound, cmd_stats, cmd_success, cmd_sim, cmd_est,
                       cmd_table, cmd_inst})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  OutputSink sink;
  sink.path = out_path;

  try {
    if (*cmd_inverse) {
      Int p = from_dec(arg_p), x = from_dec(arg_x);
      MachineConfig cfg;
      cfg.sharing = flag_sharing && !flag_no_sharing;
      cfg.record_trace = flag_trace;
      InverseResult res = run_inverse(x, p, cfg);
      json params{{"p", arg_p}, {"x", arg_x}, {"sharing", cfg.sharing}, {"trace", flag_trace}};
      emit_json(sink, make_manifest("inverse", params, seed), inverse_result_to_json(res, p, x));
      if (flag_trace) {
        sink << "step,cycle,slot,c,f,registers_hex,ledger_units\n";
        for (const TraceRow& row : res.trace) {
          sink << row.step << "," << row.cycle << "," << row.slot << "," << row.c << "," << row.f
               << ",\"" << row.registers_hex << "\"," << row.ledger_units << "\n";
        }
      }
    } else if (*cmd_bound) {
      BoundReport rep = verify_bound(arg_pmax);
      json params{{"pmax", arg_pmax}};
      json result{{"pairs_checked", rep.pairs_checked}, {"violations", rep.violations},
                  {"max_ratio", rep.max_ratio},         {"argmax_p", rep.argmax_p},
                  {"argmax_x", rep.argmax_x},           {"argmax_t", rep.argmax_t}};
      emit_json(sink, make_manifest("verify-bound", params, seed), result);
      std::cerr << rep.violations << " violations, max ratio " << rep.max_ratio << " at ("
                << rep.argmax_p << "," << rep.argmax_x << ")\n";
    } else if (*cmd_stats) {
      json params{{"kind", arg_kind}, {"n", arg_n}, {"trials", arg_trials}};
      json manifest = make_manifest("stats", params, seed);
      if (format == "csv") sink << csv_manifest_line(manifest);
      if (arg_kind == "perturbation") {
        PerturbationStats st = perturbation_stats(arg_n, arg_trials, seed);
        if (format == "csv") {
          sink << "n,trials,seed,mean,stddev,max\n"
               << st.n << "," << st.trials << "," << seed << "," << st.mean << "," << st.std_dev
               << "," << st.max << "\n";
        } else {
          emit_json(sink, manifest,
                    json{{"n", st.n},
                         {"trials", st.trials},
                         {"primes", st.primes},
                         {"group_size", st.group_size},
                         {"mean", st.mean},
                         {"stddev", st.std_dev},
                         {"max", st.max}});
        }
      } else if (arg_kind == "cycles") {
        CycleStats st = average_cycles(arg_n, arg_trials, seed);
        if (format == "csv") {
          sink << "n,trials,seed,mean,stddev,model_3_5n,model_lq\n"
               << st.n << "," << st.trials << "," << seed << "," << st.mean << "," << st.std_dev
               << "," << st.model_3_5n << "," << st.model_lq << "\n";
        } else {
          emit_json(sink, manifest,
                    json{{"n", st.n},
                         {"trials", st.trials},
                         {"mean", st.mean},
                         {"stddev", st.std_dev},
                         {"model_3_5n", st.model_3_5n},
                         {"model_lq", st.model_lq}});
        }
      } else {
        QuotientStats st = quotient_distribution(arg_n, arg_trials, seed);
        if (format == "csv") {
          sink << "q0,tail_empirical,tail_model\n";
          for (unsigned q0 = 1; q0 <= 64; ++q0)
            sink << q0 << "," << st.tail_empirical[q0] << "," << st.tail_model[q0] << "\n";
        } else {
          json tails = json::array();
          for (unsigned q0 = 1; q0 <= 64; ++q0)
            tails.push_back(json{{"q0", q0},
                                 {"empirical", st.tail_empirical[q0]},
                                 {"model", st.tail_model[q0]}});
          emit_json(sink, manifest,
                    json{{"n", st.n},
                         {"total_quotients", st.total_quotients},
                         {"tails", tails},
                         {"cap_bits", st.cap_bits},
                         {"cap_rate_empirical", st.cap_rate_empirical},
                         {"cap_rate_model", st.cap_rate_model}});
        }
      }
    } else if (*cmd_success) {
      SuccessProbability sp = success_probability(arg_q, arg_d_val, arg_nbits, arg_window);
      json params{{"q", arg_q}, {"d", arg_d_val}, {"n", arg_nbits}, {"window", arg_window}};
      emit_json(sink, make_manifest("success", params, seed),
                json{{"probability", sp.probability}, {"truncation_bound", sp.truncation_bound}});
    } else if (*cmd_sim) {
      std::uint64_t inst_seed = arg_instance_seed ? arg_instance_seed : seed ^ 0xD1Full;
      DlpInstance inst = find_toy_instance(arg_qbits, inst_seed);
      unsigned n_bits = arg_sim_n ? arg_sim_n : bit_length(inst.q) + 2;
      json params{{"qbits", arg_qbits},  {"n", n_bits},
                  {"window", arg_sim_window}, {"runs", arg_runs},
                  {"mode", arg_mode},     {"loss", arg_loss},
                  {"instance_seed", inst_seed}};
      json manifest = make_manifest("simulate", params, seed);
      sink << json{{"manifest", manifest}, {"instance", instance_to_json(inst)}}.dump() << "\n";
      Rng root(seed);
      std::uint64_t succ = 0;
      AnalyticSampler sampler(inst, n_bits);
      for (std::uint64_t run = 0; run < arg_runs; ++run) {
        Rng rng = root.split(0x73696Dull, run);
        MeasurementRecord rec;
        double deficit = 0;
        if (arg_mode == "analytic") {
          rec = sampler.sample(rng);
        } else {
          auto sr = simulate_semiclassical(inst, n_bits, rng, arg_loss);
          rec = sr.record;
          deficit = sr.norm_deficit;
        }
        rec.recovered_d = postprocess(rec, inst, n_bits, arg_sim_window);
        rec.window_used = arg_sim_window;
        if (rec.recovered_d) ++succ;
        json line = record_to_json(rec, arg_sim_window, n_bits, inst.q, seed);
        if (arg_mode == "semiclassical") line["norm_deficit"] = deficit;
        sink << line.dump() << "\n";
      }
      std::cerr << "recovered d in " << succ << "/" << arg_runs << " runs\n";
    } else if (*cmd_est) {
      TimeEstimate te = time_estimate(arg_est_n, arg_est_sharing);
      QubitEstimate qe = qubit_estimate(arg_est_n, arg_est_sharing, arg_eps);
      json params{{"n", arg_est_n}, {"sharing", arg_est_sharing}, {"eps", arg_eps}};
      emit_json(sink, make_manifest("estimate", params, seed),
                json{{"time",
                      {{"nbit_additions_exact", te.nbit_additions_exact},
                       {"nbit_additions_rounded", te.nbit_additions_rounded},
                       {"one_qubit_additions_exact", te.one_qubit_additions_exact},
                       {"one_qubit_additions_rounded", te.one_qubit_additions_rounded}}},
                     {"qubits",
                      {{"total", qe.total},
                       {"point_registers", qe.point_registers},
                       {"euclid_pairs", qe.euclid_pairs},
                       {"carry", qe.carry},
                       {"quotient_and_index", qe.quotient_and_index},
                       {"misc", qe.misc}}}});
    } else if (*cmd_table) {
      auto rows = comparison_table();
      json manifest = make_manifest("table", json::object(), seed);
      if (format == "csv") {
        sink << csv_manifest_line(manifest);
        sink << "rsa_n,rsa_qubits,rsa_time,ecc_n,ecc_qubits_sharing,ecc_qubits_plain,ecc_time,"
                "classical_effort\n";
        for (const auto& r : rows) {
          sink << r.rsa_n << "," << r.rsa_qubits_printed << "," << r.rsa_time_printed << ","
               << r.ecc_n << "," << r.ecc_qubits_sharing_printed << ","
               << r.ecc_qubits_plain_printed << "," << r.ecc_time_printed << ","
               << r.classical_effort << "\n";
        }
      } else {
        json jrows = json::array();
        for (const auto& r : rows) {
          jrows.push_back(json{{"rsa_n", r.rsa_n},
                               {"rsa_qubits", r.rsa_qubits_printed},
                               {"rsa_time", r.rsa_time_printed},
                               {"ecc_n", r.ecc_n},
                               {"ecc_qubits_sharing", r.ecc_qubits_sharing_printed},
                               {"ecc_qubits_plain", r.ecc_qubits_plain_printed},
                               {"ecc_time", r.ecc_time_printed},
                               {"classical_effort", r.classical_effort},
                               {"computed",
                                {{"rsa_time", r.rsa_time_computed},
                                 {"ecc_qubits_sharing", r.ecc_qubits_sharing_computed},
                                 {"ecc_qubits_plain", r.ecc_qubits_plain_computed},
                                 {"ecc_time", r.ecc_time_computed}}}});
        }
        emit_json(sink, manifest, jrows);
      }
    } else if (*cmd_inst) {
      DlpInstance inst = find_toy_instance(arg_inst_qbits, seed);
      json params{{"qbits", arg_inst_qbits}};
      emit_json(sink, make_manifest("instance", params, seed), instance_to_json(inst));
    }
  } catch (const simulation_fault& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return 3;
  } catch (const irreversible_fault& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  sink.flush();
  return 0;
}
