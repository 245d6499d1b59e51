#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>

#include "bellq/detection.hpp"
#include "bellq/error.hpp"
#include "bellq/montecarlo.hpp"
#include "bellq/phase_space.hpp"
#include "bellq/state_io.hpp"

namespace bellq::cli {

namespace {

using nlohmann::json;

constexpr double kEquivalenceTol = 1e-9;
constexpr double kBoundaryBand = 1e-9;

json point_json(const PhaseIndex& p) { return json::array({p.k, p.l}); }

json points_json(const std::vector<PhaseIndex>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return arr;
}

// Exceptions from parsing or invariant checks are usage errors (exit 2);
// anything else is an internal numerical failure (exit 1).
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NotHermitian || e.code() == ErrorCode::NonFinite ? kFailure
                                                                                   : kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kFailure;
  }
}

struct Violation {
  std::string check;
  std::vector<double> c;
  double detail = 0.0;
};

}  // namespace

int cmd_classify(const std::string& path, bool oracle, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StateFile state = load_state_file(path);
    const CoefficientMatrix& c = state.coefficients;
    const ClassificationRecord rec = classify(c);
    json j = record_to_json(rec, &c);
    if (state.label) j["input_label"] = *state.label;
    if (oracle) {
      const double tn = realignment_oracle(c);
      const PptOracleResult ppt = ppt_oracle(c);
      j["oracle_realignment_trace_norm"] = round12(tn);
      j["oracle_ppt_min_eigenvalue"] = round12(ppt.min_eigenvalue);
      j["oracle_is_npt"] = ppt.is_npt;
      const bool realign_ok =
          std::abs(static_cast<double>(c.dim()) * tn - rec.realignment_value) < kEquivalenceTol;
      j["agreement"] = realign_ok && (ppt.is_npt == !rec.is_ppt);
    }
    out << j.dump(2) << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (opts.format != "json" && opts.format != "csv") {
      err << "error: --format must be json or csv\n";
      return kUsage;
    }
    SamplerConfig cfg{opts.d, opts.n, opts.seed, std::nullopt};
    err << "seed: " << opts.seed << "\n";

    if (opts.zero_coset) {
      if (opts.d != 3) {
        err << "error: --zero-coset is only supported for d = 3\n";
        return kUsage;
      }
      const auto cosets = all_cosets(opts.d);
      if (*opts.zero_coset >= cosets.size()) {
        err << "error: --zero-coset must be in [0, " << cosets.size() << ")\n";
        return kUsage;
      }
      cfg.zero_coset = cosets[*opts.zero_coset];
      const Proposition1Counts counts = proposition1_check(cfg);
      json j{{"d", opts.d},
             {"n", opts.n},
             {"seed", opts.seed},
             {"zero_coset", *opts.zero_coset},
             {"coset", points_json(cfg.zero_coset->elements)},
             {"ppt_entangled_detected", counts.ppt_entangled_detected},
             {"npt", counts.npt},
             {"other", counts.other},
             {"rng", kRngName}};
      err << "zero coset " << *opts.zero_coset << ": " << counts.npt << " NPT, "
          << counts.ppt_entangled_detected << " PPT-entangled (detected), " << counts.other
          << " other\n";
      if (opts.format == "csv") {
        out << "d,n,seed,zero_coset,ppt_entangled_detected,npt,other\n"
            << opts.d << "," << opts.n << "," << opts.seed << "," << *opts.zero_coset << ","
            << counts.ppt_entangled_detected << "," << counts.npt << "," << counts.other << "\n";
      } else {
        out << j.dump(2) << "\n";
      }
      return kOk;
    }

    const ShareReport rep = estimate_shares(cfg, opts.threads);
    err << std::fixed << std::setprecision(2) << "d=" << rep.d << "  n=" << rep.n_samples
        << "\n  NPT                      " << 100.0 * rep.npt_share << " %"
        << "\n  realignment              " << 100.0 * rep.realignment_share << " %"
        << "\n  PPT-entangled (detected) " << 100.0 * rep.ppt_ent_share << " %"
        << "\n  undetected               " << 100.0 * rep.undetected_share << " %"
        << "\n  wall time                " << rep.wall_time << " s\n";
    if (opts.out) {
      std::ofstream f(*opts.out);
      if (!f) {
        err << "error: cannot write " << *opts.out << "\n";
        return kUsage;
      }
      f << share_report_csv_header() << "\n" << share_report_csv_row(rep) << "\n";
    }
    if (opts.format == "csv") {
      out << share_report_csv_header() << "\n" << share_report_csv_row(rep) << "\n";
    } else {
      out << share_report_to_json(rep).dump(2) << "\n";
    }
    return kOk;
  });
}

int cmd_witness(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const StateFile state = load_state_file(path);
    const CoefficientMatrix& c = state.coefficients;
    if (c.dim() != 3) {
      err << "error: the witness is only defined for d = 3 (got d = " << c.dim() << ")\n";
      return kUsage;
    }
    const WitnessMatrix w = witness_kappa(c);
    const double value = witness_value(c, w);
    json kappa = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < 3; ++j) row.push_back(round12(w(i, j)));
      kappa.push_back(std::move(row));
    }
    json j{{"d", 3},
           {"kappa", kappa},
           {"witness_value", round12(value)},
           {"is_npt", value < -kDetectionGuard}};
    if (w.is_zero()) {
      j["note"] = "degenerate witness: all kappa vanish, W_NPT is the zero operator";
    } else if (w.is_nonnegative()) {
      j["note"] = "positive operator: all kappa >= 0, W_NPT detects nothing";
    } else {
      j["note"] = nullptr;
    }
    out << j.dump(2) << "\n";
    return kOk;
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const SamplerConfig cfg{opts.d, opts.n, opts.seed, std::nullopt};
    const double d = static_cast<double>(opts.d);
    std::size_t violations = 0;
    std::size_t boundary_skipped = 0;
    double worst_realign = 0.0;
    std::optional<Violation> first;
    auto flag = [&](const char* check, const CoefficientMatrix& c, double detail) {
      ++violations;
      if (!first) first = Violation{check, {c.values().begin(), c.values().end()}, detail};
    };

    for_each_sample(cfg, [&](std::size_t, const CoefficientMatrix& c) {
      const RealignmentResult fast = realignment_fast(c);
      const double gap = std::abs(d * realignment_oracle(c) - fast.value);
      worst_realign = std::max(worst_realign, gap);
      if (gap >= kEquivalenceTol) flag("realignment fast vs trace norm", c, gap);

      if (opts.d == 2 || opts.d == 3) {
        const auto spectrum =
            hermitian_eigenvalues(partial_transpose(density_from_coefficients(c), opts.d, opts.d));
        const double lo = spectrum.front();
        const bool dense_npt = lo < -kPsdTolerance;
        if (opts.d == 2) {
          if (std::abs(fast.value - 2.0) < kBoundaryBand || std::abs(lo) < kBoundaryBand) {
            ++boundary_skipped;
          } else if (fast.detected != dense_npt) {
            flag("d=2 PPT vs realignment", c, lo);
          }
        } else {
          const QutritDetResult det = ppt_det_qutrit(c);
          if (std::abs(det.rhs - det.lhs) < kBoundaryBand || std::abs(lo) < kBoundaryBand) {
            ++boundary_skipped;
          } else if (det.is_npt != dense_npt) {
            flag("determinant vs dense PPT", c, det.rhs - det.lhs);
          }
          std::size_t negatives = 0;
          for (double ev : spectrum) negatives += ev < -kEquivalenceTol;
          if (negatives != 0 && negatives != 3) flag("negative eigenvalue count", c, negatives);
          if (spectrum.front() < -1.0 / 3.0 - kEquivalenceTol ||
              spectrum.back() > 1.0 / 3.0 + kEquivalenceTol)
            flag("partial transpose spectrum outside [-1/3, 1/3]", c, spectrum.front());
          if (realignment_qutrit_subgroup_form(c).detected != fast.detected)
            flag("striation form vs 1-norm", c, fast.value);
        }
      }
    });

    json j{{"d", opts.d},
           {"n", opts.n},
           {"seed", opts.seed},
           {"violations", violations},
           {"boundary_skipped", boundary_skipped},
           {"max_realignment_gap", worst_realign}};
    if (first) {
      j["first_violation"] = {{"check", first->check},
                              {"detail", first->detail},
                              {"d", opts.d},
                              {"c", coefficients_to_json(CoefficientMatrix(opts.d, first->c))}};
      err << "violation: " << first->check << "\n";
    }
    out << j.dump(2) << "\n";
    return violations == 0 ? kOk : kFailure;
  });
}

int cmd_striations(std::size_t d, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const auto subgroups = enumerate_subgroups(d);
    const auto cosets = all_cosets(d);
    json j{{"d", d}};
    json subs = json::array();
    json strs = json::array();
    for (std::size_t s = 0; s < subgroups.size(); ++s) {
      subs.push_back(points_json(subgroups[s].elements));
      json members = json::array();
      for (std::size_t i = 0; i < cosets.size(); ++i)
        if (cosets[i].base == subgroups[s]) members.push_back(i);
      strs.push_back({{"subgroup", s}, {"cosets", members}});
    }
    json cs = json::array();
    for (std::size_t i = 0; i < cosets.size(); ++i) {
      std::size_t s = 0;
      while (!(subgroups[s] == cosets[i].base)) ++s;
      cs.push_back({{"index", i},
                    {"subgroup", s},
                    {"representative", point_json(cosets[i].shift)},
                    {"elements", points_json(cosets[i].elements)}});
    }
    j["subgroups"] = subs;
    j["striations"] = strs;
    j["cosets"] = cs;
    out << j.dump(2) << "\n";
    return kOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement classification of Bell-diagonal qudit states"};
  app.require_subcommand(1);

  std::string path;
  bool oracle = false;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a state file");
  classify_cmd->add_option("path", path, "State file (JSON or CSV grid)")->required();
  classify_cmd->add_flag("--oracle", oracle, "Add dense-matrix oracle values");

  SampleOptions sample;
  std::size_t zero_coset = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Monte-Carlo detection shares");
  sample_cmd->add_option("--d", sample.d, "Local dimension")->check(CLI::Range(2, 64));
  sample_cmd->add_option("--n", sample.n, "Number of samples")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample.seed, "PRNG seed");
  auto* zero_opt =
      sample_cmd->add_option("--zero-coset", zero_coset, "Index into the striations listing");
  sample_cmd->add_option("--out", sample.out, "Also write the report as CSV");
  sample_cmd->add_option("--format", sample.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sample_cmd->add_option("--threads", sample.threads, "Worker threads (0 = all cores)");

  std::string witness_path;
  auto* witness_cmd = app.add_subcommand("witness", "Print the qutrit NPT witness");
  witness_cmd->add_option("path", witness_path, "State file with d = 3")->required();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Fast criteria vs dense oracles");
  verify_cmd->add_option("--d", verify.d, "Local dimension")->check(CLI::Range(2, 16));
  verify_cmd->add_option("--n", verify.n, "Number of samples")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "PRNG seed");

  std::size_t striation_d = 3;
  auto* striations_cmd = app.add_subcommand("striations", "List subgroups, cosets, striations");
  striations_cmd->add_option("--d", striation_d, "Local dimension")->check(CLI::Range(2, 16));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (*classify_cmd) return cmd_classify(path, oracle, out, err);
  if (*sample_cmd) {
    if (*zero_opt) sample.zero_coset = zero_coset;
    return cmd_sample(sample, out, err);
  }
  if (*witness_cmd) return cmd_witness(witness_path, out, err);
  if (*verify_cmd) return cmd_verify(verify, out, err);
  if (*striations_cmd) return cmd_striations(striation_d, out, err);
  return kUsage;
}

}  // namespace bellq::cli
