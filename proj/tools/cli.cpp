#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qit/bb84sim.hpp"
#include "qit/centropy.hpp"
#include "qit/channelcap.hpp"
#include "qit/gf2codes.hpp"
#include "qit/qentropy.hpp"
#include "qit/serialization.hpp"
#include "qit/typicality.hpp"

namespace qit::cli {

namespace {

struct Options {
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1;

  // entropy / qinfo
  std::string dist_text, dist_file, density_file;
  std::optional<double> depolarizing;
  // codes
  std::string code_file, fixture, decode_word;
  // compress
  std::vector<double> probs;
  std::vector<std::size_t> lengths{4, 8, 12};
  double epsilon = 0.2;
  std::optional<double> rate;
  bool quantum = false;
  // capacity
  std::string channel_file;
  std::optional<double> bsc, bec, hsw_depolarizing;
  std::size_t restarts = 16;
  // qkd
  std::string config_file;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Rows of name/value pairs rendered as two-column CSV or a flat JSON object.
class Report {
 public:
  void add(const std::string& key, double v) { rows_.emplace_back(key, Json(v)); }
  void add(const std::string& key, const std::string& v) { rows_.emplace_back(key, Json(v)); }
  void add_bool(const std::string& key, bool v) { rows_.emplace_back(key, Json(v)); }

  std::string render(const std::string& format) const {
    std::ostringstream s;
    if (format == "json") {
      Json j = Json::object();
      for (const auto& [k, v] : rows_) j[k] = v;
      s << j.dump(2) << '\n';
      return s.str();
    }
    s << "measure,value\n";
    for (const auto& [k, v] : rows_) {
      s << k << ',';
      if (v.is_number()) {
        s << format_number(v.get<double>());
      } else if (v.is_boolean()) {
        s << (v.get<bool>() ? 1 : 0);
      } else {
        s << v.get<std::string>();
      }
      s << '\n';
    }
    return s.str();
  }

 private:
  std::vector<std::pair<std::string, Json>> rows_;
};

std::string cmd_entropy(const Options& o) {
  Report r;
  if (!o.density_file.empty()) {
    const DensityMatrix rho = density_from_json(read_json_file(o.density_file));
    r.add("S", von_neumann_entropy(rho));
    return r.render(o.format);
  }
  Json j;
  if (!o.dist_file.empty()) {
    j = read_json_file(o.dist_file);
  } else if (!o.dist_text.empty()) {
    try {
      j = Json::parse(o.dist_text);
    } catch (const Json::exception& e) {
      throw ParseError(std::string("--dist: ") + e.what());
    }
  } else {
    throw ParseError("entropy needs --dist, --dist-file or --density");
  }
  r.add("H", shannon_entropy(dist_from_json(j)));
  return r.render(o.format);
}

std::string cmd_qinfo(const Options& o) {
  if (o.density_file.empty()) throw ParseError("qinfo needs --density");
  const DensityMatrix rho = density_from_json(read_json_file(o.density_file));
  Report r;
  r.add("S", von_neumann_entropy(rho));
  if (rho.subsystem_dims().size() == 2) {
    r.add("S_A", von_neumann_entropy(partial_trace(rho, Subsystem::A)));
    r.add("S_B", von_neumann_entropy(partial_trace(rho, Subsystem::B)));
    r.add("S_A_given_B", q_conditional_entropy(rho));
    r.add("I_A_B", q_mutual_information(rho));
  }
  if (o.depolarizing) {
    if (rho.dim() != 2) throw ParseError("--depolarizing applies to qubit states");
    const auto op = QuantumOperation::depolarizing(*o.depolarizing);
    r.add("S_output", von_neumann_entropy(apply_operation(rho, op)));
    r.add("entropy_exchange", entropy_exchange(rho, op));
    r.add("coherent_information", coherent_information(rho, op));
    r.add("entanglement_fidelity", entanglement_fidelity(rho, op));
    r.add("quantum_fano_gap", quantum_fano_gap(rho, op));
  }
  return r.render(o.format);
}

LinearCode fixture_code(const std::string& name) {
  if (name == "hamming74") return fixtures::hamming74();
  if (name == "simplex73") return fixtures::simplex73();
  if (name == "repetition3") return fixtures::repetition3();
  if (name == "parity3") return fixtures::parity3();
  throw ParseError("unknown fixture \"" + name + "\"");
}

std::string cmd_codes(const Options& o) {
  Report r;
  if (o.fixture == "steane") {
    const CssCode code = fixtures::steane();
    const CssBounds b = css_bounds(code);
    r.add("n", static_cast<double>(b.n));
    r.add("k", static_cast<double>(b.k));
    r.add("d", static_cast<double>(b.d));
    r.add_bool("quantum_singleton_ok", b.quantum_singleton_ok);
    r.add("quantum_gv_rate", b.quantum_gv_rate);
    return r.render(o.format);
  }
  std::optional<LinearCode> code;
  if (!o.code_file.empty()) {
    std::ifstream in(o.code_file);
    if (!in) throw ParseError("cannot open " + o.code_file);
    code = read_code(in);
  } else if (!o.fixture.empty()) {
    code = fixture_code(o.fixture);
  } else {
    throw ParseError("codes needs --code or --fixture");
  }
  const CodeBounds b = code_bounds(*code);
  r.add("n", static_cast<double>(b.n));
  r.add("k", static_cast<double>(b.k));
  r.add("d", static_cast<double>(b.d));
  r.add("t", static_cast<double>(b.t));
  r.add("rate", b.rate);
  r.add_bool("singleton_ok", b.singleton_ok);
  r.add("gv_rate", b.gv_rate);
  r.add_bool("gv_applicable", b.gv_applicable);
  r.add_bool("gv_ok", b.gv_ok);
  if (!o.decode_word.empty()) {
    const auto result = code->decode(BitString::from_string(o.decode_word), b.t);
    r.add("decoded", result ? result->codeword.to_string() : std::string("failure"));
    if (result) r.add("error", result->error.to_string());
  }
  return r.render(o.format);
}

std::string cmd_compress(const Options& o) {
  if (o.probs.empty()) throw ParseError("compress needs --probs");
  const ProbDist dist(o.probs);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << (o.quantum ? "n,epsilon,rank,mass,fidelity\n" : "n,epsilon,typical_size,mass,reliability\n");
  for (auto n : o.lengths) {
    std::size_t size = 0;
    double mass = 0.0;
    std::optional<double> quality;
    if (o.quantum) {
      const auto d = static_cast<Eigen::Index>(o.probs.size());
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) m(i, i) = o.probs[static_cast<std::size_t>(i)];
      const QuantumSourceModel q(DensityMatrix::from_matrix(m), n, o.epsilon);
      const TypicalSubspace ts = typical_subspace(q, o.rate);
      size = ts.kept.size();
      mass = typical_set(SourceModel(dist, n, o.epsilon)).mass;
      quality = schumacher_fidelity(q, o.rate);
    } else {
      const SourceModel s(dist, n, o.epsilon);
      const TypicalSet t = typical_set(s);
      size = t.indices.size();
      mass = t.mass;
      if (o.rate) quality = ShannonScheme(s, *o.rate).reliability();
    }
    csv << n << ',' << format_number(o.epsilon) << ',' << size << ',' << format_number(mass) << ','
        << (quality ? format_number(*quality) : std::string()) << '\n';
    Json row{{"n", n}, {"epsilon", o.epsilon}, {o.quantum ? "rank" : "typical_size", size}, {"mass", mass}};
    if (quality) row[o.quantum ? "fidelity" : "reliability"] = *quality;
    rows.push_back(row);
  }
  if (o.format == "json") return rows.dump(2) + "\n";
  return csv.str();
}

std::string cmd_capacity(const Options& o) {
  if (o.hsw_depolarizing) {
    if (!o.seed) throw ParseError("HSW estimation is randomized and needs --seed");
    HswOptions opts;
    opts.seed = *o.seed;
    opts.restarts = o.restarts;
    const HswResult r = hsw_capacity_estimate(QuantumOperation::depolarizing(*o.hsw_depolarizing), opts);
    if (o.format == "json") return Json{{"chi", r.chi}, {"restart_values", r.restart_values}}.dump(2) + "\n";
    return "chi\n" + format_number(r.chi) + "\n";
  }
  std::optional<ClassicalChannel> ch;
  if (!o.channel_file.empty()) {
    ch = channel_from_json(read_json_file(o.channel_file));
  } else if (o.bsc) {
    ch = ClassicalChannel::bsc(*o.bsc);
  } else if (o.bec) {
    ch = ClassicalChannel::bec(*o.bec);
  } else {
    throw ParseError("capacity needs --channel, --bsc, --bec or --hsw-depolarizing");
  }
  const CapacityResult r = capacity(*ch);
  if (o.format == "json") {
    return Json{{"capacity", r.capacity}, {"input", r.input.probs()}, {"iterations", r.iterations}}.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "capacity";
  for (std::size_t x = 0; x < r.input.size(); ++x) s << ",p" << x;
  s << '\n' << format_number(r.capacity);
  for (double p : r.input.probs()) s << ',' << format_number(p);
  s << '\n';
  return s.str();
}

std::string cmd_qkd(const Options& o) {
  if (o.config_file.empty()) throw ParseError("qkd needs --config");
  if (!o.seed) throw ParseError("qkd is randomized and needs --seed");
  QkdRun run = qkd_config_from_json(read_json_file(o.config_file));
  run.config.master_seed = *o.seed;
  const auto transcripts = run_batch(run.config, run.channel, o.trials);
  const BatchSummary s = summarize(transcripts);
  if (o.format == "json") {
    Json trials = Json::array();
    for (const auto& t : transcripts) trials.push_back(transcript_to_json(t));
    return Json{{"summary",
                 {{"trials", s.trials}, {"mean_qber", s.mean_qber}, {"abort_rate", s.abort_rate},
                  {"key_match_rate", s.key_match_rate}, {"channel", run.channel.name()}}},
                {"trials", trials}}
               .dump(2) +
           "\n";
  }
  std::ostringstream out;
  out << batch_summary_csv(transcripts);
  out << "mean_qber,abort_rate,key_match_rate\n"
      << format_number(s.mean_qber) << ',' << format_number(s.abort_rate) << ',' << format_number(s.key_match_rate)
      << '\n';
  return out.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum information toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", o.out_path, "Write output to this file instead of stdout");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", o.seed, "Master seed for randomized commands");
  app.add_option("--trials", o.trials, "Number of Monte-Carlo trials")->check(CLI::PositiveNumber);

  auto* entropy = app.add_subcommand("entropy", "Shannon or von Neumann entropy");
  entropy->add_option("--dist", o.dist_text, "Distribution as a JSON array");
  entropy->add_option("--dist-file", o.dist_file, "Distribution JSON file");
  entropy->add_option("--density", o.density_file, "Density matrix JSON file");

  auto* qinfo = app.add_subcommand("qinfo", "Quantum entropies of a state, optionally through a channel");
  qinfo->add_option("--density", o.density_file, "Density matrix JSON file")->required();
  qinfo->add_option("--depolarizing", o.depolarizing, "Depolarizing parameter f")->check(CLI::Range(0.0, 1.0));

  auto* codes = app.add_subcommand("codes", "Linear code parameters and bounds");
  codes->add_option("--code", o.code_file, "Code file");
  codes->add_option("--fixture", o.fixture, "hamming74, simplex73, repetition3, parity3 or steane");
  codes->add_option("--decode", o.decode_word, "Received word to decode");

  auto* compress = app.add_subcommand("compress", "Typical-set and Schumacher compression sweeps");
  compress->add_option("--probs", o.probs, "Source distribution (eigenvalues with --quantum)")->delimiter(',')->required();
  compress->add_option("--n", o.lengths, "Block lengths")->delimiter(',');
  compress->add_option("--eps", o.epsilon, "Typicality epsilon")->check(CLI::PositiveNumber);
  compress->add_option("--rate", o.rate, "Compression rate R");
  compress->add_flag("--quantum", o.quantum, "Schumacher compression of diag(probs)");

  auto* cap = app.add_subcommand("capacity", "Channel capacity");
  cap->add_option("--channel", o.channel_file, "Channel JSON file {\"rows\": [...]}");
  cap->add_option("--bsc", o.bsc, "Binary symmetric channel flip probability")->check(CLI::Range(0.0, 1.0));
  cap->add_option("--bec", o.bec, "Binary erasure channel erasure probability")->check(CLI::Range(0.0, 1.0));
  cap->add_option("--hsw-depolarizing", o.hsw_depolarizing, "HSW estimate for a depolarizing qubit channel")
      ->check(CLI::Range(0.0, 1.0));
  cap->add_option("--restarts", o.restarts, "HSW restarts")->check(CLI::PositiveNumber);

  auto* qkd = app.add_subcommand("qkd", "BB84 batch simulation");
  qkd->add_option("--config", o.config_file, "Protocol config JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string text;
  try {
    if (entropy->parsed()) text = cmd_entropy(o);
    else if (qinfo->parsed()) text = cmd_qinfo(o);
    else if (codes->parsed()) text = cmd_codes(o);
    else if (compress->parsed()) text = cmd_compress(o);
    else if (cap->parsed()) text = cmd_capacity(o);
    else if (qkd->parsed()) text = cmd_qkd(o);
  } catch (const std::exception& e) {
    // Inputs that fail to parse or validate are usage errors.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.out_path << '\n';
      return kExitUsage;
    }
    file << text;
  }
  return kExitOk;
}

}  // namespace qit::cli
