#include "qit/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qit {

namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  // Only '.' may appear as a decimal separator, whatever the C locale says.
  for (char* c = buf; *c; ++c)
    if (*c == ',') *c = '.';
  return buf;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return Json{{"dim", m.rows()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto dim = j.at("dim").get<long long>();
    if (dim <= 0 || dim > 4096) throw ParseError("matrix dim must be positive");
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
    const auto cells = static_cast<std::size_t>(dim * dim);
    if (re.size() != cells || im.size() != cells) throw ParseError("matrix entry count must equal dim²");
    ComplexMatrix m(dim, dim);
    for (std::size_t k = 0; k < cells; ++k)
      m(static_cast<Eigen::Index>(k) / dim, static_cast<Eigen::Index>(k) % dim) = Complex(re[k], im[k]);
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  }
}

DensityMatrix density_from_json(const Json& j) {
  ComplexMatrix m = matrix_from_json(j);
  std::vector<std::size_t> dims;
  try {
    if (j.contains("subsystem_dims")) dims = j.at("subsystem_dims").get<std::vector<std::size_t>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed subsystem_dims: ") + e.what());
  }
  return DensityMatrix::from_matrix(std::move(m), std::move(dims));
}

ProbDist dist_from_json(const Json& j) {
  try {
    const Json& arr = j.is_object() ? j.at("probs") : j;
    return ProbDist(arr.get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed distribution: ") + e.what());
  }
}

ClassicalChannel channel_from_json(const Json& j) {
  try {
    return ClassicalChannel(j.at("rows").get<std::vector<std::vector<double>>>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed channel: ") + e.what());
  }
}

std::string bits_to_string(const Bits& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = static_cast<char>('0' + bits[i]);
  return s;
}

Json transcript_to_json(const ProtocolTranscript& t) {
  return Json{{"master_seed", t.master_seed},
              {"n", t.n},
              {"alice_bits", bits_to_string(t.alice_bits)},
              {"alice_bases", bits_to_string(t.alice_bases)},
              {"bob_bases", bits_to_string(t.bob_bases)},
              {"bob_bits", bits_to_string(t.bob_bits)},
              {"eve_active", bits_to_string(t.eve_active)},
              {"eve_bases", bits_to_string(t.eve_bases)},
              {"eve_bits", bits_to_string(t.eve_bits)},
              {"sift_mask", bits_to_string(t.sift_mask)},
              {"sifted_count", t.sifted_count},
              {"check_indices", t.check_indices},
              {"key_indices", t.key_indices},
              {"disagreements", t.disagreements},
              {"qber_estimate", t.qber_estimate},
              {"aborted", t.aborted},
              {"abort_reason", t.abort_reason},
              {"blocks", t.blocks},
              {"announced_offset", bits_to_string(t.announced_offset)},
              {"alice_key", bits_to_string(t.alice_key)},
              {"bob_key", bits_to_string(t.bob_key)},
              {"reconciliation_failures", t.reconciliation_failures}};
}

QkdRun qkd_config_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("qkd config must be a JSON object");
    const auto n = j.at("n").get<std::size_t>();
    const double delta = get_or<double>(j, "delta", 1.0);
    std::size_t t = ProtocolConfig::default_threshold(n);
    if (j.contains("threshold_t")) {
      t = j.at("threshold_t").get<std::size_t>();
    } else if (j.contains("threshold_fraction")) {
      t = static_cast<std::size_t>(std::floor(j.at("threshold_fraction").get<double>() * static_cast<double>(n)));
    }
    const std::string code = get_or<std::string>(j, "code", "steane");
    if (code != "steane") throw ParseError("unknown code \"" + code + "\"; only \"steane\" is built in");
    const auto seed = get_or<std::uint64_t>(j, "seed", 0);

    ChannelModel ch = ChannelModel::ideal();
    if (j.contains("channel")) {
      const Json& c = j.at("channel");
      const std::string kind = c.at("kind").get<std::string>();
      const double p = get_or<double>(c, "parameter", 0.0);
      if (kind == "ideal") {
        ch = ChannelModel::ideal();
      } else if (kind == "depolarizing") {
        ch = ChannelModel::depolarizing(p);
      } else if (kind == "intercept_resend") {
        ch = ChannelModel::intercept_resend(c.contains("parameter") ? p : 1.0);
      } else {
        throw ParseError("unknown channel kind \"" + kind + "\"");
      }
    }
    return QkdRun{ProtocolConfig(n, delta, t, fixtures::steane(), seed), ch};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed qkd config: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("invalid qkd config: ") + e.what());
  }
}

std::string batch_summary_csv(const std::vector<ProtocolTranscript>& transcripts) {
  std::ostringstream out;
  out << "trial,aborted,sifted_count,qber,key_len,keys_match\n";
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    const auto& t = transcripts[i];
    out << i << ',' << (t.aborted ? 1 : 0) << ',' << t.sifted_count << ',' << format_number(t.qber_estimate) << ','
        << t.alice_key.size() << ',' << (t.keys_match() ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace qit
