#pragma once

// JSON and CSV encodings used by the command-line tool.
//
//   matrix:      {"dim": d, "re": [...], "im": [...]}  row-major, im optional
//   density:     matrix fields plus optional "subsystem_dims"
//   dist:        [p0, p1, ...] or {"probs": [...]}
//   channel:     {"rows": [[...], ...]}
//   qkd config:  {"n", "delta", "threshold_t" | "threshold_fraction", "code",
//                 "seed", "channel": {"kind", "parameter"}}

#include <string>
#include <vector>

#include <json.hpp>

#include "qit/bb84sim.hpp"
#include "qit/centropy.hpp"
#include "qit/channelcap.hpp"
#include "qit/matquant.hpp"

namespace qit {

using Json = nlohmann::json;

/// printf("%.12g"), independent of the locale.
std::string format_number(double v);

Json matrix_to_json(const ComplexMatrix& m);
/// Throws ParseError on malformed input.
ComplexMatrix matrix_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j);
ProbDist dist_from_json(const Json& j);
ClassicalChannel channel_from_json(const Json& j);

Json transcript_to_json(const ProtocolTranscript& t);
std::string bits_to_string(const Bits& bits);

struct QkdRun {
  ProtocolConfig config;
  ChannelModel channel;
};

/// "code" is "steane" (the default). Missing threshold means ⌊0.11·n⌋, missing
/// delta means 1, missing seed means 0.
QkdRun qkd_config_from_json(const Json& j);

/// Header "trial,aborted,sifted_count,qber,key_len,keys_match" plus one row per transcript.
std::string batch_summary_csv(const std::vector<ProtocolTranscript>& transcripts);

}  // namespace qit
